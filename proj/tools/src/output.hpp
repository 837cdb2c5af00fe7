#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace bellman::cli {

using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  Json to_json() const;             // array of objects
  Json row_json(std::size_t i) const;
};

void write_csv(std::ostream& os, const Table& t);

}  // namespace bellman::cli

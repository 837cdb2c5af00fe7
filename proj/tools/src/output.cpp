#include "output.hpp"

#include <ostream>

namespace bellman::cli {

namespace {

void write_field(std::ostream& os, const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) {
    os << f;
    return;
  }
  os << '"';
  for (char c : f) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

void write_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    write_field(os, fields[i]);
  }
  os << '\n';
}

}  // namespace

Json Table::row_json(std::size_t i) const {
  Json obj = Json::object();
  for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = rows[i][c];
  return obj;
}

Json Table::to_json() const {
  Json arr = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) arr.push_back(row_json(i));
  return arr;
}

void write_csv(std::ostream& os, const Table& t) {
  write_line(os, t.columns);
  for (const auto& r : t.rows) write_line(os, r);
}

}  // namespace bellman::cli

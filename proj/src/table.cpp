#include "hahn/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace hahn {

const char* to_string(RowFlag flag) {
  switch (flag) {
    case RowFlag::ok:
      return "ok";
    case RowFlag::pole:
      return "pole";
    case RowFlag::nonconvergent:
      return "nonconvergent";
  }
  return "ok";
}

std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

const TrajectoryTable::Column* TrajectoryTable::find(const std::string& name) const {
  for (const Column& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void TrajectoryTable::add_row(const std::vector<Cell>& cells) {
  if (cells.size() != columns.size()) throw std::logic_error("row width does not match columns");
  RowFlag row = RowFlag::ok;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Cell cell = cells[i];
    if (cell.value && !std::isfinite(*cell.value)) {
      cell.value.reset();
      if (cell.flag == RowFlag::ok) cell.flag = RowFlag::nonconvergent;
    }
    columns[i].values.push_back(cell.value);
    if (cell.flag == RowFlag::pole) {
      row = RowFlag::pole;
    } else if (cell.flag == RowFlag::nonconvergent && row == RowFlag::ok) {
      row = RowFlag::nonconvergent;
    }
  }
  flags.push_back(row);
}

void TrajectoryTable::check_invariants(bool long_format) const {
  for (const Column& c : columns) {
    if (c.values.size() != flags.size()) throw std::logic_error("column length mismatch: " + c.name);
  }
  const Column* t = find("t");
  if (t == nullptr) throw std::logic_error("table has no t column");
  const Column* q = long_format ? find("q") : nullptr;
  const Column* w = long_format ? find("w") : nullptr;
  for (std::size_t i = 1; i < t->values.size(); ++i) {
    const bool same_block = (q == nullptr || q->values[i] == q->values[i - 1]) &&
                            (w == nullptr || w->values[i] == w->values[i - 1]);
    if (same_block && !(*t->values[i] > *t->values[i - 1])) {
      throw std::logic_error("t is not strictly increasing");
    }
  }
}

void TrajectoryTable::write_csv(std::ostream& out) const {
  for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
  for (const Column& c : columns) out << c.name << ',';
  out << "flag\n";
  for (std::size_t row = 0; row < rows(); ++row) {
    for (const Column& c : columns) {
      if (c.values[row]) out << format_number(*c.values[row]);
      out << ',';
    }
    out << to_string(flags[row]) << '\n';
  }
  for (const auto& [key, value] : summary) out << "# summary " << key << '=' << value << '\n';
}

void TrajectoryTable::write_json(std::ostream& out) const {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata) doc["metadata"][key] = value;
  doc["columns"] = nlohmann::ordered_json::object();
  for (const Column& c : columns) {
    auto values = nlohmann::ordered_json::array();
    for (const auto& v : c.values) {
      if (v) {
        values.push_back(*v);
      } else {
        values.push_back(nullptr);
      }
    }
    doc["columns"][c.name] = std::move(values);
  }
  auto flag_names = nlohmann::ordered_json::array();
  for (RowFlag f : flags) flag_names.push_back(to_string(f));
  doc["flags"] = std::move(flag_names);
  doc["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : summary) doc["summary"][key] = value;
  out << doc.dump(2) << '\n';
}

}  // namespace hahn

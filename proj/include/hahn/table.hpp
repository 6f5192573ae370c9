#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hahn {

enum class RowFlag { ok, pole, nonconvergent };

const char* to_string(RowFlag flag);

/// Cell outcome for one solver route at one sample point.
struct Cell {
  std::optional<double> value;
  RowFlag flag = RowFlag::ok;
};

/// Column-oriented trajectory output. Missing values are cells the row flag explains.
struct TrajectoryTable {
  struct Column {
    std::string name;
    std::vector<std::optional<double>> values;
  };

  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Column> columns;
  std::vector<RowFlag> flags;
  std::vector<std::pair<std::string, std::string>> summary;

  std::size_t rows() const { return flags.size(); }
  const Column* find(const std::string& name) const;

  /// Appends one row; cells must be given in column order.
  void add_row(const std::vector<Cell>& cells);

  /// Throws std::logic_error when columns differ in length or "t" is not strictly
  /// increasing (long-format tables sort by the leading parameter columns first).
  void check_invariants(bool long_format = false) const;

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace hahn

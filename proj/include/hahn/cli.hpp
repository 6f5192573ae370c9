#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hahn/identities.hpp"
#include "hahn/params.hpp"
#include "hahn/resist.hpp"
#include "hahn/table.hpp"

namespace hahn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerificationFailed = 2,
  kColumnNonConvergent = 3,
};

struct TimeGrid {
  double start = 0.0;
  double end = 5.0;
  int samples = 11;

  /// Inclusive uniform grid; throws std::invalid_argument on an empty or
  /// non-increasing range.
  std::vector<double> points() const;
};

struct KinematicsOptions {
  double q = 0.5;
  double w = 0.1;
  double x0 = 0.0;
  double v0 = 0.0;
  double a = 1.0;
  TimeGrid time;
  std::vector<std::string> routes{"closed", "iterative", "second-order"};
  TruncationPolicy policy;
};

struct DragOptions {
  double q = 0.5;
  double w = 0.1;
  DragParams drag{1.0, 0.5, 9.8, 0.0};
  TimeGrid time{0.0, 2.0, 5};
  std::vector<std::string> routes{"closed", "series", "iterative"};
  int iterations = 0;  // 0 selects the default for the force law
  BoundaryDatum datum = BoundaryDatum::tangent;
  TruncationPolicy policy;
};

/// Inclusive grid spec "name=start:end:count".
struct SweepAxis {
  std::string name;
  double start = 0.0;
  double end = 0.0;
  int count = 1;

  static SweepAxis parse(const std::string& text);
  std::vector<double> values() const;
  std::string spec() const;
};

TrajectoryTable kinematics_table(const KinematicsOptions& options);
TrajectoryTable drag_table(const DragOptions& options);

/// Long-format sweep: (q, w) columns prepended, rows ordered q-major, then w, then t.
TrajectoryTable sweep_kinematics_table(const KinematicsOptions& base,
                                       const std::vector<SweepAxis>& axes);
TrajectoryTable sweep_drag_table(const DragOptions& base, const std::vector<SweepAxis>& axes);

/// True when some requested column has no value in any row because of
/// nonconvergence (poles alone do not count).
bool has_nonconvergent_column(const TrajectoryTable& table);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hahn::cli

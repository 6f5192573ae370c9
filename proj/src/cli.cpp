#include "hahn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "hahn/errors.hpp"
#include "hahn/kinematics.hpp"

namespace hahn::cli {
namespace {

const std::vector<std::string> kKinematicsRoutes{"closed", "iterative", "second-order", "classical"};
const std::vector<std::string> kDragRoutes{"closed", "series", "iterative", "classical"};

// Requested routes in canonical order, always ending with the classical reference.
std::vector<std::string> canonical_routes(const std::vector<std::string>& requested,
                                          const std::vector<std::string>& known) {
  std::vector<std::string> routes;
  for (const std::string& route : known) {
    const bool wanted = route == "classical" ||
                        std::find(requested.begin(), requested.end(), route) != requested.end();
    if (wanted) routes.push_back(route);
  }
  for (const std::string& route : requested) {
    if (std::find(known.begin(), known.end(), route) == known.end()) {
      throw std::invalid_argument("unknown route: " + route);
    }
  }
  return routes;
}

std::string column_name(const std::string& prefix, std::string route) {
  std::replace(route.begin(), route.end(), '-', '_');
  return prefix + "_" + route;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

template <typename Evaluate>
Cell evaluate(Evaluate&& compute) {
  try {
    return Cell{compute(), RowFlag::ok};
  } catch (const PoleEncountered&) {
    return Cell{std::nullopt, RowFlag::pole};
  } catch (const ZeroFactor&) {
    return Cell{std::nullopt, RowFlag::pole};
  } catch (const Error&) {
    return Cell{std::nullopt, RowFlag::nonconvergent};
  }
}

// Max |a - b| over rows where both routes produced a value, for every pair of
// non-time columns.
void add_route_summary(TrajectoryTable& table, const std::vector<std::string>& route_columns) {
  table.summary.clear();
  for (std::size_t i = 0; i < route_columns.size(); ++i) {
    for (std::size_t j = i + 1; j < route_columns.size(); ++j) {
      const auto* a = table.find(route_columns[i]);
      const auto* b = table.find(route_columns[j]);
      double worst = 0.0;
      std::size_t compared = 0;
      for (std::size_t row = 0; row < table.rows(); ++row) {
        if (a->values[row] && b->values[row]) {
          worst = std::max(worst, std::abs(*a->values[row] - *b->values[row]));
          ++compared;
        }
      }
      const std::string key = "max_abs_diff(" + route_columns[i] + "," + route_columns[j] + ")";
      table.summary.emplace_back(key, compared ? format_number(worst) : "nan");
    }
  }
}

void add_policy_metadata(TrajectoryTable& table, const TruncationPolicy& policy) {
  table.metadata.emplace_back("tol", format_number(policy.tol));
  table.metadata.emplace_back("max_terms", std::to_string(policy.max_terms));
}

void add_time_metadata(TrajectoryTable& table, const TimeGrid& grid) {
  table.metadata.emplace_back("t_start", format_number(grid.start));
  table.metadata.emplace_back("t_end", format_number(grid.end));
  table.metadata.emplace_back("samples", std::to_string(grid.samples));
}

int resolved_iterations(const DragOptions& options) {
  if (options.iterations > 0) return options.iterations;
  return options.drag.g == 0.0 ? kDefaultDragIterations : kDefaultGravityDragIterations;
}

const char* datum_name(BoundaryDatum datum) {
  return datum == BoundaryDatum::tangent ? "tangent" : "constant";
}

std::vector<std::string> route_column_names(const TrajectoryTable& table) {
  std::vector<std::string> names;
  for (const auto& c : table.columns) {
    if (c.name != "t" && c.name != "q" && c.name != "w") names.push_back(c.name);
  }
  return names;
}

template <typename Options, typename Build>
TrajectoryTable sweep_table(const Options& base, const std::vector<SweepAxis>& axes,
                            const char* base_name, Build build) {
  std::vector<double> q_values{base.q};
  std::vector<double> w_values{base.w};
  for (const SweepAxis& axis : axes) {
    if (axis.name == "q") {
      q_values = axis.values();
    } else if (axis.name == "w") {
      w_values = axis.values();
    } else {
      throw std::invalid_argument("can only sweep q or w, got " + axis.name);
    }
  }
  for (double q : q_values) {
    for (double w : w_values) static_cast<void>(DeformationParams(q, w));
  }

  // Points are independent; assemble strictly in (q, w) order afterwards.
  std::vector<std::future<TrajectoryTable>> pending;
  for (double q : q_values) {
    for (double w : w_values) {
      Options point = base;
      point.q = q;
      point.w = w;
      pending.push_back(std::async(std::launch::async, build, point));
    }
  }

  TrajectoryTable table;
  table.metadata.emplace_back("command", "sweep");
  table.metadata.emplace_back("base", base_name);
  std::string axes_text;
  for (const SweepAxis& axis : axes) axes_text += (axes_text.empty() ? "" : ";") + axis.spec();
  table.metadata.emplace_back("sweep", axes_text);

  std::size_t index = 0;
  for (double q : q_values) {
    for (double w : w_values) {
      const TrajectoryTable part = pending[index++].get();
      if (table.columns.empty()) {
        for (const auto& [key, value] : part.metadata) {
          if (key != "command" && key != "q" && key != "w" && key != "w0") {
            table.metadata.emplace_back(key, value);
          }
        }
        table.columns.push_back({"q", {}});
        table.columns.push_back({"w", {}});
        for (const auto& c : part.columns) table.columns.push_back({c.name, {}});
      }
      for (std::size_t row = 0; row < part.rows(); ++row) {
        table.columns[0].values.push_back(q);
        table.columns[1].values.push_back(w);
        for (std::size_t c = 0; c < part.columns.size(); ++c) {
          table.columns[c + 2].values.push_back(part.columns[c].values[row]);
        }
        table.flags.push_back(part.flags[row]);
      }
    }
  }
  add_route_summary(table, route_column_names(table));
  return table;
}

}  // namespace

std::vector<double> TimeGrid::points() const {
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  if (!std::isfinite(start) || !std::isfinite(end)) throw std::invalid_argument("time range must be finite");
  if (samples == 1) return {start};
  if (!(end > start)) throw std::invalid_argument("--t-end must exceed --t-start");
  std::vector<double> t(static_cast<std::size_t>(samples));
  const double spacing = (end - start) / (samples - 1);
  for (int i = 0; i < samples; ++i) t[static_cast<std::size_t>(i)] = start + i * spacing;
  t.back() = end;
  return t;
}

SweepAxis SweepAxis::parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("sweep spec must look like q=0.1:0.9:9");
  SweepAxis axis;
  axis.name = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  std::replace(rest.begin(), rest.end(), ':', ' ');
  std::istringstream in(rest);
  std::string trailing;
  if (!(in >> axis.start >> axis.end >> axis.count) || (in >> trailing)) {
    throw std::invalid_argument("sweep spec must look like q=0.1:0.9:9, got " + text);
  }
  if (axis.count < 1) throw std::invalid_argument("sweep count must be >= 1");
  if (axis.count > 1 && !(axis.end > axis.start)) {
    throw std::invalid_argument("sweep end must exceed start");
  }
  return axis;
}

std::vector<double> SweepAxis::values() const {
  if (count == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double spacing = (end - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i * spacing;
  out.back() = end;
  return out;
}

std::string SweepAxis::spec() const {
  return name + "=" + format_number(start) + ":" + format_number(end) + ":" + std::to_string(count);
}

TrajectoryTable kinematics_table(const KinematicsOptions& options) {
  const DeformationParams params(options.q, options.w);
  options.policy.validate();
  const std::vector<std::string> routes = canonical_routes(options.routes, kKinematicsRoutes);
  const std::vector<double> times = options.time.points();
  const KinematicState state{options.x0, options.v0, options.a};

  TrajectoryTable table;
  table.metadata = {{"command", "kinematics"},
                    {"q", format_number(params.q())},
                    {"w", format_number(params.w())},
                    {"w0", format_number(params.w0())},
                    {"x0", format_number(state.x0)},
                    {"v0", format_number(state.v0)},
                    {"a", format_number(state.a)}};
  add_time_metadata(table, options.time);
  table.metadata.emplace_back("routes", join(routes));
  add_policy_metadata(table, options.policy);

  table.columns.push_back({"t", {}});
  std::vector<std::string> route_columns;
  for (const std::string& route : routes) {
    route_columns.push_back(column_name("x", route));
    table.columns.push_back({route_columns.back(), {}});
  }

  const double x_at_w0 = uniform_accel_position_at_w0(state, params);
  const auto rhs = [state](double s) { return uniform_accel_velocity(state, s); };
  for (double t : times) {
    std::vector<Cell> cells{Cell{t, RowFlag::ok}};
    for (const std::string& route : routes) {
      cells.push_back(evaluate([&] {
        if (route == "closed") return uniform_accel_position(state, t, params);
        if (route == "iterative") {
          return iterate_first_order(rhs, t, params, x_at_w0, options.policy).value;
        }
        if (route == "second-order") {
          return solve_second_order_constant_accel(state, t, params, options.policy);
        }
        return state.x0 + state.v0 * t + 0.5 * state.a * t * t;
      }));
    }
    table.add_row(cells);
  }
  add_route_summary(table, route_columns);
  return table;
}

TrajectoryTable drag_table(const DragOptions& options) {
  const DeformationParams params(options.q, options.w);
  options.drag.validate();
  options.policy.validate();
  const std::vector<std::string> routes = canonical_routes(options.routes, kDragRoutes);
  const std::vector<double> times = options.time.points();
  const int iterations = resolved_iterations(options);
  const DragParams& dp = options.drag;

  TrajectoryTable table;
  table.metadata = {{"command", "drag"},
                    {"q", format_number(params.q())},
                    {"w", format_number(params.w())},
                    {"w0", format_number(params.w0())},
                    {"m", format_number(dp.m)},
                    {"k", format_number(dp.k)},
                    {"g", format_number(dp.g)},
                    {"v0", format_number(dp.v0)}};
  add_time_metadata(table, options.time);
  table.metadata.emplace_back("routes", join(routes));
  table.metadata.emplace_back("iter_n", std::to_string(iterations));
  table.metadata.emplace_back("boundary_datum", datum_name(options.datum));
  add_policy_metadata(table, options.policy);

  table.columns.push_back({"t", {}});
  std::vector<std::string> route_columns;
  for (const std::string& route : routes) {
    route_columns.push_back(column_name("v", route));
    table.columns.push_back({route_columns.back(), {}});
  }

  for (double t : times) {
    std::vector<Cell> cells{Cell{t, RowFlag::ok}};
    for (const std::string& route : routes) {
      cells.push_back(evaluate([&] {
        if (route == "closed") return gravity_drag_velocity(dp, t, params, options.policy);
        if (route == "series") return gravity_drag_velocity_series(dp, t, params, options.policy);
        if (route == "iterative") {
          return gravity_drag_velocity_iterative(dp, t, params, iterations, options.datum);
        }
        return classical_drag_velocity(dp, t);
      }));
    }
    table.add_row(cells);
  }
  add_route_summary(table, route_columns);
  return table;
}

TrajectoryTable sweep_kinematics_table(const KinematicsOptions& base,
                                       const std::vector<SweepAxis>& axes) {
  return sweep_table(base, axes, "kinematics", kinematics_table);
}

TrajectoryTable sweep_drag_table(const DragOptions& base, const std::vector<SweepAxis>& axes) {
  return sweep_table(base, axes, "drag", drag_table);
}

bool has_nonconvergent_column(const TrajectoryTable& table) {
  for (const auto& column : table.columns) {
    if (column.name == "t" || column.name == "q" || column.name == "w") continue;
    bool any_value = false;
    bool any_nonconvergent = false;
    for (std::size_t row = 0; row < table.rows(); ++row) {
      any_value = any_value || column.values[row].has_value();
      any_nonconvergent = any_nonconvergent ||
                          (!column.values[row] && table.flags[row] == RowFlag::nonconvergent);
    }
    if (!any_value && any_nonconvergent) return true;
  }
  return false;
}

namespace {

void add_time_options(CLI::App& app, TimeGrid& grid) {
  app.add_option("--t-start", grid.start, "First sample time")->capture_default_str();
  app.add_option("--t-end", grid.end, "Last sample time (inclusive)")->capture_default_str();
  app.add_option("--samples", grid.samples, "Number of uniformly spaced samples")
      ->capture_default_str();
}

void add_policy_options(CLI::App& app, TruncationPolicy& policy) {
  app.add_option("--tol", policy.tol, "Series/product truncation tolerance")->capture_default_str();
  app.add_option("--max-terms", policy.max_terms, "Series/product term cap")->capture_default_str();
}

void add_kinematics_options(CLI::App& app, KinematicsOptions& o) {
  app.add_option("--q", o.q, "Deformation parameter q in (0, 1)")->capture_default_str();
  app.add_option("--w", o.w, "Deformation parameter w >= 0")->capture_default_str();
  app.add_option("--x0", o.x0, "Position at t = 0")->capture_default_str();
  app.add_option("--v0", o.v0, "Velocity at t = 0")->capture_default_str();
  app.add_option("--a", o.a, "Constant acceleration")->capture_default_str();
  add_time_options(app, o.time);
  app.add_option("--routes", o.routes, "closed,iterative,second-order,classical")
      ->delimiter(',')
      ->check(CLI::IsMember(kKinematicsRoutes));
  add_policy_options(app, o.policy);
}

void add_drag_options(CLI::App& app, DragOptions& o) {
  app.add_option("--q", o.q, "Deformation parameter q in (0, 1)")->capture_default_str();
  app.add_option("--w", o.w, "Deformation parameter w >= 0")->capture_default_str();
  app.add_option("--m", o.drag.m, "Mass")->capture_default_str();
  app.add_option("--k", o.drag.k, "Drag coefficient")->capture_default_str();
  app.add_option("--g", o.drag.g, "Gravitational acceleration (0 for pure drag)")
      ->capture_default_str();
  app.add_option("--v0", o.drag.v0, "Initial velocity (datum at the fixed point w0)")
      ->capture_default_str();
  add_time_options(app, o.time);
  app.add_option("--routes", o.routes, "closed,series,iterative,classical")
      ->delimiter(',')
      ->check(CLI::IsMember(kDragRoutes));
  app.add_option("--iter-n", o.iterations, "Iterations for the iterative route (0: 120 or 150)")
      ->capture_default_str();
  app.add_option("--boundary-datum", o.datum, "Boundary value for the iterative route")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, BoundaryDatum>{{"tangent", BoundaryDatum::tangent},
                                               {"constant", BoundaryDatum::constant}}));
  add_policy_options(app, o.policy);
}

void emit(const TrajectoryTable& table, const std::string& format, std::ostream& out) {
  if (format == "json") {
    table.write_json(out);
  } else {
    table.write_csv(out);
  }
}

int finish(const TrajectoryTable& table, const std::string& format, std::ostream& out,
           std::ostream& err) {
  emit(table, format, out);
  if (has_nonconvergent_column(table)) {
    err << "error: a requested column did not converge at any sample\n";
    return kColumnNonConvergent;
  }
  return kSuccess;
}

int run_verify(const std::vector<double>& q_grid, std::uint64_t seed, std::optional<double> tol,
               std::ostream& out) {
  IdentitySuiteConfig config;
  config.q_grid = q_grid;
  config.seed = seed;
  config.tolerance_override = tol;
  for (double q : q_grid) static_cast<void>(DeformationParams(q, 0.0));

  std::vector<std::string> q_text;
  for (double q : q_grid) q_text.push_back(format_number(q));
  out << "# q_grid=" << join(q_text) << " seed=" << seed << '\n';

  std::size_t passed = 0;
  const auto results = run_identity_suite(config);
  for (const IdentityCheck& check : results) {
    out << check.name << " q=" << format_number(check.q) << " cases=" << check.cases
        << " max_residual=" << format_number(check.max_residual)
        << " tol=" << format_number(check.tolerance) << ' ' << (check.passed() ? "PASS" : "FAIL")
        << '\n';
    passed += check.passed() ? 1 : 0;
  }
  out << "verify: " << passed << '/' << results.size() << " passed\n";
  return passed == results.size() ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hahn (q,w)-calculus kinematics and drag solvers", "hahnqw"};
  app.require_subcommand(1);
  std::string format = "csv";
  const auto add_format = [&format](CLI::App& sub) {
    sub.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  KinematicsOptions kinematics;
  auto* kinematics_cmd = app.add_subcommand("kinematics", "Uniform-acceleration trajectories");
  add_kinematics_options(*kinematics_cmd, kinematics);
  add_format(*kinematics_cmd);

  DragOptions drag;
  auto* drag_cmd = app.add_subcommand("drag", "Fall through a resisting medium");
  add_drag_options(*drag_cmd, drag);
  add_format(*drag_cmd);

  std::vector<double> q_grid{0.3, 0.5, 0.9};
  std::uint64_t seed = 1;
  std::optional<double> verify_tol;
  auto* verify_cmd = app.add_subcommand("verify", "Run the operator and series identity suite");
  verify_cmd->add_option("--q-grid", q_grid, "Comma-separated q values")->delimiter(',');
  verify_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify_cmd->add_option("--tol", verify_tol, "Override every identity tolerance");

  std::vector<std::string> sweep_specs;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a base command over a (q, w) grid");
  sweep_cmd->require_subcommand(1);
  KinematicsOptions sweep_kinematics;
  auto* sweep_kinematics_cmd = sweep_cmd->add_subcommand("kinematics", "Sweep kinematics");
  add_kinematics_options(*sweep_kinematics_cmd, sweep_kinematics);
  add_format(*sweep_kinematics_cmd);
  sweep_kinematics_cmd->add_option("--sweep", sweep_specs, "Axis spec, e.g. q=0.1:0.9:9")
      ->required();
  DragOptions sweep_drag;
  auto* sweep_drag_cmd = sweep_cmd->add_subcommand("drag", "Sweep drag");
  add_drag_options(*sweep_drag_cmd, sweep_drag);
  add_format(*sweep_drag_cmd);
  sweep_drag_cmd->add_option("--sweep", sweep_specs, "Axis spec, e.g. w=0:1:5")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*kinematics_cmd) return finish(kinematics_table(kinematics), format, out, err);
    if (*drag_cmd) return finish(drag_table(drag), format, out, err);
    if (*verify_cmd) return run_verify(q_grid, seed, verify_tol, out);
    std::vector<SweepAxis> axes;
    for (const std::string& spec : sweep_specs) axes.push_back(SweepAxis::parse(spec));
    if (*sweep_kinematics_cmd) {
      return finish(sweep_kinematics_table(sweep_kinematics, axes), format, out, err);
    }
    return finish(sweep_drag_table(sweep_drag, axes), format, out, err);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace hahn::cli

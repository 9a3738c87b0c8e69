#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbsim/config.hpp"
#include "rbsim/operating_point.hpp"

namespace rbsim::sweep {

enum class Spacing { kLinear, kLog };

// One grid axis over a parameter path. Either a [lo, hi] range with
// count >= 2 points, or an explicit list of values.
struct Axis {
  std::string path;
  double lo = 0.0;
  double hi = 1.0;
  int count = 121;
  Spacing spacing = Spacing::kLinear;
  std::vector<double> values;

  static Axis linear(std::string path, double lo, double hi, int count = 121);
  static Axis log(std::string path, double lo, double hi, int count = 121);
  static Axis list(std::string path, std::vector<double> values);

  bool is_list() const { return !values.empty(); }
  void validate() const;
  // Grid coordinates; the last linear point is exactly hi.
  std::vector<double> points() const;
};

enum class Reduction { kNone, kMax, kArgmax };

struct SweepSpec {
  std::string scenario = "paper-2022";  // preset id providing the base config
  std::vector<Axis> axes;               // one or two
  std::vector<std::pair<std::string, double>> overrides;
  Reduction reduction = Reduction::kNone;
  std::string reduce_quantity;
  std::size_t reduce_axis = 0;

  void validate() const;
};

using Evaluator = std::function<OperatingPoint(const Config&)>;

struct SweepOptions {
  int workers = 1;
  // Defaults to evaluate_operating_point.
  Evaluator evaluator;
};

struct GridPoint {
  std::vector<std::size_t> index;
  std::vector<double> coords;
  OperatingPoint op;
};

struct SweepMetadata {
  std::string scenario;
  std::string timestamp;  // ISO-8601 UTC, informational only
  std::string config_text;
  std::string config_digest;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<std::vector<double>> axis_values;
  std::vector<GridPoint> points;  // row-major, axis 0 outermost
  SweepMetadata metadata;

  std::size_t flat_index(const std::vector<std::size_t>& index) const;
  const GridPoint& at(const std::vector<std::size_t>& index) const;
  std::size_t count(PointStatus status) const;
};

// Base configuration for spec.scenario with spec.overrides applied.
Config scenario_config(const SweepSpec& spec);

// Evaluates every grid point. Output order is by grid index whatever the
// worker count. Throws ConfigError for bad paths or values.
SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options = {});
SweepResult run_sweep(const SweepSpec& spec, const Config& base,
                      const SweepOptions& options = {});

// y[i] = max over the reduced axis of the quantity among non-unstable
// points; nullopt marks an empty slice. `arg` holds the reduced-axis
// coordinate of each maximum (first one on ties).
struct Curve {
  std::string x_path;
  std::vector<double> x;
  std::vector<std::optional<double>> y;
  std::vector<std::optional<double>> arg;
};

Curve reduce_max(const SweepResult& result, std::string_view quantity,
                 std::size_t over_axis);

// Curve of a quantity along a 1-D sweep (or along axis 0 at a fixed
// index of axis 1).
Curve extract(const SweepResult& result, std::string_view quantity,
              std::size_t other_index = 0);

enum class Sense { kMaximize, kMinimize };

struct Optimum {
  std::vector<std::pair<std::string, double>> parameters;
  double value = 0.0;
  OperatingPoint op;
  bool refined = false;  // golden-section stage ran
};

struct OptimizeOptions {
  SweepOptions sweep;
  double tolerance = 1e-9;  // bracket width stopping rule, parameter units
  int max_iterations = 200;
};

// Grid search then, for 1-D specs, golden-section refinement inside the
// bracket around the best grid point. Ties go to the lower parameter
// value. Throws OptimizationFailed when no point has the objective.
Optimum find_optimum(const SweepSpec& spec, std::string_view objective,
                     Sense sense, const Config& base,
                     const OptimizeOptions& options = {});
Optimum find_optimum(const SweepSpec& spec, std::string_view objective,
                     Sense sense, const OptimizeOptions& options = {});

}  // namespace rbsim::sweep

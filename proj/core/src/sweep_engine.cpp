#include "rbsim/sweep_engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "rbsim/error.hpp"

namespace rbsim::sweep {
namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Values of a sweep that are meaningless for the quantity being optimized.
constexpr double kWorst = -std::numeric_limits<double>::infinity();

}  // namespace

Axis Axis::linear(std::string path, double lo, double hi, int count) {
  return {std::move(path), lo, hi, count, Spacing::kLinear, {}};
}

Axis Axis::log(std::string path, double lo, double hi, int count) {
  return {std::move(path), lo, hi, count, Spacing::kLog, {}};
}

Axis Axis::list(std::string path, std::vector<double> values) {
  Axis a;
  a.path = std::move(path);
  a.values = std::move(values);
  a.count = static_cast<int>(a.values.size());
  a.lo = a.values.empty() ? 0.0 : *std::min_element(a.values.begin(), a.values.end());
  a.hi = a.values.empty() ? 0.0 : *std::max_element(a.values.begin(), a.values.end());
  return a;
}

void Axis::validate() const {
  if (!has_parameter(path)) {
    throw ConfigError("sweep axis: unknown parameter path '" + path + "'", path);
  }
  if (is_list()) return;
  if (!(lo < hi)) {
    throw ConfigError("sweep axis '" + path + "': lo must be < hi", path);
  }
  if (count < 2) {
    throw ConfigError("sweep axis '" + path + "': count must be >= 2", path);
  }
  if (spacing == Spacing::kLog && !(lo > 0.0)) {
    throw ConfigError("sweep axis '" + path + "': log spacing needs lo > 0", path);
  }
}

std::vector<double> Axis::points() const {
  if (is_list()) return values;
  std::vector<double> out(static_cast<std::size_t>(count));
  const double n = static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / n;
    if (spacing == Spacing::kLinear) {
      out[i] = lo + (hi - lo) * t;
    } else {
      out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
    }
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw ConfigError("sweep: one or two axes are required");
  }
  for (const auto& a : axes) a.validate();
  if (axes.size() == 2 && axes[0].path == axes[1].path) {
    throw ConfigError("sweep: both axes use '" + axes[0].path + "'");
  }
  for (const auto& [path, value] : overrides) {
    if (!has_parameter(path)) {
      throw ConfigError("sweep override: unknown parameter path '" + path + "'",
                        path);
    }
  }
  if (reduction != Reduction::kNone) {
    if (!is_quantity(reduce_quantity)) {
      throw ConfigError("sweep reduction: unknown quantity '" +
                        reduce_quantity + "'");
    }
    if (reduce_axis >= axes.size()) {
      throw ConfigError("sweep reduction: axis index out of range");
    }
  }
}

std::size_t SweepResult::flat_index(const std::vector<std::size_t>& index) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < axis_values.size(); ++k) {
    flat = flat * axis_values[k].size() + index.at(k);
  }
  return flat;
}

const GridPoint& SweepResult::at(const std::vector<std::size_t>& index) const {
  return points.at(flat_index(index));
}

std::size_t SweepResult::count(PointStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      points.begin(), points.end(),
      [status](const GridPoint& p) { return p.op.status == status; }));
}

Config scenario_config(const SweepSpec& spec) {
  Config c = builtin_preset(spec.scenario);
  for (const auto& [path, value] : spec.overrides) set_parameter(c, path, value);
  return c;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  spec.validate();
  return run_sweep(spec, scenario_config(spec), options);
}

SweepResult run_sweep(const SweepSpec& spec, const Config& base,
                      const SweepOptions& options) {
  spec.validate();
  Config resolved = base;
  for (const auto& [path, value] : spec.overrides) {
    set_parameter(resolved, path, value);
  }

  SweepResult result;
  result.spec = spec;
  for (const auto& axis : spec.axes) result.axis_values.push_back(axis.points());
  result.metadata.scenario = spec.scenario;
  result.metadata.timestamp = utc_timestamp();
  result.metadata.config_text = serialize_config(resolved);
  result.metadata.config_digest = config_digest(resolved);

  // Build every grid configuration up front so range errors surface
  // before any evaluation.
  std::size_t total = 1;
  for (const auto& v : result.axis_values) total *= v.size();
  std::vector<Config> configs(total, resolved);
  result.points.resize(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    GridPoint& gp = result.points[flat];
    gp.index.assign(result.axis_values.size(), 0);
    std::size_t rem = flat;
    for (std::size_t k = result.axis_values.size(); k-- > 0;) {
      gp.index[k] = rem % result.axis_values[k].size();
      rem /= result.axis_values[k].size();
    }
    for (std::size_t k = 0; k < result.axis_values.size(); ++k) {
      const double value = result.axis_values[k][gp.index[k]];
      gp.coords.push_back(value);
      set_parameter(configs[flat], spec.axes[k].path, value);
    }
  }

  const Evaluator evaluate =
      options.evaluator ? options.evaluator
                        : [](const Config& c) { return evaluate_operating_point(c); };
  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(1, options.workers)), 1, total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        result.points[i].op = evaluate(configs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

Curve reduce_max(const SweepResult& result, std::string_view quantity_name,
                 std::size_t over_axis) {
  const std::size_t dims = result.axis_values.size();
  if (over_axis >= dims) throw ConfigError("reduce_max: axis index out of range");
  if (!is_quantity(quantity_name)) {
    throw ConfigError("reduce_max: unknown quantity '" +
                      std::string(quantity_name) + "'");
  }

  Curve curve;
  std::size_t keep = dims;  // remaining axis, dims when none remains
  if (dims == 2) {
    keep = 1 - over_axis;
    curve.x_path = result.spec.axes[keep].path;
    curve.x = result.axis_values[keep];
  } else {
    curve.x = {0.0};
  }
  curve.y.assign(curve.x.size(), std::nullopt);
  curve.arg.assign(curve.x.size(), std::nullopt);

  for (const auto& gp : result.points) {
    const std::size_t slot = keep == dims ? 0 : gp.index[keep];
    const std::optional<double> value = quantity(gp.op, quantity_name);
    if (!value) continue;
    if (!curve.y[slot] || *value > *curve.y[slot]) {
      curve.y[slot] = value;
      curve.arg[slot] = gp.coords[over_axis];
    }
  }
  return curve;
}

Curve extract(const SweepResult& result, std::string_view quantity_name,
              std::size_t other_index) {
  Curve curve;
  curve.x_path = result.spec.axes.at(0).path;
  curve.x = result.axis_values.at(0);
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    std::vector<std::size_t> idx{i};
    if (result.axis_values.size() == 2) idx.push_back(other_index);
    curve.y.push_back(quantity(result.at(idx).op, quantity_name));
    curve.arg.push_back(std::nullopt);
  }
  return curve;
}

Optimum find_optimum(const SweepSpec& spec, std::string_view objective,
                     Sense sense, const OptimizeOptions& options) {
  spec.validate();
  return find_optimum(spec, objective, sense, scenario_config(spec), options);
}

Optimum find_optimum(const SweepSpec& spec, std::string_view objective,
                     Sense sense, const Config& base,
                     const OptimizeOptions& options) {
  if (!is_quantity(objective)) {
    throw ConfigError("optimize: unknown objective '" + std::string(objective) +
                      "'");
  }
  const SweepResult grid = run_sweep(spec, base, options.sweep);
  const double sign = sense == Sense::kMaximize ? 1.0 : -1.0;
  auto score = [&](const OperatingPoint& op) {
    const std::optional<double> v = quantity(op, objective);
    return v && std::isfinite(*v) ? sign * *v : kWorst;
  };

  // Grid order is ascending along every range axis, so keeping the first
  // strict improvement breaks ties toward the lower parameter value.
  const GridPoint* best = nullptr;
  double best_score = kWorst;
  for (const auto& gp : grid.points) {
    const double s = score(gp.op);
    if (s > best_score) {
      best = &gp;
      best_score = s;
    }
  }
  if (best == nullptr) {
    throw OptimizationFailed("optimize: no stable grid point has '" +
                             std::string(objective) + "'");
  }

  Optimum out;
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    out.parameters.emplace_back(spec.axes[k].path, best->coords[k]);
  }
  out.op = best->op;
  out.value = sign * best_score;

  const Axis& axis = spec.axes.front();
  if (spec.axes.size() != 1 || axis.is_list()) return out;

  // Golden-section search on the bracket around the best grid point.
  const std::vector<double>& xs = grid.axis_values.front();
  const std::size_t i = best->index.front();
  double lo = xs[i == 0 ? 0 : i - 1];
  double hi = xs[std::min(i + 1, xs.size() - 1)];

  Config probe = base;
  for (const auto& [path, value] : spec.overrides) set_parameter(probe, path, value);
  const Evaluator evaluate =
      options.sweep.evaluator
          ? options.sweep.evaluator
          : [](const Config& c) { return evaluate_operating_point(c); };
  auto eval_at = [&](double x) {
    set_parameter(probe, axis.path, x);
    OperatingPoint op = evaluate(probe);
    return std::pair{score(op), std::move(op)};
  };

  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  auto [f1, op1] = eval_at(x1);
  auto [f2, op2] = eval_at(x2);
  for (int it = 0; it < options.max_iterations && hi - lo > options.tolerance;
       ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      op2 = std::move(op1);
      x1 = hi - kInvPhi * (hi - lo);
      std::tie(f1, op1) = eval_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      op1 = std::move(op2);
      x2 = lo + kInvPhi * (hi - lo);
      std::tie(f2, op2) = eval_at(x2);
    }
  }
  out.refined = true;
  const bool first = f1 >= f2;
  const double refined_score = first ? f1 : f2;
  if (refined_score > best_score) {
    out.parameters.front().second = first ? x1 : x2;
    out.value = sign * refined_score;
    out.op = first ? std::move(op1) : std::move(op2);
  }
  return out;
}

}  // namespace rbsim::sweep

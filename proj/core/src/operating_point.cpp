#include "rbsim/operating_point.hpp"

#include <array>

#include "rbsim/error.hpp"

namespace rbsim {
namespace {

struct QuantityDef {
  std::string_view name;
  std::string_view unit;
  double (*get)(const OperatingPoint&);
};

constexpr std::array kQuantities = {
    QuantityDef{"spot_radius", "m", [](const OperatingPoint& o) { return o.power.spot_radius; }},
    QuantityDef{"vd", "1", [](const OperatingPoint& o) { return o.power.losses.vd; }},
    QuantityDef{"v", "1", [](const OperatingPoint& o) { return o.power.losses.v; }},
    QuantityDef{"g_sat", "m^-1", [](const OperatingPoint& o) { return o.power.g_sat; }},
    QuantityDef{"n_th", "m^-3", [](const OperatingPoint& o) { return o.power.n_th; }},
    QuantityDef{"tau", "s", [](const OperatingPoint& o) { return o.power.tau; }},
    QuantityDef{"p_th", "W", [](const OperatingPoint& o) { return o.power.p_th; }},
    QuantityDef{"eta_s", "1", [](const OperatingPoint& o) { return o.power.eta_s; }},
    QuantityDef{"p_beam", "W", [](const OperatingPoint& o) { return o.power.p_beam; }},
    QuantityDef{"eta_b", "1", [](const OperatingPoint& o) { return o.power.eta_b; }},
    QuantityDef{"p_pv_in", "W", [](const OperatingPoint& o) { return o.swipt.p_pv_in; }},
    QuantityDef{"p_apd_in", "W", [](const OperatingPoint& o) { return o.swipt.p_apd_in; }},
    QuantityDef{"p_e_out_raw", "W", [](const OperatingPoint& o) { return o.swipt.p_e_out_raw; }},
    QuantityDef{"p_e_out", "W", [](const OperatingPoint& o) { return o.swipt.p_e_out; }},
    QuantityDef{"eta_e", "1", [](const OperatingPoint& o) { return o.swipt.eta_e; }},
    QuantityDef{"i_d", "A", [](const OperatingPoint& o) { return o.swipt.i_d; }},
    QuantityDef{"n_thermal_sq", "A^2", [](const OperatingPoint& o) { return o.swipt.n_thermal_sq; }},
    QuantityDef{"n_shot_sq", "A^2", [](const OperatingPoint& o) { return o.swipt.n_shot_sq; }},
    QuantityDef{"n_total_sq", "A^2", [](const OperatingPoint& o) { return o.swipt.n_total_sq; }},
    QuantityDef{"c_tilde", "bit/s/Hz", [](const OperatingPoint& o) { return o.swipt.c_tilde; }},
};

constexpr std::array<std::string_view, kQuantities.size()> kNames = [] {
  std::array<std::string_view, kQuantities.size()> names{};
  for (std::size_t i = 0; i < kQuantities.size(); ++i) names[i] = kQuantities[i].name;
  return names;
}();

const QuantityDef* find(std::string_view name) {
  for (const auto& q : kQuantities) {
    if (q.name == name) return &q;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::kOk:
      return "ok";
    case PointStatus::kUnstable:
      return "unstable";
    case PointStatus::kSubThreshold:
      return "sub-threshold";
  }
  return "unknown";
}

OperatingPoint evaluate_operating_point(const ModelParameters& params) {
  OperatingPoint op;
  try {
    op.power = gain::evaluate_link(params.geometry, params.gain, params.pump,
                                   params.vc, params.p_in,
                                   params.slope_exponent);
  } catch (const UnstableResonator& e) {
    op.status = PointStatus::kUnstable;
    op.note = e.what();
    return op;
  } catch (const DegenerateCavity& e) {
    op.status = PointStatus::kUnstable;
    op.note = e.what();
    return op;
  }
  op.swipt = receiver::evaluate_receiver(op.power.p_beam, params.p_in,
                                         params.receiver);
  if (params.p_in <= op.power.p_th) {
    op.status = PointStatus::kSubThreshold;
    op.note = "input power at or below threshold";
  }
  return op;
}

OperatingPoint evaluate_operating_point(const Config& config) {
  return evaluate_operating_point(resolve(config));
}

std::span<const std::string_view> quantity_names() { return kNames; }

bool is_quantity(std::string_view name) { return find(name) != nullptr; }

std::optional<double> quantity(const OperatingPoint& op, std::string_view name) {
  const QuantityDef* q = find(name);
  if (q == nullptr) {
    throw ConfigError("unknown quantity '" + std::string(name) + "'",
                      std::string(name));
  }
  if (op.status == PointStatus::kUnstable) return std::nullopt;
  return q->get(op);
}

std::string_view quantity_unit(std::string_view name) {
  const QuantityDef* q = find(name);
  if (q == nullptr) {
    throw ConfigError("unknown quantity '" + std::string(name) + "'",
                      std::string(name));
  }
  return q->unit;
}

}  // namespace rbsim

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rbsim/config.hpp"
#include "rbsim/gain_power.hpp"
#include "rbsim/receiver.hpp"

namespace rbsim {

enum class PointStatus { kOk, kUnstable, kSubThreshold };

std::string_view to_string(PointStatus status);

// One fully evaluated link state.
struct OperatingPoint {
  PointStatus status = PointStatus::kOk;
  gain::PowerResult power;
  receiver::SwiptResult swipt;
  std::string note;  // reason for a non-ok status
};

// Unstable or degenerate cavities become kUnstable rather than throwing;
// p_in <= P_th gives kSubThreshold with the clamped values filled in.
// Invalid parameters still throw.
OperatingPoint evaluate_operating_point(const ModelParameters& params);
OperatingPoint evaluate_operating_point(const Config& config);

// Named scalar fields of an OperatingPoint. Empty for unstable points.
std::span<const std::string_view> quantity_names();
bool is_quantity(std::string_view name);
std::optional<double> quantity(const OperatingPoint& op, std::string_view name);
// SI unit label for a quantity ("m", "W", "bit/s/Hz", "1", ...).
std::string_view quantity_unit(std::string_view name);

}  // namespace rbsim

#pragma once

#include <string>
#include <string_view>

namespace rbsim::units {

enum class Dimension {
  kDimensionless,
  kLength,
  kInverseLength,
  kInverseVolume,
  kRate,
  kVolumeRate,
  kAugerRate,
  kArea,
  kPower,
  kCurrent,
  kFrequency,
  kResistance,
  kTemperature,
  kEntropy,
  kCharge,
  kResponsivity,
};

// SI unit symbol written by the serializer for a dimension.
std::string_view si_symbol(Dimension dim);

struct Quantity {
  double value = 0.0;  // SI
  std::string unit;    // as written
};

// Parses "<number> <unit>" (space optional) into SI for the expected
// dimension. Dimensionless values take no unit. "inf"/"-inf" are accepted
// only when allow_infinite is set. Throws ConfigError on failure.
Quantity parse_quantity(std::string_view text, Dimension dim,
                        bool allow_infinite = false);

// Shortest decimal that reads back to exactly the same double.
std::string format_double(double value);

}  // namespace rbsim::units

#include "rbsim/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "rbsim/error.hpp"

namespace rbsim::units {
namespace {

struct UnitDef {
  std::string_view symbol;
  Dimension dim;
  int exponent;  // SI value = value * 10^exponent
};

constexpr std::array kUnits = {
    UnitDef{"m", Dimension::kLength, 0},
    UnitDef{"km", Dimension::kLength, 3},
    UnitDef{"cm", Dimension::kLength, -2},
    UnitDef{"mm", Dimension::kLength, -3},
    UnitDef{"um", Dimension::kLength, -6},
    UnitDef{"nm", Dimension::kLength, -9},
    UnitDef{"m^-1", Dimension::kInverseLength, 0},
    UnitDef{"cm^-1", Dimension::kInverseLength, 2},
    UnitDef{"mm^-1", Dimension::kInverseLength, 3},
    UnitDef{"m^-3", Dimension::kInverseVolume, 0},
    UnitDef{"cm^-3", Dimension::kInverseVolume, 6},
    UnitDef{"s^-1", Dimension::kRate, 0},
    UnitDef{"m^3/s", Dimension::kVolumeRate, 0},
    UnitDef{"cm^3/s", Dimension::kVolumeRate, -6},
    UnitDef{"m^6/s", Dimension::kAugerRate, 0},
    UnitDef{"cm^6/s", Dimension::kAugerRate, -12},
    UnitDef{"m^2", Dimension::kArea, 0},
    UnitDef{"cm^2", Dimension::kArea, -4},
    UnitDef{"mm^2", Dimension::kArea, -6},
    UnitDef{"W", Dimension::kPower, 0},
    UnitDef{"mW", Dimension::kPower, -3},
    UnitDef{"kW", Dimension::kPower, 3},
    UnitDef{"A", Dimension::kCurrent, 0},
    UnitDef{"mA", Dimension::kCurrent, -3},
    UnitDef{"uA", Dimension::kCurrent, -6},
    UnitDef{"nA", Dimension::kCurrent, -9},
    UnitDef{"Hz", Dimension::kFrequency, 0},
    UnitDef{"kHz", Dimension::kFrequency, 3},
    UnitDef{"MHz", Dimension::kFrequency, 6},
    UnitDef{"GHz", Dimension::kFrequency, 9},
    UnitDef{"Ohm", Dimension::kResistance, 0},
    UnitDef{"kOhm", Dimension::kResistance, 3},
    UnitDef{"MOhm", Dimension::kResistance, 6},
    UnitDef{"K", Dimension::kTemperature, 0},
    UnitDef{"J/K", Dimension::kEntropy, 0},
    UnitDef{"C", Dimension::kCharge, 0},
    UnitDef{"A/W", Dimension::kResponsivity, 0},
};

// Applies the power of ten to the decimal text itself and parses once, so
// "6e-30" in cm^6/s becomes the double nearest 6e-42 rather than a product
// carrying two roundings.
double scale_decimal(std::string_view number, int exponent) {
  if (exponent == 0) {
    double v = 0.0;
    std::from_chars(number.data(), number.data() + number.size(), v);
    return v;
  }
  std::string_view mantissa = number;
  long long exp10 = exponent;
  if (const auto e = number.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = number.substr(0, e);
    std::string_view tail = number.substr(e + 1);
    if (!tail.empty() && tail.front() == '+') tail.remove_prefix(1);
    long long given = 0;
    std::from_chars(tail.data(), tail.data() + tail.size(), given);
    exp10 += given;
  }
  const std::string text = std::string(mantissa) + "e" + std::to_string(exp10);
  double v = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), v);
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view si_symbol(Dimension dim) {
  if (dim == Dimension::kDimensionless) return {};
  for (const auto& u : kUnits) {
    if (u.dim == dim && u.exponent == 0) return u.symbol;
  }
  return {};
}

Quantity parse_quantity(std::string_view text, Dimension dim,
                        bool allow_infinite) {
  text = trim(text);
  if (text.empty()) throw ConfigError("missing value");

  double value = 0.0;
  std::string_view number;
  std::string_view rest;
  const bool negative = text.front() == '-';
  const std::string_view unsigned_text = negative ? text.substr(1) : text;
  if (unsigned_text.starts_with("inf")) {
    if (!allow_infinite) throw ConfigError("infinite value not allowed here");
    value = negative ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
    rest = unsigned_text.substr(3);
  } else {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) {
      throw ConfigError("malformed number '" + std::string(text) + "'");
    }
    number = std::string_view(first, static_cast<std::size_t>(ptr - first));
    rest = std::string_view(ptr, static_cast<std::size_t>(last - ptr));
  }
  const std::string_view unit = trim(rest);

  if (dim == Dimension::kDimensionless) {
    if (!unit.empty()) {
      throw ConfigError("unexpected unit '" + std::string(unit) +
                        "' on dimensionless value");
    }
    return {value, {}};
  }
  if (unit.empty()) {
    throw ConfigError("missing unit (expected e.g. '" +
                      std::string(si_symbol(dim)) + "')");
  }
  for (const auto& u : kUnits) {
    if (u.symbol == unit) {
      if (u.dim != dim) {
        throw ConfigError("unit '" + std::string(unit) +
                          "' has the wrong dimension (expected e.g. '" +
                          std::string(si_symbol(dim)) + "')");
      }
      const double si = number.empty() || u.exponent == 0
                            ? value
                            : scale_decimal(number, u.exponent);
      return {si, std::string(unit)};
    }
  }
  throw ConfigError("unknown unit '" + std::string(unit) + "'");
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace rbsim::units

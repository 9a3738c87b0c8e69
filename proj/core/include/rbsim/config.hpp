#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbsim/gain_power.hpp"
#include "rbsim/ray_optics.hpp"
#include "rbsim/receiver.hpp"
#include "rbsim/units.hpp"

namespace rbsim {

// Cavity description as written in configuration files. The telescope is
// given either by its gain-side compression ratio M (f2 = -f1 * M) or by an
// explicit f2; M2 either by fr2 or by fr2_margin, the distance of fr2 above
// the stability edge of the remaining cavity.
struct GeometrySection {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double f1 = 0.0;
  std::optional<double> compression;
  std::optional<double> f2;
  std::optional<double> lt;  // defaults to the afocal spacing f1 + f2
  double fr1 = optics::kInfinity;
  std::optional<double> fr2;
  std::optional<double> fr2_margin;
  double r1 = 1.0;
  double r2 = 1.0;
  double lambda_beam = 0.0;
};

struct PumpSection {
  gain::PumpModel model;
  double p_in = 0.0;  // electrical input power, W
};

struct LossSection {
  double vc = 1.0;
  gain::SlopeLossExponent slope_exponent = gain::SlopeLossExponent::kSingle;
};

struct SweepSection {
  int workers = 1;
  int default_points = 121;
};

struct Config {
  std::string preset;
  GeometrySection geometry;
  gain::GainModel gain;
  PumpSection pump;
  LossSection losses;
  receiver::ReceiverModel receiver;
  SweepSection sweep;
};

// Everything the model needs for one evaluation, SI units.
struct ModelParameters {
  optics::ResonatorGeometry geometry;
  gain::GainModel gain;
  gain::PumpModel pump;
  double vc = 1.0;
  gain::SlopeLossExponent slope_exponent = gain::SlopeLossExponent::kSingle;
  double p_in = 0.0;
  receiver::ReceiverModel receiver;
};

// Derives f2, lt and fr2 from the configured form and validates every
// section. Throws InvalidArgument / ConfigError.
ModelParameters resolve(const Config& config);

// Parses the sectioned key = value format. Keys missing from the text are
// taken from the preset named by a top-level `preset = <id>` line
// (paper-2022 when absent). Throws ConfigError naming key and line.
Config parse_config(std::string_view text);

// Full-precision SI serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const Config& config);

// 64-bit FNV-1a of serialize_config, as 16 hex digits.
std::string config_digest(const Config& config);

bool operator==(const Config& a, const Config& b);

// Dotted parameter paths ("geometry.M", "gain.l", "pump.p_in", ...).
struct ParameterInfo {
  std::string path;
  units::Dimension dimension;
};
const std::vector<ParameterInfo>& parameter_paths();
bool has_parameter(std::string_view path);
units::Dimension parameter_dimension(std::string_view path);
// SI value; throws ConfigError for unknown paths or out-of-range values.
void set_parameter(Config& config, std::string_view path, double value);
std::optional<double> get_parameter(const Config& config, std::string_view path);
// "path=<value> <unit>" as accepted on the command line.
void apply_assignment(Config& config, std::string_view assignment);

// Built-in scenario presets.
std::vector<std::string> preset_ids();
const Config& builtin_preset(std::string_view id);
// Source text of a built-in preset, in the units it was written with.
std::string_view preset_text(std::string_view id);

}  // namespace rbsim

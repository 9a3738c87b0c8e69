#include "rbsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rbsim/error.hpp"

namespace rbsim {
namespace {

using units::Dimension;

struct Field {
  std::string section;
  std::string key;
  Dimension dim;
  bool allow_infinite = false;
  bool integer = false;
  bool optional = false;
  std::string exclusive_with;  // key in the same section
  std::function<std::optional<double>(const Config&)> get;
  std::function<void(Config&, double)> set;
  std::function<const char*(double)> check;

  std::string path() const { return section + "." + key; }
};

const char* positive(double v) {
  return v > 0.0 && std::isfinite(v) ? nullptr : "must be > 0";
}
const char* non_negative(double v) {
  return v >= 0.0 && std::isfinite(v) ? nullptr : "must be >= 0";
}
const char* finite(double v) {
  return std::isfinite(v) ? nullptr : "must be finite";
}
const char* non_zero(double v) {
  return v != 0.0 && !std::isnan(v) ? nullptr : "must be non-zero";
}
const char* non_zero_finite(double v) {
  return v != 0.0 && std::isfinite(v) ? nullptr : "must be non-zero and finite";
}
const char* open_unit(double v) {
  return v > 0.0 && v <= 1.0 ? nullptr : "must lie in (0, 1]";
}
const char* closed_unit(double v) {
  return v >= 0.0 && v <= 1.0 ? nullptr : "must lie in [0, 1]";
}

// Plain double member.
template <typename Member>
Field scalar(std::string section, std::string key, Dimension dim,
             Member member, const char* (*check)(double),
             bool allow_infinite = false) {
  Field f;
  f.section = std::move(section);
  f.key = std::move(key);
  f.dim = dim;
  f.allow_infinite = allow_infinite;
  f.get = [member](const Config& c) -> std::optional<double> {
    return std::invoke(member, c);
  };
  f.set = [member](Config& c, double v) { std::invoke(member, c) = v; };
  f.check = check;
  return f;
}

// std::optional<double> member, cleared when its exclusive partner is set.
Field optional_scalar(std::string section, std::string key, Dimension dim,
                      std::optional<double> GeometrySection::*member,
                      std::optional<double> GeometrySection::*partner,
                      std::string partner_key, const char* (*check)(double)) {
  Field f;
  f.section = std::move(section);
  f.key = std::move(key);
  f.dim = dim;
  f.optional = true;
  f.exclusive_with = std::move(partner_key);
  f.get = [member](const Config& c) { return c.geometry.*member; };
  f.set = [member, partner](Config& c, double v) {
    c.geometry.*member = v;
    if (partner != nullptr) c.geometry.*partner = std::nullopt;
  };
  f.check = check;
  return f;
}

std::vector<Field> build_fields() {
  using G = GeometrySection;
  std::vector<Field> f;
  auto geo = [](double G::*m) {
    return [m](auto& c) -> auto& { return c.geometry.*m; };
  };
  f.push_back(scalar("geometry", "d1", Dimension::kLength, geo(&G::d1), positive));
  f.push_back(scalar("geometry", "d2", Dimension::kLength, geo(&G::d2), positive));
  f.push_back(scalar("geometry", "d3", Dimension::kLength, geo(&G::d3), positive));
  f.push_back(scalar("geometry", "f1", Dimension::kLength, geo(&G::f1), non_zero_finite));
  f.push_back(optional_scalar("geometry", "M", Dimension::kDimensionless,
                              &G::compression, &G::f2, "f2", positive));
  f.push_back(optional_scalar("geometry", "f2", Dimension::kLength, &G::f2,
                              &G::compression, "M", non_zero));
  f.push_back(optional_scalar("geometry", "lt", Dimension::kLength, &G::lt,
                              nullptr, "", finite));
  f.push_back(scalar("geometry", "fr1", Dimension::kLength, geo(&G::fr1), non_zero, true));
  {
    Field fr2 = optional_scalar("geometry", "fr2", Dimension::kLength, &G::fr2,
                                &G::fr2_margin, "fr2_margin", non_zero);
    fr2.allow_infinite = true;
    f.push_back(std::move(fr2));
  }
  f.push_back(optional_scalar("geometry", "fr2_margin", Dimension::kLength,
                              &G::fr2_margin, &G::fr2, "fr2", finite));
  f.push_back(scalar("geometry", "r1", Dimension::kDimensionless, geo(&G::r1), open_unit));
  f.push_back(scalar("geometry", "r2", Dimension::kDimensionless, geo(&G::r2), open_unit));
  f.push_back(scalar("geometry", "lambda_beam", Dimension::kLength, geo(&G::lambda_beam), positive));

  using gain::GainModel;
  auto gm = [](double GainModel::*m) {
    return [m](auto& c) -> auto& { return c.gain.*m; };
  };
  f.push_back(scalar("gain", "g0", Dimension::kInverseLength, gm(&GainModel::g0), positive));
  f.push_back(scalar("gain", "n0", Dimension::kInverseVolume, gm(&GainModel::n0), positive));
  f.push_back(scalar("gain", "gamma_conf", Dimension::kDimensionless, gm(&GainModel::gamma_conf), positive));
  f.push_back(scalar("gain", "alpha", Dimension::kRate, gm(&GainModel::alpha), positive));
  f.push_back(scalar("gain", "beta", Dimension::kVolumeRate, gm(&GainModel::beta), positive));
  f.push_back(scalar("gain", "auger", Dimension::kAugerRate, gm(&GainModel::auger), positive));
  f.push_back(scalar("gain", "l", Dimension::kLength, gm(&GainModel::l), positive));
  f.push_back(scalar("gain", "a_s", Dimension::kArea, gm(&GainModel::a_s), positive));
  f.push_back(scalar("gain", "a", Dimension::kLength, gm(&GainModel::a), positive));

  using gain::PumpModel;
  auto pm = [](double PumpModel::*m) {
    return [m](auto& c) -> auto& { return c.pump.model.*m; };
  };
  f.push_back(scalar("pump", "eta_pc", Dimension::kDimensionless, pm(&PumpModel::eta_pc), open_unit));
  f.push_back(scalar("pump", "eta_pa", Dimension::kDimensionless, pm(&PumpModel::eta_pa), open_unit));
  f.push_back(scalar("pump", "lambda_pump", Dimension::kLength, pm(&PumpModel::lambda_pump), positive));
  f.push_back(scalar("pump", "p_in", Dimension::kPower,
                     [](auto& c) -> auto& { return c.pump.p_in; }, non_negative));

  f.push_back(scalar("losses", "vc", Dimension::kDimensionless,
                     [](auto& c) -> auto& { return c.losses.vc; }, open_unit));
  {
    Field e;
    e.section = "losses";
    e.key = "slope_loss_exponent";
    e.dim = Dimension::kDimensionless;
    e.integer = true;
    e.get = [](const Config& c) -> std::optional<double> {
      return static_cast<double>(static_cast<int>(c.losses.slope_exponent));
    };
    e.set = [](Config& c, double v) {
      c.losses.slope_exponent = v == 2.0 ? gain::SlopeLossExponent::kSquared
                                         : gain::SlopeLossExponent::kSingle;
    };
    e.check = [](double v) -> const char* {
      return v == 1.0 || v == 2.0 ? nullptr : "must be 1 or 2";
    };
    f.push_back(std::move(e));
  }

  using receiver::ReceiverModel;
  auto rx = [](double ReceiverModel::*m) {
    return [m](auto& c) -> auto& { return c.receiver.*m; };
  };
  f.push_back(scalar("receiver", "mu", Dimension::kDimensionless, rx(&ReceiverModel::mu), closed_unit));
  f.push_back(scalar("receiver", "eta_p", Dimension::kDimensionless, rx(&ReceiverModel::eta_p), finite));
  f.push_back(scalar("receiver", "p_pth", Dimension::kPower, rx(&ReceiverModel::p_pth), finite));
  f.push_back(scalar("receiver", "nu", Dimension::kResponsivity, rx(&ReceiverModel::nu), positive));
  f.push_back(scalar("receiver", "b_x", Dimension::kFrequency, rx(&ReceiverModel::b_x), positive));
  f.push_back(scalar("receiver", "i_bg", Dimension::kCurrent, rx(&ReceiverModel::i_bg), non_negative));
  f.push_back(scalar("receiver", "r_l", Dimension::kResistance, rx(&ReceiverModel::r_l), positive));
  f.push_back(scalar("receiver", "t_bg", Dimension::kTemperature, rx(&ReceiverModel::t_bg), positive));
  f.push_back(scalar("receiver", "k_b", Dimension::kEntropy, rx(&ReceiverModel::k_b), positive));
  f.push_back(scalar("receiver", "q_e", Dimension::kCharge, rx(&ReceiverModel::q_e), positive));

  auto int_field = [](std::string key, int SweepSection::*m,
                      const char* (*check)(double)) {
    Field s;
    s.section = "sweep";
    s.key = std::move(key);
    s.dim = Dimension::kDimensionless;
    s.integer = true;
    s.get = [m](const Config& c) -> std::optional<double> {
      return static_cast<double>(c.sweep.*m);
    };
    s.set = [m](Config& c, double v) { c.sweep.*m = static_cast<int>(v); };
    s.check = check;
    return s;
  };
  f.push_back(int_field("workers", &SweepSection::workers, [](double v) -> const char* {
    return v >= 1.0 && v <= 1024.0 ? nullptr : "must be an integer in [1, 1024]";
  }));
  f.push_back(int_field("points", &SweepSection::default_points, [](double v) -> const char* {
    return v >= 2.0 && v <= 1e6 ? nullptr : "must be an integer in [2, 1e6]";
  }));
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = build_fields();
  return kFields;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

const Field* find_field(std::string_view section, std::string_view key) {
  const std::string k = lower(key);
  for (const auto& f : fields()) {
    if (f.section == section && lower(f.key) == k) return &f;
  }
  return nullptr;
}

const Field* find_path(std::string_view path) {
  const auto dot = path.find('.');
  if (dot == std::string_view::npos) return nullptr;
  return find_field(path.substr(0, dot), path.substr(dot + 1));
}

void checked_set(const Field& f, Config& c, double v, int line = 0) {
  if (f.integer && v != std::floor(v)) {
    throw ConfigError(f.path() + ": must be an integer", f.path(), line);
  }
  if (const char* why = f.check(v)) {
    std::ostringstream os;
    os << f.path() << " = " << units::format_double(v) << ": " << why;
    if (line > 0) os << " (line " << line << ")";
    throw ConfigError(os.str(), f.path(), line);
  }
  f.set(c, v);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  int number;
  std::string section;
  std::string key;
  std::string value;
};

struct ParsedText {
  std::string preset;
  int preset_line = 0;
  std::vector<Line> lines;
};

ParsedText tokenize(std::string_view text) {
  ParsedText out;
  std::string section;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    raw = trim(raw);
    if (raw.empty()) continue;
    if (raw.front() == '[') {
      if (raw.back() != ']') {
        throw ConfigError("line " + std::to_string(number) +
                              ": malformed section header",
                          {}, number);
      }
      section = lower(trim(raw.substr(1, raw.size() - 2)));
      static const std::set<std::string> kSections = {
          "geometry", "gain", "pump", "losses", "receiver", "sweep"};
      if (!kSections.contains(section)) {
        throw ConfigError("line " + std::to_string(number) +
                              ": unknown section [" + section + "]",
                          section, number);
      }
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) +
                            ": expected 'key = value'",
                        {}, number);
    }
    std::string key(trim(raw.substr(0, eq)));
    std::string value(trim(raw.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(number) + ": empty key", {},
                        number);
    }
    if (section.empty()) {
      if (lower(key) != "preset") {
        throw ConfigError("line " + std::to_string(number) + ": unknown key '" +
                              key + "' outside any section",
                          key, number);
      }
      out.preset = value;
      out.preset_line = number;
      continue;
    }
    out.lines.push_back({number, section, key, value});
  }
  return out;
}

// Applies tokenized lines on top of base. With require_complete, every
// non-optional key must appear.
Config apply_lines(const ParsedText& parsed, Config base, bool require_complete) {
  std::set<std::string> seen;
  for (const auto& line : parsed.lines) {
    const Field* f = find_field(line.section, line.key);
    const std::string path = line.section + "." + line.key;
    if (f == nullptr) {
      throw ConfigError("line " + std::to_string(line.number) +
                            ": unknown key '" + path + "'",
                        path, line.number);
    }
    if (!seen.insert(f->path()).second) {
      throw ConfigError("line " + std::to_string(line.number) +
                            ": duplicate key '" + f->path() + "'",
                        f->path(), line.number);
    }
    if (!f->exclusive_with.empty() &&
        seen.contains(f->section + "." + f->exclusive_with)) {
      throw ConfigError("line " + std::to_string(line.number) + ": '" +
                            f->path() + "' conflicts with '" + f->section +
                            "." + f->exclusive_with + "'",
                        f->path(), line.number);
    }
    double value = 0.0;
    try {
      value = units::parse_quantity(line.value, f->dim, f->allow_infinite).value;
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line.number) + ": " +
                            f->path() + ": " + e.what(),
                        f->path(), line.number);
    }
    checked_set(*f, base, value, line.number);
  }
  if (require_complete) {
    for (const auto& f : fields()) {
      if (f.optional || seen.contains(f.path())) continue;
      throw ConfigError("missing key '" + f.path() + "'", f.path());
    }
  }
  return base;
}

std::string_view kLinkPresetText = R"(# Semiconductor-gain resonant beam link with telescope compression.
# Entries marked "assumed" are free choices documented in the README.

[geometry]
d1 = 20 mm
d2 = 20 mm
d3 = 10 m
f1 = -5 mm
M = 12                # assumed operating compression
fr1 = inf m
fr2_margin = 2 m      # assumed, M2 placed 2 m beyond its stability edge
r1 = 0.999
r2 = 0.93             # assumed
lambda_beam = 980 nm

[gain]
g0 = 2000 cm^-1
n0 = 1.7e18 cm^-3
gamma_conf = 2.0
alpha = 1e7 s^-1
beta = 1e-10 cm^3/s
auger = 6e-30 cm^6/s
l = 0.1 um            # assumed
a_s = 3e-4 cm^2
a = 0.2 mm

[pump]
eta_pc = 0.6
eta_pa = 0.85
lambda_pump = 808 nm
p_in = 150 W

[losses]
vc = 0.99
slope_loss_exponent = 1

[receiver]
mu = 0.99
eta_p = 0.3487
p_pth = -1.535 W
nu = 0.6 A/W
b_x = 811.7 MHz
I_bg = 5100 uA
r_l = 10 kOhm
t_bg = 300 K
k_b = 1.38e-23 J/K
q_e = 1.6e-19 C

[sweep]
workers = 4
points = 121
)";

std::string_view kNoTimText = R"(# Same link without telescope compression.
preset = paper-2022

[geometry]
M = 1
)";

struct PresetEntry {
  std::string id;
  std::string_view text;
};

const std::vector<PresetEntry>& preset_entries() {
  static const std::vector<PresetEntry> kEntries = {
      {"paper-2022", kLinkPresetText},
      {"paper-2022-no-tim", kNoTimText},
  };
  return kEntries;
}

const std::map<std::string, Config, std::less<>>& preset_cache() {
  static const std::map<std::string, Config, std::less<>> kCache = [] {
    std::map<std::string, Config, std::less<>> cache;
    for (const auto& entry : preset_entries()) {
      const ParsedText parsed = tokenize(entry.text);
      Config c;
      if (parsed.preset.empty()) {
        c = apply_lines(parsed, Config{}, /*require_complete=*/true);
      } else {
        auto base = cache.find(parsed.preset);
        if (base == cache.end()) {
          throw ConfigError("preset '" + entry.id + "' extends unknown '" +
                            parsed.preset + "'");
        }
        c = apply_lines(parsed, base->second, false);
      }
      c.preset = entry.id;
      cache.emplace(entry.id, std::move(c));
    }
    return cache;
  }();
  return kCache;
}

}  // namespace

ModelParameters resolve(const Config& config) {
  const GeometrySection& gs = config.geometry;
  ModelParameters p;
  optics::ResonatorGeometry& g = p.geometry;
  g.d1 = gs.d1;
  g.d2 = gs.d2;
  g.d3 = gs.d3;
  g.f1 = gs.f1;
  if (gs.f2) {
    g.f2 = *gs.f2;
  } else if (gs.compression) {
    g.f2 = -gs.f1 * *gs.compression;
  } else {
    throw ConfigError("geometry: one of 'M' or 'f2' is required", "geometry.M");
  }
  g.lt = gs.lt ? *gs.lt : g.f1 + g.f2;
  g.fr1 = gs.fr1;
  g.r1 = gs.r1;
  g.r2 = gs.r2;
  g.lambda_beam = gs.lambda_beam;
  if (gs.fr2) {
    g.fr2 = *gs.fr2;
  } else if (gs.fr2_margin) {
    g.fr2 = optics::m2_stability_edge(g) + *gs.fr2_margin;
  } else {
    throw ConfigError("geometry: one of 'fr2' or 'fr2_margin' is required",
                      "geometry.fr2");
  }
  g.validate();

  p.gain = config.gain;
  p.gain.validate();
  p.pump = config.pump.model;
  p.pump.validate();
  p.vc = config.losses.vc;
  p.slope_exponent = config.losses.slope_exponent;
  p.p_in = config.pump.p_in;
  p.receiver = config.receiver;
  p.receiver.validate();
  return p;
}

Config parse_config(std::string_view text) {
  const ParsedText parsed = tokenize(text);
  const std::string id = parsed.preset.empty() ? "paper-2022" : parsed.preset;
  const auto& cache = preset_cache();
  auto it = cache.find(id);
  if (it == cache.end()) {
    throw ConfigError("line " + std::to_string(parsed.preset_line) +
                          ": unknown preset '" + id + "'",
                      "preset", parsed.preset_line);
  }
  Config c = apply_lines(parsed, it->second, false);
  c.preset = id;
  return c;
}

std::string serialize_config(const Config& config) {
  std::ostringstream os;
  if (!config.preset.empty()) os << "preset = " << config.preset << "\n";
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      section = f.section;
      os << "\n[" << section << "]\n";
    }
    const std::optional<double> v = f.get(config);
    if (!v) continue;
    os << f.key << " = " << units::format_double(*v);
    const std::string_view sym = units::si_symbol(f.dim);
    if (!sym.empty()) os << " " << sym;
    os << "\n";
  }
  return os.str();
}

std::string config_digest(const Config& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

bool operator==(const Config& a, const Config& b) {
  return serialize_config(a) == serialize_config(b);
}

const std::vector<ParameterInfo>& parameter_paths() {
  static const std::vector<ParameterInfo> kPaths = [] {
    std::vector<ParameterInfo> out;
    for (const auto& f : fields()) out.push_back({f.path(), f.dim});
    return out;
  }();
  return kPaths;
}

bool has_parameter(std::string_view path) { return find_path(path) != nullptr; }

units::Dimension parameter_dimension(std::string_view path) {
  const Field* f = find_path(path);
  if (f == nullptr) {
    throw ConfigError("unknown parameter path '" + std::string(path) + "'",
                      std::string(path));
  }
  return f->dim;
}

void set_parameter(Config& config, std::string_view path, double value) {
  const Field* f = find_path(path);
  if (f == nullptr) {
    throw ConfigError("unknown parameter path '" + std::string(path) + "'",
                      std::string(path));
  }
  checked_set(*f, config, value);
}

std::optional<double> get_parameter(const Config& config, std::string_view path) {
  const Field* f = find_path(path);
  if (f == nullptr) {
    throw ConfigError("unknown parameter path '" + std::string(path) + "'",
                      std::string(path));
  }
  return f->get(config);
}

void apply_assignment(Config& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected 'path=value', got '" + std::string(assignment) +
                      "'");
  }
  const std::string_view path = trim(assignment.substr(0, eq));
  const Field* f = find_path(path);
  if (f == nullptr) {
    throw ConfigError("unknown parameter path '" + std::string(path) + "'",
                      std::string(path));
  }
  double value = 0.0;
  try {
    value = units::parse_quantity(assignment.substr(eq + 1), f->dim,
                                  f->allow_infinite)
                .value;
  } catch (const ConfigError& e) {
    throw ConfigError(f->path() + ": " + e.what(), f->path());
  }
  checked_set(*f, config, value);
}

std::vector<std::string> preset_ids() {
  std::vector<std::string> ids;
  for (const auto& e : preset_entries()) ids.push_back(e.id);
  return ids;
}

const Config& builtin_preset(std::string_view id) {
  const auto& cache = preset_cache();
  auto it = cache.find(id);
  if (it == cache.end()) {
    throw ConfigError("unknown preset '" + std::string(id) + "'", "preset");
  }
  return it->second;
}

std::string_view preset_text(std::string_view id) {
  for (const auto& e : preset_entries()) {
    if (e.id == id) return e.text;
  }
  throw ConfigError("unknown preset '" + std::string(id) + "'", "preset");
}

}  // namespace rbsim

#include "rbsim/figures.hpp"

#include <fstream>
#include <functional>
#include <set>

#include <json.hpp>

#include "rbsim/error.hpp"
#include "rbsim/units.hpp"

namespace rbsim::figures {
namespace {

using sweep::Axis;
using sweep::SweepSpec;

// A column of the output table fed from one sweep.
struct SeriesData {
  io::Column column;
  std::vector<std::optional<double>> values;
  std::vector<std::string> status;
};

std::string status_of(const OperatingPoint& op) {
  return std::string(to_string(op.status));
}

std::string number_tag(double v) {
  std::string s = units::format_double(v);
  for (char& ch : s) {
    if (ch == '.') ch = 'p';
    if (ch == '-') ch = 'm';
  }
  return s;
}

class Builder {
 public:
  Builder(std::string_view id, const Config& base, const FigureOptions& options)
      : base_(base),
        points_(options.points > 0 ? options.points : base.sweep.default_points),
        workers_(options.workers > 0 ? options.workers : base.sweep.workers) {
    result_.id = std::string(id);
    result_.config = base;
  }

  int points() const { return points_; }

  sweep::SweepResult run(SweepSpec spec) {
    spec.scenario = base_.preset;
    sweep::SweepOptions opts;
    opts.workers = workers_;
    result_.runs.push_back(sweep::run_sweep(spec, base_, opts));
    return result_.runs.back();
  }

  // Quantities along axis 0 of a run, at a fixed index of its axis 1.
  void add_extracted(const sweep::SweepResult& run, std::string_view quantity,
                     std::string column, std::size_t other_index = 0) {
    SeriesData s;
    s.column = {std::move(column), std::string(quantity_unit(quantity))};
    const sweep::Curve c = sweep::extract(run, quantity, other_index);
    s.values = c.y;
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      std::vector<std::size_t> idx{i};
      if (run.axis_values.size() == 2) idx.push_back(other_index);
      s.status.push_back(status_of(run.at(idx).op));
    }
    set_x(run, c.x);
    series_.push_back(std::move(s));
  }

  // Maximum of a quantity over axis 1 of a two-axis run.
  void add_reduced(const sweep::SweepResult& run, std::string_view quantity,
                   std::string column) {
    SeriesData s;
    s.column = {std::move(column), std::string(quantity_unit(quantity))};
    const sweep::Curve c = sweep::reduce_max(run, quantity, 1);
    s.values = c.y;
    for (const auto& y : c.y) s.status.push_back(y ? "ok" : "unstable");
    set_x(run, c.x);
    series_.push_back(std::move(s));
  }

  void plot(std::string column, std::string label, std::string axis = "left") {
    result_.series.push_back({std::move(column), std::move(label), std::move(axis)});
  }

  FigureResult finish(std::string title, std::string x_label,
                      std::string y_label, std::string y2_label = {}) {
    result_.title = std::move(title);
    result_.x_label = std::move(x_label);
    result_.y_label = std::move(y_label);
    result_.y2_label = std::move(y2_label);
    io::CurveTable& t = result_.table;
    t.columns.push_back({x_name_, x_unit_});
    for (const auto& s : series_) t.columns.push_back(s.column);
    for (std::size_t r = 0; r < x_.size(); ++r) {
      std::vector<std::optional<double>> row{x_[r]};
      // One word when every series agrees, otherwise the non-ok series
      // tagged by column, e.g. "w_M1:sub-threshold".
      std::set<std::string> seen;
      std::string tagged;
      for (const auto& s : series_) {
        row.push_back(s.values[r]);
        seen.insert(s.status[r]);
        if (s.status[r] != "ok") {
          tagged += (tagged.empty() ? "" : "|") + s.column.name + ":" + s.status[r];
        }
      }
      t.add_row(std::move(row), seen.size() == 1 ? *seen.begin() : tagged);
    }
    return std::move(result_);
  }

 private:
  void set_x(const sweep::SweepResult& run, const std::vector<double>& x) {
    if (x_.empty()) {
      x_ = x;
      const std::string& path = run.spec.axes.front().path;
      x_name_ = path.substr(path.find('.') + 1);
      const std::string_view sym = units::si_symbol(parameter_dimension(path));
      x_unit_ = sym.empty() ? "1" : std::string(sym);
    } else if (x_ != x) {
      throw Error("figure " + result_.id + ": series disagree on the x grid");
    }
  }

  const Config& base_;
  int points_;
  int workers_;
  FigureResult result_;
  std::vector<double> x_;
  std::string x_name_;
  std::string x_unit_;
  std::vector<SeriesData> series_;
};

constexpr double kD3Lo = 2.0;
constexpr double kD3Hi = 10.0;

FigureResult figure_5a(Builder& b) {
  for (double margin : {1.0, 2.0, 4.0}) {
    SweepSpec spec;
    spec.axes = {Axis::linear("geometry.M", 1.0, 14.0, b.points()),
                 Axis::linear("geometry.d3", kD3Lo, kD3Hi, b.points())};
    spec.overrides = {{"geometry.fr2_margin", margin}};
    const std::string column = "w_max_margin_" + number_tag(margin) + "m";
    b.add_reduced(b.run(spec), "spot_radius", column);
    b.plot(column, "M2 margin " + units::format_double(margin) + " m");
  }
  return b.finish("Maximum spot radius on the gain vs telescope compression",
                  "telescope compression M", "max spot radius over d3 [m]");
}

FigureResult figure_5b(Builder& b) {
  const std::vector<double> ms = {1.0, 4.0, 10.0, 12.0};
  SweepSpec spec;
  spec.axes = {Axis::linear("geometry.d3", kD3Lo, kD3Hi, b.points()),
               Axis::list("geometry.M", ms)};
  const sweep::SweepResult run = b.run(spec);
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const std::string column = "w_M" + number_tag(ms[j]);
    b.add_extracted(run, "spot_radius", column, j);
    b.plot(column, "M = " + units::format_double(ms[j]));
  }
  return b.finish("Spot radius on the gain vs end-to-end distance",
                  "end-to-end distance d3 [m]", "spot radius [m]");
}

FigureResult figure_6(Builder& b) {
  for (double m : {1.0, 6.0, 10.0, 14.0}) {
    SweepSpec spec;
    spec.axes = {Axis::linear("geometry.fr2", 10.0, 60.0, b.points()),
                 Axis::linear("geometry.d3", kD3Lo, kD3Hi, b.points())};
    spec.overrides = {{"geometry.M", m}};
    const std::string column = "w_max_M" + number_tag(m);
    b.add_reduced(b.run(spec), "spot_radius", column);
    b.plot(column, "M = " + units::format_double(m));
  }
  return b.finish("Maximum spot radius on the gain vs M2 curvature factor",
                  "fr2 [m]", "max spot radius over d3 [m]");
}

// P_beam and eta_b along one parameter for two input powers.
FigureResult beam_figure(Builder& b, Axis axis, std::string title,
                         std::string x_label) {
  const std::vector<double> powers = {100.0, 150.0};
  SweepSpec spec;
  spec.axes = {std::move(axis), Axis::list("pump.p_in", powers)};
  const sweep::SweepResult run = b.run(spec);
  for (std::size_t j = 0; j < powers.size(); ++j) {
    const std::string tag = number_tag(powers[j]) + "W";
    b.add_extracted(run, "p_beam", "p_beam_" + tag, j);
    b.add_extracted(run, "eta_b", "eta_b_" + tag, j);
    b.plot("p_beam_" + tag, "P_beam, P_in = " + tag, "left");
    b.plot("eta_b_" + tag, "eta_b, P_in = " + tag, "right");
  }
  return b.finish(std::move(title), std::move(x_label), "beam power [W]",
                  "transmission efficiency");
}

FigureResult swipt_figure(Builder& b, Axis axis,
                          std::pair<std::string, double> fixed,
                          std::string title, std::string x_label) {
  SweepSpec spec;
  spec.axes = {std::move(axis)};
  spec.overrides = {fixed};
  const sweep::SweepResult run = b.run(spec);
  b.add_extracted(run, "c_tilde", "c_tilde");
  b.add_extracted(run, "p_e_out", "p_e_out");
  b.add_extracted(run, "eta_e", "eta_e");
  b.plot("c_tilde", "spectral efficiency", "left");
  b.plot("p_e_out", "electric output power", "right");
  b.plot("eta_e", "end-to-end efficiency", "right");
  return b.finish(std::move(title), std::move(x_label),
                  "spectral efficiency [bit/s/Hz]", "P_Eout [W] / eta_E");
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> kIds = {"5a", "5b", "6", "7",
                                                "8",  "9",  "10"};
  return kIds;
}

bool is_figure(std::string_view id) {
  for (const auto& f : figure_ids()) {
    if (f == id) return true;
  }
  return false;
}

FigureResult reproduce_figure(std::string_view id, const Config& base,
                              const FigureOptions& options) {
  if (!is_figure(id)) {
    throw UsageError("unknown figure id '" + std::string(id) +
                     "' (expected one of 5a 5b 6 7 8 9 10)");
  }
  Builder b(id, base, options);
  const int n = b.points();
  if (id == "5a") return figure_5a(b);
  if (id == "5b") return figure_5b(b);
  if (id == "6") return figure_6(b);
  if (id == "7") {
    return beam_figure(b, Axis::linear("gain.l", 0.05e-6, 3e-6, n),
                       "Beam power and efficiency vs gain layer thickness",
                       "gain thickness l [m]");
  }
  if (id == "8") {
    return beam_figure(b, Axis::linear("geometry.r2", 0.8, 1.0, n),
                       "Beam power and efficiency vs M2 reflectivity",
                       "R2");
  }
  if (id == "9") {
    return swipt_figure(b, Axis::linear("receiver.mu", 0.0, 1.0, n),
                        {"pump.p_in", 100.0},
                        "SWIPT performance vs beam split ratio (P_in = 100 W)",
                        "split ratio mu");
  }
  return swipt_figure(b, Axis::linear("pump.p_in", 50.0, 150.0, n),
                      {"receiver.mu", 0.99},
                      "SWIPT performance vs input power (mu = 0.99)",
                      "input power P_in [W]");
}

io::CurveMetadata curve_metadata(const FigureResult& figure) {
  return {figure.id, figure.title, figure.config.preset,
          config_digest(figure.config), serialize_config(figure.config)};
}

std::string figure_csv(const FigureResult& figure) {
  return io::write_csv(figure.table, curve_metadata(figure));
}

std::string plot_description(const FigureResult& figure,
                             std::string_view csv_name) {
  nlohmann::json j;
  j["figure"] = figure.id;
  j["title"] = figure.title;
  j["csv"] = std::string(csv_name);
  j["scenario"] = figure.config.preset;
  j["config_digest"] = config_digest(figure.config);
  j["config"] = serialize_config(figure.config);
  const io::Column& x = figure.table.columns.front();
  j["x"] = {{"column", x.name}, {"label", figure.x_label}, {"unit", x.unit},
            {"scale", "linear"}};
  j["y"] = {{"label", figure.y_label}};
  if (!figure.y2_label.empty()) j["y2"] = {{"label", figure.y2_label}};
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : figure.series) {
    std::string unit;
    for (const auto& c : figure.table.columns) {
      if (c.name == s.column) unit = c.unit;
    }
    series.push_back(
        {{"column", s.column}, {"label", s.label}, {"axis", s.axis}, {"unit", unit}});
  }
  j["series"] = std::move(series);
  j["status_column"] = "status";
  return j.dump(2) + "\n";
}

WrittenFiles write_figure(const FigureResult& figure,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WrittenFiles out;
  out.csv = dir / ("fig_" + figure.id + ".csv");
  out.plot = dir / ("fig_" + figure.id + ".plot.json");
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << text;
  };
  write(out.csv, figure_csv(figure));
  write(out.plot, plot_description(figure, out.csv.filename().string()));
  return out;
}

}  // namespace rbsim::figures

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rbsim/config.hpp"
#include "rbsim/curve_io.hpp"
#include "rbsim/error.hpp"
#include "rbsim/figures.hpp"
#include "rbsim/operating_point.hpp"
#include "rbsim/sweep_engine.hpp"
#include "rbsim/units.hpp"

namespace rbsim::cli {
namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string preset = "paper-2022";
  std::string config_file;
  std::vector<std::string> assignments;
  std::string p_in;
  std::string out_dir;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--preset", o.preset, "built-in scenario preset");
  cmd->add_option("--config", o.config_file, "configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", o.assignments,
                  "override a parameter, e.g. --set gain.l=0.5um");
  cmd->add_option("--p-in", o.p_in, "input power, e.g. 150W");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--workers", o.workers, "parallel sweep workers")
      ->check(CLI::Range(1, 1024));
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

Config load_config(const CommonOptions& o) {
  Config c = o.config_file.empty() ? builtin_preset(o.preset)
                                   : parse_config(read_file(o.config_file));
  for (const auto& a : o.assignments) apply_assignment(c, a);
  if (!o.p_in.empty()) apply_assignment(c, "pump.p_in=" + o.p_in);
  return c;
}

// --workers changes scheduling only, so it overrides the configured count
// without entering the configuration snapshot written to output files.
int worker_count(const CommonOptions& o, const Config& c) {
  return o.workers > 0 ? o.workers : c.sweep.workers;
}

fs::path output_dir(const CommonOptions& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env) {
    return env;
  }
  return "rbsim-out";
}

std::string unit_suffix(std::string_view unit) {
  return unit == "1" ? std::string() : " " + std::string(unit);
}

std::string report(const OperatingPoint& op, const Config& c) {
  std::ostringstream os;
  os << "scenario = " << c.preset << "\n";
  os << "config_digest = " << config_digest(c) << "\n";
  os << "status = " << to_string(op.status) << "\n";
  if (!op.note.empty()) os << "note = " << op.note << "\n";
  for (std::string_view name : quantity_names()) {
    const std::optional<double> v = quantity(op, name);
    if (!v) continue;
    os << name << " = " << units::format_double(*v)
       << unit_suffix(quantity_unit(name)) << "\n";
  }
  return os.str();
}

// "path=lo:hi:count[:log]" or "path=v1,v2,..." with units on the values.
sweep::Axis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw UsageError("axis '" + text + "': expected path=lo:hi:count");
  }
  const std::string path = text.substr(0, eq);
  const std::string spec = text.substr(eq + 1);
  const units::Dimension dim = parameter_dimension(path);
  auto value = [&](const std::string& s) {
    return units::parse_quantity(s, dim).value;
  };
  if (spec.find(',') != std::string::npos || spec.find(':') == std::string::npos) {
    std::vector<double> values;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) values.push_back(value(item));
    return sweep::Axis::list(path, values);
  }
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) {
    throw UsageError("axis '" + text + "': expected path=lo:hi:count[:log]");
  }
  int count = 0;
  try {
    count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("axis '" + text + "': bad point count");
  }
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "linear") {
      throw UsageError("axis '" + text + "': spacing must be 'linear' or 'log'");
    }
    if (parts[3] == "log") {
      return sweep::Axis::log(path, value(parts[0]), value(parts[1]), count);
    }
  }
  return sweep::Axis::linear(path, value(parts[0]), value(parts[1]), count);
}

std::string sweep_csv(const sweep::SweepResult& r,
                      const std::vector<std::string>& quantities,
                      const std::string& name, const Config& c) {
  io::CurveTable table;
  for (const auto& a : r.spec.axes) {
    const std::string_view sym = units::si_symbol(parameter_dimension(a.path));
    table.columns.push_back({a.path, sym.empty() ? "1" : std::string(sym)});
  }
  for (const auto& q : quantities) {
    table.columns.push_back({q, std::string(quantity_unit(q))});
  }
  for (const auto& gp : r.points) {
    std::vector<std::optional<double>> row(gp.coords.begin(), gp.coords.end());
    for (const auto& q : quantities) row.push_back(quantity(gp.op, q));
    table.add_row(std::move(row), std::string(to_string(gp.op.status)));
  }
  return io::write_csv(table, {name, "sweep", c.preset, config_digest(c),
                               r.metadata.config_text});
}

std::string curve_csv(const sweep::Curve& curve, const sweep::SweepResult& r,
                      const std::string& quantity_name, const std::string& name,
                      bool with_arg) {
  io::CurveTable table;
  const std::size_t reduced = r.spec.reduce_axis;
  auto unit_of = [](const std::string& path) {
    const std::string_view sym = units::si_symbol(parameter_dimension(path));
    return sym.empty() ? std::string("1") : std::string(sym);
  };
  const bool has_x = !curve.x_path.empty();
  if (has_x) table.columns.push_back({curve.x_path, unit_of(curve.x_path)});
  table.columns.push_back({"max_" + quantity_name,
                           std::string(quantity_unit(quantity_name))});
  const std::string& reduced_path = r.spec.axes[reduced].path;
  if (with_arg) {
    table.columns.push_back({"argmax_" + reduced_path, unit_of(reduced_path)});
  }
  for (std::size_t i = 0; i < curve.y.size(); ++i) {
    std::vector<std::optional<double>> row;
    if (has_x) row.push_back(curve.x[i]);
    row.push_back(curve.y[i]);
    if (with_arg) row.push_back(curve.arg[i]);
    table.add_row(std::move(row), curve.y[i] ? "ok" : "unstable");
  }
  return io::write_csv(table, {name, "reduced sweep", r.metadata.scenario,
                               r.metadata.config_digest, r.metadata.config_text});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Resonant beam SWIPT link simulator", "rbsim"};
  app.require_subcommand(1);

  CommonOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "evaluate one operating point");
  add_common(evaluate, eval_opts);

  CommonOptions sweep_opts;
  std::vector<std::string> axes;
  std::vector<std::string> quantities;
  std::string reduce;
  std::string reduce_quantity = "spot_radius";
  std::size_t reduce_axis = 1;
  std::string sweep_name = "sweep";
  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep over one or two parameters");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--axis", axes, "path=lo:hi:count[:log] or path=v1,v2")
      ->required();
  sweep_cmd->add_option("--quantity", quantities, "quantity column(s)");
  sweep_cmd->add_option("--reduce", reduce, "max or argmax")
      ->check(CLI::IsMember({"none", "max", "argmax"}));
  sweep_cmd->add_option("--reduce-quantity", reduce_quantity);
  sweep_cmd->add_option("--reduce-axis", reduce_axis, "axis index to reduce over");
  sweep_cmd->add_option("--name", sweep_name, "output file stem");

  CommonOptions opt_opts;
  std::vector<std::string> opt_axes;
  std::string objective = "p_beam";
  bool minimize = false;
  auto* optimize = app.add_subcommand("optimize", "grid + golden-section design search");
  add_common(optimize, opt_opts);
  optimize->add_option("--axis", opt_axes, "path=lo:hi:count")->required();
  optimize->add_option("--objective", objective, "quantity to optimize");
  optimize->add_flag("--minimize", minimize);

  CommonOptions fig_opts;
  std::string figure_id;
  int fig_points = 0;
  auto* figure = app.add_subcommand("reproduce-figure", "write curve data for a figure");
  add_common(figure, fig_opts);
  figure->add_option("id", figure_id, "5a 5b 6 7 8 9 10 or all")->required();
  figure->add_option("--points", fig_points, "points per axis")
      ->check(CLI::Range(2, 100000));

  std::string preset_id;
  auto* presets = app.add_subcommand("presets", "list or print built-in presets");
  presets->add_option("id", preset_id);

  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate", "check configuration files");
  validate->add_option("files", files)->check(CLI::ExistingFile);

  std::vector<std::string> argv_storage{"rbsim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*evaluate) {
      const Config c = load_config(eval_opts);
      const OperatingPoint op = evaluate_operating_point(c);
      const std::string text = report(op, c);
      out << text;
      write_file(output_dir(eval_opts) / "operating_point.txt", text);
      if (op.status == PointStatus::kUnstable) {
        err << "error: " << op.note << "\n";
        return kUnstable;
      }
      return kOk;
    }

    if (*sweep_cmd) {
      const Config c = load_config(sweep_opts);
      sweep::SweepSpec spec;
      spec.scenario = c.preset;
      for (const auto& a : axes) spec.axes.push_back(parse_axis(a));
      if (quantities.empty()) {
        quantities = {"spot_radius", "p_th", "p_beam", "eta_b",
                      "p_e_out",     "eta_e", "c_tilde"};
      }
      for (const auto& q : quantities) {
        if (!is_quantity(q)) throw ConfigError("unknown quantity '" + q + "'");
      }
      if (reduce == "max" || reduce == "argmax") {
        spec.reduction = reduce == "max" ? sweep::Reduction::kMax
                                         : sweep::Reduction::kArgmax;
        spec.reduce_quantity = reduce_quantity;
        spec.reduce_axis = reduce_axis;
      }
      sweep::SweepOptions so;
      so.workers = worker_count(sweep_opts, c);
      const sweep::SweepResult r = sweep::run_sweep(spec, c, so);
      const fs::path dir = output_dir(sweep_opts);
      const std::size_t unstable = r.count(PointStatus::kUnstable);
      if (unstable == r.points.size()) {
        err << "warning: every grid point is unstable\n";
      }
      write_file(dir / (sweep_name + ".csv"), sweep_csv(r, quantities, sweep_name, c));
      out << "wrote " << (dir / (sweep_name + ".csv")).string() << " ("
          << r.points.size() << " points, " << unstable << " unstable)\n";
      if (spec.reduction != sweep::Reduction::kNone) {
        const sweep::Curve curve =
            sweep::reduce_max(r, spec.reduce_quantity, spec.reduce_axis);
        const fs::path p = dir / (sweep_name + "_" + reduce + ".csv");
        write_file(p, curve_csv(curve, r, spec.reduce_quantity, sweep_name,
                                spec.reduction == sweep::Reduction::kArgmax));
        out << "wrote " << p.string() << "\n";
      }
      return kOk;
    }

    if (*optimize) {
      const Config c = load_config(opt_opts);
      sweep::SweepSpec spec;
      spec.scenario = c.preset;
      for (const auto& a : opt_axes) spec.axes.push_back(parse_axis(a));
      sweep::OptimizeOptions oo;
      oo.sweep.workers = worker_count(opt_opts, c);
      const sweep::Optimum best = sweep::find_optimum(
          spec, objective,
          minimize ? sweep::Sense::kMinimize : sweep::Sense::kMaximize, c, oo);
      std::ostringstream os;
      os << "objective = " << objective << "\n";
      os << "sense = " << (minimize ? "minimize" : "maximize") << "\n";
      for (const auto& [path, value] : best.parameters) {
        os << path << " = " << units::format_double(value) << "\n";
      }
      os << "value = " << units::format_double(best.value)
         << unit_suffix(quantity_unit(objective)) << "\n";
      os << "refined = " << (best.refined ? "true" : "false") << "\n";
      os << "\n[operating point]\n" << report(best.op, c);
      out << os.str();
      write_file(output_dir(opt_opts) / "optimum.txt", os.str());
      return kOk;
    }

    if (*figure) {
      const Config c = load_config(fig_opts);
      std::vector<std::string> ids;
      if (figure_id == "all") {
        ids = figures::figure_ids();
      } else {
        ids = {figure_id};
      }
      figures::FigureOptions fo;
      fo.points = fig_points;
      fo.workers = worker_count(fig_opts, c);
      for (const auto& id : ids) {
        const figures::FigureResult fr = figures::reproduce_figure(id, c, fo);
        const auto files_written = figures::write_figure(fr, output_dir(fig_opts));
        out << "wrote " << files_written.csv.string() << " and "
            << files_written.plot.string() << "\n";
      }
      return kOk;
    }

    if (*presets) {
      if (preset_id.empty()) {
        for (const auto& id : preset_ids()) out << id << "\n";
      } else {
        out << preset_text(preset_id);
      }
      return kOk;
    }

    if (*validate) {
      int failures = 0;
      auto check = [&](const std::string& label, const std::string& text) {
        try {
          const Config c = parse_config(text);
          resolve(c);
          const OperatingPoint op = evaluate_operating_point(c);
          out << "ok " << label << " digest=" << config_digest(c)
              << " status=" << to_string(op.status) << "\n";
        } catch (const Error& e) {
          err << "invalid " << label << ": " << e.what() << "\n";
          ++failures;
        }
      };
      if (files.empty()) {
        for (const auto& id : preset_ids()) {
          check("preset:" + id, std::string(preset_text(id)));
        }
      } else {
        for (const auto& f : files) check(f, read_file(f));
      }
      return failures == 0 ? kOk : kConfigError;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UnstableResonator& e) {
    err << "unstable: " << e.what() << "\n";
    return kUnstable;
  } catch (const DegenerateCavity& e) {
    err << "unstable: " << e.what() << "\n";
    return kUnstable;
  } catch (const OptimizationFailed& e) {
    err << "optimization failed: " << e.what() << "\n";
    return kOptimizationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace rbsim::cli

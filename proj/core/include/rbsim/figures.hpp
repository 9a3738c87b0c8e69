#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rbsim/config.hpp"
#include "rbsim/curve_io.hpp"
#include "rbsim/sweep_engine.hpp"

namespace rbsim::figures {

struct PlotSeries {
  std::string column;
  std::string label;
  std::string axis;  // "left" or "right"
};

struct FigureResult {
  std::string id;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string y2_label;  // empty when there is no second axis
  Config config;         // base configuration the sweeps started from
  std::vector<sweep::SweepResult> runs;
  io::CurveTable table;
  std::vector<PlotSeries> series;
};

struct FigureOptions {
  int points = 0;   // per-axis grid size; 0 takes config.sweep.points
  int workers = 0;  // 0 takes config.sweep.workers
};

// Ids in reproduction order: 5a 5b 6 7 8 9 10.
const std::vector<std::string>& figure_ids();
bool is_figure(std::string_view id);

// Runs the sweeps behind one figure. Throws UsageError for unknown ids.
FigureResult reproduce_figure(std::string_view id, const Config& base,
                              const FigureOptions& options = {});

io::CurveMetadata curve_metadata(const FigureResult& figure);
std::string figure_csv(const FigureResult& figure);
// Declarative plot description (JSON) pointing at the CSV file.
std::string plot_description(const FigureResult& figure,
                             std::string_view csv_name);

struct WrittenFiles {
  std::filesystem::path csv;
  std::filesystem::path plot;
};

// Writes fig_<id>.csv and fig_<id>.plot.json into dir (created if needed).
WrittenFiles write_figure(const FigureResult& figure,
                          const std::filesystem::path& dir);

}  // namespace rbsim::figures

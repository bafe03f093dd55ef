#pragma once

#include "microfor/cost_model.hpp"
#include "microfor/stats.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace microfor::report {

struct PlotPoint {
  double x = 0;             // n in units of 1e8
  std::optional<double> y;  // efficiency %, absent for failed rows
};

struct ReportBundle {
  cost::CostModel model;
  std::vector<cost::Prediction> theoretical;
  std::vector<stats::EfficiencyRow> experimental;
  std::optional<stats::StatsSummary> summary;
  std::vector<PlotPoint> plot;  // one point per experimental row
  std::string experimental_source;
};

ReportBundle make_bundle(const cost::CostModel& model, std::span<const double> theoretical_n,
                         std::vector<stats::EfficiencyRow> experimental,
                         std::optional<stats::StatsSummary> summary, std::string source);

std::string markdown(const ReportBundle& bundle);
std::string svg_plot(const ReportBundle& bundle);

/// Writes report.md, theoretical.csv, experimental.csv and efficiency.svg.
void write_report(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace microfor::report

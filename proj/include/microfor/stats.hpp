#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace microfor::stats {

class ZeroBaseline : public std::invalid_argument {
 public:
  ZeroBaseline() : std::invalid_argument("baseline time is zero") {}
};

class InsufficientData : public std::invalid_argument {
 public:
  explicit InsufficientData(std::size_t count)
      : std::invalid_argument("need at least 2 values, got " + std::to_string(count)) {}
};

/// (t_for - t_micro) / t_for * 100. Negative when the micro form is slower.
double efficiency(double t_for, double t_micro);

struct EfficiencyRow {
  double n = 0;
  double t_for_ms = 0;
  double t_micro_ms = 0;
  double efficiency_pct = 0;
  std::optional<std::string> error;  // set for rows whose measurement failed
};

struct StatsSummary {
  std::size_t count = 0;
  double mean = 0;
  double sample_std = 0;
  double sample_var = 0;
  double population_std = 0;
  double population_var = 0;
};

StatsSummary summarize(std::span<const double> values);

struct OriginFit {
  double slope = 0;
  double r_squared = 0;  // 1 - SS_res / SS_tot, SS_tot taken about the mean of y
};

/// Least-squares line y = slope * x through the origin.
OriginFit fit_through_origin(std::span<const double> x, std::span<const double> y);

/// Header is exactly `n,t_for_ms,t_micro_ms,efficiency_pct`. Efficiency at 2
/// decimals; failed rows carry `nan` times and an empty efficiency.
std::string rows_csv(std::span<const EfficiencyRow> rows);

/// A replayed benchmark: rows recomputed from recorded times plus the
/// summary. When the recording carries its own efficiency column the
/// summary is over that column, and `mismatches` lists rows where the
/// recomputed value is more than `tolerance` away from it.
struct Replay {
  std::vector<EfficiencyRow> rows;
  std::vector<double> recorded;
  std::vector<std::size_t> mismatches;
  StatsSummary summary;
};

inline constexpr double kReplayTolerance = 0.01;

/// Parses CSV with columns n,t_for_ms,t_micro_ms[,efficiency_pct].
Replay replay(const std::string& csv_text, double tolerance = kReplayTolerance);

/// Reads a single numeric column, or the `efficiency_pct` column when the
/// header names one.
std::vector<double> read_column(const std::string& csv_text);

/// The statistics block as `name: value` lines at 2 decimals.
std::string summary_text(const StatsSummary& s);

nlohmann::json to_json(const StatsSummary& s);
nlohmann::json to_json(const EfficiencyRow& r);

}  // namespace microfor::stats

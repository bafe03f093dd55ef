#pragma once

// Flat per-iteration time model: t(n) = n * c, one constant per loop form.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace microfor::cost {

/// Published jump latency ranges in clock cycles.
struct JumpCycleRanges {
  double jmp_min = 23;
  double jmp_max = 32;
  double cond_min = 25;
  double cond_max = 33;

  double jmp_average() const { return (jmp_min + jmp_max) / 2; }
  double cond_average() const { return (cond_min + cond_max) / 2; }
};

struct CostModel {
  double per_iter_time_traditional = 0;  // seconds per iteration
  double per_iter_time_micro = 0;

  /// False when the micro constant is not strictly below the traditional
  /// one, i.e. the model gives the rewrite no advantage.
  bool favours_micro() const { return per_iter_time_traditional > per_iter_time_micro; }
};

struct TableRow {
  double n = 0;
  double t_micro = 0;        // seconds
  double t_traditional = 0;  // seconds
};

struct Prediction {
  double n = 0;
  double t_micro = 0;
  double t_traditional = 0;
  double difference = 0;
};

struct CycleDecomposition {
  double cycles_traditional = 0;
  double cycles_micro = 0;
  double gap = 0;  // traditional - micro
  bool gap_within_jmp_range = false;
  double jmp_average = 0;
};

class InconsistentTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kFitTolerance = 1e-3;

/// Least-squares slope through the origin for each column. Every row must
/// lie within `kFitTolerance` relative of the fitted line.
CostModel fit_from_table(std::span<const TableRow> rows);

Prediction predict(const CostModel& model, double n);

/// (t_traditional - t_micro) / t_traditional * 100; independent of n.
double theoretical_efficiency(const CostModel& model);

CycleDecomposition cycle_decomposition(const CostModel& model, double clock_hz,
                                       const JumpCycleRanges& ranges = {});

/// The seven published theoretical rows, n already scaled by 1e8.
std::vector<TableRow> published_table();

/// CSV with header `n,t_micro_s,t_traditional_s,difference_s`, times at
/// 9 decimal places.
std::string table_csv(const CostModel& model, std::span<const double> n_values);

nlohmann::json to_json(const CostModel& model);
CostModel model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Prediction& p);

}  // namespace microfor::cost

#include "microfor/cost_model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace microfor::cost {
namespace {

double slope_through_origin(std::span<const TableRow> rows, double TableRow::*column) {
  double nt = 0;
  double nn = 0;
  for (const auto& r : rows) {
    nt += r.n * (r.*column);
    nn += r.n * r.n;
  }
  return nt / nn;
}

void check_row(const TableRow& row, double slope, const char* column, double value) {
  const double fitted = slope * row.n;
  const bool ok = row.n == 0 ? value == 0 : std::abs(value - fitted) <= kFitTolerance * std::abs(fitted);
  if (!ok) {
    std::ostringstream msg;
    msg << "row n=" << row.n << ": " << column << " " << value << " deviates from fitted " << fitted;
    throw InconsistentTable(msg.str());
  }
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

}  // namespace

CostModel fit_from_table(std::span<const TableRow> rows) {
  bool any_positive = false;
  for (const auto& r : rows) {
    if (r.n < 0) throw std::invalid_argument("negative iteration count in table");
    any_positive = any_positive || r.n > 0;
  }
  if (!any_positive) throw std::invalid_argument("table needs at least one row with n > 0");

  const CostModel model{slope_through_origin(rows, &TableRow::t_traditional),
                        slope_through_origin(rows, &TableRow::t_micro)};
  for (const auto& r : rows) {
    check_row(r, model.per_iter_time_micro, "t_micro", r.t_micro);
    check_row(r, model.per_iter_time_traditional, "t_traditional", r.t_traditional);
  }
  return model;
}

Prediction predict(const CostModel& model, double n) {
  if (n < 0) throw std::invalid_argument("iteration count must be non-negative");
  const double micro = n * model.per_iter_time_micro;
  const double traditional = n * model.per_iter_time_traditional;
  return {n, micro, traditional, traditional - micro};
}

double theoretical_efficiency(const CostModel& model) {
  return (model.per_iter_time_traditional - model.per_iter_time_micro) /
         model.per_iter_time_traditional * 100.0;
}

CycleDecomposition cycle_decomposition(const CostModel& model, double clock_hz,
                                       const JumpCycleRanges& ranges) {
  if (!(clock_hz > 0)) throw std::invalid_argument("clock frequency must be positive");
  CycleDecomposition d;
  d.cycles_traditional = model.per_iter_time_traditional * clock_hz;
  d.cycles_micro = model.per_iter_time_micro * clock_hz;
  d.gap = d.cycles_traditional - d.cycles_micro;
  // Rounding noise from the time constants must not push 23.0 to 22.999...
  constexpr double kSlack = 1e-9;
  d.gap_within_jmp_range = d.gap >= ranges.jmp_min - kSlack && d.gap <= ranges.jmp_max + kSlack;
  d.jmp_average = ranges.jmp_average();
  return d;
}

std::vector<TableRow> published_table() {
  return {
      {0.0006e8, 0.001333333, 0.002233333}, {0.0007e8, 0.001555556, 0.002605556},
      {0.0008e8, 0.001777778, 0.002977778}, {0.01e8, 0.022222222, 0.037222222},
      {0.03e8, 0.066666667, 0.111666667},   {0.05e8, 0.111111111, 0.186111111},
      {1e8, 2.222222222, 3.722222222},
  };
}

std::string table_csv(const CostModel& model, std::span<const double> n_values) {
  std::string out = "n,t_micro_s,t_traditional_s,difference_s\n";
  for (const double n : n_values) {
    const Prediction p = predict(model, n);
    out += fixed(n, 0) + "," + fixed(p.t_micro, 9) + "," + fixed(p.t_traditional, 9) + "," +
           fixed(p.difference, 9) + "\n";
  }
  return out;
}

nlohmann::json to_json(const CostModel& model) {
  return {{"per_iter_time_traditional", model.per_iter_time_traditional},
          {"per_iter_time_micro", model.per_iter_time_micro}};
}

CostModel model_from_json(const nlohmann::json& j) {
  CostModel model{j.at("per_iter_time_traditional").get<double>(),
                  j.at("per_iter_time_micro").get<double>()};
  if (!(model.per_iter_time_traditional > 0) || !(model.per_iter_time_micro > 0)) {
    throw std::invalid_argument("cost model constants must be strictly positive");
  }
  return model;
}

nlohmann::json to_json(const Prediction& p) {
  return {{"n", p.n}, {"t_micro_s", p.t_micro}, {"t_traditional_s", p.t_traditional},
          {"difference_s", p.difference}};
}

}  // namespace microfor::cost

#include "microfor/stats.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace microfor::stats {
namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

double to_number(const std::string& field, std::size_t line_no) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": '" + field +
                                "' is not a number");
  }
  return value;
}

bool is_header(const std::vector<std::string>& fields) {
  for (const auto& f : fields) {
    if (!f.empty() && (std::isalpha(static_cast<unsigned char>(f[0])) || f[0] == '_') &&
        f != "nan" && f != "inf") {
      return true;
    }
  }
  return false;
}

}  // namespace

double efficiency(double t_for, double t_micro) {
  if (t_for == 0) throw ZeroBaseline();
  return (t_for - t_micro) / t_for * 100.0;
}

StatsSummary summarize(std::span<const double> values) {
  const std::size_t k = values.size();
  if (k < 2) throw InsufficientData(k);
  double sum = 0;
  for (const double x : values) sum += x;
  const double mean = sum / static_cast<double>(k);
  double squares = 0;
  for (const double x : values) squares += (x - mean) * (x - mean);

  StatsSummary s;
  s.count = k;
  s.mean = mean;
  s.population_var = squares / static_cast<double>(k);
  s.sample_var = squares / static_cast<double>(k - 1);
  s.population_std = std::sqrt(s.population_var);
  s.sample_std = std::sqrt(s.sample_var);
  return s;
}

OriginFit fit_through_origin(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < 2) throw InsufficientData(x.size());
  double xy = 0, xx = 0, mean_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    mean_y += y[i];
  }
  mean_y /= static_cast<double>(y.size());
  OriginFit fit;
  fit.slope = xy / xx;
  double residual = 0, total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.slope * x[i];
    residual += r * r;
    total += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r_squared = total == 0 ? (residual == 0 ? 1.0 : 0.0) : 1.0 - residual / total;
  return fit;
}

std::string rows_csv(std::span<const EfficiencyRow> rows) {
  std::string out = "n,t_for_ms,t_micro_ms,efficiency_pct\n";
  for (const auto& r : rows) {
    out += fixed(r.n, 0) + ",";
    if (r.error) {
      out += "nan,nan,\n";
      continue;
    }
    out += fixed(r.t_for_ms, 3) + "," + fixed(r.t_micro_ms, 3) + "," + fixed(r.efficiency_pct, 2) +
           "\n";
  }
  return out;
}

Replay replay(const std::string& csv_text, double tolerance) {
  const auto lines = lines_of(csv_text);
  Replay out;
  int n_col = 0, for_col = 1, micro_col = 2, eff_col = -1;
  std::size_t start = 0;
  if (!lines.empty() && is_header(split(lines[0]))) {
    const auto header = split(lines[0]);
    n_col = for_col = micro_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const int idx = static_cast<int>(i);
      if (header[i] == "n") n_col = idx;
      else if (header[i] == "t_for_ms") for_col = idx;
      else if (header[i] == "t_micro_ms") micro_col = idx;
      else if (header[i] == "efficiency_pct") eff_col = idx;
    }
    if (n_col < 0 || for_col < 0 || micro_col < 0) {
      throw std::invalid_argument("replay CSV needs columns n,t_for_ms,t_micro_ms");
    }
    start = 1;
  }

  bool every_row_recorded = eff_col >= 0;
  for (std::size_t li = start; li < lines.size(); ++li) {
    const auto fields = split(lines[li]);
    auto field = [&](int col) -> const std::string& {
      if (col >= static_cast<int>(fields.size())) {
        throw std::invalid_argument("line " + std::to_string(li + 1) + ": missing column");
      }
      return fields[static_cast<std::size_t>(col)];
    };
    EfficiencyRow row;
    row.n = to_number(field(n_col), li + 1);
    row.t_for_ms = to_number(field(for_col), li + 1);
    row.t_micro_ms = to_number(field(micro_col), li + 1);
    row.efficiency_pct = efficiency(row.t_for_ms, row.t_micro_ms);
    if (eff_col >= 0 && !field(eff_col).empty()) {
      const double recorded = to_number(field(eff_col), li + 1);
      if (std::abs(recorded - row.efficiency_pct) > tolerance) {
        out.mismatches.push_back(out.rows.size());
      }
      out.recorded.push_back(recorded);
    } else {
      every_row_recorded = false;
    }
    out.rows.push_back(row);
  }

  std::vector<double> column;
  if (every_row_recorded) {
    column = out.recorded;
  } else {
    for (const auto& r : out.rows) column.push_back(r.efficiency_pct);
  }
  out.summary = summarize(column);
  return out;
}

std::vector<double> read_column(const std::string& csv_text) {
  const auto lines = lines_of(csv_text);
  std::size_t col = 0;
  std::size_t start = 0;
  if (!lines.empty() && is_header(split(lines[0]))) {
    const auto header = split(lines[0]);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == "efficiency_pct") col = i;
    }
    start = 1;
  }
  std::vector<double> values;
  for (std::size_t li = start; li < lines.size(); ++li) {
    const auto fields = split(lines[li]);
    if (col >= fields.size() || fields[col].empty()) continue;  // failed bench rows
    values.push_back(to_number(fields[col], li + 1));
  }
  return values;
}

std::string summary_text(const StatsSummary& s) {
  return "count: " + std::to_string(s.count) + "\n" +
         "mean: " + fixed(s.mean, 2) + "\n" +
         "sample_std: " + fixed(s.sample_std, 2) + "\n" +
         "sample_var: " + fixed(s.sample_var, 2) + "\n" +
         "population_std: " + fixed(s.population_std, 2) + "\n" +
         "population_var: " + fixed(s.population_var, 2) + "\n";
}

nlohmann::json to_json(const StatsSummary& s) {
  return {{"count", s.count},
          {"mean", s.mean},
          {"sample_std", s.sample_std},
          {"sample_var", s.sample_var},
          {"population_std", s.population_std},
          {"population_var", s.population_var}};
}

nlohmann::json to_json(const EfficiencyRow& r) {
  nlohmann::json j{{"n", r.n}};
  if (r.error) {
    j["error"] = *r.error;
  } else {
    j["t_for_ms"] = r.t_for_ms;
    j["t_micro_ms"] = r.t_micro_ms;
    j["efficiency_pct"] = r.efficiency_pct;
  }
  return j;
}

}  // namespace microfor::stats

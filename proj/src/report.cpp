#include "microfor/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace microfor::report {
namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

// Shortest decimal for axis labels: 0.5, 10, 2.25.
std::string compact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

double nice_step(double range) {
  if (range <= 0) return 1;
  const double raw = range / 5;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * magnitude) return m * magnitude;
  }
  return 10 * magnitude;
}

}  // namespace

ReportBundle make_bundle(const cost::CostModel& model, std::span<const double> theoretical_n,
                         std::vector<stats::EfficiencyRow> experimental,
                         std::optional<stats::StatsSummary> summary, std::string source) {
  ReportBundle b;
  b.model = model;
  for (const double n : theoretical_n) b.theoretical.push_back(cost::predict(model, n));
  for (const auto& row : experimental) {
    PlotPoint p{row.n / 1e8, std::nullopt};
    if (!row.error) p.y = row.efficiency_pct;
    b.plot.push_back(p);
  }
  b.experimental = std::move(experimental);
  b.summary = summary;
  b.experimental_source = std::move(source);
  return b;
}

std::string markdown(const ReportBundle& b) {
  std::string md = "# Loop form comparison\n\n";
  md += "## Theoretical time (per-iteration cost model)\n\n";
  md += "Per-iteration time: traditional " + compact(b.model.per_iter_time_traditional) +
        " s, micro " + compact(b.model.per_iter_time_micro) + " s. Theoretical efficiency " +
        fixed(cost::theoretical_efficiency(b.model), 2) + "%.\n\n";
  md += "| n (1e8) | Micro loop (s) | Traditional loop (s) | Difference (s) |\n";
  md += "|---:|---:|---:|---:|\n";
  for (const auto& p : b.theoretical) {
    md += "| " + compact(p.n / 1e8) + " | " + fixed(p.t_micro, 9) + " | " + fixed(p.t_traditional, 9) +
          " | " + fixed(p.difference, 9) + " |\n";
  }

  md += "\n## Measured time (" + b.experimental_source + ")\n\n";
  md += "| n (1e8) | For loop (ms) | Micro for loop (ms) | Efficiency (%) |\n";
  md += "|---:|---:|---:|---:|\n";
  for (const auto& r : b.experimental) {
    if (r.error) {
      md += "| " + compact(r.n / 1e8) + " | failed | failed | " + *r.error + " |\n";
      continue;
    }
    md += "| " + compact(r.n / 1e8) + " | " + fixed(r.t_for_ms, 3) + " | " + fixed(r.t_micro_ms, 3) +
          " | " + fixed(r.efficiency_pct, 2) + " |\n";
  }

  md += "\n## Efficiency statistics\n\n";
  if (b.summary) {
    const auto& s = *b.summary;
    md += "| Statistic | Value |\n|---|---:|\n";
    md += "| Mean | " + fixed(s.mean, 2) + " |\n";
    md += "| Standard deviation | " + fixed(s.sample_std, 2) + " |\n";
    md += "| Variance | " + fixed(s.sample_var, 2) + " |\n";
    md += "| Population standard deviation | " + fixed(s.population_std, 2) + " |\n";
    md += "| Population variance | " + fixed(s.population_var, 2) + " |\n";
  } else {
    md += "Not enough successful rows for statistics.\n";
  }
  md += "\n![Efficiency versus n](efficiency.svg)\n";
  return md;
}

std::string svg_plot(const ReportBundle& b) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 60, kRight = 20, kTop = 20, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_max = 0, y_min = 0, y_max = 0;
  for (const auto& p : b.plot) {
    x_max = std::max(x_max, p.x);
    if (p.y) {
      y_min = std::min(y_min, *p.y);
      y_max = std::max(y_max, *p.y);
    }
  }
  const double x_step = nice_step(x_max);
  const double y_step = nice_step(y_max - y_min);
  x_max = x_max > 0 ? std::ceil(x_max / x_step) * x_step : 1;
  y_max = std::ceil(y_max / y_step) * y_step;
  y_min = std::floor(y_min / y_step) * y_step;
  if (y_max == y_min) y_max = y_min + y_step;

  auto sx = [&](double x) { return kLeft + x / x_max * plot_w; };
  auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                    "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + fixed(kLeft, 2) + "\" y1=\"" + fixed(sy(y_min), 2) + "\" x2=\"" +
         fixed(kLeft + plot_w, 2) + "\" y2=\"" + fixed(sy(y_min), 2) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fixed(kLeft, 2) + "\" y1=\"" + fixed(kTop, 2) + "\" x2=\"" + fixed(kLeft, 2) +
         "\" y2=\"" + fixed(sy(y_min), 2) + "\" stroke=\"black\"/>\n";

  for (double x = 0; x <= x_max + x_step / 2; x += x_step) {
    svg += "<text x=\"" + fixed(sx(x), 2) + "\" y=\"" + fixed(sy(y_min) + 16, 2) +
           "\" text-anchor=\"middle\">" + compact(x) + "</text>\n";
  }
  for (double y = y_min; y <= y_max + y_step / 2; y += y_step) {
    svg += "<text x=\"" + fixed(kLeft - 6, 2) + "\" y=\"" + fixed(sy(y) + 4, 2) +
           "\" text-anchor=\"end\">" + compact(y) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(kLeft + plot_w / 2, 2) + "\" y=\"" + fixed(kHeight - 10, 2) +
         "\" text-anchor=\"middle\">n (x1e8 iterations)</text>\n";
  svg += "<text x=\"15\" y=\"" + fixed(kTop + plot_h / 2, 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " + fixed(kTop + plot_h / 2, 2) +
         ")\">efficiency (%)</text>\n";

  std::string points;
  for (const auto& p : b.plot) {
    if (!p.y) continue;
    if (!points.empty()) points += " ";
    points += fixed(sx(p.x), 2) + "," + fixed(sy(*p.y), 2);
  }
  if (!points.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"" + points +
           "\"/>\n";
  }
  for (const auto& p : b.plot) {
    if (!p.y) continue;
    svg += "<circle cx=\"" + fixed(sx(p.x), 2) + "\" cy=\"" + fixed(sy(*p.y), 2) +
           "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_report(const ReportBundle& b, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<double> ns;
  for (const auto& p : b.theoretical) ns.push_back(p.n);
  write_file(dir / "report.md", markdown(b));
  write_file(dir / "theoretical.csv", cost::table_csv(b.model, ns));
  write_file(dir / "experimental.csv", stats::rows_csv(b.experimental));
  write_file(dir / "efficiency.svg", svg_plot(b));
}

}  // namespace microfor::report

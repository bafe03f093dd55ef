#include "microfor/bench.hpp"

#include "kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <mutex>

namespace microfor::bench {
namespace {

using Clock = std::chrono::steady_clock;
using Kernel = std::uint64_t (*)(std::uint64_t);

std::mutex& measurement_lock() {
  static std::mutex lock;
  return lock;
}

// Results land here after timing so the kernels' return values are used.
volatile std::uint64_t g_sink = 0;

double time_ms(Kernel kernel, std::uint64_t n) {
  const auto start = Clock::now();
  const std::uint64_t result = kernel(n);
  const auto stop = Clock::now();
  g_sink = g_sink + result;
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

const char* to_string(Body body) { return body == Body::Empty ? "empty" : "accumulator"; }

Body body_from_string(const std::string& text) {
  if (text == "accumulator") return Body::Accumulator;
  if (text == "empty") return Body::Empty;
  throw std::invalid_argument("unknown body '" + text + "' (expected accumulator or empty)");
}

ElisionDetected::ElisionDetected(const std::string& variant, double ns_per_iteration)
    : std::runtime_error([&] {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s loop ran at %.3g ns/iteration, below the %.1f ns floor; the loop was "
                      "optimized away",
                      variant.c_str(), ns_per_iteration, kElisionFloorNsPerIter);
        return std::string(buf);
      }()) {}

void validate(const BenchConfig& config) {
  if (config.n < 1) throw std::invalid_argument("n must be at least 1");
  if (config.reps < 3) throw std::invalid_argument("reps must be at least 3");
  if (config.warmup < 1) throw std::invalid_argument("warmup must be at least 1");
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2;
}

PairTimings time_pair(const BenchConfig& config) {
  validate(config);
  if (!Clock::is_steady) throw ClockUnavailable();

  const Kernel traditional = config.body == Body::Empty ? kernels::traditional_empty
                                                        : kernels::traditional_accumulate;
  const Kernel micro = config.body == Body::Empty ? kernels::micro_empty : kernels::micro_accumulate;

  std::lock_guard guard(measurement_lock());
  for (int w = 0; w < config.warmup; ++w) {
    time_ms(traditional, config.n);
    time_ms(micro, config.n);
  }
  PairTimings t;
  for (int r = 0; r < config.reps; ++r) {
    t.for_ms.push_back(time_ms(traditional, config.n));
    t.micro_ms.push_back(time_ms(micro, config.n));
  }
  t.median_for_ms = median(t.for_ms);
  t.median_micro_ms = median(t.micro_ms);
  return t;
}

stats::EfficiencyRow run_pair(const BenchConfig& config) {
  const PairTimings t = time_pair(config);
  const auto n = static_cast<double>(config.n);
  for (const auto& [name, ms] : {std::pair{"for", t.median_for_ms}, {"micro", t.median_micro_ms}}) {
    const double ns_per_iter = ms * 1e6 / n;
    if (ns_per_iter < kElisionFloorNsPerIter) throw ElisionDetected(name, ns_per_iter);
  }
  return {n, t.median_for_ms, t.median_micro_ms, stats::efficiency(t.median_for_ms, t.median_micro_ms),
          std::nullopt};
}

SweepResult sweep(std::span<const std::uint64_t> n_values, const BenchConfig& config_template) {
  if (n_values.empty()) throw std::invalid_argument("sweep needs at least one n");
  SweepResult out;
  std::vector<double> efficiencies;
  for (const auto n : n_values) {
    BenchConfig config = config_template;
    config.n = n;
    try {
      out.rows.push_back(run_pair(config));
      efficiencies.push_back(out.rows.back().efficiency_pct);
    } catch (const std::exception& e) {
      stats::EfficiencyRow failed;
      failed.n = static_cast<double>(n);
      failed.error = e.what();
      out.rows.push_back(std::move(failed));
    }
  }
  try {
    out.summary = stats::summarize(efficiencies);
  } catch (const stats::InsufficientData& e) {
    out.summary_note = e.what();
  }
  return out;
}

}  // namespace microfor::bench

#pragma once

// Native timing harness for the two loop forms.
//
// Measurements are serialized process-wide: run_pair holds a lock for its
// whole duration, so two benchmarks never overlap.

#include "microfor/stats.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace microfor::bench {

enum class Body { Accumulator, Empty };

const char* to_string(Body body);
Body body_from_string(const std::string& text);

struct BenchConfig {
  std::uint64_t n = 100'000'000;
  int reps = 5;
  int warmup = 1;
  Body body = Body::Accumulator;
};

class ClockUnavailable : public std::runtime_error {
 public:
  ClockUnavailable() : std::runtime_error("no monotonic clock available") {}
};

class ElisionDetected : public std::runtime_error {
 public:
  ElisionDetected(const std::string& variant, double ns_per_iteration);
};

/// Anything faster than this cannot be executing the loop.
inline constexpr double kElisionFloorNsPerIter = 0.1;

struct PairTimings {
  std::vector<double> for_ms;
  std::vector<double> micro_ms;
  double median_for_ms = 0;
  double median_micro_ms = 0;
};

/// Throws std::invalid_argument on n < 1, reps < 3 or warmup < 1.
void validate(const BenchConfig& config);

/// Times both loop forms, alternating for/micro on every repetition, and
/// returns per-rep wall times on the steady clock plus their medians.
PairTimings time_pair(const BenchConfig& config);

/// time_pair, then the elision check and the efficiency of the medians.
stats::EfficiencyRow run_pair(const BenchConfig& config);

double median(std::vector<double> values);

struct SweepResult {
  std::vector<stats::EfficiencyRow> rows;
  std::optional<stats::StatsSummary> summary;
  std::string summary_note;  // why the summary is missing, if it is
};

/// One run_pair per n. A failing row is recorded with its error and the
/// sweep continues; the summary covers the rows that succeeded.
SweepResult sweep(std::span<const std::uint64_t> n_values, const BenchConfig& config_template);

}  // namespace microfor::bench

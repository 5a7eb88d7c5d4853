#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace aspomcp::bench {

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> xs);

// (rules - plain) / |plain|; empty when |plain| < epsilon.
std::optional<double> improvement_ratio(double rules_mean, double plain_mean, double epsilon = 1e-9);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Percentile bootstrap over paired episodes: pairs are resampled with
// replacement and the improvement ratio of the resampled means recorded.
// Resamples with |plain mean| < epsilon are dropped; empty if all are.
std::optional<Interval> paired_bootstrap_ci(std::span<const double> plain, std::span<const double> rules,
                                            double confidence, int resamples, std::uint64_t seed,
                                            double epsilon = 1e-9);

}  // namespace aspomcp::bench

#include "aspomcp/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "aspomcp/random.hpp"

namespace aspomcp::bench {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::optional<double> improvement_ratio(double rules_mean, double plain_mean, double epsilon) {
  if (std::abs(plain_mean) < epsilon) return std::nullopt;
  return (rules_mean - plain_mean) / std::abs(plain_mean);
}

std::optional<Interval> paired_bootstrap_ci(std::span<const double> plain, std::span<const double> rules,
                                            double confidence, int resamples, std::uint64_t seed, double epsilon) {
  if (plain.size() != rules.size()) throw std::invalid_argument("paired bootstrap needs equally many pairs");
  if (plain.empty() || resamples < 1) return std::nullopt;
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0,1)");
  Rng rng(seed);
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(resamples));
  const std::size_t n = plain.size();
  for (int b = 0; b < resamples; ++b) {
    double sp = 0.0;
    double sr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k = random_index(rng, n);
      sp += plain[k];
      sr += rules[k];
    }
    if (auto r = improvement_ratio(sr / n, sp / n, epsilon)) ratios.push_back(*r);
  }
  if (ratios.empty()) return std::nullopt;
  std::ranges::sort(ratios);
  auto quantile = [&](double q) {
    double pos = q * static_cast<double>(ratios.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    auto hi = std::min(lo + 1, ratios.size() - 1);
    return ratios[lo] + (pos - static_cast<double>(lo)) * (ratios[hi] - ratios[lo]);
  };
  double alpha = (1.0 - confidence) / 2.0;
  return Interval{quantile(alpha), quantile(1.0 - alpha)};
}

}  // namespace aspomcp::bench

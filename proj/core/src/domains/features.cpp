#include "aspomcp/domains/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aspomcp::domains {

int discretize_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0,1]: " + std::to_string(p));
  // The epsilon keeps 0.7 (stored as 0.6999...) in the 70 bucket.
  int bucket = static_cast<int>(std::floor(p * 10.0 + 1e-9)) * 10;
  return std::min(bucket, 100);
}

int discretize_fraction(std::size_t count, std::size_t total) {
  if (total == 0 || count > total) throw std::domain_error("invalid fraction");
  return static_cast<int>((10 * count) / total) * 10;
}

}  // namespace aspomcp::domains

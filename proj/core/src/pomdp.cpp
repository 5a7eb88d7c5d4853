#include "aspomcp/pomdp.hpp"

#include <string>

namespace aspomcp {

Discount::Discount(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::domain_error("discount factor must lie in [0,1], got " + std::to_string(gamma));
  }
}

double discounted_return(std::span<const double> rewards, double gamma) {
  Discount discount(gamma);
  double total = 0.0;
  double weight = 1.0;
  for (double r : rewards) {
    total += weight * r;
    weight *= discount.value();
  }
  return total;
}

}  // namespace aspomcp

#include "gossip/degree_distribution.hpp"

#include <cmath>
#include <string>

#include "gossip/types.hpp"

namespace gossip {

DegreeDistribution::DegreeDistribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  double total = 0.0;
  for (double p : p_) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("degree probability outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("degree probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  while (!p_.empty() && p_.back() == 0.0) p_.pop_back();
  for (std::size_t i = 0; i < p_.size(); ++i) {
    const auto d = static_cast<double>(i);
    mean_ += d * p_[i];
    second_moment_ += d * d * p_[i];
  }
}

DegreeDistribution DegreeDistribution::from_map(const std::map<std::size_t, double>& probabilities) {
  std::vector<double> dense(probabilities.empty() ? 0 : probabilities.rbegin()->first + 1, 0.0);
  for (auto [degree, p] : probabilities) dense[degree] = p;
  return DegreeDistribution(std::move(dense));
}

DegreeDistribution DegreeDistribution::regular(std::size_t k) {
  std::vector<double> dense(k + 1, 0.0);
  dense[k] = 1.0;
  return DegreeDistribution(std::move(dense));
}

DegreeDistribution DegreeDistribution::poisson(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw ParameterError("Poisson mean must be positive");
  constexpr double kTail = 1e-12;
  auto pmf = [mean](std::size_t i) {
    const auto d = static_cast<double>(i);
    return std::exp(d * std::log(mean) - mean - std::lgamma(d + 1.0));
  };
  // Tail beyond i, summed directly so roundoff in 1 - cdf never matters.
  auto tail_after = [&](std::size_t i) {
    double tail = 0.0;
    for (std::size_t j = i + 1;; ++j) {
      const double t = pmf(j);
      tail += t;
      if (static_cast<double>(j) > mean && t < 1e-30) break;
    }
    return tail;
  };
  std::vector<double> dense;
  for (std::size_t i = 0;; ++i) {
    dense.push_back(pmf(i));
    if (static_cast<double>(i) >= mean && tail_after(i) < kTail) break;
  }
  double total = 0.0;
  for (double p : dense) total += p;
  for (double& p : dense) p /= total;
  return DegreeDistribution(std::move(dense));
}

}  // namespace gossip

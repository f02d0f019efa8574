#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace gossip {

/// Degree probabilities p_i, stored densely by degree.
class DegreeDistribution {
 public:
  /// Probabilities must lie in [0,1] and sum to 1 within 1e-9.
  explicit DegreeDistribution(std::vector<double> probabilities);
  static DegreeDistribution from_map(const std::map<std::size_t, double>& probabilities);

  /// Every node has degree k.
  static DegreeDistribution regular(std::size_t k);

  /// Poisson(mean) truncated where the remaining tail mass drops below
  /// 1e-12, then renormalized.
  static DegreeDistribution poisson(double mean);

  double probability(std::size_t degree) const noexcept {
    return degree < p_.size() ? p_[degree] : 0.0;
  }
  /// One past the largest degree with nonzero support.
  std::size_t support_size() const noexcept { return p_.size(); }
  const std::vector<double>& probabilities() const noexcept { return p_; }

  double mean() const noexcept { return mean_; }
  double second_moment() const noexcept { return second_moment_; }

 private:
  std::vector<double> p_;
  double mean_ = 0.0;
  double second_moment_ = 0.0;
};

}  // namespace gossip

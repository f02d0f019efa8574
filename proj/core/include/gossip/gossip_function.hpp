#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "gossip/types.hpp"

namespace gossip {

/// Forwarding probability as a function of the receiving node's degree.
///
///   kFixed: gamma(i) = c
///   kDdf1:  gamma(i) = 1 for i <= 2, i^-alpha otherwise
///   kDdf2:  gamma(i) = 1/ln(alpha*i) for i > max(2, e/alpha), 1 otherwise
///
/// DDF2's guard keeps alpha*i > e, so the log exceeds 1 and no clamp is needed.
class GossipFunction {
 public:
  enum class Family { kFixed, kDdf1, kDdf2 };

  static GossipFunction fixed(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("fixed gossip probability outside [0,1]");
    return {Family::kFixed, gamma};
  }
  static GossipFunction ddf1(double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("DDF1 alpha must be positive");
    return {Family::kDdf1, alpha};
  }
  static GossipFunction ddf2(double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("DDF2 alpha must be positive");
    return {Family::kDdf2, alpha};
  }

  Family family() const noexcept { return family_; }
  double parameter() const noexcept { return parameter_; }

  double operator()(std::size_t degree) const noexcept {
    const auto i = static_cast<double>(degree);
    switch (family_) {
      case Family::kFixed:
        return parameter_;
      case Family::kDdf1:
        return degree <= 2 ? 1.0 : std::pow(i, -parameter_);
      case Family::kDdf2:
        if (i > 2.0 && i > std::numbers::e / parameter_) return 1.0 / std::log(parameter_ * i);
        return 1.0;
    }
    return 1.0;
  }

 private:
  GossipFunction(Family f, double p) : family_(f), parameter_(p) {}

  Family family_;
  double parameter_;
};

}  // namespace gossip

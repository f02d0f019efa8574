#include "gossip/theory.hpp"

#include <cmath>
#include <cstdio>

namespace gossip::theory {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(what) + " outside [0,1]");
}

}  // namespace

ExcessDegreeView excess_view(const DegreeDistribution& d) {
  const double mean = d.mean();
  if (!(mean > 0.0)) throw DegenerateDistribution("mean degree is zero; excess degree undefined");
  ExcessDegreeView view;
  const auto& p = d.probabilities();
  view.q.resize(p.size() > 0 ? p.size() - 1 : 0);
  for (std::size_t i = 0; i < view.q.size(); ++i) {
    view.q[i] = static_cast<double>(i + 1) * p[i + 1] / mean;
  }
  view.mean_excess = (d.second_moment() - mean) / mean;
  return view;
}

double mean_excess_by_sum(const ExcessDegreeView& view) {
  double sum = 0.0;
  for (std::size_t i = 0; i < view.q.size(); ++i) sum += static_cast<double>(i) * view.q[i];
  return sum;
}

double fp_threshold(const DegreeDistribution& d) {
  const auto view = excess_view(d);
  if (!(view.mean_excess > 1.0)) {
    throw NoPercolation("mean excess degree " + std::to_string(view.mean_excess) +
                        " <= 1: no percolation even with flooding");
  }
  return 1.0 / view.mean_excess;
}

double ddg_theta(const DegreeDistribution& d, const GossipFunction& fn) {
  if (fn.family() == GossipFunction::Family::kFixed) return fn.parameter();
  const auto view = excess_view(d);
  double theta = 0.0;
  for (std::size_t j = 0; j < view.q.size(); ++j) theta += view.q[j] * fn(j);
  return std::min(theta, 1.0);
}

BranchingSummary branching_summary(const DegreeDistribution& d, const Scheme& scheme) {
  const double mean_p = d.mean();
  const double mean_q = excess_view(d).mean_excess;
  return std::visit(
      Overloaded{
          [&](const FixedScheme& s) {
            check_probability(s.gamma, "gamma");
            return BranchingSummary{s.gamma * mean_p, s.gamma * mean_q, std::nullopt};
          },
          [&](const BroadcastScheme& s) {
            check_probability(s.beta, "beta");
            // f_i = beta p_{i+1}  =>  F'(1) = beta sum_i i p_{i+1} = beta (<p> - 1 + p_0)
            return BranchingSummary{s.beta * (mean_p - 1.0 + d.probability(0)), s.beta * mean_q, std::nullopt};
          },
          [&](const DegreeScheme& s) {
            const double theta = ddg_theta(d, s.fn);
            return BranchingSummary{theta * mean_p, theta * mean_q, theta};
          },
      },
      scheme);
}

double percolation_margin(const DegreeDistribution& d, const Scheme& scheme) {
  return branching_summary(d, scheme).f_arrow_prime_at_1;
}

ReceiverEstimate expected_receivers(const DegreeDistribution& d, const Scheme& scheme) {
  const auto b = branching_summary(d, scheme);
  if (b.f_arrow_prime_at_1 >= 1.0) return {true, 0.0};
  return {false, 1.0 + b.f_prime_at_1 / (1.0 - b.f_arrow_prime_at_1)};
}

double solve_alpha(const DegreeDistribution& d, GossipFunction::Family family) {
  if (family == GossipFunction::Family::kFixed) throw ParameterError("solve_alpha needs DDF1 or DDF2");
  const auto view = excess_view(d);
  auto excess = [&](double alpha) {
    const auto fn = family == GossipFunction::Family::kDdf1 ? GossipFunction::ddf1(alpha)
                                                            : GossipFunction::ddf2(alpha);
    double theta = 0.0;
    for (std::size_t j = 0; j < view.q.size(); ++j) theta += view.q[j] * fn(j);
    return theta * view.mean_excess - 1.0;
  };
  double lo = kAlphaLow;
  double hi = kAlphaHigh;
  if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
    throw NoCrossing("margin does not cross 1 for alpha in [1e-3, 1e3]");
  }
  while (hi - lo > kAlphaTolerance * 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<CurvePoint> threshold_curve(CurveFamily family, DistributionFamily dist,
                                        const std::vector<double>& mean_degrees) {
  std::vector<CurvePoint> curve;
  curve.reserve(mean_degrees.size());
  for (double x : mean_degrees) {
    CurvePoint point{x, std::nullopt, {}};
    try {
      const DegreeDistribution d = [&] {
        if (dist == DistributionFamily::kPoisson) return DegreeDistribution::poisson(x);
        if (!(x >= 0.0) || std::floor(x) != x) throw ParameterError("k-regular degree must be an integer");
        return DegreeDistribution::regular(static_cast<std::size_t>(x));
      }();
      switch (family) {
        case CurveFamily::kFixed: point.threshold = fp_threshold(d); break;
        case CurveFamily::kDdf1: point.threshold = solve_alpha(d, GossipFunction::Family::kDdf1); break;
        case CurveFamily::kDdf2: point.threshold = solve_alpha(d, GossipFunction::Family::kDdf2); break;
      }
    } catch (const std::exception& e) {
      point.error = e.what();
    }
    curve.push_back(std::move(point));
  }
  return curve;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "x,threshold\n";
  char buf[64];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%.9g,", p.x);
    out += buf;
    if (p.threshold) {
      std::snprintf(buf, sizeof buf, "%.9g", *p.threshold);
      out += buf;
    } else {
      out += "nan";
    }
    out += '\n';
  }
  return out;
}

}  // namespace gossip::theory

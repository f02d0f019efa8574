#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gossip/degree_distribution.hpp"
#include "gossip/gossip_function.hpp"

// Branching-process model of push dissemination over a configuration-model
// graph. Only first moments (generating-function derivatives at x = 1) are
// computed.
namespace gossip::theory {

class DegenerateDistribution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Mean excess degree <= 1: no gossip parameter can reach the transition.
class NoPercolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The margin never crosses 1 on the searched alpha interval.
class NoCrossing : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ExcessDegreeView {
  std::vector<double> q;     // q_i = (i+1) p_{i+1} / <p>
  double mean_excess = 0.0;  // (<p^2> - <p>) / <p>
};

ExcessDegreeView excess_view(const DegreeDistribution& d);

/// Sum_i i q_i, the second route to the mean excess degree.
double mean_excess_by_sum(const ExcessDegreeView& view);

/// 1/<q>; the same value is the probabilistic-broadcast threshold for beta.
double fp_threshold(const DegreeDistribution& d);

/// Theta = sum_j q_j gamma(j): probability that a link carries the message.
double ddg_theta(const DegreeDistribution& d, const GossipFunction& fn);

struct FixedScheme {
  double gamma;
};
struct BroadcastScheme {
  double beta;
};
struct DegreeScheme {
  GossipFunction fn;
};
using Scheme = std::variant<FixedScheme, BroadcastScheme, DegreeScheme>;

struct BranchingSummary {
  double f_prime_at_1 = 0.0;        // mean forwards from a source node
  double f_arrow_prime_at_1 = 0.0;  // mean forwards after following an edge
  std::optional<double> theta;      // degree-dependent schemes only
};

BranchingSummary branching_summary(const DegreeDistribution& d, const Scheme& scheme);

/// F-arrow'(1). At or above 1 the expected receiver count diverges.
double percolation_margin(const DegreeDistribution& d, const Scheme& scheme);

struct ReceiverEstimate {
  bool divergent = false;
  double value = 0.0;  // meaningful only when !divergent; counts the origin
};

/// <r> = 1 + F'(1) / (1 - F-arrow'(1)) below the transition.
ReceiverEstimate expected_receivers(const DegreeDistribution& d, const Scheme& scheme);

inline constexpr double kAlphaLow = 1e-3;
inline constexpr double kAlphaHigh = 1e3;
inline constexpr double kAlphaTolerance = 1e-6;

/// Alpha at which the DDF1/DDF2 margin equals 1, by bisection on
/// [kAlphaLow, kAlphaHigh]. The margin is nonincreasing in alpha.
double solve_alpha(const DegreeDistribution& d, GossipFunction::Family family);

enum class DistributionFamily { kPoisson, kRegular };
enum class CurveFamily { kFixed, kDdf1, kDdf2 };

struct CurvePoint {
  double x = 0.0;
  std::optional<double> threshold;
  std::string error;  // set when threshold is empty
};

/// Threshold parameter (gamma/beta for kFixed, alpha otherwise) per mean
/// degree. Per-point failures are recorded and the curve continues.
std::vector<CurvePoint> threshold_curve(CurveFamily family, DistributionFamily dist,
                                        const std::vector<double>& mean_degrees);

/// CSV with header "x,threshold", 9 significant digits, "nan" for failed points.
std::string curve_csv(const std::vector<CurvePoint>& curve);

}  // namespace gossip::theory

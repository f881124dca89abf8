#pragma once

#include <span>
#include <string>
#include <vector>

#include "rocscale/roc.hpp"

namespace rocscale::bon {

/// Probability that the maximum of p positive scores exceeds the maximum of
/// k negative scores, for score distributions realizing the given ROC curve:
///   H(k, p) = k * integral_0^1 (1 - (1 - T(F))^p) (1 - F)^(k-1) dF,  k > 0
///   H(0, p) = 1.
/// Evaluated exactly per linear segment via a nonnegative binomial-product
/// expansion (no quadrature, no cancellation). p is capped at 64; larger N
/// routes through the single-integral accuracy path, which never needs H.
double h_integral(const RocCurve& curve, int k, int p);

/// Best-of-N accuracy via the binomial mixture of H terms:
///   sum_p Binom(N, pi, p) * H(N - p, p).
/// Supported for N <= 64 (H expansion cap).
double accuracy_binomial_sum(const RocCurve& curve, double pi, int n);

/// Best-of-N accuracy via the reduced single integral:
///   1 - (1 - pi) N * integral_0^1 ((1-F)(1-pi) + pi (1 - T(F)))^(N-1) dF,
/// evaluated in closed form per linear segment. Valid for any N >= 1.
double accuracy_single_integral(const RocCurve& curve, double pi, int n);

struct BonPoint {
  enum class Method { binomial_sum, single_integral };
  int n = 1;
  double acc_exact = 0.0;
  Method method = Method::single_integral;
};

/// Exact Best-of-N accuracy. The single-integral path is primary; for
/// N <= 30 the binomial-sum path is also evaluated and the two must agree
/// within 1e-8 (a logic error otherwise).
BonPoint accuracy(const RocCurve& curve, double pi, int n);

/// Closed-form gain from Best-of-1 to Best-of-2:
/// pi (pi + 2 (1 - pi) AUROC - 1).
double bo2_gain(const RocCurve& curve, double pi);

/// Large-N accuracy limit; identical to the rejection-sampling
/// infinite-compute limit on the same curve.
double limit_accuracy(const RocCurve& curve, double pi);

struct BonProfile {
  double pi = 0.0;
  std::string curve_id;
  double limit = 0.0;
  std::vector<BonPoint> points;
};

/// Tabulates exact Best-of-N accuracy over ascending N values and attaches
/// the large-N limit for reference.
BonProfile profile(const RocCurve& curve, double pi, std::span<const int> ns);

}  // namespace rocscale::bon

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rocscale/roc.hpp"

namespace rocscale::rejection {

/// Expected number of generator samples per accepted output. Infinite cost
/// (zero acceptance probability) is an explicit state so it can never enter
/// arithmetic as a sentinel float.
class ComputeCost {
 public:
  static ComputeCost finite(double value) { return ComputeCost(true, value); }
  static ComputeCost infinite() { return ComputeCost(false, 0.0); }

  bool is_finite() const { return finite_; }
  double value() const;

 private:
  ComputeCost(bool finite, double value) : finite_(finite), value_(value) {}
  bool finite_ = false;
  double value_ = 0.0;
};

/// Expected samples until acceptance at false positive rate `fpr`:
/// 1 / (T(F) pi + F (1 - pi)).
ComputeCost compute_cost(const RocCurve& curve, double pi, double fpr);

/// Accuracy of the rejection-sampled distribution at `fpr`, i.e. the
/// classifier's precision T(F) pi / (T(F) pi + F (1 - pi)).
double precision(const RocCurve& curve, double pi, double fpr);

/// The (F, T) operating point whose expected cost equals `budget`. Budgets
/// that land inside a vertical jump resolve to the mixture of the two
/// adjacent thresholds, which realizes intermediate T at the jump's F.
RocPoint operating_point_at_compute(const RocCurve& curve, double pi,
                                    double budget);

/// Accuracy as a function of expected compute: inverts the cost map and
/// returns the precision at the resulting operating point.
double accuracy_at_compute(const RocCurve& curve, double pi, double budget);

/// Slope of the accuracy-compute curve at the cost of `fpr`:
/// pi (1 - pi) (T(F) - F T'(F)) / (1 + pi T'(F) - pi).
/// Throws KinkPointError at breakpoints where the one-sided slopes disagree.
double accuracy_slope(const RocCurve& curve, double pi, double fpr);

/// Slope of the accuracy-compute curve at the minimum cost C = 1, computed
/// from the left-sided ROC slope at F = 1.
double early_slope(const RocCurve& curve, double pi);

/// Accuracy in the infinite-compute limit: determined by the origin slope
/// when T(0) = 0, and equal to 1 when T(0) > 0 (finite cost, perfect
/// precision at F = 0).
double limit_accuracy(const RocCurve& curve, double pi);

/// One tabulated operating point. Cost may be infinite; accuracy and the
/// one-sided accuracy-compute slopes are absent where undefined. Slope sides
/// are oriented along the compute axis: `dadc_low` approaches from smaller
/// cost (larger F), `dadc_high` from larger cost (smaller F).
struct AccuracyComputePoint {
  double fpr = 0.0;
  double tpr = 0.0;
  ComputeCost cost = ComputeCost::infinite();
  std::optional<double> accuracy;
  std::optional<double> dadc_low;
  std::optional<double> dadc_high;
};

/// Accuracy-compute table ordered by decreasing F (increasing cost).
struct AccuracyComputeCurve {
  double pi = 0.0;
  std::string curve_id;
  std::vector<AccuracyComputePoint> points;
};

/// Tabulates cost, accuracy and slopes over the grid (values in (0,1],
/// sorted ascending) merged with every curve breakpoint and the F -> 0
/// endpoint, so the piecewise structure is exact.
AccuracyComputeCurve profile(const RocCurve& curve, double pi,
                             std::span<const double> fpr_grid);

/// Two ROC completions consistent with everything observable below a
/// compute budget: one that never improves past the observed accuracy and
/// one that reaches perfect accuracy.
struct DeEmergenceResult {
  double budget = 0.0;
  double fpr_at_budget = 0.0;
  double tpr_at_budget = 0.0;
  std::vector<RocPoint> observed_prefix;  // curve points with F >= F(budget)
  RocCurve extension_stagnant;
  RocCurve extension_perfect;
  double sup_accuracy_stagnant = 0.0;
  double sup_accuracy_perfect = 1.0;
};

/// Builds both extensions of the prefix observed up to `budget`. The
/// stagnant extension continues linearly through the origin; the perfect
/// extension continues horizontally to (0, T(F(budget))), which requires the
/// observed accuracy to be positive.
DeEmergenceResult de_emergence(const RocCurve& prefix, double pi,
                               double budget);

}  // namespace rocscale::rejection

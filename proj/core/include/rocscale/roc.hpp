#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rocscale/errors.hpp"

namespace rocscale {

/// One generator output reduced to the verifier's score and the ground-truth
/// correctness label (1 = correct).
struct LabeledSample {
  double score = 0.0;
  int label = 0;
};

/// A finite collection of labeled samples standing in for the generator's
/// output distribution. The positive fraction pi is always recomputed from
/// the samples, never stored independently.
class ScorePool {
 public:
  explicit ScorePool(std::vector<LabeledSample> samples);

  const std::vector<LabeledSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  std::size_t positives() const { return positives_; }
  std::size_t negatives() const { return samples_.size() - positives_; }
  double pi() const {
    return static_cast<double>(positives_) / static_cast<double>(samples_.size());
  }

 private:
  std::vector<LabeledSample> samples_;
  std::size_t positives_ = 0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// One-sided slopes of the piecewise-linear ROC at a given false positive
/// rate. A missing side means the curve does not extend in that direction;
/// an infinite value marks a vertical segment.
struct OneSidedSlopes {
  std::optional<double> left;
  std::optional<double> right;
};

/// ROC slope at the origin. A curve with T(0) > 0 separates a positive mass
/// from every negative, and is flagged instead of carrying a finite slope.
struct OriginSlope {
  bool separating = false;
  double slope = 0.0;  // valid only when !separating
};

/// A monotone piecewise-linear ROC curve on [0,1] x [0,1].
///
/// Points run from (0, T(0)) to (1, 1) with non-decreasing F and T. Between
/// stored points the curve is the linear interpolation; a vertical jump is
/// stored as two consecutive points with equal F, and evaluation at that F
/// returns the upper value (the best true positive rate available at that
/// false positive rate).
class RocCurve {
 public:
  /// Validates and adopts an explicit point list.
  static RocCurve from_points(std::vector<RocPoint> points,
                              std::string kind = "points");

  /// The chance-level curve T(F) = F.
  static RocCurve diagonal();

  /// T(F) = min(alpha * F, 1) for alpha >= 1.
  static RocCurve linear_slope(double alpha);

  /// Piecewise-linear approximation of T(F) = F^gamma on `grid` segments.
  static RocCurve power(double gamma, int grid = 1024);

  /// Two linear segments through an interior breakpoint.
  static RocCurve two_segment(double break_fpr, double break_tpr);

  const std::vector<RocPoint>& points() const { return points_; }
  const std::string& kind() const { return kind_; }

  /// T(0): the true positive rate achievable at zero false positive rate.
  double tpr_at_zero() const { return points_.front().tpr; }

  /// Interpolated T(F); at a vertical jump returns the upper value.
  double tpr_at(double fpr) const;

  /// One-sided slopes of the interpolation at `fpr`.
  OneSidedSlopes slopes_at(double fpr) const;

  /// Slope of the first segment, or the separating flag when T(0) > 0.
  OriginSlope origin_slope() const;

  /// Left-sided slope at F = 1 (infinite for a vertical ending segment).
  double top_slope() const;

  /// Exact trapezoid area under the piecewise-linear curve.
  double auroc() const;

  /// True iff segment slopes are non-increasing (tolerance 1e-12).
  bool is_concave() const;

 private:
  RocCurve(std::vector<RocPoint> points, std::string kind);
  static void validate(const std::vector<RocPoint>& points);

  std::vector<RocPoint> points_;
  std::string kind_;
};

/// Builds the ROC curve induced by thresholding the pool's scores
/// (classifier accepts when score >= threshold; tied scores merge into one
/// threshold). Requires at least one positive and one negative sample.
RocCurve empirical_roc(const ScorePool& pool);

}  // namespace rocscale

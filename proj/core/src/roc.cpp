#include "rocscale/roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace rocscale {

namespace {

constexpr double kSlopeTol = 1e-12;

bool finite_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

double segment_slope(const RocPoint& a, const RocPoint& b) {
  if (b.fpr == a.fpr) return std::numeric_limits<double>::infinity();
  return (b.tpr - a.tpr) / (b.fpr - a.fpr);
}

}  // namespace

ScorePool::ScorePool(std::vector<LabeledSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw EmptyInputError("score pool is empty");
  for (const auto& s : samples_) {
    if (!finite_unit(s.score))
      throw DomainError("sample score outside [0,1]");
    if (s.label != 0 && s.label != 1)
      throw DomainError("sample label must be 0 or 1");
    positives_ += static_cast<std::size_t>(s.label);
  }
}

RocCurve::RocCurve(std::vector<RocPoint> points, std::string kind)
    : points_(std::move(points)), kind_(std::move(kind)) {}

void RocCurve::validate(const std::vector<RocPoint>& pts) {
  if (pts.size() < 2) throw DomainError("ROC curve needs at least two points");
  for (const auto& p : pts) {
    if (!finite_unit(p.fpr) || !finite_unit(p.tpr))
      throw DomainError("ROC point outside the unit square");
  }
  if (pts.front().fpr != 0.0)
    throw DomainError("ROC curve must start at F = 0");
  if (pts.back().fpr != 1.0 || pts.back().tpr != 1.0)
    throw DomainError("ROC curve must end at (1, 1)");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].fpr < pts[i - 1].fpr)
      throw DomainError("ROC F values must be non-decreasing");
    if (pts[i].tpr < pts[i - 1].tpr)
      throw DomainError("ROC T values must be non-decreasing");
    if (pts[i].fpr == pts[i - 1].fpr) {
      // Vertical jump: exactly two points, strictly increasing T, not at F=0.
      if (pts[i].tpr == pts[i - 1].tpr)
        throw DomainError("duplicate ROC point");
      if (pts[i].fpr == 0.0)
        throw DomainError("vertical at F = 0; store only the upper point");
      if (i >= 2 && pts[i - 2].fpr == pts[i].fpr)
        throw DomainError("more than two ROC points share one F");
    }
  }
}

RocCurve RocCurve::from_points(std::vector<RocPoint> points, std::string kind) {
  validate(points);
  return RocCurve(std::move(points), std::move(kind));
}

RocCurve RocCurve::diagonal() {
  return RocCurve({{0.0, 0.0}, {1.0, 1.0}}, "diagonal");
}

RocCurve RocCurve::linear_slope(double alpha) {
  if (!std::isfinite(alpha) || alpha < 1.0)
    throw DomainError("linear_slope requires alpha >= 1");
  std::vector<RocPoint> pts;
  if (alpha == 1.0) {
    pts = {{0.0, 0.0}, {1.0, 1.0}};
  } else {
    pts = {{0.0, 0.0}, {1.0 / alpha, 1.0}, {1.0, 1.0}};
  }
  return RocCurve(std::move(pts), "linear_slope(" + std::to_string(alpha) + ")");
}

RocCurve RocCurve::power(double gamma, int grid) {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw DomainError("power curve requires gamma > 0");
  if (grid < 1) throw DomainError("power curve requires grid >= 1");
  std::vector<RocPoint> pts;
  pts.reserve(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) {
    double f = static_cast<double>(i) / grid;
    pts.push_back({f, std::pow(f, gamma)});
  }
  pts.front() = {0.0, 0.0};
  pts.back() = {1.0, 1.0};
  return RocCurve(std::move(pts), "power(" + std::to_string(gamma) + ")");
}

RocCurve RocCurve::two_segment(double break_fpr, double break_tpr) {
  if (!finite_unit(break_fpr) || !finite_unit(break_tpr))
    throw DomainError("two_segment breakpoint outside the unit square");
  if (break_fpr <= 0.0 || break_fpr >= 1.0)
    throw DomainError("two_segment breakpoint F must be interior");
  std::vector<RocPoint> pts{{0.0, 0.0}, {break_fpr, break_tpr}, {1.0, 1.0}};
  validate(pts);
  return RocCurve(std::move(pts), "two_segment");
}

double RocCurve::tpr_at(double fpr) const {
  if (!finite_unit(fpr)) throw DomainError("F outside [0,1]");
  const auto& pts = points_;
  // Last index with pts[i].fpr <= fpr.
  std::size_t lo = 0, hi = pts.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (pts[mid].fpr <= fpr)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (pts[lo].fpr == fpr) return pts[lo].tpr;  // upper point of any jump
  const RocPoint& a = pts[lo];
  const RocPoint& b = pts[lo + 1];
  double t = (fpr - a.fpr) / (b.fpr - a.fpr);
  return a.tpr + t * (b.tpr - a.tpr);
}

OneSidedSlopes RocCurve::slopes_at(double fpr) const {
  if (!finite_unit(fpr)) throw DomainError("F outside [0,1]");
  const auto& pts = points_;
  OneSidedSlopes out;
  // Index range [lo, hi] of stored points with F == fpr (may be empty).
  std::size_t first = 0;
  while (first < pts.size() && pts[first].fpr < fpr) ++first;
  if (first < pts.size() && pts[first].fpr == fpr) {
    std::size_t last = first;
    while (last + 1 < pts.size() && pts[last + 1].fpr == fpr) ++last;
    if (first > 0)
      out.left = (last > first) ? std::numeric_limits<double>::infinity()
                                : segment_slope(pts[first - 1], pts[first]);
    if (last + 1 < pts.size())
      out.right = segment_slope(pts[last], pts[last + 1]);
    return out;
  }
  // Strictly inside the segment [first-1, first].
  double s = segment_slope(pts[first - 1], pts[first]);
  out.left = s;
  out.right = s;
  return out;
}

OriginSlope RocCurve::origin_slope() const {
  if (points_.front().tpr > 0.0) return {true, 0.0};
  return {false, segment_slope(points_[0], points_[1])};
}

double RocCurve::top_slope() const {
  const auto& pts = points_;
  return segment_slope(pts[pts.size() - 2], pts[pts.size() - 1]);
}

double RocCurve::auroc() const {
  double area = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    area += 0.5 * (points_[i].fpr - points_[i - 1].fpr) *
            (points_[i].tpr + points_[i - 1].tpr);
  }
  return area;
}

bool RocCurve::is_concave() const {
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    double s = segment_slope(points_[i - 1], points_[i]);
    if (s > prev + kSlopeTol) return false;
    prev = s;
  }
  return true;
}

RocCurve empirical_roc(const ScorePool& pool) {
  const std::size_t n_pos = pool.positives();
  const std::size_t n_neg = pool.negatives();
  if (n_neg == 0) throw AllPositiveError("pool has no negative samples");
  if (n_pos == 0) throw AllNegativeError("pool has no positive samples");

  // Per distinct score (tied scores merge into one threshold), descending.
  std::map<double, std::pair<std::size_t, std::size_t>> by_score;
  for (const auto& s : pool.samples()) {
    auto& counts = by_score[s.score];
    if (s.label == 1)
      ++counts.first;
    else
      ++counts.second;
  }

  // Step endpoints as exact count pairs, sweeping the threshold downward.
  std::vector<std::pair<std::size_t, std::size_t>> steps;  // (tp, fp)
  steps.reserve(by_score.size() + 1);
  steps.emplace_back(0, 0);
  std::size_t tp = 0, fp = 0;
  for (auto it = by_score.rbegin(); it != by_score.rend(); ++it) {
    tp += it->second.first;
    fp += it->second.second;
    steps.emplace_back(tp, fp);
  }

  std::vector<RocPoint> pts;
  pts.reserve(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    // At F = 0 keep only the highest step (the best T at zero FPR).
    if (steps[i].second == 0 && i + 1 < steps.size() && steps[i + 1].second == 0)
      continue;
    // Collapse longer vertical runs to their endpoints.
    if (i > 0 && i + 1 < steps.size() && steps[i - 1].second == steps[i].second &&
        steps[i + 1].second == steps[i].second && steps[i].second != 0)
      continue;
    pts.push_back({static_cast<double>(steps[i].second) / static_cast<double>(n_neg),
                   static_cast<double>(steps[i].first) / static_cast<double>(n_pos)});
  }
  return RocCurve::from_points(std::move(pts), "empirical");
}

}  // namespace rocscale

#include "rocscale/rejection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rocscale::rejection {

namespace {

constexpr double kSlopeTol = 1e-12;

void check_pi(double pi) {
  if (!std::isfinite(pi) || pi < 0.0 || pi > 1.0)
    throw DomainError("pi outside [0,1]");
}

void check_fpr(double fpr) {
  if (!std::isfinite(fpr) || fpr < 0.0 || fpr > 1.0)
    throw DomainError("F outside [0,1]");
}

double acceptance_probability(double tpr, double fpr, double pi) {
  return tpr * pi + fpr * (1.0 - pi);
}

/// Slope of the accuracy-compute curve from the local ROC slope. An
/// infinite ROC slope corresponds to traversing a vertical jump via
/// threshold mixtures, where accuracy falls linearly at rate -(1-pi) F.
double slope_from_roc(double tpr, double fpr, double roc_slope, double pi) {
  if (std::isinf(roc_slope)) return -(1.0 - pi) * fpr;
  return pi * (1.0 - pi) * (tpr - fpr * roc_slope) /
         (1.0 + pi * roc_slope - pi);
}

}  // namespace

double ComputeCost::value() const {
  if (!finite_) throw DomainError("infinite compute cost has no value");
  return value_;
}

ComputeCost compute_cost(const RocCurve& curve, double pi, double fpr) {
  check_pi(pi);
  check_fpr(fpr);
  double p = acceptance_probability(curve.tpr_at(fpr), fpr, pi);
  if (p <= 0.0) return ComputeCost::infinite();
  return ComputeCost::finite(1.0 / p);
}

double precision(const RocCurve& curve, double pi, double fpr) {
  check_pi(pi);
  check_fpr(fpr);
  if (pi == 0.0) return 0.0;
  if (pi == 1.0) return 1.0;
  double tpr = curve.tpr_at(fpr);
  double p = acceptance_probability(tpr, fpr, pi);
  if (p <= 0.0)
    throw ZeroAcceptanceError("acceptance probability is zero at this F");
  return tpr * pi / p;
}

RocPoint operating_point_at_compute(const RocCurve& curve, double pi,
                                    double budget) {
  check_pi(pi);
  if (pi <= 0.0 || pi >= 1.0)
    throw DomainError("cost inversion requires pi in (0,1)");
  if (!std::isfinite(budget) || budget < 1.0 - kSlopeTol)
    throw BudgetOutOfRangeError("budget below the minimum cost of 1");
  budget = std::max(budget, 1.0);
  const double target = 1.0 / budget;  // acceptance probability to realize

  const auto& pts = curve.points();
  // Acceptance probability at each stored point; strictly increasing along
  // the point list for pi in (0,1).
  auto prob_at = [&](const RocPoint& p) {
    return acceptance_probability(p.tpr, p.fpr, pi);
  };
  const double p_min = prob_at(pts.front());
  if (target < p_min * (1.0 - 1e-12))
    throw BudgetOutOfRangeError("budget exceeds the curve's maximal cost");
  if (target <= p_min) return pts.front();

  // Bisect over stored points: smallest index whose probability >= target.
  std::size_t lo = 0, hi = pts.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (prob_at(pts[mid]) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  const RocPoint& b = pts[hi];
  if (prob_at(b) == target || hi == 0) return b;
  const RocPoint& a = pts[hi - 1];
  if (b.fpr == a.fpr) {
    // Vertical jump: mixtures of the two adjacent thresholds realize
    // intermediate T at fixed F.
    double tpr = (target - b.fpr * (1.0 - pi)) / pi;
    return {b.fpr, std::clamp(tpr, a.tpr, b.tpr)};
  }
  double slope = (b.tpr - a.tpr) / (b.fpr - a.fpr);
  double intercept = a.tpr - slope * a.fpr;
  double fpr = (target - pi * intercept) / (pi * slope + 1.0 - pi);
  fpr = std::clamp(fpr, a.fpr, b.fpr);
  return {fpr, intercept + slope * fpr};
}

double accuracy_at_compute(const RocCurve& curve, double pi, double budget) {
  check_pi(pi);
  if (!std::isfinite(budget) || budget < 1.0 - kSlopeTol)
    throw BudgetOutOfRangeError("budget below the minimum cost of 1");
  if (pi == 0.0) return 0.0;
  if (pi == 1.0) return 1.0;
  RocPoint op = operating_point_at_compute(curve, pi, budget);
  double p = acceptance_probability(op.tpr, op.fpr, pi);
  return op.tpr * pi / p;
}

double accuracy_slope(const RocCurve& curve, double pi, double fpr) {
  check_pi(pi);
  check_fpr(fpr);
  OneSidedSlopes s = curve.slopes_at(fpr);
  if (!s.left || !s.right)
    throw KinkPointError("ROC slope undefined at a domain endpoint");
  if (std::isinf(*s.left) || std::isinf(*s.right) ||
      std::abs(*s.left - *s.right) > kSlopeTol)
    throw KinkPointError("ROC slope undefined at a breakpoint");
  return slope_from_roc(curve.tpr_at(fpr), fpr, *s.right, pi);
}

double early_slope(const RocCurve& curve, double pi) {
  check_pi(pi);
  if (pi == 1.0) return 0.0;  // accuracy is constant at 1
  double s = curve.top_slope();
  if (std::isinf(s)) return -(1.0 - pi);
  return pi * (pi - 1.0) * (1.0 - s) / (pi - 1.0 - pi * s);
}

double limit_accuracy(const RocCurve& curve, double pi) {
  check_pi(pi);
  if (pi == 0.0) return 0.0;
  if (pi == 1.0) return 1.0;
  OriginSlope o = curve.origin_slope();
  if (o.separating) return 1.0;
  return o.slope * pi / (o.slope * pi + 1.0 - pi);
}

AccuracyComputeCurve profile(const RocCurve& curve, double pi,
                             std::span<const double> fpr_grid) {
  check_pi(pi);
  for (std::size_t i = 0; i < fpr_grid.size(); ++i) {
    if (!std::isfinite(fpr_grid[i]) || fpr_grid[i] <= 0.0 || fpr_grid[i] > 1.0)
      throw DomainError("profile grid values must lie in (0,1]");
    if (i > 0 && fpr_grid[i] <= fpr_grid[i - 1])
      throw DomainError("profile grid must be strictly ascending");
  }

  const auto& pts = curve.points();
  // Rows: every stored point (verticals contribute both endpoints) plus
  // grid values that do not coincide with a stored F.
  std::vector<RocPoint> rows(pts.begin(), pts.end());
  for (double f : fpr_grid) {
    bool stored = std::any_of(pts.begin(), pts.end(),
                              [f](const RocPoint& p) { return p.fpr == f; });
    if (!stored) rows.push_back({f, curve.tpr_at(f)});
  }
  // Order by increasing cost: F descending, upper vertical endpoint first.
  std::sort(rows.begin(), rows.end(), [](const RocPoint& a, const RocPoint& b) {
    if (a.fpr != b.fpr) return a.fpr > b.fpr;
    return a.tpr > b.tpr;
  });

  AccuracyComputeCurve out;
  out.pi = pi;
  out.curve_id = curve.kind();
  out.points.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    AccuracyComputePoint pt;
    pt.fpr = rows[i].fpr;
    pt.tpr = rows[i].tpr;
    double p = acceptance_probability(pt.tpr, pt.fpr, pi);
    if (p > 0.0) {
      pt.cost = ComputeCost::finite(1.0 / p);
      pt.accuracy = pt.tpr * pi / p;
      if (i > 0) {
        double df = rows[i - 1].fpr - rows[i].fpr;
        double s = (df == 0.0) ? std::numeric_limits<double>::infinity()
                               : (rows[i - 1].tpr - rows[i].tpr) / df;
        pt.dadc_low = slope_from_roc(pt.tpr, pt.fpr, s, pi);
      }
      if (i + 1 < rows.size()) {
        double df = rows[i].fpr - rows[i + 1].fpr;
        double s = (df == 0.0) ? std::numeric_limits<double>::infinity()
                               : (rows[i].tpr - rows[i + 1].tpr) / df;
        pt.dadc_high = slope_from_roc(pt.tpr, pt.fpr, s, pi);
      }
    }
    out.points.push_back(pt);
  }
  return out;
}

DeEmergenceResult de_emergence(const RocCurve& prefix, double pi,
                               double budget) {
  check_pi(pi);
  if (pi <= 0.0 || pi >= 1.0)
    throw DomainError("de-emergence requires pi in (0,1)");
  if (!std::isfinite(budget) || budget < 1.0 - kSlopeTol)
    throw BudgetOutOfRangeError("budget below the minimum cost of 1");
  // The budget must stay strictly below the cost at the smallest observed F.
  ComputeCost max_cost = compute_cost(prefix, pi, 0.0);
  if (max_cost.is_finite() && budget >= max_cost.value() * (1.0 - 1e-12))
    throw BudgetTooLargeError("budget reaches the end of the observed prefix");

  RocPoint at = operating_point_at_compute(prefix, pi, budget);
  if (at.tpr <= 0.0)
    throw ZeroAccuracyPrefixError(
        "observed accuracy is zero; no consistent score reaches accuracy 1");

  std::vector<RocPoint> observed{at};
  for (const auto& p : prefix.points()) {
    if (p.fpr > at.fpr || (p.fpr == at.fpr && p.tpr > at.tpr))
      observed.push_back(p);
  }

  std::vector<RocPoint> stagnant{{0.0, 0.0}};
  stagnant.insert(stagnant.end(), observed.begin(), observed.end());
  std::vector<RocPoint> perfect{{0.0, at.tpr}};
  perfect.insert(perfect.end(), observed.begin(), observed.end());

  RocCurve ext_stagnant =
      RocCurve::from_points(std::move(stagnant), "de_emergence_stagnant");
  RocCurve ext_perfect =
      RocCurve::from_points(std::move(perfect), "de_emergence_perfect");
  double sup_stagnant = limit_accuracy(ext_stagnant, pi);
  return DeEmergenceResult{budget,
                           at.fpr,
                           at.tpr,
                           std::move(observed),
                           std::move(ext_stagnant),
                           std::move(ext_perfect),
                           sup_stagnant,
                           1.0};
}

}  // namespace rocscale::rejection

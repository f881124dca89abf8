#include "rocscale/bon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rocscale/rejection.hpp"

namespace rocscale::bon {

namespace {

constexpr int kMaxExpandedPower = 64;

void check_pi(double pi) {
  if (!std::isfinite(pi) || pi < 0.0 || pi > 1.0)
    throw DomainError("pi outside [0,1]");
}

/// log n! for n in [0, size).
std::vector<double> log_factorials(int size) {
  std::vector<double> lf(static_cast<std::size_t>(size), 0.0);
  for (int i = 2; i < size; ++i)
    lf[static_cast<std::size_t>(i)] =
        lf[static_cast<std::size_t>(i - 1)] + std::log(static_cast<double>(i));
  return lf;
}

double lchoose(const std::vector<double>& lf, int n, int r) {
  return lf[static_cast<std::size_t>(n)] - lf[static_cast<std::size_t>(r)] -
         lf[static_cast<std::size_t>(n - r)];
}

/// integral_0^dF (g0 + g1 t)^m dt, closed form with stable small-step and
/// near-constant fallbacks.
double affine_power_integral(double g0, double g1, double df, int m) {
  if (df <= 0.0) return 0.0;
  if (m == 0) return df;
  if (std::abs(g1) < 1e-14) return std::pow(g0, m) * df;
  double g_end = g0 + g1 * df;
  if (g0 <= 0.0) return std::pow(std::max(g_end, 0.0), m + 1) / (g1 * (m + 1));
  if (g_end <= 0.0) return -std::pow(g0, m + 1) / (g1 * (m + 1));
  double t = (m + 1) * std::log1p(g1 * df / g0);
  if (t < -700.0) return -std::pow(g0, m + 1) / (g1 * (m + 1));
  return std::pow(g0, m + 1) * std::expm1(t) / (g1 * (m + 1));
}

}  // namespace

double h_integral(const RocCurve& curve, int k, int p) {
  if (k < 0 || p < 0) throw DomainError("H(k, p) requires k, p >= 0");
  if (p > kMaxExpandedPower)
    throw TooLargeError("H expansion capped at p <= 64");
  if (k == 0) return 1.0;
  if (p == 0) return 0.0;

  const auto lf = log_factorials(p + k + 2);
  const auto& pts = curve.points();

  // integral of (1 - T)^p (1 - F)^(k-1) dF, segment by segment. With both
  // factors affine in F, rescaling the segment to t in [0,1] turns each
  // factor into a convex combination of its endpoint values, so the binomial
  // expansion has only nonnegative terms and Beta-function integrals.
  double integral = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double df = pts[i].fpr - pts[i - 1].fpr;
    if (df <= 0.0) continue;
    double ua = 1.0 - pts[i - 1].tpr, ub = 1.0 - pts[i].tpr;
    double va = 1.0 - pts[i - 1].fpr, vb = 1.0 - pts[i].fpr;
    double lua = ua > 0.0 ? std::log(ua) : 0.0;
    double lub = ub > 0.0 ? std::log(ub) : 0.0;
    double lva = va > 0.0 ? std::log(va) : 0.0;
    double lvb = vb > 0.0 ? std::log(vb) : 0.0;
    double seg = 0.0;
    for (int j = 0; j <= p; ++j) {
      if (ua == 0.0 && p - j > 0) continue;
      if (ub == 0.0 && j > 0) continue;
      double base_u = lchoose(lf, p, j) + (p - j) * lua + j * lub;
      for (int m = 0; m <= k - 1; ++m) {
        if (va == 0.0 && k - 1 - m > 0) continue;
        if (vb == 0.0 && m > 0) continue;
        int a = j + m;
        int b = p + k - 1 - a;
        double lterm = base_u + lchoose(lf, k - 1, m) + (k - 1 - m) * lva +
                       m * lvb + lf[static_cast<std::size_t>(a)] +
                       lf[static_cast<std::size_t>(b)] -
                       lf[static_cast<std::size_t>(p + k)];
        seg += std::exp(lterm);
      }
    }
    integral += df * seg;
  }
  return std::clamp(1.0 - k * integral, 0.0, 1.0);
}

double accuracy_single_integral(const RocCurve& curve, double pi, int n) {
  check_pi(pi);
  if (n < 1) throw DomainError("N must be >= 1");
  // 1 - (1-pi) N integral of g(F)^(N-1) with g = (1-F)(1-pi) + pi (1-T(F)),
  // affine on each segment.
  const auto& pts = curve.points();
  double integral = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double df = pts[i].fpr - pts[i - 1].fpr;
    if (df <= 0.0) continue;
    double slope = (pts[i].tpr - pts[i - 1].tpr) / df;
    double g0 = (1.0 - pts[i - 1].fpr) * (1.0 - pi) +
                pi * (1.0 - pts[i - 1].tpr);
    double g1 = -(1.0 - pi) - pi * slope;
    integral += affine_power_integral(g0, g1, df, n - 1);
  }
  return std::clamp(1.0 - (1.0 - pi) * n * integral, 0.0, 1.0);
}

double accuracy_binomial_sum(const RocCurve& curve, double pi, int n) {
  check_pi(pi);
  if (n < 1) throw DomainError("N must be >= 1");
  if (n > kMaxExpandedPower)
    throw TooLargeError("binomial-sum path capped at N <= 64");
  if (pi == 0.0) return h_integral(curve, n, 0);
  if (pi == 1.0) return h_integral(curve, 0, n);
  const auto lf = log_factorials(n + 2);
  double acc = 0.0;
  for (int p = 0; p <= n; ++p) {
    double lw = lchoose(lf, n, p) + p * std::log(pi) +
                (n - p) * std::log(1.0 - pi);
    acc += std::exp(lw) * h_integral(curve, n - p, p);
  }
  return std::clamp(acc, 0.0, 1.0);
}

BonPoint accuracy(const RocCurve& curve, double pi, int n) {
  double value = accuracy_single_integral(curve, pi, n);
  if (n <= 30) {
    double check = accuracy_binomial_sum(curve, pi, n);
    if (std::abs(check - value) > 1e-8)
      throw std::logic_error("Best-of-N representations disagree beyond 1e-8");
  }
  return BonPoint{n, value, BonPoint::Method::single_integral};
}

double bo2_gain(const RocCurve& curve, double pi) {
  check_pi(pi);
  return pi * (pi + 2.0 * (1.0 - pi) * curve.auroc() - 1.0);
}

double limit_accuracy(const RocCurve& curve, double pi) {
  return rejection::limit_accuracy(curve, pi);
}

BonProfile profile(const RocCurve& curve, double pi, std::span<const int> ns) {
  check_pi(pi);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw DomainError("N values must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw DomainError("N values must be strictly ascending");
  }
  BonProfile out;
  out.pi = pi;
  out.curve_id = curve.kind();
  out.limit = limit_accuracy(curve, pi);
  out.points.reserve(ns.size());
  for (int n : ns) out.points.push_back(accuracy(curve, pi, n));
  return out;
}

}  // namespace rocscale::bon

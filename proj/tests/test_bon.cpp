#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rocscale/bon.hpp"
#include "rocscale/rejection.hpp"
#include "rocscale/simulate.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rocscale;
using doctest::Approx;

namespace {

const RocCurve kPerfect = RocCurve::from_points({{0.0, 1.0}, {1.0, 1.0}});

}  // namespace

TEST_CASE("H integral boundary cases") {
  auto diag = RocCurve::diagonal();
  for (int p : {0, 1, 5, 64}) CHECK(bon::h_integral(diag, 0, p) == 1.0);
  for (int k : {1, 3, 12}) CHECK(bon::h_integral(diag, k, 0) == 0.0);
  CHECK_THROWS_AS(bon::h_integral(diag, 1, 65), TooLargeError);
  CHECK_THROWS_AS(bon::h_integral(diag, -1, 2), DomainError);
}

TEST_CASE("H on the diagonal equals p / (p + k)") {
  auto diag = RocCurve::diagonal();
  for (int k = 1; k <= 10; ++k)
    for (int p = 1; p <= 10; ++p)
      CHECK(bon::h_integral(diag, k, p) ==
            Approx(testsupport::diagonal_h(k, p)).epsilon(1e-12));
  CHECK(bon::h_integral(diag, 2, 1) == Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("H on a separating curve is 1 whenever p >= 1") {
  for (int k : {1, 2, 8})
    for (int p : {1, 3, 20})
      CHECK(bon::h_integral(kPerfect, k, p) == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("H(1,1) equals the area under the curve") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto curve = testsupport::random_curve(rng);
    CHECK(bon::h_integral(curve, 1, 1) ==
          Approx(curve.auroc()).epsilon(1e-12));
  }
}

TEST_CASE("Best-of-N accuracy: closed-form cases") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto curve = testsupport::random_curve(rng);
    double pi = unit(rng);
    CHECK(bon::accuracy(curve, pi, 1).acc_exact == Approx(pi).epsilon(1e-12));
  }
  for (int n : {2, 5, 17, 100})
    CHECK(bon::accuracy(RocCurve::diagonal(), 0.3, n).acc_exact ==
          Approx(0.3).epsilon(1e-12));
  CHECK(bon::accuracy(kPerfect, 0.25, 4).acc_exact ==
        Approx(0.68359375).epsilon(1e-12));  // 1 - 0.75^4
}

TEST_CASE("property: the two Best-of-N representations agree") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto curve = testsupport::random_curve(rng);
    double pi = unit(rng);
    for (int n : {1, 2, 3, 7, 19, 30}) {
      double a = bon::accuracy_single_integral(curve, pi, n);
      double b = bon::accuracy_binomial_sum(curve, pi, n);
      CHECK(std::abs(a - b) <= 1e-8);
    }
  }
}

TEST_CASE("property: H(n-p, p) is non-decreasing in p") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto curve = testsupport::random_curve(rng);
    for (int n : {2, 5, 11, 20}) {
      double prev = -1.0;
      for (int p = 0; p <= n; ++p) {
        double h = bon::h_integral(curve, n - p, p);
        CHECK(h >= prev - 1e-12);
        prev = h;
      }
    }
  }
}

TEST_CASE("property: accuracy is non-decreasing in N on concave curves") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto curve = testsupport::random_concave_curve(rng);
    double pi = 0.1 + 0.8 * unit(rng);
    double prev = -1.0;
    for (int n = 1; n <= 256; n *= 2) {
      double acc = bon::accuracy(curve, pi, n).acc_exact;
      CHECK(acc >= prev - 1e-12);
      prev = acc;
    }
  }
}

TEST_CASE("Best-of-2 gain from the area under the curve") {
  CHECK(bon::bo2_gain(RocCurve::diagonal(), 0.4) == Approx(0.0).epsilon(1e-15));
  CHECK(bon::bo2_gain(kPerfect, 0.5) == Approx(0.25).epsilon(1e-15));
  auto vertical = RocCurve::from_points(
      {{0.0, 0.0}, {0.5, 0.5}, {0.5, 1.0}, {1.0, 1.0}});
  CHECK(bon::bo2_gain(vertical, 0.5) == Approx(0.0625).epsilon(1e-13));
}

TEST_CASE("property: Best-of-2 gain matches the exact accuracies") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto curve = testsupport::random_curve(rng);
    double pi = unit(rng);
    double direct = bon::accuracy(curve, pi, 2).acc_exact -
                    bon::accuracy(curve, pi, 1).acc_exact;
    CHECK(std::abs(bon::bo2_gain(curve, pi) - direct) <= 1e-10);
  }
}

TEST_CASE("large-N limit matches the rejection-sampling limit exactly") {
  CHECK(bon::limit_accuracy(RocCurve::linear_slope(4.0), 0.25) ==
        Approx(4.0 / 7.0).epsilon(1e-13));
  CHECK(bon::limit_accuracy(RocCurve::from_points({{0.0, 0.5}, {1.0, 1.0}}),
                            0.1) == 1.0);
  CHECK(bon::limit_accuracy(RocCurve::diagonal(), 0.3) ==
        Approx(0.3).epsilon(1e-15));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto curve = testsupport::random_curve(rng);
    double pi = unit(rng);
    CHECK(bon::limit_accuracy(curve, pi) ==
          rejection::limit_accuracy(curve, pi));
  }
}

TEST_CASE("property: accuracy converges to the limit with shrinking gaps") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto curve = testsupport::random_concave_curve(rng);
    double pi = 0.1 + 0.8 * unit(rng);
    double limit = bon::limit_accuracy(curve, pi);
    double g100 = std::abs(bon::accuracy(curve, pi, 100).acc_exact - limit);
    double g1k =
        std::abs(bon::accuracy_single_integral(curve, pi, 1000) - limit);
    double g10k =
        std::abs(bon::accuracy_single_integral(curve, pi, 10000) - limit);
    CHECK(g10k <= 0.01);
    CHECK(g1k <= g100 + 1e-12);
    CHECK(g10k <= g1k + 1e-12);
  }
}

TEST_CASE("profile tabulates exact accuracies with the limit attached") {
  std::vector<int> ns{1, 2, 4};
  auto diag_prof = bon::profile(RocCurve::diagonal(), 0.3, ns);
  for (const auto& p : diag_prof.points)
    CHECK(p.acc_exact == Approx(0.3).epsilon(1e-12));
  CHECK(diag_prof.limit == Approx(0.3).epsilon(1e-15));

  auto sep_prof = bon::profile(kPerfect, 0.25, ns);
  CHECK(sep_prof.points[0].acc_exact == Approx(0.25).epsilon(1e-12));
  CHECK(sep_prof.points[1].acc_exact == Approx(0.4375).epsilon(1e-12));
  CHECK(sep_prof.points[2].acc_exact == Approx(0.68359375).epsilon(1e-12));
  CHECK(sep_prof.limit == 1.0);

  auto concave = RocCurve::from_points({{0.0, 0.0}, {0.25, 0.75}, {1.0, 1.0}});
  std::vector<int> more{1, 2, 4, 8, 16};
  auto prof = bon::profile(concave, 0.2, more);
  double prev = -1.0;
  for (const auto& p : prof.points) {
    CHECK(p.acc_exact >= prev - 1e-12);
    prev = p.acc_exact;
  }
  CHECK_THROWS_AS(bon::profile(concave, 0.2, std::vector<int>{2, 2}),
                  DomainError);
}

TEST_CASE("property: analytic accuracy equals exhaustive enumeration") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    auto pool = testsupport::random_pool(rng, 2, 6);
    auto curve = empirical_roc(pool);
    for (int n = 1; n <= 3; ++n) {
      double exact = sim::brute_force_bon(pool, n);
      double analytic = bon::accuracy(curve, pool.pi(), n).acc_exact;
      CHECK(std::abs(exact - analytic) <= 1e-10);
    }
  }
}

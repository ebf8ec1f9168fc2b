#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qentropy/bounds.hpp"

using namespace qentropy;

namespace {

const auto kHalf = make_dist({0.5, 0.5});
const auto kSkew = make_dist({0.25, 0.75});
const auto square = [](double x) { return x * x; };

Vector<double> vec(std::initializer_list<double> xs) {
  Vector<double> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vector<double> vec(const oracle::V& xs) {
  return Eigen::Map<const Vector<double>>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

void check_report(const BoundReport<double>& b, double lo, double v, double hi, double eps = 1e-12) {
  CHECK(b.lower == doctest::Approx(lo).epsilon(eps));
  CHECK(b.value == doctest::Approx(v).epsilon(eps));
  CHECK(b.upper == doctest::Approx(hi).epsilon(eps));
  CHECK(b.lower_slack == doctest::Approx(v - lo).epsilon(eps));
  CHECK(b.upper_slack == doctest::Approx(hi - v).epsilon(eps));
}

}  // namespace

TEST_CASE("jensen gap") {
  const auto id = identity_psi<double>();
  CHECK(jensen_gap(square, id, vec({1, 3}), kHalf) == doctest::Approx(1.0));
  CHECK(jensen_gap(square, id, vec({2, 2}), kSkew) == 0.0);
  const auto neglog = [](double x) { return -std::log(x); };
  CHECK(std::abs(jensen_gap(neglog, id, vec({1, 1, 1}), make_dist({0.2, 0.3, 0.5}))) < 1e-16);
}

TEST_CASE("ratio sandwich") {
  const auto id = identity_psi<double>();
  const auto same = ratio_sandwich(square, id, vec({0.3, 2.0}), kSkew, kSkew);
  CHECK(same.lower == same.value);
  CHECK(same.value == same.upper);
  check_report(ratio_sandwich(square, id, vec({0, 1}), kHalf, kSkew), 0.125, 0.1875, 0.375);
  CHECK_THROWS_AS(ratio_sandwich([](double x) { return -x * x; }, id, vec({0, 1}), kHalf, kSkew, true),
                  HypothesisError);
  CHECK_NOTHROW(ratio_sandwich(square, id, vec({0, 1}), kHalf, kSkew, true));
}

TEST_CASE("ratio sandwich with uniform p is the quasilinear-vs-Tsallis chain") {
  const auto r = make_dist({0.1, 0.3, 0.6});
  const auto u = uniform<double>(3);
  const double q = 2.0;
  const auto psi = identity_psi<double>();
  const auto f = [q](double x) { return -q_log(x, q); };
  const auto via_ratio = ratio_sandwich(f, psi, r.weights().cwiseInverse().eval(), u, r);
  const auto direct = quasilinear_vs_tsallis_bounds(psi, r, q);
  // T(f, 1/r, r) = I_q^psi(r) - H_q(r); T(f, 1/r, uniform) = the braced term
  CHECK(via_ratio.value == doctest::Approx(direct.value).epsilon(1e-13));
  CHECK(via_ratio.lower == doctest::Approx(direct.lower).epsilon(1e-13));
  CHECK(via_ratio.upper == doctest::Approx(direct.upper).epsilon(1e-13));
}

TEST_CASE("quasilinear vs Tsallis bounds") {
  for (const auto& psi : {identity_psi<double>(), log_psi<double>(), lnq_psi<double>(2.0)}) {
    const auto b = quasilinear_vs_tsallis_bounds(psi, uniform<double>(4), 2.0);
    CHECK(std::abs(b.lower) < 1e-15);
    CHECK(std::abs(b.value) < 1e-15);
    CHECK(std::abs(b.upper) < 1e-15);
  }
  const auto lnq = quasilinear_vs_tsallis_bounds(lnq_psi<double>(2.0), kSkew, 2.0);
  CHECK(std::abs(lnq.value) < 1e-15);
  CHECK(lnq.lower <= 1e-15);
  CHECK(lnq.upper >= -1e-15);
  check_report(quasilinear_vs_tsallis_bounds(identity_psi<double>(), kSkew, 2.0), 0.0625, 0.125,
               0.1875);
}

TEST_CASE("refined maxent bounds") {
  const auto u = refined_maxent_bounds(uniform<double>(5), 1.7);
  CHECK(std::abs(u.lower) < 1e-15);
  CHECK(std::abs(u.value) < 1e-15);
  CHECK(std::abs(u.upper) < 1e-15);
  check_report(refined_maxent_bounds(kSkew, 2.0), 0.0625, 0.125, 0.1875);

  const double gap = std::log(8.0 / 3.0) - 0.5 * (std::log(4.0) + std::log(4.0 / 3.0));
  const double value = std::log(2.0) - oracle::shannon({0.25, 0.75});
  check_report(refined_maxent_bounds(kSkew, 1.0), 0.5 * gap, value, 1.5 * gap);
  CHECK(value == doctest::Approx(0.130812).epsilon(1e-6));
}

TEST_CASE("refined maxent equals the identity-generator chain") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    const auto r = make_dist(oracle::dirichlet(2 + rng() % 15, rng));
    for (double q : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const auto a = refined_maxent_bounds(r, q);
      const auto b = quasilinear_vs_tsallis_bounds(identity_psi<double>(), r, q);
      CHECK(oracle::rel_err(a.lower, b.lower) < 1e-10);
      CHECK(oracle::rel_err(a.value, b.value) < 1e-10);
      CHECK(oracle::rel_err(a.upper, b.upper) < 1e-10);
      CHECK(a.lower >= -1e-12);
      CHECK(a.holds());
    }
  }
}

TEST_CASE("f-divergence sandwich") {
  for (const auto& f : {kl_f<double>(), neglog_f<double>(), tsallis_f<double>(2.0)}) {
    const auto b = f_divergence_sandwich(f, kSkew, kSkew);
    CHECK(std::abs(b.lower) < 1e-15);
    CHECK(std::abs(b.value) < 1e-15);
    CHECK(std::abs(b.upper) < 1e-15);
  }
  // factor = sum_j t_j f*(p_j / t_j) - f(sum_j t_j), t_j = p_j^2 / r_j, f*(u) = u f(1/u)
  const double q = 2.0;
  const auto f = tsallis_f<double>(q);
  const oracle::V p{0.5, 0.5};
  const oracle::V r{0.25, 0.75};
  double factor = 0.0;
  double tsum = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double t = p[i] * p[i] / r[i];
    tsum += t;
    factor += t * -oracle::lnq(p[i] / t, q);
  }
  factor -= -tsum * oracle::lnq(1.0 / tsum, q);
  const auto b = f_divergence_sandwich(f, kHalf, kSkew);
  check_report(b, factor * 0.5, 1.0 / 3.0, factor * 1.5);
}

TEST_CASE("reverse KL corollary term") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    const auto pw = oracle::dirichlet(n, rng);
    const auto rw = oracle::dirichlet(n, rng);
    double tsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) tsum += pw[i] * pw[i] / rw[i];
    const auto p = make_dist(pw);
    const auto r = make_dist(rw);
    const double expect = std::log(tsum) - oracle::kl(pw, rw);
    CHECK(oracle::rel_err(dual_jensen_factor(neglog_f<double>(), p, r), expect) < 1e-10);
    const auto b = f_divergence_sandwich(neglog_f<double>(), p, r);
    CHECK(oracle::rel_err(b.value, oracle::kl(rw, pw)) < 1e-10);
    CHECK(b.lower >= -1e-12);
    CHECK(b.holds());
  }
}

TEST_CASE("spread forms and Lagrange identity") {
  CHECK(pairwise_spread(vec({0, 1}), kHalf) == 0.25);
  CHECK(pairwise_spread(vec({3, 3, 3}), make_dist({0.2, 0.3, 0.5})) == doctest::Approx(0.0));
  const auto l = lagrange_identity(vec({1, 2}), vec({3, 4}));
  CHECK(l.lhs == 4.0);
  CHECK(l.rhs == 4.0);
  CHECK_THROWS_AS(lagrange_identity(vec({1, 2}), vec({3})), LengthMismatchError);
  CHECK_THROWS_AS(pairwise_spread(vec({1, 2, 3}), kHalf), LengthMismatchError);

  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 32;
    oracle::V a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
    }
    const auto w = oracle::dirichlet(n, rng);
    const auto forms = pairwise_spread_forms(vec(a), make_dist(w));
    CHECK(oracle::rel_err(forms.lhs, oracle::pairwise(a, w)) < 1e-12);
    CHECK(oracle::rel_err(forms.rhs, oracle::variance(a, w)) < 1e-12);
    CHECK(forms.relative_residual() <= 1e-10);
    CHECK(lagrange_identity(vec(a), vec(b)).relative_residual() <= 1e-10);
  }
}

TEST_CASE("smooth Jensen sandwich") {
  const auto neglog = [](double x) { return -std::log(x); };
  const SecondDerivativeRange<double> range{0.25, 1.0, 1.0, 2.0};
  const double gap = std::log(1.5) - 0.5 * std::log(2.0);
  check_report(smooth_jensen_sandwich(neglog, range, vec({1, 2}), kHalf), 0.03125, gap, 0.125);
  CHECK(gap == doctest::Approx(0.058891).epsilon(1e-5));

  const SecondDerivativeRange<double> two{2.0, 2.0, -10.0, 10.0};
  for (auto form : {SpreadForm::pairwise, SpreadForm::variance}) {
    const auto eq = smooth_jensen_sandwich(square, two, vec({-3, 0.5, 7}), make_dist({0.2, 0.3, 0.5}), form);
    CHECK(eq.lower == doctest::Approx(eq.value).epsilon(1e-14));
    CHECK(eq.upper == doctest::Approx(eq.value).epsilon(1e-14));
  }
  const auto flat = smooth_jensen_sandwich(neglog, range, vec({1.5, 1.5}), kHalf);
  CHECK(flat.lower == 0.0);
  CHECK(std::abs(flat.value) < 1e-16);
  CHECK(flat.upper == 0.0);

  CHECK_THROWS_AS(smooth_jensen_sandwich(neglog, range, vec({1, 3}), kHalf), DomainError);
  CHECK_THROWS_AS(smooth_jensen_sandwich(neglog, SecondDerivativeRange<double>{1.0, 0.5, 1.0, 2.0},
                                         vec({1, 2}), kHalf),
                  DomainError);
  CHECK_THROWS_AS(smooth_jensen_sandwich(neglog, SecondDerivativeRange<double>{-1.0, 0.5, 1.0, 2.0},
                                         vec({1, 2}), kHalf),
                  DomainError);
}

TEST_CASE("Cartwright-Field") {
  check_report(cartwright_field(vec({1, 4}), kHalf), 0.28125, 0.5, 1.125);
  const auto flat = cartwright_field(vec({2, 2, 2}), make_dist({0.2, 0.3, 0.5}));
  CHECK(std::abs(flat.lower) < 1e-15);
  CHECK(std::abs(flat.value) < 1e-15);
  CHECK(std::abs(flat.upper) < 1e-15);
  const auto close = cartwright_field(vec({1.0, 1.0 + 1e-6}), kHalf);
  CHECK(close.lower_slack < 1e-12);
  CHECK(close.upper_slack < 1e-12);
  CHECK_THROWS_AS(cartwright_field(vec({0.0, 1.0}), kHalf), DomainError);
}

TEST_CASE("tightest constants") {
  const auto u = tightest_constants(kHalf, kHalf, 2.0);
  CHECK(u.m == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(u.M == doctest::Approx(0.25).epsilon(1e-15));
  const auto k = tightest_constants(kHalf, kSkew, 1.0);
  CHECK(k.m == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(k.M == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(k.lo == doctest::Approx(4.0 / 3.0));
  CHECK(k.hi == doctest::Approx(4.0));
  const auto near = tightest_constants(kHalf, kSkew, 1.0 + 1e-6);
  CHECK(near.m == doctest::Approx(k.m).epsilon(1e-5));
  CHECK(near.M == doctest::Approx(k.M).epsilon(1e-5));
  CHECK_THROWS_AS(tightest_constants(kHalf, kSkew, 0.0), DegenerateRangeError);
}

TEST_CASE("tightest constants bound the curvature of -ln_q on the hull") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    const auto p = make_dist(oracle::dirichlet(n, rng));
    const auto r = make_dist(oracle::dirichlet(n, rng));
    for (double q : {0.25, 1.0, 2.5}) {
      const auto c = tightest_constants(p, r, q);
      for (int s = 0; s <= 20; ++s) {
        const double x = c.lo + (c.hi - c.lo) * s / 20.0;
        const double f2 = q * std::pow(x, -q - 1.0);
        CHECK(f2 >= c.m * (1 - 1e-12));
        CHECK(f2 <= c.M * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("Tsallis cross-entropy sandwich term by term") {
  const double q = 2.0;
  const oracle::V p{0.5, 0.5};
  const oracle::V r{0.25, 0.75};
  const double m = q * std::pow(0.25, q + 1);
  const double M = q * std::pow(0.75, q + 1);
  double cross = 0.0;
  double ratio = 0.0;
  oracle::V inv_p(2), inv_r(2);
  for (std::size_t i = 0; i < 2; ++i) {
    cross += p[i] * oracle::lnq(1.0 / r[i], q);
    ratio += p[i] / r[i];
    inv_p[i] = 1.0 / p[i];
    inv_r[i] = 1.0 / r[i];
  }
  const double hq = oracle::tsallis(p, q);
  const double s_p = oracle::pairwise(inv_p, p);
  const double s_r = oracle::pairwise(inv_r, p);
  const double base = oracle::lnq(ratio, q) - oracle::lnq(2.0, q);

  const auto s = tsallis_cross_entropy_sandwich(kHalf, kSkew, q);
  check_report(s.combined, base + m / 2 * s_p - M / 2 * s_r, cross - hq,
               base + M / 2 * s_p - m / 2 * s_r);
  check_report(s.cross, m / 2 * s_r, oracle::lnq(ratio, q) - cross, M / 2 * s_r);
  check_report(s.maxent, m / 2 * s_p, oracle::lnq(2.0, q) - hq, M / 2 * s_p);
  CHECK(s.combined.value == doctest::Approx(0.0));
  CHECK(s.combined.lower == doctest::Approx(-0.625).epsilon(1e-14));
  CHECK(s.combined.upper == doctest::Approx(0.125 - 1.0 / 36.0).epsilon(1e-14));
}

TEST_CASE("Tsallis cross-entropy sandwich edge cases") {
  const auto u = tsallis_cross_entropy_sandwich(uniform<double>(3), uniform<double>(3), 1.5);
  for (const auto& b : {u.combined, u.cross, u.maxent}) {
    CHECK(std::abs(b.lower) < 1e-14);
    CHECK(std::abs(b.value) < 1e-14);
    CHECK(std::abs(b.upper) < 1e-14);
  }
  const auto same = tsallis_cross_entropy_sandwich(kSkew, kSkew, 2.0);
  CHECK(std::abs(same.combined.value) < 1e-15);
  CHECK(same.combined.lower <= 0.0);
  CHECK(same.combined.upper >= 0.0);
  CHECK_THROWS_AS(tsallis_cross_entropy_sandwich(kHalf, kSkew, 2.0, 1.0, 0.5), DomainError);
}

TEST_CASE("cross-entropy sandwich near q = 1 tracks the Shannon corollary") {
  // The constants move like q x^{q+1}, so compare relative to the chain's scale.
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    const auto p = make_dist(oracle::dirichlet(n, rng, 1e-2));
    const auto r = make_dist(oracle::dirichlet(n, rng, 1e-2));
    const auto at_one = tsallis_cross_entropy_sandwich(p, r, 1.0).combined;
    for (double q : {1.0 - 1e-6, 1.0 + 1e-6}) {
      const auto s = tsallis_cross_entropy_sandwich(p, r, q).combined;
      const double tol = 1e-5 * std::max({1.0, s.scale(), at_one.scale()});
      CHECK(std::abs(s.lower - at_one.lower) <= tol);
      CHECK(std::abs(s.value - at_one.value) <= tol);
      CHECK(std::abs(s.upper - at_one.upper) <= tol);
    }
  }
}

#pragma once

// Two-sided Jensen-gap bounds and the entropy / divergence sandwiches that
// follow from them. Every chain comes back as a BoundReport.

#include <algorithm>
#include <cmath>
#include <vector>

#include "qentropy/dist.hpp"
#include "qentropy/divergence.hpp"
#include "qentropy/entropy.hpp"
#include "qentropy/errors.hpp"
#include "qentropy/qmath.hpp"
#include "qentropy/quasilinear.hpp"
#include "qentropy/report.hpp"

namespace qentropy {

/// T(f, x, p) = sum_j p_j f(x_j) - f(M_psi(x; p)).
template <typename Scalar, typename F>
Scalar jensen_gap(const F& f, const GeneratorPsi<Scalar>& psi, const Vector<Scalar>& xs,
                  const ProbDist<Scalar>& p) {
  const Scalar mean = quasilinear_mean(psi, xs, p);
  Scalar avg(0);
  for (Eigen::Index j = 0; j < xs.size(); ++j) avg += p[j] * f(xs[j]);
  return avg - f(mean);
}

/// min_i(r_i/p_i) T(f,x,p) <= T(f,x,r) <= max_i(r_i/p_i) T(f,x,p), valid when
/// f o psi^{-1} is convex on the image of psi. With `validate_hypothesis` the
/// compatibility condition is sampled on the points xs and a HypothesisError
/// is raised if it fails.
template <typename Scalar, typename F>
BoundReport<Scalar> ratio_sandwich(const F& f, const GeneratorPsi<Scalar>& psi,
                                   const Vector<Scalar>& xs, const ProbDist<Scalar>& p,
                                   const ProbDist<Scalar>& r, bool validate_hypothesis = false) {
  detail::require_same_length(p, r);
  if (validate_hypothesis) {
    std::vector<Scalar> grid(xs.data(), xs.data() + xs.size());
    const std::vector<Scalar> lambdas{Scalar(0), Scalar(0.25), Scalar(0.5), Scalar(0.75),
                                      Scalar(1)};
    const auto check = check_psi_convexity(f, psi, grid, lambdas);
    if (!check.holds) {
      throw HypothesisError("f is not convex relative to generator '" + psi.label + "'");
    }
  }
  const Vector<Scalar> ratio = r.weights().cwiseQuotient(p.weights());
  const Scalar tp = jensen_gap(f, psi, xs, p);
  const Scalar tr = jensen_gap(f, psi, xs, r);
  return BoundReport<Scalar>::make(ratio.minCoeff() * tp, tr, ratio.maxCoeff() * tp);
}

namespace detail {

// ln_q(M_psi(1/r; uniform)) - (1/n) sum_j ln_q(1/r_j): the Jensen gap of -ln_q
// at the points 1/r_j under uniform weights.
template <typename Scalar>
Scalar uniform_lnq_gap(const GeneratorPsi<Scalar>& psi, const ProbDist<Scalar>& r,
                       IndexArg<Scalar> q) {
  const Eigen::Index n = r.size();
  const Vector<Scalar> inv = r.weights().cwiseInverse();
  const Scalar mean = quasilinear_mean(psi, inv, uniform<Scalar>(n));
  Scalar avg(0);
  for (Eigen::Index j = 0; j < n; ++j) avg += q_log(inv[j], q);
  return q_log(mean, q) - avg / Scalar(n);
}

}  // namespace detail

/// Sandwich of I_q^psi(r) - H_q(r) between n min r_i and n max r_i times the
/// uniform-weight gap. The lower end is >= 0 whenever -ln_q o psi^{-1} is
/// convex (identity, lnq and power for every q; log for q >= 1).
template <typename Scalar>
BoundReport<Scalar> quasilinear_vs_tsallis_bounds(const GeneratorPsi<Scalar>& psi,
                                                  const ProbDist<Scalar>& r, IndexArg<Scalar> q) {
  const Scalar n = Scalar(r.size());
  const Scalar gap = detail::uniform_lnq_gap(psi, r, q);
  const Scalar value = tsallis_quasilinear_entropy(psi, r, q) - tsallis_entropy(r, q);
  return BoundReport<Scalar>::make(n * r.weights().minCoeff() * gap, value,
                                   n * r.weights().maxCoeff() * gap);
}

/// 0 <= n min r_i {ln_q(mean 1/r) - mean ln_q(1/r)} <= ln_q n - H_q(r) <= n max r_i {...}.
/// Tightens 0 <= H_q <= ln_q n.
template <typename Scalar>
BoundReport<Scalar> refined_maxent_bounds(const ProbDist<Scalar>& r, IndexArg<Scalar> q) {
  const Eigen::Index n = r.size();
  const Vector<Scalar> inv = r.weights().cwiseInverse();
  Scalar avg_lnq(0);
  for (Eigen::Index j = 0; j < n; ++j) avg_lnq += q_log(inv[j], q);
  avg_lnq /= Scalar(n);
  const Scalar gap = q_log(inv.mean(), q) - avg_lnq;
  const Scalar value = q_log(Scalar(n), q) - tsallis_entropy(r, q);
  return BoundReport<Scalar>::make(Scalar(n) * r.weights().minCoeff() * gap, value,
                                   Scalar(n) * r.weights().maxCoeff() * gap);
}

/// The factor D~_{f*}(t || p) - f(sum_j t_j) with t_j = p_j^2 / r_j.
template <typename Scalar>
Scalar dual_jensen_factor(const ConvexGenerator<Scalar>& f, const ProbDist<Scalar>& p,
                          const ProbDist<Scalar>& r) {
  detail::require_same_length(p, r);
  const auto t = make_incomplete<Scalar>(p.weights().cwiseAbs2().cwiseQuotient(r.weights()));
  const auto p_as_weights = make_incomplete<Scalar>(p.weights());
  return incomplete_f_divergence(dual_generator(f), t, p_as_weights) - f(t.total());
}

/// min(r_i/p_i) F <= D_f(p || r) <= max(r_i/p_i) F with F = dual_jensen_factor.
template <typename Scalar>
BoundReport<Scalar> f_divergence_sandwich(const ConvexGenerator<Scalar>& f,
                                          const ProbDist<Scalar>& p, const ProbDist<Scalar>& r) {
  const Scalar factor = dual_jensen_factor(f, p, r);
  const Vector<Scalar> ratio = r.weights().cwiseQuotient(p.weights());
  return BoundReport<Scalar>::make(ratio.minCoeff() * factor, f_divergence(f, p, r),
                                   ratio.maxCoeff() * factor);
}

// ---------------------------------------------------------------------------
// Curvature-based bounds
// ---------------------------------------------------------------------------

/// (sum_{i<j} p_i p_j (x_j - x_i)^2, sum_j p_j (x_j - xbar)^2). Equal
/// algebraically; both evaluated so callers can compare.
template <typename Scalar>
IdentityPair<Scalar> pairwise_spread_forms(const Vector<Scalar>& xs, const ProbDist<Scalar>& p) {
  if (xs.size() != p.size()) throw LengthMismatchError("spread: points and weights differ in length");
  Scalar pairwise(0);
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    for (Eigen::Index j = i + 1; j < xs.size(); ++j) {
      const Scalar d = xs[j] - xs[i];
      pairwise += p[i] * p[j] * d * d;
    }
  }
  const Scalar mean = p.weights().dot(xs);
  const Scalar variance = (p.weights().array() * (xs.array() - mean).square()).sum();
  return {pairwise, variance};
}

/// Weighted variance of xs under p.
template <typename Scalar>
Scalar pairwise_spread(const Vector<Scalar>& xs, const ProbDist<Scalar>& p) {
  return pairwise_spread_forms(xs, p).rhs;
}

/// (|a|^2 |b|^2 - (a.b)^2, sum_{i<j} (a_i b_j - a_j b_i)^2).
template <typename Scalar>
IdentityPair<Scalar> lagrange_identity(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) throw LengthMismatchError("Lagrange identity: lengths differ");
  const Scalar dot = a.dot(b);
  Scalar cross(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = i + 1; j < a.size(); ++j) {
      const Scalar d = a[i] * b[j] - a[j] * b[i];
      cross += d * d;
    }
  }
  return {a.squaredNorm() * b.squaredNorm() - dot * dot, cross};
}

enum class SpreadForm { pairwise, variance };

/// (m/2) S <= sum_j p_j f(x_j) - f(sum_j p_j x_j) <= (M/2) S, where S is the
/// pairwise spread (or, equivalently, the variance) and m <= f'' <= M on the
/// interval holding every x_j. The caller vouches for the curvature range.
template <typename Scalar, typename F>
BoundReport<Scalar> smooth_jensen_sandwich(const F& f, const SecondDerivativeRange<Scalar>& range,
                                           const Vector<Scalar>& xs, const ProbDist<Scalar>& p,
                                           SpreadForm form = SpreadForm::pairwise) {
  if (!(range.m >= Scalar(0)) || !(range.M >= range.m)) {
    throw DomainError("curvature range needs 0 <= m <= M");
  }
  if (!(range.lo <= range.hi)) throw DomainError("curvature interval is empty");
  if (xs.size() != p.size()) throw LengthMismatchError("points and weights differ in length");
  for (Eigen::Index j = 0; j < xs.size(); ++j) {
    if (xs[j] < range.lo || xs[j] > range.hi) {
      throw DomainError("point " + std::to_string(static_cast<double>(xs[j])) +
                        " outside the curvature interval");
    }
  }
  const auto forms = pairwise_spread_forms(xs, p);
  const Scalar spread = form == SpreadForm::pairwise ? forms.lhs : forms.rhs;
  const Scalar gap = jensen_gap(f, identity_psi<Scalar>(), xs, p);
  return BoundReport<Scalar>::make(range.m / Scalar(2) * spread, gap, range.M / Scalar(2) * spread);
}

/// Var/(2 max x) <= arithmetic mean - geometric mean <= Var/(2 min x), xs > 0.
template <typename Scalar>
BoundReport<Scalar> cartwright_field(const Vector<Scalar>& xs, const ProbDist<Scalar>& p) {
  using std::exp;
  using std::log;
  if (xs.size() != p.size()) throw LengthMismatchError("points and weights differ in length");
  if (!(xs.minCoeff() > Scalar(0))) throw DomainError("Cartwright-Field needs positive points");
  const Scalar am = p.weights().dot(xs);
  const Scalar gm = exp(p.weights().dot(xs.array().log().matrix()));
  const Scalar var = pairwise_spread(xs, p);
  return BoundReport<Scalar>::make(var / (Scalar(2) * xs.maxCoeff()), am - gm,
                                   var / (Scalar(2) * xs.minCoeff()));
}

/// Exact range of (-ln_q)''(x) = q x^{-q-1} over the hull of {1/p_j, 1/r_j}:
/// m = q (min prob)^{q+1}, M = q (max prob)^{q+1}.
template <typename Scalar>
SecondDerivativeRange<Scalar> tightest_constants(const ProbDist<Scalar>& p,
                                                 const ProbDist<Scalar>& r, IndexArg<Scalar> q) {
  using std::max;
  using std::min;
  using std::pow;
  detail::require_same_length(p, r);
  if (!(q.value() > Scalar(0))) {
    throw DegenerateRangeError("q = 0: -ln_q is linear, curvature is identically zero");
  }
  const Scalar lo_prob = min(p.weights().minCoeff(), r.weights().minCoeff());
  const Scalar hi_prob = max(p.weights().maxCoeff(), r.weights().maxCoeff());
  const Scalar e = q.value() + Scalar(1);
  return {q.value() * pow(lo_prob, e), q.value() * pow(hi_prob, e), Scalar(1) / hi_prob,
          Scalar(1) / lo_prob};
}

/// The Tsallis cross-entropy chain together with the two Jensen sandwiches it
/// is assembled from:
///   cross:  (m/2) S_r <= ln_q(sum p/r) - sum p ln_q(1/r) <= (M/2) S_r
///   maxent: (m/2) S_p <= ln_q n - H_q(p)                 <= (M/2) S_p
///   combined: value = sum p ln_q(1/r) - H_q(p)
template <typename Scalar = double>
struct CrossEntropySandwich {
  BoundReport<Scalar> combined;
  BoundReport<Scalar> cross;
  BoundReport<Scalar> maxent;
};

template <typename Scalar>
CrossEntropySandwich<Scalar> tsallis_cross_entropy_sandwich(const ProbDist<Scalar>& p,
                                                            const ProbDist<Scalar>& r,
                                                            IndexArg<Scalar> q, Scalar mq,
                                                            Scalar Mq) {
  detail::require_same_length(p, r);
  if (!(mq >= Scalar(0)) || !(Mq >= mq)) throw DomainError("constants need 0 <= m_q <= M_q");
  const Eigen::Index n = p.size();
  const Vector<Scalar> inv_p = p.weights().cwiseInverse();
  const Vector<Scalar> inv_r = r.weights().cwiseInverse();

  Scalar cross_entropy(0);
  for (Eigen::Index j = 0; j < n; ++j) cross_entropy += p[j] * q_log(inv_r[j], q);
  const Scalar hq = tsallis_entropy(p, q);
  const Scalar lnq_ratio_sum = q_log(p.weights().dot(inv_r), q);
  const Scalar lnq_n = q_log(Scalar(n), q);

  const Scalar s_p = pairwise_spread_forms(inv_p, p).lhs;
  const Scalar s_r = pairwise_spread_forms(inv_r, p).lhs;
  const Scalar half(0.5);

  CrossEntropySandwich<Scalar> out;
  out.cross = BoundReport<Scalar>::make(half * mq * s_r, lnq_ratio_sum - cross_entropy,
                                        half * Mq * s_r);
  out.maxent = BoundReport<Scalar>::make(half * mq * s_p, lnq_n - hq, half * Mq * s_p);
  const Scalar base = lnq_ratio_sum - lnq_n;
  out.combined = BoundReport<Scalar>::make(base + half * mq * s_p - half * Mq * s_r,
                                           cross_entropy - hq,
                                           base + half * Mq * s_p - half * mq * s_r);
  return out;
}

/// Same chain with the constants from tightest_constants.
template <typename Scalar>
CrossEntropySandwich<Scalar> tsallis_cross_entropy_sandwich(const ProbDist<Scalar>& p,
                                                            const ProbDist<Scalar>& r,
                                                            IndexArg<Scalar> q) {
  const auto c = tightest_constants(p, r, q);
  return tsallis_cross_entropy_sandwich(p, r, q, c.m, c.M);
}

}  // namespace qentropy

#pragma once

// Relative entropies and Csiszar f-divergences.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "qentropy/dist.hpp"
#include "qentropy/errors.hpp"
#include "qentropy/qmath.hpp"
#include "qentropy/report.hpp"

namespace qentropy {

/// Convex f on (0, inf) with f(1) = 0. When `second_derivative` is set and
/// `monotone_curvature` is true, f'' is monotone so its range over an
/// interval is attained at the endpoints.
template <typename Scalar = double>
struct ConvexGenerator {
  std::function<Scalar(Scalar)> eval;
  std::string label;
  std::function<Scalar(Scalar)> second_derivative;
  bool monotone_curvature = false;

  Scalar operator()(Scalar x) const { return eval(x); }
};

/// f(x) = -x ln_q(1/x); D_f is the Tsallis relative entropy. f''(x) = q x^{q-2}.
template <typename Scalar = double>
ConvexGenerator<Scalar> tsallis_f(IndexArg<Scalar> q) {
  const Scalar qv = q.value();
  return {[q](Scalar x) { return -x * q_log(Scalar(1) / x, q); }, "tsallis",
          [qv](Scalar x) { using std::pow; return qv * pow(x, qv - Scalar(2)); }, true};
}

/// f(x) = x log x; D_f is KL(p || r).
template <typename Scalar = double>
ConvexGenerator<Scalar> kl_f() {
  return {[](Scalar x) { using std::log; return x * log(x); }, "kl",
          [](Scalar x) { return Scalar(1) / x; }, true};
}

/// f(x) = -log x; D_f(p || r) is KL(r || p).
template <typename Scalar = double>
ConvexGenerator<Scalar> neglog_f() {
  return {[](Scalar x) { using std::log; return -log(x); }, "neglog",
          [](Scalar x) { return Scalar(1) / (x * x); }, true};
}

/// Built-in generator by CLI label: tsallis, kl, neglog.
template <typename Scalar = double>
ConvexGenerator<Scalar> f_from_label(const std::string& label, IndexArg<Scalar> q) {
  if (label == "tsallis") return tsallis_f<Scalar>(q);
  if (label == "kl") return kl_f<Scalar>();
  if (label == "neglog") return neglog_f<Scalar>();
  throw DomainError("unknown convex generator label '" + label + "'");
}

/// Empty string if f(1) = 0 (to 1e-12) and f passes sampled midpoint
/// convexity on {2^k : k = -20..20}; otherwise the reason.
template <typename Scalar>
std::string validate_convex_generator(const ConvexGenerator<Scalar>& f) {
  using std::abs;
  using std::ldexp;
  if (!(abs(f(Scalar(1))) <= Scalar(1e-12))) return "f(1) != 0";
  for (int i = -20; i <= 20; ++i) {
    for (int j = i + 1; j <= 20; ++j) {
      const Scalar a = ldexp(Scalar(1), i);
      const Scalar b = ldexp(Scalar(1), j);
      const Scalar fa = f(a);
      const Scalar fb = f(b);
      const Scalar mid = f((a + b) / Scalar(2));
      const Scalar chord = (fa + fb) / Scalar(2);
      if (mid - chord > Scalar(1e-12) * (Scalar(1) + abs(mid) + abs(chord))) {
        return "midpoint convexity fails between 2^" + std::to_string(i) + " and 2^" +
               std::to_string(j);
      }
    }
  }
  return {};
}

template <typename Scalar = double>
ConvexGenerator<Scalar> make_convex_generator(std::string label,
                                              std::function<Scalar(Scalar)> eval) {
  ConvexGenerator<Scalar> f{std::move(eval), std::move(label), {}, false};
  if (auto why = validate_convex_generator(f); !why.empty()) {
    throw DomainError("convex generator '" + f.label + "' rejected: " + why);
  }
  return f;
}

/// f*(t) = t f(1/t). Convex whenever f is, and (f*)* = f.
template <typename Scalar>
ConvexGenerator<Scalar> dual_generator(const ConvexGenerator<Scalar>& f) {
  ConvexGenerator<Scalar> out;
  out.eval = [g = f.eval](Scalar t) { return t * g(Scalar(1) / t); };
  out.label = "dual(" + f.label + ")";
  if (f.second_derivative) {
    // (f*)''(t) = f''(1/t) / t^3
    out.second_derivative = [d = f.second_derivative](Scalar t) {
      return d(Scalar(1) / t) / (t * t * t);
    };
    // Holds for the power-law curvatures of the built-ins.
    out.monotone_curvature = f.monotone_curvature;
  }
  return out;
}

/// Range of f'' over [lo, hi]; requires a monotone known second derivative.
template <typename Scalar>
SecondDerivativeRange<Scalar> curvature_range(const ConvexGenerator<Scalar>& f, Scalar lo,
                                              Scalar hi) {
  if (!f.second_derivative || !f.monotone_curvature) {
    throw DomainError("generator '" + f.label + "' has no known monotone second derivative");
  }
  if (!(lo <= hi)) throw DomainError("curvature interval is empty");
  const Scalar a = f.second_derivative(lo);
  const Scalar b = f.second_derivative(hi);
  using std::max;
  using std::min;
  return {min(a, b), max(a, b), lo, hi};
}

namespace detail {

template <typename A, typename B>
void require_same_length(const A& a, const B& b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("lengths differ: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
  }
}

}  // namespace detail

/// D_q(p || r) = -sum_j p_j ln_q(r_j / p_j). KL divergence at q = 1.
template <typename Scalar>
Scalar tsallis_relative(const ProbDist<Scalar>& p, const ProbDist<Scalar>& r,
                        IndexArg<Scalar> q) {
  detail::require_same_length(p, r);
  Scalar d(0);
  for (Eigen::Index j = 0; j < p.size(); ++j) d -= p[j] * q_log(r[j] / p[j], q);
  return d;
}

template <typename Scalar>
Scalar kl_divergence(const ProbDist<Scalar>& p, const ProbDist<Scalar>& r) {
  detail::require_same_length(p, r);
  const auto& pw = p.weights().array();
  return (pw * (pw.log() - r.weights().array().log())).sum();
}

/// R_q(p || r) = log(sum_j p_j^q r_j^{1-q}) / (q - 1). Not clamped: may be
/// negative for q < 1. KL divergence at q = 1.
template <typename Scalar>
Scalar renyi_relative(const ProbDist<Scalar>& p, const ProbDist<Scalar>& r, IndexArg<Scalar> q) {
  using std::expm1;
  using std::log;
  using std::log1p;
  detail::require_same_length(p, r);
  if (!q.deformed()) return kl_divergence(p, r);
  const Scalar a = q.one_minus();
  // sum_j p_j (r_j/p_j)^{1-q} - 1, kept away from the cancellation at q -> 1
  Scalar s = p.weights().sum() - Scalar(1);
  for (Eigen::Index j = 0; j < p.size(); ++j) s += p[j] * expm1(a * log(r[j] / p[j]));
  return log1p(s) / -a;
}

/// D_f(p || r) = sum_j r_j f(p_j / r_j).
template <typename Scalar>
Scalar f_divergence(const ConvexGenerator<Scalar>& f, const ProbDist<Scalar>& p,
                    const ProbDist<Scalar>& r) {
  detail::require_same_length(p, r);
  Scalar d(0);
  for (Eigen::Index j = 0; j < p.size(); ++j) d += r[j] * f(p[j] / r[j]);
  return d;
}

/// sum_j a_j f*(b_j / a_j) over unnormalized positive weights.
template <typename Scalar>
Scalar incomplete_f_divergence(const ConvexGenerator<Scalar>& f_star,
                               const IncompleteDist<Scalar>& a, const IncompleteDist<Scalar>& b) {
  detail::require_same_length(a, b);
  Scalar d(0);
  for (Eigen::Index j = 0; j < a.size(); ++j) d += a[j] * f_star(b[j] / a[j]);
  return d;
}

/// (exp R_q(p||r), exp_{2-q} D_q(p||r)); needs q <= 2 so that 2 - q is a
/// valid index.
template <typename Scalar>
IdentityPair<Scalar> renyi_tsallis_relative_bridge(const ProbDist<Scalar>& p,
                                                   const ProbDist<Scalar>& r,
                                                   IndexArg<Scalar> q) {
  using std::exp;
  if (q.value() > Scalar(2)) {
    throw HypothesisError("relative bridge uses exp_{2-q}; requires q <= 2");
  }
  const EntropicIndex<Scalar> dual_q(Scalar(2) - q.value());
  return {exp(renyi_relative(p, r, q)), q_exp(tsallis_relative(p, r, q), dual_q)};
}

/// sum_j (1-p_j) log(1/(1-p_j)) <= sum_j (1-p_j) log(1/(1-r_j)), the
/// information inequality applied to the complemented distributions
/// (1-p_j)/(n-1). Needs every component < 1, i.e. n >= 2.
template <typename Scalar>
OrderedPair<Scalar> complement_cross_entropy(const ProbDist<Scalar>& p,
                                             const ProbDist<Scalar>& r) {
  using std::log1p;
  detail::require_same_length(p, r);
  if (p.size() < 2) throw DimensionError("complement inequality needs n >= 2");
  Scalar lhs(0);
  Scalar rhs(0);
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const Scalar cp = Scalar(1) - p[j];
    lhs -= cp * log1p(-p[j]);
    rhs -= cp * log1p(-r[j]);
  }
  return {lhs, rhs};
}

}  // namespace qentropy

#pragma once

// Tsallis, Shannon and Renyi entropies of a strictly positive distribution.

#include <cmath>

#include "qentropy/dist.hpp"
#include "qentropy/qmath.hpp"
#include "qentropy/report.hpp"

namespace qentropy {

template <typename Scalar>
Scalar shannon_entropy(const ProbDist<Scalar>& p) {
  const auto& w = p.weights().array();
  return -(w * w.log()).sum();
}

/// H_q(p) = sum_j p_j ln_q(1/p_j). Equals Shannon entropy inside the q = 1
/// limit window.
template <typename Scalar>
Scalar tsallis_entropy(const ProbDist<Scalar>& p, IndexArg<Scalar> q) {
  Scalar h(0);
  for (Eigen::Index j = 0; j < p.size(); ++j) h += p[j] * q_log(Scalar(1) / p[j], q);
  return h;
}

namespace detail {

// sum_j p_j^q - 1, evaluated without forming p_j^q so that the q -> 1
// cancellation is confined to the (tiny) normalization residual.
template <typename Scalar>
Scalar power_sum_minus_one(const ProbDist<Scalar>& p, Scalar q) {
  using std::expm1;
  using std::log;
  Scalar s = p.weights().sum() - Scalar(1);
  for (Eigen::Index j = 0; j < p.size(); ++j) s += p[j] * expm1((q - Scalar(1)) * log(p[j]));
  return s;
}

}  // namespace detail

/// R_q(p) = log(sum_j p_j^q) / (1 - q). R_0 = log n; Shannon at q = 1.
template <typename Scalar>
Scalar renyi_entropy(const ProbDist<Scalar>& p, IndexArg<Scalar> q) {
  using std::log1p;
  if (!q.deformed()) return shannon_entropy(p);
  return log1p(detail::power_sum_minus_one(p, q.value())) / q.one_minus();
}

/// (exp R_q(p), exp_q H_q(p)). The right side always exists because
/// 1 + (1-q) H_q(p) = sum_j p_j^q > 0.
template <typename Scalar>
IdentityPair<Scalar> renyi_tsallis_bridge(const ProbDist<Scalar>& p, IndexArg<Scalar> q) {
  using std::exp;
  return {exp(renyi_entropy(p, q)), q_exp(tsallis_entropy(p, q), q)};
}

}  // namespace qentropy

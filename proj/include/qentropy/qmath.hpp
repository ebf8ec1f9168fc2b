#pragma once

// q-deformed logarithm and exponential.
//
//   ln_q(x)  = (x^{1-q} - 1) / (1 - q),             x > 0
//   exp_q(x) = (1 + (1-q) x)^{1/(1-q)},              1 + (1-q) x > 0
//
// Both reduce to the natural log / exp at q = 1. Near q = 1 the closed forms
// cancel catastrophically, so the deformed branch is evaluated through
// expm1/log1p and the limit branch takes over inside kQ1Eps of q = 1.

#include <cmath>
#include <string>
#include <type_traits>

#include "qentropy/errors.hpp"

namespace qentropy {

inline constexpr double kQ1Eps = 1e-8;

/// Non-negative entropic index q. Implicitly constructible from a scalar so
/// call sites can pass plain numbers; validation happens on conversion.
template <typename Scalar = double>
class EntropicIndex {
 public:
  EntropicIndex(Scalar q) : q_(q) {  // NOLINT(google-explicit-constructor)
    using std::isfinite;
    if (!(q >= Scalar(0)) || !isfinite(q)) {
      throw DomainError("entropic index must be finite and >= 0, got " +
                        std::to_string(static_cast<double>(q)));
    }
  }

  Scalar value() const { return q_; }
  Scalar one_minus() const { return Scalar(1) - q_; }

  /// False inside the limit window around q = 1.
  bool deformed() const {
    using std::abs;
    return abs(q_ - Scalar(1)) > Scalar(kQ1Eps);
  }

 private:
  Scalar q_;
};

/// Index parameter that does not participate in template argument deduction.
template <typename Scalar>
using IndexArg = std::type_identity_t<EntropicIndex<Scalar>>;

template <typename Scalar>
Scalar q_log(Scalar x, IndexArg<Scalar> q) {
  using std::expm1;
  using std::log;
  if (!(x > Scalar(0))) {
    throw DomainError("ln_q requires x > 0, got " + std::to_string(static_cast<double>(x)));
  }
  if (!q.deformed()) return log(x);
  const Scalar a = q.one_minus();
  return expm1(a * log(x)) / a;
}

template <typename Scalar>
Scalar q_exp(Scalar x, IndexArg<Scalar> q) {
  using std::exp;
  using std::log1p;
  if (!q.deformed()) return exp(x);
  const Scalar a = q.one_minus();
  const Scalar ax = a * x;
  if (!(Scalar(1) + ax > Scalar(0))) {
    throw UndefinedValueError("exp_q undefined: 1 + (1-q)x = " +
                              std::to_string(static_cast<double>(Scalar(1) + ax)) + " <= 0");
  }
  return exp(log1p(ax) / a);
}

}  // namespace qentropy

#pragma once

#include <algorithm>
#include <cmath>

namespace qentropy {

/// Default tolerance for checking an inequality chain: absolute plus
/// relative to the largest magnitude in the chain.
struct CheckTolerance {
  double abs = 1e-9;
  double rel = 1e-9;
};

/// Two sides of an identity; callers decide how to compare them.
template <typename Scalar = double>
struct IdentityPair {
  Scalar lhs;
  Scalar rhs;

  Scalar residual() const {
    using std::abs;
    return abs(lhs - rhs);
  }
  Scalar relative_residual() const {
    using std::abs;
    using std::max;
    return residual() / max({Scalar(1), abs(lhs), abs(rhs)});
  }
};

/// Claimed ordering lesser <= greater.
template <typename Scalar = double>
struct OrderedPair {
  Scalar lesser;
  Scalar greater;

  Scalar gap() const { return greater - lesser; }
  bool holds(CheckTolerance tol = {}) const {
    using std::abs;
    using std::max;
    return lesser - greater <= Scalar(tol.abs) + Scalar(tol.rel) * max(abs(lesser), abs(greater));
  }
};

/// Range [m, M] of f'' over [lo, hi].
template <typename Scalar = double>
struct SecondDerivativeRange {
  Scalar m;
  Scalar M;
  Scalar lo;
  Scalar hi;
};

/// lower <= value <= upper, with the slacks precomputed.
template <typename Scalar = double>
struct BoundReport {
  Scalar lower;
  Scalar value;
  Scalar upper;
  Scalar lower_slack;  // value - lower
  Scalar upper_slack;  // upper - value

  static BoundReport make(Scalar lower, Scalar value, Scalar upper) {
    return {lower, value, upper, value - lower, upper - value};
  }

  Scalar scale() const {
    using std::abs;
    using std::max;
    return max({abs(lower), abs(value), abs(upper)});
  }

  /// Amount by which the chain is broken (<= 0 when it holds exactly).
  Scalar excess() const {
    using std::max;
    return max(-lower_slack, -upper_slack);
  }

  bool holds(CheckTolerance tol = {}) const {
    return excess() <= Scalar(tol.abs) + Scalar(tol.rel) * scale();
  }
};

}  // namespace qentropy

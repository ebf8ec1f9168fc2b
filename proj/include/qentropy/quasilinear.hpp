#pragma once

// Quasi-arithmetic means M_psi(x; p) = psi^{-1}(sum_j p_j psi(x_j)) and the
// entropies / relative entropies generated by them.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qentropy/dist.hpp"
#include "qentropy/errors.hpp"
#include "qentropy/qmath.hpp"

namespace qentropy {

enum class Monotonicity { increasing, decreasing };
enum class Curvature { concave, convex, unknown };
enum class PsiDomain { positive, real };

/// Strictly monotonic generator packaged with its closed-form inverse.
template <typename Scalar = double>
struct GeneratorPsi {
  std::function<Scalar(Scalar)> forward;
  std::function<Scalar(Scalar)> inverse;
  Monotonicity direction = Monotonicity::increasing;
  Curvature shape = Curvature::unknown;
  PsiDomain domain = PsiDomain::positive;
  std::string label;

  Scalar operator()(Scalar x) const { return forward(x); }

  bool in_domain(Scalar x) const {
    using std::isfinite;
    if (!isfinite(x)) return false;
    return domain == PsiDomain::real || x > Scalar(0);
  }
};

template <typename Scalar = double>
GeneratorPsi<Scalar> identity_psi() {
  return {[](Scalar x) { return x; }, [](Scalar y) { return y; }, Monotonicity::increasing,
          Curvature::concave,  // linear: both concave and convex
          PsiDomain::real, "identity"};
}

template <typename Scalar = double>
GeneratorPsi<Scalar> log_psi() {
  return {[](Scalar x) { using std::log; return log(x); },
          [](Scalar y) { using std::exp; return exp(y); },
          Monotonicity::increasing, Curvature::concave, PsiDomain::positive, "log"};
}

/// psi = ln_q; concave increasing for every q >= 0.
template <typename Scalar = double>
GeneratorPsi<Scalar> lnq_psi(IndexArg<Scalar> q) {
  return {[q](Scalar x) { return q_log(x, q); }, [q](Scalar y) { return q_exp(y, q); },
          Monotonicity::increasing, Curvature::concave, PsiDomain::positive, "lnq"};
}

/// psi(x) = x^{1-q}: concave increasing for q < 1, convex decreasing for q > 1.
/// Constant (not a generator) inside the q = 1 window.
template <typename Scalar = double>
GeneratorPsi<Scalar> power_psi(IndexArg<Scalar> q) {
  if (!q.deformed()) throw DomainError("power generator x^{1-q} is constant at q = 1");
  const Scalar a = q.one_minus();
  const bool increasing = a > Scalar(0);
  return {[a](Scalar x) { using std::pow; return pow(x, a); },
          [a](Scalar y) { using std::pow; return pow(y, Scalar(1) / a); },
          increasing ? Monotonicity::increasing : Monotonicity::decreasing,
          increasing ? Curvature::concave : Curvature::convex, PsiDomain::positive, "power"};
}

/// Built-in generator by CLI label: identity, log, lnq, power.
template <typename Scalar = double>
GeneratorPsi<Scalar> psi_from_label(const std::string& label, IndexArg<Scalar> q) {
  if (label == "identity") return identity_psi<Scalar>();
  if (label == "log") return log_psi<Scalar>();
  if (label == "lnq") return lnq_psi<Scalar>(q);
  if (label == "power") return power_psi<Scalar>(q);
  throw DomainError("unknown generator label '" + label + "'");
}

/// Checks a generator on {2^k : k = -20..20}: strict monotonicity in the
/// declared direction and inverse(forward(x)) == x to 1e-10 relative.
/// Returns an empty string when the generator passes, otherwise the reason.
template <typename Scalar>
std::string validate_psi(const GeneratorPsi<Scalar>& psi) {
  using std::abs;
  using std::ldexp;
  Scalar prev = std::numeric_limits<Scalar>::quiet_NaN();
  for (int k = -20; k <= 20; ++k) {
    const Scalar x = ldexp(Scalar(1), k);
    const Scalar y = psi.forward(x);
    const Scalar back = psi.inverse(y);
    if (!(abs(back - x) <= Scalar(1e-10) * x)) {
      return "round trip fails at x = 2^" + std::to_string(k);
    }
    if (k > -20) {
      const bool ok = psi.direction == Monotonicity::increasing ? y > prev : y < prev;
      if (!ok) return "not strictly monotonic at x = 2^" + std::to_string(k);
    }
    prev = y;
  }
  return {};
}

/// User-supplied generator; throws DomainError if validate_psi rejects it.
template <typename Scalar = double>
GeneratorPsi<Scalar> make_psi(std::string label, std::function<Scalar(Scalar)> forward,
                              std::function<Scalar(Scalar)> inverse, Monotonicity direction,
                              Curvature shape = Curvature::unknown,
                              PsiDomain domain = PsiDomain::positive) {
  GeneratorPsi<Scalar> psi{std::move(forward), std::move(inverse), direction, shape, domain,
                           std::move(label)};
  if (auto why = validate_psi(psi); !why.empty()) {
    throw DomainError("generator '" + psi.label + "' rejected: " + why);
  }
  return psi;
}

/// Sufficient condition for D_q^psi >= 0.
template <typename Scalar>
bool relative_nonnegativity_guaranteed(const GeneratorPsi<Scalar>& psi) {
  return (psi.shape == Curvature::concave && psi.direction == Monotonicity::increasing) ||
         (psi.shape == Curvature::convex && psi.direction == Monotonicity::decreasing);
}

template <typename Scalar>
Scalar quasilinear_mean(const GeneratorPsi<Scalar>& psi, const Vector<Scalar>& xs,
                        const ProbDist<Scalar>& p) {
  if (xs.size() != p.size()) {
    throw LengthMismatchError("quasilinear mean: " + std::to_string(xs.size()) +
                              " points but " + std::to_string(p.size()) + " weights");
  }
  Scalar acc(0);
  for (Eigen::Index j = 0; j < xs.size(); ++j) {
    if (!psi.in_domain(xs[j])) {
      throw DomainError("point " + std::to_string(static_cast<double>(xs[j])) +
                        " outside the domain of generator '" + psi.label + "'");
    }
    acc += p[j] * psi.forward(xs[j]);
  }
  return psi.inverse(acc);
}

/// I_q^psi(p) = ln_q M_psi(1/p; p).
template <typename Scalar>
Scalar tsallis_quasilinear_entropy(const GeneratorPsi<Scalar>& psi, const ProbDist<Scalar>& p,
                                   IndexArg<Scalar> q) {
  const Vector<Scalar> inv = p.weights().cwiseInverse();
  return q_log(quasilinear_mean(psi, inv, p), q);
}

/// I_1^psi(p) = log M_psi(1/p; p).
template <typename Scalar>
Scalar quasilinear_entropy(const GeneratorPsi<Scalar>& psi, const ProbDist<Scalar>& p) {
  using std::log;
  const Vector<Scalar> inv = p.weights().cwiseInverse();
  return log(quasilinear_mean(psi, inv, p));
}

namespace detail {

template <typename Scalar>
Vector<Scalar> likelihood_ratio(const ProbDist<Scalar>& p, const ProbDist<Scalar>& r) {
  if (p.size() != r.size()) {
    throw LengthMismatchError("distributions have lengths " + std::to_string(p.size()) +
                              " and " + std::to_string(r.size()));
  }
  return r.weights().cwiseQuotient(p.weights());
}

}  // namespace detail

/// D_q^psi(p || r) = -ln_q M_psi(r/p; p).
template <typename Scalar>
Scalar tsallis_quasilinear_relative(const GeneratorPsi<Scalar>& psi, const ProbDist<Scalar>& p,
                                    const ProbDist<Scalar>& r, IndexArg<Scalar> q) {
  return -q_log(quasilinear_mean(psi, detail::likelihood_ratio(p, r), p), q);
}

/// D_1^psi(p || r) = -log M_psi(r/p; p).
template <typename Scalar>
Scalar quasilinear_relative(const GeneratorPsi<Scalar>& psi, const ProbDist<Scalar>& p,
                            const ProbDist<Scalar>& r) {
  using std::log;
  return -log(quasilinear_mean(psi, detail::likelihood_ratio(p, r), p));
}

// ---------------------------------------------------------------------------
// Compatibility of f with psi
// ---------------------------------------------------------------------------

template <typename Scalar = double>
struct CompatibleConvexity {
  struct Witness {
    Scalar a;
    Scalar b;
    Scalar lambda;
  };

  bool holds = true;
  // Largest value of lhs - rhs beyond the rounding allowance; <= 0 iff holds.
  Scalar worst_violation = -std::numeric_limits<Scalar>::infinity();
  Witness witness{};
};

/// Exhaustive sampled check of
///   f(psi^{-1}((1-l) psi(a) + l psi(b))) <= (1-l) f(a) + l f(b)
/// over grid x grid x lambdas. Each comparison is allowed `rel_tol` of
/// rounding relative to 1 + |lhs| + |rhs|. A sampled check, not a proof.
template <typename Scalar, typename F>
CompatibleConvexity<Scalar> check_psi_convexity(const F& f, const GeneratorPsi<Scalar>& psi,
                                                const std::vector<Scalar>& grid,
                                                const std::vector<Scalar>& lambdas,
                                                Scalar rel_tol = Scalar(1e-12)) {
  using std::abs;
  if (grid.empty()) throw DomainError("convexity check needs a non-empty grid");
  CompatibleConvexity<Scalar> out;
  for (Scalar a : grid) {
    for (Scalar b : grid) {
      if (!psi.in_domain(a) || !psi.in_domain(b)) {
        throw DomainError("grid point outside the domain of generator '" + psi.label + "'");
      }
      for (Scalar l : lambdas) {
        const Scalar mixed = psi.inverse((Scalar(1) - l) * psi.forward(a) + l * psi.forward(b));
        const Scalar lhs = f(mixed);
        const Scalar rhs = (Scalar(1) - l) * f(a) + l * f(b);
        const Scalar v = (lhs - rhs) - rel_tol * (Scalar(1) + abs(lhs) + abs(rhs));
        if (v > out.worst_violation) {
          out.worst_violation = v;
          out.witness = {a, b, l};
        }
      }
    }
  }
  out.holds = out.worst_violation <= Scalar(0);
  return out;
}

}  // namespace qentropy

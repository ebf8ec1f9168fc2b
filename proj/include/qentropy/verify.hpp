#pragma once

// Seeded randomized checking of every inequality chain and identity.
//
// Each trial draws its inputs from its own generator, seeded from
// (master seed, case id, trial index), so a report depends only on the
// configuration and never on thread count or scheduling.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qentropy/dist.hpp"
#include "qentropy/json_io.hpp"

namespace qentropy::verify {

/// Floor on sampled probabilities in the standard profile.
inline constexpr double kMinMass = 1e-6;
inline constexpr double kStressMinMass = 1e-9;
inline constexpr double kCheckTol = 1e-9;
inline constexpr double kStressCheckTol = 1e-6;

using Rng = std::mt19937_64;

/// Default q grid; each case keeps the values inside its hypothesis.
std::vector<double> default_q_grid();

/// Generator for one trial, derived from the master seed by hashing in the
/// case id and the trial counter.
Rng trial_rng(std::uint64_t seed, const std::string& case_id, std::uint64_t trial);

/// Flat-Dirichlet sample (normalized exponential variates), floored at
/// min_mass and renormalized. n = 1 gives (1.0).
ProbDist<double> sample_simplex(std::size_t n, Rng& rng, double min_mass = kMinMass);

enum class Profile { standard, stress };

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 10000;
  std::size_t n_min = 2;
  std::size_t n_max = 16;
  std::vector<double> q_grid = default_q_grid();
  bool override_hypothesis = false;
  Profile profile = Profile::standard;
  // < 0 selects the profile default. Applied as both the absolute and the
  // relative part of the tolerance.
  double check_tol = -1.0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Per-trial inputs handed to a case.
struct Trial {
  Rng& rng;
  double q;
  std::size_t n;
  double min_mass;
  Json* witness;  // null unless the trial is being replayed for its witness

  ProbDist<double> simplex(std::size_t size) const { return sample_simplex(size, rng, min_mass); }
  ProbDist<double> simplex() const { return simplex(n); }
  void record(const char* key, Json value) const {
    if (witness) (*witness)[key] = std::move(value);
  }
};

/// Scaled violation of a trial: > check_tol means the claim failed.
using TrialFn = std::function<double(const Trial&)>;

struct TheoremCase {
  std::string id;
  std::string summary;
  double q_min = 0.0;
  double q_max = 1e300;
  bool q_min_exclusive = false;
  bool q_dependent = true;
  TrialFn run;

  bool admits(double q) const {
    return (q_min_exclusive ? q > q_min : q >= q_min) && q <= q_max;
  }
};

struct VerifyReport {
  std::string case_id;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_violation = 0.0;
  Json worst_witness;
  std::uint64_t seed = 0;
  double check_tol = kCheckTol;
  bool in_hypothesis = true;
  std::vector<double> q_grid;

  bool clean() const { return violations == 0; }
};

const std::vector<TheoremCase>& registry();

/// Throws UnknownCaseError.
const TheoremCase& find_case(const std::string& id);

/// Runs `config.trials` trials. q values outside the case hypothesis are
/// dropped; if none remain the run needs `override_hypothesis`, else a
/// HypothesisError is thrown. Overridden runs are flagged in_hypothesis =
/// false and their violations are informational.
VerifyReport run_case(const TheoremCase& tc, const RunConfig& config);

/// One JSON object, no trailing newline.
std::string to_json_line(const VerifyReport& report);

// Scaled measures shared by the cases: each is <= check_tol iff the claim
// holds at tolerance abs = rel = check_tol.
double chain_measure(double lower, double value, double upper);
double order_measure(double lesser, double greater);
double identity_measure(double lhs, double rhs);

}  // namespace qentropy::verify

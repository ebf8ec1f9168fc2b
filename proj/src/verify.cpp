#include "qentropy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "qentropy/errors.hpp"

namespace qentropy::verify {

std::vector<double> default_q_grid() {
  return {0.0, 0.25, 0.5, 0.9, 0.999, 1.0, 1.001, 1.5, 2.0, 3.0, 4.0};
}

namespace {

// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

}  // namespace

Rng trial_rng(std::uint64_t seed, const std::string& case_id, std::uint64_t trial) {
  const std::uint64_t salt = stable_hash(case_id);
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(salt), hi32(salt), lo32(trial), hi32(trial)};
  return Rng(seq);
}

ProbDist<double> sample_simplex(std::size_t n, Rng& rng, double min_mass) {
  if (n == 0) throw DimensionError("cannot sample an empty simplex");
  std::exponential_distribution<double> expo(1.0);
  Vector<double> w(static_cast<Eigen::Index>(n));
  for (auto& x : w) x = expo(rng);
  w /= w.sum();
  w = w.cwiseMax(min_mass);
  w /= w.sum();
  return ProbDist<double>::from_weights(std::move(w));
}

double chain_measure(double lower, double value, double upper) {
  const double excess = std::max(lower - value, value - upper);
  const double scale = std::max({std::abs(lower), std::abs(value), std::abs(upper)});
  return excess / (1.0 + scale);
}

double order_measure(double lesser, double greater) {
  return (lesser - greater) / (1.0 + std::max(std::abs(lesser), std::abs(greater)));
}

double identity_measure(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

const TheoremCase& find_case(const std::string& id) {
  for (const auto& tc : registry()) {
    if (tc.id == id) return tc;
  }
  throw UnknownCaseError("unknown case id '" + id + "'");
}

namespace {

struct Plan {
  std::vector<double> grid;
  bool in_hypothesis = true;
};

Plan plan_grid(const TheoremCase& tc, const RunConfig& config) {
  Plan plan;
  if (!tc.q_dependent) return plan;
  for (double q : config.q_grid) {
    if (tc.admits(q)) plan.grid.push_back(q);
  }
  const bool all_inside = plan.grid.size() == config.q_grid.size();
  if (config.override_hypothesis && !all_inside) {
    plan.grid = config.q_grid;
    plan.in_hypothesis = false;
  }
  if (plan.grid.empty()) {
    throw HypothesisError("case " + tc.id + ": no requested q lies inside its hypothesis" +
                          " (use the override flag to run anyway)");
  }
  return plan;
}

struct TrialSetup {
  double q;
  std::size_t n;
};

TrialSetup draw_setup(Rng& rng, const Plan& plan, const RunConfig& config) {
  TrialSetup s{1.0, config.n_min};
  if (!plan.grid.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, plan.grid.size() - 1);
    s.q = plan.grid[pick(rng)];
  }
  std::uniform_int_distribution<std::size_t> size(config.n_min, std::max(config.n_min, config.n_max));
  s.n = size(rng);
  return s;
}

double evaluate(const TheoremCase& tc, const RunConfig& config, const Plan& plan, double min_mass,
                std::uint64_t trial, Json* witness) {
  Rng rng = trial_rng(config.seed, tc.id, trial);
  const TrialSetup s = draw_setup(rng, plan, config);
  if (witness) {
    (*witness)["trial"] = trial;
    (*witness)["q"] = s.q;
    (*witness)["n"] = s.n;
  }
  double m = std::numeric_limits<double>::infinity();
  try {
    m = tc.run(Trial{rng, s.q, s.n, min_mass, witness});
  } catch (const Error& e) {
    if (witness) (*witness)["error"] = e.what();
  }
  if (std::isnan(m)) m = std::numeric_limits<double>::infinity();
  if (witness) (*witness)["measure"] = m;
  return m;
}

}  // namespace

VerifyReport run_case(const TheoremCase& tc, const RunConfig& config) {
  if (config.trials == 0) throw DomainError("trials must be >= 1");
  if (config.n_min == 0) throw DomainError("n_min must be >= 1");
  const Plan plan = plan_grid(tc, config);
  const bool stress = config.profile == Profile::stress;
  const double min_mass = stress ? kStressMinMass : kMinMass;
  const double tol =
      config.check_tol >= 0.0 ? config.check_tol : (stress ? kStressCheckTol : kCheckTol);

  std::vector<double> measures(config.trials);
  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(config.trials, 64)));

  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      measures[t] = evaluate(tc, config, plan, min_mass, t, nullptr);
    }
  };
  if (workers == 1) {
    work(0, config.trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (config.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(config.trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  VerifyReport report;
  report.case_id = tc.id;
  report.trials = config.trials;
  report.seed = config.seed;
  report.check_tol = tol;
  report.in_hypothesis = plan.in_hypothesis;
  report.q_grid = plan.grid;

  std::size_t worst = 0;
  for (std::size_t t = 0; t < measures.size(); ++t) {
    if (measures[t] > tol) ++report.violations;
    if (measures[t] > measures[worst]) worst = t;
  }
  report.worst_violation = measures[worst];
  report.worst_witness = Json::object();
  evaluate(tc, config, plan, min_mass, worst, &report.worst_witness);
  return report;
}

std::string to_json_line(const VerifyReport& r) {
  Json doc;
  doc["schema"] = "qentropy/1";
  doc["case"] = r.case_id;
  doc["seed"] = r.seed;
  doc["trials"] = r.trials;
  doc["violations"] = r.violations;
  doc["worst_violation"] = r.worst_violation;
  doc["check_tol"] = r.check_tol;
  doc["in_hypothesis"] = r.in_hypothesis;
  doc["q_grid"] = r.q_grid;
  doc["worst_witness"] = r.worst_witness;
  return dump_json(doc);
}

}  // namespace qentropy::verify

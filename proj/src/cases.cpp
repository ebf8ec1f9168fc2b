// Registry of verified claims. Each TrialFn draws its own inputs from the
// trial generator and returns a scaled violation measure.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qentropy/qentropy.hpp"
#include "qentropy/verify.hpp"

namespace qentropy::verify {
namespace {

using Vec = Vector<double>;
using Dist = ProbDist<double>;

Json to_json(const Vec& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }
Json to_json(const Dist& p) { return to_json(p.weights()); }
Json to_json(const JointDist<double>& J) {
  return Json{{"dims", J.dims()}, {"cells", to_json(J.cells())}};
}

double max_of(std::initializer_list<double> xs) { return std::max(xs); }

double chain(const BoundReport<double>& b) { return chain_measure(b.lower, b.value, b.upper); }
double order(const OrderedPair<double>& o) { return order_measure(o.lesser, o.greater); }
double identity(const IdentityPair<double>& i) { return identity_measure(i.lhs, i.rhs); }

std::size_t pick(Rng& rng, std::size_t count) {
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

// One trial in sixteen feeds an equality case (r = p, or uniform r).
bool equality_case(Rng& rng) { return pick(rng, 16) == 0; }

Vec log_uniform(std::size_t n, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  Vec v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = std::exp(u(rng));
  return v;
}

Vec normal_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = g(rng);
  return v;
}

Partition random_partition(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t k = 1 + pick(rng, n);
  // k - 1 distinct cut points in 1..n-1
  std::vector<std::size_t> cuts(n - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(k - 1);
  cuts.push_back(0);
  cuts.push_back(n);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Partition::Block> blocks;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    blocks.emplace_back(idx.begin() + static_cast<std::ptrdiff_t>(cuts[b]),
                        idx.begin() + static_cast<std::ptrdiff_t>(cuts[b + 1]));
  }
  return Partition::make(std::move(blocks), n);
}

Json to_json(const Partition& part) { return Json(part.blocks()); }

JointDist<double> random_joint(const Trial& t, std::size_t rank) {
  const std::size_t max_dim = rank == 2 ? 6 : rank == 3 ? 4 : 3;
  std::vector<std::size_t> dims(rank);
  std::size_t cells = 1;
  for (auto& d : dims) {
    d = 2 + pick(t.rng, max_dim - 1);
    cells *= d;
  }
  auto J = JointDist<double>::make(dims, t.simplex(cells).weights());
  t.record("joint", to_json(J));
  return J;
}

std::pair<Dist, Dist> random_pair(const Trial& t, bool allow_equal = true) {
  Dist p = t.simplex();
  Dist r = allow_equal && equality_case(t.rng) ? p : t.simplex();
  t.record("p", to_json(p));
  t.record("r", to_json(r));
  return {p, r};
}

// Generators for which -ln_q o psi^{-1} is convex at this q.
std::vector<GeneratorPsi<double>> admissible_psis(double q) {
  std::vector<GeneratorPsi<double>> out{identity_psi<double>(), lnq_psi<double>(q)};
  if (EntropicIndex<double>(q).deformed()) out.push_back(power_psi<double>(q));
  if (q >= 1.0) out.push_back(log_psi<double>());
  return out;
}

std::vector<GeneratorPsi<double>> all_psis(double q) {
  std::vector<GeneratorPsi<double>> out{identity_psi<double>(), log_psi<double>(),
                                        lnq_psi<double>(q)};
  if (EntropicIndex<double>(q).deformed()) out.push_back(power_psi<double>(q));
  return out;
}

GeneratorPsi<double> choose(const Trial& t, std::vector<GeneratorPsi<double>> options) {
  auto psi = options[pick(t.rng, options.size())];
  t.record("psi", psi.label);
  return psi;
}

// ---------------------------------------------------------------------------

double quasilinear_nonnegative(const Trial& t) {
  const auto psi = choose(t, all_psis(t.q));
  const Dist p = t.simplex();
  t.record("p", to_json(p));
  return order_measure(0.0, tsallis_quasilinear_entropy(psi, p, t.q));
}

double coarsening(const Trial& t) {
  const Dist p = t.simplex();
  const Partition part = random_partition(t.n, t.rng);
  t.record("p", to_json(p));
  t.record("partition", to_json(part));
  const Dist pa = coarsen(p, part);
  const double fine = power_sum(p, t.q);
  const double coarse = power_sum(pa, t.q);
  const double sums = t.q == 1.0   ? identity_measure(fine, coarse)
                      : t.q < 1.0 ? order_measure(coarse, fine)
                                  : order_measure(fine, coarse);
  return max_of({sums, order_measure(tsallis_entropy(pa, t.q), tsallis_entropy(p, t.q)),
                 order_measure(renyi_entropy(pa, t.q), renyi_entropy(p, t.q))});
}

double quasilinear_relative_nonnegative(const Trial& t) {
  const auto psi = choose(t, all_psis(t.q));
  const auto [p, r] = random_pair(t);
  return order_measure(0.0, tsallis_quasilinear_relative(psi, p, r, t.q));
}

double relative_coarsening(const Trial& t) {
  const auto [p, r] = random_pair(t, false);
  const Partition part = random_partition(t.n, t.rng);
  t.record("partition", to_json(part));
  const Dist pa = coarsen(p, part);
  const Dist ra = coarsen(r, part);
  return std::max(order_measure(renyi_relative(pa, ra, t.q), renyi_relative(p, r, t.q)),
                  order_measure(tsallis_relative(pa, ra, t.q), tsallis_relative(p, r, t.q)));
}

double entropy_bridge(const Trial& t) {
  const Dist p = t.simplex();
  t.record("p", to_json(p));
  return identity(renyi_tsallis_bridge(p, t.q));
}

double relative_bridge(const Trial& t) {
  const auto [p, r] = random_pair(t);
  return identity(renyi_tsallis_relative_bridge(p, r, t.q));
}

double q_additivity(const Trial& t) {
  const std::size_t rows = 1 + pick(t.rng, t.n);
  std::vector<std::size_t> lengths(rows);
  std::size_t total = 0;
  for (auto& m : lengths) {
    m = 1 + pick(t.rng, 4);
    total += m;
  }
  const Vec cells = t.simplex(total).weights();
  std::vector<Vec> parts;
  std::size_t at = 0;
  for (std::size_t m : lengths) {
    parts.push_back(cells.segment(static_cast<Eigen::Index>(at), static_cast<Eigen::Index>(m)));
    at += m;
  }
  const auto nested = NestedDist<double>::make(parts);
  t.record("cells", to_json(cells));
  t.record("row_lengths", lengths);

  const EntropicIndex<double> q(t.q);
  double rhs = tsallis_entropy(nested.coarse(), q);
  for (std::size_t i = 0; i < nested.rows(); ++i) {
    const double xi = nested.row_sum(i);
    rhs += (q.deformed() ? std::pow(xi, t.q) : xi) * tsallis_entropy(nested.conditional(i), q);
  }
  return identity_measure(tsallis_entropy(nested.flatten(), q), rhs);
}

double lagrange(const Trial& t) {
  const Vec a = normal_vector(t.n, t.rng);
  const Vec b = normal_vector(t.n, t.rng);
  t.record("a", to_json(a));
  t.record("b", to_json(b));
  return identity(lagrange_identity(a, b));
}

double spread_forms(const Trial& t) {
  const Vec xs = log_uniform(t.n, t.rng, 1e-2, 1e2);
  const Dist p = t.simplex();
  t.record("xs", to_json(xs));
  t.record("p", to_json(p));
  return identity(pairwise_spread_forms(xs, p));
}

double ratio_bounds(const Trial& t) {
  const auto [p, r] = random_pair(t);
  const EntropicIndex<double> q(t.q);
  const auto neg_lnq = [q](double x) { return -q_log(x, q); };
  const auto square = [](double x) { return x * x; };
  const Vec pos = log_uniform(t.n, t.rng, 1e-2, 1e2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Vec real(static_cast<Eigen::Index>(t.n));
  for (auto& x : real) x = u(t.rng);

  // (f, psi) pairs with f o psi^{-1} convex
  const std::size_t choice = pick(t.rng, q.deformed() && t.q < 1.0 ? 6 : 5);
  t.record("pair", choice);
  BoundReport<double> b{};
  switch (choice) {
    case 0:
      t.record("xs", to_json(pos));
      b = ratio_sandwich(square, identity_psi<double>(), pos, p, r);
      break;
    case 1:
      t.record("xs", to_json(pos));
      b = ratio_sandwich(neg_lnq, identity_psi<double>(), pos, p, r);
      break;
    case 2:
      t.record("xs", to_json(real));
      b = ratio_sandwich([](double x) { return std::exp(x); }, identity_psi<double>(), real, p, r);
      break;
    case 3:
      t.record("xs", to_json(pos));
      b = ratio_sandwich([](double x) { return x; }, log_psi<double>(), pos, p, r);
      break;
    case 4:
      t.record("xs", to_json(pos));
      b = ratio_sandwich(square, log_psi<double>(), pos, p, r);
      break;
    default:
      t.record("xs", to_json(pos));
      b = ratio_sandwich([](double x) { return -std::log(x); }, power_psi<double>(t.q), pos, p, r);
  }
  return chain(b);
}

double quasilinear_gap(const Trial& t) {
  const auto psi = choose(t, admissible_psis(t.q));
  const Dist r = equality_case(t.rng) ? uniform<double>(static_cast<Eigen::Index>(t.n)) : t.simplex();
  t.record("r", to_json(r));
  const auto b = quasilinear_vs_tsallis_bounds(psi, r, t.q);
  return std::max(chain(b), order_measure(0.0, b.lower));
}

double refined_maxent(const Trial& t) {
  const Dist r = equality_case(t.rng) ? uniform<double>(static_cast<Eigen::Index>(t.n)) : t.simplex();
  t.record("r", to_json(r));
  const auto b = refined_maxent_bounds(r, t.q);
  const auto via_identity = quasilinear_vs_tsallis_bounds(identity_psi<double>(), r, t.q);
  return max_of({chain(b), order_measure(0.0, b.lower), identity_measure(b.value, via_identity.value),
                 identity_measure(b.lower, via_identity.lower),
                 identity_measure(b.upper, via_identity.upper)});
}

double f_sandwich(const Trial& t) {
  const std::vector<ConvexGenerator<double>> fs{kl_f<double>(), neglog_f<double>(),
                                                tsallis_f<double>(t.q)};
  const auto& f = fs[pick(t.rng, fs.size())];
  t.record("f", f.label);
  const auto [p, r] = random_pair(t);
  const auto b = f_divergence_sandwich(f, p, r);
  return std::max(chain(b), order_measure(0.0, b.lower));
}

double reverse_kl_sandwich(const Trial& t) {
  const auto [p, r] = random_pair(t);
  const auto f = neglog_f<double>();
  const auto b = f_divergence_sandwich(f, p, r);
  const double log_t = std::log(p.weights().cwiseAbs2().cwiseQuotient(r.weights()).sum());
  return max_of({chain(b), order_measure(0.0, b.lower), identity_measure(b.value, kl_divergence(r, p)),
                 identity_measure(dual_jensen_factor(f, p, r), log_t - kl_divergence(p, r))});
}

double smooth_jensen(const Trial& t, SpreadForm form) {
  const Vec xs = log_uniform(t.n, t.rng, 0.1, 10.0);
  const Dist p = t.simplex();
  t.record("xs", to_json(xs));
  t.record("p", to_json(p));
  const double lo = xs.minCoeff();
  const double hi = xs.maxCoeff();
  const double q = t.q;
  const EntropicIndex<double> qi(q);

  const std::size_t choice = pick(t.rng, 5);
  t.record("f", choice);
  std::function<double(double)> f;
  std::function<double(double)> f2;
  switch (choice) {
    case 0:
      f = [qi](double x) { return -q_log(x, qi); };
      f2 = [q](double x) { return q * std::pow(x, -q - 1.0); };
      break;
    case 1:
      f = [](double x) { return std::exp(x); };
      f2 = f;
      break;
    case 2:
      f = [](double x) { return x * std::log(x); };
      f2 = [](double x) { return 1.0 / x; };
      break;
    case 3:
      f = [](double x) { return x * x; };
      f2 = [](double) { return 2.0; };
      break;
    default:
      f = [](double x) { return -std::log(x); };
      f2 = [](double x) { return 1.0 / (x * x); };
  }
  const double a = f2(lo);
  const double b = f2(hi);
  const SecondDerivativeRange<double> range{std::min(a, b), std::max(a, b), lo, hi};
  return chain(smooth_jensen_sandwich(f, range, xs, p, form));
}

double am_gm(const Trial& t) {
  const Vec xs = log_uniform(t.n, t.rng, 1e-2, 1e2);
  const Dist p = t.simplex();
  t.record("xs", to_json(xs));
  t.record("p", to_json(p));
  return chain(cartwright_field(xs, p));
}

double cross_entropy(const Trial& t) {
  const auto [p, r] = random_pair(t);
  const auto s = tsallis_cross_entropy_sandwich(p, r, t.q);
  return max_of({chain(s.combined), chain(s.cross), chain(s.maxent)});
}

double complement(const Trial& t) {
  const Trial sized{t.rng, t.q, std::max<std::size_t>(t.n, 2), t.min_mass, t.witness};
  const auto [p, r] = random_pair(sized);
  return order(complement_cross_entropy(p, r));
}

double chain_rule(const Trial& t) {
  const auto J = random_joint(t, 2);
  const double lhs = tsallis_joint_entropy(J, t.q);
  const double rhs = tsallis_conditional_entropy(J, {0}, {}, t.q) +
                     tsallis_conditional_entropy(J, {1}, {0}, t.q);
  return identity_measure(lhs, rhs);
}

double general_chain_rule(const Trial& t) {
  const std::size_t k = 2 + pick(t.rng, 3);
  const auto J = random_joint(t, k);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), t.rng);
  t.record("order", order);
  const auto terms = chain_rule_decomposition(J, order, t.q);
  const double joint = tsallis_joint_entropy(J, t.q);
  const double sum = std::accumulate(terms.begin(), terms.end(), 0.0);
  return std::max(identity_measure(sum, joint),
                  identity_measure(tsallis_joint_entropy(permute_axes(J, order), t.q), joint));
}

HypothesisPolicy policy_for(double q) {
  return q >= 1.0 ? HypothesisPolicy::enforce : HypothesisPolicy::override_;
}

double conditioning(const Trial& t) {
  const auto J = random_joint(t, 2 + pick(t.rng, 2));
  return order(conditioning_reduces_entropy_check(J, t.q, policy_for(t.q)));
}

double han(const Trial& t) {
  const std::size_t k = 2 + pick(t.rng, 3);
  if (equality_case(t.rng)) {
    std::vector<Dist> parts;
    for (std::size_t i = 0; i < k; ++i) parts.push_back(uniform<double>(2 + static_cast<Eigen::Index>(pick(t.rng, 3))));
    const auto J = product_joint(parts);
    t.record("joint", to_json(J));
    return chain(han_sandwich(J, t.q, policy_for(t.q)));
  }
  return chain(han_sandwich(random_joint(t, k), t.q, policy_for(t.q)));
}

constexpr double kAnyQ = 1e300;

std::vector<TheoremCase> build() {
  std::vector<TheoremCase> cases;
  const auto add = [&](std::string id, std::string summary, double q_min, double q_max,
                       bool exclusive, bool q_dependent, TrialFn fn) {
    cases.push_back({std::move(id), std::move(summary), q_min, q_max, exclusive, q_dependent,
                     std::move(fn)});
  };
  add("prop2.1", "Tsallis quasilinear entropy is nonnegative", 0, kAnyQ, false, true,
      quasilinear_nonnegative);
  add("prop2.2", "coarsening: power sums ordered by q, H_q and R_q do not increase", 0, kAnyQ,
      false, true, coarsening);
  add("prop2.3", "Tsallis quasilinear relative entropy is nonnegative for built-in generators", 0,
      kAnyQ, false, true, quasilinear_relative_nonnegative);
  add("prop2.4", "coarsening does not increase R_q(p||r) or D_q(p||r), q in [0,2]", 0, 2, false,
      true, relative_coarsening);
  add("id14", "exp R_q(p) = exp_q H_q(p)", 0, kAnyQ, false, true, entropy_bridge);
  add("id16", "exp R_q(p||r) = exp_{2-q} D_q(p||r), q in [0,2]", 0, 2, false, true,
      relative_bridge);
  add("qadd", "q-additivity of Tsallis entropy over nested distributions", 0, kAnyQ, false, true,
      q_additivity);
  add("lem4.1", "Lagrange's identity", 0, kAnyQ, false, false, lagrange);
  add("lem4.2", "pairwise spread equals weighted variance", 0, kAnyQ, false, false, spread_forms);
  add("prop3.1", "ratio-weighted Jensen gap sandwich", 0, kAnyQ, false, true, ratio_bounds);
  add("thm3.1", "I_q^psi - H_q sandwich for compatible generators", 0, kAnyQ, false, true,
      quasilinear_gap);
  add("cor3.1", "refined 0 <= ln_q n - H_q sandwich", 0, kAnyQ, false, true, refined_maxent);
  add("thm3.2", "f-divergence sandwich through the dual generator", 0, kAnyQ, false, true,
      f_sandwich);
  add("cor3.2", "reverse KL sandwich through log(sum t) - KL", 0, kAnyQ, false, false,
      reverse_kl_sandwich);
  add("thm4.1", "curvature-bounded Jensen gap, pairwise form", 0, kAnyQ, false, true,
      [](const Trial& t) { return smooth_jensen(t, SpreadForm::pairwise); });
  add("cor4.1", "curvature-bounded Jensen gap, variance form", 0, kAnyQ, false, true,
      [](const Trial& t) { return smooth_jensen(t, SpreadForm::variance); });
  add("cf", "Cartwright-Field bounds on AM - GM", 0, kAnyQ, false, false, am_gm);
  add("thm4.2", "Tsallis cross-entropy sandwich, q > 0", 0, kAnyQ, true, true, cross_entropy);
  add("cor4.2", "Shannon cross-entropy sandwich (q = 1)", 1, 1, false, true, cross_entropy);
  add("prop4.1", "information inequality for complemented distributions", 0, kAnyQ, false, false,
      complement);
  add("prop5.1", "chain rule H_q(x,y) = H_q(x) + H_q(y|x)", 0, kAnyQ, false, true, chain_rule);
  add("prop5.2", "generalized chain rule and axis symmetry", 0, kAnyQ, false, true,
      general_chain_rule);
  add("prop5.3", "conditioning reduces Tsallis entropy, q >= 1", 1, kAnyQ, false, true,
      conditioning);
  add("thm5.1", "Tsallis Han inequality, q >= 1", 1, kAnyQ, false, true, han);
  return cases;
}

}  // namespace

const std::vector<TheoremCase>& registry() {
  static const std::vector<TheoremCase> cases = build();
  return cases;
}

}  // namespace qentropy::verify

#include "qentropy/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qentropy/io.hpp"
#include "qentropy/qentropy.hpp"
#include "qentropy/verify.hpp"

namespace qentropy::cli {
namespace {

using Vec = Vector<double>;
using Dist = ProbDist<double>;

constexpr const char* kSchema = "qentropy/1";

constexpr const char* kFormats = R"(Input formats:
  distribution  JSON {"weights": [w1, ..., wn]}, or CSV with one weight per
                line and an optional first line "weight"
  points (--xs) JSON {"values": [x1, ..., xn]} or the same CSV layout
  joint         JSON {"dims": [d1, ..., dk], "cells": [...]}, cells in
                row-major order (last axis varies fastest)

Exit status: 0 clean, 1 usage or input error, 2 verification failure.
QENTROPY_CHECK_TOL overrides the default check tolerance (1e-9).)";

CheckTolerance tolerance(const CliConfig& c) {
  const double t = c.check_tol.value_or(verify::kCheckTol);
  return {t, t};
}

double q_or_default(const CliConfig& c) { return c.q.value_or(1.0); }

Json header(const char* command) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = command;
  return doc;
}

Json report_json(const BoundReport<double>& b) {
  Json j;
  j["lower"] = b.lower;
  j["value"] = b.value;
  j["upper"] = b.upper;
  j["lower_slack"] = b.lower_slack;
  j["upper_slack"] = b.upper_slack;
  return j;
}

Json pair_json(const IdentityPair<double>& p) {
  Json j;
  j["lhs"] = p.lhs;
  j["rhs"] = p.rhs;
  j["residual"] = p.residual();
  j["relative_residual"] = p.relative_residual();
  return j;
}

Json ordered_json(const OrderedPair<double>& p) {
  Json j;
  j["lesser"] = p.lesser;
  j["greater"] = p.greater;
  j["gap"] = p.gap();
  return j;
}

void need_inputs(const CliConfig& c, std::size_t count, const char* what) {
  if (c.inputs.size() != count) {
    throw UsageError(std::string(what) + " takes " + std::to_string(count) + " input file" +
                     (count == 1 ? "" : "s") + ", got " + std::to_string(c.inputs.size()));
  }
}

void need_label(const std::string& label, const char* flag, const std::string& what) {
  if (label.empty()) throw UsageError(what + " needs " + flag);
}

Vec read_points(const CliConfig& c) {
  if (c.xs_path.empty()) throw UsageError("case " + c.case_id + " needs --xs");
  const auto v = read_weights(c.xs_path);
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Json compute_entropy(const std::string& name, const CliConfig& c, const Dist& p) {
  Json j;
  j["functional"] = name;
  const double q = q_or_default(c);
  if (name == "tsallis") {
    j["q"] = q;
    j["value"] = tsallis_entropy(p, q);
  } else if (name == "shannon") {
    j["value"] = shannon_entropy(p);
  } else if (name == "renyi") {
    j["q"] = q;
    j["value"] = renyi_entropy(p, q);
  } else {
    need_label(c.psi_label, "--psi", "quasilinear entropy");
    j["q"] = q;
    j["psi"] = c.psi_label;
    j["value"] = tsallis_quasilinear_entropy(psi_from_label<double>(c.psi_label, q), p, q);
  }
  return j;
}

Json compute_divergence(const std::string& name, const CliConfig& c, const Dist& p,
                        const Dist& r) {
  Json j;
  j["functional"] = name;
  const double q = q_or_default(c);
  if (name == "tsallis") {
    j["q"] = q;
    j["value"] = tsallis_relative(p, r, q);
  } else if (name == "kl") {
    j["value"] = kl_divergence(p, r);
  } else if (name == "renyi") {
    j["q"] = q;
    j["value"] = renyi_relative(p, r, q);
  } else if (name == "f") {
    need_label(c.f_label, "--f", "f-divergence");
    j["f"] = c.f_label;
    if (c.f_label == "tsallis") j["q"] = q;
    j["value"] = f_divergence(f_from_label<double>(c.f_label, q), p, r);
  } else {
    need_label(c.psi_label, "--psi", "quasilinear divergence");
    j["q"] = q;
    j["psi"] = c.psi_label;
    const auto psi = psi_from_label<double>(c.psi_label, q);
    j["value"] = tsallis_quasilinear_relative(psi, p, r, q);
    j["nonnegativity_guaranteed"] = relative_nonnegativity_guaranteed(psi);
  }
  return j;
}

Json bounds_body(const CliConfig& c) {
  const std::string& id = c.case_id;
  const double q = q_or_default(c);
  const auto tol = tolerance(c);
  Json doc = header("bounds");
  doc["case"] = id;
  Json constants = Json::object();
  bool holds = true;

  if (id == "cor3.1" || id == "thm3.1") {
    need_inputs(c, 1, id.c_str());
    const Dist r = read_dist(c.inputs[0]);
    doc["q"] = q;
    const double n = static_cast<double>(r.size());
    constants["n_min_r"] = n * r.weights().minCoeff();
    constants["n_max_r"] = n * r.weights().maxCoeff();
    BoundReport<double> b{};
    if (id == "cor3.1") {
      b = refined_maxent_bounds(r, q);
      constants["ln_q_n"] = q_log(n, q);
    } else {
      need_label(c.psi_label, "--psi", "case thm3.1");
      doc["psi"] = c.psi_label;
      const auto psi = psi_from_label<double>(c.psi_label, q);
      b = quasilinear_vs_tsallis_bounds(psi, r, q);
      constants["uniform_gap"] = detail::uniform_lnq_gap(psi, r, q);
    }
    doc["report"] = report_json(b);
    holds = b.holds(tol);
  } else if (id == "prop3.1") {
    need_inputs(c, 2, id.c_str());
    need_label(c.f_label, "--f", "case prop3.1");
    need_label(c.psi_label, "--psi", "case prop3.1");
    const Dist p = read_dist(c.inputs[0]);
    const Dist r = read_dist(c.inputs[1]);
    const Vec xs = read_points(c);
    const auto f = f_from_label<double>(c.f_label, q);
    const auto psi = psi_from_label<double>(c.psi_label, q);
    doc["q"] = q;
    doc["f"] = c.f_label;
    doc["psi"] = c.psi_label;
    const Vec ratio = r.weights().cwiseQuotient(p.weights());
    constants["min_ratio"] = ratio.minCoeff();
    constants["max_ratio"] = ratio.maxCoeff();
    constants["jensen_gap_p"] = jensen_gap(f, psi, xs, p);
    const auto b = ratio_sandwich(f, psi, xs, p, r, true);
    doc["report"] = report_json(b);
    holds = b.holds(tol);
  } else if (id == "thm3.2" || id == "cor3.2") {
    need_inputs(c, 2, id.c_str());
    const Dist p = read_dist(c.inputs[0]);
    const Dist r = read_dist(c.inputs[1]);
    ConvexGenerator<double> f = neglog_f<double>();
    if (id == "thm3.2") {
      need_label(c.f_label, "--f", "case thm3.2");
      f = f_from_label<double>(c.f_label, q);
      if (c.f_label == "tsallis") doc["q"] = q;
    }
    doc["f"] = f.label;
    const Vec ratio = r.weights().cwiseQuotient(p.weights());
    constants["min_ratio"] = ratio.minCoeff();
    constants["max_ratio"] = ratio.maxCoeff();
    constants["dual_factor"] = dual_jensen_factor(f, p, r);
    const auto b = f_divergence_sandwich(f, p, r);
    doc["report"] = report_json(b);
    holds = b.holds(tol);
  } else if (id == "thm4.1" || id == "cor4.1") {
    need_inputs(c, 1, id.c_str());
    need_label(c.f_label, "--f", "case " + id);
    const Dist p = read_dist(c.inputs[0]);
    const Vec xs = read_points(c);
    const auto f = f_from_label<double>(c.f_label, q);
    if (c.f_label == "tsallis") doc["q"] = q;
    doc["f"] = c.f_label;
    SecondDerivativeRange<double> range{};
    if (c.m || c.M) {
      if (!c.m || !c.M) throw UsageError("--m and --M must be given together");
      range = {*c.m, *c.M, xs.minCoeff(), xs.maxCoeff()};
    } else {
      range = curvature_range(f, xs.minCoeff(), xs.maxCoeff());
    }
    constants["m"] = range.m;
    constants["M"] = range.M;
    constants["interval"] = {range.lo, range.hi};
    const auto form = id == "thm4.1" ? SpreadForm::pairwise : SpreadForm::variance;
    const auto b = smooth_jensen_sandwich(f, range, xs, p, form);
    doc["report"] = report_json(b);
    holds = b.holds(tol);
  } else if (id == "cf") {
    need_inputs(c, 1, "case cf");
    const Dist p = read_dist(c.inputs[0]);
    const Vec xs = read_points(c);
    constants["min_x"] = xs.minCoeff();
    constants["max_x"] = xs.maxCoeff();
    constants["variance"] = pairwise_spread(xs, p);
    const auto b = cartwright_field(xs, p);
    doc["report"] = report_json(b);
    holds = b.holds(tol);
  } else if (id == "lem4.2") {
    need_inputs(c, 1, "case lem4.2");
    const Dist p = read_dist(c.inputs[0]);
    const auto pair = pairwise_spread_forms(read_points(c), p);
    doc["identity"] = pair_json(pair);
    holds = pair.relative_residual() <= tol.abs + tol.rel;
  } else if (id == "thm4.2" || id == "cor4.2") {
    need_inputs(c, 2, id.c_str());
    const Dist p = read_dist(c.inputs[0]);
    const Dist r = read_dist(c.inputs[1]);
    const double qq = id == "cor4.2" ? 1.0 : q;
    if (id == "cor4.2" && c.q && *c.q != 1.0) throw UsageError("case cor4.2 fixes q = 1");
    doc["q"] = qq;
    SecondDerivativeRange<double> k{};
    if (c.m || c.M) {
      if (!c.m || !c.M) throw UsageError("--m and --M must be given together");
      const double lo = std::min(p.weights().minCoeff(), r.weights().minCoeff());
      const double hi = std::max(p.weights().maxCoeff(), r.weights().maxCoeff());
      k = {*c.m, *c.M, 1.0 / hi, 1.0 / lo};
    } else {
      k = tightest_constants(p, r, qq);
    }
    constants["m_q"] = k.m;
    constants["M_q"] = k.M;
    constants["interval"] = {k.lo, k.hi};
    const auto s = tsallis_cross_entropy_sandwich(p, r, qq, k.m, k.M);
    doc["report"] = report_json(s.combined);
    doc["cross"] = report_json(s.cross);
    doc["maxent"] = report_json(s.maxent);
    holds = s.combined.holds(tol) && s.cross.holds(tol) && s.maxent.holds(tol);
  } else if (id == "prop4.1") {
    need_inputs(c, 2, "case prop4.1");
    const auto pair = complement_cross_entropy(read_dist(c.inputs[0]), read_dist(c.inputs[1]));
    doc["order"] = ordered_json(pair);
    holds = pair.holds(tol);
  } else if (id == "id14") {
    need_inputs(c, 1, "case id14");
    doc["q"] = q;
    const auto pair = renyi_tsallis_bridge(read_dist(c.inputs[0]), q);
    doc["identity"] = pair_json(pair);
    holds = pair.relative_residual() <= tol.abs + tol.rel;
  } else if (id == "id16") {
    need_inputs(c, 2, "case id16");
    doc["q"] = q;
    const auto pair =
        renyi_tsallis_relative_bridge(read_dist(c.inputs[0]), read_dist(c.inputs[1]), q);
    doc["identity"] = pair_json(pair);
    holds = pair.relative_residual() <= tol.abs + tol.rel;
  } else if (id == "thm5.1" || id == "prop5.3" || id == "prop5.1") {
    need_inputs(c, 1, id.c_str());
    const auto J = read_joint(c.inputs[0]);
    const auto policy =
        c.override_hypothesis ? HypothesisPolicy::override_ : HypothesisPolicy::enforce;
    doc["q"] = q;
    if (id == "thm5.1") {
      const auto b = han_sandwich(J, q, policy);
      doc["report"] = report_json(b);
      holds = b.holds(tol);
    } else if (id == "prop5.3") {
      const auto pair = conditioning_reduces_entropy_check(J, q, policy);
      doc["order"] = ordered_json(pair);
      holds = pair.holds(tol);
    } else {
      std::vector<std::size_t> order(J.rank());
      for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
      const auto terms = chain_rule_decomposition(J, order, q);
      double sum = 0.0;
      for (double t : terms) sum += t;
      const IdentityPair<double> pair{tsallis_joint_entropy(J, q), sum};
      doc["terms"] = terms;
      doc["identity"] = pair_json(pair);
      holds = pair.relative_residual() <= tol.abs + tol.rel;
    }
    doc["in_hypothesis"] = id == "prop5.1" || q >= 1.0;
  } else {
    throw UsageError("bounds does not support case '" + id +
                     "' (supported: id14 id16 prop3.1 thm3.1 cor3.1 thm3.2 cor3.2 thm4.1 "
                     "cor4.1 lem4.2 cf thm4.2 cor4.2 prop4.1 prop5.1 prop5.3 thm5.1)");
  }
  if (!constants.empty()) doc["constants"] = constants;
  doc["holds"] = holds;
  return doc;
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("QENTROPY_CHECK_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(raw, &end);
  if (errno != 0 || *end != '\0' || !(v >= 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string("QENTROPY_CHECK_TOL is not a nonnegative number: ") + raw);
  }
  return v;
}

void emit(const Json& doc, const CliConfig& c, std::ostream& out) {
  if (c.output == OutputFormat::table) {
    out << render_table(doc);
  } else {
    out << dump_json(doc) << '\n';
  }
}

}  // namespace

void validate(const CliConfig& c) {
  if (c.q && !(*c.q >= 0.0 && std::isfinite(*c.q))) throw UsageError("--q must be finite and >= 0");
  for (double q : c.q_grid) {
    if (!(q >= 0.0 && std::isfinite(q))) throw UsageError("--q must be finite and >= 0");
  }
  switch (c.command) {
    case Command::compute:
      if (c.entropies.empty() && c.divergences.empty()) {
        throw UsageError("compute needs --entropy or --divergence");
      }
      if (!c.entropies.empty() && !c.divergences.empty()) {
        throw UsageError("compute takes --entropy or --divergence, not both");
      }
      break;
    case Command::bounds:
      if (c.case_id.empty()) throw UsageError("bounds needs --case");
      break;
    case Command::verify:
      if (c.all_cases == !c.case_ids.empty()) throw UsageError("verify needs exactly one of --all, --case");
      if (c.trials == 0) throw UsageError("--trials must be positive");
      if (c.n_min < 1 || c.n_min > c.n_max) throw UsageError("need 1 <= --n-min <= --n-max");
      break;
    case Command::echo:
      if (c.inputs.size() != 1) throw UsageError("echo takes one input file");
      break;
  }
}

Json cmd_compute(const CliConfig& c) {
  validate(c);
  Json doc = header("compute");
  Json results = Json::array();
  if (!c.entropies.empty()) {
    need_inputs(c, 1, "an entropy");
    const Dist p = read_dist(c.inputs[0]);
    doc["n"] = p.size();
    for (const auto& name : c.entropies) results.push_back(compute_entropy(name, c, p));
  } else {
    need_inputs(c, 2, "a divergence");
    const Dist p = read_dist(c.inputs[0]);
    const Dist r = read_dist(c.inputs[1]);
    if (p.size() != r.size()) throw UsageError("p and r have different lengths");
    doc["n"] = p.size();
    for (const auto& name : c.divergences) results.push_back(compute_divergence(name, c, p, r));
  }
  doc["results"] = results;
  return doc;
}

Json cmd_bounds(const CliConfig& c) {
  validate(c);
  return bounds_body(c);
}

int cmd_verify(const CliConfig& c, std::ostream& out) {
  validate(c);
  verify::RunConfig run;
  run.seed = c.seed;
  run.trials = c.trials;
  run.n_min = c.n_min;
  run.n_max = c.n_max;
  if (!c.q_grid.empty()) run.q_grid = c.q_grid;
  run.override_hypothesis = c.override_hypothesis;
  run.profile = c.stress ? verify::Profile::stress : verify::Profile::standard;
  if (c.check_tol) run.check_tol = *c.check_tol;
  run.threads = c.threads;

  std::vector<const verify::TheoremCase*> cases;
  if (c.all_cases) {
    for (const auto& tc : verify::registry()) cases.push_back(&tc);
  } else {
    for (const auto& id : c.case_ids) cases.push_back(&verify::find_case(id));
  }

  bool failed = false;
  for (const auto* tc : cases) {
    const auto report = verify::run_case(*tc, run);
    if (c.output == OutputFormat::table) {
      out << std::left << std::setw(9) << report.case_id << " trials " << report.trials
          << "  violations " << report.violations << "  worst "
          << format_number(report.worst_violation)
          << (report.in_hypothesis ? "" : "  (outside hypothesis)") << '\n';
    } else {
      out << verify::to_json_line(report) << '\n';
    }
    if (report.in_hypothesis && !report.clean()) failed = true;
  }
  out.flush();
  return failed ? kExitViolation : kExitOk;
}

std::string render_table(const Json& doc) {
  std::ostringstream os;
  const auto num = [](const Json& v) {
    return v.is_number() ? format_number(v.get<double>()) : v.dump();
  };
  if (doc.value("command", "") == "compute") {
    for (const auto& r : doc["results"]) {
      os << std::left << std::setw(12) << r["functional"].get<std::string>();
      for (const char* key : {"q", "psi", "f"}) {
        if (r.contains(key)) {
          os << ' ' << key << '=' << (r[key].is_string() ? r[key].get<std::string>() : num(r[key]));
        }
      }
      os << "  " << num(r["value"]) << '\n';
    }
    return os.str();
  }
  os << "case " << doc.value("case", "") << '\n';
  for (const char* key : {"report", "cross", "maxent"}) {
    if (!doc.contains(key)) continue;
    const auto& b = doc[key];
    os << "  " << std::left << std::setw(7) << key << num(b["lower"]) << " <= " << num(b["value"])
       << " <= " << num(b["upper"]) << '\n';
  }
  if (doc.contains("identity")) {
    os << "  lhs " << num(doc["identity"]["lhs"]) << "  rhs " << num(doc["identity"]["rhs"])
       << '\n';
  }
  if (doc.contains("order")) {
    os << "  " << num(doc["order"]["lesser"]) << " <= " << num(doc["order"]["greater"]) << '\n';
  }
  if (doc.contains("constants")) {
    for (const auto& [k, v] : doc["constants"].items()) {
      os << "  " << std::left << std::setw(14) << k;
      if (v.is_array()) {
        os << '[' << num(v[0]) << ", " << num(v[1]) << "]\n";
      } else {
        os << num(v) << '\n';
      }
    }
  }
  os << "  holds " << (doc.value("holds", false) ? "yes" : "no") << '\n';
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Generalized entropies, divergences and their inequality chains", "qentropy"};
  app.footer(kFormats);
  app.require_subcommand(1);

  std::string output = "json";
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "table"}));
  };

  auto* compute = app.add_subcommand("compute", "Evaluate entropies of P or divergences of P from R");
  compute->add_option("--entropy", c.entropies, "Entropy (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::IsMember({"tsallis", "shannon", "renyi", "quasilinear"}));
  compute->add_option("--divergence", c.divergences, "Divergence (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::IsMember({"tsallis", "kl", "renyi", "f", "quasilinear"}));
  compute->add_option("--q", c.q, "Entropic index, default 1");
  compute->add_option("--psi", c.psi_label, "Generator: identity, log, lnq, power");
  compute->add_option("--f", c.f_label, "Convex generator: tsallis, kl, neglog");
  compute->add_option("inputs", c.inputs, "P [R]")->required();
  add_output(compute);

  auto* bounds = app.add_subcommand("bounds", "Evaluate one theorem's bound chain on given inputs");
  bounds->add_option("--case", c.case_id, "Case id, e.g. cor3.1")->required();
  bounds->add_option("--q", c.q, "Entropic index, default 1");
  bounds->add_option("--psi", c.psi_label, "Generator: identity, log, lnq, power");
  bounds->add_option("--f", c.f_label, "Convex generator: tsallis, kl, neglog");
  bounds->add_option("--xs", c.xs_path, "Points file (prop3.1, thm4.1, cor4.1, lem4.2, cf)");
  bounds->add_option("--m", c.m, "Lower curvature constant (thm4.1, cor4.1, thm4.2)");
  bounds->add_option("--M", c.M, "Upper curvature constant");
  bounds->add_flag("--override-hypothesis", c.override_hypothesis,
                   "Evaluate q >= 1 results (prop5.3, thm5.1) below q = 1");
  bounds->add_option("inputs", c.inputs, "P [R], or a joint file for prop5.x/thm5.1")->required();
  add_output(bounds);

  auto* ver = app.add_subcommand("verify", "Run the randomized verification harness");
  ver->add_flag("--all", c.all_cases, "Run every registered case");
  ver->add_option("--case", c.case_ids, "Case id (repeatable)")
      ->allow_extra_args(false);
  ver->add_option("--seed", c.seed, "Master seed");
  ver->add_option("--trials", c.trials, "Trials per case");
  ver->add_option("--q", c.q_grid, "q value (repeatable); replaces the default grid")
      ->allow_extra_args(false);
  ver->add_option("--n-min", c.n_min, "Smallest alphabet size");
  ver->add_option("--n-max", c.n_max, "Largest alphabet size");
  ver->add_option("--threads", c.threads, "Worker threads, 0 = all cores");
  std::string profile = "standard";
  ver->add_option("--profile", profile, "Sampling profile")
      ->check(CLI::IsMember({"standard", "stress"}));
  ver->add_flag("--override-hypothesis", c.override_hypothesis,
                "Run q values outside a case's hypothesis (reported, not failed)");
  add_output(ver);

  auto* echo = app.add_subcommand("echo", "Parse a distribution file and print it as JSON");
  echo->add_option("input", c.inputs, "Distribution file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  c.output = output == "table" ? OutputFormat::table : OutputFormat::json;
  c.stress = profile == "stress";
  if (compute->parsed()) c.command = Command::compute;
  if (bounds->parsed()) c.command = Command::bounds;
  if (ver->parsed()) c.command = Command::verify;
  if (echo->parsed()) c.command = Command::echo;

  try {
    c.check_tol = env_tolerance();
    switch (c.command) {
      case Command::compute:
        emit(cmd_compute(c), c, out);
        return kExitOk;
      case Command::bounds: {
        const Json doc = cmd_bounds(c);
        emit(doc, c, out);
        const bool counted = doc.value("in_hypothesis", true);
        return counted && !doc["holds"].get<bool>() ? kExitViolation : kExitOk;
      }
      case Command::verify:
        return cmd_verify(c, out);
      case Command::echo:
        validate(c);
        out << echo_dist(read_dist(c.inputs[0])) << '\n';
        return kExitOk;
    }
  } catch (const InputError& e) {
    err << "qentropy: input error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "qentropy: usage error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace qentropy::cli

#include "hyperkp/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "hyperkp/baker.hpp"
#include "hyperkp/divisors.hpp"
#include "hyperkp/jet_flows.hpp"
#include "hyperkp/json_io.hpp"
#include "hyperkp/runner.hpp"

namespace hyperkp {
namespace {

using GR = GaussianRational;
using BF = BigFloatComplex;

struct Options {
  std::string mode = "exact";
  long precision = 256;
  int jet_order = 4;
  std::uint64_t seed = 1;
  std::string out;
  std::string curve;
  std::string divisor;
  std::string variant;
  std::string kp2 = "none";
  std::string id;
  int genus = 0;
  bool a0 = false;
  bool timings = false;
  int threads = 0;
  int count = 0;
  int branch = 1;
  std::string model;
  std::vector<std::string> constraints;
  std::vector<int> flows;
};

RunConfig config_of(const Options& o) {
  RunConfig c;
  c.numeric = o.mode == "numeric";
  c.precision = o.precision;
  c.jet_order = o.jet_order;
  c.seed = o.seed;
  return c;
}

Json report_head(const std::string& command, const Options& o) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "hyperkp"}, {"version", kToolVersion}};
  j["command"] = command;
  Json cfg;
  cfg["mode"] = o.mode;
  if (o.mode == "numeric") cfg["precision"] = o.precision;
  cfg["jet_order"] = o.jet_order;
  cfg["seed"] = o.seed;
  if (!o.curve.empty()) cfg["curve"] = o.curve;
  if (!o.divisor.empty()) cfg["divisor"] = o.divisor;
  if (o.genus) cfg["genus"] = o.genus;
  j["config"] = cfg;
  return j;
}

void emit(const Json& report, const Options& o, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + o.out + "'");
  f << text;
}

int finish(Json report, bool pass, const Options& o, std::ostream& out) {
  report["verdict"] = pass ? "pass" : "fail";
  emit(report, o, out);
  return pass ? kExitPass : kExitFail;
}

CurveFile require_curve(const Options& o) {
  if (o.curve.empty()) throw ParseError("--curve is required");
  return parse_curve(load_json(o.curve));
}

DivisorSpec require_divisor(const Options& o) {
  if (o.divisor.empty()) throw ParseError("--divisor is required");
  return parse_divisor(load_json(o.divisor));
}

// Calls fn(curve, divisor) in the configured scalar ring after validation.
template <class Fn>
auto with_mode(const Curve<GR>& curve, const DivisorSpec& spec, const RunConfig& cfg, Fn&& fn) {
  validate(curve);
  if (cfg.numeric) {
    if (cfg.precision < BF::kMinPrecision) {
      throw PreconditionError("numeric mode needs --precision >= " + std::to_string(BF::kMinPrecision));
    }
    const auto c = numeric_curve(curve, cfg.precision);
    const auto d = numeric_divisor(curve, spec, cfg.precision);
    validate_positions(c, d.x);
    return fn(c, d);
  }
  return with_exact_divisor(curve, spec, [&](const auto& d) {
    validate_divisor(curve, d);
    return fn(curve, d);
  });
}

template <class S>
Json jet_table(const Jet3<S>& j, int order) {
  Json t;
  for (const auto& e : jet_monomials(order)) {
    t[std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2])] = scalar_json(j.coeff(e));
  }
  return t;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const CurveFile cf = require_curve(o);
  Json r = report_head("validate-curve", o);
  Json res;
  bool ok = true;
  try {
    const auto cert = validate(cf.curve);
    res["valid"] = true;
    res["resultant"] = scalar_json(cert.resultant);
    if (!o.divisor.empty()) {
      const DivisorSpec spec = require_divisor(o);
      with_exact_divisor(cf.curve, spec, [&](const auto& d) {
        validate_divisor(cf.curve, d);
        return 0;
      });
      res["divisor_valid"] = true;
    }
  } catch (const ValidationError& e) {
    ok = false;
    res["valid"] = false;
    res["error"] = e.what();
    err << "validation failed: " << e.what() << "\n";
  }
  const WeightAudit audit = weight_audit(cf.curve.model(), cf.curve.genus());
  Json terms = Json::array();
  for (const auto& t : audit.terms) terms.push_back({{"monomial", t.monomial}, {"weight", t.weight}});
  res["weight_audit"] = {{"expected", audit.expected}, {"homogeneous", audit.homogeneous}, {"terms", terms}};
  r["result"] = res;
  return finish(r, ok && audit.homogeneous, o, out);
}

int cmd_eval_p(const Options& o, std::ostream& out) {
  const CurveFile cf = require_curve(o);
  const DivisorSpec spec = require_divisor(o);
  Json r = report_head("eval-p", o);
  bool symmetric = true;
  r["result"] = with_mode(cf.curve, spec, config_of(o), [&](const auto& c, const auto& d) {
    const auto P = p_matrix(c, d.x, d.y);
    symmetric = P.is_symmetric();
    Json m;
    for (int s : c.rules().function_suffixes()) {
      for (int t : c.rules().function_suffixes()) m[PMatrix<GR>::key(c.model(), s, t)] = scalar_json(P.at(s, t));
    }
    return Json{{"matrix", m}, {"symmetric", symmetric}};
  });
  return finish(r, symmetric, o, out);
}

int cmd_jet_eval(const Options& o, std::ostream& out) {
  const CurveFile cf = require_curve(o);
  const DivisorSpec spec = require_divisor(o);
  const RunConfig cfg = config_of(o);
  std::vector<int> flows = o.flows;
  if (flows.empty()) {
    const auto sufs = cf.curve.rules().function_suffixes();
    flows.assign(sufs.begin(), sufs.begin() + std::min<std::size_t>(sufs.size(), 3));
  }
  Json r = report_head("jet-eval", o);
  r["config"]["flows"] = flows;
  bool on_curve = true;
  r["result"] = with_mode(cf.curve, spec, cfg, [&](const auto& c, const auto& d) {
    using C = std::decay_t<decltype(c.coefficient(0))>;
    const auto jet = propagate(c, d, single_suffix_directions<C>(c.model(), flows), cfg.jet_order);
    Json pts = Json::array();
    for (std::size_t j = 0; j < jet.x.size(); ++j) {
      pts.push_back({{"x", jet_table(jet.x[j], cfg.jet_order)}, {"y", jet_table(jet.y[j], cfg.jet_order)}});
    }
    const auto defects = curve_relation_defect(c, jet);
    for (std::size_t j = 0; j < defects.size(); ++j) {
      const double scale = std::max({1.0, magnitude(jet.y[j] * jet.y[j])});
      const double rel = magnitude(defects[j]) / scale;
      if constexpr (is_exact_v<C>) {
        on_curve = on_curve && rel == 0.0;
      } else {
        on_curve = on_curve && rel <= numeric_threshold(cfg.precision);
      }
    }
    const auto P = pmatrix_jet(c, jet);
    Json pj;
    for (int s : c.rules().function_suffixes()) {
      for (int t : c.rules().function_suffixes()) {
        if (t < s) continue;
        pj[PMatrix<GR>::key(c.model(), s, t)] = jet_table(P.at(s, t), cfg.jet_order);
      }
    }
    return Json{{"points", pts}, {"p_matrix", pj}, {"curve_relation_holds", on_curve}};
  });
  return finish(r, on_curve, o, out);
}

Json kp_result(const IdentityReport& rep, bool timings) {
  Json j = report_json(rep, timings);
  if (rep.exact) {
    j["exact_zero"] = rep.passed();
  } else {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << rep.max_abs;
    j["residual_max_abs"] = os.str();
  }
  return j;
}

int cmd_kp(const Options& o, std::ostream& out) {
  if (o.variant.empty()) throw ParseError("--variant is required");
  const CurveFile cf = require_curve(o);
  const DivisorSpec spec = require_divisor(o);
  KPOptions k{parse_variant(o.variant), o.kp2, o.branch};
  validate(cf.curve);
  const IdentityReport rep = run_kp(k, cf.curve, spec, config_of(o));
  Json r = report_head("kp-residual", o);
  r["config"]["variant"] = o.variant;
  r["config"]["kp2"] = o.kp2;
  r["result"] = kp_result(rep, o.timings);
  return finish(r, rep.passed(), o, out);
}

Fixture auto_fixture(Model model, int genus, std::set<Constraint> constraints, std::uint64_t seed) {
  FixtureRequest req;
  req.model = model;
  req.genus = genus;
  req.constraints = std::move(constraints);
  req.seed = seed;
  return generate_fixture(req);
}

int cmd_check_identity(const Options& o, std::ostream& out) {
  if (o.id.empty()) throw ParseError("--id is required (one of: p-third-relation, quartic-baker, suffix-symmetry, "
                                     "wp-family, wp-quartic-top, h-inversion)");
  const Model model = identity_model(o.id);
  Fixture fx;
  if (!o.curve.empty()) {
    fx.curve = require_curve(o).curve;
  } else {
    if (o.genus < 1) throw ParseError("--genus is required when no --curve is given");
    fx = auto_fixture(model, o.genus, {}, o.seed);
  }
  validate(fx.curve);
  std::vector<DivisorSpec> divisors;
  if (!o.divisor.empty()) {
    divisors.push_back(require_divisor(o));
  } else {
    divisors = draw_divisors(fx, o.count > 0 ? o.count : 2, o.seed);
  }
  Json r = report_head("check-identity", o);
  r["config"]["id"] = o.id;
  r["curve"] = curve_json(fx.curve);
  Json results = Json::array();
  bool pass = true;
  for (const auto& d : divisors) {
    const IdentityReport rep = run_identity(o.id, fx.curve, d, config_of(o));
    pass = pass && rep.passed();
    results.push_back(report_json(rep, o.timings));
  }
  r["results"] = results;
  return finish(r, pass, o, out);
}

int cmd_bridge(const Options& o, std::ostream& out) {
  Fixture fx;
  if (!o.curve.empty()) {
    const CurveFile cf = require_curve(o);
    fx.curve = cf.curve;
    fx.roots = cf.roots;
  } else {
    if (o.genus < 1) throw ParseError("--curve or --genus is required");
    fx = auto_fixture(Model::even, o.genus, {Constraint::rational_roots}, o.seed);
  }
  validate(fx.curve);
  const DivisorSpec spec = o.divisor.empty() ? draw_divisors(fx, 1, o.seed).front() : require_divisor(o);
  const IdentityReport rep = run_bridge(fx.curve, spec, config_of(o), fx.roots, o.a0);
  Json r = report_head("bridge-check", o);
  r["config"]["a0"] = o.a0;
  r["result"] = report_json(rep, o.timings);
  return finish(r, rep.passed(), o, out);
}

struct Task {
  std::string name;
  std::function<IdentityReport()> fn;
};

// Workers pull tasks by index; results keep task order.
std::vector<std::pair<std::optional<IdentityReport>, std::string>> run_tasks(const std::vector<Task>& tasks,
                                                                             int threads) {
  std::vector<std::pair<std::optional<IdentityReport>, std::string>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i].first = tasks[i].fn();
      } catch (const std::exception& e) {
        results[i].second = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

int cmd_suite(const Options& o, std::ostream& out) {
  const int g = o.genus;
  if (g < 1 || g > 4) throw PreconditionError("suite: --genus between 1 and 4 required");
  const RunConfig cfg = config_of(o);
  const int count = o.count > 0 ? o.count : 2;
  const std::uint64_t s = o.seed;

  std::set<Constraint> even_c{Constraint::rational_points};
  if (g >= 3) even_c.insert(Constraint::nu0_neg3_square);
  std::set<Constraint> odd_c{Constraint::rational_points};
  if (g >= 3) odd_c.insert(Constraint::lambda_top_neg3_square);
  if (g >= 2) odd_c.insert(Constraint::lambda2_square);
  const Fixture even = auto_fixture(Model::even, g, even_c, s);
  const Fixture odd = auto_fixture(Model::odd, g, odd_c, s + 1);
  const Fixture roots = auto_fixture(Model::even, g, {Constraint::rational_roots}, s + 2);
  const auto even_d = draw_divisors(even, count, s);
  const auto odd_d = draw_divisors(odd, count, s);
  const auto roots_d = draw_divisors(roots, count, s);

  std::vector<Task> tasks;
  auto add = [&](std::string name, std::function<IdentityReport()> fn) { tasks.push_back({std::move(name), std::move(fn)}); };
  for (const std::string id : {"p-third-relation", "quartic-baker", "suffix-symmetry"}) {
    for (std::size_t k = 0; k < even_d.size(); ++k) {
      add(id, [&, id, k] { return run_identity(id, even.curve, even_d[k], cfg); });
    }
  }
  for (const std::string id : {"wp-family", "wp-quartic-top", "h-inversion"}) {
    for (std::size_t k = 0; k < odd_d.size(); ++k) {
      add(id, [&, id, k] { return run_identity(id, odd.curve, odd_d[k], cfg); });
    }
  }
  add("structural-guards", [&] { return run_structural(even.curve, even_d[0], cfg); });
  add("structural-guards", [&] { return run_structural(odd.curve, odd_d[0], cfg); });
  const std::string kp2 = cfg.numeric ? "xi8" : "sqrt-1";
  for (std::size_t k = 0; k < even_d.size(); ++k) {
    if (g >= 3) {
      add("kp-psi", [&, k] { return run_kp({Variant::psi, "none", 1}, even.curve, even_d[k], cfg); });
      add("kp-phi", [&, k] { return run_kp({Variant::phi, "none", 1}, odd.curve, odd_d[k], cfg); });
    }
    if (g >= 2) add("kp-upsilon", [&, k] { return run_kp({Variant::upsilon, "none", 1}, odd.curve, odd_d[k], cfg); });
  }
  if (g >= 3) add("kp-psi+" + kp2, [&, kp2] { return run_kp({Variant::psi, kp2, 1}, even.curve, even_d[0], cfg); });
  for (std::size_t k = 0; k < roots_d.size(); ++k) {
    add("bridge", [&, k] { return run_bridge(roots.curve, roots_d[k], cfg, roots.roots, false); });
  }
  add("bridge-a0", [&] { return run_bridge(roots.curve, roots_d[0], cfg, roots.roots, true); });

  const int threads = o.threads > 0 ? o.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto results = run_tasks(tasks, threads);

  Json r = report_head("suite", o);
  r["config"]["divisors_per_check"] = count;
  r["fixtures"] = {{"even", curve_json(even.curve)}, {"odd", curve_json(odd.curve)},
                   {"rational_roots", curve_json(roots.curve, roots.roots)}};
  Json list = Json::array();
  int passed = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    Json item;
    item["task"] = tasks[i].name;
    if (results[i].first) {
      const IdentityReport& rep = *results[i].first;
      passed += rep.passed() ? 1 : 0;
      const Json body = tasks[i].name.rfind("kp-", 0) == 0 ? kp_result(rep, o.timings) : report_json(rep, o.timings);
      for (const auto& [k, v] : body.items()) item[k] = v;
    } else {
      item["verdict"] = "error";
      item["error"] = results[i].second;
    }
    list.push_back(item);
  }
  r["results"] = list;
  r["summary"] = {{"checks", tasks.size()}, {"passed", passed}};
  return finish(r, passed == static_cast<int>(tasks.size()), o, out);
}

int cmd_gen_fixture(const Options& o, std::ostream& out) {
  if (o.genus < 1) throw ParseError("--genus is required");
  std::set<Constraint> cs;
  for (const auto& name : o.constraints) cs.insert(parse_constraint(name));
  Model model = Model::even;
  if (o.model == "odd") {
    model = Model::odd;
  } else if (o.model.empty() && (cs.count(Constraint::lambda_top_neg3_square) || cs.count(Constraint::lambda2_square))) {
    model = Model::odd;
  } else if (!o.model.empty() && o.model != "even") {
    throw ParseError("--model must be odd or even");
  }
  const Fixture fx = auto_fixture(model, o.genus, cs, o.seed);
  validate(fx.curve);
  const int count = o.count > 0 ? o.count : 1;
  const auto divisors = draw_divisors(fx, count, o.seed);
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const Json& j) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + (dir / name).string() + "'");
    f << j.dump(2) << "\n";
    return name;
  };
  Json files = Json::array();
  files.push_back(write("curve.json", curve_json(fx.curve, fx.roots)));
  for (int k = 0; k < count; ++k) {
    files.push_back(write(count == 1 ? "divisor.json" : "divisor_" + std::to_string(k + 1) + ".json",
                          divisor_json(divisors[k])));
  }
  Options echo = o;
  echo.out.clear();
  Json r = report_head("gen-fixture", o);
  Json names = Json::array();
  for (Constraint c : cs) names.push_back(constraint_name(c));
  r["config"]["model"] = model_name(model);
  r["config"]["constraints"] = names;
  r["files"] = files;
  return finish(r, true, echo, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact verification of hyperelliptic KP solutions and the identities behind them", "hyperkp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* s) {
    s->add_option("--mode", o.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
    s->add_option("--precision", o.precision, "working precision in bits (numeric mode)");
    s->add_option("--jet-order", o.jet_order, "truncation order of the flow jets")->check(CLI::Range(1, 8));
    s->add_option("--seed", o.seed, "seed for generated fixtures and sample points");
    s->add_option("--out", o.out, "write the report here instead of stdout");
    s->add_flag("--timings", o.timings, "include elapsed times (breaks byte-identical reports)");
  };
  auto curve_opt = [&](CLI::App* s) { s->add_option("--curve", o.curve, "curve JSON file"); };
  auto divisor_opt = [&](CLI::App* s) { s->add_option("--divisor", o.divisor, "divisor JSON file"); };

  auto* validate_cmd = app.add_subcommand("validate-curve", "check a curve is non-singular and weight-homogeneous");
  common(validate_cmd);
  curve_opt(validate_cmd);
  divisor_opt(validate_cmd);

  auto* eval_cmd = app.add_subcommand("eval-p", "P-matrix (even) or wp-matrix (odd) at a divisor");
  common(eval_cmd);
  curve_opt(eval_cmd);
  divisor_opt(eval_cmd);

  auto* jet_cmd = app.add_subcommand("jet-eval", "flow a divisor and print jet coefficients");
  common(jet_cmd);
  curve_opt(jet_cmd);
  divisor_opt(jet_cmd);
  jet_cmd->add_option("--flows", o.flows, "derivation suffixes for t1, t2, t3")->delimiter(',')->expected(1, 3);

  auto* kp_cmd = app.add_subcommand("kp-residual", "KP residual jet of psi, phi or upsilon");
  common(kp_cmd);
  curve_opt(kp_cmd);
  divisor_opt(kp_cmd);
  kp_cmd->add_option("--variant", o.variant)->check(CLI::IsMember({"psi", "phi", "upsilon"}));
  kp_cmd->add_option("--kp2", o.kp2, "KP-II transform")->check(CLI::IsMember({"none", "sqrt-1", "xi8"}));
  kp_cmd->add_option("--branch", o.branch, "sign of the square roots in the constants")->check(CLI::IsMember({1, -1}));

  auto* id_cmd = app.add_subcommand("check-identity", "one identity on a given or generated fixture");
  common(id_cmd);
  curve_opt(id_cmd);
  divisor_opt(id_cmd);
  id_cmd->add_option("--id", o.id, "identity id");
  id_cmd->add_option("--genus", o.genus);
  id_cmd->add_option("--count", o.count, "divisors to draw (default 2)");

  auto* bridge_cmd = app.add_subcommand("bridge-check", "even/odd model bridge relations");
  common(bridge_cmd);
  curve_opt(bridge_cmd);
  divisor_opt(bridge_cmd);
  bridge_cmd->add_option("--genus", o.genus, "generate a rational-root fixture when no curve is given");
  bridge_cmd->add_flag("--a0", o.a0, "translate the branch point to 0 first");

  auto* suite_cmd = app.add_subcommand("suite", "every check on generated fixtures");
  common(suite_cmd);
  suite_cmd->add_option("--genus", o.genus)->required();
  suite_cmd->add_option("--threads", o.threads, "worker threads (default: hardware concurrency)");
  suite_cmd->add_option("--count", o.count, "divisors per check (default 2)");

  auto* gen_cmd = app.add_subcommand("gen-fixture", "write curve.json and divisor.json into --out");
  common(gen_cmd);
  gen_cmd->add_option("--genus", o.genus)->required();
  gen_cmd->add_option("--model", o.model, "odd or even (default from the constraints)");
  gen_cmd->add_option("--constraints", o.constraints, "comma-separated constraint names")->delimiter(',');
  gen_cmd->add_option("--count", o.count, "divisors to write (default 1)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out, err);
    if (*eval_cmd) return cmd_eval_p(o, out);
    if (*jet_cmd) return cmd_jet_eval(o, out);
    if (*kp_cmd) return cmd_kp(o, out);
    if (*id_cmd) return cmd_check_identity(o, out);
    if (*bridge_cmd) return cmd_bridge(o, out);
    if (*suite_cmd) return cmd_suite(o, out);
    if (*gen_cmd) return cmd_gen_fixture(o, out);
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitFail;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModeError& e) {
    err << "mode error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hyperkp

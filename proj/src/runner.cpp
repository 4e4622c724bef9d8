#include "hyperkp/runner.hpp"

#include <chrono>
#include <set>

#include "hyperkp/baker.hpp"
#include "hyperkp/bridge.hpp"
#include "hyperkp/divisors.hpp"
#include "hyperkp/jet_flows.hpp"

namespace hyperkp {
namespace {

using GR = GaussianRational;
using BF = BigFloatComplex;

// Calls fn(curve, divisor) over Q(i)/étale scalars or over BigFloatComplex.
template <class Fn>
IdentityReport dispatch(const Curve<GR>& curve, const DivisorSpec& spec, const RunConfig& cfg, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  IdentityReport r;
  if (cfg.numeric) {
    if (cfg.precision < BF::kMinPrecision) {
      throw PreconditionError("numeric mode needs --precision >= " + std::to_string(BF::kMinPrecision));
    }
    const auto c = numeric_curve(curve, cfg.precision);
    const auto d = numeric_divisor(curve, spec, cfg.precision);
    validate_positions(c, d.x);
    r = fn(c, d);
  } else {
    r = with_exact_divisor(curve, spec, [&](const auto& d) {
      validate_divisor(curve, d);
      return fn(curve, d);
    });
  }
  r.divisor = describe(spec);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void append(IdentityReport& into, const IdentityReport& part) {
  into.entries.insert(into.entries.end(), part.entries.begin(), part.entries.end());
  into.max_relative = std::max(into.max_relative, part.max_relative);
  into.max_abs = std::max(into.max_abs, part.max_abs);
}

// Three configurations of four distinct rationals.
std::vector<std::array<GR, 4>> e_configurations(std::uint64_t seed) {
  FixtureRng rng(seed);
  std::vector<std::array<GR, 4>> out;
  while (out.size() < 3) {
    std::set<mpq_class> seen;
    std::array<GR, 4> e;
    for (auto& v : e) {
      mpq_class q;
      do q = rng.rational(kFixtureHeight);
      while (seen.count(q));
      seen.insert(q);
      v = GR(q);
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace

IdentityReport run_identity(const std::string& id, const Curve<GR>& curve, const DivisorSpec& divisor,
                            const RunConfig& cfg) {
  const Model want = identity_model(id);
  if (curve.model() != want) {
    throw PreconditionError(id + " is checked on the " + model_name(want) + " model, got a " +
                            model_name(curve.model()) + " curve");
  }
  return dispatch(curve, divisor, cfg, [&](const auto& c, const auto& d) {
    using S = std::decay_t<decltype(d.x[0])>;
    const int g = c.genus();
    auto done = [&](const Defects<S>& defects) { return summarize(id, c.model(), g, "", defects, cfg.precision); };
    if (id == "h-inversion") return done(check_h_inversion(p_matrix_odd(c, d), d.x));
    const DerivativeTensor<S> t = derivative_tensor(c, d);
    if (id == "p-third-relation") return done(check_P_third_relation(t, c));
    if (id == "suffix-symmetry") return done(check_suffix_symmetry(t));
    if (id == "wp-family") return done(check_wp_family(t, c));
    if (id == "wp-quartic-top") return done(Defects<S>{check_wp_quartic_top(t, c)});
    Defects<S> out;
    for (const auto& e : e_configurations(cfg.seed)) {
      std::array<S, 4> es;
      for (int k = 0; k < 4; ++k) es[k] = lift(e[k], d.x[0]);
      out.push_back(check_quartic_baker(t, c, es));
    }
    return done(out);
  });
}

IdentityReport run_kp(const KPOptions& opts, const Curve<GR>& curve, const DivisorSpec& divisor, const RunConfig& cfg) {
  if (opts.kp2 != "none" && opts.kp2 != "sqrt-1" && opts.kp2 != "xi8") {
    throw ParseError("--kp2 must be sqrt-1 or xi8");
  }
  std::string id = "kp-" + variant_name(opts.variant);
  if (opts.kp2 != "none") id += "+" + opts.kp2;
  return dispatch(curve, divisor, cfg, [&](const auto& c, const auto& d) {
    using C = std::decay_t<decltype(c.coefficient(0))>;
    using S = std::decay_t<decltype(d.x[0])>;
    KPSolutionSpec<C> spec = make_spec(opts.variant, c, opts.branch);
    if (opts.kp2 == "sqrt-1") spec = sqrt_minus_one_transform(std::move(spec));
    if (opts.kp2 == "xi8") {
      if constexpr (std::is_same_v<C, BF>) {
        spec = xi8_transform(std::move(spec), BF::primitive_eighth_root(cfg.precision));
      } else {
        throw ModeError("the xi8 transform needs a primitive 8th root of unity; rerun with --mode numeric");
      }
    }
    const KPResidual<S> res = kp_residual(spec, c, d, cfg.jet_order);
    IdentityReport r;
    r.id = id;
    r.model = c.model();
    r.genus = c.genus();
    r.exact = is_exact_v<S>;
    for (const auto& e : jet_monomials(cfg.jet_order - 4)) {
      const S v = res.residual.coeff(e);
      IdentityEntry entry;
      entry.label = std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]);
      entry.weight = 0;
      if constexpr (is_exact_v<S>) {
        entry.zero = is_zero(v);
        entry.defect = v.to_string();
      } else {
        entry.relative = magnitude(v) / res.scale;
        entry.zero = entry.relative <= numeric_threshold(cfg.precision);
        entry.defect = v.to_string(6);
        r.max_relative = std::max(r.max_relative, entry.relative);
        r.max_abs = std::max(r.max_abs, magnitude(v));
      }
      r.entries.push_back(std::move(entry));
    }
    return r;
  });
}

Curve<GR> translate_to_branch_point(const Curve<GR>& even, DivisorSpec* divisor, std::vector<GR>* roots) {
  const GR a = even.require_branch_point();
  if (divisor) {
    for (auto& p : divisor->points) p.x -= a;
  }
  if (roots) {
    for (auto& r : *roots) r -= a;
  }
  return shift_curve(even, a);
}

IdentityReport run_bridge(const Curve<GR>& even, const DivisorSpec& divisor, const RunConfig& cfg,
                          const std::vector<GR>& roots, bool a0) {
  if (even.model() != Model::even) throw PreconditionError("bridge-check needs an even-model curve");
  even.require_branch_point();
  Curve<GR> curve = even;
  DivisorSpec spec = divisor;
  std::vector<GR> rts = roots;
  if (a0) curve = translate_to_branch_point(even, &spec, &rts);
  return dispatch(curve, spec, cfg, [&](const auto& c, const auto& d) {
    using C = std::decay_t<decltype(c.coefficient(0))>;
    const C one = lift(GR(1), c.coefficient(0));
    const BridgeParams<C> b = standard_bridge(c, one);
    std::vector<C> croots;
    for (const auto& r : rts) croots.push_back(lift(r, one));
    std::vector<C> xs;
    for (long k = 1; k <= 3; ++k) xs.push_back(b.a + lift(GR(mpq_class(2 * k + 1, 2)), one));
    const int g = c.genus();
    IdentityReport r = summarize("bridge", Model::even, g, "", bridge_curve_defects(c, b, rts.empty() ? nullptr : &croots),
                                 cfg.precision);
    append(r, summarize("bridge", Model::even, g, "", pullback_defects(b, xs), cfg.precision));
    append(r, summarize("bridge", Model::even, g, "", bridge_relations(c, b, d), cfg.precision));
    if (a0) r.id = "bridge-a0";
    return r;
  });
}

IdentityReport run_structural(const Curve<GR>& curve, const DivisorSpec& divisor, const RunConfig& cfg) {
  return dispatch(curve, divisor, cfg, [&](const auto& c, const auto& d) {
    using S = std::decay_t<decltype(d.x[0])>;
    using C = std::decay_t<decltype(c.coefficient(0))>;
    const int g = c.genus();
    Defects<S> out;
    const auto m = duality_matrix(c, d.x, d.y);
    for (int i = 0; i < g; ++i) {
      for (int k = 0; k < g; ++k) {
        out.push_back({detail::suffix_label("duality", {i + 1, k + 1}), m[i][k], S(i == k ? 1L : 0L), 0});
      }
    }
    const auto sufs = c.rules().function_suffixes();
    for (int a = 0; a < g; ++a) {
      for (int b = a + 1; b < g; ++b) {
        auto ab = propagate(c, d, single_suffix_directions<C>(c.model(), {sufs[a], sufs[b]}), 2);
        auto ba = propagate(c, d, single_suffix_directions<C>(c.model(), {sufs[b], sufs[a]}), 2);
        for (int j = 0; j < g; ++j) {
          const std::string tag = detail::suffix_label("commute", {sufs[a], sufs[b], j + 1});
          out.push_back({tag + "_x", ab.x[j].coeff(1, 1, 0), ba.x[j].coeff(1, 1, 0), 0});
          out.push_back({tag + "_y", ab.y[j].coeff(1, 1, 0), ba.y[j].coeff(1, 1, 0), 0});
        }
      }
    }
    std::vector<int> flow(sufs.begin(), sufs.begin() + std::min(g, 3));
    const auto jet = propagate(c, d, single_suffix_directions<C>(c.model(), flow), 3);
    for (int j = 0; j < g; ++j) {
      const auto y2 = jet.y[j] * jet.y[j];
      const auto nx = c.eval(jet.x[j]).first;
      for (const auto& e : jet_monomials(3)) {
        out.push_back({"curve_" + std::to_string(j + 1) + "_" + std::to_string(e[0]) + std::to_string(e[1]) +
                           std::to_string(e[2]),
                       y2.coeff(e), nx.coeff(e), 0});
      }
    }
    return summarize("structural-guards", c.model(), g, "", out, cfg.precision);
  });
}

}  // namespace hyperkp

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperkp/curve.hpp"
#include "hyperkp/error.hpp"
#include "hyperkp/identities.hpp"
#include "hyperkp/jet_flows.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

enum class Variant { psi, phi, upsilon };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& name);

// Square roots inside the coefficient field. Exact: the root with non-negative
// real part (ModeError when none exists in Q(i)); numeric: principal branch.
inline GaussianRational field_sqrt(const GaussianRational& v) {
  auto r = exact_sqrt(v);
  if (!r) throw ModeError("sqrt(" + v.to_string() + ") is not in Q(i); rerun with --mode numeric");
  return *r;
}
inline BigFloatComplex field_sqrt(const BigFloatComplex& v) { return v.sqrt(); }

template <class C>
struct NamedConstant {
  std::string name;
  C value;
  int weight;  // scaling exponent under coefficient_k -> s^k coefficient_k
};

// Φ(t1,t2,t3) = value_scale * P_{s,s}(flowed divisor) + value_shift, with
// P the even-model 𝒫 or odd-model ℘. sigma = +1 checks KP-I
// ∂1(∂3Φ + 6Φ∂1Φ + ∂1³Φ) = ∂2²Φ; sigma = -1 checks KP-II (sign of ∂2²Φ flipped).
template <class C>
struct KPSolutionSpec {
  Variant variant = Variant::psi;
  Model model = Model::even;
  int genus = 3;
  FlowDirections<C> directions;
  int value_suffix = 2;
  C value_scale;
  C value_shift;
  int sigma = 1;
  int value_weight = 4;
  std::vector<NamedConstant<C>> constants;
  std::string transform = "none";
};

template <class C>
const C& constant_named(const KPSolutionSpec<C>& spec, const std::string& name) {
  for (const auto& c : spec.constants) {
    if (c.name == name) return c.value;
  }
  throw ParameterError("spec has no constant '" + name + "'");
}

// branch = -1 negates every square root (β, γ flip together, etc.).
template <class C>
KPSolutionSpec<C> make_spec(Variant variant, const Curve<C>& curve, int branch = 1) {
  const int g = curve.genus();
  KPSolutionSpec<C> spec;
  spec.variant = variant;
  spec.model = curve.model();
  spec.genus = g;
  spec.directions.model = curve.model();
  const C two(2), three(3), sixteen(16), eighteen(18);
  const C two_thirds = lift(GaussianRational(mpq_class(2, 3)), curve.coefficient(0));
  auto root = [&](const C& v) {
    C r = field_sqrt(v);
    return branch < 0 ? -r : r;
  };
  auto c = [&](int k) { return curve.coefficient(k); };
  switch (variant) {
    case Variant::psi: {
      if (curve.model() != Model::even) throw PreconditionError("psi is defined on the even model");
      if (g < 3) throw PreconditionError("psi: g >= 3 required");
      if (is_zero(c(0))) throw PreconditionError("psi: nu_0 != 0 required");
      C r = root(-(three * c(0)));
      C alpha = -(sixteen * c(0));
      C beta = two * r;
      C gamma = c(2) * inverse(r);
      C delta = two_thirds * c(4) + c(2) * c(2) * inverse(eighteen * c(0));
      spec.constants = {{"alpha", alpha, 0}, {"beta", beta, 0}, {"gamma", gamma, 2}, {"delta", delta, 4}};
      spec.directions.dirs = {{{{2, C(1)}}}, {{{4, beta}, {2, gamma}}}, {{{6, alpha}}}};
      spec.value_suffix = 2;
      spec.value_scale = C(-2);
      spec.value_shift = -delta;
      spec.value_weight = 4;
      break;
    }
    case Variant::phi: {
      if (curve.model() != Model::odd) throw PreconditionError("phi is defined on the odd model");
      if (g < 3) throw PreconditionError("phi: g >= 3 required");
      const int top = 4 * g + 2;
      if (is_zero(c(top))) throw PreconditionError("phi: lambda_{4g+2} != 0 required");
      C r = root(-(three * c(top)));
      C cc = -(sixteen * c(top));
      C dd = two * r;
      C ee = c(4 * g) * inverse(r);
      C ff = two_thirds * c(4 * g - 2) + c(4 * g) * c(4 * g) * inverse(eighteen * c(top));
      spec.constants = {{"c", cc, 4 * g + 2}, {"d", dd, 2 * g + 1}, {"e", ee, 2 * g - 1}, {"f", ff, 4 * g - 2}};
      spec.directions.dirs = {{{{2 * g - 1, C(1)}}}, {{{2 * g - 3, dd}, {2 * g - 1, ee}}}, {{{2 * g - 5, cc}}}};
      spec.value_suffix = 2 * g - 1;
      spec.value_scale = C(-2);
      spec.value_shift = -ff;
      spec.value_weight = 4 * g - 2;
      break;
    }
    case Variant::upsilon: {
      if (curve.model() != Model::odd) throw PreconditionError("upsilon is defined on the odd model");
      if (g < 2) throw PreconditionError("upsilon: g >= 2 required");
      C two_root = two * root(c(2));
      spec.constants = {{"2sqrt(lambda_2)", two_root, 1}, {"-4", C(-4), 0}};
      spec.directions.dirs = {{{{1, C(1)}}}, {{{1, two_root}}}, {{{3, C(-4)}}}};
      spec.value_suffix = 1;
      spec.value_scale = C(-2);
      spec.value_shift = C();
      spec.value_weight = 2;
      break;
    }
  }
  return spec;
}

// Φ(t1, √-1 t2, t3): t2-direction times i, KP-I <-> KP-II.
template <class C>
KPSolutionSpec<C> sqrt_minus_one_transform(KPSolutionSpec<C> spec) {
  const C i = lift(GaussianRational::imaginary_unit(), spec.value_scale);
  for (auto& [suffix, gamma] : spec.directions.dirs.at(1).terms) gamma = gamma * i;
  spec.sigma = -spec.sigma;
  spec.transform = spec.transform == "none" ? "sqrt-1" : spec.transform + "+sqrt-1";
  return spec;
}

// ξ² Φ(ξ t1, t2, ξ³ t3) with ξ a primitive 8th root of unity.
template <class C>
KPSolutionSpec<C> xi8_transform(KPSolutionSpec<C> spec, const C& xi) {
  const C xi2 = xi * xi;
  const C xi3 = xi2 * xi;
  for (auto& [suffix, gamma] : spec.directions.dirs.at(0).terms) gamma = gamma * xi;
  for (auto& [suffix, gamma] : spec.directions.dirs.at(2).terms) gamma = gamma * xi3;
  spec.value_scale = spec.value_scale * xi2;
  spec.value_shift = spec.value_shift * xi2;
  spec.sigma = -spec.sigma;
  spec.transform = spec.transform == "none" ? "xi8" : spec.transform + "+xi8";
  return spec;
}

// Each constant of the scaled curve against s^{weight} times the original,
// and the solution value at the scaled divisor against s^{value weight} times
// the value at d. s must be a positive rational.
template <class S, class C>
Defects<S> check_weight_grading(Variant variant, const Curve<C>& curve, const SymDivisor<S>& d, const C& s) {
  const KPSolutionSpec<C> spec = make_spec(variant, curve);
  const Curve<C> scaled = scale_curve(curve, s);
  const KPSolutionSpec<C> spec_s = make_spec(variant, scaled);
  Defects<S> out;
  for (const auto& c : spec.constants) {
    C expected = c.value;
    for (int k = 0; k < c.weight; ++k) expected = expected * s;
    out.push_back({c.name, embed<S>(constant_named(spec_s, c.name)), embed<S>(expected), c.weight});
  }
  const SymDivisor<S> ds = scale_divisor(curve, d, s);
  const int v = spec.value_suffix;
  S base = p_matrix(curve, d.x, d.y).at(v, v) * embed<S>(spec.value_scale) + embed<S>(spec.value_shift);
  S moved = p_matrix(scaled, ds.x, ds.y).at(v, v) * embed<S>(spec_s.value_scale) + embed<S>(spec_s.value_shift);
  for (int k = 0; k < spec.value_weight; ++k) base = base * embed<S>(s);
  out.push_back({"value", std::move(moved), std::move(base), spec.value_weight});
  return out;
}

template <class S>
struct KPResidual {
  Jet3<S> phi;       // the solution jet
  Jet3<S> residual;  // valid to order (jet order - 4)
  // Largest individual term magnitude, the scale for numeric verdicts.
  double scale = 0.0;
};

// LHS - σ·∂2²Φ with LHS = ∂1(∂3Φ + 6Φ∂1Φ + ∂1³Φ); each term truncated to the
// order where all four derivatives are exact.
template <class S, class F, class C>
KPResidual<S> kp_residual(const KPSolutionSpec<C>& spec, const Curve<F>& curve, const SymDivisor<S>& d, int order = 4) {
  if (order < 4) throw ParameterError("KP residual needs jet order >= 4");
  if (curve.model() != spec.model || curve.genus() != spec.genus) throw ParameterError("spec built for another curve");
  using J = Jet3<S>;
  J p = directional_value(curve, d, spec.directions, order, spec.value_suffix, spec.value_suffix);
  J phi = p * embed<J>(spec.value_scale) + embed<J>(spec.value_shift);
  const int n3 = order - 3;
  J d1 = phi.derivative(0);
  J d111 = d1.derivative(0).derivative(0);
  J d3 = phi.derivative(2).truncated(n3);
  J nonlinear = (phi.truncated(n3) * d1.truncated(n3)) * J(6L);
  J inner = d3 + nonlinear + d111;
  J lhs = inner.derivative(0);
  J d22 = phi.derivative(1).derivative(1).truncated(order - 4);
  J d1111 = d111.derivative(0);
  J residual = spec.sigma > 0 ? lhs - d22 : lhs + d22;
  KPResidual<S> out{phi, residual, 0.0};
  if constexpr (!is_exact_v<S>) {
    out.scale = std::max({magnitude(d3.derivative(0)), magnitude(nonlinear.derivative(0)), magnitude(d1111),
                          magnitude(d22), 1.0});
  } else {
    out.scale = 1.0;
  }
  return out;
}

}  // namespace hyperkp

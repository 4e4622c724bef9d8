#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperkp/baker.hpp"
#include "hyperkp/curve.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

// Σ γ_k ∂_{v_k} (even) or Σ γ_k ∂_{u_k} (odd).
template <class C>
struct FlowDirection {
  std::vector<std::pair<int, C>> terms;
};

// Directions attached to the formal parameters t1, t2, t3 (in that order).
template <class C>
struct FlowDirections {
  Model model = Model::even;
  std::vector<FlowDirection<C>> dirs;
};

template <class S>
struct DivisorJet {
  std::vector<Jet3<S>> x;
  std::vector<Jet3<S>> y;
};

template <class S>
S reciprocal_of(long k, const S& like) {
  return lift(GaussianRational(mpq_class(1, k)), like);
}

// Sum of the derivation fields in one direction, evaluated at jets.
template <class T, class F, class C>
FieldValues<T> direction_field(const Curve<F>& curve, const std::vector<T>& xs, const std::vector<T>& ys,
                               const FlowDirection<C>& dir) {
  const int g = curve.genus();
  FieldValues<T> out{std::vector<T>(g), std::vector<T>(g)};
  for (const auto& [suffix, gamma] : dir.terms) {
    if (is_zero(gamma)) continue;
    FieldValues<T> f = derivation_field(curve, xs, ys, suffix);
    T coef = embed<T>(gamma);
    for (int j = 0; j < g; ++j) {
      out.dx[j] += f.dx[j] * coef;
      out.dy[j] += f.dy[j] * coef;
    }
  }
  return out;
}

// Solves dx_j/dt_k = field_k(x, y), dy_j/dt_k likewise, degree by degree: the
// coefficient of t^α comes from the (α - e_k) coefficient of field_k, with k
// the first parameter present in α.
template <class S, class F, class C>
DivisorJet<S> propagate(const Curve<F>& curve, const SymDivisor<S>& d, const FlowDirections<C>& dirs, int order) {
  if (order < 1) throw ParameterError("jet order must be at least 1");
  if (dirs.dirs.empty() || dirs.dirs.size() > 3) throw ParameterError("between one and three flow directions required");
  if (dirs.model != curve.model()) throw ParameterError("flow directions built for the other model");
  const int g = curve.genus();
  validate_positions(curve, d.x);
  DivisorJet<S> jet;
  for (int j = 0; j < g; ++j) {
    jet.x.push_back(Jet3<S>::constant(d.x[j], order));
    jet.y.push_back(Jet3<S>::constant(d.y[j], order));
  }
  const auto& mons = jet_monomials(order);
  for (int n = 1; n <= order; ++n) {
    std::vector<Jet3<S>> xt, yt;
    for (int j = 0; j < g; ++j) {
      xt.push_back(jet.x[j].truncated(n - 1));
      yt.push_back(jet.y[j].truncated(n - 1));
    }
    std::vector<FieldValues<Jet3<S>>> fields;
    for (const auto& dir : dirs.dirs) fields.push_back(direction_field(curve, xt, yt, dir));
    for (std::size_t m = jet_size(n - 1); m < jet_size(n); ++m) {
      const Exponent3& alpha = mons[m];
      int k = 0;
      while (alpha[k] == 0) ++k;
      if (k >= static_cast<int>(fields.size())) continue;
      Exponent3 prev = alpha;
      prev[k] -= 1;
      for (int j = 0; j < g; ++j) {
        S cx = fields[k].dx[j].coeff(prev);
        S cy = fields[k].dy[j].coeff(prev);
        if (alpha[k] > 1) {
          cx = cx * reciprocal_of(alpha[k], d.x[j]);
          cy = cy * reciprocal_of(alpha[k], d.x[j]);
        }
        jet.x[j].set_coeff(alpha, std::move(cx));
        jet.y[j].set_coeff(alpha, std::move(cy));
      }
    }
  }
  return jet;
}

// y_j(t)^2 - curve(x_j(t)) for every point; all zero for a consistent jet.
template <class S, class F>
std::vector<Jet3<S>> curve_relation_defect(const Curve<F>& curve, const DivisorJet<S>& jet) {
  std::vector<Jet3<S>> out;
  for (std::size_t j = 0; j < jet.x.size(); ++j) out.push_back(jet.y[j] * jet.y[j] - curve.eval(jet.x[j]).first);
  return out;
}

template <class S, class F>
PMatrix<Jet3<S>> pmatrix_jet(const Curve<F>& curve, const DivisorJet<S>& jet) {
  return p_matrix(curve, jet.x, jet.y);
}

// Jet of one P/℘ entry along the flows; coefficient of t^α times α! is the
// iterated derivative.
template <class S, class F, class C>
Jet3<S> directional_value(const Curve<F>& curve, const SymDivisor<S>& d, const FlowDirections<C>& dirs, int order,
                          int s, int t) {
  return pmatrix_jet(curve, propagate(curve, d, dirs, order)).at(s, t);
}

template <class C>
FlowDirections<C> single_suffix_directions(Model model, const std::vector<int>& suffixes) {
  FlowDirections<C> out;
  out.model = model;
  for (int s : suffixes) out.dirs.push_back({{{s, C(1)}}});
  return out;
}

// All P/℘ values with up to two derivations at one divisor, as computed by
// two-direction jet runs of order 2:
//   third(i,j,k)    = ∂_k P_{i,j}
//   fourth(i,j,k,l) = ∂_k ∂_l P_{i,j}
// Suffixes outside the model's range read as zero.
template <class S>
class DerivativeTensor {
 public:
  DerivativeTensor() = default;
  DerivativeTensor(SuffixRules rules, PMatrix<S> base) : rules_(rules), base_(std::move(base)) {}

  const SuffixRules& rules() const { return rules_; }
  const PMatrix<S>& base() const { return base_; }

  S p(int i, int j) const { return base_.at(i, j); }
  S third(int i, int j, int k) const {
    if (!all_valid({i, j, k})) return S();
    return third_.at({i, j, k});
  }
  S fourth(int i, int j, int k, int l) const {
    if (!all_valid({i, j, k, l})) return S();
    return fourth_.at({i, j, k, l});
  }

  void set_base(PMatrix<S> base) { base_ = std::move(base); }
  void set_third(int i, int j, int k, S v) { third_[{i, j, k}] = std::move(v); }
  void set_fourth(int i, int j, int k, int l, S v) { fourth_[{i, j, k, l}] = std::move(v); }
  bool has_fourth(int i, int j, int k, int l) const { return fourth_.count({i, j, k, l}) > 0; }

 private:
  bool all_valid(std::initializer_list<int> s) const {
    for (int v : s) {
      if (!rules_.valid_function_suffix(v)) return false;
    }
    return true;
  }

  SuffixRules rules_{Model::even, 1};
  PMatrix<S> base_;
  std::map<std::array<int, 3>, S> third_;
  std::map<std::array<int, 4>, S> fourth_;
};

template <class S, class F>
DerivativeTensor<S> derivative_tensor(const Curve<F>& curve, const SymDivisor<S>& d) {
  const SuffixRules rules = curve.rules();
  const std::vector<int> sufs = rules.function_suffixes();
  const int g = curve.genus();
  DerivativeTensor<S> tensor(rules, PMatrix<S>());
  auto record = [&](const PMatrix<Jet3<S>>& pj, int k, int l) {
    for (int i : sufs) {
      for (int j : sufs) {
        Jet3<S> v = pj.at(i, j);
        tensor.set_third(i, j, k, v.coeff(1, 0, 0));
        tensor.set_fourth(i, j, k, k, v.coeff(2, 0, 0) + v.coeff(2, 0, 0));
        if (l != k) {
          tensor.set_third(i, j, l, v.coeff(0, 1, 0));
          tensor.set_fourth(i, j, l, l, v.coeff(0, 2, 0) + v.coeff(0, 2, 0));
          tensor.set_fourth(i, j, k, l, v.coeff(1, 1, 0));
          tensor.set_fourth(i, j, l, k, v.coeff(1, 1, 0));
        }
      }
    }
  };
  PMatrix<S> base;
  bool have_base = false;
  if (g == 1) {
    auto pj = pmatrix_jet(curve, propagate(curve, d, single_suffix_directions<S>(rules.model, {sufs[0]}), 2));
    record(pj, sufs[0], sufs[0]);
    base = pj.template map<S>([](const Jet3<S>& v) { return v.constant_term(); });
    have_base = true;
  }
  for (int a = 0; a < g; ++a) {
    for (int b = a + 1; b < g; ++b) {
      auto pj = pmatrix_jet(curve, propagate(curve, d, single_suffix_directions<S>(rules.model, {sufs[a], sufs[b]}), 2));
      if (!have_base) {
        base = pj.template map<S>([](const Jet3<S>& v) { return v.constant_term(); });
        have_base = true;
      }
      record(pj, sufs[a], sufs[b]);
    }
  }
  tensor.set_base(std::move(base));
  return tensor;
}

}  // namespace hyperkp

#pragma once

#include <string>
#include <vector>

#include "hyperkp/curve.hpp"
#include "hyperkp/error.hpp"
#include "hyperkp/poly.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

template <class T>
const auto& constant_part(const T& v) {
  if constexpr (is_jet_v<T>) {
    return v.constant_term();
  } else {
    return v;
  }
}

template <class T>
void require_zero_remainder(const BivarPoly<T>& r, const std::string& what) {
  if constexpr (is_exact_v<T>) {
    if (!r.is_zero_poly()) throw InternalConsistencyError("nonzero remainder dividing " + what);
  }
}
template <class T>
void require_zero_remainder(const std::vector<T>& r, const std::string& what) {
  if constexpr (is_exact_v<T>) {
    for (const auto& v : r) {
      if (!is_zero(v)) throw InternalConsistencyError("nonzero remainder dividing " + what);
    }
  }
}

// g x g matrix of P_{i,j} (even) or ℘_{i,j} (odd) values, addressed by suffix.
template <class T>
class PMatrix {
 public:
  PMatrix() = default;
  PMatrix(SuffixRules rules, std::vector<std::vector<T>> slots) : rules_(rules), m_(std::move(slots)) {}

  const SuffixRules& rules() const { return rules_; }
  Model model() const { return rules_.model; }
  int genus() const { return rules_.genus; }

  // Entry by suffixes; suffixes outside the model's range read as zero.
  T at(int s, int t) const {
    if (!rules_.valid_function_suffix(s) || !rules_.valid_function_suffix(t)) return T();
    return m_[rules_.slot(s)][rules_.slot(t)];
  }
  // Raw G-coefficient layout: slots(i, j) multiplies e1^i e2^j.
  const std::vector<std::vector<T>>& slots() const { return m_; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (!is_zero(m_[i][j] - m_[j][i])) return false;
      }
    }
    return true;
  }

  template <class U, class Fn>
  PMatrix<U> map(Fn&& fn) const {
    std::vector<std::vector<U>> out(m_.size());
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (const auto& v : m_[i]) out[i].push_back(fn(v));
    }
    return PMatrix<U>(rules_, std::move(out));
  }

  // "P_2_4" / "wp_1_3".
  static std::string key(Model model, int s, int t) {
    return std::string(model == Model::even ? "P_" : "wp_") + std::to_string(s) + "_" + std::to_string(t);
  }

 private:
  SuffixRules rules_{Model::even, 1};
  std::vector<std::vector<T>> m_;
};

// f(e1,e2) = Σ_{i=0}^{K} e1^i e2^i {2c_{T-4i} + c_{T-2-4i}(e1+e2)} with T the top
// coefficient suffix and K = g+1 (even) or g (odd).
template <class T, class F>
BivarPoly<T> pair_poly_f(const Curve<F>& curve) {
  const int g = curve.genus();
  const int top = curve.rules().top_coefficient();
  const int k_max = curve.model() == Model::even ? g + 1 : g;
  BivarPoly<T> f(g + 1, g + 1);
  for (int i = 0; i <= k_max; ++i) {
    T two_c = embed<T>(curve.coefficient(top - 4 * i));
    f.at(i, i) += two_c + two_c;
    T c = embed<T>(curve.coefficient(top - 2 - 4 * i));
    if (is_zero(c)) continue;
    f.at(i + 1, i) += c;
    f.at(i, i + 1) += c;
  }
  return f;
}

template <class T, class F>
Poly<T> curve_poly(const Curve<F>& curve) {
  std::vector<T> asc;
  for (auto it = curve.descending().rbegin(); it != curve.descending().rend(); ++it) asc.push_back(embed<T>(*it));
  return Poly<T>(std::move(asc));
}

// Roots of R: (a, x_1..x_g) on the even model, (X_1..X_g) on the odd model.
template <class T, class F>
std::vector<T> r_roots(const Curve<F>& curve, const std::vector<T>& xs) {
  std::vector<T> roots;
  if (curve.model() == Model::even) roots.push_back(embed<T>(curve.require_branch_point()));
  roots.insert(roots.end(), xs.begin(), xs.end());
  return roots;
}

// F = f R1 R2 + (e1-e2)^2 B^2 - N(e1) R2^2 - N(e2) R1^2 where
// B = Σ_i (y_i / R'(x_i)) A_i(e1) A_i(e2), A_i = R / (e - x_i), so that
// (e1-e2)^2 R1^2 R2^2 ∇^2 = (e1-e2)^2 B^2.
template <class T, class F>
BivarPoly<T> build_F(const Curve<F>& curve, const std::vector<T>& xs, const std::vector<T>& ys) {
  const int g = curve.genus();
  if (static_cast<int>(xs.size()) != g || static_cast<int>(ys.size()) != g) {
    throw ParameterError("divisor size does not match the genus");
  }
  const std::vector<T> roots = r_roots(curve, xs);
  const Poly<T> R = Poly<T>::from_roots(roots);
  const int offset = static_cast<int>(roots.size()) - g;

  BivarPoly<T> B;
  for (int i = 0; i < g; ++i) {
    T dR(1);
    for (int k = 0; k < static_cast<int>(roots.size()); ++k) {
      if (k == offset + i) continue;
      dR = dR * (xs[i] - roots[k]);
    }
    if (is_zero(constant_part(dR))) {
      throw SingularityError("R'(x_" + std::to_string(i + 1) + ") vanishes: divisor is not in generic position");
    }
    T w = ys[i] * inverse(dR);
    auto [A, rem] = R.divide_linear(xs[i]);
    B += BivarPoly<T>::outer(A, A).scaled(w);
  }

  const BivarPoly<T> RR = BivarPoly<T>::outer(R, R);
  const Poly<T> N = curve_poly<T>(curve);
  const Poly<T> R2 = R * R;
  BivarPoly<T> out = pair_poly_f<T>(curve) * RR;
  out += (B * B).times_diff_squared();
  out -= BivarPoly<T>::outer(N, R2);
  out -= BivarPoly<T>::outer(R2, N);
  return out;
}

// G = F / ((e1-e2)^2 R(e1) R(e2)), asserting every remainder vanishes.
template <class T>
BivarPoly<T> divide_to_G(const BivarPoly<T>& F, const Poly<T>& R, int genus) {
  auto [q1, r1] = F.divide_by_diff();
  require_zero_remainder(r1, "F by (e1 - e2)");
  auto [q2, r2] = q1.divide_by_diff();
  require_zero_remainder(r2, "F by (e1 - e2)^2");
  const int bound = F.deg1() - 2;
  if constexpr (is_exact_v<T>) {
    if (q2.effective_deg2() > bound) throw InternalConsistencyError("quotient F/(e1-e2)^2 exceeds degree bound");
  }
  BivarPoly<T> q = q2.resized(bound, bound);
  auto [q3, r3] = q.divide_monic_e1(R);
  require_zero_remainder(r3, "by R(e1)");
  auto [q4, r4] = q3.divide_monic_e2(R);
  require_zero_remainder(r4, "by R(e2)");
  if constexpr (is_exact_v<T>) {
    if (q4.effective_deg1() > genus - 1 || q4.effective_deg2() > genus - 1) {
      throw InternalConsistencyError("G exceeds degree g-1");
    }
  }
  return q4.resized(genus - 1, genus - 1);
}

template <class T, class F>
BivarPoly<T> build_G(const Curve<F>& curve, const std::vector<T>& xs, const std::vector<T>& ys) {
  if (curve.model() == Model::odd) {
    for (int j = 0; j < static_cast<int>(ys.size()); ++j) {
      if (is_zero(constant_part(ys[j]))) {
        throw SingularityError("Y_" + std::to_string(j + 1) + " = 0: odd-model divisor must avoid branch points");
      }
    }
  }
  const Poly<T> R = Poly<T>::from_roots(r_roots(curve, xs));
  return divide_to_G(build_F(curve, xs, ys), R, curve.genus());
}

template <class T, class F>
PMatrix<T> p_matrix(const Curve<F>& curve, const std::vector<T>& xs, const std::vector<T>& ys) {
  const int g = curve.genus();
  BivarPoly<T> G = build_G(curve, xs, ys);
  std::vector<std::vector<T>> slots(g, std::vector<T>(g));
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) slots[i][j] = G.coeff(i, j);
  }
  return PMatrix<T>(curve.rules(), std::move(slots));
}

template <class T, class F>
PMatrix<T> p_matrix_even(const Curve<F>& curve, const SymDivisor<T>& d) {
  if (curve.model() != Model::even) throw ParameterError("p_matrix_even needs the even model");
  return p_matrix(curve, d.x, d.y);
}

template <class T, class F>
PMatrix<T> p_matrix_odd(const Curve<F>& curve, const SymDivisor<T>& d) {
  if (curve.model() != Model::odd) throw ParameterError("p_matrix_odd needs the odd model");
  return p_matrix(curve, d.x, d.y);
}

// Coefficients of χ_g(x) = Π (x - x_j), descending: χ_k(x) uses the first k+1.
template <class T>
std::vector<T> chi_coefficients(const std::vector<T>& xs) {
  const auto asc = Poly<T>::from_roots(xs).coefficients();
  return std::vector<T>(asc.rbegin(), asc.rend());
}

template <class T>
T chi_eval(const std::vector<T>& chi, int k, const T& x) {
  T acc = chi[0];
  for (int m = 1; m <= k; ++m) acc = acc * x + chi[m];
  return acc;
}

// χ_g'(x_j) = Π_{i≠j} (x_j - x_i).
template <class T>
T chi_derivative_at(const std::vector<T>& xs, int j) {
  T p(1);
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
    if (i != j) p = p * (xs[j] - xs[i]);
  }
  return p;
}

template <class T>
struct FieldValues {
  std::vector<T> dx;
  std::vector<T> dy;
};

// Components of ∂_{v_s} (even, s = 2m) or ∂_{u_s} (odd, s = 2m-1) on the
// coordinates (x_j, y_j):
//   even: dx_j =  2 y_j χ_{m-1}(x_j)/χ_g'(x_j),  dy_j =  χ_{m-1}(x_j) N'(x_j)/χ_g'(x_j)
//   odd:  dx_j = -2 Y_j χ_{m-1}(X_j)/χ_g'(X_j),  dY_j = -χ_{m-1}(X_j) M'(X_j)/χ_g'(X_j)
template <class T, class F>
FieldValues<T> derivation_field(const Curve<F>& curve, const std::vector<T>& xs, const std::vector<T>& ys, int suffix) {
  const SuffixRules rules = curve.rules();
  if (!rules.valid_function_suffix(suffix)) {
    throw ParameterError("derivation suffix " + std::to_string(suffix) + " invalid for the " +
                         model_name(curve.model()) + " model of genus " + std::to_string(curve.genus()));
  }
  const int m = curve.model() == Model::even ? suffix / 2 : (suffix + 1) / 2;
  const std::vector<T> chi = chi_coefficients(xs);
  const int g = curve.genus();
  FieldValues<T> out;
  out.dx.resize(g);
  out.dy.resize(g);
  for (int j = 0; j < g; ++j) {
    T denom = chi_derivative_at(xs, j);
    if (is_zero(constant_part(denom))) {
      throw SingularityError("coincident divisor x-coordinates at point " + std::to_string(j + 1));
    }
    T ratio = chi_eval(chi, m - 1, xs[j]) * inverse(denom);
    if (curve.model() == Model::odd) ratio = -ratio;
    T two_y = ys[j] + ys[j];
    out.dx[j] = two_y * ratio;
    out.dy[j] = ratio * curve.eval(xs[j]).second;
  }
  return out;
}

// Holomorphic forms paired with the derivation fields at the divisor:
//   entry (i, m) = Σ_j x_j^{g-1-i} dx_j / (2 y_j)   (even, field 2(m+1))
//                = -Σ_j X_j^{g-1-i} dX_j / (2 Y_j)   (odd, field 2m+1)
// The identity matrix when the fields are dual to the forms.
template <class T, class F>
std::vector<std::vector<T>> duality_matrix(const Curve<F>& curve, const std::vector<T>& xs, const std::vector<T>& ys) {
  const int g = curve.genus();
  const std::vector<int> sufs = curve.rules().function_suffixes();
  std::vector<std::vector<T>> out(g, std::vector<T>(g));
  for (int m = 0; m < g; ++m) {
    FieldValues<T> f = derivation_field(curve, xs, ys, sufs[m]);
    for (int j = 0; j < g; ++j) {
      T y2 = ys[j] + ys[j];
      if (is_zero(constant_part(y2))) throw SingularityError("y_" + std::to_string(j + 1) + " = 0 in duality pairing");
      T w = f.dx[j] * inverse(y2);
      if (curve.model() == Model::odd) w = -w;
      T xp(1);
      for (int i = g - 1; i >= 0; --i) {
        out[i][m] += w * xp;
        xp = xp * xs[j];
      }
    }
  }
  return out;
}

// (fhat - f) / (e1 - e2)^2 for symmetric fhat agreeing with f to first order on
// the diagonal; returns the coefficient matrix of the quotient.
template <class T>
BivarPoly<T> decomposition_matrix(const BivarPoly<T>& fhat, const BivarPoly<T>& f) {
  BivarPoly<T> diff = fhat - f;
  auto [q1, r1] = diff.divide_by_diff();
  require_zero_remainder(r1, "f-difference by (e1 - e2)");
  auto [q2, r2] = q1.divide_by_diff();
  require_zero_remainder(r2, "f-difference by (e1 - e2)^2");
  const int bound = std::max(diff.deg1() - 2, 0);
  return q2.resized(bound, bound);
}

}  // namespace hyperkp

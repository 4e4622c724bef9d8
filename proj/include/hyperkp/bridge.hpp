#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperkp/baker.hpp"
#include "hyperkp/curve.hpp"
#include "hyperkp/error.hpp"
#include "hyperkp/identities.hpp"
#include "hyperkp/poly.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

// ζ: V -> C̃, (x, y) -> (𝔰/(x-a), 𝔱 y/(x-a)^{g+1}), with C̃: Y^2 = M̃(X).
template <class F>
struct BridgeParams {
  F a;
  F s;
  F t;
  Curve<F> odd;                     // C̃, coefficients λ̃
  std::vector<std::vector<F>> D;    // ᵗ(ζ*ω_1..ζ*ω_g) = D μ
};

template <class F>
F power(const F& v, int n) {
  F out(1L);
  for (int k = 0; k < n; ++k) out = out * v;
  return out;
}

// Taylor coefficients c_0, c_1, ... of p at x = a.
template <class F>
std::vector<F> taylor_at(const Poly<F>& p, const F& a) {
  std::vector<F> out;
  Poly<F> q = p;
  for (int k = 0; k <= p.degree(); ++k) {
    auto [quot, value] = q.divide_linear(a);
    out.push_back(value);
    q = quot;
  }
  return out;
}

// Descending coefficients of Π (X - 𝔰/(a_i - a)).
template <class F>
std::vector<F> m_tilde_from_roots(const F& s, const F& a, const std::vector<F>& roots) {
  std::vector<F> xs;
  for (const auto& r : roots) {
    if (is_zero(r - a)) throw PreconditionError("root list repeats the branch point");
    xs.push_back(s * inverse(r - a));
  }
  const auto asc = Poly<F>::from_roots(xs).coefficients();
  return std::vector<F>(asc.rbegin(), asc.rend());
}

// D_{ij} = (𝔰^{g+1-i}/𝔱) C(i-1, j-1) (-a)^{i-j} for j <= i.
template <class F>
std::vector<std::vector<F>> build_D(int genus, const F& a, const F& s, const F& t) {
  const F tinv = inverse(t);
  std::vector<std::vector<F>> D(genus, std::vector<F>(genus));
  for (int i = 0; i < genus; ++i) {
    const F lead = power(s, genus - i) * tinv;
    long binom = 1;
    for (int j = 0; j <= i; ++j) {
      D[i][j] = lead * F(binom) * power(-a, i - j);
      binom = binom * (i - j) / (j + 1);
    }
  }
  return D;
}

// λ̃_{2m} = 𝔱^2 c_{m+1} 𝔰^{m-1-2g} with c_k the Taylor coefficients of N at a.
template <class F>
BridgeParams<F> make_bridge(const Curve<F>& even, const F& s, const F& t) {
  if (even.model() != Model::even) throw PreconditionError("bridge starts from an even-model curve");
  const F a = even.require_branch_point();
  const int g = even.genus();
  if (is_zero(s) || is_zero(t)) throw PreconditionError("bridge needs s t != 0");
  const auto [Na, dNa] = even.eval(a);
  const F lhs = power(s, 2 * g + 1);
  const F rhs = t * t * dNa;
  if constexpr (is_exact_v<F>) {
    if (!is_zero(Na)) throw PreconditionError("branch point a is not a root of N");
    if (!is_zero(lhs - rhs)) throw PreconditionError("bridge constraint s^(2g+1) = t^2 N'(a) fails");
  } else {
    if (magnitude(lhs - rhs) > 1e-30 * std::max(1.0, magnitude(lhs))) {
      throw PreconditionError("bridge constraint s^(2g+1) = t^2 N'(a) fails");
    }
  }
  const std::vector<F> c = taylor_at(even.polynomial(), a);
  const F sinv = inverse(s);
  const F t2 = t * t;
  std::vector<F> lam;
  for (int m = 0; m <= 2 * g + 1; ++m) lam.push_back(t2 * c[m + 1] * power(sinv, 2 * g + 1 - m));
  return {a, s, t, Curve<F>(Model::odd, g, std::move(lam)), build_D(g, a, s, t)};
}

// 𝔰 = N'(a) w^2, 𝔱 = N'(a)^g w^{2g+1}.
template <class F>
BridgeParams<F> standard_bridge(const Curve<F>& even, const F& w) {
  const F dNa = even.eval(even.require_branch_point()).second;
  const int g = even.genus();
  return make_bridge(even, dNa * w * w, power(dNa, g) * power(w, 2 * g + 1));
}

template <class S, class F>
std::pair<S, S> zeta_map(const BridgeParams<F>& b, const S& x, const S& y) {
  const S shift = x - embed<S>(b.a);
  if (is_zero(constant_part(shift))) throw SingularityError("zeta has a pole at x = a");
  const S inv = inverse(shift);
  const int g = b.odd.genus();
  return {embed<S>(b.s) * inv, embed<S>(b.t) * y * power(inv, g + 1)};
}

template <class S, class F>
SymDivisor<S> zeta_divisor(const BridgeParams<F>& b, const SymDivisor<S>& d) {
  SymDivisor<S> out;
  for (int j = 0; j < d.size(); ++j) {
    auto [X, Y] = zeta_map(b, d.x[j], d.y[j]);
    out.x.push_back(std::move(X));
    out.y.push_back(std::move(Y));
  }
  return out;
}

// Coefficient of dx/(2y) in ζ*ω_i (ω_i = -X^{g-i} dX/(2Y)) against Σ_j D_ij x^{j-1},
// at each sample x.
template <class F>
Defects<F> pullback_defects(const BridgeParams<F>& b, const std::vector<F>& xs) {
  const int g = b.odd.genus();
  Defects<F> out;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const F& x = xs[n];
    auto [X, Y] = zeta_map(b, x, F(1L));
    const F shift = x - b.a;
    const F dX = -(b.s * inverse(shift * shift));
    for (int i = 1; i <= g; ++i) {
      F lhs = -(power(X, g - i) * dX * inverse(Y));
      F rhs{};
      for (int j = g; j >= 1; --j) rhs = rhs * x + b.D[i - 1][j - 1];
      out.push_back({"pullback_x" + std::to_string(n) + "_i" + std::to_string(i), std::move(lhs), std::move(rhs), 0});
    }
  }
  return out;
}

// f̄(e1,e2) = 𝔱^{-2} (e1-a)^{g+1} (e2-a)^{g+1} f̃(𝔰/(e1-a), 𝔰/(e2-a)).
template <class F>
BivarPoly<F> transported_f(const BridgeParams<F>& b) {
  const int g = b.odd.genus();
  std::vector<Poly<F>> pw{Poly<F>({F(1L)})};
  for (int k = 1; k <= g + 1; ++k) pw.push_back(pw.back() * Poly<F>({-b.a, F(1L)}));
  const F tinv2 = inverse(b.t * b.t);
  auto lam = [&](int k) { return b.odd.coefficient(k); };
  BivarPoly<F> out(g + 1, g + 1);
  for (int i = 0; i <= g; ++i) {
    F c0 = (lam(4 * g + 2 - 4 * i) + lam(4 * g + 2 - 4 * i)) * power(b.s, 2 * i) * tinv2;
    out += BivarPoly<F>::outer(pw[g + 1 - i], pw[g + 1 - i]).scaled(c0);
    F c1 = lam(4 * g - 4 * i) * power(b.s, 2 * i + 1) * tinv2;
    if (is_zero(c1)) continue;
    out += BivarPoly<F>::outer(pw[g - i], pw[g + 1 - i]).scaled(c1);
    out += BivarPoly<F>::outer(pw[g + 1 - i], pw[g - i]).scaled(c1);
  }
  return out;
}

// 𝔫 with f̄ = f + (e1-e2)^2 Σ 𝔫_ij e1^{i-1} e2^{j-1}, as a g x g matrix.
template <class F>
std::vector<std::vector<F>> n_matrix(const Curve<F>& even, const BridgeParams<F>& b) {
  const int g = even.genus();
  BivarPoly<F> q = decomposition_matrix(transported_f(b), pair_poly_f<F>(even));
  std::vector<std::vector<F>> n(g, std::vector<F>(g));
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) n[i][j] = q.coeff(i, j);
  }
  return n;
}

// Curve-level checks: M̃ monic, (x-a)^{2g+2} M̃(𝔰/(x-a)) = 𝔱^2 N(x),
// f̄(e,e) = 2N(e), ∂f̄/∂e2 on the diagonal = N'(e), 𝔫 symmetric, f̄ = f for a = 0,
// and the product form of M̃ when the other roots are supplied.
template <class F>
Defects<F> bridge_curve_defects(const Curve<F>& even, const BridgeParams<F>& b,
                                const std::vector<F>* roots = nullptr) {
  const int g = even.genus();
  Defects<F> out;
  out.push_back({"m_tilde_monic", b.odd.coefficient(0), F(1L), 0});

  // Σ_m λ̃_{2m} 𝔰^{2g+1-m} (x-a)^{m+1} against 𝔱^2 N(x).
  Poly<F> lhs({F()});
  Poly<F> shift({-b.a, F(1L)});
  Poly<F> pw = shift;
  for (int m = 0; m <= 2 * g + 1; ++m) {
    Poly<F> term = pw * Poly<F>({b.odd.coefficient(2 * m) * power(b.s, 2 * g + 1 - m)});
    std::vector<F> acc(std::max(lhs.degree(), term.degree()) + 1);
    for (int k = 0; k <= lhs.degree(); ++k) acc[k] += lhs[k];
    for (int k = 0; k <= term.degree(); ++k) acc[k] += term[k];
    lhs = Poly<F>(std::move(acc));
    pw = pw * shift;
  }
  const Poly<F> N = even.polynomial();
  const F t2 = b.t * b.t;
  for (int k = 0; k <= 2 * g + 2; ++k) {
    out.push_back({"m_tilde_transport_" + std::to_string(k), lhs.coeff(k), t2 * N.coeff(k), 0});
  }

  const BivarPoly<F> fbar = transported_f(b);
  const Poly<F> diag = fbar.diagonal();
  const Poly<F> ddiag = fbar.diagonal_of_e2_derivative();
  const Poly<F> dN = N.derivative();
  for (int k = 0; k <= 2 * g + 2; ++k) {
    out.push_back({"fbar_diagonal_" + std::to_string(k), diag.coeff(k), N.coeff(k) + N.coeff(k), 0});
    out.push_back({"fbar_diagonal_derivative_" + std::to_string(k), ddiag.coeff(k), dN.coeff(k), 0});
  }
  const auto n = n_matrix(even, b);
  for (int i = 0; i < g; ++i) {
    for (int j = i + 1; j < g; ++j) {
      out.push_back({"n_symmetric_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), n[i][j], n[j][i], 0});
    }
  }
  if (is_zero(b.a)) {
    const BivarPoly<F> f = pair_poly_f<F>(even);
    for (int i = 0; i <= g + 1; ++i) {
      for (int j = 0; j <= g + 1; ++j) {
        out.push_back({"fbar_equals_f_" + std::to_string(i) + "_" + std::to_string(j), fbar.coeff(i, j), f.coeff(i, j),
                       0});
      }
    }
  }
  if (roots) {
    const std::vector<F> prod = m_tilde_from_roots(b.s, b.a, *roots);
    for (int m = 0; m <= 2 * g + 1; ++m) {
      out.push_back({"m_tilde_product_" + std::to_string(2 * m), b.odd.coefficient(2 * m), prod.at(m), 0});
    }
  }
  return out;
}

template <class F>
F kappa(const BridgeParams<F>& b, const Curve<F>& lt) {
  const int g = lt.genus();
  const F tinv2 = inverse(b.t * b.t);
  return tinv2 * (b.a * b.a * F(static_cast<long>(g * (g + 1))) * lt.coefficient(4 * g + 2) -
                  b.a * F(static_cast<long>(g)) * b.s * lt.coefficient(4 * g));
}

// Divisor-level relations between 𝒫 on V at d and ℘ on C̃ at ζ(d):
//   zeta_curve: ζ-images lie on C̃;
//   G: G(e1,e2) = 𝔰^2 𝔱^{-2} Σ ℘_{2g+1-2i,2g+1-2j} 𝔰^{i+j-2} (e1-a)^{g-i} (e2-a)^{g-j} - Σ 𝔫_ij e1^{i-1} e2^{j-1};
//   scaled (a = 0): 𝒫_{2g+2-2i,2g+2-2j} = 𝔰^{2g-i-j+2} 𝔱^{-2} ℘_{2i-1,2j-1};
//   kappa: 𝒫_{2,2} = 𝔰^2 𝔱^{-2} ℘_{2g-1,2g-1} - κ;
//   g = 2: explicit 𝒫_{2,4} and 𝒫_{4,4};
//   h_ratio: e_k(x_j - a) = (-𝔰)^k ℘_{1,2g-2k-1}/℘_{1,2g-1} with ℘_{1,-1} = -1.
// λ̃ reads in the kappa and g = 2 lines come from `lt` (normally b.odd).
template <class S, class F>
Defects<S> bridge_relations(const Curve<F>& even, const BridgeParams<F>& b, const SymDivisor<S>& d,
                            const Curve<F>* lt_override = nullptr) {
  const Curve<F>& lt = lt_override ? *lt_override : b.odd;
  const int g = even.genus();
  const SymDivisor<S> dz = zeta_divisor(b, d);
  const PMatrix<S> P = p_matrix_even(even, d);
  const PMatrix<S> W = p_matrix_odd(b.odd, dz);
  Defects<S> out;
  for (int j = 0; j < g; ++j) {
    out.push_back({"zeta_curve_" + std::to_string(j + 1), dz.y[j] * dz.y[j], b.odd.eval(dz.x[j]).first, 0});
  }

  const S s = embed<S>(b.s);
  const S a = embed<S>(b.a);
  const S tinv2 = embed<S>(inverse(b.t * b.t));
  const auto n = n_matrix(even, b);
  {
    std::vector<Poly<S>> pw{Poly<S>({S(1L)})};
    for (int k = 1; k <= g; ++k) pw.push_back(pw.back() * Poly<S>({-a, S(1L)}));
    BivarPoly<S> rhs(g - 1, g - 1);
    for (int i = 1; i <= g; ++i) {
      for (int j = 1; j <= g; ++j) {
        S c = s * s * tinv2 * W.at(2 * g + 1 - 2 * i, 2 * g + 1 - 2 * j) * power(s, i + j - 2);
        rhs += BivarPoly<S>::outer(pw[g - i], pw[g - j]).scaled(c);
        rhs.at(i - 1, j - 1) -= embed<S>(n[i - 1][j - 1]);
      }
    }
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        out.push_back({"G_" + std::to_string(i) + "_" + std::to_string(j), P.slots()[i][j], rhs.coeff(i, j), 0});
      }
    }
  }

  if (is_zero(b.a)) {
    for (int i = 1; i <= g; ++i) {
      for (int j = 1; j <= g; ++j) {
        out.push_back({"scaled_" + std::to_string(i) + "_" + std::to_string(j), P.at(2 * g + 2 - 2 * i, 2 * g + 2 - 2 * j),
                       power(s, 2 * g - i - j + 2) * tinv2 * W.at(2 * i - 1, 2 * j - 1), 0});
      }
    }
  }

  out.push_back({"kappa", P.at(2, 2), s * s * tinv2 * W.at(2 * g - 1, 2 * g - 1) - embed<S>(kappa(b, lt)), 0});

  if (g == 2) {
    auto l = [&](int k) { return embed<S>(lt.coefficient(k)); };
    const S a2 = a * a;
    const S a3 = a2 * a;
    const S s2 = s * s;
    const S s3 = s2 * s;
    S p24 = tinv2 * (s3 * W.at(1, 3) - a * s2 * W.at(3, 3) - a2 * s * l(8) + S(2L) * a3 * l(10));
    S p44 = tinv2 * (s3 * s * W.at(1, 1) - S(2L) * a * s3 * W.at(1, 3) + a2 * s2 * W.at(3, 3) + a * s3 * l(4) -
                     S(2L) * a2 * s2 * l(6) + S(4L) * a3 * s * l(8) - S(6L) * a2 * a2 * l(10));
    out.push_back({"example_P_2_4", P.at(2, 4), std::move(p24), 0});
    out.push_back({"example_P_4_4", P.at(4, 4), std::move(p44), 0});
  }

  std::vector<S> shifted;
  for (const auto& x : d.x) shifted.push_back(x - a);
  const std::vector<S> e = elementary_symmetric(shifted);
  const S den = inverse(wp_first_row(W, 2 * g - 1));
  for (int k = 1; k <= g; ++k) {
    out.push_back({"h_ratio_" + std::to_string(k), e[k], power(-s, k) * wp_first_row(W, 2 * g - 2 * k - 1) * den,
                   2 * k});
  }
  return out;
}

}  // namespace hyperkp

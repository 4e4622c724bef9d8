#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hyperkp/baker.hpp"
#include "hyperkp/curve.hpp"
#include "hyperkp/error.hpp"
#include "hyperkp/jet_flows.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

// One LHS/RHS pair of an identity. `weight` is the scaling exponent of the
// defect under x -> s^2 x, coefficient_k -> s^k coefficient_k.
template <class S>
struct Defect {
  std::string label;
  S lhs;
  S rhs;
  int weight = 0;
  S value() const { return lhs - rhs; }
};

template <class S>
using Defects = std::vector<Defect<S>>;

// Identity ids accepted by check-identity.
inline const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = {"p-third-relation", "quartic-baker", "suffix-symmetry",
                                               "wp-family",        "wp-quartic-top", "h-inversion"};
  return ids;
}

inline Model identity_model(const std::string& id) {
  if (id == "p-third-relation" || id == "quartic-baker") return Model::even;
  if (id == "wp-family" || id == "wp-quartic-top" || id == "h-inversion") return Model::odd;
  if (id == "suffix-symmetry") return Model::even;
  throw ParameterError("unknown identity id '" + id + "'");
}

namespace detail {

inline std::string suffix_label(const std::string& head, std::initializer_list<int> params) {
  std::string out = head;
  for (int p : params) out += "_" + std::to_string(p);
  return out;
}

inline int kron(int a, int b) { return a == b ? 1 : 0; }

template <class S>
S times_int(const S& v, long n) {
  return v * S(n);
}

}  // namespace detail

// ∂_{v2}^2 𝒫_{2,2k} against the quadratic expression in 𝒫 and ν, k = 1..g.
// Coefficients come from `coeffs` (the curve itself, or a perturbed copy).
template <class S, class F>
Defects<S> check_P_third_relation(const DerivativeTensor<S>& t, const Curve<F>& coeffs) {
  if (t.rules().model != Model::even) throw PreconditionError("P relation family needs an even-model divisor");
  const int g = t.rules().genus;
  auto P = [&](int i, int j) { return t.p(i, j); };
  auto nu = [&](int k) { return embed<S>(coeffs.coefficient(k)); };
  Defects<S> out;
  for (int k = 1; k <= g; ++k) {
    const int s = 2 * k;
    S lhs = t.fourth(2, s, 2, 2);
    S rhs = detail::times_int(P(2, s) * (detail::times_int(P(2, 2), 3) + detail::times_int(nu(4), 2)), 2);
    S mid = -P(4, s) + detail::times_int(P(2, s + 2), 3);
    if (k == 1) mid += nu(6);
    rhs += detail::times_int(nu(2) * mid, 2);
    S tail = detail::times_int(P(2, s + 4), 3) - detail::times_int(P(4, s + 2), 3) + P(6, s);
    if (k == 1) tail -= detail::times_int(nu(8), 2);
    if (k == 2) tail -= nu(10);
    rhs += detail::times_int(nu(0) * tail, 4);
    out.push_back({detail::suffix_label("k", {k}), std::move(lhs), std::move(rhs), 6 + s});
  }
  return out;
}

// E(e1,e2) = (e1-e2){f(e1,e2) - (e1-e2)^2 Σ 𝒫_{2g+2-2i,2g+2-2j} e1^{i-1} e2^{j-1}}.
template <class S, class F>
S pair_poly_E(const DerivativeTensor<S>& t, const Curve<F>& coeffs, const S& e1, const S& e2) {
  const int g = t.rules().genus;
  const S f = pair_poly_f<S>(coeffs)(e1, e2);
  S G{};
  for (int i = g; i >= 1; --i) {
    S row{};
    for (int j = g; j >= 1; --j) row = row * e2 + t.p(2 * g + 2 - 2 * i, 2 * g + 2 - 2 * j);
    G = G * e1 + row;
  }
  const S d = e1 - e2;
  return d * (f - d * d * G);
}

// Sextic-prefactored generating sum of the fourth derivatives against the
// three-term combination of E products, at one configuration of e-points.
template <class S, class F>
Defect<S> check_quartic_baker(const DerivativeTensor<S>& t, const Curve<F>& coeffs, const std::array<S, 4>& e) {
  if (t.rules().model != Model::even) throw PreconditionError("quartic identity needs an even-model divisor");
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if (is_zero(e[a] - e[b])) throw PreconditionError("quartic identity needs four pairwise-distinct e-values");
    }
  }
  const int g = t.rules().genus;
  auto suf = [&](int i) { return 2 * g + 2 - 2 * i; };
  std::array<std::vector<S>, 4> pw;
  for (int a = 0; a < 4; ++a) {
    pw[a].push_back(S(1L));
    for (int i = 1; i < g; ++i) pw[a].push_back(pw[a].back() * e[a]);
  }
  S sum{};
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= g; ++j) {
      const S ij = pw[0][i - 1] * pw[1][j - 1];
      for (int k = 1; k <= g; ++k) {
        const S ijk = ij * pw[2][k - 1];
        for (int l = 1; l <= g; ++l) sum += t.fourth(suf(i), suf(j), suf(k), suf(l)) * ijk * pw[3][l - 1];
      }
    }
  }
  const S& e1 = e[0];
  const S& e2 = e[1];
  const S& e3 = e[2];
  const S& e4 = e[3];
  S pre = (e2 - e1) * (e3 - e2) * (e3 - e1) * (e4 - e3) * (e4 - e2) * (e4 - e1);
  S lhs = pre * sum * reciprocal_of(2, e1);
  auto E = [&](const S& a, const S& b) { return pair_poly_E(t, coeffs, a, b); };
  S rhs = E(e2, e3) * E(e4, e1) + E(e3, e1) * E(e4, e2) + E(e1, e2) * E(e4, e3);
  std::string label = "e=(" + e1.to_string() + "," + e2.to_string() + "," + e3.to_string() + "," + e4.to_string() + ")";
  return {label, std::move(lhs), std::move(rhs), 8 * g + 12};
}

// Every reordering of the suffixes of third and fourth derivatives against the
// sorted one.
template <class S>
Defects<S> check_suffix_symmetry(const DerivativeTensor<S>& t) {
  const std::vector<int> sufs = t.rules().function_suffixes();
  const int g = t.rules().genus;
  Defects<S> out;
  for (int a = 0; a < g; ++a) {
    for (int b = a; b < g; ++b) {
      for (int c = b; c < g; ++c) {
        std::array<int, 3> m{sufs[a], sufs[b], sufs[c]};
        const S ref = t.third(m[0], m[1], m[2]);
        while (std::next_permutation(m.begin(), m.end())) {
          out.push_back({detail::suffix_label("d3", {m[0], m[1], m[2]}), t.third(m[0], m[1], m[2]), ref,
                         m[0] + m[1] + m[2]});
        }
        for (int d = c; d < g; ++d) {
          std::array<int, 4> q{sufs[a], sufs[b], sufs[c], sufs[d]};
          const S ref4 = t.fourth(q[0], q[1], q[2], q[3]);
          while (std::next_permutation(q.begin(), q.end())) {
            out.push_back({detail::suffix_label("d4", {q[0], q[1], q[2], q[3]}), t.fourth(q[0], q[1], q[2], q[3]),
                           ref4, q[0] + q[1] + q[2] + q[3]});
          }
        }
      }
    }
  }
  return out;
}

// The four-part ℘ relation family for all 1 <= i, j <= g.
template <class S, class F>
Defects<S> check_wp_family(const DerivativeTensor<S>& t, const Curve<F>& coeffs) {
  if (t.rules().model != Model::odd) throw PreconditionError("wp relation family needs an odd-model divisor");
  const int g = t.rules().genus;
  auto w = [&](int i, int j) { return t.p(i, j); };
  auto w3 = [&](int i, int j, int k) { return t.third(i, j, k); };
  auto w4 = [&](int i, int j, int k, int l) { return t.fourth(i, j, k, l); };
  auto lam = [&](int k) { return embed<S>(coeffs.coefficient(k)); };
  auto n = [](const S& v, long c) { return detail::times_int(v, c); };
  using detail::kron;
  Defects<S> out;
  for (int i = 1; i <= g; ++i) {
    const int a = 2 * i - 1;
    S lhs = w4(1, 1, 1, a);
    S rhs = (n(w(1, 1), 6) + n(lam(2), 4)) * w(1, a) + n(w(1, a + 2), 6) - n(w(3, a), 2);
    if (i == 1) rhs += n(lam(4), 2);
    out.push_back({detail::suffix_label("I", {i}), std::move(lhs), std::move(rhs), 2 * i + 2});
  }
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= g; ++j) {
      const int a = 2 * i - 1;
      const int b = 2 * j - 1;
      S lhs = w3(1, 1, a) * w3(1, 1, b);
      S rhs = n(w(1, 1) * w(1, a) * w(1, b), 4);
      rhs -= n(w(1, a) * w(3, b) + w(1, b) * w(3, a), 2);
      rhs += n(w(1, b) * w(1, a + 2) + w(1, a) * w(1, b + 2), 4);
      rhs += n(w(a + 2, b + 2), 4);
      rhs -= n(w(b, a + 4) + w(a, b + 4), 2);
      rhs += n(lam(2) * w(1, a) * w(1, b), 4);
      if (i == 1) rhs += n(lam(4) * w(1, b), 2);
      if (j == 1) rhs += n(lam(4) * w(1, a), 2);
      if (kron(i, j)) rhs += n(lam(4 * i + 2), 4);
      if (kron(i, j + 1)) rhs += n(lam(4 * i), 2);
      if (kron(i + 1, j)) rhs += n(lam(4 * j), 2);
      out.push_back({detail::suffix_label("II", {i, j}), std::move(lhs), std::move(rhs), 2 * i + 2 * j + 2});

      S l3 = w3(1, 1, b) * w(1, a) + w3(1, a + 2, b);
      S r3 = w3(1, 1, a) * w(1, b) + w3(1, a, b + 2);
      out.push_back({detail::suffix_label("III", {i, j}), std::move(l3), std::move(r3), 2 * i + 2 * j + 1});

      S l4 = w4(1, 1, 1, b) * w(1, a) + w4(1, 1, a + 2, b);
      S r4 = w4(1, 1, 1, a) * w(1, b) + w4(1, 1, a, b + 2);
      out.push_back({detail::suffix_label("IV", {i, j}), std::move(l4), std::move(r4), 2 * i + 2 * j + 2});
    }
  }
  return out;
}

// ∂_{u_{2g-1}}^2 ℘_{2g-1,2g-1} against its quadratic expression.
template <class S, class F>
Defect<S> check_wp_quartic_top(const DerivativeTensor<S>& t, const Curve<F>& coeffs) {
  if (t.rules().model != Model::odd) throw PreconditionError("top quartic relation needs an odd-model divisor");
  const int g = t.rules().genus;
  const int G = 2 * g - 1;
  auto w = [&](int i, int j) { return t.p(i, j); };
  auto lam = [&](int k) { return embed<S>(coeffs.coefficient(k)); };
  auto n = [](const S& v, long c) { return detail::times_int(v, c); };
  S lhs = t.fourth(G, G, G, G);
  S rhs = n(w(G, G) * w(G, G), 6) + n(lam(4 * g) * w(G, G - 2), 4);
  rhs += n(lam(4 * g + 2) * (n(w(G, G - 4), 4) - n(w(G - 2, G - 2), 3)), 4);
  rhs += n(lam(4 * g - 2) * w(G, G), 4);
  rhs -= n(lam(4 * g + 2) * lam(4 * g - 6), 8);
  rhs += n(lam(4 * g) * lam(4 * g - 4), 2);
  return {"top", std::move(lhs), std::move(rhs), 8 * g - 4};
}

// ℘_{1,s} with the convention ℘_{1,-1} = -1.
template <class S>
S wp_first_row(const PMatrix<S>& w, int s) {
  if (s == -1) return S(-1L);
  return w.at(1, s);
}

// Elementary symmetric functions e_0..e_g of the values.
template <class S>
std::vector<S> elementary_symmetric(const std::vector<S>& v) {
  std::vector<S> e{S(1L)};
  for (const auto& x : v) {
    e.push_back(S());
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] = e[k] + e[k - 1] * x;
  }
  return e;
}

// e_k(X_1..X_g) = (-1)^{k-1} ℘_{1,2k-1}; `xs` are the divisor's X coordinates
// (a perturbed copy breaks the identity).
template <class S>
Defects<S> check_h_inversion(const PMatrix<S>& w, const std::vector<S>& xs) {
  if (w.model() != Model::odd) throw PreconditionError("inversion formula needs an odd-model divisor");
  const int g = w.genus();
  const std::vector<S> e = elementary_symmetric(xs);
  Defects<S> out;
  for (int k = 1; k <= g; ++k) {
    S rhs = w.at(1, 2 * k - 1);
    if (k % 2 == 0) rhs = -rhs;
    out.push_back({detail::suffix_label("k", {k}), e[k], std::move(rhs), 2 * k});
  }
  return out;
}

// Threshold for numeric verdicts at a given working precision.
inline double numeric_threshold(long precision_bits) {
  return 1e-40 * std::pow(2.0, (256.0 - static_cast<double>(precision_bits)) / 2.0);
}

struct IdentityEntry {
  std::string label;
  int weight = 0;
  bool zero = false;
  std::string defect;     // exact defect or its magnitude
  double relative = 0.0;  // numeric mode only
};

struct IdentityReport {
  std::string id;
  Model model = Model::even;
  int genus = 0;
  std::string divisor;
  bool exact = true;
  std::vector<IdentityEntry> entries;
  double max_relative = 0.0;
  double max_abs = 0.0;  // numeric mode only
  double elapsed_ms = 0.0;
  bool passed() const {
    for (const auto& e : entries) {
      if (!e.zero) return false;
    }
    return true;
  }
};

template <class S>
IdentityReport summarize(const std::string& id, Model model, int genus, const std::string& divisor,
                         const Defects<S>& defects, long precision_bits = 256) {
  IdentityReport r;
  r.id = id;
  r.model = model;
  r.genus = genus;
  r.divisor = divisor;
  r.exact = is_exact_v<S>;
  for (const auto& d : defects) {
    IdentityEntry e;
    e.label = d.label;
    e.weight = d.weight;
    const S v = d.value();
    if constexpr (is_exact_v<S>) {
      e.zero = is_zero(v);
      e.defect = v.to_string();
    } else {
      const double scale = std::max({1.0, magnitude(d.lhs), magnitude(d.rhs)});
      e.relative = magnitude(v) / scale;
      e.zero = e.relative <= numeric_threshold(precision_bits);
      e.defect = v.to_string(6);
      r.max_relative = std::max(r.max_relative, e.relative);
      r.max_abs = std::max(r.max_abs, magnitude(v));
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

}  // namespace hyperkp

#pragma once

#include <cstddef>
#include <vector>

#include "hyperkp/error.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

// Dense univariate polynomial, ascending coefficients.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> ascending) : c_(std::move(ascending)) {}

  // Π (e - r) over the given roots.
  static Poly from_roots(const std::vector<T>& roots) {
    std::vector<T> c{T(1)};
    for (const auto& r : roots) {
      std::vector<T> next(c.size() + 1);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= r * c[k];
      }
      c = std::move(next);
    }
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coefficients() const { return c_; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : T(); }

  template <class X>
  X operator()(const X& x) const {
    if (c_.empty()) return X();
    X acc = embed<X>(c_.back());
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * x + embed<X>(c_[k]);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly({T()});
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
    return Poly(std::move(d));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }

  // Quotient by (e - r); the remainder is the value at r.
  std::pair<Poly, T> divide_linear(const T& r) const {
    if (c_.size() <= 1) return {Poly({T()}), c_.empty() ? T() : c_[0]};
    std::vector<T> q(c_.size() - 1);
    T carry = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
      q[k] = carry;
      carry = c_[k] + carry * r;
    }
    return {Poly(std::move(q)), carry};
  }

 private:
  std::vector<T> c_;
};

// Dense bivariate polynomial: c[i][j] multiplies e1^i e2^j.
template <class T>
class BivarPoly {
 public:
  BivarPoly() = default;
  BivarPoly(int deg1, int deg2) : c_(deg1 + 1, std::vector<T>(deg2 + 1)) {}

  static BivarPoly outer(const Poly<T>& p, const Poly<T>& q) {
    BivarPoly b(p.degree(), q.degree());
    for (int i = 0; i <= p.degree(); ++i) {
      if (is_zero(p[i])) continue;
      for (int j = 0; j <= q.degree(); ++j) b.c_[i][j] = p[i] * q[j];
    }
    return b;
  }

  int deg1() const { return static_cast<int>(c_.size()) - 1; }
  int deg2() const { return c_.empty() ? -1 : static_cast<int>(c_[0].size()) - 1; }
  T coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > deg1() || j > deg2()) return T();
    return c_[i][j];
  }
  T& at(int i, int j) {
    grow(i, j);
    return c_[i][j];
  }

  template <class X>
  X operator()(const X& e1, const X& e2) const {
    X acc{};
    for (int i = deg1(); i >= 0; --i) {
      X row{};
      for (int j = deg2(); j >= 0; --j) row = row * e2 + embed<X>(c_[i][j]);
      acc = acc * e1 + row;
    }
    return acc;
  }

  BivarPoly& operator+=(const BivarPoly& o) {
    grow(o.deg1(), o.deg2());
    for (int i = 0; i <= o.deg1(); ++i) {
      for (int j = 0; j <= o.deg2(); ++j) {
        if (!is_zero(o.c_[i][j])) c_[i][j] += o.c_[i][j];
      }
    }
    return *this;
  }
  BivarPoly& operator-=(const BivarPoly& o) {
    grow(o.deg1(), o.deg2());
    for (int i = 0; i <= o.deg1(); ++i) {
      for (int j = 0; j <= o.deg2(); ++j) {
        if (!is_zero(o.c_[i][j])) c_[i][j] -= o.c_[i][j];
      }
    }
    return *this;
  }
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }

  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return BivarPoly();
    BivarPoly out(a.deg1() + b.deg1(), a.deg2() + b.deg2());
    for (int i = 0; i <= a.deg1(); ++i) {
      for (int j = 0; j <= a.deg2(); ++j) {
        if (is_zero(a.c_[i][j])) continue;
        for (int k = 0; k <= b.deg1(); ++k) {
          for (int l = 0; l <= b.deg2(); ++l) {
            if (is_zero(b.c_[k][l])) continue;
            out.c_[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
          }
        }
      }
    }
    return out;
  }

  BivarPoly scaled(const T& s) const {
    BivarPoly out = *this;
    for (auto& row : out.c_) {
      for (auto& v : row) {
        if (!is_zero(v)) v = v * s;
      }
    }
    return out;
  }

  // Multiplication by (e1 - e2)^2.
  BivarPoly times_diff_squared() const {
    BivarPoly out(deg1() + 2, deg2() + 2);
    for (int i = 0; i <= deg1(); ++i) {
      for (int j = 0; j <= deg2(); ++j) {
        const T& v = c_[i][j];
        if (is_zero(v)) continue;
        out.c_[i + 2][j] += v;
        out.c_[i + 1][j + 1] -= v + v;
        out.c_[i][j + 2] += v;
      }
    }
    return out;
  }

  // Quotient by (e1 - e2). The remainder is a polynomial in e2 alone, returned
  // as its coefficient list.
  std::pair<BivarPoly, std::vector<T>> divide_by_diff() const {
    const int n1 = deg1();
    const int n2 = deg2();
    if (n1 < 1) return {BivarPoly(0, n2 + 1), row_as_vector(0)};
    // Rows of the quotient are polynomials in e2 of degree <= n2 + (n1 - 1 - i).
    BivarPoly q(n1 - 1, n2 + n1 - 1);
    std::vector<T> carry(n2 + n1 + 1);
    for (int j = 0; j <= n2; ++j) carry[j] = c_[n1][j];
    for (int i = n1 - 1; i >= 0; --i) {
      for (int j = 0; j < static_cast<int>(carry.size()) && j <= q.deg2(); ++j) q.c_[i][j] = carry[j];
      // carry <- c_i + e2 * carry
      std::vector<T> next(carry.size());
      for (int j = static_cast<int>(carry.size()) - 1; j >= 1; --j) next[j] = carry[j - 1];
      for (int j = 0; j <= n2; ++j) next[j] += c_[i][j];
      carry = std::move(next);
    }
    return {std::move(q), std::move(carry)};
  }

  // Quotient by a monic polynomial in e1; remainder returned as a bivariate.
  std::pair<BivarPoly, BivarPoly> divide_monic_e1(const Poly<T>& d) const {
    const int m = d.degree();
    const int n1 = deg1();
    BivarPoly r = *this;
    if (n1 < m) return {BivarPoly(0, deg2()), std::move(r)};
    BivarPoly q(n1 - m, deg2());
    for (int i = n1; i >= m; --i) {
      for (int j = 0; j <= deg2(); ++j) {
        T lead = r.c_[i][j];
        if (is_zero(lead)) continue;
        q.c_[i - m][j] = lead;
        for (int k = 0; k < m; ++k) {
          if (!is_zero(d[k])) r.c_[i - m + k][j] -= lead * d[k];
        }
        r.c_[i][j] = T();
      }
    }
    r.c_.resize(m > 0 ? m : 1, std::vector<T>(deg2() + 1));
    return {std::move(q), std::move(r)};
  }

  std::pair<BivarPoly, BivarPoly> divide_monic_e2(const Poly<T>& d) const {
    auto [q, r] = transposed().divide_monic_e1(d);
    return {q.transposed(), r.transposed()};
  }

  BivarPoly transposed() const {
    BivarPoly out(deg2(), deg1());
    for (int i = 0; i <= deg1(); ++i) {
      for (int j = 0; j <= deg2(); ++j) out.c_[j][i] = c_[i][j];
    }
    return out;
  }

  bool is_zero_poly() const {
    for (const auto& row : c_) {
      for (const auto& v : row) {
        if (!is_zero(v)) return false;
      }
    }
    return true;
  }

  // Highest e1-exponent with a nonzero coefficient (-1 for the zero polynomial).
  int effective_deg1() const {
    for (int i = deg1(); i >= 0; --i) {
      for (const auto& v : c_[i]) {
        if (!is_zero(v)) return i;
      }
    }
    return -1;
  }
  int effective_deg2() const { return transposed().effective_deg1(); }

  bool is_symmetric() const { return (*this - transposed()).is_zero_poly(); }

  // f(e, e) as a univariate polynomial.
  Poly<T> diagonal() const {
    std::vector<T> d(std::max(deg1() + deg2() + 1, 1));
    for (int i = 0; i <= deg1(); ++i) {
      for (int j = 0; j <= deg2(); ++j) d[i + j] += c_[i][j];
    }
    return Poly<T>(std::move(d));
  }

  // ∂/∂e2 restricted to e2 = e1.
  Poly<T> diagonal_of_e2_derivative() const {
    std::vector<T> d(std::max(deg1() + deg2(), 1));
    for (int i = 0; i <= deg1(); ++i) {
      for (int j = 1; j <= deg2(); ++j) d[i + j - 1] += c_[i][j] * T(static_cast<long>(j));
    }
    return Poly<T>(std::move(d));
  }

  // Drops coefficient rows/columns beyond the given degrees (which must be zero).
  BivarPoly resized(int d1, int d2) const {
    BivarPoly out(d1, d2);
    for (int i = 0; i <= std::min(d1, deg1()); ++i) {
      for (int j = 0; j <= std::min(d2, deg2()); ++j) out.c_[i][j] = c_[i][j];
    }
    return out;
  }

 private:
  std::vector<T> row_as_vector(int i) const { return c_.empty() ? std::vector<T>{} : c_[i]; }
  void grow(int d1, int d2) {
    if (d1 > deg1()) c_.resize(d1 + 1, std::vector<T>(std::max(deg2(), 0) + 1));
    if (d2 > deg2()) {
      for (auto& row : c_) row.resize(d2 + 1);
    }
  }

  std::vector<std::vector<T>> c_;
};

}  // namespace hyperkp

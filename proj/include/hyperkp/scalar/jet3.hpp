#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hyperkp/error.hpp"
#include "hyperkp/scalar/gaussian_rational.hpp"

namespace hyperkp {

using Exponent3 = std::array<int, 3>;

// Graded layout: degree-n monomials start at n(n+1)(n+2)/6; inside a block,
// (a,b,c) sits at T(n-a)+c with T(k)=k(k+1)/2.
constexpr std::size_t jet_index(int a, int b, int c) {
  const int n = a + b + c;
  const int k = n - a;
  return static_cast<std::size_t>(n * (n + 1) * (n + 2) / 6 + k * (k + 1) / 2 + c);
}
constexpr std::size_t jet_size(int order) {
  return order < 0 ? 1 : static_cast<std::size_t>((order + 1) * (order + 2) * (order + 3) / 6);
}

constexpr int kMaxJetOrder = 16;

// Exponent triples in storage order; orders above kMaxJetOrder are rejected.
const std::vector<Exponent3>& jet_monomials(int order);

// Truncated power series in t1,t2,t3 keeping total degree <= order. A jet
// built from a bare scalar has no order yet and adopts its partner's.
template <class S>
class Jet3 {
 public:
  static constexpr int kConstant = -1;

  Jet3() : c_(1) {}
  Jet3(S v) : c_{std::move(v)} {}  // NOLINT: scalars embed as constants
  Jet3(long v) : c_{S(v)} {}       // NOLINT

  static Jet3 zero(int order) {
    if (order > kMaxJetOrder) throw ParameterError("jet order above " + std::to_string(kMaxJetOrder));
    Jet3 j;
    j.order_ = order;
    j.c_.assign(jet_size(order), S());
    return j;
  }
  static Jet3 constant(S v, int order) {
    Jet3 j = zero(order);
    j.c_[0] = std::move(v);
    return j;
  }
  // c + t_k (k = 0,1,2).
  static Jet3 variable(int k, S c, int order) {
    Jet3 j = constant(std::move(c), order);
    if (order >= 1) j.c_[jet_index(k == 0, k == 1, k == 2)] = S(1);
    return j;
  }

  int order() const { return order_; }
  bool has_order() const { return order_ != kConstant; }

  const S& constant_term() const { return c_[0]; }
  S coeff(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0) return S();
    if (a + b + c > std::max(order_, 0)) return S();
    return c_[jet_index(a, b, c)];
  }
  S coeff(const Exponent3& e) const { return coeff(e[0], e[1], e[2]); }
  void set_coeff(const Exponent3& e, S v) {
    ensure_sized();
    if (e[0] + e[1] + e[2] > std::max(order_, 0)) throw ParameterError("jet coefficient above truncation order");
    c_[jet_index(e[0], e[1], e[2])] = std::move(v);
  }
  const std::vector<S>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_) {
      if (!hyperkp::is_zero(v)) return false;
    }
    return true;
  }

  Jet3 truncated(int order) const {
    if (order_ == kConstant || order >= order_) {
      Jet3 out = *this;
      if (order_ != kConstant && order > order_) throw ParameterError("cannot raise jet order by truncation");
      return out;
    }
    Jet3 out;
    out.order_ = order;
    out.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(jet_size(order)));
    return out;
  }

  // d/dt_k; the result's order drops by one.
  Jet3 derivative(int k) const {
    if (order_ <= 0) return Jet3(S());
    Jet3 out = zero(order_ - 1);
    for (int n = 0; n < order_; ++n) {
      for (int a = n; a >= 0; --a) {
        for (int c = 0; c <= n - a; ++c) {
          Exponent3 e{a, n - a - c, c};
          Exponent3 up = e;
          up[k] += 1;
          S v = c_[jet_index(up[0], up[1], up[2])];
          if (hyperkp::is_zero(v)) continue;
          out.c_[jet_index(e[0], e[1], e[2])] = v * S(up[k]);
        }
      }
    }
    return out;
  }

  Jet3& operator+=(const Jet3& o) {
    adopt(o);
    if (o.order_ == kConstant) {
      c_[0] += o.c_[0];
    } else {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    }
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    adopt(o);
    if (o.order_ == kConstant) {
      c_[0] -= o.c_[0];
    } else {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    }
    return *this;
  }
  Jet3& operator*=(const Jet3& o) {
    *this = *this * o;
    return *this;
  }
  Jet3& operator/=(const Jet3& o) { return *this *= o.inverse(); }

  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
  friend Jet3 operator/(Jet3 a, const Jet3& b) { return a /= b; }
  Jet3 operator-() const {
    Jet3 out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }

  friend Jet3 operator*(const Jet3& a, const Jet3& b) {
    if (b.order_ == kConstant) return a.scaled(b.c_[0]);
    if (a.order_ == kConstant) return b.scaled(a.c_[0]);
    if (a.order_ != b.order_) throw ParameterError(order_mismatch(a.order_, b.order_));
    const int order = a.order_;
    Jet3 out = zero(order);
    const auto& mons = jet_monomials(order);
    for (std::size_t i = 0; i < mons.size(); ++i) {
      if (hyperkp::is_zero(a.c_[i])) continue;
      const auto& ea = mons[i];
      const int rest = order - (ea[0] + ea[1] + ea[2]);
      const std::size_t limit = jet_size(rest);
      for (std::size_t j = 0; j < limit; ++j) {
        if (hyperkp::is_zero(b.c_[j])) continue;
        const auto& eb = mons[j];
        out.c_[jet_index(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])] += a.c_[i] * b.c_[j];
      }
    }
    return out;
  }

  Jet3 scaled(const S& s) const {
    Jet3 out = *this;
    if (hyperkp::is_zero(s)) {
      for (auto& v : out.c_) v = S();
      return out;
    }
    for (auto& v : out.c_) {
      if (!hyperkp::is_zero(v)) v *= s;
    }
    return out;
  }

  // Degree-by-degree recurrence b_0 = 1/a_0, b_m = -b_0 * sum_{0<k<=m} a_k b_{m-k}.
  Jet3 inverse() const {
    S inv0 = hyperkp::inverse(c_[0]);
    if (order_ == kConstant) return Jet3(std::move(inv0));
    Jet3 out = zero(order_);
    out.c_[0] = inv0;
    const auto& mons = jet_monomials(order_);
    for (std::size_t m = 1; m < mons.size(); ++m) {
      const auto& em = mons[m];
      S acc;
      for (std::size_t k = 1; k < mons.size(); ++k) {
        const auto& ek = mons[k];
        if (ek[0] > em[0] || ek[1] > em[1] || ek[2] > em[2]) continue;
        if (hyperkp::is_zero(c_[k])) continue;
        acc += c_[k] * out.c_[jet_index(em[0] - ek[0], em[1] - ek[1], em[2] - ek[2])];
      }
      if (!hyperkp::is_zero(acc)) out.c_[m] = -(acc * inv0);
    }
    return out;
  }

  friend bool operator==(const Jet3& a, const Jet3& b) {
    if (a.order_ != b.order_) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }

 private:
  static std::string order_mismatch(int a, int b) {
    return "jet order mismatch: " + std::to_string(a) + " vs " + std::to_string(b);
  }
  void ensure_sized() {
    if (c_.size() < jet_size(order_)) c_.resize(jet_size(order_));
  }
  void adopt(const Jet3& o) {
    if (o.order_ == kConstant) return;
    if (order_ == kConstant) {
      S c0 = std::move(c_[0]);
      *this = zero(o.order_);
      c_[0] = std::move(c0);
      return;
    }
    if (order_ != o.order_) throw ParameterError(order_mismatch(order_, o.order_));
  }

  int order_ = kConstant;
  std::vector<S> c_;
};

template <class S>
bool is_zero(const Jet3<S>& v) {
  return v.is_zero();
}
template <class S>
Jet3<S> inverse(const Jet3<S>& v) {
  return v.inverse();
}
template <class S>
Jet3<S> lift(const GaussianRational& v, const Jet3<S>& like) {
  return Jet3<S>(lift(v, like.constant_term()));
}

}  // namespace hyperkp

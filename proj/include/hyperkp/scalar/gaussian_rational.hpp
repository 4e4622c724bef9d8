#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace hyperkp {

// Element of Q(i) with GMP rationals for both parts. Canonical by construction
// (gmpxx keeps mpq values reduced), so == is exact equality.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT: integer literals lift implicitly
  GaussianRational(mpq_class re, mpq_class im = 0);

  // Parses "p", "p/q", "-p/q" for each part.
  static GaussianRational parse(std::string_view re, std::string_view im = "0");
  static GaussianRational imaginary_unit() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  // Throws SingularityError on zero.
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // "p/q" strings per part, matching the JSON wire format.
  std::string re_string() const { return re_.get_str(); }
  std::string im_string() const { return im_.get_str(); }
  // Human-readable "a+bi".
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

GaussianRational pow(const GaussianRational& base, int exponent);

// Square root inside Q(i) when one exists. The returned root has non-negative
// real part, and non-negative imaginary part when the real part is zero.
std::optional<GaussianRational> exact_sqrt(const GaussianRational& z);

// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

inline bool is_zero(const GaussianRational& v) { return v.is_zero(); }
inline GaussianRational inverse(const GaussianRational& v) { return v.inverse(); }
inline GaussianRational lift(const GaussianRational& v, const GaussianRational&) { return v; }

}  // namespace hyperkp

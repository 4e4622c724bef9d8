#pragma once

#include <mpfr.h>

#include <string>

#include "hyperkp/scalar/gaussian_rational.hpp"

namespace hyperkp {

// Complex number with MPFR real and imaginary parts. Results carry the larger
// operand precision; a default-constructed zero adopts its partner's precision.
class BigFloatComplex {
 public:
  static constexpr mpfr_prec_t kMinPrecision = 128;
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  BigFloatComplex();
  BigFloatComplex(long v);  // NOLINT: integer literals lift implicitly
  BigFloatComplex(const GaussianRational& v, mpfr_prec_t prec);
  // Decimal strings such as "1.25e-3".
  static BigFloatComplex parse(const std::string& re, const std::string& im, mpfr_prec_t prec);
  static BigFloatComplex primitive_eighth_root(mpfr_prec_t prec);

  BigFloatComplex(const BigFloatComplex& o);
  BigFloatComplex(BigFloatComplex&& o) noexcept;
  BigFloatComplex& operator=(const BigFloatComplex& o);
  BigFloatComplex& operator=(BigFloatComplex&& o) noexcept;
  ~BigFloatComplex();

  // 0 for the precision-less zero.
  mpfr_prec_t precision() const { return prec_; }

  bool is_zero() const { return mpfr_zero_p(re_) && mpfr_zero_p(im_); }
  double abs_double() const;
  double re_double() const { return mpfr_get_d(re_, MPFR_RNDN); }
  double im_double() const { return mpfr_get_d(im_, MPFR_RNDN); }

  BigFloatComplex inverse() const;
  // Principal branch.
  BigFloatComplex sqrt() const;

  BigFloatComplex& operator+=(const BigFloatComplex& o);
  BigFloatComplex& operator-=(const BigFloatComplex& o);
  BigFloatComplex& operator*=(const BigFloatComplex& o);
  BigFloatComplex& operator/=(const BigFloatComplex& o) { return *this *= o.inverse(); }
  friend BigFloatComplex operator+(BigFloatComplex a, const BigFloatComplex& b) { return a += b; }
  friend BigFloatComplex operator-(BigFloatComplex a, const BigFloatComplex& b) { return a -= b; }
  friend BigFloatComplex operator*(BigFloatComplex a, const BigFloatComplex& b) { return a *= b; }
  friend BigFloatComplex operator/(BigFloatComplex a, const BigFloatComplex& b) { return a /= b; }
  BigFloatComplex operator-() const;

  // Bitwise equality of both parts.
  friend bool operator==(const BigFloatComplex& a, const BigFloatComplex& b);

  // Scientific notation with `digits` significant digits per part.
  std::string re_string(int digits = 20) const;
  std::string im_string(int digits = 20) const;
  std::string to_string(int digits = 20) const;

 private:
  struct ZeroAt {};
  BigFloatComplex(ZeroAt, mpfr_prec_t prec);
  void raise_precision(mpfr_prec_t prec);

  mpfr_prec_t prec_ = 0;
  mpfr_t re_;
  mpfr_t im_;
};

inline bool is_zero(const BigFloatComplex& v) { return v.is_zero(); }
inline BigFloatComplex inverse(const BigFloatComplex& v) { return v.inverse(); }
inline BigFloatComplex lift(const GaussianRational& v, const BigFloatComplex& like) {
  mpfr_prec_t p = like.precision() ? like.precision() : BigFloatComplex::kDefaultPrecision;
  return BigFloatComplex(v, p);
}

}  // namespace hyperkp

#include "hyperkp/scalar/gaussian_rational.hpp"

#include "hyperkp/error.hpp"

namespace hyperkp {

namespace {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
  if (s.find('/') != std::string::npos && sgn(q.get_den()) == 0) {
    throw ParseError("zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw SingularityError("division by zero in Q(i)");
  if (is_real()) return {1 / re_, 0};
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string sign = sgn(im_) < 0 ? "" : "+";
  return re_.get_str() + sign + im_.get_str() + "i";
}

GaussianRational pow(const GaussianRational& base, int exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  GaussianRational result(1);
  GaussianRational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn, rd);
}

std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  if (z.is_zero()) return GaussianRational(0);
  const mpq_class& a = z.re();
  const mpq_class& b = z.im();
  if (z.is_real()) {
    if (sgn(a) > 0) {
      auto r = rational_sqrt(a);
      if (!r) return std::nullopt;
      return GaussianRational(*r, 0);
    }
    auto r = rational_sqrt(mpq_class(-a));
    if (!r) return std::nullopt;
    return GaussianRational(0, *r);
  }
  // (p+qi)^2 = a+bi  =>  p^2 = (|z|+a)/2, q = b/(2p), |z| must be rational.
  auto modulus = rational_sqrt(z.norm());
  if (!modulus) return std::nullopt;
  auto p = rational_sqrt(mpq_class((*modulus + a) / 2));
  if (!p || sgn(*p) == 0) return std::nullopt;
  mpq_class q = b / (2 * *p);
  return GaussianRational(*p, q);
}

}  // namespace hyperkp

#include "hyperkp/scalar/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "hyperkp/error.hpp"

namespace hyperkp {

namespace {

// mpfr_init2 rejects 0; the precision-less zero uses the minimum internally.
mpfr_prec_t storage_precision(mpfr_prec_t p) { return p ? p : MPFR_PREC_MIN; }

std::string format(const mpfr_t v, int digits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

BigFloatComplex::BigFloatComplex() {
  mpfr_init2(re_, storage_precision(0));
  mpfr_init2(im_, storage_precision(0));
  mpfr_set_zero(re_, 1);
  mpfr_set_zero(im_, 1);
}

BigFloatComplex::BigFloatComplex(ZeroAt, mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(re_, storage_precision(prec));
  mpfr_init2(im_, storage_precision(prec));
  mpfr_set_zero(re_, 1);
  mpfr_set_zero(im_, 1);
}

BigFloatComplex::BigFloatComplex(long v) : BigFloatComplex(ZeroAt{}, v == 0 ? 0 : kDefaultPrecision) {
  mpfr_set_si(re_, v, MPFR_RNDN);
}

BigFloatComplex::BigFloatComplex(const GaussianRational& v, mpfr_prec_t prec) : BigFloatComplex(ZeroAt{}, prec) {
  if (prec < kMinPrecision) throw ParameterError("numeric precision must be at least 128 bits");
  mpfr_set_q(re_, v.re().get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(im_, v.im().get_mpq_t(), MPFR_RNDN);
}

BigFloatComplex BigFloatComplex::parse(const std::string& re, const std::string& im, mpfr_prec_t prec) {
  if (prec < kMinPrecision) throw ParameterError("numeric precision must be at least 128 bits");
  BigFloatComplex out(ZeroAt{}, prec);
  if (mpfr_set_str(out.re_, re.c_str(), 10, MPFR_RNDN) != 0) throw ParseError("malformed decimal '" + re + "'");
  if (mpfr_set_str(out.im_, im.c_str(), 10, MPFR_RNDN) != 0) throw ParseError("malformed decimal '" + im + "'");
  return out;
}

BigFloatComplex BigFloatComplex::primitive_eighth_root(mpfr_prec_t prec) {
  BigFloatComplex out(ZeroAt{}, prec);
  mpfr_set_ui(out.re_, 2, MPFR_RNDN);
  mpfr_rec_sqrt(out.re_, out.re_, MPFR_RNDN);
  mpfr_set(out.im_, out.re_, MPFR_RNDN);
  return out;
}

BigFloatComplex::BigFloatComplex(const BigFloatComplex& o) : prec_(o.prec_) {
  mpfr_init2(re_, storage_precision(prec_));
  mpfr_init2(im_, storage_precision(prec_));
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
}

BigFloatComplex::BigFloatComplex(BigFloatComplex&& o) noexcept : BigFloatComplex() {
  std::swap(prec_, o.prec_);
  mpfr_swap(re_, o.re_);
  mpfr_swap(im_, o.im_);
}

BigFloatComplex& BigFloatComplex::operator=(const BigFloatComplex& o) {
  if (this == &o) return *this;
  mpfr_set_prec(re_, storage_precision(o.prec_));
  mpfr_set_prec(im_, storage_precision(o.prec_));
  prec_ = o.prec_;
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
  return *this;
}

BigFloatComplex& BigFloatComplex::operator=(BigFloatComplex&& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(re_, o.re_);
  mpfr_swap(im_, o.im_);
  return *this;
}

BigFloatComplex::~BigFloatComplex() {
  mpfr_clear(re_);
  mpfr_clear(im_);
}

void BigFloatComplex::raise_precision(mpfr_prec_t prec) {
  if (prec <= prec_) return;
  mpfr_prec_round(re_, prec, MPFR_RNDN);
  mpfr_prec_round(im_, prec, MPFR_RNDN);
  prec_ = prec;
}

double BigFloatComplex::abs_double() const {
  if (prec_ == 0) return 0.0;
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_hypot(t, re_, im_, MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

BigFloatComplex& BigFloatComplex::operator+=(const BigFloatComplex& o) {
  raise_precision(o.prec_);
  mpfr_add(re_, re_, o.re_, MPFR_RNDN);
  mpfr_add(im_, im_, o.im_, MPFR_RNDN);
  return *this;
}

BigFloatComplex& BigFloatComplex::operator-=(const BigFloatComplex& o) {
  raise_precision(o.prec_);
  mpfr_sub(re_, re_, o.re_, MPFR_RNDN);
  mpfr_sub(im_, im_, o.im_, MPFR_RNDN);
  return *this;
}

BigFloatComplex& BigFloatComplex::operator*=(const BigFloatComplex& o) {
  raise_precision(o.prec_);
  if (prec_ == 0) return *this;
  mpfr_t ac, bd, ad, bc;
  for (auto* t : {&ac, &bd, &ad, &bc}) mpfr_init2(*t, prec_);
  mpfr_mul(ac, re_, o.re_, MPFR_RNDN);
  mpfr_mul(bd, im_, o.im_, MPFR_RNDN);
  mpfr_mul(ad, re_, o.im_, MPFR_RNDN);
  mpfr_mul(bc, im_, o.re_, MPFR_RNDN);
  mpfr_sub(re_, ac, bd, MPFR_RNDN);
  mpfr_add(im_, ad, bc, MPFR_RNDN);
  for (auto* t : {&ac, &bd, &ad, &bc}) mpfr_clear(*t);
  return *this;
}

BigFloatComplex BigFloatComplex::operator-() const {
  BigFloatComplex out(*this);
  mpfr_neg(out.re_, out.re_, MPFR_RNDN);
  mpfr_neg(out.im_, out.im_, MPFR_RNDN);
  return out;
}

BigFloatComplex BigFloatComplex::inverse() const {
  if (is_zero()) throw SingularityError("division by zero in numeric mode");
  BigFloatComplex out(ZeroAt{}, prec_);
  mpfr_t n, t;
  mpfr_init2(n, prec_);
  mpfr_init2(t, prec_);
  mpfr_sqr(n, re_, MPFR_RNDN);
  mpfr_sqr(t, im_, MPFR_RNDN);
  mpfr_add(n, n, t, MPFR_RNDN);
  mpfr_div(out.re_, re_, n, MPFR_RNDN);
  mpfr_div(out.im_, im_, n, MPFR_RNDN);
  mpfr_neg(out.im_, out.im_, MPFR_RNDN);
  mpfr_clear(n);
  mpfr_clear(t);
  return out;
}

BigFloatComplex BigFloatComplex::sqrt() const {
  if (is_zero()) return *this;
  // sqrt(z) = p + iq with p = sqrt((|z|+a)/2) >= 0, q = b/(2p); when a < 0
  // compute |q| first to avoid cancellation.
  BigFloatComplex out(ZeroAt{}, prec_);
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_hypot(m, re_, im_, MPFR_RNDN);
  if (mpfr_sgn(re_) >= 0) {
    mpfr_add(out.re_, m, re_, MPFR_RNDN);
    mpfr_div_2ui(out.re_, out.re_, 1, MPFR_RNDN);
    mpfr_sqrt(out.re_, out.re_, MPFR_RNDN);
    mpfr_div(out.im_, im_, out.re_, MPFR_RNDN);
    mpfr_div_2ui(out.im_, out.im_, 1, MPFR_RNDN);
  } else {
    mpfr_sub(out.im_, m, re_, MPFR_RNDN);
    mpfr_div_2ui(out.im_, out.im_, 1, MPFR_RNDN);
    mpfr_sqrt(out.im_, out.im_, MPFR_RNDN);
    if (mpfr_sgn(im_) < 0) mpfr_neg(out.im_, out.im_, MPFR_RNDN);
    mpfr_div(out.re_, im_, out.im_, MPFR_RNDN);
    mpfr_div_2ui(out.re_, out.re_, 1, MPFR_RNDN);
  }
  mpfr_clear(m);
  return out;
}

bool operator==(const BigFloatComplex& a, const BigFloatComplex& b) {
  return mpfr_equal_p(a.re_, b.re_) && mpfr_equal_p(a.im_, b.im_);
}

std::string BigFloatComplex::re_string(int digits) const { return format(re_, digits); }
std::string BigFloatComplex::im_string(int digits) const { return format(im_, digits); }
std::string BigFloatComplex::to_string(int digits) const {
  return "(" + re_string(digits) + ", " + im_string(digits) + ")";
}

}  // namespace hyperkp

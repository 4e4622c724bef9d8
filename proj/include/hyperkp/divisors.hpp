#pragma once

#include <string>
#include <vector>

#include "hyperkp/curve.hpp"
#include "hyperkp/fixtures.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

inline bool has_explicit_y(const DivisorSpec& spec) {
  for (const auto& p : spec.points) {
    if (!p.y) return false;
  }
  return true;
}

// All points need explicit y.
SymDivisor<GaussianRational> rational_divisor(const Curve<GaussianRational>& curve, const DivisorSpec& spec);

// Points without explicit y become ±Y_j with Y_j^2 = curve(x_j).
SymDivisor<EtaleScalar> etale_divisor(const Curve<GaussianRational>& curve, const DivisorSpec& spec);

// y = ±sqrt(curve(x)) on the principal branch when not explicit.
SymDivisor<BigFloatComplex> numeric_divisor(const Curve<GaussianRational>& curve, const DivisorSpec& spec,
                                            mpfr_prec_t precision);

Curve<BigFloatComplex> numeric_curve(const Curve<GaussianRational>& curve, mpfr_prec_t precision);

// Calls fn with the cheapest exact realization of the divisor: rational when
// every y is explicit, étale otherwise. Both calls must return the same type.
template <class Fn>
auto with_exact_divisor(const Curve<GaussianRational>& curve, const DivisorSpec& spec, Fn&& fn) {
  if (has_explicit_y(spec)) return fn(rational_divisor(curve, spec));
  return fn(etale_divisor(curve, spec));
}

std::string describe(const DivisorSpec& spec);

}  // namespace hyperkp

#pragma once

#include <algorithm>
#include <type_traits>

#include "hyperkp/scalar/bigfloat.hpp"
#include "hyperkp/scalar/etale.hpp"
#include "hyperkp/scalar/gaussian_rational.hpp"
#include "hyperkp/scalar/jet3.hpp"

namespace hyperkp {

template <class T>
struct is_jet : std::false_type {};
template <class S>
struct is_jet<Jet3<S>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

template <class T>
struct jet_scalar {
  using type = T;
};
template <class S>
struct jet_scalar<Jet3<S>> {
  using type = S;
};
template <class T>
using jet_scalar_t = typename jet_scalar<T>::type;

// Exact rings decide zero exactly; numeric ones are judged against a threshold.
template <class T>
inline constexpr bool is_exact_v = !std::is_same_v<jet_scalar_t<T>, BigFloatComplex>;

// Converts a base-field value into ring T (through the jet layer when needed).
template <class T, class F>
T embed(const F& v) {
  if constexpr (std::is_same_v<T, F>) {
    return v;
  } else if constexpr (is_jet_v<T>) {
    return T(embed<jet_scalar_t<T>>(v));
  } else {
    return T(v);
  }
}

// Largest coefficient magnitude, for numeric verdicts; exact values report 0 or 1.
inline double magnitude(const GaussianRational& v) { return v.is_zero() ? 0.0 : 1.0; }
inline double magnitude(const EtaleScalar& v) { return v.is_zero() ? 0.0 : 1.0; }
inline double magnitude(const BigFloatComplex& v) { return v.abs_double(); }
template <class S>
double magnitude(const Jet3<S>& v) {
  double m = 0.0;
  for (const auto& c : v.coefficients()) m = std::max(m, magnitude(c));
  return m;
}

}  // namespace hyperkp

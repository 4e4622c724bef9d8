#include "hyperkp/divisors.hpp"

#include "hyperkp/error.hpp"

namespace hyperkp {

SymDivisor<GaussianRational> rational_divisor(const Curve<GaussianRational>& curve, const DivisorSpec& spec) {
  SymDivisor<GaussianRational> d;
  for (const auto& p : spec.points) {
    if (!p.y) throw ParameterError("rational divisor needs explicit y for every point");
    d.x.push_back(p.x);
    d.y.push_back(*p.y);
  }
  validate_divisor(curve, d);
  return d;
}

SymDivisor<EtaleScalar> etale_divisor(const Curve<GaussianRational>& curve, const DivisorSpec& spec) {
  std::vector<GaussianRational> relations;
  for (const auto& p : spec.points) {
    if (p.y) {
      relations.push_back(GaussianRational(1));
    } else {
      GaussianRational n = curve.eval(p.x).first;
      if (n.is_zero()) throw ValidationError("étale point at x = " + p.x.to_string() + " is a branch point");
      relations.push_back(n);
    }
  }
  auto ctx = EtaleContext::make(relations);
  SymDivisor<EtaleScalar> d;
  for (std::size_t j = 0; j < spec.points.size(); ++j) {
    const auto& p = spec.points[j];
    d.x.push_back(EtaleScalar(p.x));
    if (p.y) {
      d.y.push_back(EtaleScalar(*p.y));
    } else {
      EtaleScalar y = EtaleScalar::generator(ctx, static_cast<int>(j));
      d.y.push_back(p.y_sign < 0 ? -y : y);
    }
  }
  validate_divisor(curve, d);
  return d;
}

Curve<BigFloatComplex> numeric_curve(const Curve<GaussianRational>& curve, mpfr_prec_t precision) {
  return curve.map<BigFloatComplex>([&](const GaussianRational& v) { return BigFloatComplex(v, precision); });
}

SymDivisor<BigFloatComplex> numeric_divisor(const Curve<GaussianRational>& curve, const DivisorSpec& spec,
                                            mpfr_prec_t precision) {
  SymDivisor<BigFloatComplex> d;
  for (const auto& p : spec.points) {
    d.x.emplace_back(p.x, precision);
    if (p.y) {
      d.y.emplace_back(*p.y, precision);
    } else {
      BigFloatComplex y = BigFloatComplex(curve.eval(p.x).first, precision).sqrt();
      d.y.push_back(p.y_sign < 0 ? -y : y);
    }
  }
  std::vector<GaussianRational> xs;
  for (const auto& p : spec.points) xs.push_back(p.x);
  validate_positions(curve, xs);
  return d;
}

std::string describe(const DivisorSpec& spec) {
  std::string out = "[";
  for (std::size_t j = 0; j < spec.points.size(); ++j) {
    const auto& p = spec.points[j];
    if (j) out += ", ";
    out += "(" + p.x.to_string() + ", ";
    out += p.y ? p.y->to_string() : std::string(p.y_sign < 0 ? "-" : "+") + "sqrt";
    out += ")";
  }
  return out + "]";
}

}  // namespace hyperkp

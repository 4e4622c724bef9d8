#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperkp/curve.hpp"
#include "hyperkp/fixtures.hpp"
#include "hyperkp/identities.hpp"
#include "hyperkp/scalar/bigfloat.hpp"
#include "hyperkp/scalar/etale.hpp"

namespace hyperkp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "hyperkp.report/v1";
inline constexpr const char* kToolVersion = "0.1.0";

Json scalar_json(const GaussianRational& v);
// Base-field elements print as plain scalars; others as {"etale": {"<mask>": scalar}}.
Json scalar_json(const EtaleScalar& v);
Json scalar_json(const BigFloatComplex& v);

// Accepts {"re": ..., "im": ...}, a bare "p/q" or decimal string, or an integer.
// `where` names the field in error messages.
GaussianRational parse_scalar(const Json& j, const std::string& where);

struct CurveFile {
  Curve<GaussianRational> curve;
  std::vector<GaussianRational> roots;  // optional "roots": the a_i other than the branch point
};

// {"model": "odd"|"even", "genus": g, "coeffs": [...], "branch_point": scalar|null, "roots": [...]}
CurveFile parse_curve(const Json& j);
Json curve_json(const Curve<GaussianRational>& curve, const std::vector<GaussianRational>& roots = {});

// {"points": [{"x": scalar, "y_sign": ±1} | {"x": scalar, "y": scalar}]}
DivisorSpec parse_divisor(const Json& j);
Json divisor_json(const DivisorSpec& spec);

// Throws ParseError carrying the parser's line/column diagnostic.
Json load_json(const std::string& path);

Json report_json(const IdentityReport& r, bool timings);

}  // namespace hyperkp

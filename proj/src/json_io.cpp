#include "hyperkp/json_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hyperkp {
namespace {

using GR = GaussianRational;

// "1.25", "-3e-2", "7/4" or "5".
mpq_class parse_real(const std::string& text, const std::string& where) {
  const auto dot = text.find('.');
  const auto exp = text.find_first_of("eE");
  try {
    if (dot == std::string::npos && exp == std::string::npos) return GR::parse(text).re();
    std::string mant = text.substr(0, exp);
    long e10 = 0;
    if (exp != std::string::npos) e10 = std::stol(text.substr(exp + 1));
    bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
    const bool minus = !mant.empty() && mant[0] == '-';
    if (neg) mant = mant.substr(1);
    std::string digits;
    for (char ch : mant) {
      if (ch == '.') {
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad digit");
      digits += ch;
    }
    if (digits.empty()) throw ParseError("no digits");
    const auto d = mant.find('.');
    if (d != std::string::npos) e10 -= static_cast<long>(mant.size() - d - 1);
    mpz_class num(digits, 10), den(1);
    mpz_class ten(10), p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(e10)));
    if (e10 >= 0) {
      num *= p;
    } else {
      den = p;
    }
    mpq_class q(num, den);
    q.canonicalize();
    return minus ? mpq_class(-q) : q;
  } catch (const std::exception&) {
    throw ParseError(where + ": malformed number '" + text + "'");
  }
}

mpq_class parse_part(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_real(j.get<std::string>(), where);
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  throw ParseError(where + ": expected a \"p/q\" string or an integer");
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

int decimal_digits(mpfr_prec_t prec) { return static_cast<int>(static_cast<double>(prec) * 0.30103) + 1; }

}  // namespace

Json scalar_json(const GR& v) {
  Json j;
  j["re"] = v.re_string();
  j["im"] = v.im_string();
  return j;
}

Json scalar_json(const EtaleScalar& v) {
  if (v.in_base_field()) return scalar_json(v.is_zero() ? GR() : v.base_value());
  Json terms = Json::object();
  for (const auto& [mask, c] : v.terms()) terms[std::to_string(mask)] = scalar_json(c);
  Json j;
  j["etale"] = terms;
  return j;
}

Json scalar_json(const BigFloatComplex& v) {
  Json j;
  const int digits = decimal_digits(v.precision());
  j["re"] = v.re_string(digits);
  j["im"] = v.im_string(digits);
  return j;
}

GR parse_scalar(const Json& j, const std::string& where) {
  if (j.is_object()) {
    mpq_class re = parse_part(field(j, "re", where), where + ".re");
    mpq_class im = j.contains("im") ? parse_part(j.at("im"), where + ".im") : mpq_class(0);
    return GR(re, im);
  }
  return GR(parse_part(j, where));
}

CurveFile parse_curve(const Json& j) {
  const std::string m = field(j, "model", "curve").is_string() ? j.at("model").get<std::string>() : "";
  if (m != "odd" && m != "even") throw ParseError("curve.model: expected \"odd\" or \"even\"");
  const Json& g = field(j, "genus", "curve");
  if (!g.is_number_integer() || g.get<long>() < 1) throw ParseError("curve.genus: expected a positive integer");
  const Json& cs = field(j, "coeffs", "curve");
  if (!cs.is_array()) throw ParseError("curve.coeffs: expected an array");
  std::vector<GR> coeffs;
  for (std::size_t k = 0; k < cs.size(); ++k) coeffs.push_back(parse_scalar(cs[k], "curve.coeffs[" + std::to_string(k) + "]"));
  std::optional<GR> a;
  if (j.contains("branch_point") && !j.at("branch_point").is_null()) a = parse_scalar(j.at("branch_point"), "curve.branch_point");
  const Model model = m == "odd" ? Model::odd : Model::even;
  const int genus = static_cast<int>(g.get<long>());
  const std::size_t want = static_cast<std::size_t>(SuffixRules{model, genus}.curve_degree() + 1);
  if (coeffs.size() != want) {
    throw ParseError("curve.coeffs: genus " + std::to_string(genus) + " " + m + " curve needs " + std::to_string(want) +
                     " coefficients, got " + std::to_string(coeffs.size()));
  }
  CurveFile out{Curve<GR>(model, genus, std::move(coeffs), std::move(a)), {}};
  if (j.contains("roots")) {
    const Json& rs = j.at("roots");
    if (!rs.is_array()) throw ParseError("curve.roots: expected an array");
    for (std::size_t k = 0; k < rs.size(); ++k) out.roots.push_back(parse_scalar(rs[k], "curve.roots[" + std::to_string(k) + "]"));
  }
  return out;
}

Json curve_json(const Curve<GR>& curve, const std::vector<GR>& roots) {
  Json j;
  j["model"] = model_name(curve.model());
  j["genus"] = curve.genus();
  Json cs = Json::array();
  for (const auto& c : curve.descending()) cs.push_back(scalar_json(c));
  j["coeffs"] = cs;
  j["branch_point"] = curve.branch_point() ? scalar_json(*curve.branch_point()) : Json();
  if (!roots.empty()) {
    Json rs = Json::array();
    for (const auto& r : roots) rs.push_back(scalar_json(r));
    j["roots"] = rs;
  }
  return j;
}

DivisorSpec parse_divisor(const Json& j) {
  const Json& pts = field(j, "points", "divisor");
  if (!pts.is_array() || pts.empty()) throw ParseError("divisor.points: expected a non-empty array");
  DivisorSpec spec;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::string where = "divisor.points[" + std::to_string(k) + "]";
    PointSpec p;
    p.x = parse_scalar(field(pts[k], "x", where), where + ".x");
    if (pts[k].contains("y")) {
      p.y = parse_scalar(pts[k].at("y"), where + ".y");
    } else {
      const Json& s = field(pts[k], "y_sign", where);
      if (!s.is_number_integer() || (s.get<long>() != 1 && s.get<long>() != -1)) {
        throw ParseError(where + ".y_sign: expected 1 or -1");
      }
      p.y_sign = static_cast<int>(s.get<long>());
    }
    spec.points.push_back(std::move(p));
  }
  return spec;
}

Json divisor_json(const DivisorSpec& spec) {
  Json pts = Json::array();
  for (const auto& p : spec.points) {
    Json q;
    q["x"] = scalar_json(p.x);
    if (p.y) {
      q["y"] = scalar_json(*p.y);
    } else {
      q["y_sign"] = p.y_sign;
    }
    pts.push_back(q);
  }
  Json j;
  j["points"] = pts;
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json report_json(const IdentityReport& r, bool timings) {
  Json j;
  j["id"] = r.id;
  j["model"] = model_name(r.model);
  j["genus"] = r.genus;
  j["divisor"] = r.divisor;
  j["mode"] = r.exact ? "exact" : "numeric";
  if (r.exact) {
    j["verdict"] = r.passed() ? "exact-zero" : "nonzero";
  } else {
    j["verdict"] = r.passed() ? "below-threshold" : "above-threshold";
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << r.max_relative;
    j["max_relative"] = os.str();
  }
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json k;
    k["label"] = e.label;
    k["weight"] = e.weight;
    k["zero"] = e.zero;
    k["defect"] = e.defect;
    entries.push_back(k);
  }
  j["entries"] = entries;
  if (timings) j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
  return j;
}

}  // namespace hyperkp

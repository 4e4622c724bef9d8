#include "hyperkp/curve.hpp"

#include <utility>

namespace hyperkp {

GaussianRational resultant(const Poly<GaussianRational>& p, const Poly<GaussianRational>& q) {
  const int m = p.degree();
  const int n = q.degree();
  const int size = m + n;
  if (size == 0) return GaussianRational(1);
  std::vector<std::vector<GaussianRational>> a(size, std::vector<GaussianRational>(size));
  // Rows 0..n-1 hold shifted p, rows n..n+m-1 hold shifted q, descending powers.
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) a[r][r + k] = p[m - k];
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) a[n + r][r + k] = q[n - k];
  }
  GaussianRational det(1);
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int r = col; r < size; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return GaussianRational();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    GaussianRational inv = a[col][col].inverse();
    for (int r = col + 1; r < size; ++r) {
      if (a[r][col].is_zero()) continue;
      GaussianRational f = a[r][col] * inv;
      for (int k = col; k < size; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

ValidationCertificate validate(const Curve<GaussianRational>& curve) {
  if (curve.model() == Model::even && curve.coefficient(0).is_zero()) {
    throw ValidationError("even model requires nu_0 != 0");
  }
  if (curve.model() == Model::odd && curve.coefficient(0).is_zero()) {
    throw ValidationError("odd model requires lambda_0 != 0");
  }
  Poly<GaussianRational> p = curve.polynomial();
  GaussianRational res = resultant(p, p.derivative());
  if (res.is_zero()) throw ValidationError("multiple root: resultant of the curve polynomial and its derivative is 0");
  if (curve.branch_point()) {
    if (!curve.eval(*curve.branch_point()).first.is_zero()) {
      throw ValidationError("branch point a is not a root of N");
    }
  }
  return {res};
}

WeightAudit weight_audit(Model model, int genus) {
  SuffixRules rules{model, genus};
  const std::string var = model == Model::even ? "x" : "X";
  const std::string yvar = model == Model::even ? "y" : "Y";
  const std::string coef = model == Model::even ? "nu" : "lambda";
  WeightAudit audit;
  audit.expected = 2 * rules.y_weight();
  audit.terms.push_back({yvar + "^2", 2 * rules.y_weight()});
  const int deg = rules.curve_degree();
  for (int m = 0; m <= deg; ++m) {
    const int power = deg - m;
    std::string mono = coef + "_" + std::to_string(2 * m);
    if (power > 0) mono += "*" + var + "^" + std::to_string(power);
    audit.terms.push_back({mono, 2 * m + 2 * power});
  }
  for (const auto& t : audit.terms) audit.homogeneous = audit.homogeneous && t.weight == audit.expected;
  return audit;
}

Curve<GaussianRational> shift_curve(const Curve<GaussianRational>& curve, const GaussianRational& x0) {
  // P(x + x0) by Horner over polynomials.
  Poly<GaussianRational> p = curve.polynomial();
  Poly<GaussianRational> shift({x0, GaussianRational(1)});
  Poly<GaussianRational> acc({p[p.degree()]});
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc = acc * shift;
    std::vector<GaussianRational> c = acc.coefficients();
    c[0] += p[k];
    acc = Poly<GaussianRational>(std::move(c));
  }
  std::vector<GaussianRational> desc(acc.coefficients().rbegin(), acc.coefficients().rend());
  std::optional<GaussianRational> a;
  if (curve.branch_point()) a = *curve.branch_point() - x0;
  return Curve<GaussianRational>(curve.model(), curve.genus(), std::move(desc), std::move(a));
}

}  // namespace hyperkp

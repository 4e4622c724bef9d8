#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperkp/error.hpp"
#include "hyperkp/poly.hpp"
#include "hyperkp/scalar/traits.hpp"

namespace hyperkp {

enum class Model { odd, even };

inline const char* model_name(Model m) { return m == Model::odd ? "odd" : "even"; }

// Suffix conventions shared by every checker: function suffixes outside the
// model's range read as zero, curve coefficients outside [0, top] read as zero.
struct SuffixRules {
  Model model;
  int genus;

  // Even model: 2,4,...,2g.  Odd model: 1,3,...,2g-1.
  bool valid_function_suffix(int s) const {
    if (model == Model::even) return s >= 2 && s <= 2 * genus && s % 2 == 0;
    return s >= 1 && s <= 2 * genus - 1 && s % 2 != 0;
  }
  // Row/column (0-based) of the G-coefficient holding the suffix.
  int slot(int s) const { return model == Model::even ? (2 * genus + 2 - s) / 2 - 1 : (2 * genus + 1 - s) / 2 - 1; }
  std::vector<int> function_suffixes() const {
    std::vector<int> out;
    for (int i = 1; i <= genus; ++i) out.push_back(model == Model::even ? 2 * i : 2 * i - 1);
    return out;
  }
  // 4g+4 for even, 4g+2 for odd.
  int top_coefficient() const { return model == Model::even ? 4 * genus + 4 : 4 * genus + 2; }
  int curve_degree() const { return model == Model::even ? 2 * genus + 2 : 2 * genus + 1; }
  // Weight of the y (resp. Y) coordinate.
  int y_weight() const { return model == Model::even ? 2 * genus + 2 : 2 * genus + 1; }
};

// y^2 = N(x) = ν0 x^{2g+2} + ν2 x^{2g+1} + ... + ν_{4g+4}   (even)
// Y^2 = M(X) = λ0 X^{2g+1} + λ2 X^{2g} + ... + λ_{4g+2}     (odd, λ0 = 1 unless set)
// Coefficient with suffix 2m multiplies the (deg - m)-th power.
template <class F>
class Curve {
 public:
  Curve() = default;
  // `descending` holds the coefficients with suffixes 0, 2, ..., top.
  Curve(Model model, int genus, std::vector<F> descending, std::optional<F> branch_point = std::nullopt)
      : model_(model), genus_(genus), c_(std::move(descending)), a_(std::move(branch_point)) {
    if (genus_ < 1) throw ParameterError("genus must be at least 1");
    if (static_cast<int>(c_.size()) != rules().curve_degree() + 1) {
      throw ParameterError("curve needs " + std::to_string(rules().curve_degree() + 1) + " coefficients, got " +
                           std::to_string(c_.size()));
    }
  }

  Model model() const { return model_; }
  int genus() const { return genus_; }
  SuffixRules rules() const { return {model_, genus_}; }
  const std::vector<F>& descending() const { return c_; }

  // ν_k or λ_k with the out-of-range conventions (λ_{<0} = ν_{<0} = 0).
  F coefficient(int k) const {
    if (k < 0 || k > rules().top_coefficient()) return F();
    if (k % 2 != 0) throw InternalConsistencyError("odd coefficient suffix " + std::to_string(k));
    return c_[k / 2];
  }
  void set_coefficient(int k, F v) {
    if (k < 0 || k > rules().top_coefficient() || k % 2 != 0) throw ParameterError("bad coefficient suffix");
    c_[k / 2] = std::move(v);
  }

  const std::optional<F>& branch_point() const { return a_; }
  const F& require_branch_point() const {
    if (!a_) throw PreconditionError("even curve has no branch point a set");
    return *a_;
  }
  void set_branch_point(std::optional<F> a) { a_ = std::move(a); }

  Poly<F> polynomial() const {
    std::vector<F> asc(c_.rbegin(), c_.rend());
    return Poly<F>(std::move(asc));
  }

  // (N(x), N'(x)) by Horner.
  template <class X>
  std::pair<X, X> eval(const X& x) const {
    X v = embed<X>(c_[0]);
    X d{};
    for (std::size_t k = 1; k < c_.size(); ++k) {
      d = d * x + v;
      v = v * x + embed<X>(c_[k]);
    }
    return {v, d};
  }

  template <class G, class Fn>
  Curve<G> map(Fn&& fn) const {
    std::vector<G> out;
    for (const auto& v : c_) out.push_back(fn(v));
    std::optional<G> a;
    if (a_) a = fn(*a_);
    return Curve<G>(model_, genus_, std::move(out), std::move(a));
  }

 private:
  Model model_ = Model::odd;
  int genus_ = 1;
  std::vector<F> c_;
  std::optional<F> a_;
};

// g points (x_j, y_j). For étale points y_j is the generator Y_j (times ±1).
template <class S>
struct SymDivisor {
  std::vector<S> x;
  std::vector<S> y;
  int size() const { return static_cast<int>(x.size()); }
};

struct ValidationCertificate {
  GaussianRational resultant;  // Res(P, P'), nonzero
};

// Exact non-degeneracy check; throws ValidationError("multiple root") or
// ValidationError("ν0 = 0 ...").
ValidationCertificate validate(const Curve<GaussianRational>& curve);

// Determinant of the Sylvester matrix of p and q (ascending coefficients).
GaussianRational resultant(const Poly<GaussianRational>& p, const Poly<GaussianRational>& q);

struct WeightTerm {
  std::string monomial;
  int weight;
};
struct WeightAudit {
  int expected = 0;
  std::vector<WeightTerm> terms;
  bool homogeneous = true;
};
WeightAudit weight_audit(Model model, int genus);

// Shifts x -> x + x0 (the curve in the new coordinate is P(x + x0)).
Curve<GaussianRational> shift_curve(const Curve<GaussianRational>& curve, const GaussianRational& x0);

// Weight rescaling: coefficient_k -> s^k coefficient_k, a -> s^2 a.
template <class F>
Curve<F> scale_curve(const Curve<F>& curve, const F& s) {
  std::vector<F> c;
  F sk(1L);
  const F s2 = s * s;
  for (const auto& v : curve.descending()) {
    c.push_back(v * sk);
    sk = sk * s2;
  }
  std::optional<F> a;
  if (curve.branch_point()) a = *curve.branch_point() * s2;
  return Curve<F>(curve.model(), curve.genus(), std::move(c), std::move(a));
}

// x -> s^2 x, y -> s^{y weight} y.
template <class S, class F>
SymDivisor<S> scale_divisor(const Curve<F>& curve, const SymDivisor<S>& d, const F& s) {
  const S s2 = embed<S>(s * s);
  S sy = S(1L);
  for (int k = 0; k < curve.rules().y_weight(); ++k) sy = sy * embed<S>(s);
  SymDivisor<S> out;
  for (int j = 0; j < d.size(); ++j) {
    out.x.push_back(d.x[j] * s2);
    out.y.push_back(d.y[j] * sy);
  }
  return out;
}

// Pairwise-distinct x and (even model) x != a; throws ValidationError.
template <class F, class S>
void validate_positions(const Curve<F>& curve, const std::vector<S>& xs) {
  const int g = curve.genus();
  if (static_cast<int>(xs.size()) != g) throw ValidationError("divisor needs exactly " + std::to_string(g) + " points");
  for (int i = 0; i < g; ++i) {
    for (int j = i + 1; j < g; ++j) {
      if (is_zero(xs[i] - xs[j])) {
        throw ValidationError("divisor x-coordinates must be pairwise distinct (points " + std::to_string(i + 1) +
                              ", " + std::to_string(j + 1) + ")");
      }
    }
    if (curve.model() == Model::even && curve.branch_point()) {
      if (is_zero(xs[i] - embed<S>(*curve.branch_point()))) {
        throw ValidationError("divisor point " + std::to_string(i + 1) + " has x equal to the branch point a");
      }
    }
  }
}

// Positions plus y_j^2 = curve(x_j), the latter exactly in exact rings.
template <class F, class S>
void validate_divisor(const Curve<F>& curve, const SymDivisor<S>& d) {
  validate_positions(curve, d.x);
  if (d.y.size() != d.x.size()) throw ValidationError("divisor has mismatched x and y counts");
  if constexpr (is_exact_v<S>) {
    for (int i = 0; i < d.size(); ++i) {
      if (!is_zero(d.y[i] * d.y[i] - curve.eval(d.x[i]).first)) {
        throw ValidationError("point " + std::to_string(i + 1) + " is not on the curve");
      }
    }
  }
}

}  // namespace hyperkp

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperkp/scalar/gaussian_rational.hpp"

namespace hyperkp {

// Relations Y_j^2 = n_j of the étale algebra Q(i)[Y_1..Y_m]/(Y_j^2 - n_j).
// Immutable; shared by every element of the algebra.
class EtaleContext {
 public:
  explicit EtaleContext(std::vector<GaussianRational> relations);

  static std::shared_ptr<const EtaleContext> make(std::vector<GaussianRational> relations) {
    return std::make_shared<const EtaleContext>(std::move(relations));
  }

  int generator_count() const { return static_cast<int>(relations_.size()); }
  std::uint32_t dimension() const { return std::uint32_t{1} << relations_.size(); }
  const std::vector<GaussianRational>& relations() const { return relations_; }
  // Product of n_j over the bits of `mask`; the factor picked up by Y^S * Y^T on S & T.
  const GaussianRational& relation_product(std::uint32_t mask) const { return products_[mask]; }

  bool same_relations(const EtaleContext& other) const { return relations_ == other.relations_; }

 private:
  std::vector<GaussianRational> relations_;
  std::vector<GaussianRational> products_;
};

// Element Σ_S c_S Π_{j∈S} Y_j, stored sparsely as (mask, coefficient) pairs
// sorted by mask. Elements with no context are base-field constants and
// combine with any algebra.
class EtaleScalar {
 public:
  using Term = std::pair<std::uint32_t, GaussianRational>;

  EtaleScalar() = default;
  EtaleScalar(GaussianRational c);  // NOLINT: base field embeds implicitly
  EtaleScalar(long c) : EtaleScalar(GaussianRational(c)) {}  // NOLINT

  static EtaleScalar generator(std::shared_ptr<const EtaleContext> ctx, int j);
  static EtaleScalar from_terms(std::shared_ptr<const EtaleContext> ctx, std::vector<Term> terms);

  const std::shared_ptr<const EtaleContext>& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  GaussianRational coefficient(std::uint32_t mask) const;

  bool is_zero() const { return terms_.empty(); }
  bool in_base_field() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  // Throws ParameterError if the element involves any Y_j.
  GaussianRational base_value() const;

  // The involution Y_j -> -Y_j.
  EtaleScalar flip(int j) const;
  // Throws SingularityError naming the relation whose conjugation step vanished.
  EtaleScalar inverse() const;

  EtaleScalar& operator+=(const EtaleScalar& o);
  EtaleScalar& operator-=(const EtaleScalar& o);
  EtaleScalar& operator*=(const EtaleScalar& o);
  EtaleScalar& operator/=(const EtaleScalar& o) { return *this *= o.inverse(); }
  friend EtaleScalar operator+(EtaleScalar a, const EtaleScalar& b) { return a += b; }
  friend EtaleScalar operator-(EtaleScalar a, const EtaleScalar& b) { return a -= b; }
  friend EtaleScalar operator*(const EtaleScalar& a, const EtaleScalar& b);
  friend EtaleScalar operator/(EtaleScalar a, const EtaleScalar& b) { return a /= b; }
  EtaleScalar operator-() const;

  friend bool operator==(const EtaleScalar& a, const EtaleScalar& b);

  std::string to_string() const;

 private:
  static std::shared_ptr<const EtaleContext> merge(const EtaleScalar& a, const EtaleScalar& b);

  std::shared_ptr<const EtaleContext> ctx_;
  std::vector<Term> terms_;
};

inline bool is_zero(const EtaleScalar& v) { return v.is_zero(); }
inline EtaleScalar inverse(const EtaleScalar& v) { return v.inverse(); }
inline EtaleScalar lift(const GaussianRational& v, const EtaleScalar&) { return EtaleScalar(v); }

}  // namespace hyperkp

#include "hyperkp/scalar/etale.hpp"

#include <algorithm>
#include <bit>

#include "hyperkp/error.hpp"

namespace hyperkp {

EtaleContext::EtaleContext(std::vector<GaussianRational> relations) : relations_(std::move(relations)) {
  if (relations_.size() > 16) throw ParameterError("étale algebra limited to 16 generators");
  for (std::size_t j = 0; j < relations_.size(); ++j) {
    if (relations_[j].is_zero()) {
      throw ParameterError("étale relation n_" + std::to_string(j + 1) + " must be nonzero");
    }
  }
  products_.resize(dimension());
  products_[0] = GaussianRational(1);
  for (std::uint32_t mask = 1; mask < dimension(); ++mask) {
    int low = std::countr_zero(mask);
    products_[mask] = products_[mask & (mask - 1)] * relations_[low];
  }
}

EtaleScalar::EtaleScalar(GaussianRational c) {
  if (!c.is_zero()) terms_.emplace_back(0u, std::move(c));
}

EtaleScalar EtaleScalar::generator(std::shared_ptr<const EtaleContext> ctx, int j) {
  if (!ctx || j < 0 || j >= ctx->generator_count()) throw ParameterError("étale generator index out of range");
  EtaleScalar y;
  y.ctx_ = std::move(ctx);
  y.terms_.emplace_back(std::uint32_t{1} << j, GaussianRational(1));
  return y;
}

EtaleScalar EtaleScalar::from_terms(std::shared_ptr<const EtaleContext> ctx, std::vector<Term> terms) {
  EtaleScalar out;
  out.ctx_ = std::move(ctx);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  for (auto& t : terms) {
    if (t.first != 0 && (!out.ctx_ || t.first >= out.ctx_->dimension())) {
      throw ParameterError("étale term mask outside the algebra");
    }
    if (t.second.is_zero()) continue;
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
      if (out.terms_.back().second.is_zero()) out.terms_.pop_back();
    } else {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

GaussianRational EtaleScalar::coefficient(std::uint32_t mask) const {
  for (const auto& [m, c] : terms_) {
    if (m == mask) return c;
  }
  return {};
}

GaussianRational EtaleScalar::base_value() const {
  if (!in_base_field()) throw ParameterError("étale element is not in the base field");
  return terms_.empty() ? GaussianRational() : terms_[0].second;
}

std::shared_ptr<const EtaleContext> EtaleScalar::merge(const EtaleScalar& a, const EtaleScalar& b) {
  if (!a.ctx_) return b.ctx_;
  if (!b.ctx_ || a.ctx_ == b.ctx_) return a.ctx_;
  if (!a.ctx_->same_relations(*b.ctx_)) throw ParameterError("étale operands over different relations");
  return a.ctx_;
}

EtaleScalar EtaleScalar::flip(int j) const {
  EtaleScalar out = *this;
  for (auto& [m, c] : out.terms_) {
    if ((m >> j) & 1u) c = -c;
  }
  return out;
}

EtaleScalar EtaleScalar::operator-() const {
  EtaleScalar out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

EtaleScalar& EtaleScalar::operator+=(const EtaleScalar& o) {
  if (o.terms_.empty()) return *this;
  auto ctx = merge(*this, o);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      merged.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->first < i->first) {
      merged.push_back(*j++);
    } else {
      GaussianRational s = i->second + j->second;
      if (!s.is_zero()) merged.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  ctx_ = std::move(ctx);
  return *this;
}

EtaleScalar& EtaleScalar::operator-=(const EtaleScalar& o) { return *this += -o; }

EtaleScalar operator*(const EtaleScalar& a, const EtaleScalar& b) {
  EtaleScalar out;
  if (a.terms_.empty() || b.terms_.empty()) return out;
  out.ctx_ = EtaleScalar::merge(a, b);
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    const auto& [ma, ca] = a.terms_[0];
    const auto& [mb, cb] = b.terms_[0];
    GaussianRational c = ca * cb;
    if (std::uint32_t common = ma & mb) c *= out.ctx_->relation_product(common);
    out.terms_.emplace_back(ma ^ mb, std::move(c));
    return out;
  }
  const std::uint32_t dim = out.ctx_ ? out.ctx_->dimension() : 1u;
  std::vector<GaussianRational> acc(dim);
  std::vector<bool> touched(dim, false);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      GaussianRational c = ca * cb;
      if (std::uint32_t common = ma & mb) c *= out.ctx_->relation_product(common);
      acc[ma ^ mb] += c;
      touched[ma ^ mb] = true;
    }
  }
  for (std::uint32_t m = 0; m < dim; ++m) {
    if (touched[m] && !acc[m].is_zero()) out.terms_.emplace_back(m, std::move(acc[m]));
  }
  return out;
}

EtaleScalar& EtaleScalar::operator*=(const EtaleScalar& o) {
  *this = *this * o;
  return *this;
}

EtaleScalar EtaleScalar::inverse() const {
  if (terms_.empty()) throw SingularityError("étale inverse of zero");
  if (in_base_field()) return EtaleScalar(terms_[0].second.inverse());
  // Multiply by every sign-flip conjugate; the accumulated denominator ends in Q(i).
  EtaleScalar numerator(1);
  EtaleScalar denominator = *this;
  for (int j = 0; j < ctx_->generator_count(); ++j) {
    EtaleScalar conj = denominator.flip(j);
    if (conj == denominator) continue;
    numerator *= conj;
    denominator *= conj;
    if (denominator.is_zero()) {
      throw SingularityError("étale element is a zero divisor: norm vanishes at relation Y_" +
                             std::to_string(j + 1) + "^2 = " + ctx_->relations()[j].to_string());
    }
  }
  GaussianRational d = denominator.base_value();
  return numerator * EtaleScalar(d.inverse());
}

bool operator==(const EtaleScalar& a, const EtaleScalar& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
  }
  return true;
}

std::string EtaleScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (int j = 0; j < 32; ++j) {
      if ((m >> j) & 1u) out += "*Y" + std::to_string(j + 1);
    }
  }
  return out;
}

}  // namespace hyperkp

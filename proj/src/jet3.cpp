#include "hyperkp/scalar/jet3.hpp"

namespace hyperkp {

namespace {

std::vector<Exponent3> build_monomials(int order) {
  std::vector<Exponent3> out;
  out.reserve(jet_size(order));
  for (int n = 0; n <= order; ++n) {
    for (int a = n; a >= 0; --a) {
      for (int c = 0; c <= n - a; ++c) out.push_back({a, n - a - c, c});
    }
  }
  return out;
}

}  // namespace

const std::vector<Exponent3>& jet_monomials(int order) {
  static const auto tables = [] {
    std::array<std::vector<Exponent3>, kMaxJetOrder + 1> t;
    for (int n = 0; n <= kMaxJetOrder; ++n) t[n] = build_monomials(n);
    return t;
  }();
  if (order > kMaxJetOrder) throw ParameterError("jet order above " + std::to_string(kMaxJetOrder));
  return tables[std::max(order, 0)];
}

}  // namespace hyperkp

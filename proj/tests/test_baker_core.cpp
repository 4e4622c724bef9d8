#include <gtest/gtest.h>

#include "fixture_support.hpp"
#include "hyperkp/baker.hpp"
#include "hyperkp/bridge.hpp"

using namespace hyperkp;
using namespace hyperkp::testing;
using GR = GaussianRational;
using E = EtaleScalar;

namespace {

Fixture pointed(Model model, int g, std::uint64_t seed) {
  return make_fixture(model, g, {Constraint::rational_points}, seed);
}

// G straight from its rational definition at one (e1, e2), no polynomial division.
GR g_by_definition(const Curve<GR>& c, const SymDivisor<GR>& d, const GR& e1, const GR& e2) {
  std::vector<GR> roots;
  if (c.model() == Model::even) roots.push_back(*c.branch_point());
  roots.insert(roots.end(), d.x.begin(), d.x.end());
  auto R = [&](const GR& e) {
    GR p(1);
    for (const auto& r : roots) p *= e - r;
    return p;
  };
  const int off = static_cast<int>(roots.size()) - c.genus();
  GR B;
  for (int i = 0; i < c.genus(); ++i) {
    GR dR(1), a1(1), a2(1);
    for (int k = 0; k < static_cast<int>(roots.size()); ++k) {
      if (k == off + i) continue;
      dR *= d.x[i] - roots[k];
      a1 *= e1 - roots[k];
      a2 *= e2 - roots[k];
    }
    B += d.y[i] / dR * a1 * a2;
  }
  const GR r1 = R(e1), r2 = R(e2), diff2 = (e1 - e2) * (e1 - e2);
  const GR f = pair_poly_f<GR>(c)(e1, e2);
  return f / diff2 + B * B / (r1 * r2) - c.eval(e1).first * r2 / (diff2 * r1) - c.eval(e2).first * r1 / (diff2 * r2);
}

}  // namespace

TEST(PairPolyF, GenusOneOddLiteral) {
  Curve<GR> m(Model::odd, 1, {GR(1), GR(2), GR(3), GR(5)});
  auto f = pair_poly_f<GR>(m);
  // 2λ6 + λ4(e1+e2) + e1e2(2λ2 + e1 + e2)
  for (long a = -2; a <= 2; ++a) {
    for (long b = -2; b <= 2; ++b) {
      GR e1(a), e2(b);
      EXPECT_EQ(f(e1, e2), GR(10) + GR(3) * (e1 + e2) + e1 * e2 * (GR(4) + e1 + e2));
    }
  }
}

TEST(PairPolyF, GenusOneEvenLiteral) {
  Curve<GR> n(Model::even, 1, {GR(1), GR(0), GR(0), GR(0), GR(-1)}, GR(1));
  auto f = pair_poly_f<GR>(n);
  // x^4 - 1: -2 + 2 e1^2 e2^2
  EXPECT_EQ(f(GR(2), GR(3)), GR(-2) + GR(72));
  EXPECT_EQ(f.coeff(1, 1), GR(0));
}

TEST(PairPolyF, DiagonalIsTwiceCurveAndDerivative) {
  Gen gen(21);
  for (int trial = 0; trial < 12; ++trial) {
    const int g = 1 + trial % 4;
    auto fx = make_fixture(trial % 2 ? Model::odd : Model::even, g, {}, 200 + trial);
    auto f = pair_poly_f<GR>(fx.curve);
    EXPECT_TRUE(f.is_symmetric());
    const auto diag = f.diagonal();
    const auto deriv = f.diagonal_of_e2_derivative();
    for (int k = 0; k < 4; ++k) {
      GR e = gen.gaussian();
      auto [n, dn] = fx.curve.eval(e);
      EXPECT_EQ(diag(e), n + n);
      EXPECT_EQ(deriv(e), dn);
    }
  }
}

TEST(BuildF, VanishesOnDivisorBranchPointAndDiagonal) {
  Gen gen(5);
  for (int g = 1; g <= 3; ++g) {
    for (Model model : {Model::even, Model::odd}) {
      auto fx = pointed(model, g, 30 + g);
      for (const auto& d : rational_divisors(fx, 2, g)) {
        auto F = build_F(fx.curve, d.x, d.y);
        for (int k = 0; k < 3; ++k) {
          GR e = gen.gaussian();
          for (int j = 0; j < g; ++j) {
            EXPECT_TRUE(is_zero(F(d.x[j], e)));
            EXPECT_TRUE(is_zero(F(e, d.x[j])));
          }
          if (model == Model::even) EXPECT_TRUE(is_zero(F(*fx.curve.branch_point(), e)));
          EXPECT_TRUE(is_zero(F(e, e)));
        }
      }
    }
  }
}

TEST(BuildG, MatchesRationalDefinition) {
  Gen gen(8);
  for (int g = 1; g <= 3; ++g) {
    for (Model model : {Model::even, Model::odd}) {
      auto fx = pointed(model, g, 40 + g);
      for (const auto& d : rational_divisors(fx, 2, 3 * g)) {
        // Tensor grid of sample points away from the roots of R.
        std::vector<GR> p, qv;
        for (int k = 0; k < g; ++k) {
          p.push_back(GR(mpq_class(1000 + 7 * k, 13)));
          qv.push_back(GR(mpq_class(-2000 - 11 * k, 17)));
        }
        std::vector<std::vector<GR>> a;
        std::vector<GR> b;
        for (const auto& e1 : p) {
          for (const auto& e2 : qv) {
            std::vector<GR> row;
            for (int i = 0; i < g; ++i) {
              for (int j = 0; j < g; ++j) row.push_back(power(e1, i) * power(e2, j));
            }
            a.push_back(row);
            b.push_back(g_by_definition(fx.curve, d, e1, e2));
          }
        }
        auto sol = solve_linear(a, b);
        ASSERT_TRUE(sol.has_value());
        auto G = build_G(fx.curve, d.x, d.y);
        for (int i = 0; i < g; ++i) {
          for (int j = 0; j < g; ++j) EXPECT_EQ(G.coeff(i, j), (*sol)[i * g + j]) << "g=" << g << " slot " << i << j;
        }
        // Off-grid: G has no terms beyond degree g-1.
        GR e1 = GR(mpq_class(31, 3)), e2 = GR(mpq_class(-45, 7));
        EXPECT_EQ(G(e1, e2), g_by_definition(fx.curve, d, e1, e2));
        EXPECT_TRUE(G.is_symmetric());
      }
    }
  }
}

TEST(BuildG, EtaleDivisorsGenusFour) {
  auto fx = make_fixture(Model::even, 4, {}, 77);
  for (const auto& d : etale_divisors(fx, 1, 4)) {
    auto P = p_matrix_even(fx.curve, d);
    EXPECT_TRUE(P.is_symmetric());
    EXPECT_EQ(P.at(2, 9), E());
    EXPECT_EQ(P.at(3, 4), E());
  }
}

TEST(PMatrix, OddGenusOneIsX) {
  Curve<GR> m(Model::odd, 1, {GR(1), GR(0), GR(0), GR(-1)});
  for (long x : {2L, 3L, -5L}) {
    auto d = etale_at(m, {x});
    EXPECT_EQ(p_matrix_odd(m, d).at(1, 1), E(GR(x)));
  }
}

TEST(PMatrix, OddBranchPointRejected) {
  Curve<GR> m(Model::odd, 1, {GR(1), GR(0), GR(0), GR(-1)});
  SymDivisor<GR> d{{GR(1)}, {GR(0)}};
  EXPECT_THROW(p_matrix_odd(m, d), SingularityError);
  EXPECT_THROW(p_matrix_even(m, d), ParameterError);
}

TEST(PMatrix, WeightScaling) {
  Gen gen(9);
  for (int g = 1; g <= 3; ++g) {
    for (Model model : {Model::even, Model::odd}) {
      auto fx = pointed(model, g, 60 + g);
      const GR s(mpq_class(gen.integer(2, 5), gen.integer(1, 3)));
      const auto sc = scale_curve(fx.curve, s);
      for (const auto& d : rational_divisors(fx, 1, g)) {
        auto base = p_matrix(fx.curve, d.x, d.y);
        auto ds = scale_divisor(fx.curve, d, s);
        auto moved = p_matrix(sc, ds.x, ds.y);
        for (int i : fx.curve.rules().function_suffixes()) {
          for (int j : fx.curve.rules().function_suffixes()) EXPECT_EQ(moved.at(i, j), base.at(i, j) * power(s, i + j));
        }
      }
    }
  }
}

TEST(Chi, Examples) {
  std::vector<GR> xs{GR(1), GR(2)};
  auto chi = chi_coefficients(xs);
  ASSERT_EQ(chi.size(), 3u);
  EXPECT_EQ(chi[1], GR(-3));
  EXPECT_EQ(chi[2], GR(2));
  EXPECT_EQ(chi_eval(chi, 0, GR(7)), GR(1));
  EXPECT_EQ(chi_eval(chi, 1, GR(7)), GR(4));
  EXPECT_EQ(chi_eval(chi, 2, GR(7)), GR(30));
  EXPECT_EQ(chi_derivative_at(xs, 0), GR(-1));
  EXPECT_EQ(chi_derivative_at(std::vector<GR>{GR(0), GR(2), GR(5)}, 1), GR(-6));
}

TEST(Chi, LagrangeDuality) {
  // Σ_j x_j^{g-k} χ_{m-1}(x_j) / χ_g'(x_j) = δ_{km}.
  Gen gen(13);
  for (int g = 1; g <= 4; ++g) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<GR> xs;
      for (int j = 0; j < g; ++j) xs.push_back(GR(10 * j) + gen.gaussian());
      auto chi = chi_coefficients(xs);
      for (int k = 1; k <= g; ++k) {
        for (int m = 1; m <= g; ++m) {
          GR sum;
          for (int j = 0; j < g; ++j) sum += power(xs[j], g - k) * chi_eval(chi, m - 1, xs[j]) / chi_derivative_at(xs, j);
          EXPECT_EQ(sum, GR(k == m ? 1 : 0));
        }
      }
    }
  }
}

TEST(DerivationField, DualityMatricesAreIdentity) {
  for (int g = 1; g <= 4; ++g) {
    for (Model model : {Model::even, Model::odd}) {
      auto fx = make_fixture(model, g, {}, 90 + g);
      for (const auto& d : etale_divisors(fx, 2, g)) {
        auto m = duality_matrix(fx.curve, d.x, d.y);
        for (int i = 0; i < g; ++i) {
          for (int k = 0; k < g; ++k) EXPECT_EQ(m[i][k], E(i == k ? 1 : 0)) << model_name(model) << " g=" << g;
        }
      }
    }
  }
}

TEST(DerivationField, RejectsBadSuffix) {
  auto fx = make_fixture(Model::odd, 2, {}, 3);
  std::vector<GR> xs{GR(1), GR(2)}, ys{GR(1), GR(1)};
  EXPECT_THROW(derivation_field(fx.curve, xs, ys, 2), ParameterError);
  EXPECT_THROW(derivation_field(fx.curve, xs, ys, 5), ParameterError);
  std::vector<GR> same{GR(1), GR(1)};
  EXPECT_THROW(derivation_field(fx.curve, same, ys, 1), SingularityError);
}

TEST(Decomposition, RecoversQuotient) {
  Gen gen(17);
  for (int deg = 0; deg <= 3; ++deg) {
    BivarPoly<GR> f(deg + 2, deg + 2), h(deg, deg);
    for (int i = 0; i <= deg + 2; ++i) {
      for (int j = 0; j <= i; ++j) f.at(i, j) = f.at(j, i) = gen.gaussian();
    }
    for (int i = 0; i <= deg; ++i) {
      for (int j = 0; j <= i; ++j) h.at(i, j) = h.at(j, i) = gen.gaussian();
    }
    auto fhat = f + h.times_diff_squared();
    auto n = decomposition_matrix(fhat, f);
    for (int i = 0; i <= deg; ++i) {
      for (int j = 0; j <= deg; ++j) EXPECT_EQ(n.coeff(i, j), h.coeff(i, j));
    }
  }
  BivarPoly<GR> f(1, 1), g1(1, 1);
  g1.at(1, 0) = GR(1);
  EXPECT_THROW(decomposition_matrix(g1, f), InternalConsistencyError);
}

TEST(PMatrix, EvenGenusOneClosedForm) {
  // P_22 = (a(ν2 + 2aν0) x1 + ν6 + 2aν4 + 2a²ν2 + 2a³ν0) / (x1 - a)
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto fx = make_fixture(Model::even, 1, {Constraint::rational_roots}, seed);
    const auto& c = fx.curve;
    const GR a = *c.branch_point();
    auto nu = [&](int k) { return c.coefficient(k); };
    for (const auto& d : etale_divisors(fx, 2, seed)) {
      const E x = d.x[0];
      E num = x * E(a * (nu(2) + GR(2) * a * nu(0))) +
              E(nu(6) + GR(2) * a * nu(4) + GR(2) * a * a * nu(2) + GR(2) * a * a * a * nu(0));
      EXPECT_EQ(p_matrix_even(c, d).at(2, 2), num / (x - E(a)));
    }
  }
}

#include <gtest/gtest.h>

#include "fixture_support.hpp"
#include "hyperkp/bridge.hpp"

using namespace hyperkp;
using namespace hyperkp::testing;
using E = EtaleScalar;
using GR = GaussianRational;

namespace {

Fixture rooted(int g, std::uint64_t seed, bool a_zero = false) {
  std::set<Constraint> cs{Constraint::rational_roots};
  if (a_zero) cs.insert(Constraint::a_zero);
  return make_fixture(Model::even, g, cs, seed);
}

bool defects_zero(const Defects<GR>& ds) {
  for (const auto& d : ds) {
    if (!is_zero(d.value())) {
      ADD_FAILURE() << d.label << ": " << d.lhs.to_string() << " vs " << d.rhs.to_string();
      return false;
    }
  }
  return true;
}

const Defect<E>* find(const Defects<E>& ds, const std::string& label) {
  for (const auto& d : ds) {
    if (d.label == label) return &d;
  }
  return nullptr;
}

}  // namespace

TEST(Zeta, ImagesLieOnTransportedCurve) {
  auto fx = rooted(2, 4);
  auto b = standard_bridge(fx.curve, q(1, 2));
  int checked = 0;
  for (const auto& d : etale_divisors(fx, 3, 8)) {
    for (int j = 0; j < d.size() && checked < 5; ++j, ++checked) {
      auto [X, Y] = zeta_map(b, d.x[j], d.y[j]);
      EXPECT_EQ(Y * Y, b.odd.eval(X).first);
    }
  }
  EXPECT_EQ(checked, 5);
}

TEST(Zeta, CommutesWithInvolutions) {
  auto fx = rooted(2, 5);
  auto b = standard_bridge(fx.curve, q(2));
  auto d = etale_divisors(fx, 1, 1).front();
  auto [X, Y] = zeta_map(b, d.x[0], d.y[0]);
  auto [Xm, Ym] = zeta_map(b, d.x[0], -d.y[0]);
  EXPECT_EQ(X, Xm);
  EXPECT_EQ(Ym, -Y);
}

TEST(Zeta, PoleAtBranchPoint) {
  auto fx = rooted(1, 6);
  auto b = standard_bridge(fx.curve, q(1));
  EXPECT_THROW(zeta_map(b, b.a, GR(0)), SingularityError);
}

TEST(Zeta, GenusOneHandExpansion) {
  // N = x^4 - 1, a = 1, N'(1) = 4, s = t = 4: M̃ = (X+2)((X+2)^2+4) = X^3 + 6X^2 + 16X + 16.
  Curve<GR> c(Model::even, 1, {GR(1), GR(0), GR(0), GR(0), GR(-1)}, GR(1));
  auto b = make_bridge(c, GR(4), GR(4));
  EXPECT_EQ(b.odd.descending(), (std::vector<GR>{GR(1), GR(6), GR(16), GR(16)}));
  auto d = etale_at(c, {2});
  auto [X, Y] = zeta_map(b, d.x[0], d.y[0]);
  EXPECT_EQ(X, E(4));
  EXPECT_EQ(Y, E(4) * d.y[0]);
  EXPECT_EQ(Y * Y, E(240));
  const std::vector<GR> roots{GR(-1), GR(0, 1), GR(0, -1)};
  EXPECT_EQ(m_tilde_from_roots(b.s, b.a, roots), b.odd.descending());
}

TEST(Bridge, ConstraintEnforced) {
  auto fx = rooted(2, 7);
  const GR dNa = fx.curve.eval(*fx.curve.branch_point()).second;
  EXPECT_THROW(make_bridge(fx.curve, dNa, dNa), PreconditionError);
  EXPECT_THROW(make_bridge(fx.curve, GR(0), GR(1)), PreconditionError);
  // The alternative t = N'(a)^{g+1} w^{2g+1} pattern misses the constraint by a factor N'(a)^2.
  EXPECT_THROW(make_bridge(fx.curve, dNa, dNa * dNa * dNa), PreconditionError);
}

TEST(Bridge, CurveLevelInvariants) {
  for (int g = 1; g <= 3; ++g) {
    for (bool az : {false, true}) {
      auto fx = rooted(g, 20 + g, az);
      auto b = standard_bridge(fx.curve, q(3, 2));
      EXPECT_TRUE(defects_zero(bridge_curve_defects(fx.curve, b, &fx.roots))) << "g=" << g << " a0=" << az;
    }
  }
}

TEST(Bridge, TransportedFEqualsFWhenAZero) {
  auto fx = rooted(2, 30, true);
  auto b = standard_bridge(fx.curve, q(1));
  auto fbar = transported_f(b);
  auto f = pair_poly_f<GR>(fx.curve);
  EXPECT_TRUE((fbar - f).is_zero_poly());
  for (const auto& row : n_matrix(fx.curve, b)) {
    for (const auto& v : row) EXPECT_TRUE(is_zero(v));
  }
}

TEST(BuildD, DiagonalWhenAZero) {
  const GR s = q(3), t = q(5, 2);
  auto D = build_D(3, GR(0), s, t);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      GR expect = i == j ? pow(s, 3 - i) * t.inverse() : GR(0);
      EXPECT_EQ(D[i][j], expect);
    }
  }
}

TEST(BuildD, GenusTwoDisplay) {
  const GR a = q(-2, 3), s = q(7), t = q(3);
  auto D = build_D(2, a, s, t);
  const GR k = s * t.inverse();
  EXPECT_EQ(D[0][0], k * s);
  EXPECT_EQ(D[0][1], GR(0));
  EXPECT_EQ(D[1][0], -(k * a));
  EXPECT_EQ(D[1][1], k);
}

TEST(BuildD, PullbackMatchesJetDerivative) {
  // Oracle: dX/dx from a jet X(x + t), then -X^{g-i} X'(x) y / Y against Σ_j D_ij x^{j-1}.
  Gen gen(5);
  for (int g = 1; g <= 3; ++g) {
    auto fx = rooted(g, 40 + g);
    auto b = standard_bridge(fx.curve, q(1, 3));
    for (int n = 0; n < 5; ++n) {
      GR x = GR(gen.rational(9));
      if (is_zero(x - b.a)) x = x + GR(1);
      using J = Jet3<GR>;
      J xt = J::variable(0, x, 1);
      J Xt = J(b.s) * (xt - J(b.a)).inverse();
      GR dX = Xt.coeff(1, 0, 0);
      GR X = Xt.coeff(0, 0, 0);
      // Y/y = t/(x-a)^{g+1}.
      GR y_over_Y = pow(x - b.a, g + 1) * b.t.inverse();
      for (int i = 1; i <= g; ++i) {
        GR lhs = -(pow(X, g - i) * dX * y_over_Y);
        GR rhs;
        for (int j = 1; j <= g; ++j) rhs = rhs + b.D[i - 1][j - 1] * pow(x, j - 1);
        EXPECT_EQ(lhs, rhs) << "g=" << g << " i=" << i;
      }
    }
    std::vector<GR> xs{q(5), q(-7, 2), q(1, 9)};
    EXPECT_TRUE(defects_zero(pullback_defects(b, xs)));
  }
}

TEST(RelatePwp, GenusTwoAZeroScaledEntries) {
  auto fx = rooted(2, 50, true);
  auto b = standard_bridge(fx.curve, q(2, 5));
  auto d = etale_divisors(fx, 1, 1).front();
  auto P = p_matrix_even(fx.curve, d);
  auto W = p_matrix_odd(b.odd, zeta_divisor(b, d));
  const E s = E(b.s);
  const E ti2 = E((b.t * b.t).inverse());
  EXPECT_EQ(P.at(2, 4), s * s * s * ti2 * W.at(1, 3));
  EXPECT_EQ(P.at(4, 4), s * s * s * s * ti2 * W.at(1, 1));
  EXPECT_EQ(P.at(2, 2), s * s * ti2 * W.at(3, 3));
}

TEST(RelatePwp, GenusTwoGeneralDisplay) {
  auto fx = rooted(2, 51);
  ASSERT_FALSE(is_zero(*fx.curve.branch_point()));
  auto b = standard_bridge(fx.curve, q(1, 2));
  for (const auto& d : etale_divisors(fx, 2, 3)) {
    auto P = p_matrix_even(fx.curve, d);
    auto W = p_matrix_odd(b.odd, zeta_divisor(b, d));
    const E s = E(b.s), a = E(b.a), ti2 = E((b.t * b.t).inverse());
    auto l = [&](int k) { return E(b.odd.coefficient(k)); };
    E p24 = ti2 * (s * s * s * W.at(1, 3) - a * s * s * W.at(3, 3) - a * a * s * l(8) + E(2) * a * a * a * l(10));
    E p44 = ti2 * (s * s * s * s * W.at(1, 1) - E(2) * a * s * s * s * W.at(1, 3) + a * a * s * s * W.at(3, 3) +
                   a * s * s * s * l(4) - E(2) * a * a * s * s * l(6) + E(4) * a * a * a * s * l(8) -
                   E(6) * a * a * a * a * l(10));
    EXPECT_EQ(P.at(2, 4), p24);
    EXPECT_EQ(P.at(4, 4), p44);
  }
}

TEST(RelatePwp, AllRelationsVanish) {
  for (int g = 1; g <= 3; ++g) {
    for (bool az : {false, true}) {
      auto fx = rooted(g, 60 + g, az);
      auto b = standard_bridge(fx.curve, q(-2, 3));
      for (const auto& d : etale_divisors(fx, 2, 11)) {
        auto ds = bridge_relations(fx.curve, b, d);
        EXPECT_TRUE(all_zero(ds)) << "g=" << g << " a0=" << az;
        EXPECT_NE(find(ds, "kappa"), nullptr);
        EXPECT_NE(find(ds, "h_ratio_" + std::to_string(g)), nullptr);
        EXPECT_EQ(find(ds, "scaled_1_1") != nullptr, az);
      }
    }
  }
}

TEST(RelatePwp, KappaIsTopN) {
  auto fx = rooted(3, 70);
  auto b = standard_bridge(fx.curve, q(1));
  EXPECT_EQ(n_matrix(fx.curve, b)[2][2], kappa(b, b.odd));
}

TEST(RelatePwp, UnitNormalizationBothSigns) {
  // N = ν0 x Π(x - a_i) with ν_{4g+2} = N'(0) = 1, s = 1, t = ±1: 𝒫 = ℘ entrywise.
  for (int g = 1; g <= 3; ++g) {
    std::vector<GR> roots;
    for (int k = 1; k <= 2 * g + 1; ++k) roots.push_back(GR(k % 2 ? k : -k));
    roots.push_back(GR(0));
    GR prod(1);
    for (int k = 0; k < 2 * g + 1; ++k) prod = prod * (-roots[k]);
    auto asc = Poly<GR>::from_roots(roots).coefficients();
    std::vector<GR> desc(asc.rbegin(), asc.rend());
    for (auto& v : desc) v = v * prod.inverse();
    Curve<GR> c(Model::even, g, desc, GR(0));
    ASSERT_EQ(c.coefficient(4 * g + 2), GR(1));
    for (long sign : {1L, -1L}) {
      auto b = make_bridge(c, GR(1), GR(sign));
      DivisorSpec spec;
      for (int j = 0; j < g; ++j) spec.points.push_back({GR(mpq_class(2 * j + 1, 2)), std::nullopt, 1});
      auto d = etale_divisor(c, spec);
      auto P = p_matrix_even(c, d);
      auto W = p_matrix_odd(b.odd, zeta_divisor(b, d));
      for (int i = 1; i <= g; ++i) {
        for (int j = 1; j <= g; ++j) EXPECT_EQ(P.at(2 * g + 2 - 2 * i, 2 * g + 2 - 2 * j), W.at(2 * i - 1, 2 * j - 1));
      }
    }
  }
}

TEST(RelatePwp, HRatioConventionAtGenusOne) {
  // g = 1, k = 1: x_1 - a = (-s) ℘_{1,-1}/℘_{1,1} = s/℘_{1,1}, i.e. X_1 = ℘_{1,1}.
  auto fx = rooted(1, 80);
  auto b = standard_bridge(fx.curve, q(1));
  auto d = etale_divisors(fx, 1, 1).front();
  auto W = p_matrix_odd(b.odd, zeta_divisor(b, d));
  EXPECT_EQ(wp_first_row(W, -1), E(-1));
  EXPECT_EQ(d.x[0] - E(b.a), E(b.s) * W.at(1, 1).inverse());
}

TEST(RelatePwp, PerturbedCoefficientsBreakKappa) {
  auto fx = rooted(2, 81);
  ASSERT_FALSE(is_zero(*fx.curve.branch_point()));
  auto b = standard_bridge(fx.curve, q(1));
  Curve<GR> lt = b.odd;
  lt.set_coefficient(8, lt.coefficient(8) + GR(1));
  auto d = etale_divisors(fx, 1, 1).front();
  auto ds = bridge_relations(fx.curve, b, d, &lt);
  EXPECT_FALSE(is_zero(find(ds, "kappa")->value()));
  EXPECT_FALSE(is_zero(find(ds, "example_P_2_4")->value()));
  EXPECT_TRUE(is_zero(find(ds, "G_0_0")->value()));
}

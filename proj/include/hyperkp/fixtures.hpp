#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hyperkp/curve.hpp"
#include "hyperkp/scalar/gaussian_rational.hpp"

namespace hyperkp {

enum class Constraint {
  rational_roots,          // N = ν0 (x - a) Π (x - a_i) with small distinct rational roots
  nu0_neg3_square,         // ν0 = -3 w^2
  lambda_top_neg3_square,  // λ_{4g+2} = -3 m^2
  lambda2_square,          // λ2 = r^2, r != 0
  a_zero,                  // branch point a = 0
  rational_points,         // curve passes through a pool of points with rational y
};

std::string constraint_name(Constraint c);
// Throws ParseError on unknown names.
Constraint parse_constraint(const std::string& name);

// Platform-independent draws from a seeded mt19937_64 (raw output, no
// implementation-defined distributions), so fixtures are byte-stable.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : eng_(seed) {}
  long range(long lo, long hi);
  mpq_class rational(long height);
  mpq_class nonzero_rational(long height);
  bool coin() { return range(0, 1) == 1; }

 private:
  std::mt19937_64 eng_;
};

struct PointSpec {
  GaussianRational x;
  std::optional<GaussianRational> y;  // explicit y; otherwise the étale root
  int y_sign = 1;                     // sign applied to the étale root
};

struct DivisorSpec {
  std::vector<PointSpec> points;
};

struct FixtureRequest {
  Model model = Model::even;
  int genus = 1;
  std::set<Constraint> constraints;
  std::uint64_t seed = 1;
  int pool_size = 0;  // rational_points only; 0 picks g + 2 (capped by the free coefficients)
};

struct Fixture {
  Curve<GaussianRational> curve;
  std::vector<GaussianRational> roots;  // a_i besides the branch point, when rational_roots
  std::vector<PointSpec> pool;          // rational points, when rational_points
};

// Heights of random numerators/denominators stay at or below this.
inline constexpr long kFixtureHeight = 40;

// Deterministic in the request; throws GenerationError when the constraints
// cannot be met after a bounded number of retries.
Fixture generate_fixture(const FixtureRequest& request);

// `count` distinct divisors on the fixture curve: drawn from the rational pool
// when present, otherwise étale points with random signs.
std::vector<DivisorSpec> draw_divisors(const Fixture& fixture, int count, std::uint64_t seed);

// Solves A x = b over Q(i); nullopt when A is singular.
std::optional<std::vector<GaussianRational>> solve_linear(std::vector<std::vector<GaussianRational>> a,
                                                          std::vector<GaussianRational> b);

}  // namespace hyperkp

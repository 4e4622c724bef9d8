#include "hyperkp/fixtures.hpp"

#include <algorithm>
#include <map>

#include "hyperkp/error.hpp"

namespace hyperkp {

namespace {

constexpr int kMaxAttempts = 200;

const std::map<std::string, Constraint>& constraint_table() {
  static const std::map<std::string, Constraint> table{
      {"rational-roots", Constraint::rational_roots},
      {"nu0-neg3-square", Constraint::nu0_neg3_square},
      {"lambda-top-neg3-square", Constraint::lambda_top_neg3_square},
      {"lambda2-square", Constraint::lambda2_square},
      {"a-zero", Constraint::a_zero},
      {"rational-points", Constraint::rational_points},
  };
  return table;
}

GaussianRational power(const GaussianRational& x, int k) { return pow(x, k); }

// Distinct small rationals avoiding `taken`.
GaussianRational fresh_rational(FixtureRng& rng, std::vector<GaussianRational>& taken, long height) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    GaussianRational v(rng.rational(height));
    if (std::find(taken.begin(), taken.end(), v) == taken.end()) {
      taken.push_back(v);
      return v;
    }
  }
  throw GenerationError("could not draw distinct rational values");
}

bool is_valid(const Curve<GaussianRational>& curve) {
  try {
    validate(curve);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

std::optional<Fixture> attempt_even(const FixtureRequest& req, FixtureRng& rng) {
  const int g = req.genus;
  const int deg = 2 * g + 2;
  const auto has = [&](Constraint c) { return req.constraints.count(c) > 0; };
  GaussianRational nu0(rng.nonzero_rational(6));
  if (has(Constraint::nu0_neg3_square)) {
    mpq_class w = rng.nonzero_rational(4);
    nu0 = GaussianRational(-3 * w * w);
  }
  std::vector<GaussianRational> taken;
  GaussianRational a = has(Constraint::a_zero) ? GaussianRational(0) : fresh_rational(rng, taken, 6);
  if (has(Constraint::a_zero)) taken.push_back(a);

  Fixture fx;
  std::vector<GaussianRational> desc(deg + 1);
  if (has(Constraint::rational_roots)) {
    std::vector<GaussianRational> roots{a};
    for (int i = 0; i < 2 * g + 1; ++i) fx.roots.push_back(fresh_rational(rng, taken, 6));
    roots.insert(roots.end(), fx.roots.begin(), fx.roots.end());
    auto asc = Poly<GaussianRational>::from_roots(roots).coefficients();
    for (int k = 0; k <= deg; ++k) desc[k] = nu0 * asc[deg - k];
  } else {
    desc[0] = nu0;
    for (int m = 1; m <= deg; ++m) desc[m] = GaussianRational(rng.rational(kFixtureHeight));
    int pool = 0;
    if (has(Constraint::rational_points)) {
      pool = req.pool_size > 0 ? req.pool_size : g + 2;
      pool = std::min(pool, deg - 1);
    }
    // Unknowns: the pool + 1 lowest coefficients; rows: N(a) = 0 and N(x_p) = y_p^2.
    const int unknowns = pool + 1;
    std::vector<GaussianRational> xs{a}, rhs_sq{GaussianRational(0)};
    for (int p = 0; p < pool; ++p) {
      GaussianRational x = fresh_rational(rng, taken, 8);
      GaussianRational y(rng.nonzero_rational(kFixtureHeight));
      xs.push_back(x);
      rhs_sq.push_back(y * y);
      fx.pool.push_back({x, y, 1});
    }
    std::vector<std::vector<GaussianRational>> A;
    std::vector<GaussianRational> b;
    for (std::size_t r = 0; r < xs.size(); ++r) {
      std::vector<GaussianRational> row;
      GaussianRational known;
      for (int m = 0; m <= deg; ++m) {
        GaussianRational xp = power(xs[r], deg - m);
        if (m > deg - unknowns) {
          row.push_back(xp);
        } else {
          known += desc[m] * xp;
        }
      }
      A.push_back(std::move(row));
      b.push_back(rhs_sq[r] - known);
    }
    auto sol = solve_linear(A, b);
    if (!sol) return std::nullopt;
    for (int u = 0; u < unknowns; ++u) desc[deg - unknowns + 1 + u] = (*sol)[u];
  }
  fx.curve = Curve<GaussianRational>(Model::even, g, std::move(desc), a);
  if (!is_valid(fx.curve)) return std::nullopt;
  return fx;
}

std::optional<Fixture> attempt_odd(const FixtureRequest& req, FixtureRng& rng) {
  const int g = req.genus;
  const int deg = 2 * g + 1;
  const auto has = [&](Constraint c) { return req.constraints.count(c) > 0; };
  Fixture fx;
  std::vector<GaussianRational> desc(deg + 1);
  desc[0] = GaussianRational(1);
  std::vector<bool> fixed(deg + 1, false);
  fixed[0] = true;
  std::vector<GaussianRational> taken;
  if (has(Constraint::rational_roots)) {
    std::vector<GaussianRational> roots;
    for (int i = 0; i < deg; ++i) roots.push_back(fresh_rational(rng, taken, 6));
    fx.roots = roots;
    auto asc = Poly<GaussianRational>::from_roots(roots).coefficients();
    for (int k = 0; k <= deg; ++k) desc[k] = asc[deg - k];
    fx.curve = Curve<GaussianRational>(Model::odd, g, std::move(desc));
    if (has(Constraint::lambda_top_neg3_square) || has(Constraint::lambda2_square)) {
      throw GenerationError("rational-roots cannot be combined with lambda constraints");
    }
    if (!is_valid(fx.curve)) return std::nullopt;
    return fx;
  }
  if (has(Constraint::lambda2_square)) {
    mpq_class r = rng.nonzero_rational(4);
    desc[1] = GaussianRational(r * r);
    fixed[1] = true;
  }
  if (has(Constraint::lambda_top_neg3_square)) {
    mpq_class m = rng.nonzero_rational(4);
    desc[deg] = GaussianRational(-3 * m * m);
    fixed[deg] = true;
  }
  for (int k = 1; k <= deg; ++k) {
    if (!fixed[k]) desc[k] = GaussianRational(rng.nonzero_rational(kFixtureHeight));
  }
  if (has(Constraint::rational_points)) {
    std::vector<int> free;
    for (int k = 1; k <= deg; ++k) {
      if (!fixed[k]) free.push_back(k);
    }
    // Keep λ4 (index 2) random and nonzero whenever another unknown is available.
    std::vector<int> solvable;
    for (auto it = free.rbegin(); it != free.rend(); ++it) {
      if (*it != 2 || free.size() <= 2) solvable.push_back(*it);
    }
    int pool = req.pool_size > 0 ? req.pool_size : g + 2;
    pool = std::min<int>(pool, static_cast<int>(solvable.size()));
    std::vector<int> unknown(solvable.begin(), solvable.begin() + pool);
    std::vector<std::vector<GaussianRational>> A;
    std::vector<GaussianRational> b;
    for (int p = 0; p < pool; ++p) {
      GaussianRational x = fresh_rational(rng, taken, 8);
      GaussianRational y(rng.nonzero_rational(kFixtureHeight));
      fx.pool.push_back({x, y, 1});
      std::vector<GaussianRational> row;
      GaussianRational known;
      for (int k = 0; k <= deg; ++k) {
        GaussianRational xp = power(x, deg - k);
        if (std::find(unknown.begin(), unknown.end(), k) != unknown.end()) continue;
        known += desc[k] * xp;
      }
      for (int k : unknown) row.push_back(power(x, deg - k));
      A.push_back(std::move(row));
      b.push_back(y * y - known);
    }
    auto sol = solve_linear(A, b);
    if (!sol) return std::nullopt;
    for (std::size_t u = 0; u < unknown.size(); ++u) desc[unknown[u]] = (*sol)[u];
  }
  if (g >= 2 && desc[2].is_zero()) return std::nullopt;
  if (desc[deg].is_zero()) return std::nullopt;
  fx.curve = Curve<GaussianRational>(Model::odd, g, std::move(desc));
  if (!is_valid(fx.curve)) return std::nullopt;
  return fx;
}

}  // namespace

std::string constraint_name(Constraint c) {
  for (const auto& [name, value] : constraint_table()) {
    if (value == c) return name;
  }
  return "?";
}

Constraint parse_constraint(const std::string& name) {
  auto it = constraint_table().find(name);
  if (it == constraint_table().end()) throw ParseError("unknown fixture constraint '" + name + "'");
  return it->second;
}

long FixtureRng::range(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(eng_() % span);
}

mpq_class FixtureRng::rational(long height) {
  mpq_class q(range(-height, height), range(1, height));
  q.canonicalize();
  return q;
}

mpq_class FixtureRng::nonzero_rational(long height) {
  mpq_class q;
  do q = rational(height);
  while (sgn(q) == 0);
  return q;
}

Fixture generate_fixture(const FixtureRequest& request) {
  if (request.genus < 1) throw ParameterError("genus must be at least 1");
  const auto has = [&](Constraint c) { return request.constraints.count(c) > 0; };
  if (request.model == Model::odd &&
      (has(Constraint::nu0_neg3_square) || has(Constraint::a_zero))) {
    throw GenerationError("nu0/a constraints apply to the even model only");
  }
  if (request.model == Model::even && (has(Constraint::lambda_top_neg3_square) || has(Constraint::lambda2_square))) {
    throw GenerationError("lambda constraints apply to the odd model only");
  }
  if (has(Constraint::rational_roots) && has(Constraint::rational_points)) {
    throw GenerationError("rational-roots and rational-points cannot be combined");
  }
  FixtureRng rng(request.seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto fx = request.model == Model::even ? attempt_even(request, rng) : attempt_odd(request, rng);
    if (fx) return *fx;
  }
  throw GenerationError("fixture constraints unsatisfied after " + std::to_string(kMaxAttempts) + " attempts");
}

std::vector<DivisorSpec> draw_divisors(const Fixture& fixture, int count, std::uint64_t seed) {
  const Curve<GaussianRational>& curve = fixture.curve;
  const int g = curve.genus();
  FixtureRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<DivisorSpec> out;
  std::set<std::vector<std::string>> seen;
  for (int attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
    if (attempt > 100 * count + 1000) throw GenerationError("could not draw enough distinct divisors");
    DivisorSpec d;
    if (!fixture.pool.empty()) {
      if (static_cast<int>(fixture.pool.size()) < g) throw GenerationError("rational point pool smaller than g");
      std::vector<int> idx(fixture.pool.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
      for (int i = 0; i < g; ++i) std::swap(idx[i], idx[i + rng.range(0, static_cast<long>(idx.size()) - 1 - i)]);
      for (int i = 0; i < g; ++i) {
        PointSpec p = fixture.pool[idx[i]];
        if (rng.coin()) p.y = -*p.y;
        d.points.push_back(p);
      }
    } else {
      std::vector<GaussianRational> taken;
      if (curve.branch_point()) taken.push_back(*curve.branch_point());
      bool ok = true;
      for (int i = 0; i < g && ok; ++i) {
        GaussianRational x = fresh_rational(rng, taken, 9);
        if (curve.eval(x).first.is_zero()) {
          ok = false;
          break;
        }
        d.points.push_back({x, std::nullopt, rng.coin() ? 1 : -1});
      }
      if (!ok) continue;
    }
    std::vector<std::string> key;
    for (const auto& p : d.points) key.push_back(p.x.to_string() + (p.y ? p.y->to_string() : std::to_string(p.y_sign)));
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    out.push_back(std::move(d));
  }
  return out;
}

std::optional<std::vector<GaussianRational>> solve_linear(std::vector<std::vector<GaussianRational>> a,
                                                          std::vector<GaussianRational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    GaussianRational inv = a[col][col].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      GaussianRational f = a[r][col] * inv;
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<GaussianRational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace hyperkp

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperkp/curve.hpp"
#include "hyperkp/fixtures.hpp"
#include "hyperkp/identities.hpp"
#include "hyperkp/kp.hpp"

namespace hyperkp {

struct RunConfig {
  bool numeric = false;
  long precision = 256;
  int jet_order = 4;
  std::uint64_t seed = 1;
};

struct KPOptions {
  Variant variant = Variant::psi;
  std::string kp2 = "none";  // none | sqrt-1 | xi8
  int branch = 1;
};

// One identity at one divisor. Quartic Baker draws three e-configurations from cfg.seed.
IdentityReport run_identity(const std::string& id, const Curve<GaussianRational>& curve, const DivisorSpec& divisor,
                            const RunConfig& cfg);

// One entry per residual coefficient, labelled by its exponent triple "a,b,c".
IdentityReport run_kp(const KPOptions& opts, const Curve<GaussianRational>& curve, const DivisorSpec& divisor,
                      const RunConfig& cfg);

// Curve invariants, pullback of forms, and the even/odd relations with 𝔰 = N'(a), 𝔱 = N'(a)^g.
// With a0 the curve is first translated so that the branch point sits at 0.
IdentityReport run_bridge(const Curve<GaussianRational>& even, const DivisorSpec& divisor, const RunConfig& cfg,
                          const std::vector<GaussianRational>& roots, bool a0);

// Duality matrix, flow commutativity and the curve relation along the flows.
IdentityReport run_structural(const Curve<GaussianRational>& curve, const DivisorSpec& divisor, const RunConfig& cfg);

// x -> x + a on both the curve and the divisor; the branch point moves to 0.
Curve<GaussianRational> translate_to_branch_point(const Curve<GaussianRational>& even, DivisorSpec* divisor,
                                                  std::vector<GaussianRational>* roots);

}  // namespace hyperkp

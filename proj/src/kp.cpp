#include "hyperkp/kp.hpp"

namespace hyperkp {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::psi:
      return "psi";
    case Variant::phi:
      return "phi";
    case Variant::upsilon:
      return "upsilon";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "psi") return Variant::psi;
  if (name == "phi") return Variant::phi;
  if (name == "upsilon") return Variant::upsilon;
  throw ParseError("unknown variant '" + name + "' (expected psi|phi|upsilon)");
}

}  // namespace hyperkp

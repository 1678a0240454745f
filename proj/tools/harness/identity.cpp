#include "identity.hpp"

namespace qlag::harness {

std::string_view identity_name(Identity id) {
  switch (id) {
    case Identity::Bailey: return "bailey";
    case Identity::Slater: return "slater";
    case Identity::Duality: return "duality";
    case Identity::Delta: return "delta";
    case Identity::MethodAgreement: return "method-agreement";
    case Identity::QuasiPeriodicity: return "quasi-periodicity";
    case Identity::TransitionDet: return "transition-det";
    case Identity::OneCoordinate: return "one-coordinate";
    case Identity::Vandiejen: return "vandiejen";
    case Identity::Wronskian: return "wronskian";
    case Identity::Connection: return "connection";
    case Identity::LatticeInvariance: return "lattice-invariance";
  }
  return "unknown";
}

std::optional<Identity> parse_identity(std::string_view name) {
  for (auto id : kAllIdentities) {
    if (identity_name(id) == name) return id;
  }
  return std::nullopt;
}

}  // namespace qlag::harness

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace qlag::harness {

enum class Identity {
  Bailey,
  Slater,
  Duality,
  Delta,
  MethodAgreement,
  QuasiPeriodicity,
  TransitionDet,
  OneCoordinate,
  Vandiejen,
  Wronskian,
  Connection,
  LatticeInvariance,
};

inline constexpr std::array<Identity, 12> kAllIdentities = {
    Identity::Bailey,        Identity::Slater,    Identity::Duality,          Identity::Delta,
    Identity::MethodAgreement, Identity::QuasiPeriodicity, Identity::TransitionDet, Identity::OneCoordinate,
    Identity::Vandiejen,     Identity::Wronskian, Identity::Connection,       Identity::LatticeInvariance,
};

std::string_view identity_name(Identity id);
std::optional<Identity> parse_identity(std::string_view name);

}  // namespace qlag::harness

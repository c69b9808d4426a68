#pragma once

#include <string>
#include <string_view>

#include "tristeer/states.hpp"

namespace tristeer {

enum class Direction { kAToBC, kABToC };
enum class Strength { kSteering, kGenuine };

struct Scenario {
  Direction direction = Direction::kAToBC;
  Strength strength = Strength::kSteering;

  friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

/// "a-to-bc:genuine", "ab-to-c:steering", ...
std::string to_string(Scenario s);
std::string to_string(Direction d);
std::string to_string(Strength s);
Scenario parse_scenario(std::string_view text);

/// tau1 mixes Alice's qubit with white noise, tau2 mixes Alice's and Bob's.
enum class TauKind { kTau1, kTau2 };

std::string to_string(TauKind k);

/// The construction whose entanglement certifies steering in a direction:
/// tau1 for A -> BC, tau2 for AB -> C.
TauKind tau_kind_for(Direction d);

/// Largest mixing weight for which entanglement of the mapped state still
/// certifies steering: 1/sqrt(3) for tau1, 1/9 (genuine) and 1/3 (steering)
/// for tau2.
double mu_bound(TauKind kind, Strength strength);

/// mu * rho + (1 - mu) I_2/2 (x) Tr_A rho, without validating rho. Also used
/// on the Hermitian unit-trace operators realized by hidden-variable models.
ComplexMatrix tau1_map(const ComplexMatrix& rho, double mu);

/// mu * rho + (1 - mu) I_4/4 (x) Tr_AB rho.
ComplexMatrix tau2_map(const ComplexMatrix& rho, double mu);

ComplexMatrix tau_map(TauKind kind, const ComplexMatrix& rho, double mu);

struct TauState {
  ThreeQubitState base;
  double mu = 0.0;
  TauKind kind = TauKind::kTau1;
  ThreeQubitState matrix;

  /// True when mu does not exceed the bound for the given strength, i.e. the
  /// steering implication is backed by the construction.
  bool certified(Strength strength) const { return mu <= mu_bound(kind, strength); }
};

/// mu must lie in [0, 1]; values above the certified bound are accepted and
/// reported as uncertified by TauState::certified.
TauState build_tau1(const ThreeQubitState& rho, double mu);
TauState build_tau2(const ThreeQubitState& rho, double mu);
TauState build_tau(TauKind kind, const ThreeQubitState& rho, double mu);

}  // namespace tristeer

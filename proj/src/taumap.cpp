#include "tristeer/taumap.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tristeer/error.hpp"

namespace tristeer {

std::string to_string(Direction d) {
  return d == Direction::kAToBC ? "a-to-bc" : "ab-to-c";
}

std::string to_string(Strength s) {
  return s == Strength::kSteering ? "steering" : "genuine";
}

std::string to_string(Scenario s) {
  return to_string(s.direction) + ":" + to_string(s.strength);
}

Scenario parse_scenario(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("scenario '{}' must look like a-to-bc:genuine", text));
  }
  const auto dir = text.substr(0, colon);
  const auto str = text.substr(colon + 1);
  Scenario s;
  if (dir == "a-to-bc") {
    s.direction = Direction::kAToBC;
  } else if (dir == "ab-to-c") {
    s.direction = Direction::kABToC;
  } else {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("unknown direction '{}'", dir));
  }
  if (str == "steering") {
    s.strength = Strength::kSteering;
  } else if (str == "genuine") {
    s.strength = Strength::kGenuine;
  } else {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("unknown strength '{}'", str));
  }
  return s;
}

std::string to_string(TauKind k) { return k == TauKind::kTau1 ? "tau1" : "tau2"; }

TauKind tau_kind_for(Direction d) {
  return d == Direction::kAToBC ? TauKind::kTau1 : TauKind::kTau2;
}

double mu_bound(TauKind kind, Strength strength) {
  if (kind == TauKind::kTau1) return 1.0 / std::sqrt(3.0);
  return strength == Strength::kGenuine ? 1.0 / 9.0 : 1.0 / 3.0;
}

namespace {

void require_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("mu = {} outside [0, 1]", mu));
  }
}

void require_8x8(const ComplexMatrix& rho) {
  if (rho.rows() != 8 || rho.cols() != 8) {
    throw Error(ErrorKind::kDimension,
                fmt::format("tau map needs an 8x8 operator, got {}x{}",
                            rho.rows(), rho.cols()));
  }
}

}  // namespace

ComplexMatrix tau1_map(const ComplexMatrix& rho, double mu) {
  require_mu(mu);
  require_8x8(rho);
  const ComplexMatrix rho_bc = qmat::partial_trace(rho, Subsystem::A);
  return mu * rho + (1.0 - mu) * qmat::kron(0.5 * qmat::identity(2), rho_bc);
}

ComplexMatrix tau2_map(const ComplexMatrix& rho, double mu) {
  require_mu(mu);
  require_8x8(rho);
  const ComplexMatrix rho_c =
      qmat::partial_trace(qmat::partial_trace(rho, Subsystem::A), Subsystem::A);
  return mu * rho + (1.0 - mu) * qmat::kron(0.25 * qmat::identity(4), rho_c);
}

ComplexMatrix tau_map(TauKind kind, const ComplexMatrix& rho, double mu) {
  return kind == TauKind::kTau1 ? tau1_map(rho, mu) : tau2_map(rho, mu);
}

TauState build_tau(TauKind kind, const ThreeQubitState& rho, double mu) {
  ComplexMatrix m = tau_map(kind, rho.matrix(), mu);
  std::string label = fmt::format("{}({}, mu={:.6g})", to_string(kind),
                                  rho.label().empty() ? "rho" : rho.label(), mu);
  return TauState{rho, mu, kind, ThreeQubitState(std::move(m), std::move(label))};
}

TauState build_tau1(const ThreeQubitState& rho, double mu) {
  return build_tau(TauKind::kTau1, rho, mu);
}

TauState build_tau2(const ThreeQubitState& rho, double mu) {
  return build_tau(TauKind::kTau2, rho, mu);
}

}  // namespace tristeer

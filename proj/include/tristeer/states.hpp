#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "tristeer/qmat.hpp"

namespace tristeer {

/// Validated 8x8 density matrix: Hermitian, unit trace, positive
/// semidefinite within the qmat tolerances. Construction throws
/// Error(kValidation) naming the violated property.
class ThreeQubitState {
 public:
  explicit ThreeQubitState(ComplexMatrix matrix, std::string label = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }

  /// 1-based entry accessor matching the usual tau_ij notation.
  Complex entry(int i, int j) const { return matrix_(i - 1, j - 1); }

 private:
  ComplexMatrix matrix_;
  std::string label_;
};

/// Unit-norm three-qubit state vector.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes, std::string label = {});

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const std::string& label() const { return label_; }
  ComplexMatrix projector() const;

 private:
  ComplexVector amplitudes_;
  std::string label_;
};

/// a|000> + sqrt(1 - a^2)|111>, 0 <= a <= 1.
PureState ghz(double a);

/// (|001> + |010> + |100>) / sqrt(3).
PureState w_state();

/// (1 - p)/8 I_8 + p |psi><psi|, 0 <= p <= 1.
ThreeQubitState noisy(const PureState& pure, double p);

/// White-noise family p -> (1 - p)/8 I_8 + p |psi><psi|.
struct NoisyFamily {
  PureState pure;
  std::string label;

  ThreeQubitState at(double p) const { return noisy(pure, p); }
};

NoisyFamily noisy_ghz();
NoisyFamily noisy_w();

/// A Pauli measurement setting with its two rank-1 outcome projectors.
struct PauliSetting {
  int axis = 3;  // 1 = x, 2 = y, 3 = z
  ComplexMatrix plus;
  ComplexMatrix minus;
};

PauliSetting pauli_setting(int axis);

// State file schema:
//   { "dim": 8,
//     "label": "optional text",
//     "matrix": [[[re, im], ... 8 entries ...], ... 8 rows ...] }
// Rows are row-major in the |q_A q_B q_C> basis; matrix[i-1][j-1] is the
// 1-based entry tau_ij.

ThreeQubitState state_from_json(const nlohmann::json& doc);
nlohmann::json state_to_json(const ThreeQubitState& state);

/// Canonical serialization: two-space indent, shortest round-trip doubles.
std::string dump_state(const ThreeQubitState& state);

ThreeQubitState load_state(const std::filesystem::path& path);
void save_state(const ThreeQubitState& state, const std::filesystem::path& path);

}  // namespace tristeer

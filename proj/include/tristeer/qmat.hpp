#pragma once

// Dense complex linear algebra for one to three qubits. Basis ordering is
// |q_A q_B q_C>, q_A most significant, so 1-based entry tau_ij of an 8x8
// matrix lives at (i-1, j-1).

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tristeer {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class Subsystem { A, B, C };

const char* to_string(Subsystem s);

namespace qmat {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kArithmeticTol = 1e-12;

ComplexMatrix identity(int dim);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli matrix by axis: 0 = identity, 1 = sigma_x, 2 = sigma_y, 3 = sigma_z.
ComplexMatrix pauli(int axis);

/// Projector onto the eigenvalue +1 (sign > 0) or -1 eigenvector of a Pauli.
ComplexMatrix pauli_projector(int axis, int sign);

/// Number of qubits of a square matrix of dimension 2, 4 or 8.
int qubit_count(const ComplexMatrix& m);

/// Trace out one qubit. Accepts 4x4 (A or B) and 8x8 (A, B or C) inputs; the
/// remaining qubits keep their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem over);

/// Partial transpose on one qubit of a 4x4 or 8x8 matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem over);

/// Max-norm of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

bool is_finite(const ComplexMatrix& m);

/// Ascending eigenvalues of a Hermitian matrix. Throws kValidation if the
/// input is not Hermitian within kHermitianTol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

struct DensityCheck {
  bool ok = false;
  /// First violated property: "shape", "finiteness", "hermiticity", "trace"
  /// or "positivity". Empty when ok.
  std::string violation;
  std::string message;
};

/// Shape means square of dimension 2, 4 or 8.
DensityCheck check_density_matrix(const ComplexMatrix& m,
                                  double psd_tol = kPsdTol);

inline bool is_density_matrix(const ComplexMatrix& m, double psd_tol = kPsdTol) {
  return check_density_matrix(m, psd_tol).ok;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qmat
}  // namespace tristeer

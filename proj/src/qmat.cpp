#include "tristeer/qmat.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "tristeer/error.hpp"

namespace tristeer {

const char* to_string(Subsystem s) {
  switch (s) {
    case Subsystem::A: return "A";
    case Subsystem::B: return "B";
    case Subsystem::C: return "C";
  }
  return "?";
}

namespace qmat {
namespace {

// Bit position of a qubit inside a basis index of an n-qubit register.
int bit_of(Subsystem s, int qubits) {
  const int k = static_cast<int>(s);
  if (k >= qubits) {
    throw Error(ErrorKind::kDimension,
                fmt::format("subsystem {} does not exist in a {}-qubit matrix",
                            to_string(s), qubits));
  }
  return qubits - 1 - k;
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kDimension,
                fmt::format("{}: matrix is {}x{}, expected square", op,
                            m.rows(), m.cols()));
  }
}

// Removes bit `bit` from index i, closing the gap.
int squeeze(int i, int bit) {
  const int low = i & ((1 << bit) - 1);
  const int high = (i >> (bit + 1)) << bit;
  return high | low;
}

}  // namespace

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix pauli(int axis) {
  ComplexMatrix m(2, 2);
  switch (axis) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default:
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("Pauli axis {} not in 0..3", axis));
  }
  return m;
}

ComplexMatrix pauli_projector(int axis, int sign) {
  if (axis < 1 || axis > 3) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("Pauli setting {} not in 1..3", axis));
  }
  const double s = sign > 0 ? 1.0 : -1.0;
  return 0.5 * (identity(2) + s * pauli(axis));
}

int qubit_count(const ComplexMatrix& m) {
  require_square(m, "qubit_count");
  switch (m.rows()) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default:
      throw Error(ErrorKind::kDimension,
                  fmt::format("dimension {} is not 2, 4 or 8", m.rows()));
  }
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem over) {
  const int n = qubit_count(rho);
  if (n < 2) {
    throw Error(ErrorKind::kDimension, "partial_trace needs at least two qubits");
  }
  const int bit = bit_of(over, n);
  const int dim = static_cast<int>(rho.rows());
  ComplexMatrix out = ComplexMatrix::Zero(dim / 2, dim / 2);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (((i >> bit) & 1) != ((j >> bit) & 1)) continue;
      out(squeeze(i, bit), squeeze(j, bit)) += rho(i, j);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem over) {
  const int n = qubit_count(rho);
  if (n < 2) {
    throw Error(ErrorKind::kDimension,
                "partial_transpose needs at least two qubits");
  }
  const int bit = bit_of(over, n);
  const int mask = 1 << bit;
  const int dim = static_cast<int>(rho.rows());
  ComplexMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      // Swap the chosen qubit's bra and ket labels.
      const int bi = i & mask;
      const int bj = j & mask;
      out((i & ~mask) | bj, (j & ~mask) | bi) = rho(i, j);
    }
  }
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigenvalues");
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermitianTol)) {
    throw Error(ErrorKind::kValidation,
                fmt::format("hermiticity: |M - M^dagger|_max = {:.3e}", defect));
  }
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).front();
}

DensityCheck check_density_matrix(const ComplexMatrix& m, double psd_tol) {
  DensityCheck check;
  const auto n = m.rows();
  if (m.cols() != n || (n != 2 && n != 4 && n != 8)) {
    check.violation = "shape";
    check.message = fmt::format("shape: matrix is {}x{}", m.rows(), m.cols());
    return check;
  }
  if (!is_finite(m)) {
    check.violation = "finiteness";
    check.message = "finiteness: matrix has NaN or infinite entries";
    return check;
  }
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    check.violation = "hermiticity";
    check.message =
        fmt::format("hermiticity: |M - M^dagger|_max = {:.3e}", defect);
    return check;
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kHermitianTol) {
    check.violation = "trace";
    check.message = fmt::format("trace: Tr(M) = {:.12g}", tr.real());
    return check;
  }
  const double lo = min_eigenvalue(m);
  if (lo < -psd_tol) {
    check.violation = "positivity";
    check.message = fmt::format("positivity: min eigenvalue {:.3e}", lo);
    return check;
  }
  check.ok = true;
  return check;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimension, "max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qmat
}  // namespace tristeer

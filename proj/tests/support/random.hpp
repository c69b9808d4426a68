#pragma once

// Random states, random hidden-variable models and index-loop oracles shared
// by the unit and acceptance tests. The oracles never call into qmat: they
// spell out each operation over explicit basis indices.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "tristeer/lhsmodel.hpp"
#include "tristeer/qmat.hpp"
#include "tristeer/states.hpp"

namespace tristeer::testing {

using Rng = std::mt19937_64;

inline Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// Haar-random unit vector of the given dimension.
inline ComplexVector haar_vector(Rng& rng, int dim) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gaussian_complex(rng);
  return v / v.norm();
}

/// Mixture of `rank` Haar-random pure states with Dirichlet-like weights.
inline ComplexMatrix random_density(Rng& rng, int dim, int rank) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  double total = 0.0;
  for (int k = 0; k < rank; ++k) {
    const double w = -std::log(1.0 - u(rng));
    const ComplexVector v = haar_vector(rng, dim);
    rho += w * v * v.adjoint();
    total += w;
  }
  return rho / total;
}

inline ComplexMatrix random_unitary(Rng& rng, int dim) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ();
}

// --- index-loop oracles ----------------------------------------------------

inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int ra = static_cast<int>(a.rows()), ca = static_cast<int>(a.cols());
  const int rb = static_cast<int>(b.rows()), cb = static_cast<int>(b.cols());
  ComplexMatrix out(ra * rb, ca * cb);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ca; ++j)
      for (int k = 0; k < rb; ++k)
        for (int l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = a(i, j) * b(k, l);
  return out;
}

/// Qubit q (0 = most significant) of basis index x in an n-qubit register.
inline int bit_of(int x, int q, int n) { return (x >> (n - 1 - q)) & 1; }

inline ComplexMatrix partial_trace_oracle(const ComplexMatrix& rho, int q) {
  const int dim = static_cast<int>(rho.rows());
  const int n = dim == 8 ? 3 : 2;
  ComplexMatrix out = ComplexMatrix::Zero(dim / 2, dim / 2);
  // Drop bit q from both indices and sum over its two values.
  const auto squeeze = [&](int x) {
    int r = 0;
    for (int p = 0; p < n; ++p) {
      if (p == q) continue;
      r = 2 * r + bit_of(x, p, n);
    }
    return r;
  };
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (bit_of(i, q, n) != bit_of(j, q, n)) continue;
      out(squeeze(i), squeeze(j)) += rho(i, j);
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose_oracle(const ComplexMatrix& rho, int q) {
  const int dim = static_cast<int>(rho.rows());
  const int n = dim == 8 ? 3 : 2;
  const int mask = 1 << (n - 1 - q);
  ComplexMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      // Swap bit q between row and column index.
      const int i2 = (i & ~mask) | (j & mask);
      const int j2 = (j & ~mask) | (i & mask);
      out(i2, j2) = rho(i, j);
    }
  }
  return out;
}

/// Generic complex eigensolver; shares no code with the Hermitian path.
inline double min_eigenvalue_oracle(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
  double lo = es.eigenvalues()(0).real();
  for (int i = 1; i < m.rows(); ++i) lo = std::min(lo, es.eigenvalues()(i).real());
  return lo;
}

/// mu rho + (1 - mu) I/2 (x) Tr_A rho, entry by entry.
inline ComplexMatrix tau1_oracle(const ComplexMatrix& rho, double mu) {
  const ComplexMatrix bc = partial_trace_oracle(rho, 0);
  ComplexMatrix out(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Complex noise = (i >> 2) == (j >> 2) ? 0.5 * bc(i & 3, j & 3) : Complex(0.0);
      out(i, j) = mu * rho(i, j) + (1.0 - mu) * noise;
    }
  }
  return out;
}

/// mu rho + (1 - mu) I/4 (x) Tr_AB rho, entry by entry.
inline ComplexMatrix tau2_oracle(const ComplexMatrix& rho, double mu) {
  const ComplexMatrix c = partial_trace_oracle(partial_trace_oracle(rho, 0), 0);
  ComplexMatrix out(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Complex noise = (i >> 1) == (j >> 1) ? 0.25 * c(i & 1, j & 1) : Complex(0.0);
      out(i, j) = mu * rho(i, j) + (1.0 - mu) * noise;
    }
  }
  return out;
}

// --- biseparable and separable states -------------------------------------

/// |phi>_q (x) |chi>_rest placed so that qubit q is split off (0 = A).
inline ComplexVector product_across(const ComplexVector& phi, const ComplexVector& chi, int q) {
  ComplexVector out(8);
  for (int x = 0; x < 8; ++x) {
    int rest = 0;
    for (int p = 0; p < 3; ++p) {
      if (p != q) rest = 2 * rest + bit_of(x, p, 3);
    }
    out(x) = phi(bit_of(x, q, 3)) * chi(rest);
  }
  return out;
}

inline ComplexVector random_biseparable_pure(Rng& rng, int q) {
  return product_across(haar_vector(rng, 2), haar_vector(rng, 4), q);
}

inline ComplexVector random_product_pure(Rng& rng) {
  return kron_oracle(kron_oracle(haar_vector(rng, 2), haar_vector(rng, 2)),
                     haar_vector(rng, 2));
}

/// Convex mixture of pure states, each biseparable across a random cut.
inline ComplexMatrix random_biseparable_mixture(Rng& rng, int terms) {
  std::uniform_int_distribution<int> cut(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double w = u(rng) + 1e-3;
    const ComplexVector v = random_biseparable_pure(rng, cut(rng));
    rho += w * v * v.adjoint();
    total += w;
  }
  return rho / total;
}

inline ComplexMatrix random_separable_mixture(Rng& rng, int terms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double w = u(rng) + 1e-3;
    const ComplexVector v = random_product_pure(rng);
    rho += w * v * v.adjoint();
    total += w;
  }
  return rho / total;
}

// --- random hidden-variable models -----------------------------------------

inline std::vector<double> random_weights(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = u(rng) + 1e-3;
    total += x;
  }
  for (auto& x : w) x /= total;
  // Fold the rounding residue into the last weight so the sum is exact.
  double partial = 0.0;
  for (int i = 0; i + 1 < n; ++i) partial += w[i];
  w.back() = 1.0 - partial;
  return w;
}

inline lhs::PauliResponse random_response(Rng& rng, bool deterministic) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  lhs::PauliResponse r;
  for (auto& p : r.plus) p = deterministic ? (u(rng) < 0.5 ? 0.0 : 1.0) : u(rng);
  return r;
}

/// No-signalling box: a mixture of a quantum box, a product of local boxes and
/// a PR-type box with zero marginals and random +-1 correlators.
inline lhs::PairResponse random_pair_response(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto q = lhs::PairResponse::from_state(random_density(rng, 4, 2));
  const auto l =
      lhs::PairResponse::product(random_response(rng, false), random_response(rng, false));
  std::array<std::array<double, 3>, 3> corr{};
  for (auto& row : corr)
    for (auto& c : row) c = u(rng) < 0.5 ? -1.0 : 1.0;
  const auto pr = lhs::PairResponse::from_correlators({}, {}, corr);
  const auto w = random_weights(rng, 3);
  lhs::PairResponse out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int o = 0; o < 4; ++o)
        out.p[i][j][o] = w[0] * q.p[i][j][o] + w[1] * l.p[i][j][o] + w[2] * pr.p[i][j][o];
  return out;
}

inline lhs::LocalModelA random_local_model_a(Rng& rng, int terms, bool deterministic) {
  lhs::LocalModelA m;
  for (const double w : random_weights(rng, terms)) {
    m.terms.push_back({w, random_response(rng, deterministic), random_density(rng, 2, 1),
                       random_density(rng, 2, 2)});
  }
  return m;
}

inline lhs::HybridModelA random_hybrid_model_a(Rng& rng) {
  lhs::HybridModelA m;
  const auto w = random_weights(rng, 6);
  for (int k = 0; k < 2; ++k) {
    m.no_steer.push_back({w[k], random_response(rng, false), random_density(rng, 4, 2)});
    m.steer_b.push_back({w[2 + k], random_density(rng, 4, 2), random_density(rng, 2, 1)});
    m.steer_c.push_back({w[4 + k], random_density(rng, 4, 1), random_density(rng, 2, 2)});
  }
  return m;
}

inline lhs::LocalModelAB random_local_model_ab(Rng& rng, int terms, bool deterministic) {
  lhs::LocalModelAB m;
  for (const double w : random_weights(rng, terms)) {
    m.terms.push_back({w, random_response(rng, deterministic),
                       random_response(rng, deterministic), random_density(rng, 2, 2)});
  }
  return m;
}

inline lhs::HybridModelAB random_hybrid_model_ab(Rng& rng) {
  lhs::HybridModelAB m;
  const auto w = random_weights(rng, 6);
  for (int k = 0; k < 2; ++k) {
    m.no_steer.push_back({w[k], random_pair_response(rng), random_density(rng, 2, 1)});
    m.bob_steers.push_back({w[2 + k], random_response(rng, false), random_density(rng, 4, 2)});
    m.alice_steers.push_back({w[4 + k], random_response(rng, false), random_density(rng, 4, 1)});
  }
  return m;
}

}  // namespace tristeer::testing

#include "tristeer/lhsmodel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "tristeer/error.hpp"
#include "tristeer/taumap.hpp"

namespace tristeer::lhs {
namespace {

constexpr double kProbTol = 1e-12;
constexpr int kSigns[2] = {+1, -1};

const ComplexMatrix& projector(int axis, int sign) {
  static const std::array<std::array<ComplexMatrix, 2>, 3> cache = [] {
    std::array<std::array<ComplexMatrix, 2>, 3> c;
    for (int i = 1; i <= 3; ++i) {
      c[i - 1][0] = qmat::pauli_projector(i, +1);
      c[i - 1][1] = qmat::pauli_projector(i, -1);
    }
    return c;
  }();
  return cache[axis - 1][sign < 0];
}

double expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  return (op * rho).trace().real();
}

ComplexMatrix bloch_operator(const std::array<double, 3>& r) {
  ComplexMatrix m = qmat::identity(2);
  for (int i = 0; i < 3; ++i) m += r[i] * qmat::pauli(i + 1);
  return 0.5 * m;
}

ComplexMatrix pair_operator(const std::array<double, 3>& alpha,
                            const std::array<double, 3>& beta,
                            const std::array<std::array<double, 3>, 3>& corr,
                            double scale) {
  const ComplexMatrix id = qmat::identity(2);
  ComplexMatrix m = qmat::identity(4);
  for (int i = 0; i < 3; ++i) {
    m += scale * alpha[i] * qmat::kron(qmat::pauli(i + 1), id);
    m += scale * beta[i] * qmat::kron(id, qmat::pauli(i + 1));
    for (int j = 0; j < 3; ++j) {
      m += scale * corr[i][j] * qmat::kron(qmat::pauli(i + 1), qmat::pauli(j + 1));
    }
  }
  return 0.25 * m;
}

// Places rho_b (2x2) and rho_ac (4x4, order A, C) into the A, B, C ordering.
ComplexMatrix embed_b_ac(const ComplexMatrix& rho_b, const ComplexMatrix& rho_ac) {
  ComplexMatrix out(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int ai = i >> 2, bi = (i >> 1) & 1, ci = i & 1;
      const int aj = j >> 2, bj = (j >> 1) & 1, cj = j & 1;
      out(i, j) = rho_b(bi, bj) * rho_ac(2 * ai + ci, 2 * aj + cj);
    }
  }
  return out;
}

// Tr_last[(I (x) m) rho] for a 4x4 or 8x8 rho.
ComplexMatrix condition_last(const ComplexMatrix& rho, const ComplexMatrix& m) {
  const int dim = static_cast<int>(rho.rows());
  const ComplexMatrix lifted = qmat::kron(qmat::identity(dim / 2), m) * rho;
  return qmat::partial_trace(lifted, dim == 8 ? Subsystem::C : Subsystem::B);
}

void require_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("mu = {} outside [0, 1]", mu));
  }
}

void require_state(const ComplexMatrix& m, int dim, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(ErrorKind::kValidation,
                fmt::format("{}: expected {}x{}, got {}x{}", what, dim, dim, m.rows(),
                            m.cols()));
  }
  const auto check = qmat::check_density_matrix(m);
  if (!check.ok) {
    throw Error(ErrorKind::kValidation, fmt::format("{}: {}", what, check.message));
  }
}

void require_response(const PauliResponse& r, const std::string& what) {
  for (double p : r.plus) {
    if (!(p >= -kProbTol && p <= 1.0 + kProbTol)) {
      throw Error(ErrorKind::kValidation,
                  fmt::format("{}: p(+) = {} outside [0, 1]", what, p));
    }
  }
}

void require_pair_response(const PairResponse& box, const std::string& what) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double total = 0.0;
      for (double p : box.p[i][j]) {
        if (!(p >= -kProbTol)) {
          throw Error(ErrorKind::kValidation,
                      fmt::format("{}: negative probability {}", what, p));
        }
        total += p;
      }
      if (std::abs(total - 1.0) > kProbTol) {
        throw Error(ErrorKind::kValidation,
                    fmt::format("{}: setting ({}, {}) sums to {}", what, i + 1, j + 1,
                                total));
      }
    }
  }
  // No-signalling: each party's marginal ignores the other's setting.
  for (int i = 0; i < 3; ++i) {
    for (int j = 1; j < 3; ++j) {
      const double a0 = box.p[i][0][0] + box.p[i][0][1];
      const double aj = box.p[i][j][0] + box.p[i][j][1];
      const double b0 = box.p[0][i][0] + box.p[0][i][2];
      const double bj = box.p[j][i][0] + box.p[j][i][2];
      if (std::abs(a0 - aj) > kProbTol || std::abs(b0 - bj) > kProbTol) {
        throw Error(ErrorKind::kValidation, fmt::format("{}: signalling box", what));
      }
    }
  }
}

void require_weights(double total, bool any_negative, const char* model) {
  if (any_negative) {
    throw Error(ErrorKind::kValidation, fmt::format("{}: negative weight", model));
  }
  if (std::abs(total - 1.0) > kProbTol) {
    throw Error(ErrorKind::kValidation,
                fmt::format("{}: weights sum to {}", model, total));
  }
}

template <typename Terms>
void accumulate_weights(const Terms& terms, double& total, bool& negative) {
  for (const auto& t : terms) {
    total += t.weight;
    negative = negative || t.weight < 0.0;
  }
}

template <typename F>
JointTable tabulate(F&& prob) {
  JointTable t{};
  for (int ia = 1; ia <= 3; ++ia) {
    for (int ib = 1; ib <= 3; ++ib) {
      for (int ic = 1; ic <= 3; ++ic) {
        for (int sa : kSigns) {
          for (int sb : kSigns) {
            for (int sc : kSigns) {
              t[setting_index(ia, ib, ic)][outcome_index(sa, sb, sc)] =
                  prob(ia, ib, ic, sa, sb, sc);
            }
          }
        }
      }
    }
  }
  return t;
}

// Unit vector along v, or z when v vanishes (the split is then arbitrary).
std::array<double, 3> direction_of(const std::array<double, 3>& v, double norm) {
  if (norm < 1e-15) return {0.0, 0.0, 1.0};
  return {v[0] / norm, v[1] / norm, v[2] / norm};
}

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

std::array<double, 3> scaled(const std::array<double, 3>& v, double s) {
  return {s * v[0], s * v[1], s * v[2]};
}

// Shrunken Bloch vectors of the qubit left on the first factor of a two-qubit
// operator after the second factor obtains `m` (Tr_2[(I (x) m) rho]).
std::array<double, 3> conditional_bloch(const ComplexMatrix& rho_pair,
                                        const ComplexMatrix& m, double& prob) {
  const ComplexMatrix delta = condition_last(rho_pair, m);
  prob = delta.trace().real();
  std::array<double, 3> r{};
  if (prob <= 0.0) return r;
  for (int i = 0; i < 3; ++i) r[i] = expectation(qmat::pauli(i + 1), delta) / prob;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

JointTable quantum_table(const ComplexMatrix& op) {
  if (op.rows() != 8 || op.cols() != 8) {
    throw Error(ErrorKind::kDimension, "quantum_table needs an 8x8 operator");
  }
  return tabulate([&](int ia, int ib, int ic, int sa, int sb, int sc) {
    const ComplexMatrix p = qmat::kron(qmat::kron(projector(ia, sa), projector(ib, sb)),
                                       projector(ic, sc));
    return expectation(p, op);
  });
}

double max_deviation(const JointTable& x, const JointTable& y) {
  double worst = 0.0;
  for (int s = 0; s < kSettings; ++s) {
    for (int o = 0; o < kOutcomes; ++o) worst = std::max(worst, std::abs(x[s][o] - y[s][o]));
  }
  return worst;
}

double PauliResponse::prob(int axis, int sign) const {
  const double p = plus[axis - 1];
  return sign > 0 ? p : 1.0 - p;
}

std::array<double, 3> PauliResponse::bias() const {
  return {2 * plus[0] - 1, 2 * plus[1] - 1, 2 * plus[2] - 1};
}

double PairResponse::prob(int axis_a, int axis_b, int sign_a, int sign_b) const {
  return p[axis_a - 1][axis_b - 1][2 * (sign_a < 0) + (sign_b < 0)];
}

std::array<double, 3> PairResponse::alice_bias() const {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
      const auto& d = p[i][j];
      acc += d[0] + d[1] - d[2] - d[3];
    }
    out[i] = acc / 3.0;
  }
  return out;
}

std::array<double, 3> PairResponse::bob_bias() const {
  std::array<double, 3> out{};
  for (int j = 0; j < 3; ++j) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto& d = p[i][j];
      acc += d[0] - d[1] + d[2] - d[3];
    }
    out[j] = acc / 3.0;
  }
  return out;
}

double PairResponse::correlator(int axis_a, int axis_b) const {
  const auto& d = p[axis_a - 1][axis_b - 1];
  return 2 * d[0] + 2 * d[3] - 1;
}

PairResponse PairResponse::product(const PauliResponse& a, const PauliResponse& b) {
  PairResponse out;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int sa : kSigns) {
        for (int sb : kSigns) {
          out.p[i - 1][j - 1][2 * (sa < 0) + (sb < 0)] = a.prob(i, sa) * b.prob(j, sb);
        }
      }
    }
  }
  return out;
}

PairResponse PairResponse::from_state(const ComplexMatrix& rho_ab) {
  PairResponse out;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int sa : kSigns) {
        for (int sb : kSigns) {
          out.p[i - 1][j - 1][2 * (sa < 0) + (sb < 0)] =
              expectation(qmat::kron(projector(i, sa), projector(j, sb)), rho_ab);
        }
      }
    }
  }
  return out;
}

PairResponse PairResponse::from_correlators(
    const std::array<double, 3>& alpha, const std::array<double, 3>& beta,
    const std::array<std::array<double, 3>, 3>& corr) {
  PairResponse out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int sa : kSigns) {
        for (int sb : kSigns) {
          out.p[i][j][2 * (sa < 0) + (sb < 0)] =
              0.25 * (1 + sa * alpha[i] + sb * beta[j] + sa * sb * corr[i][j]);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

void validate(const LocalModelA& m) {
  double total = 0.0;
  bool negative = false;
  accumulate_weights(m.terms, total, negative);
  require_weights(total, negative, "LocalModelA");
  for (const auto& t : m.terms) {
    require_response(t.alice, "alice response");
    require_state(t.hidden_b, 2, "hidden state b");
    require_state(t.hidden_c, 2, "hidden state c");
  }
}

void validate(const HybridModelA& m) {
  double total = 0.0;
  bool negative = false;
  accumulate_weights(m.no_steer, total, negative);
  accumulate_weights(m.steer_b, total, negative);
  accumulate_weights(m.steer_c, total, negative);
  require_weights(total, negative, "HybridModelA");
  for (const auto& t : m.no_steer) {
    require_response(t.alice, "alice response");
    require_state(t.hidden_bc, 4, "hidden state bc");
  }
  for (const auto& t : m.steer_b) {
    require_state(t.rho_ab, 4, "pair state ab");
    require_state(t.hidden_c, 2, "hidden state c");
  }
  for (const auto& t : m.steer_c) {
    require_state(t.rho_ac, 4, "pair state ac");
    require_state(t.hidden_b, 2, "hidden state b");
  }
}

void validate(const LocalModelAB& m) {
  double total = 0.0;
  bool negative = false;
  accumulate_weights(m.terms, total, negative);
  require_weights(total, negative, "LocalModelAB");
  for (const auto& t : m.terms) {
    require_response(t.alice, "alice response");
    require_response(t.bob, "bob response");
    require_state(t.hidden_c, 2, "hidden state c");
  }
}

void validate(const HybridModelAB& m) {
  double total = 0.0;
  bool negative = false;
  accumulate_weights(m.no_steer, total, negative);
  accumulate_weights(m.bob_steers, total, negative);
  accumulate_weights(m.alice_steers, total, negative);
  require_weights(total, negative, "HybridModelAB");
  for (const auto& t : m.no_steer) {
    require_pair_response(t.box, "pair response");
    require_state(t.hidden_c, 2, "hidden state c");
  }
  for (const auto& t : m.bob_steers) {
    require_response(t.alice, "alice response");
    require_state(t.rho_bc, 4, "pair state bc");
  }
  for (const auto& t : m.alice_steers) {
    require_response(t.bob, "bob response");
    require_state(t.rho_ac, 4, "pair state ac");
  }
}

// ---------------------------------------------------------------------------

JointTable model_table(const LocalModelA& m) {
  return tabulate([&](int ia, int ib, int ic, int sa, int sb, int sc) {
    double p = 0.0;
    for (const auto& t : m.terms) {
      p += t.weight * t.alice.prob(ia, sa) * expectation(projector(ib, sb), t.hidden_b) *
           expectation(projector(ic, sc), t.hidden_c);
    }
    return p;
  });
}

JointTable model_table(const HybridModelA& m) {
  return tabulate([&](int ia, int ib, int ic, int sa, int sb, int sc) {
    double p = 0.0;
    for (const auto& t : m.no_steer) {
      p += t.weight * t.alice.prob(ia, sa) *
           expectation(qmat::kron(projector(ib, sb), projector(ic, sc)), t.hidden_bc);
    }
    for (const auto& t : m.steer_b) {
      p += t.weight *
           expectation(qmat::kron(projector(ia, sa), projector(ib, sb)), t.rho_ab) *
           expectation(projector(ic, sc), t.hidden_c);
    }
    for (const auto& t : m.steer_c) {
      p += t.weight *
           expectation(qmat::kron(projector(ia, sa), projector(ic, sc)), t.rho_ac) *
           expectation(projector(ib, sb), t.hidden_b);
    }
    return p;
  });
}

JointTable model_table(const LocalModelAB& m) {
  return tabulate([&](int ia, int ib, int ic, int sa, int sb, int sc) {
    double p = 0.0;
    for (const auto& t : m.terms) {
      p += t.weight * t.alice.prob(ia, sa) * t.bob.prob(ib, sb) *
           expectation(projector(ic, sc), t.hidden_c);
    }
    return p;
  });
}

JointTable model_table(const HybridModelAB& m) {
  return tabulate([&](int ia, int ib, int ic, int sa, int sb, int sc) {
    double p = 0.0;
    for (const auto& t : m.no_steer) {
      p += t.weight * t.box.prob(ia, ib, sa, sb) * expectation(projector(ic, sc), t.hidden_c);
    }
    for (const auto& t : m.bob_steers) {
      p += t.weight * t.alice.prob(ia, sa) *
           expectation(qmat::kron(projector(ib, sb), projector(ic, sc)), t.rho_bc);
    }
    for (const auto& t : m.alice_steers) {
      p += t.weight * t.bob.prob(ib, sb) *
           expectation(qmat::kron(projector(ia, sa), projector(ic, sc)), t.rho_ac);
    }
    return p;
  });
}

ComplexMatrix realization(const LocalModelA& m) {
  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (const auto& t : m.terms) {
    out += t.weight *
           qmat::kron(qmat::kron(bloch_operator(t.alice.bias()), t.hidden_b), t.hidden_c);
  }
  return out;
}

ComplexMatrix realization(const HybridModelA& m) {
  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (const auto& t : m.no_steer) {
    out += t.weight * qmat::kron(bloch_operator(t.alice.bias()), t.hidden_bc);
  }
  for (const auto& t : m.steer_b) out += t.weight * qmat::kron(t.rho_ab, t.hidden_c);
  for (const auto& t : m.steer_c) out += t.weight * embed_b_ac(t.hidden_b, t.rho_ac);
  return out;
}

ComplexMatrix realization(const LocalModelAB& m) {
  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (const auto& t : m.terms) {
    out += t.weight * qmat::kron(qmat::kron(bloch_operator(t.alice.bias()),
                                            bloch_operator(t.bob.bias())),
                                 t.hidden_c);
  }
  return out;
}

ComplexMatrix realization(const HybridModelAB& m) {
  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (const auto& t : m.no_steer) {
    std::array<std::array<double, 3>, 3> corr{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) corr[i][j] = t.box.correlator(i + 1, j + 1);
    }
    out += t.weight *
           qmat::kron(pair_operator(t.box.alice_bias(), t.box.bob_bias(), corr, 1.0),
                      t.hidden_c);
  }
  for (const auto& t : m.bob_steers) {
    out += t.weight * qmat::kron(bloch_operator(t.alice.bias()), t.rho_bc);
  }
  for (const auto& t : m.alice_steers) {
    out += t.weight * embed_b_ac(bloch_operator(t.bob.bias()), t.rho_ac);
  }
  return out;
}

// ---------------------------------------------------------------------------

void require_povm_element(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error(ErrorKind::kValidation, "POVM element must be 2x2");
  }
  if (!qmat::is_finite(m) || qmat::hermiticity_defect(m) > qmat::kHermitianTol) {
    throw Error(ErrorKind::kValidation, "POVM element must be Hermitian");
  }
  const auto ev = qmat::hermitian_eigenvalues(m);
  if (ev.front() < -qmat::kPsdTol || ev.back() > 1.0 + qmat::kPsdTol) {
    throw Error(ErrorKind::kValidation,
                fmt::format("POVM element eigenvalues [{:.3g}, {:.3g}] outside [0, 1]",
                            ev.front(), ev.back()));
  }
}

QubitConditional qubit_conditional(const ComplexMatrix& delta) {
  QubitConditional out;
  out.matrix = delta;
  out.weight = delta.trace().real();
  for (int i = 0; i < 3; ++i) out.r[i] = expectation(qmat::pauli(i + 1), delta);
  return out;
}

PairConditional pair_conditional(const ComplexMatrix& delta) {
  PairConditional out;
  out.matrix = delta;
  out.weight = delta.trace().real();
  const ComplexMatrix id = qmat::identity(2);
  for (int i = 0; i < 3; ++i) {
    out.a[i] = expectation(qmat::kron(qmat::pauli(i + 1), id), delta);
    out.b[i] = expectation(qmat::kron(id, qmat::pauli(i + 1)), delta);
    for (int j = 0; j < 3; ++j) {
      out.c[i][j] = expectation(qmat::kron(qmat::pauli(i + 1), qmat::pauli(j + 1)), delta);
    }
  }
  return out;
}

QubitConditional conditional_state_bc(const ThreeQubitState& tau, const ComplexMatrix& mb,
                                      const ComplexMatrix& mc) {
  require_povm_element(mb);
  require_povm_element(mc);
  const ComplexMatrix lifted =
      qmat::kron(qmat::kron(qmat::identity(2), mb), mc) * tau.matrix();
  const ComplexMatrix delta = qmat::partial_trace(
      qmat::partial_trace(lifted, Subsystem::C), Subsystem::B);
  return qubit_conditional(delta);
}

PairConditional conditional_state_c(const ThreeQubitState& tau, const ComplexMatrix& mc) {
  require_povm_element(mc);
  return pair_conditional(condition_last(tau.matrix(), mc));
}

// ---------------------------------------------------------------------------

double ProductTerm::prob(int ia, int ib, int ic, int sa, int sb, int sc) const {
  const auto& pa = projector(ia, sa);
  const auto& pb = projector(ib, sb);
  const auto& pc = projector(ic, sc);
  switch (split) {
    case Split::kA_B_C:
      return weight * expectation(pa, factors[0]) * expectation(pb, factors[1]) *
             expectation(pc, factors[2]);
    case Split::kA_BC:
      return weight * expectation(pa, factors[0]) *
             expectation(qmat::kron(pb, pc), factors[1]);
    case Split::kAB_C:
      return weight * expectation(qmat::kron(pa, pb), factors[0]) *
             expectation(pc, factors[1]);
    case Split::kB_AC:
      return weight * expectation(pb, factors[0]) *
             expectation(qmat::kron(pa, pc), factors[1]);
  }
  return 0.0;
}

ComplexMatrix ProductTerm::assemble() const {
  switch (split) {
    case Split::kA_B_C:
      return weight * qmat::kron(qmat::kron(factors[0], factors[1]), factors[2]);
    case Split::kA_BC:
    case Split::kAB_C:
      return weight * qmat::kron(factors[0], factors[1]);
    case Split::kB_AC:
      return weight * embed_b_ac(factors[0], factors[1]);
  }
  return ComplexMatrix::Zero(8, 8);
}

HiddenQubit bloch_qubit(const std::array<double, 3>& bloch) {
  HiddenQubit h;
  h.bloch = bloch;
  h.state = bloch_operator(bloch);
  h.min_eigenvalue = qmat::min_eigenvalue(h.state);
  h.psd = h.min_eigenvalue >= -qmat::kPsdTol;
  return h;
}

JointTable Tau1Decomposition::table() const {
  return tabulate([&](int ia, int ib, int ic, int sa, int sb, int sc) {
    double p = 0.0;
    for (const auto& t : terms) p += t.prob(ia, ib, ic, sa, sb, sc);
    return p;
  });
}

ComplexMatrix Tau1Decomposition::assemble() const {
  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (const auto& t : terms) out += t.assemble();
  return out;
}

namespace {

bool factors_psd(const ProductTerm& t) {
  return std::all_of(t.factors.begin(), t.factors.end(), [](const ComplexMatrix& f) {
    return qmat::min_eigenvalue(f) >= -qmat::kPsdTol;
  });
}

// mu rho + (1 - mu) I/2 (x) Tr_A rho for a two-qubit rho.
ComplexMatrix shrink_first(const ComplexMatrix& rho_pair, double mu) {
  return mu * rho_pair +
         (1.0 - mu) * qmat::kron(0.5 * qmat::identity(2),
                                 qmat::partial_trace(rho_pair, Subsystem::A));
}

}  // namespace

Tau1Decomposition reconstruct_tau1_decomposition(const LocalModelA& model, double mu) {
  require_mu(mu);
  validate(model);
  Tau1Decomposition d;
  d.mu = mu;
  for (const auto& t : model.terms) {
    HiddenQubit alice = bloch_qubit(scaled(t.alice.bias(), mu));
    d.terms.push_back(ProductTerm{t.weight, Split::kA_B_C,
                                  {alice.state, t.hidden_b, t.hidden_c},
                                  "local"});
    d.alice_states.push_back(std::move(alice));
  }
  d.all_psd = std::all_of(d.terms.begin(), d.terms.end(), factors_psd);
  return d;
}

Tau1Decomposition reconstruct_tau1_decomposition(const HybridModelA& model, double mu) {
  require_mu(mu);
  validate(model);
  Tau1Decomposition d;
  d.mu = mu;
  for (const auto& t : model.no_steer) {
    HiddenQubit alice = bloch_qubit(scaled(t.alice.bias(), mu));
    d.terms.push_back(
        ProductTerm{t.weight, Split::kA_BC, {alice.state, t.hidden_bc}, "no-steer"});
    d.alice_states.push_back(std::move(alice));
  }
  for (const auto& t : model.steer_b) {
    d.terms.push_back(ProductTerm{t.weight, Split::kAB_C,
                                  {shrink_first(t.rho_ab, mu), t.hidden_c},
                                  "steer-b"});
  }
  for (const auto& t : model.steer_c) {
    d.terms.push_back(ProductTerm{t.weight, Split::kB_AC,
                                  {t.hidden_b, shrink_first(t.rho_ac, mu)},
                                  "steer-c"});
  }
  d.all_psd = std::all_of(d.terms.begin(), d.terms.end(), factors_psd);
  return d;
}

HiddenQubit alice_conditional_on_bob(const ComplexMatrix& rho_ab, const ComplexMatrix& mb,
                                     double mu) {
  require_mu(mu);
  require_povm_element(mb);
  double pb = 0.0;
  const auto r = conditional_bloch(rho_ab, mb, pb);
  if (pb <= 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "Bob's outcome has zero probability");
  }
  return bloch_qubit(scaled(r, mu));
}

// ---------------------------------------------------------------------------

ComplexMatrix PairExpansion::recombine() const {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (const auto& c : components) out += c.weight * c.state;
  return out;
}

PairExpansion expand_pair_state(const PairResponse& box, double mu) {
  require_mu(mu);
  PairExpansion e;
  std::array<std::array<double, 3>, 3> corr{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) corr[i][j] = box.correlator(i + 1, j + 1);
  }
  e.rho_ab = pair_operator(box.alice_bias(), box.bob_bias(), corr, mu);
  e.min_eigenvalue = qmat::min_eigenvalue(e.rho_ab);
  e.psd = e.min_eigenvalue >= -qmat::kPsdTol;
  e.components_psd = true;

  const ComplexMatrix id = qmat::identity(2);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const ComplexMatrix si = qmat::kron(qmat::pauli(i), id);
      const ComplexMatrix sj = qmat::kron(id, qmat::pauli(j));
      const ComplexMatrix sij = qmat::kron(qmat::pauli(i), qmat::pauli(j));
      for (int sa : kSigns) {
        for (int sb : kSigns) {
          PairExpansion::Component c;
          c.axis_a = i;
          c.axis_b = j;
          c.sign_a = sa;
          c.sign_b = sb;
          c.weight = box.prob(i, j, sa, sb) / 9.0;
          c.state = 2.25 * (qmat::identity(4) / 9.0 +
                            mu * (sa / 3.0 * si + sb / 3.0 * sj + double(sa * sb) * sij));
          c.min_eigenvalue = qmat::min_eigenvalue(c.state);
          c.psd = c.min_eigenvalue >= -qmat::kPsdTol;
          if (c.weight > 0.0 && !c.psd) e.components_psd = false;
          e.components.push_back(std::move(c));
        }
      }
    }
  }
  return e;
}

ComplexMatrix OmegaFactor::recombine() const {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      out += q[2 * s + t] * qmat::kron(alice_projectors[s], bob_projectors[t]);
    }
  }
  return out;
}

OmegaFactor make_omega(const std::array<double, 3>& alpha,
                       const std::array<double, 3>& beta, double mu) {
  require_mu(mu);
  OmegaFactor w;
  w.alpha = alpha;
  w.beta = beta;
  w.alpha_norm = norm3(alpha);
  w.beta_norm = norm3(beta);
  const double a = w.alpha_norm;
  const double b = w.beta_norm;
  w.q = {0.25 * (1 + mu * (a * b + a + b)), 0.25 * (1 + mu * (-a * b + a - b)),
         0.25 * (1 + mu * (-a * b - a + b)), 0.25 * (1 + mu * (a * b - a - b))};
  w.q_nonnegative =
      std::all_of(w.q.begin(), w.q.end(), [](double x) { return x >= -kProbTol; });

  const auto na = direction_of(alpha, a);
  const auto nb = direction_of(beta, b);
  w.alice_projectors = {bloch_operator(na), bloch_operator(scaled(na, -1.0))};
  w.bob_projectors = {bloch_operator(nb), bloch_operator(scaled(nb, -1.0))};

  std::array<std::array<double, 3>, 3> corr{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) corr[i][j] = alpha[i] * beta[j];
  }
  w.matrix = pair_operator(alpha, beta, corr, mu);
  return w;
}

JointTable Tau2Decomposition::table() const {
  JointTable t = tabulate([&](int ia, int ib, int ic, int sa, int sb, int sc) {
    double p = 0.0;
    for (const auto& term : terms) p += term.prob(ia, ib, ic, sa, sb, sc);
    return p;
  });
  // Conditional factors contribute only to settings with their Charlie axis.
  for (const auto& c : conditional) {
    for (int ia = 1; ia <= 3; ++ia) {
      for (int ib = 1; ib <= 3; ++ib) {
        for (int sa : kSigns) {
          for (int sb : kSigns) {
            double p = 0.0;
            for (int s = 0; s < 2; ++s) {
              for (int u = 0; u < 2; ++u) {
                p += c.omega.q[2 * s + u] *
                     expectation(projector(ia, sa), c.omega.alice_projectors[s]) *
                     expectation(projector(ib, sb), c.omega.bob_projectors[u]);
              }
            }
            t[setting_index(ia, ib, c.charlie_axis)]
             [outcome_index(sa, sb, c.charlie_sign)] += c.weight * c.outcome_prob * p;
          }
        }
      }
    }
  }
  return t;
}

Tau2Decomposition reconstruct_tau2_decomposition(const LocalModelAB& model, double mu) {
  require_mu(mu);
  validate(model);
  Tau2Decomposition d;
  d.mu = mu;
  for (const auto& t : model.terms) {
    OmegaFactor w = make_omega(t.alice.bias(), t.bob.bias(), mu);
    for (int s = 0; s < 2; ++s) {
      for (int u = 0; u < 2; ++u) {
        d.terms.push_back(ProductTerm{
            t.weight * w.q[2 * s + u], Split::kA_B_C,
            {w.alice_projectors[s], w.bob_projectors[u], t.hidden_c}, "local"});
      }
    }
    d.q_nonnegative = d.q_nonnegative && w.q_nonnegative;
    d.omegas.push_back(std::move(w));
  }
  return d;
}

Tau2Decomposition reconstruct_tau2_decomposition(const HybridModelAB& model, double mu) {
  require_mu(mu);
  validate(model);
  Tau2Decomposition d;
  d.mu = mu;
  for (const auto& t : model.no_steer) {
    PairExpansion e = expand_pair_state(t.box, mu);
    d.terms.push_back(ProductTerm{t.weight, Split::kAB_C, {e.rho_ab, t.hidden_c}, "no-steer"});
    d.pair_states_psd = d.pair_states_psd && e.psd;
    d.components_psd = d.components_psd && e.components_psd;
    d.pair_expansions.push_back(std::move(e));
  }
  for (int axis = 1; axis <= 3; ++axis) {
    for (int sign : kSigns) {
      const ComplexMatrix& mc = projector(axis, sign);
      for (const auto& t : model.bob_steers) {
        double pc = 0.0;
        const auto beta = conditional_bloch(t.rho_bc, mc, pc);
        if (pc <= 0.0) continue;
        OmegaFactor w = make_omega(t.alice.bias(), beta, mu);
        d.q_nonnegative = d.q_nonnegative && w.q_nonnegative;
        d.conditional.push_back(
            ConditionalOmega{t.weight, axis, sign, pc, std::move(w), "bob-steers"});
      }
      for (const auto& t : model.alice_steers) {
        double pc = 0.0;
        const auto alpha = conditional_bloch(t.rho_ac, mc, pc);
        if (pc <= 0.0) continue;
        OmegaFactor w = make_omega(alpha, t.bob.bias(), mu);
        d.q_nonnegative = d.q_nonnegative && w.q_nonnegative;
        d.conditional.push_back(
            ConditionalOmega{t.weight, axis, sign, pc, std::move(w), "alice-steers"});
      }
    }
  }
  return d;
}

}  // namespace tristeer::lhs

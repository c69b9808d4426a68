#pragma once

// Finite hidden-variable models for three parties measuring Pauli settings,
// and the constructive decompositions showing that the tau1/tau2 maps send
// unsteerable statistics to separable (or biseparable) states. Used as a
// verification oracle: every decomposition can be compared, probability by
// probability, against the mapped 8x8 operator.

#include <array>
#include <string>
#include <vector>

#include "tristeer/qmat.hpp"
#include "tristeer/states.hpp"

namespace tristeer::lhs {

// ---------------------------------------------------------------------------
// Joint probability tables over the 27 Pauli settings and 8 outcomes.

inline constexpr int kSettings = 27;
inline constexpr int kOutcomes = 8;

using JointTable = std::array<std::array<double, kOutcomes>, kSettings>;

/// Axes are 1..3 (x, y, z).
constexpr int setting_index(int axis_a, int axis_b, int axis_c) {
  return 9 * (axis_a - 1) + 3 * (axis_b - 1) + (axis_c - 1);
}

/// Signs are +1 / -1; '+' maps to bit 0.
constexpr int outcome_index(int sign_a, int sign_b, int sign_c) {
  return 4 * (sign_a < 0) + 2 * (sign_b < 0) + (sign_c < 0);
}

/// p(a, b, c | sigma_i, sigma_j, sigma_k) = Tr[(P_a (x) P_b (x) P_c) op] for
/// any 8x8 operator.
JointTable quantum_table(const ComplexMatrix& op);

double max_deviation(const JointTable& x, const JointTable& y);

// ---------------------------------------------------------------------------
// Black-box responses.

/// p(+ | sigma_i, lambda) for the three Pauli settings of one untrusted party.
struct PauliResponse {
  std::array<double, 3> plus{0.5, 0.5, 0.5};

  double prob(int axis, int sign) const;
  /// 2 p(+|sigma_i) - 1.
  std::array<double, 3> bias() const;
};

/// Joint response p(a, b | sigma_i, sigma_j, lambda) of two untrusted parties.
/// p[i-1][j-1][outcome] with outcome = 2 (a == -) + (b == -).
struct PairResponse {
  std::array<std::array<std::array<double, 4>, 3>, 3> p{};

  double prob(int axis_a, int axis_b, int sign_a, int sign_b) const;
  std::array<double, 3> alice_bias() const;
  std::array<double, 3> bob_bias() const;
  /// 2 p(++|ij) + 2 p(--|ij) - 1.
  double correlator(int axis_a, int axis_b) const;

  static PairResponse product(const PauliResponse& a, const PauliResponse& b);
  /// Statistics of Pauli measurements on a two-qubit state.
  static PairResponse from_state(const ComplexMatrix& rho_ab);
  /// p(a,b|ij) = (1 + a alpha_i + b beta_j + ab C_ij) / 4.
  static PairResponse from_correlators(const std::array<double, 3>& alpha,
                                       const std::array<double, 3>& beta,
                                       const std::array<std::array<double, 3>, 3>& corr);
};

// ---------------------------------------------------------------------------
// Hidden-variable models. Every model validates with validate(); each term
// weight is p(lambda) (or p_k(lambda) for hybrid models) and all weights of a
// model sum to one.

/// Alice untrusted, Bob and Charlie trusted with product hidden states:
/// p(a,b,c) = sum_l p(l) p(a|A,l) p_Q(b|B,tau_b) p_Q(c|C,tau_c).
struct LocalModelA {
  struct Term {
    double weight = 0.0;
    PauliResponse alice;
    ComplexMatrix hidden_b;  // 2x2
    ComplexMatrix hidden_c;  // 2x2
  };
  std::vector<Term> terms;
};

/// Hybrid model for Alice steering Bob and Charlie: a mixture of
/// (black-box Alice, hidden entangled BC state), (quantum AB pair, hidden C)
/// and (quantum AC pair, hidden B).
struct HybridModelA {
  struct NoSteer {
    double weight = 0.0;
    PauliResponse alice;
    ComplexMatrix hidden_bc;  // 4x4, order B, C
  };
  struct SteerB {
    double weight = 0.0;
    ComplexMatrix rho_ab;    // 4x4, order A, B
    ComplexMatrix hidden_c;  // 2x2
  };
  struct SteerC {
    double weight = 0.0;
    ComplexMatrix rho_ac;    // 4x4, order A, C
    ComplexMatrix hidden_b;  // 2x2
  };
  std::vector<NoSteer> no_steer;
  std::vector<SteerB> steer_b;
  std::vector<SteerC> steer_c;
};

/// Alice and Bob untrusted, Charlie trusted:
/// p(a,b,c) = sum_l p(l) p(a|A,l) p(b|B,l) p_Q(c|C,tau_c).
struct LocalModelAB {
  struct Term {
    double weight = 0.0;
    PauliResponse alice;
    PauliResponse bob;
    ComplexMatrix hidden_c;  // 2x2
  };
  std::vector<Term> terms;
};

/// Hybrid model for Alice and Bob steering Charlie: a mixture of
/// (joint black box for AB, hidden C), (black-box Alice, quantum BC pair) and
/// (black-box Bob, quantum AC pair).
struct HybridModelAB {
  struct NoSteer {
    double weight = 0.0;
    PairResponse box;
    ComplexMatrix hidden_c;  // 2x2
  };
  struct BobSteers {
    double weight = 0.0;
    PauliResponse alice;
    ComplexMatrix rho_bc;  // 4x4, order B, C
  };
  struct AliceSteers {
    double weight = 0.0;
    PauliResponse bob;
    ComplexMatrix rho_ac;  // 4x4, order A, C
  };
  std::vector<NoSteer> no_steer;
  std::vector<BobSteers> bob_steers;
  std::vector<AliceSteers> alice_steers;
};

/// Throw Error(kValidation) unless weights are a probability vector, every
/// response is a distribution (pair responses also no-signalling) and every
/// hidden or pair state is a density matrix.
void validate(const LocalModelA& m);
void validate(const HybridModelA& m);
void validate(const LocalModelAB& m);
void validate(const HybridModelAB& m);

/// The model's own prediction for all Pauli settings.
JointTable model_table(const LocalModelA& m);
JointTable model_table(const HybridModelA& m);
JointTable model_table(const LocalModelAB& m);
JointTable model_table(const HybridModelAB& m);

/// A Hermitian unit-trace 8x8 operator with the same Pauli statistics as the
/// model. Black-box responses become Bloch operators 1/2 (I + r.sigma), which
/// need not be positive.
ComplexMatrix realization(const LocalModelA& m);
ComplexMatrix realization(const HybridModelA& m);
ComplexMatrix realization(const LocalModelAB& m);
ComplexMatrix realization(const HybridModelAB& m);

// ---------------------------------------------------------------------------
// Conditional states.

/// 1/2 (y I + sum_i r_i sigma_i), the unnormalized state left on Alice after
/// Bob and Charlie measure.
struct QubitConditional {
  ComplexMatrix matrix;  // 2x2
  double weight = 0.0;   // y = Tr
  std::array<double, 3> r{};
};

/// 1/4 (x I + sum a_i sigma_i (x) I + sum b_i I (x) sigma_i
///      + sum c_ij sigma_i (x) sigma_j), left on Alice and Bob after Charlie
/// measures.
struct PairConditional {
  ComplexMatrix matrix;  // 4x4
  double weight = 0.0;   // x = Tr
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<std::array<double, 3>, 3> c{};
};

/// Throws Error(kValidation) unless 0 <= m <= I.
void require_povm_element(const ComplexMatrix& m);

QubitConditional conditional_state_bc(const ThreeQubitState& tau,
                                      const ComplexMatrix& mb,
                                      const ComplexMatrix& mc);
PairConditional conditional_state_c(const ThreeQubitState& tau,
                                    const ComplexMatrix& mc);

/// Bloch coefficients of arbitrary 2x2 / 4x4 operators.
QubitConditional qubit_conditional(const ComplexMatrix& delta);
PairConditional pair_conditional(const ComplexMatrix& delta);

// ---------------------------------------------------------------------------
// Decompositions.

enum class Split { kA_B_C, kA_BC, kAB_C, kB_AC };

/// weight * (factor_0 (x) factor_1 [(x) factor_2]) with the factor layout
/// named by `split`: A,B,C / A,BC / AB,C / B,AC.
struct ProductTerm {
  double weight = 0.0;
  Split split = Split::kA_B_C;
  std::vector<ComplexMatrix> factors;
  std::string origin;

  double prob(int axis_a, int axis_b, int axis_c, int sign_a, int sign_b,
              int sign_c) const;
  ComplexMatrix assemble() const;  // 8x8 including the weight
};

/// 1/2 (I + bloch.sigma) with its positivity verdict.
struct HiddenQubit {
  ComplexMatrix state;
  std::array<double, 3> bloch{};
  double min_eigenvalue = 0.0;
  bool psd = false;
};

HiddenQubit bloch_qubit(const std::array<double, 3>& bloch);

struct Tau1Decomposition {
  double mu = 0.0;
  std::vector<ProductTerm> terms;
  /// Alice's shrunken black-box states, one per black-box term.
  std::vector<HiddenQubit> alice_states;
  bool all_psd = false;

  JointTable table() const;
  ComplexMatrix assemble() const;
};

/// Fully local model: tau1 = sum_l p(l) tau_alpha (x) tau_beta (x) tau_gamma
/// with tau_alpha = 1/2 (I + mu sum_i (p(+|i) - p(-|i)) sigma_i).
Tau1Decomposition reconstruct_tau1_decomposition(const LocalModelA& model, double mu);

/// Hybrid model: black-box terms give A|BC products with Alice's state
/// shrunk as above; quantum AB (AC) terms give AB|C (B|AC) products with the
/// pair state mu rho + (1 - mu) I/2 (x) Tr_A rho.
Tau1Decomposition reconstruct_tau1_decomposition(const HybridModelA& model, double mu);

/// Alice's normalized state after Bob obtains outcome `mb` on the tau1 image
/// of rho_ab: 1/2 (I + mu sum_i (p(+,b|i,B) - p(-,b|i,B)) / p(b|B) sigma_i).
HiddenQubit alice_conditional_on_bob(const ComplexMatrix& rho_ab,
                                     const ComplexMatrix& mb, double mu);

/// Sixteen-sign expansion of the pair state built from a joint black box:
/// rho_ab = sum_{ij,ab} p(ab|ij)/9 * 9/4 [I/9 + mu (a/3 s_i(x)I + b/3 I(x)s_j
/// + ab s_i(x)s_j)].
struct PairExpansion {
  struct Component {
    int axis_a = 1, axis_b = 1, sign_a = 1, sign_b = 1;
    double weight = 0.0;
    ComplexMatrix state;  // unit trace
    double min_eigenvalue = 0.0;
    bool psd = false;
  };
  ComplexMatrix rho_ab;  // 1/4 [I + mu(alpha.s(x)I + I(x)beta.s + C_ij s_i(x)s_j)]
  std::vector<Component> components;
  double min_eigenvalue = 0.0;
  bool psd = false;             // rho_ab itself
  bool components_psd = false;  // every component with positive weight

  ComplexMatrix recombine() const;
};

PairExpansion expand_pair_state(const PairResponse& box, double mu);

/// 1/4 [I + mu (alpha.s (x) I + I (x) beta.s + (alpha.s) (x) (beta.s))] split
/// along the eigenprojectors of alpha.s and beta.s with weights q1..q4 for
/// (+,+), (+,-), (-,+), (-,-).
struct OmegaFactor {
  std::array<double, 3> alpha{};
  std::array<double, 3> beta{};
  double alpha_norm = 0.0;
  double beta_norm = 0.0;
  std::array<double, 4> q{};
  std::array<ComplexMatrix, 2> alice_projectors;  // +, -
  std::array<ComplexMatrix, 2> bob_projectors;    // +, -
  ComplexMatrix matrix;
  bool q_nonnegative = false;

  ComplexMatrix recombine() const;
};

OmegaFactor make_omega(const std::array<double, 3>& alpha,
                       const std::array<double, 3>& beta, double mu);

/// An Omega factor that holds only once Charlie has obtained a given outcome
/// of a given Pauli setting; `outcome_prob` is p(c|C) of the trusted state.
struct ConditionalOmega {
  double weight = 0.0;
  int charlie_axis = 3;
  int charlie_sign = 1;
  double outcome_prob = 0.0;
  OmegaFactor omega;
  std::string origin;
};

struct Tau2Decomposition {
  double mu = 0.0;
  std::vector<ProductTerm> terms;
  std::vector<PairExpansion> pair_expansions;
  std::vector<OmegaFactor> omegas;
  std::vector<ConditionalOmega> conditional;
  bool pair_states_psd = true;
  bool components_psd = true;
  bool q_nonnegative = true;

  JointTable table() const;
};

/// Fully local AB -> C model: each term becomes
/// sum_m p(l) q_m P^A_m (x) P^B_m (x) tau_gamma.
Tau2Decomposition reconstruct_tau2_decomposition(const LocalModelAB& model, double mu);

/// Hybrid AB -> C model: joint black-box terms give AB|C products with the
/// sixteen-sign pair expansion; the single black-box terms give Omega / omega
/// factors conditional on Charlie's outcome.
Tau2Decomposition reconstruct_tau2_decomposition(const HybridModelAB& model, double mu);

}  // namespace tristeer::lhs

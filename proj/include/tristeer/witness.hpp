#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tristeer/states.hpp"

namespace tristeer {

enum class CriterionId { kGhzGme, kGhzEnt, kProp1Gme, kWGmeRef, kPptEnt };

/// "GHZ_GME", "GHZ_ENT", "PROP1_GME", "W_GME_REF", "PPT_ENT".
std::string to_string(CriterionId id);
CriterionId parse_criterion(std::string_view text);

/// True for the criteria whose detection certifies genuine tripartite
/// entanglement; the others only certify that the state is not fully
/// separable.
bool certifies_genuine(CriterionId id);

/// A criterion fires only on strict violation beyond this margin.
inline constexpr double kCriterionTol = 1e-10;

struct CriterionVerdict {
  CriterionId id = CriterionId::kGhzGme;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool detected = false;
  std::string detail;
};

/// |t18| > sqrt(t22 t77) + sqrt(t33 t66) + sqrt(t44 t55): genuine tripartite
/// entanglement.
CriterionVerdict ghz_gme(const ThreeQubitState& tau);

/// |t18| against the three single-cut bounds sqrt(t44 t55) (A|BC),
/// sqrt(t33 t66) (B|AC) and sqrt(t22 t77) (C|AB). The scalar margin uses the
/// largest bound, so it is positive only when the state is entangled across
/// every cut; the detail lists each cut's own margin.
CriterionVerdict ghz_ent(const ThreeQubitState& tau);

/// |t23| + |t25| + |t35| > (2 t11 + t44 + t66 + t77)/2 + (t22 + t33 + t55)/2.
CriterionVerdict prop1_gme(const ThreeQubitState& tau);

/// |t23| + |t25| + |t35| > sqrt(t11 t44) + sqrt(t11 t66) + sqrt(t11 t77)
///                        + (t22 + t33 + t55)/2.
CriterionVerdict w_gme_ref(const ThreeQubitState& tau);

/// Negative partial transpose on any single qubit. lhs is minus the smallest
/// eigenvalue over the three partial transposes, rhs is zero.
CriterionVerdict ppt_ent(const ThreeQubitState& tau);

CriterionVerdict evaluate(CriterionId id, const ThreeQubitState& tau);

/// Margins of the three single-cut GHZ inequalities, indexed A|BC, B|AC, C|AB.
struct GhzCutMargins {
  double a_bc = 0.0;
  double b_ac = 0.0;
  double c_ab = 0.0;
};
GhzCutMargins ghz_cut_margins(const ThreeQubitState& tau);

/// One entry inequality |s_ij| <= (s_kk + s_ll)/2 obeyed by every pure state
/// that factorizes across a cut.
struct EntryInequality {
  int i = 0, j = 0;  // off-diagonal entry (1-based)
  int k = 0, l = 0;  // diagonal entries (1-based)
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double tol = kCriterionTol) const { return lhs <= rhs + tol; }
};

/// The three inequalities for `cut` (the qubit split off from the other two),
/// evaluated on an arbitrary 8x8 matrix.
std::vector<EntryInequality> biseparability_inequalities(const ComplexMatrix& sigma,
                                                         Subsystem cut);

/// Whether |psi><psi| satisfies all three inequalities for `cut`. Every state
/// that is a product across the cut does.
bool pure_biseparable_check(const PureState& psi, Subsystem cut);

}  // namespace tristeer

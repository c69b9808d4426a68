#include "tristeer/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "tristeer/error.hpp"

namespace tristeer {

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::kGhzGme: return "GHZ_GME";
    case CriterionId::kGhzEnt: return "GHZ_ENT";
    case CriterionId::kProp1Gme: return "PROP1_GME";
    case CriterionId::kWGmeRef: return "W_GME_REF";
    case CriterionId::kPptEnt: return "PPT_ENT";
  }
  return "?";
}

CriterionId parse_criterion(std::string_view text) {
  for (auto id : {CriterionId::kGhzGme, CriterionId::kGhzEnt,
                  CriterionId::kProp1Gme, CriterionId::kWGmeRef,
                  CriterionId::kPptEnt}) {
    if (text == to_string(id)) return id;
  }
  throw Error(ErrorKind::kInvalidArgument,
              fmt::format("unknown criterion '{}'", text));
}

bool certifies_genuine(CriterionId id) {
  return id == CriterionId::kGhzGme || id == CriterionId::kProp1Gme ||
         id == CriterionId::kWGmeRef;
}

namespace {

// Entry views in 1-based indexing. Diagonals are clamped at zero so rounding
// noise cannot produce a NaN under the square root.
double diag(const ComplexMatrix& m, int i) {
  return std::max(0.0, m(i - 1, i - 1).real());
}

double off(const ComplexMatrix& m, int i, int j) { return std::abs(m(i - 1, j - 1)); }

double geo(const ComplexMatrix& m, int i, int j) {
  return std::sqrt(diag(m, i) * diag(m, j));
}

CriterionVerdict make_verdict(CriterionId id, double lhs, double rhs,
                              std::string detail = {}) {
  CriterionVerdict v;
  v.id = id;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = lhs - rhs;
  v.detected = v.margin > kCriterionTol;
  v.detail = std::move(detail);
  return v;
}

double triangle_sum(const ComplexMatrix& m) {
  return off(m, 2, 3) + off(m, 2, 5) + off(m, 3, 5);
}

}  // namespace

GhzCutMargins ghz_cut_margins(const ThreeQubitState& tau) {
  const auto& m = tau.matrix();
  const double t18 = off(m, 1, 8);
  return GhzCutMargins{t18 - geo(m, 4, 5), t18 - geo(m, 3, 6), t18 - geo(m, 2, 7)};
}

CriterionVerdict ghz_gme(const ThreeQubitState& tau) {
  const auto& m = tau.matrix();
  return make_verdict(CriterionId::kGhzGme, off(m, 1, 8),
                      geo(m, 2, 7) + geo(m, 3, 6) + geo(m, 4, 5));
}

CriterionVerdict ghz_ent(const ThreeQubitState& tau) {
  const auto& m = tau.matrix();
  const std::array<std::pair<const char*, double>, 3> bounds{{
      {"A|BC", geo(m, 4, 5)},
      {"B|AC", geo(m, 3, 6)},
      {"C|AB", geo(m, 2, 7)},
  }};
  const double t18 = off(m, 1, 8);
  const auto binding = std::max_element(
      bounds.begin(), bounds.end(),
      [](const auto& x, const auto& y) { return x.second < y.second; });
  std::string detail = fmt::format("binding cut {}", binding->first);
  std::string fired;
  for (const auto& [cut, bound] : bounds) {
    const double margin = t18 - bound;
    detail += fmt::format("; {} margin {:.6g}", cut, margin);
    if (margin > kCriterionTol) fired += fired.empty() ? cut : std::string(",") + cut;
  }
  detail += fmt::format("; entangled across [{}]", fired);
  return make_verdict(CriterionId::kGhzEnt, t18, binding->second, std::move(detail));
}

CriterionVerdict prop1_gme(const ThreeQubitState& tau) {
  const auto& m = tau.matrix();
  const double rhs =
      0.5 * (2.0 * diag(m, 1) + diag(m, 4) + diag(m, 6) + diag(m, 7)) +
      0.5 * (diag(m, 2) + diag(m, 3) + diag(m, 5));
  return make_verdict(CriterionId::kProp1Gme, triangle_sum(m), rhs);
}

CriterionVerdict w_gme_ref(const ThreeQubitState& tau) {
  const auto& m = tau.matrix();
  const double rhs = geo(m, 1, 4) + geo(m, 1, 6) + geo(m, 1, 7) +
                     0.5 * (diag(m, 2) + diag(m, 3) + diag(m, 5));
  return make_verdict(CriterionId::kWGmeRef, triangle_sum(m), rhs);
}

CriterionVerdict ppt_ent(const ThreeQubitState& tau) {
  double lowest = 0.0;
  bool first = true;
  std::string negative;
  std::string detail;
  for (auto s : {Subsystem::A, Subsystem::B, Subsystem::C}) {
    const double ev = qmat::min_eigenvalue(qmat::partial_transpose(tau.matrix(), s));
    detail += fmt::format("{}PT_{} min eig {:.6g}", first ? "" : "; ", to_string(s), ev);
    if (first || ev < lowest) lowest = ev;
    first = false;
    if (-ev > kCriterionTol) {
      negative += negative.empty() ? to_string(s) : std::string(",") + to_string(s);
    }
  }
  detail += fmt::format("; negative on [{}]", negative);
  return make_verdict(CriterionId::kPptEnt, -lowest, 0.0, std::move(detail));
}

CriterionVerdict evaluate(CriterionId id, const ThreeQubitState& tau) {
  switch (id) {
    case CriterionId::kGhzGme: return ghz_gme(tau);
    case CriterionId::kGhzEnt: return ghz_ent(tau);
    case CriterionId::kProp1Gme: return prop1_gme(tau);
    case CriterionId::kWGmeRef: return w_gme_ref(tau);
    case CriterionId::kPptEnt: return ppt_ent(tau);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown criterion");
}

std::vector<EntryInequality> biseparability_inequalities(const ComplexMatrix& sigma,
                                                         Subsystem cut) {
  if (sigma.rows() != 8 || sigma.cols() != 8) {
    throw Error(ErrorKind::kDimension, "biseparability_inequalities needs 8x8");
  }
  // (i, j, k, l): |s_ij| <= (s_kk + s_ll)/2.
  std::array<std::array<int, 4>, 3> rows;
  switch (cut) {
    case Subsystem::A:
      rows = {{{2, 5, 1, 6}, {3, 5, 1, 7}, {2, 3, 2, 3}}};
      break;
    case Subsystem::B:
      rows = {{{2, 3, 1, 4}, {3, 5, 1, 7}, {2, 5, 2, 5}}};
      break;
    case Subsystem::C:
      rows = {{{2, 3, 1, 4}, {2, 5, 1, 6}, {3, 5, 3, 5}}};
      break;
  }
  std::vector<EntryInequality> out;
  for (const auto& r : rows) {
    EntryInequality e;
    e.i = r[0];
    e.j = r[1];
    e.k = r[2];
    e.l = r[3];
    e.lhs = std::abs(sigma(e.i - 1, e.j - 1));
    e.rhs = 0.5 * (sigma(e.k - 1, e.k - 1).real() + sigma(e.l - 1, e.l - 1).real());
    out.push_back(e);
  }
  return out;
}

bool pure_biseparable_check(const PureState& psi, Subsystem cut) {
  const auto ineqs = biseparability_inequalities(psi.projector(), cut);
  return std::all_of(ineqs.begin(), ineqs.end(),
                     [](const EntryInequality& e) { return e.holds(); });
}

}  // namespace tristeer

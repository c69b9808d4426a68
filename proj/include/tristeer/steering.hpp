#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tristeer/taumap.hpp"
#include "tristeer/witness.hpp"

namespace tristeer {

enum class Conclusion { kUndetermined, kDetected };

std::string to_string(Conclusion c);

struct SteeringReport {
  std::string label;
  Scenario scenario;
  double mu = 0.0;
  bool certified = false;
  std::vector<CriterionVerdict> criteria;
  std::map<Scenario, Conclusion> conclusions;
  std::vector<std::string> notes;

  Conclusion conclusion(Scenario s) const;
};

/// Criteria run for a scenario: the genuine-entanglement criteria for
/// strength=genuine, the entanglement criteria otherwise. Empty for
/// (AB -> C, genuine), which has no certified detection path.
std::vector<CriterionId> criteria_for(Scenario s);

/// Whether a detection by `id` on the scenario's mapped state supports a
/// conclusion of the scenario's strength.
bool criterion_applies(Scenario s, CriterionId id);

/// Builds the scenario's mapped state (tau1 for A -> BC, tau2 for AB -> C) at
/// `mu` (default: the certified bound), runs the criteria and closes the
/// conclusions under the implication lattice. With mu above the bound the
/// verdicts are still reported but no conclusion is drawn.
SteeringReport detect(const ThreeQubitState& rho, Scenario scenario,
                      std::optional<double> mu = std::nullopt);

/// Same, restricted to the given criteria (each must apply to the scenario).
SteeringReport detect(const ThreeQubitState& rho, Scenario scenario,
                      std::optional<double> mu,
                      const std::vector<CriterionId>& criteria);

/// genuine(X) => steering(X); genuine(AB->C) => genuine(A->BC);
/// steering(AB->C) => steering(A->BC). Applied until nothing changes.
void close_implications(std::map<Scenario, Conclusion>& conclusions);

struct ThresholdResult {
  std::string family;
  Scenario scenario;
  CriterionId criterion = CriterionId::kGhzEnt;
  double mu = 0.0;
  double critical_p = 0.0;
  double tolerance = 0.0;
  double p_low = 0.0;
  double p_high = 0.0;
  double margin_low = 0.0;
  double margin_high = 0.0;
};

inline constexpr int kPrescanPoints = 64;

/// Criterion margin on the scenario's mapped state of family.at(p), with mu
/// pinned at the scenario's bound.
double family_margin(const NoisyFamily& family, Scenario scenario,
                     CriterionId criterion, double p);

/// Bisects the white-noise weight p at which the criterion starts to fire.
/// A 64-point scan of [0, 1] must show exactly one switch from "not detected"
/// to "detected"; otherwise throws Error(kThreshold).
ThresholdResult threshold(const NoisyFamily& family, Scenario scenario,
                          CriterionId criterion, double tol = 1e-6);

/// The six critical-noise cells: noisy GHZ (A->BC steering via GHZ_ENT,
/// A->BC genuine via GHZ_GME, AB->C steering via GHZ_ENT) followed by noisy
/// W (A->BC steering via PPT_ENT, A->BC genuine via PROP1_GME, AB->C steering
/// via PPT_ENT).
std::vector<ThresholdResult> reproduce_tables(double tol = 1e-6);

struct SweepPoint {
  double a = 0.0;
  CriterionVerdict genuine_a_to_bc;   // GHZ_GME on tau1
  CriterionVerdict steering_ab_to_c;  // GHZ_ENT on tau2
};

/// Pure ghz(a) for every a in the grid, each criterion at its certified bound.
std::vector<SweepPoint> pure_ghz_sweep(const std::vector<double>& grid);

nlohmann::json to_json(const CriterionVerdict& v);
nlohmann::json to_json(const SteeringReport& r);
nlohmann::json to_json(const ThresholdResult& t);

}  // namespace tristeer

#include "tristeer/steering.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tristeer/error.hpp"

namespace tristeer {

namespace {

constexpr Scenario kAllScenarios[] = {
    {Direction::kAToBC, Strength::kSteering},
    {Direction::kAToBC, Strength::kGenuine},
    {Direction::kABToC, Strength::kSteering},
    {Direction::kABToC, Strength::kGenuine},
};

bool is_unsupported(Scenario s) {
  return s.direction == Direction::kABToC && s.strength == Strength::kGenuine;
}

constexpr const char* kNoCertifiedCriterion =
    "undetermined: no certified criterion for ab-to-c:genuine";

constexpr const char* kTau2DirectionNote =
    "tau2 entanglement certifies steering from untrusted Alice and Bob to "
    "Charlie (ab-to-c); a-to-bc:steering follows by implication";

}  // namespace

std::string to_string(Conclusion c) {
  return c == Conclusion::kDetected ? "detected" : "undetermined";
}

Conclusion SteeringReport::conclusion(Scenario s) const {
  const auto it = conclusions.find(s);
  return it == conclusions.end() ? Conclusion::kUndetermined : it->second;
}

std::vector<CriterionId> criteria_for(Scenario s) {
  if (is_unsupported(s)) return {};
  if (s.strength == Strength::kGenuine) {
    return {CriterionId::kGhzGme, CriterionId::kProp1Gme, CriterionId::kWGmeRef};
  }
  return {CriterionId::kGhzEnt, CriterionId::kPptEnt};
}

bool criterion_applies(Scenario s, CriterionId id) {
  if (is_unsupported(s)) return false;
  // Genuine entanglement implies entanglement, so GME criteria serve both.
  return s.strength == Strength::kSteering || certifies_genuine(id);
}

void close_implications(std::map<Scenario, Conclusion>& conclusions) {
  const Scenario a_st{Direction::kAToBC, Strength::kSteering};
  const Scenario a_gen{Direction::kAToBC, Strength::kGenuine};
  const Scenario ab_st{Direction::kABToC, Strength::kSteering};
  const Scenario ab_gen{Direction::kABToC, Strength::kGenuine};
  const std::pair<Scenario, Scenario> edges[] = {
      {a_gen, a_st}, {ab_gen, ab_st}, {ab_gen, a_gen}, {ab_st, a_st}};
  for (const auto s : kAllScenarios) conclusions.try_emplace(s, Conclusion::kUndetermined);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [from, to] : edges) {
      if (conclusions[from] == Conclusion::kDetected &&
          conclusions[to] != Conclusion::kDetected) {
        conclusions[to] = Conclusion::kDetected;
        changed = true;
      }
    }
  }
}

SteeringReport detect(const ThreeQubitState& rho, Scenario scenario,
                      std::optional<double> mu) {
  return detect(rho, scenario, mu, criteria_for(scenario));
}

SteeringReport detect(const ThreeQubitState& rho, Scenario scenario,
                      std::optional<double> mu,
                      const std::vector<CriterionId>& criteria) {
  const TauKind kind = tau_kind_for(scenario.direction);
  const double bound = mu_bound(kind, scenario.strength);

  SteeringReport report;
  report.label = rho.label();
  report.scenario = scenario;
  report.mu = mu.value_or(bound);
  report.certified = report.mu <= bound;
  close_implications(report.conclusions);

  if (is_unsupported(scenario)) {
    report.certified = false;
    report.notes.emplace_back(kNoCertifiedCriterion);
    return report;
  }
  for (const auto id : criteria) {
    if (!criterion_applies(scenario, id)) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("{} does not certify {}", to_string(id),
                              to_string(scenario)));
    }
  }

  const TauState tau = build_tau(kind, rho, report.mu);
  bool fired = false;
  for (const auto id : criteria) {
    report.criteria.push_back(evaluate(id, tau.matrix));
    fired = fired || report.criteria.back().detected;
  }

  if (!report.certified) {
    report.notes.push_back(fmt::format(
        "mu = {:.6g} exceeds the certified bound {:.6g}; no steering conclusion drawn",
        report.mu, bound));
    return report;
  }
  if (fired) {
    report.conclusions[scenario] = Conclusion::kDetected;
    close_implications(report.conclusions);
  }
  if (scenario.direction == Direction::kABToC) {
    report.notes.emplace_back(kTau2DirectionNote);
  }
  return report;
}

double family_margin(const NoisyFamily& family, Scenario scenario,
                     CriterionId criterion, double p) {
  const TauKind kind = tau_kind_for(scenario.direction);
  const double mu = mu_bound(kind, scenario.strength);
  return evaluate(criterion, build_tau(kind, family.at(p), mu).matrix).margin;
}

ThresholdResult threshold(const NoisyFamily& family, Scenario scenario,
                          CriterionId criterion, double tol) {
  if (!(tol >= 1e-8)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("tolerance {} below 1e-8", tol));
  }
  if (!criterion_applies(scenario, criterion)) {
    throw Error(ErrorKind::kThreshold,
                fmt::format("{} does not certify {}", to_string(criterion),
                            to_string(scenario)));
  }
  const auto margin = [&](double p) {
    return family_margin(family, scenario, criterion, p);
  };

  std::vector<double> ps(kPrescanPoints);
  std::vector<bool> fired(kPrescanPoints);
  for (int k = 0; k < kPrescanPoints; ++k) {
    ps[k] = static_cast<double>(k) / (kPrescanPoints - 1);
    fired[k] = margin(ps[k]) > kCriterionTol;
  }
  std::vector<int> switches;
  for (int k = 0; k + 1 < kPrescanPoints; ++k) {
    if (fired[k] != fired[k + 1]) switches.push_back(k);
  }
  const std::string what =
      fmt::format("{} on {} for family {}", to_string(criterion),
                  to_string(scenario), family.label);
  if (switches.size() > 1 || (switches.size() == 1 && fired.front())) {
    std::string intervals;
    for (int k : switches) {
      intervals += fmt::format(" [{:.6f}, {:.6f}]", ps[k], ps[k + 1]);
    }
    throw Error(ErrorKind::kThreshold,
                fmt::format("non-monotone margin for {}; sign changes in{}", what,
                            intervals));
  }
  if (fired.front()) {
    throw Error(ErrorKind::kThreshold, fmt::format("criterion always fires: {}", what));
  }
  if (switches.empty()) {
    throw Error(ErrorKind::kThreshold, fmt::format("criterion never fires: {}", what));
  }

  double lo = ps[switches.front()];
  double hi = ps[switches.front() + 1];
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) > kCriterionTol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  ThresholdResult r;
  r.family = family.label;
  r.scenario = scenario;
  r.criterion = criterion;
  r.mu = mu_bound(tau_kind_for(scenario.direction), scenario.strength);
  r.critical_p = 0.5 * (lo + hi);
  r.tolerance = tol;
  r.p_low = lo;
  r.p_high = hi;
  r.margin_low = margin(lo);
  r.margin_high = margin(hi);
  return r;
}

std::vector<ThresholdResult> reproduce_tables(double tol) {
  const Scenario a_st{Direction::kAToBC, Strength::kSteering};
  const Scenario a_gen{Direction::kAToBC, Strength::kGenuine};
  const Scenario ab_st{Direction::kABToC, Strength::kSteering};
  const NoisyFamily g = noisy_ghz();
  const NoisyFamily w = noisy_w();
  return {
      threshold(g, a_st, CriterionId::kGhzEnt, tol),
      threshold(g, a_gen, CriterionId::kGhzGme, tol),
      threshold(g, ab_st, CriterionId::kGhzEnt, tol),
      threshold(w, a_st, CriterionId::kPptEnt, tol),
      threshold(w, a_gen, CriterionId::kProp1Gme, tol),
      threshold(w, ab_st, CriterionId::kPptEnt, tol),
  };
}

std::vector<SweepPoint> pure_ghz_sweep(const std::vector<double>& grid) {
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (const double a : grid) {
    const PureState psi = ghz(a);
    const ThreeQubitState rho(psi.projector(), psi.label());
    SweepPoint pt;
    pt.a = a;
    pt.genuine_a_to_bc =
        ghz_gme(build_tau1(rho, mu_bound(TauKind::kTau1, Strength::kGenuine)).matrix);
    pt.steering_ab_to_c =
        ghz_ent(build_tau2(rho, mu_bound(TauKind::kTau2, Strength::kSteering)).matrix);
    out.push_back(std::move(pt));
  }
  return out;
}

nlohmann::json to_json(const CriterionVerdict& v) {
  return {{"id", to_string(v.id)},   {"lhs", v.lhs},
          {"rhs", v.rhs},            {"margin", v.margin},
          {"detected", v.detected},  {"detail", v.detail}};
}

nlohmann::json to_json(const SteeringReport& r) {
  nlohmann::json criteria = nlohmann::json::array();
  for (const auto& v : r.criteria) criteria.push_back(to_json(v));
  nlohmann::json conclusions = nlohmann::json::object();
  for (const auto& [s, c] : r.conclusions) conclusions[to_string(s)] = to_string(c);
  return {{"label", r.label},
          {"scenario", to_string(r.scenario)},
          {"mu", r.mu},
          {"certified", r.certified},
          {"criteria", std::move(criteria)},
          {"conclusions", std::move(conclusions)},
          {"notes", r.notes}};
}

nlohmann::json to_json(const ThresholdResult& t) {
  return {{"family", t.family},
          {"scenario", to_string(t.scenario)},
          {"criterion", to_string(t.criterion)},
          {"mu", t.mu},
          {"p_critical", t.critical_p},
          {"tolerance", t.tolerance},
          {"p_low", t.p_low},
          {"p_high", t.p_high},
          {"margin_low", t.margin_low},
          {"margin_high", t.margin_high}};
}

}  // namespace tristeer

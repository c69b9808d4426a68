#include "tristeer/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "tristeer/error.hpp"
#include "tristeer/steering.hpp"

namespace tristeer::cli {
namespace {

constexpr Scenario kScenarios[] = {
    {Direction::kAToBC, Strength::kSteering},
    {Direction::kAToBC, Strength::kGenuine},
    {Direction::kABToC, Strength::kSteering},
    {Direction::kABToC, Strength::kGenuine},
};

struct StateFlags {
  std::string path;
  std::string builtin;
  std::optional<double> a;
  double noise = 0.0;
};

void add_state_flags(CLI::App& app, StateFlags& f) {
  auto* state = app.add_option("--state", f.path, "JSON state file");
  auto* builtin = app.add_option("--builtin", f.builtin, "built-in pure state")
                      ->check(CLI::IsMember({"ghz", "w"}));
  state->excludes(builtin);
  app.add_option("--a", f.a, "ghz amplitude of |000>")->check(CLI::Range(0.0, 1.0));
  app.add_option("--noise", f.noise, "white-noise weight mixed into the built-in state")
      ->check(CLI::Range(0.0, 1.0));
}

PureState builtin_pure(const std::string& name, std::optional<double> a) {
  if (name == "w") {
    if (a) throw Error(ErrorKind::kInvalidArgument, "--a applies only to --builtin ghz");
    return w_state();
  }
  return ghz(a.value_or(1.0 / std::sqrt(2.0)));
}

ThreeQubitState resolve_state(const StateFlags& f) {
  if (!f.path.empty()) return load_state(f.path);
  if (f.builtin.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "one of --state or --builtin is required");
  }
  const PureState pure = builtin_pure(f.builtin, f.a);
  const ThreeQubitState rho = noisy(pure, 1.0 - f.noise);
  if (f.noise == 0.0) return rho;
  return ThreeQubitState(rho.matrix(), fmt::format("{}+noise={}", pure.label(), f.noise));
}

std::optional<double> parse_mu(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double mu = 0.0;
  std::istringstream in(text);
  in >> mu;
  if (in.fail() || !in.eof()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("--mu expects a number or 'auto', got '{}'", text));
  }
  return mu;
}

std::vector<Scenario> parse_scenarios(const std::string& text) {
  if (text == "all") return {std::begin(kScenarios), std::end(kScenarios)};
  return {parse_scenario(text)};
}

std::vector<CriterionId> criteria_for_flag(Scenario s, const std::string& text) {
  if (text == "all") return criteria_for(s);
  return {parse_criterion(text)};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- analyze ---------------------------------------------------------------

void print_report_text(const SteeringReport& r, std::ostream& out) {
  out << fmt::format("state {}\n", r.label);
  out << fmt::format("scenario {}  mu {:.6f}  certified {}\n", to_string(r.scenario), r.mu,
                     yes_no(r.certified));
  for (const auto& v : r.criteria) {
    out << fmt::format("  {:<10} lhs {:.9f}  rhs {:.9f}  margin {:+.9f}  {}\n",
                       to_string(v.id), v.lhs, v.rhs, v.margin,
                       v.detected ? "detected" : "not detected");
    if (!v.detail.empty()) out << fmt::format("             {}\n", v.detail);
  }
  out << fmt::format("result {}\n", to_string(r.conclusion(r.scenario)));
  for (const auto& [s, c] : r.conclusions) {
    out << fmt::format("  {:<17} {}\n", to_string(s), to_string(c));
  }
  for (const auto& n : r.notes) out << fmt::format("note {}\n", n);
}

int analyze(const StateFlags& sf, const std::string& mu_text, const std::string& scenario,
            const std::string& criterion, const std::string& format, std::ostream& out) {
  const ThreeQubitState rho = resolve_state(sf);
  const std::optional<double> mu = parse_mu(mu_text);
  std::vector<SteeringReport> reports;
  for (const Scenario s : parse_scenarios(scenario)) {
    reports.push_back(detect(rho, s, mu, criteria_for_flag(s, criterion)));
  }

  if (format == "json") {
    if (reports.size() == 1) {
      out << to_json(reports.front()).dump(2) << "\n";
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      out << arr.dump(2) << "\n";
    }
  } else if (format == "csv") {
    out << "label,scenario,mu,certified,criterion,lhs,rhs,margin,detected,conclusion\n";
    for (const auto& r : reports) {
      const std::string conclusion = to_string(r.conclusion(r.scenario));
      if (r.criteria.empty()) {
        out << fmt::format("{},{},{:.9f},{},,,,,,{}\n", r.label, to_string(r.scenario), r.mu,
                           r.certified, conclusion);
      }
      for (const auto& v : r.criteria) {
        out << fmt::format("{},{},{:.9f},{},{},{:.12f},{:.12f},{:.12f},{},{}\n", r.label,
                           to_string(r.scenario), r.mu, r.certified, to_string(v.id), v.lhs,
                           v.rhs, v.margin, v.detected, conclusion);
      }
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) out << "\n";
      print_report_text(reports[i], out);
    }
  }
  return kExitOk;
}

// --- threshold -------------------------------------------------------------

NoisyFamily family_for(const StateFlags& sf) {
  if (!sf.path.empty()) {
    const ThreeQubitState rho = load_state(sf.path);
    // Only rank-one files define a white-noise family.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
    const auto& ev = es.eigenvalues();
    if (std::abs(ev(7) - 1.0) > qmat::kPsdTol) {
      throw Error(ErrorKind::kValidation,
                  "threshold needs a pure state: the file's largest eigenvalue is not 1");
    }
    const ComplexVector v = es.eigenvectors().col(7);
    const std::string label = rho.label().empty() ? "file" : rho.label();
    return NoisyFamily{PureState(v, label), label};
  }
  if (sf.builtin.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "one of --state or --builtin is required");
  }
  if (sf.builtin == "w") return noisy_w();
  if (!sf.a) return noisy_ghz();
  const PureState pure = ghz(*sf.a);
  return NoisyFamily{pure, pure.label()};
}

int threshold_cmd(const StateFlags& sf, const std::string& scenario,
                  const std::string& criterion, double tol, const std::string& format,
                  std::ostream& out) {
  const NoisyFamily family = family_for(sf);
  std::vector<ThresholdResult> results;
  for (const Scenario s : parse_scenarios(scenario)) {
    const auto ids = criteria_for_flag(s, criterion);
    if (ids.empty()) {
      throw Error(ErrorKind::kThreshold,
                  fmt::format("no criterion certifies {}", to_string(s)));
    }
    for (const auto id : ids) results.push_back(threshold(family, s, id, tol));
  }

  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    out << (results.size() == 1 ? arr.front() : arr).dump(2) << "\n";
  } else if (format == "csv") {
    out << "family,scenario,criterion,p_critical,tolerance\n";
    for (const auto& r : results) {
      out << fmt::format("{},{},{},{:.9f},{:g}\n", r.family, to_string(r.scenario),
                         to_string(r.criterion), r.critical_p, r.tolerance);
    }
  } else {
    for (const auto& r : results) {
      out << fmt::format("{} {} {}: p_critical {:.6f} (mu {:.6f}, bracket [{:.9f}, {:.9f}])\n",
                         r.family, to_string(r.scenario), to_string(r.criterion),
                         r.critical_p, r.mu, r.p_low, r.p_high);
    }
  }
  return kExitOk;
}

// --- tables ----------------------------------------------------------------

int tables(double tol, const std::string& format, std::ostream& out) {
  const auto cells = reproduce_tables(tol);
  const std::string families[] = {"ghz", "w"};
  if (format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (int f = 0; f < 2; ++f) {
      nlohmann::json row = {{"family", families[f]}};
      for (int c = 0; c < 3; ++c) {
        const auto& r = cells[3 * f + c];
        row[to_string(r.scenario)] = to_json(r);
      }
      doc.push_back(std::move(row));
    }
    out << doc.dump(2) << "\n";
  } else if (format == "text") {
    out << fmt::format("{:<6}{:>18}{:>18}{:>18}\n", "family", "a-to-bc:steering",
                       "a-to-bc:genuine", "ab-to-c:steering");
    for (int f = 0; f < 2; ++f) {
      out << fmt::format("{:<6}", families[f]);
      for (int c = 0; c < 3; ++c) {
        const auto& r = cells[3 * f + c];
        out << fmt::format("{:>18}",
                           fmt::format("{:.3f} {}", r.critical_p, to_string(r.criterion)));
      }
      out << "\n";
    }
  } else {
    out << "family,a_to_bc_steering,a_to_bc_genuine,ab_to_c_steering\n";
    for (int f = 0; f < 2; ++f) {
      out << fmt::format("{},{:.3f},{:.3f},{:.3f}\n", families[f], cells[3 * f].critical_p,
                         cells[3 * f + 1].critical_p, cells[3 * f + 2].critical_p);
    }
  }
  return kExitOk;
}

// --- validate --------------------------------------------------------------

int validate_cmd(const StateFlags& sf, const std::string& format, std::ostream& out) {
  const ThreeQubitState rho = resolve_state(sf);
  const double min_ev = qmat::min_eigenvalue(rho.matrix());
  const double trace = rho.matrix().trace().real();
  if (format == "json") {
    out << nlohmann::json{{"label", rho.label()},
                          {"valid", true},
                          {"trace", trace},
                          {"min_eigenvalue", min_ev}}
               .dump(2)
        << "\n";
  } else if (format == "csv") {
    out << "label,valid,trace,min_eigenvalue\n";
    out << fmt::format("{},true,{:.12f},{:.12e}\n", rho.label(), trace, min_ev);
  } else {
    out << fmt::format("valid density matrix {} (trace {:.12f}, min eigenvalue {:.3e})\n",
                       rho.label(), trace, min_ev);
  }
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return kExitUsage;
    case ErrorKind::kThreshold:
      return kExitThreshold;
    case ErrorKind::kDimension:
    case ErrorKind::kValidation:
    case ErrorKind::kParse:
      return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tripartite steering detection for three-qubit states", "tristeer"};
  app.require_subcommand(1);

  StateFlags sf;
  std::string mu = "auto";
  std::string scenario = "all";
  std::string criterion = "all";
  double tol = 1e-6;
  std::string format;
  const auto formats = CLI::IsMember({"text", "json", "csv"});

  auto* analyze_cmd = app.add_subcommand("analyze", "run the criteria on a mapped state");
  add_state_flags(*analyze_cmd, sf);
  analyze_cmd->add_option("--mu", mu, "mixing weight, or auto for the certified bound");
  analyze_cmd->add_option("--scenario", scenario, "direction:strength, or all");
  analyze_cmd->add_option("--criterion", criterion, "criterion id, or all");
  analyze_cmd->add_option("--format", format)->check(formats);

  auto* threshold_sub =
      app.add_subcommand("threshold", "critical white-noise weight of a family");
  add_state_flags(*threshold_sub, sf);
  threshold_sub->add_option("--scenario", scenario, "direction:strength, or all");
  threshold_sub->add_option("--criterion", criterion, "criterion id, or all");
  threshold_sub->add_option("--tol", tol, "bisection tolerance on p");
  threshold_sub->add_option("--format", format)->check(formats);

  auto* tables_sub = app.add_subcommand("tables", "critical noise for noisy GHZ and W");
  tables_sub->add_option("--tol", tol, "bisection tolerance on p");
  tables_sub->add_option("--format", format)->check(formats);

  auto* validate_sub = app.add_subcommand("validate", "check a state file");
  add_state_flags(*validate_sub, sf);
  validate_sub->add_option("--format", format)->check(formats);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) {
      return analyze(sf, mu, scenario, criterion, format.empty() ? "text" : format, out);
    }
    if (threshold_sub->parsed()) {
      return threshold_cmd(sf, scenario, criterion, tol, format.empty() ? "text" : format,
                           out);
    }
    if (tables_sub->parsed()) return tables(tol, format.empty() ? "csv" : format, out);
    return validate_cmd(sf, format.empty() ? "text" : format, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    err << (code == kExitUsage ? "usage error: " : code == kExitThreshold ? "threshold error: "
                                                                          : "invalid state: ")
        << e.what() << "\n";
    return code;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace tristeer::cli

#include "bosesteer/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <vector>

#include "bosesteer/inequalities.hpp"
#include "bosesteer/measurement.hpp"
#include "bosesteer/search.hpp"
#include "bosesteer/states.hpp"

namespace bosesteer::cli {

namespace {

using nlohmann::ordered_json;

class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string buf(s);
  std::size_t used = 0;
  try {
    double v = std::stod(buf, &used);
    if (used != buf.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

double round12(double x) { return std::stod(format_number(x)); }

ordered_json angles_json(const AngleQuad& q) {
  return {{"phi1", round12(q.phi1)}, {"phi2", round12(q.phi2)}, {"theta1", round12(q.theta1)},
          {"theta2", round12(q.theta2)}};
}

struct StateSpec {
  std::string family = "bec";
  unsigned n1 = 1, n2 = 1;
  std::optional<unsigned> n;
  unsigned m = 0;
};

struct ReflectivitySpec {
  double alpha = 0.70710678118654752440;
  std::optional<double> alpha_alice, alpha_bob;
};

struct AngleSpec {
  std::string phi1 = "0", phi2 = "0", theta1 = "0", theta2 = "0";
};

struct RunConfig {
  StateSpec state;
  ReflectivitySpec reflectivity;
  AngleSpec angles;
  std::string objective = "steering";
  std::string axis = "theta2";
  std::string noise = "outcome-space";
  std::string family = "all";
  std::string view = "fock";
  std::string output;
  unsigned points = 720;
  unsigned restarts = 64;
  unsigned samples = 100;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  unsigned n_total = 2;
  std::string phi = "0";
  std::string theta = "0";
};

double angle_or_throw(const std::string& text, const char* name) {
  auto v = parse_angle(text);
  if (!v) throw ArgumentError(std::string("invalid angle for --") + name + ": '" + text + "'");
  return *v;
}

AngleQuad resolve_angles(const AngleSpec& a) {
  return {angle_or_throw(a.phi1, "phi1"), angle_or_throw(a.phi2, "phi2"), angle_or_throw(a.theta1, "theta1"),
          angle_or_throw(a.theta2, "theta2")};
}

CompositeState resolve_state(const StateSpec& s) {
  try {
    if (s.family == "bec") {
      const unsigned n1 = s.n.value_or(s.n1), n2 = s.n.value_or(s.n2);
      return bec_pair(n1, n2);
    }
    if (s.family == "noon") {
      if (!s.n || *s.n == 0) throw ArgumentError("noon state requires --n >= 1");
      return noon_pair(*s.n, s.m);
    }
  } catch (const std::invalid_argument& e) {
    throw ArgumentError(std::string("invalid state: ") + e.what());
  }
  throw ArgumentError("unknown state family '" + s.family + "' (expected bec or noon)");
}

Reflectivity checked_reflectivity(double alpha, const char* name) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError(std::string("--") + name + " must lie in (0, 1)");
  return Reflectivity::from_alpha(alpha);
}

PartyReflectivities resolve_reflectivities(const ReflectivitySpec& r) {
  return {checked_reflectivity(r.alpha_alice.value_or(r.alpha), "alpha-alice"),
          checked_reflectivity(r.alpha_bob.value_or(r.alpha), "alpha-bob")};
}

NoiseModel resolve_noise(const std::string& name) {
  if (name == "outcome-space") return NoiseModel::outcome_space;
  if (name == "sector") return NoiseModel::fixed_sector;
  throw ArgumentError("unknown noise model '" + name + "' (expected outcome-space or sector)");
}

ordered_json state_json(const StateSpec& s, const CompositeState& st) {
  ordered_json j{{"family", s.family}, {"n1", st.n1}, {"n2", st.n2}};
  if (s.family == "noon") j["m"] = s.m;
  return j;
}

ordered_json reflectivity_json(const PartyReflectivities& r) {
  return {{"alice", round12(r.alice.alpha)}, {"bob", round12(r.bob.alpha)}};
}

std::string format_amplitude(Complex c) {
  if (std::abs(c.imag()) < 1e-14) return format_number(c.real());
  std::ostringstream os;
  os << "(" << format_number(c.real()) << (c.imag() < 0 ? "-" : "+") << format_number(std::abs(c.imag())) << "i)";
  return os.str();
}

void write_basis(const RunConfig& cfg, std::ostream& os) {
  const Reflectivity r = checked_reflectivity(cfg.reflectivity.alpha, "alpha");
  const double phi = angle_or_throw(cfg.phi, "phi");
  const bool monomial = cfg.view == "monomial";
  if (!monomial && cfg.view != "fock") throw ArgumentError("--view must be fock or monomial");

  os << "# effective measurement basis on modes (a, A); n_total=" << cfg.n_total
     << " alpha=" << format_number(r.alpha) << " beta=" << format_number(r.beta) << " phi=" << format_number(phi)
     << " view=" << cfg.view << "\n";
  if (monomial) os << "# coefficients of (a†)^k (A†)^j |0⟩, written |k j⟩\n";
  os << "outcome\tepsilon\tvector\n";
  for (const auto& el : effective_basis(cfg.n_total, BeamSplitterSetting(r, phi), {"a", "A"})) {
    const unsigned total = el.n + el.m;
    const auto amps = monomial ? std::map<Exponents, Complex>(el.vector.terms().begin(), el.vector.terms().end())
                               : fock_amplitudes(el.vector);
    os << "|" << el.n << " " << el.m << "⟩\t" << (el.epsilon > 0 ? "+1" : "-1") << "\t";
    bool first = true;
    for (unsigned k = total + 1; k-- > 0;) {
      auto it = amps.find(Exponents{k, total - k});
      if (it == amps.end() || std::abs(it->second) < 1e-14) continue;
      Complex c = it->second;
      std::string sign = first ? "" : " + ";
      if (std::abs(c.imag()) < 1e-14 && c.real() < 0) {
        sign = first ? "-" : " - ";
        c = -c;
      }
      os << sign << format_amplitude(c) << "|" << k << " " << total - k << "⟩";
      first = false;
    }
    os << "\n";
  }
}

int dispatch(const std::string& command, RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (command == "basis") {
    write_basis(cfg, os);
    return kOk;
  }
  if (command == "trace") {
    const auto refl = resolve_reflectivities(cfg.reflectivity);
    const double phi = angle_or_throw(cfg.phi, "phi"), theta = angle_or_throw(cfg.theta, "theta");
    const NoiseModel model = resolve_noise(cfg.noise);
    const unsigned n1 = cfg.state.n.value_or(cfg.state.n1), n2 = cfg.state.n.value_or(cfg.state.n2);
    const double tr = sector_trace_product(n1, n2, BeamSplitterSetting(refl.alice, phi),
                                           BeamSplitterSetting(refl.bob, theta), model);
    ordered_json j{{"command", "trace"}, {"n1", n1}, {"n2", n2}, {"noise", cfg.noise},
                   {"phi", round12(phi)}, {"theta", round12(theta)}, {"reflectivity", reflectivity_json(refl)},
                   {"trace", round12(tr)}, {"local_trace", local_observable_trace(n1 + n2)}};
    os << j.dump(2) << "\n";
    return kOk;
  }

  const CompositeState state = resolve_state(cfg.state);
  const PartyReflectivities refl = resolve_reflectivities(cfg.reflectivity);

  if (command == "verify") {
    std::vector<ClosedFormFamily> families;
    if (cfg.family == "all") {
      families = {ClosedFormFamily::steer_bec1, ClosedFormFamily::bell_bec1, ClosedFormFamily::steer_bec2,
                  ClosedFormFamily::bell_bec2, ClosedFormFamily::steer_noon, ClosedFormFamily::bell_noon};
    } else if (auto f = parse_family(cfg.family)) {
      families = {*f};
    } else {
      throw ArgumentError("unknown family '" + cfg.family + "'");
    }
    ordered_json results = ordered_json::array();
    for (auto family : families) {
      const std::string_view name = to_string(family);
      const CompositeState fam_state = name.ends_with("bec1") ? bec_pair(1, 1)
                                       : name.ends_with("bec2") ? bec_pair(2, 2)
                                                                : noon_pair(2, 0);
      const bool steering = name.starts_with("steer");
      const InequalityEvaluator ev(fam_state, PartyReflectivities{});
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> angle(0.0, kTwoPi);
      double max_dev = 0.0;
      unsigned typo_errors = 0;
      for (unsigned i = 0; i < cfg.samples; ++i) {
        const AngleQuad q{angle(rng), angle(rng), angle(rng), angle(rng)};
        const double engine = steering ? ev.steering(q) : ev.bell(q);
        try {
          max_dev = std::max(max_dev, std::abs(engine - closed_form(family, q)));
        } catch (const SuspectTypoError&) {
          ++typo_errors;
        }
      }
      ordered_json j{{"family", name}, {"samples", cfg.samples}, {"seed", cfg.seed},
                     {"max_abs_deviation", round12(max_dev)}};
      if (typo_errors > 0) j["negative_radicand_samples"] = typo_errors;
      results.push_back(j);
    }
    os << (results.size() == 1 ? results.front() : ordered_json{{"command", "verify"}, {"results", results}}).dump(2)
       << "\n";
    return kOk;
  }

  const InequalityEvaluator evaluator(state, refl);

  if (command == "optimize") {
    auto objective = parse_objective(cfg.objective);
    if (!objective) throw ArgumentError("unknown objective '" + cfg.objective + "'");
    if (cfg.restarts == 0) throw ArgumentError("--restarts must be >= 1");
    OptimizeOptions opts;
    opts.restarts = cfg.restarts;
    opts.seed = cfg.seed;
    opts.jobs = cfg.jobs;
    opts.reflectivities = refl;
    const auto res = optimize(*objective, evaluator, opts);
    ordered_json j{{"command", "optimize"},
                   {"objective", to_string(*objective)},
                   {"state", state_json(cfg.state, state)},
                   {"reflectivity", reflectivity_json(refl)},
                   {"max_value", round12(res.max_value)},
                   {"angles", angles_json(res.argmax)},
                   {"seed", res.seed},
                   {"restarts", res.restarts_used},
                   {"evaluations", res.evaluations}};
    os << j.dump(2) << "\n";
    return kOk;
  }

  if (command == "evaluate") {
    const AngleQuad q = resolve_angles(cfg.angles);
    const auto e = evaluator.correlations(q);
    ordered_json j{{"command", "evaluate"},
                   {"state", state_json(cfg.state, state)},
                   {"reflectivity", reflectivity_json(refl)},
                   {"angles", angles_json(q)},
                   {"correlations", {{"e11", round12(e.e11)}, {"e12", round12(e.e12)}, {"e21", round12(e.e21)},
                                     {"e22", round12(e.e22)}}},
                   {"bell", round12(bell_from(e))},
                   {"steering", round12(steering_from(e))}};
    os << j.dump(2) << "\n";
    return kOk;
  }

  if (command == "scan") {
    std::vector<Objective> objectives;
    std::vector<std::string> names;
    std::stringstream ss(cfg.objective);
    for (std::string name; std::getline(ss, name, ',');) {
      auto o = parse_objective(trim(name));
      if (!o) throw ArgumentError("unknown objective '" + name + "'");
      objectives.push_back(*o);
      names.emplace_back(trim(name));
    }
    if (objectives.empty()) throw ArgumentError("--objective is empty");
    auto axis = parse_axis(cfg.axis);
    if (!axis) throw ArgumentError("unknown axis '" + cfg.axis + "'");
    if (cfg.points < 8) throw ArgumentError("--points must be >= 8");
    const auto series = scan_1d(objectives, evaluator, resolve_angles(cfg.angles), *axis, cfg.points);
    os << "param";
    for (const auto& n : names) os << "," << n;
    os << "\n";
    for (std::size_t i = 0; i < cfg.points; ++i) {
      os << format_number(series.front().samples[i].first);
      for (const auto& s : series) os << "," << format_number(s.samples[i].second);
      os << "\n";
    }
    return kOk;
  }

  if (command == "visibility") {
    auto objective = parse_objective(cfg.objective);
    if (!objective) throw ArgumentError("unknown objective '" + cfg.objective + "'");
    const AngleQuad q = resolve_angles(cfg.angles);
    const auto res = visibility_threshold(state, *objective, q, refl, resolve_noise(cfg.noise));
    ordered_json j{{"command", "visibility"},
                   {"objective", to_string(*objective)},
                   {"state", state_json(cfg.state, state)},
                   {"reflectivity", reflectivity_json(refl)},
                   {"noise", cfg.noise},
                   {"angles", angles_json(q)},
                   {"value_at_one", round12(res.value_at_one)},
                   {"threshold", round12(res.threshold)},
                   {"traceless", res.traceless},
                   {"shortcut_threshold", res.shortcut ? ordered_json(round12(*res.shortcut)) : ordered_json()}};
    os << j.dump(2) << "\n";
    return kOk;
  }

  err << "unknown command '" << command << "'\n";
  return kArgumentError;
}

void add_state_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--state", cfg.state.family, "State family: bec or noon");
  sub->add_option("--n1", cfg.state.n1, "Particles in system 1 (bec)");
  sub->add_option("--n2", cfg.state.n2, "Particles in system 2 (bec)");
  sub->add_option("--n", cfg.state.n, "Particles per system (noon, or both bec systems)");
  sub->add_option("--m", cfg.state.m, "N00N index m");
}

void add_reflectivity_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--alpha", cfg.reflectivity.alpha, "Shared beam-splitter amplitude alpha in (0, 1)");
  sub->add_option("--alpha-alice", cfg.reflectivity.alpha_alice, "Alice's alpha (overrides --alpha)");
  sub->add_option("--alpha-bob", cfg.reflectivity.alpha_bob, "Bob's alpha (overrides --alpha)");
}

void add_angle_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--phi1", cfg.angles.phi1, "Alice angle 1 (radians or pi fraction)");
  sub->add_option("--phi2", cfg.angles.phi2, "Alice angle 2");
  sub->add_option("--theta1", cfg.angles.theta1, "Bob angle 1");
  sub->add_option("--theta2", cfg.angles.theta2, "Bob angle 2");
}

}  // namespace

std::optional<double> parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return parse_decimal(s);

  std::string_view coeff = trim(s.substr(0, pi_pos));
  std::string_view rest = trim(s.substr(pi_pos + 2));
  double sign = 1.0;
  if (!coeff.empty() && (coeff.front() == '-' || coeff.front() == '+')) {
    sign = coeff.front() == '-' ? -1.0 : 1.0;
    coeff = trim(coeff.substr(1));
  }
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  double factor = 1.0;
  if (!coeff.empty()) {
    auto c = parse_decimal(coeff);
    if (!c || coeff.front() == '-' || coeff.front() == '+') return std::nullopt;
    factor = *c;
  }
  double denom = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') return std::nullopt;
    auto d = parse_decimal(trim(rest.substr(1)));
    if (!d || *d == 0.0) return std::nullopt;
    denom = *d;
  }
  return sign * factor * kPi / denom;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Steering and Bell inequality engine for two-copy bosonic states", "bosesteer"};
  app.require_subcommand(1);
  app.add_option("-o,--output", cfg.output, "Output file (default: standard output)");

  auto* opt = app.add_subcommand("optimize", "Maximize an inequality functional over the four angles");
  add_state_options(opt, cfg);
  add_reflectivity_options(opt, cfg);
  opt->add_option("--objective", cfg.objective, "steering or bell (|B|)");
  opt->add_option("--restarts", cfg.restarts, "Number of multistart restarts");
  opt->add_option("--seed", cfg.seed, "Seed for restart placement");
  opt->add_option("--jobs", cfg.jobs, "Worker threads for restarts");

  auto* scan = app.add_subcommand("scan", "Scan objectives along one angle over [0, 2pi)");
  add_state_options(scan, cfg);
  add_reflectivity_options(scan, cfg);
  add_angle_options(scan, cfg);
  scan->add_option("--objective", cfg.objective, "Comma-separated: steering, bell (|B|), bell_signed");
  scan->add_option("--axis", cfg.axis, "Scanned angle: phi1, phi2, theta1, theta2");
  scan->add_option("--points", cfg.points, "Grid points");

  auto* basis = app.add_subcommand("basis", "Print the effective measurement basis of one party");
  basis->add_option("--n-total", cfg.n_total, "Total particle number");
  basis->add_option("--phi", cfg.phi, "Beam-splitter phase");
  basis->add_option("--alpha", cfg.reflectivity.alpha, "Beam-splitter amplitude alpha in (0, 1)");
  basis->add_option("--view", cfg.view, "fock (normalized amplitudes) or monomial (raw coefficients)");

  auto* vis = app.add_subcommand("visibility", "White-noise visibility threshold at fixed angles");
  add_state_options(vis, cfg);
  add_reflectivity_options(vis, cfg);
  add_angle_options(vis, cfg);
  vis->add_option("--objective", cfg.objective, "steering or bell (|B|)");
  vis->add_option("--noise", cfg.noise, "outcome-space or sector");

  auto* verify = app.add_subcommand("verify", "Compare the engine with the published closed forms");
  verify->add_option("--family", cfg.family, "Closed-form family or 'all'");
  verify->add_option("--samples", cfg.samples, "Random angle quadruples per family");
  verify->add_option("--seed", cfg.seed, "Seed for angle sampling");

  auto* trace = app.add_subcommand("trace", "Trace of A (x) B over the white-noise support");
  trace->add_option("--n1", cfg.state.n1, "Particles in system 1");
  trace->add_option("--n2", cfg.state.n2, "Particles in system 2");
  trace->add_option("--phi", cfg.phi, "Alice angle");
  trace->add_option("--theta", cfg.theta, "Bob angle");
  trace->add_option("--noise", cfg.noise, "outcome-space or sector");
  add_reflectivity_options(trace, cfg);

  auto* eval = app.add_subcommand("evaluate", "Correlations and both functionals at one angle quadruple");
  add_state_options(eval, cfg);
  add_reflectivity_options(eval, cfg);
  add_angle_options(eval, cfg);

  std::vector<std::string> storage{"bosesteer"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kArgumentError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::ostringstream buffer;
  int code = kOk;
  try {
    code = dispatch(command, cfg, buffer, err);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kArgumentError;
  } catch (const NoThresholdError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  if (code != kOk) return code;

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      err << "error: cannot write output file '" << cfg.output << "'\n";
      return kArgumentError;
    }
  }
  return kOk;
}

}  // namespace bosesteer::cli

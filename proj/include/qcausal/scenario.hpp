// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// Named scenarios with JSON reports, used by the command-line tool.

#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcausal/agent_model.hpp"
#include "qcausal/grav_timing.hpp"
#include "qcausal/indefinite_order.hpp"
#include "qcausal/process.hpp"
#include "qcausal/random.hpp"

namespace qcausal::cli {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::string scenario;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::optional<std::string> output_path;
};

// Replace every floating-point number by its 12 significant digit form.
inline Json round_numbers(const Json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v))
      return Json(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return Json(std::strtod(buf, nullptr));
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& x : j)
      out.push_back(round_numbers(x));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      out[it.key()] = round_numbers(it.value());
    return out;
  }
  return j;
}

inline Json complex_list(const ComplexVector& v) {
  Json out = Json::array();
  for (const auto& z : v.entries())
    out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

//============================================================================
// Report
//============================================================================

class Report {
 public:
  Report(std::string scenario, std::uint64_t seed, Json inputs)
      : scenario_(std::move(scenario)), seed_(seed), inputs_(std::move(inputs)) {}

  void input(const std::string& key, Json value) { inputs_[key] = std::move(value); }
  void output(const std::string& key, Json value) { outputs_[key] = std::move(value); }

  // |actual - expected| <= tol
  void check_near(const std::string& name, double expected, double actual, double tol) {
    add(name, expected, actual, tol, "abs", std::abs(actual - expected) <= tol);
  }
  // |actual / expected - 1| <= tol
  void check_rel(const std::string& name, double expected, double actual, double tol) {
    add(name, expected, actual, tol, "rel", std::abs(actual / expected - 1) <= tol);
  }
  void check_le(const std::string& name, double bound, double actual, double tol) {
    add(name, bound, actual, tol, "le", actual <= bound + tol);
  }
  void check_ge(const std::string& name, double bound, double actual, double tol) {
    add(name, bound, actual, tol, "ge", actual >= bound - tol);
  }
  void check_lt(const std::string& name, double bound, double actual) {
    add(name, bound, actual, 0.0, "lt", actual < bound);
  }
  void check_gt(const std::string& name, double bound, double actual) {
    add(name, bound, actual, 0.0, "gt", actual > bound);
  }
  void check_range(const std::string& name, double lo, double hi, double actual) {
    add(name, Json::array({lo, hi}), actual, 0.0, "range", actual >= lo && actual <= hi);
  }

  bool pass() const {
    for (const auto& c : checks_)
      if (!c["pass"].get<bool>())
        return false;
    return true;
  }

  Json to_json() const {
    Json j = Json::object();
    j["scenario"] = scenario_;
    j["seed"] = seed_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["checks"] = checks_;
    j["pass"] = pass();
    return round_numbers(j);
  }

 private:
  void add(const std::string& name, Json expected, double actual, double tol,
           const std::string& comparison, bool pass) {
    Json c = Json::object();
    c["name"] = name;
    c["expected"] = std::move(expected);
    c["actual"] = actual;
    c["tolerance"] = tol;
    c["comparison"] = comparison;
    c["pass"] = pass && std::isfinite(actual);
    checks_.push_back(std::move(c));
  }

  std::string scenario_;
  std::uint64_t seed_;
  Json inputs_;
  Json outputs_ = Json::object();
  Json checks_ = Json::array();
};

//============================================================================
// Parameters
//============================================================================

struct ParamSpec {
  std::string key;
  Json default_value;  // null: resolved by the scenario
  std::string help;
};

class Params {
 public:
  explicit Params(Json values) : v_(std::move(values)) {}

  bool has(const std::string& key) const { return v_.contains(key) && !v_[key].is_null(); }

  double number(const std::string& key) const {
    if (!has(key))
      throw ConfigError("parameter '" + key + "' is required");
    const auto& x = v_[key];
    if (!x.is_number())
      throw ConfigError("parameter '" + key + "' must be a number");
    return x.get<double>();
  }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  double positive(const std::string& key) const {
    const double x = number(key);
    if (!(x > 0) || !std::isfinite(x))
      throw ConfigError("parameter '" + key + "' must be positive");
    return x;
  }
  long integer(const std::string& key, long lo, long hi) const {
    const double x = number(key);
    if (x != std::floor(x) || x < lo || x > hi)
      throw ConfigError("parameter '" + key + "' must be an integer in [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
    return static_cast<long>(x);
  }
  std::string text(const std::string& key, const std::vector<std::string>& allowed) const {
    if (!has(key) || !v_[key].is_string())
      throw ConfigError("parameter '" + key + "' must be a string");
    const auto s = v_[key].get<std::string>();
    for (const auto& a : allowed)
      if (s == a)
        return s;
    std::string all;
    for (const auto& a : allowed)
      all += (all.empty() ? "" : ", ") + a;
    throw ConfigError("parameter '" + key + "' must be one of: " + all);
  }
  double tolerance() const {
    const double t = number("tolerance");
    if (!(t >= 0) || !std::isfinite(t))
      throw ConfigError("tolerance must be a nonnegative number");
    return t;
  }
  const Json& values() const { return v_; }

 private:
  Json v_;
};

struct ScenarioSpec {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::function<void(const Params&, Rng&, Report&)> run;
};

namespace detail {

inline ProcessMatrix random_separable_process(Rng& rng) {
  auto chan = [&rng] {
    std::uniform_int_distribution<std::size_t> k(1, 4);
    return choi_of_operation(random_cptp(2, 2, k(rng), rng), ChoiConvention::kTransposed);
  };
  const auto w1 = channel_process(random_density(2, rng), chan());
  const auto w2 = channel_process(random_density(2, rng), chan(), 2, SignalDirection::kAToB);
  return causal_mixture(w1, w2, random_uniform(rng));
}

inline void run_ocb_game(const Params& p, Rng& rng, Report& r) {
  const double tol = p.tolerance();
  const long samples = p.integer("separable_samples", 0, 100000);
  const auto s = ocb_strategy();
  const auto g = guess_probabilities(ocb_process(), s);
  double worst = 0;
  for (long i = 0; i < samples; ++i)
    worst = std::max(worst, success_probability(random_separable_process(rng), s));
  r.output("success_probability", g.success());
  r.output("bob_guesses_a", g.bob_guesses_a);
  r.output("alice_guesses_b", g.alice_guesses_b);
  r.output("causal_bound", 0.75);
  r.output("separable_max_success", worst);
  r.check_near("success_probability", (2 + std::sqrt(2.0)) / 4, g.success(), tol);
  r.check_gt("violates_causal_bound", 0.75, g.success());
  if (samples > 0)
    r.check_le("separable_within_bound", 0.75, worst, tol);
}

inline void run_switch_contract(const Params& p, Rng& rng, Report& r) {
  const double tol = p.tolerance();
  const long pairs = p.integer("pairs", 1, 100000);
  double min_fid = 1, max_dev = 0, vec_norm = 0;
  for (long i = 0; i < pairs; ++i) {
    const SwitchSpec spec{random_state(2, rng)};
    const auto ua = random_unitary(2, rng), ub = random_unitary(2, rng);
    const auto w = switch_process_vector(spec);
    vec_norm = w.norm();
    const auto contracted = contract_switch(w, ua, ub);
    const auto direct = switch_supermap_state(ua, ub, spec);
    min_fid = std::min(min_fid, fidelity(contracted, direct));
    max_dev = std::max(max_dev, (contracted - direct).norm());
  }
  r.output("pairs", pairs);
  r.output("min_fidelity", min_fid);
  r.output("max_state_deviation", max_dev);
  r.output("process_vector_norm", vec_norm);
  r.check_near("contraction_fidelity", 1.0, min_fid, tol);
  r.check_le("contraction_deviation", 0.0, max_dev, tol);
}

inline void run_chsh_temporal(const Params& p, Rng& rng, Report& r) {
  const double tol = p.tolerance();
  const long samples = p.integer("separable_samples", 0, 1000000);
  const double h = 1 / std::sqrt(2.0);
  const auto had = (pauli::x() + pauli::z()) * complex_t(h);
  const ComplexVector up{1, 0};
  const auto settings = temporal_order_chsh_settings();
  const double minus =
      chsh_value(temporal_order_state(had, pauli::z(), pauli::z(), had, up, up, -1), settings);
  const double plus =
      chsh_value(temporal_order_state(had, pauli::z(), pauli::z(), had, up, up, 1), settings);
  double worst = 0;
  for (long i = 0; i < samples; ++i) {
    ComplexMatrix rho(4, 4);
    std::uniform_int_distribution<int> terms(1, 3);
    const int n = terms(rng);
    double wsum = 0;
    for (int k = 0; k < n; ++k) {
      const double wk = random_uniform(rng, 1e-3, 1.0);
      rho += kron(random_density(2, rng, 1), random_density(2, rng, 1)) * complex_t(wk);
      wsum += wk;
    }
    worst = std::max(worst, std::abs(chsh_value(rho * complex_t(1 / wsum), settings)));
  }
  r.output("chsh_minus", minus);
  r.output("chsh_plus", plus);
  r.output("separable_max_abs", worst);
  r.check_near("chsh_minus", 2 * std::sqrt(2.0), minus, tol);
  r.check_near("chsh_plus", -2 * std::sqrt(2.0), plus, tol);
  if (samples > 0)
    r.check_le("separable_within_classical_bound", 2.0, worst, tol);
}

inline void run_validate_process(const Params& p, Rng& rng, Report& r) {
  const double tol = p.tolerance();
  const auto which = p.text("process", {"ocb", "separable", "identity"});
  const long samples = p.integer("samples", 1, 1000000);
  const ProcessMatrix w = which == "ocb"         ? ocb_process()
                          : which == "separable" ? random_separable_process(rng)
                                                 : ProcessMatrix(SubsystemDims{2, 2, 2, 2},
                                                                 ComplexMatrix::identity(16) *
                                                                     complex_t(0.25));
  const auto v = validate_process(w, static_cast<std::size_t>(samples), rng);
  const double floor = min_eigenvalue(w.matrix());
  const double trace = w.matrix().trace().real();
  r.output("min_eigenvalue", floor);
  r.output("trace", trace);
  r.output("psd", v.psd);
  r.output("trace_ok", v.trace_ok);
  r.output("max_norm_deviation", v.max_norm_deviation);
  r.check_ge("eigenvalue_floor", 0.0, floor, kDefaultTol);
  r.check_near("trace", static_cast<double>(w.d(kAO) * w.d(kBO)), trace, kDefaultTol);
  r.check_le("normalization_deviation", 0.0, v.max_norm_deviation, tol);
}

inline void run_grav_duration(const Params& p, Rng&, Report& r) {
  const auto body_name = p.text("body", {"earth", "small", "custom"});
  BodyConfig body = BodyConfig::earth();
  double d = 3e-7, h = 1.0;
  std::optional<std::pair<double, double>> window = std::pair{8.0, 10.0};
  if (body_name == "small") {
    body = {1e-10, 1e-15};
    d = 1e-15;
    h = 1e-12;
    window = std::pair{4e-2, 6e-2};
  } else if (body_name == "custom") {
    body = {p.positive("mass"), p.positive("radius")};
    window.reset();
  }
  if (body_name != "custom" && (p.has("mass") || p.has("radius")))
    throw ConfigError("mass and radius apply only to body=custom");
  d = p.has("d") ? p.positive("d") : d;
  h = p.has("h") ? p.positive("h") : h;
  if (p.has("dt_min") || p.has("dt_max"))
    window = std::pair{p.number_or("dt_min", 0.0), p.number_or("dt_max", INFINITY)};
  r.input("mass", body.mass);
  r.input("radius", body.radius);
  r.input("d", d);
  r.input("h", h);
  if (window) {
    r.input("dt_min", window->first);
    r.input("dt_max", window->second);
  }

  const auto dur = protocol_duration(body, SwitchGeometry{h, d, 0.0});
  const double x = body.schwarzschild_radius() / body.radius;
  r.output("schwarzschild_radius", body.schwarzschild_radius());
  r.output("ratio_exact", switch_ratio_exact(body, h));
  if (x < 1e-3) {
    const auto wf = switch_ratio_weak_field(body, h);
    r.output("ratio_weak_field", wf.ratio);
    r.output("gravity_term", wf.gravity_term);
    r.output("curvature_term", wf.curvature_term);
    r.output("weak_field_relative_error", weak_field_relative_error(body, h));
  }
  r.output("dt_c", dur.dt_c);
  r.output("dt_r", dur.dt_r);
  r.output("dt_exp_min", dur.dt_exp_min);
  r.output("dt_exp_max", dur.dt_exp_max);
  r.output("coefficient", dur.coefficient);
  if (window)
    r.check_range("dt_r_window", window->first, window->second, dur.dt_r);
  if (body_name == "earth")
    r.check_rel("earth_coefficient", 3e7, dur.coefficient, p.tolerance());
  if (x <= 1e-8)
    r.check_le("weak_field_agreement", 0.0, weak_field_relative_error(body, h), 1e-6);
}

inline void run_grav_order(const Params& p, Rng& rng, Report& r) {
  const double tol = p.tolerance();
  const double height = p.positive("height");
  const double t = p.positive("t");
  const ClockModel ca{p.positive("energy_a"), 0.0}, cb{p.positive("energy_b"), 0.0};
  const long draws = p.integer("draws", 0, 100000);
  const auto body = BodyConfig::earth();
  const double rb = body.radius, ra = body.radius + height;

  const double th = min_tau_for_order(ra, rb, body);
  const double above = arrival_proper_time(1.01 * th, ra, rb, body);
  const double below = arrival_proper_time(0.99 * th, ra, rb, body);
  const auto pur = grav_switch_resync_purity(ca, cb, ra, rb, body, t);
  double min_after = 1, max_before = 0;
  for (long i = 0; i < draws; ++i) {
    const ClockModel da{random_uniform(rng, 1e-21, 1e-19), random_uniform(rng, 0, 6.28)};
    const ClockModel db{random_uniform(rng, 1e-21, 1e-19), random_uniform(rng, 0, 6.28)};
    const double r1 = body.radius + random_uniform(rng, 0, 1e4);
    const double r2 = r1 + random_uniform(rng, 10, 1e4);
    const auto q = grav_switch_resync_purity(da, db, r1, r2, body, random_uniform(rng, 0.1, 10));
    min_after = std::min(min_after, q.after);
    max_before = std::max(max_before, q.before);
  }
  r.output("min_tau_for_order", th);
  r.output("lapse_a", lapse(ra, body));
  r.output("lapse_b", lapse(rb, body));
  r.output("light_time", light_coordinate_time(rb, ra, body));
  r.output("arrival_at_1.01_threshold", above);
  r.output("arrival_at_0.99_threshold", below);
  r.output("purity_before", pur.before);
  r.output("purity_after", pur.after);
  r.output("random_min_purity_after", min_after);
  r.output("random_max_purity_before", max_before);
  r.check_lt("ordered_above_threshold", 1.01 * th, above);
  r.check_gt("unordered_below_threshold", 0.99 * th, below);
  r.check_le("entangled_before_swap", 1 - 1e-6, pur.before, 0.0);
  r.check_near("pure_after_swap", 1.0, pur.after, tol);
  if (draws > 0)
    r.check_near("random_pure_after_swap", 1.0, min_after, tol);
}

inline void run_trigger(const Params& p, Rng&, Report& r) {
  const double tol = p.tolerance();
  const auto tp = trigger_params(p.positive("tau_star"), p.positive("Delta"), p.positive("V0"),
                                 p.positive("m"));
  const auto angle = crossing_rotation_angle(tp);
  const auto rotated = level_rotation(angle.angle) * ComplexVector{1, 0};
  const double fid = fidelity(rotated, ComplexVector{0, 1});
  r.output("omega", tp.omega);
  r.output("period", tp.period());
  r.output("sigma", tp.sigma);
  r.output("amplitude", tp.A);
  r.output("alpha0", tp.alpha0);
  r.output("window", tp.window());
  r.output("rotation_angle", angle.angle);
  r.output("amplitude_regime", tp.amplitude_regime());
  r.output("width_regime", tp.width_regime());
  r.output("energy_regime", tp.energy_regime());
  r.output("regime_ok", angle.regime_ok);
  r.output("rotated_state", complex_list(rotated));
  r.check_near("rotation_angle", std::numbers::pi / 2, angle.angle, tol);
  r.check_near("rotated_to_A1", 1.0, fid, tol);
}

inline void run_agent_switch(const Params& p, Rng&, Report& r) {
  const double tol = p.tolerance();
  const int level = static_cast<int>(p.integer("input", 1, 5));
  const int zeta = static_cast<int>(p.integer("zeta", 0, 3));
  const auto amps = AgentAmplitudes::ideal();
  const auto target = ComplexVector::basis(5, static_cast<std::size_t>(level - 1));
  const auto in = ModelState::input(target);

  double completeness_ab = 0, completeness_ba = 0;
  for (int z = 0; z < 4; ++z) {
    completeness_ab += postselect(apply_agent_A_then_B(amps, in), z).probability;
    completeness_ba += postselect(apply_agent_B_then_A(amps, in), z).probability;
  }
  r.output("postselection_total_A_then_B", completeness_ab);
  r.output("postselection_total_B_then_A", completeness_ba);

  std::optional<ComplexVector> states[2];
  for (int k = 0; k < 2; ++k) {
    const int sign = k == 0 ? 1 : -1;
    const std::string tag = k == 0 ? "plus" : "minus";
    try {
      const auto res = run_switch_model(amps, target, zeta, sign);
      r.output("postselection_probability", res.postselection_probability);
      r.output("target_only", res.target_only);
      r.output("outcome_probability_" + tag, res.outcome_probability);
      r.output("state_" + tag, complex_list(res.state));
      states[k] = res.state;
    } catch (const ZeroOutcomeError& e) {
      if (std::string(e.what()).find("postselection") != std::string::npos)
        throw ConfigError(std::string("agent-switch: ") + e.what());
      r.output("outcome_probability_" + tag, 0.0);
      r.output("state_" + tag, nullptr);
    }
  }
  r.check_near("postselection_complete_A_then_B", 1.0, completeness_ab, tol);
  r.check_near("postselection_complete_B_then_A", 1.0, completeness_ba, tol);
  const double h = 1 / std::sqrt(2.0);
  auto e = [](std::size_t i) { return ComplexVector::basis(5, i - 1); };
  if (level == 1 && zeta == 3) {
    for (int k = 0; k < 2; ++k) {
      const auto expect = (e(3) + e(5) * complex_t(k == 0 ? 1.0 : -1.0)) * complex_t(h);
      const double fid = states[k] && states[k]->dim() == 5 ? fidelity(*states[k], expect) : 0.0;
      r.check_near(k == 0 ? "superposed_orders_plus" : "superposed_orders_minus", 1.0, fid, tol);
    }
  }
  if (level == 4 && zeta == 2) {
    const double fid = states[0] && states[0]->dim() == 5 ? fidelity(*states[0], e(5)) : 0.0;
    r.check_near("trivial_switch_input_4", 1.0, fid, tol);
  }
}

}  // namespace detail

inline const std::vector<ScenarioSpec>& scenarios() {
  static const std::vector<ScenarioSpec> all = {
      {"ocb-game",
       "guessing game with the OCB process and strategies; causal bound over random separable "
       "processes",
       {{"tolerance", 1e-9, "absolute tolerance on the success probability"},
        {"separable_samples", 200, "random causally separable processes to test"}},
       detail::run_ocb_game},
      {"switch-contract",
       "contraction of the switch process vector against the switch supermap",
       {{"tolerance", 1e-9, "tolerance on fidelity and state deviation"},
        {"pairs", 50, "random unitary pairs"}},
       detail::run_switch_contract},
      {"chsh-temporal",
       "CHSH value of the temporal-order states and a separable sweep",
       {{"tolerance", 1e-9, "absolute tolerance on CHSH values"},
        {"separable_samples", 500, "random separable states"}},
       detail::run_chsh_temporal},
      {"validate-process",
       "positivity, trace and randomized normalization of a process matrix",
       {{"tolerance", 1e-8, "bound on the normalization deviation"},
        {"process", "ocb", "ocb | separable | identity"},
        {"samples", 500, "random CPTP pairs"}},
       detail::run_validate_process},
      {"grav-duration",
       "switch feasibility ratio and protocol duration near a mass",
       {{"tolerance", 0.05, "relative tolerance on the Earth coefficient 3e7"},
        {"body", "earth", "earth | small | custom"},
        {"mass", nullptr, "kg, body=custom"},
        {"radius", nullptr, "m, body=custom"},
        {"d", nullptr, "m, horizontal separation (preset per body)"},
        {"h", nullptr, "m, height (preset per body)"},
        {"dt_min", nullptr, "s, lower end of the expected window"},
        {"dt_max", nullptr, "s, upper end of the expected window"}},
       detail::run_grav_duration},
      {"grav-order",
       "event-ordering threshold near Earth and clock resynchronization",
       {{"tolerance", 1e-9, "tolerance on the resynchronized purity"},
        {"height", 1e3, "m, height of a above b"},
        {"energy_a", 1e-20, "J, clock energy gap of a"},
        {"energy_b", 2e-20, "J, clock energy gap of b"},
        {"t", 1.0, "s, evolution time in each configuration"},
        {"draws", 100, "random clock draws"}},
       detail::run_grav_order},
      {"trigger",
       "harmonic trigger parameters and the crossing rotation",
       {{"tolerance", 1e-12, "tolerance on the rotation angle"},
        {"tau_star", 1.0, "s"},
        {"Delta", 1e-6, "m, interaction zone width"},
        {"V0", 1e-21, "J, interaction strength"},
        {"m", 1e-25, "kg, trigger mass"}},
       detail::run_trigger},
      {"agent-switch",
       "few-level agents in superposed orders with postselection",
       {{"tolerance", 1e-9, "tolerance on fidelities and completeness"},
        {"input", 1, "target level 1..5"},
        {"zeta", 3, "detector pattern 0..3"}},
       detail::run_agent_switch},
  };
  return all;
}

inline const ScenarioSpec& find_scenario(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.name == name)
      return s;
  throw ConfigError("unknown scenario '" + name + "'");
}

// Defaults overlaid with the given parameters; unknown keys rejected.
inline Json resolve_params(const ScenarioSpec& spec, const Json& given) {
  if (!given.is_object())
    throw ConfigError("params must be an object");
  Json out = Json::object();
  for (const auto& ps : spec.params)
    out[ps.key] = ps.default_value;
  for (auto it = given.begin(); it != given.end(); ++it) {
    if (!out.contains(it.key()))
      throw ConfigError("unknown parameter '" + it.key() + "' for scenario " + spec.name);
    const auto& v = it.value();
    if (!(v.is_number() || v.is_string() || v.is_null()))
      throw ConfigError("parameter '" + it.key() + "' must be a number or a string");
    out[it.key()] = v;
  }
  return out;
}

inline Report run_scenario(const ScenarioConfig& config) {
  const auto& spec = find_scenario(config.scenario);
  const Params params(resolve_params(spec, config.params));
  Report report(spec.name, config.seed, params.values());
  Rng rng(config.seed);
  try {
    spec.run(params, rng, report);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(spec.name + ": " + e.what());
  }
  return report;
}

struct SuiteResult {
  std::vector<Report> reports;
  bool pass() const {
    for (const auto& r : reports)
      if (!r.pass())
        return false;
    return true;
  }
  Json to_json() const {
    Json j = Json::object();
    std::size_t failed = 0;
    Json list = Json::array();
    for (const auto& r : reports) {
      failed += r.pass() ? 0 : 1;
      list.push_back(r.to_json());
    }
    j["count"] = reports.size();
    j["failed"] = failed;
    j["pass"] = failed == 0;
    j["reports"] = std::move(list);
    return j;
  }
};

inline SuiteResult run_suite(const std::vector<ScenarioConfig>& configs) {
  if (configs.empty())
    throw ConfigError("suite needs at least one scenario");
  SuiteResult out;
  for (const auto& c : configs)
    out.reports.push_back(run_scenario(c));
  return out;
}

//============================================================================
// Configuration parsing
//============================================================================

inline std::uint64_t parse_seed(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError("seed must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline ScenarioConfig parse_config(const Json& j) {
  if (!j.is_object())
    throw ConfigError("a scenario configuration must be a JSON object");
  ScenarioConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    const auto& v = it.value();
    if (k == "scenario") {
      if (!v.is_string())
        throw ConfigError("scenario must be a string");
      c.scenario = v.get<std::string>();
    } else if (k == "params") {
      if (!v.is_object())
        throw ConfigError("params must be an object");
      c.params = v;
    } else if (k == "seed") {
      c.seed = parse_seed(v);
    } else if (k == "output") {
      if (!v.is_string())
        throw ConfigError("output must be a string");
      c.output_path = v.get<std::string>();
    } else {
      throw ConfigError("unknown configuration key '" + k + "'");
    }
  }
  if (c.scenario.empty())
    throw ConfigError("configuration needs a scenario");
  return c;
}

// {"seed": N (optional default), "scenarios": [config, ...]}
inline std::vector<ScenarioConfig> parse_suite(const Json& j) {
  if (!j.is_object())
    throw ConfigError("suite file must be a JSON object");
  std::optional<std::uint64_t> seed;
  const Json* list = nullptr;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "seed")
      seed = parse_seed(it.value());
    else if (it.key() == "scenarios")
      list = &it.value();
    else
      throw ConfigError("unknown suite key '" + it.key() + "'");
  }
  if (!list || !list->is_array())
    throw ConfigError("suite file needs a 'scenarios' array");
  std::vector<ScenarioConfig> out;
  for (const auto& item : *list) {
    auto c = parse_config(item);
    if (seed && !item.contains("seed"))
      c.seed = *seed;
    out.push_back(std::move(c));
  }
  return out;
}

// "k=v": v becomes an integer or a number when it parses fully as one.
inline std::pair<std::string, Json> parse_param_flag(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("parameter '" + kv + "' must have the form key=value");
  const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
  if (!val.empty()) {
    char* end = nullptr;
    const long long n = std::strtoll(val.c_str(), &end, 10);
    if (end && *end == '\0')
      return {key, Json(n)};
    const double x = std::strtod(val.c_str(), &end);
    if (end && *end == '\0' && std::isfinite(x))
      return {key, Json(x)};
  }
  return {key, Json(val)};
}

}  // namespace qcausal::cli

// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// Few-level agents scattering a single target photon, in either order, with
// herald detectors for postselection; and the harmonic-oscillator trigger
// that starts agent A's operation.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

#include "qcausal/grav_timing.hpp"
#include "qcausal/linalg.hpp"

namespace qcausal {

//============================================================================
// Amplitudes and state space
//============================================================================

// Absorption amplitudes c_iA (i = 1, 4) and c_iB (i = 1, 2), and the
// second-scattering amplitudes f. The complementary amplitudes are
// d = e^{i delta} sqrt(1 - |c|^2) and g = e^{i gamma} sqrt(1 - |f|^2).
struct AgentAmplitudes {
  complex_t c1A = 1.0, c4A = 1.0, c1B = 1.0, c2B = 1.0;
  complex_t fBA = 1.0, fAB = 1.0;
  double delta1A = 0, delta4A = 0, delta1B = 0, delta2B = 0;
  double gammaBA = 0, gammaAB = 0;

  static AgentAmplitudes ideal() { return {}; }

  void validate() const {
    for (auto z : {c1A, c4A, c1B, c2B, fBA, fAB})
      if (std::abs(z) > 1 + kDefaultTol)
        throw std::invalid_argument("scattering amplitudes must satisfy |c|, |f| <= 1");
  }

  static complex_t complement(complex_t c, double phase) {
    return std::polar(std::sqrt(std::max(0.0, 1 - std::norm(c))), phase);
  }

  complex_t cA(int i) const { return i == 1 ? c1A : i == 4 ? c4A : 0.0; }
  complex_t cB(int i) const { return i == 1 ? c1B : i == 2 ? c2B : 0.0; }
  complex_t dA(int i) const {
    return i == 1 ? complement(c1A, delta1A) : i == 4 ? complement(c4A, delta4A) : 1.0;
  }
  complex_t dB(int i) const {
    return i == 1 ? complement(c1B, delta1B) : i == 2 ? complement(c2B, delta2B) : 1.0;
  }
  complex_t gBA() const { return complement(fBA, gammaBA); }
  complex_t gAB() const { return complement(fAB, gammaAB); }
};

// H_A (A_0..A_5) (x) H_B (B_1..B_5) (x) H_targ (e_1..e_5) (x) det_A (x) det_B.
// A detector reads 1 when its herald photon (e_6 for A, e_7 for B) is
// present.
class ModelState {
 public:
  static inline const SubsystemDims kDims{6, 5, 5, 2, 2};

  ModelState() : v_(kDims.total()) {}
  explicit ModelState(ComplexVector v) : v_(std::move(v)) {
    if (v_.dim() != kDims.total())
      throw std::invalid_argument("model state has wrong dimension");
  }

  static std::size_t index(int a_level, int b_level, int e_level, int det_a, int det_b) {
    if (a_level < 0 || a_level > 5 || b_level < 1 || b_level > 5 || e_level < 1 ||
        e_level > 5 || (det_a != 0 && det_a != 1) || (det_b != 0 && det_b != 1))
      throw std::out_of_range("model state label out of range");
    return kDims.flat({static_cast<std::size_t>(a_level), static_cast<std::size_t>(b_level - 1),
                       static_cast<std::size_t>(e_level - 1), static_cast<std::size_t>(det_a),
                       static_cast<std::size_t>(det_b)});
  }

  // |A_1>|B_1> (x) sum_i alpha_i |e_i> (x) |0>_A|0>_B
  static ModelState input(const ComplexVector& alphas) {
    if (alphas.dim() != 5)
      throw std::invalid_argument("target state needs 5 amplitudes");
    ModelState s;
    for (int i = 1; i <= 5; ++i)
      s.at(1, 1, i, 0, 0) = alphas[i - 1];
    return s;
  }

  complex_t& at(int a, int b, int e, int da, int db) { return v_[index(a, b, e, da, db)]; }
  complex_t at(int a, int b, int e, int da, int db) const { return v_[index(a, b, e, da, db)]; }

  const ComplexVector& vector() const { return v_; }
  double norm() const { return v_.norm(); }

 private:
  ComplexVector v_;
};

namespace detail {
// Amplitudes alpha_i of an input with agents in |A_1 B_1> and detectors 00.
inline ComplexVector target_alphas(const ModelState& in, double tol = kDefaultTol) {
  ComplexVector alphas(5);
  double outside = 0;
  for (std::size_t f = 0; f < ModelState::kDims.total(); ++f) {
    const auto g = ModelState::kDims.digits(f);
    const complex_t z = in.vector()[f];
    if (g[0] == 1 && g[1] == 0 && g[3] == 0 && g[4] == 0)
      alphas[g[2]] = z;
    else
      outside += std::norm(z);
  }
  if (std::sqrt(outside) > tol)
    throw std::invalid_argument("input must have agents in |A_1 B_1> and detectors in |00>");
  return alphas;
}
}  // namespace detail

// A scatters first, then B.
inline ModelState apply_agent_A_then_B(const AgentAmplitudes& amps, const ModelState& input) {
  amps.validate();
  const auto al = detail::target_alphas(input);
  auto alpha = [&](int i) { return al[i - 1]; };
  ModelState out;
  // both scattered
  out.at(3, 5, 3, 0, 0) += alpha(1) * amps.c1A * amps.fBA;
  // only A scattered
  out.at(3, 5, 2, 0, 1) += alpha(1) * amps.c1A * amps.gBA();
  out.at(5, 5, 5, 0, 1) += alpha(4) * amps.c4A;
  // only B scattered
  out.at(5, 3, 4, 1, 0) += alpha(1) * amps.dA(1) * amps.c1B;
  out.at(5, 5, 3, 1, 0) += alpha(2) * amps.c2B;
  // neither
  for (int i = 1; i <= 5; ++i)
    out.at(5, 5, i, 1, 1) += alpha(i) * amps.dA(i) * amps.dB(i);
  return out;
}

// B scatters first, then A.
inline ModelState apply_agent_B_then_A(const AgentAmplitudes& amps, const ModelState& input) {
  amps.validate();
  const auto al = detail::target_alphas(input);
  auto alpha = [&](int i) { return al[i - 1]; };
  ModelState out;
  out.at(5, 3, 5, 0, 0) += alpha(1) * amps.c1B * amps.fAB;
  out.at(3, 5, 2, 0, 1) += alpha(1) * amps.dB(1) * amps.c1A;
  out.at(5, 5, 5, 0, 1) += alpha(4) * amps.c4A;
  out.at(5, 3, 4, 1, 0) += alpha(1) * amps.c1B * amps.gAB();
  out.at(5, 5, 3, 1, 0) += alpha(2) * amps.c2B;
  for (int i = 1; i <= 5; ++i)
    out.at(5, 5, i, 1, 1) += alpha(i) * amps.dA(i) * amps.dB(i);
  return out;
}

// Detector pattern (det_A, det_B) for each postselection:
// 0: both heralds present, 1: only e_6, 2: only e_7, 3: none.
inline std::pair<int, int> detector_pattern(int zeta) {
  switch (zeta) {
    case 0: return {1, 1};
    case 1: return {1, 0};
    case 2: return {0, 1};
    case 3: return {0, 0};
    default: throw std::invalid_argument("postselection index must be 0..3");
  }
}

// Unnormalized component on H_A (x) H_B (x) H_targ for a detector pattern.
inline ComplexVector detector_component(const ModelState& s, int zeta) {
  const auto [da, db] = detector_pattern(zeta);
  ComplexVector out(150);
  for (int a = 0; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      for (int e = 1; e <= 5; ++e)
        out[(a * 5 + (b - 1)) * 5 + (e - 1)] = s.at(a, b, e, da, db);
  return out;
}

struct Postselection {
  std::optional<ModelState> projected;  // empty when probability is zero
  double probability = 0;
};

inline Postselection postselect(const ModelState& s, int zeta) {
  const auto [da, db] = detector_pattern(zeta);
  ModelState p;
  for (int a = 0; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      for (int e = 1; e <= 5; ++e)
        p.at(a, b, e, da, db) = s.at(a, b, e, da, db);
  Postselection r;
  r.probability = p.norm() * p.norm();
  if (r.probability > kDefaultTol * kDefaultTol)
    r.projected = ModelState(p.vector() * complex_t(1.0 / p.norm()));
  return r;
}

//============================================================================
// Switch over the path of A
//============================================================================

struct SwitchModelResult {
  ComplexVector state;   // normalized; dim 5 if target_only else 150
  bool target_only = false;
  double postselection_probability = 0;
  double outcome_probability = 0;  // of the diagonal outcome, given zeta
};

namespace detail {
struct Factorized {
  ComplexVector agents;  // normalized, largest component real positive
  ComplexVector target;  // carries the amplitude
};

// Split a vector on (A (x) B) (x) targ as agents (x) target if it has
// Schmidt rank one.
inline std::optional<Factorized> factor_agents(const ComplexVector& v, double tol = kDefaultTol) {
  const std::size_t na = 30, nt = 5;
  std::size_t best = 0;
  double best_norm = -1;
  for (std::size_t i = 0; i < na; ++i) {
    double n = 0;
    for (std::size_t e = 0; e < nt; ++e)
      n += std::norm(v[i * nt + e]);
    if (n > best_norm) {
      best_norm = n;
      best = i;
    }
  }
  ComplexVector row(nt);
  for (std::size_t e = 0; e < nt; ++e)
    row[e] = v[best * nt + e];
  const ComplexVector dir = row.normalized();
  ComplexVector agents(na);
  for (std::size_t i = 0; i < na; ++i) {
    complex_t c = 0;
    for (std::size_t e = 0; e < nt; ++e)
      c += std::conj(dir[e]) * v[i * nt + e];
    agents[i] = c;
  }
  if (!kron(agents, dir).approx_equal(v, tol))
    return std::nullopt;
  std::size_t lead = 0;
  for (std::size_t i = 0; i < na; ++i)
    if (std::abs(agents[i]) > std::abs(agents[lead]) + tol)
      lead = i;
  const complex_t phase = std::abs(agents[lead]) > 0 ? agents[lead] / std::abs(agents[lead]) : 1.0;
  const double an = agents.norm();
  return Factorized{agents * complex_t(1.0 / (an * phase)), dir * (an * phase)};
}
}  // namespace detail

// Superpose the two orders with path amplitudes (p_AB, p_BA), postselect on
// the detectors, and project the path onto the diagonal state of the given
// sign. When both branches factor as agents (x) target the measurement
// includes the agents' states and the target alone is returned.
inline SwitchModelResult run_switch_model(
    const AgentAmplitudes& amps, const ComplexVector& target, int zeta, int sign,
    std::pair<complex_t, complex_t> path = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("diagonal sign must be +1 or -1");
  if (std::abs(std::norm(path.first) + std::norm(path.second) - 1) > kDefaultTol)
    throw std::invalid_argument("path amplitudes must be normalized");
  if (std::abs(target.norm() - 1) > kDefaultTol)
    throw std::invalid_argument("target state must be normalized");
  const auto in = ModelState::input(target);
  const auto phi0 = detector_component(apply_agent_A_then_B(amps, in), zeta) * path.first;
  const auto phi1 = detector_component(apply_agent_B_then_A(amps, in), zeta) * path.second;

  SwitchModelResult r;
  r.postselection_probability = std::pow(phi0.norm(), 2) + std::pow(phi1.norm(), 2);
  if (r.postselection_probability <= kDefaultTol * kDefaultTol)
    throw ZeroOutcomeError("postselection has zero probability");

  const double s = static_cast<double>(sign), h = 1.0 / std::sqrt(2.0);
  const auto f0 = phi0.norm() > kDefaultTol ? detail::factor_agents(phi0) : std::nullopt;
  const auto f1 = phi1.norm() > kDefaultTol ? detail::factor_agents(phi1) : std::nullopt;
  const bool zero0 = phi0.norm() <= kDefaultTol, zero1 = phi1.norm() <= kDefaultTol;
  ComplexVector out;
  if ((f0 || zero0) && (f1 || zero1)) {
    out = ComplexVector(5);
    if (f0)
      out += f0->target * complex_t(h);
    if (f1)
      out += f1->target * complex_t(s * h);
    r.target_only = true;
  } else {
    out = (phi0 + phi1 * complex_t(s)) * complex_t(h);
  }
  const double n = out.norm();
  if (n <= kDefaultTol)
    throw ZeroOutcomeError("diagonal outcome has zero probability");
  r.outcome_probability = n * n / r.postselection_probability;
  r.state = out * complex_t(1.0 / n);
  return r;
}

//============================================================================
// Trigger oscillator
//============================================================================

struct TriggerParams {
  double omega = 0;     // rad/s
  double tau_star = 0;  // s
  double Delta = 0;     // m, width of the interaction zone
  double V0 = 0;        // J
  double m = 0;         // kg
  double sigma = 0;     // m, wavepacket width
  double A = 0;         // m, oscillation amplitude
  double alpha0 = 0;    // coherent-state parameter

  double period() const { return 2 * std::numbers::pi / omega; }
  // Time spent crossing the interaction zone.
  double window() const { return Delta / (omega * A); }

  bool amplitude_regime() const { return A / Delta >= 10; }
  bool width_regime() const { return Delta / sigma >= 10; }
  bool energy_regime() const { return 0.5 * m * omega * omega * A * A / V0 >= 100; }
  bool regime_ok() const { return amplitude_regime() && width_regime() && energy_regime(); }
};

inline TriggerParams trigger_params(double tau_star, double Delta, double V0, double m) {
  if (!(tau_star > 0 && Delta > 0 && V0 > 0 && m > 0))
    throw std::invalid_argument("trigger parameters must be positive");
  TriggerParams p;
  p.tau_star = tau_star;
  p.Delta = Delta;
  p.V0 = V0;
  p.m = m;
  p.omega = std::numbers::pi / (2 * tau_star);
  p.sigma = std::sqrt(constants::hbar / (m * p.omega));
  p.A = 2 * Delta * V0 / (std::numbers::pi * constants::hbar * p.omega);
  p.alpha0 = p.A / (std::sqrt(2.0) * p.sigma);
  return p;
}

struct RotationAngle {
  double angle = 0;
  bool regime_ok = false;  // false flags the perfect-transmission approximation as unjustified
};

// V0 * window / hbar
inline RotationAngle crossing_rotation_angle(const TriggerParams& p) {
  return {p.V0 * p.window() / constants::hbar, p.regime_ok()};
}

// exp(-i theta X) on span{|A_0>, |A_1>}
inline ComplexMatrix level_rotation(double theta) {
  const complex_t c = std::cos(theta), s(0, -std::sin(theta));
  return {{c, s}, {s, c}};
}

enum class TriggerLevel { kA0, kRotating, kA1 };

struct TriggerState {
  double mean_position = 0;
  TriggerLevel level = TriggerLevel::kA0;
  double rotated_angle = 0;  // accumulated rotation
};

inline TriggerState trigger_timeline(const TriggerParams& p, double tau) {
  if (!(tau >= 0 && tau <= p.tau_star))
    throw std::invalid_argument("trigger timeline needs 0 <= tau <= tau*");
  TriggerState s;
  s.mean_position = p.A * std::cos(p.omega * tau);
  const double eps = p.window();
  const double total = crossing_rotation_angle(p).angle;
  if (tau >= p.tau_star) {
    s.level = TriggerLevel::kA1;
    s.rotated_angle = total;
  } else if (tau >= p.tau_star - eps) {
    s.level = TriggerLevel::kRotating;
    s.rotated_angle = total * (tau - (p.tau_star - eps)) / eps;
  }
  return s;
}

}  // namespace qcausal

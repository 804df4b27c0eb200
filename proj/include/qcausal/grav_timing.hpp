// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// Static spherically symmetric timing: lapse factors, radial light travel,
// event-ordering thresholds, the switch feasibility ratio and a two-level
// clock model for the gravitational switch.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qcausal/linalg.hpp"

namespace qcausal {

namespace constants {
inline constexpr double c = 2.99792458e8;       // m/s
inline constexpr double G = 6.67430e-11;        // m^3 kg^-1 s^-2
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double earth_mass = 5.9722e24;  // kg
inline constexpr double earth_radius = 6.371e6;  // m
}  // namespace constants

struct BodyConfig {
  double mass = constants::earth_mass;
  double radius = constants::earth_radius;

  static BodyConfig earth() { return {}; }

  double schwarzschild_radius() const {
    return 2 * constants::G * mass / (constants::c * constants::c);
  }
  // GM / c^2
  double gravitational_length() const {
    return constants::G * mass / (constants::c * constants::c);
  }
  double potential(double r) const { return -constants::G * mass / r; }

  void validate() const {
    if (!(mass > 0))
      throw std::invalid_argument("body mass must be positive");
    if (!(radius > schwarzschild_radius()))
      throw std::invalid_argument("body radius must exceed its Schwarzschild radius");
  }
};

struct MetricKind {
  enum Kind { kSchwarzschild, kIsotropicWeakField };
  Kind kind = kSchwarzschild;
  double beta = 1.0;
  double gamma = 1.0;

  static MetricKind schwarzschild() { return {}; }
  static MetricKind isotropic(double beta = 1.0, double gamma = 1.0) {
    return {kIsotropicWeakField, beta, gamma};
  }
};

namespace detail {
inline void check_radius(double r, const BodyConfig& body) {
  body.validate();
  if (!(r > body.schwarzschild_radius()))
    throw std::invalid_argument("radius must exceed the Schwarzschild radius");
}

// u = Phi / c^2
inline double phi_over_c2(double r, const BodyConfig& body) {
  return -body.gravitational_length() / r;
}

// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol)
    return left + right + delta / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int max_depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// -g_00(r)
inline double g00_magnitude(double r, const BodyConfig& body,
                            const MetricKind& kind = MetricKind::schwarzschild()) {
  detail::check_radius(r, body);
  if (kind.kind == MetricKind::kSchwarzschild)
    return 1 - body.schwarzschild_radius() / r;
  const double u = detail::phi_over_c2(r, body);
  return 1 + 2 * u + 2 * kind.beta * u * u;
}

// -g_00(r_a) - (-g_00(r_b)) without cancellation.
inline double g00_difference(double r_a, double r_b, const BodyConfig& body,
                             const MetricKind& kind = MetricKind::schwarzschild()) {
  detail::check_radius(r_a, body);
  detail::check_radius(r_b, body);
  const double k = body.gravitational_length();
  const double du = k * (r_a - r_b) / (r_a * r_b);  // u_a - u_b
  if (kind.kind == MetricKind::kSchwarzschild)
    return 2 * du;
  const double ua = -k / r_a, ub = -k / r_b;
  return du * (2 + 2 * kind.beta * (ua + ub));
}

inline double lapse(double r, const BodyConfig& body,
                    const MetricKind& kind = MetricKind::schwarzschild()) {
  return std::sqrt(g00_magnitude(r, body, kind));
}

// 1 - lapse, accurate when the field is weak.
inline double lapse_deficit(double r, const BodyConfig& body) {
  detail::check_radius(r, body);
  const double x = body.schwarzschild_radius() / r;
  return x / (1 + std::sqrt(1 - x));
}

// Coordinate time for light to travel radially from r1 out to r2.
inline double light_coordinate_time(double r1, double r2, const BodyConfig& body,
                                    const MetricKind& kind = MetricKind::schwarzschild()) {
  detail::check_radius(r1, body);
  if (!(r2 > r1))
    throw std::invalid_argument("light_coordinate_time needs r1 < r2");
  const double dr = r2 - r1;
  if (kind.kind == MetricKind::kSchwarzschild) {
    const double rs = body.schwarzschild_radius();
    return (dr + rs * std::log1p(dr / (r1 - rs))) / constants::c;
  }
  // sqrt(g_rr / -g_00) - 1 with g_rr = 1 - 2 gamma u, integrated as a
  // correction on top of the flat term
  auto excess = [&](double r) {
    const double u = detail::phi_over_c2(r, body);
    const double a = 1 - 2 * kind.gamma * u;
    const double b = 1 + 2 * u + 2 * kind.beta * u * u;
    const double diff = -2 * (1 + kind.gamma) * u - 2 * kind.beta * u * u;
    return diff / (b * (std::sqrt(a / b) + 1));
  };
  const double scale = std::abs(excess(r1)) * dr;
  const double corr = adaptive_simpson(excess, r1, r2, std::max(scale * 1e-13, 1e-300));
  return (dr + corr) / constants::c;
}

namespace detail {
inline double light_between(double r_a, double r_b, const BodyConfig& body,
                            const MetricKind& kind) {
  if (r_a == r_b)
    return 0.0;
  return r_a < r_b ? light_coordinate_time(r_a, r_b, body, kind)
                   : light_coordinate_time(r_b, r_a, body, kind);
}
}  // namespace detail

// Proper time on b's clock when a photon sent from r_a at a's proper time
// tau_star arrives at r_b.
inline double arrival_proper_time(double tau_star, double r_a, double r_b, const BodyConfig& body,
                                  const MetricKind& kind = MetricKind::schwarzschild()) {
  const double la = lapse(r_a, body, kind), lb = lapse(r_b, body, kind);
  return lb * (tau_star / la + detail::light_between(r_a, r_b, body, kind));
}

// Smallest common proper time tau* above which the event of a (at r_a)
// lies in the past light cone of the event of b (at r_b). Requires r_b
// deeper in the potential than r_a.
inline double min_tau_for_order(double r_a, double r_b, const BodyConfig& body,
                                const MetricKind& kind = MetricKind::schwarzschild()) {
  if (!(r_b < r_a))
    throw std::domain_error("ordering threshold needs r_b < r_a (slower clock at r_b)");
  const double ga = g00_magnitude(r_a, body, kind), gb = g00_magnitude(r_b, body, kind);
  // 1 - sqrt(gb/ga) = (ga - gb) / (ga + sqrt(ga gb))
  const double denom = g00_difference(r_a, r_b, body, kind) / (ga + std::sqrt(ga * gb));
  const double threshold = std::sqrt(gb) * detail::light_between(r_a, r_b, body, kind) / denom;
  if (!(denom > 0) || !std::isfinite(threshold) || !(threshold > 0))
    throw std::domain_error("no gravitational ordering: threshold diverges");
  return threshold;
}

// Lower bound on tau_a* for the two-configuration variant: a at r+L and b
// at r+L+h in one configuration, a at r and b at r+h in the other, with
// tau_b* fixed to the arrival time of a's photon.
inline double asymmetric_order_threshold(double r, double h, double L, const BodyConfig& body,
                                         const MetricKind& kind = MetricKind::schwarzschild()) {
  if (!(r > 0 && h > 0 && L >= 0))
    throw std::invalid_argument("asymmetric_order_threshold needs r, h > 0 and L >= 0");
  auto g = [&](double x) { return g00_magnitude(x, body, kind); };
  auto log_ratio = [&](double hi, double lo) {  // ln g(hi) - ln g(lo)
    return std::log1p(g00_difference(hi, lo, body, kind) / g(lo));
  };
  // ln Q, Q = g(r+L+h) g(r) / (g(r+h) g(r+L))
  const double log_q = log_ratio(r + L + h, r + L) - log_ratio(r + h, r);
  const double denom = -std::expm1(0.5 * log_q);
  const double num = std::sqrt(g(r + L + h) / g(r + h)) *
                         light_coordinate_time(r + L, r + L + h, body, kind) +
                     light_coordinate_time(r, r + h, body, kind);
  const double threshold = std::sqrt(g(r)) * num / denom;
  if (!(denom > 0) || !std::isfinite(threshold))
    throw std::domain_error("degenerate geometry: configurations cannot order oppositely");
  return threshold;
}

//============================================================================
// Switch feasibility
//============================================================================

// dt_r / dt_c = a / (a - b), a = sqrt(1 - R_S/(R+h)), b = sqrt(1 - R_S/R).
inline double switch_ratio_exact(const BodyConfig& body, double h) {
  body.validate();
  if (!(h > 0))
    throw std::invalid_argument("switch height must be positive");
  const double rs = body.schwarzschild_radius(), rr = body.radius;
  const double a = std::sqrt(1 - rs / (rr + h));
  const double b = std::sqrt(1 - rs / rr);
  const double diff = rs * h / (rr * (rr + h) * (a + b));  // a - b
  return a / diff;
}

struct WeakFieldRatio {
  double ratio = 0;
  double gravity_term = 0;    // c^2 / (g h)
  double curvature_term = 0;  // -(c^2/2) R_0101 / g^2
};

inline WeakFieldRatio switch_ratio_weak_field(const BodyConfig& body, double h) {
  body.validate();
  if (!(h > 0))
    throw std::invalid_argument("switch height must be positive");
  if (!(body.schwarzschild_radius() / body.radius < 1e-3))
    throw std::domain_error("weak-field ratio needs R_S/R < 1e-3");
  constexpr double c2 = constants::c * constants::c;
  const double rr = body.radius;
  const double g = constants::G * body.mass / (rr * rr);
  const double r0101 = -c2 * body.schwarzschild_radius() / (rr * rr * rr);
  WeakFieldRatio w;
  w.gravity_term = c2 / (g * h);
  w.curvature_term = -0.5 * c2 * r0101 / (g * g);
  w.ratio = w.gravity_term + w.curvature_term;
  return w;
}

// |weak / exact - 1|
inline double weak_field_relative_error(const BodyConfig& body, double h) {
  return std::abs(switch_ratio_weak_field(body, h).ratio / switch_ratio_exact(body, h) - 1);
}

struct SwitchGeometry {
  double h = 1.0;     // m
  double d = 3e-7;    // m
  double dt_c = 0.0;  // s; zero means d / c
};

struct ProtocolDuration {
  double dt_c = 0;
  double dt_r = 0;
  double dt_exp_min = 0;
  double dt_exp_max = 0;
  double coefficient = 0;  // dt_r in units of d/h (seconds)
};

inline ProtocolDuration protocol_duration(const BodyConfig& body, const SwitchGeometry& geom) {
  if (!(geom.d >= 0 && geom.dt_c >= 0))
    throw std::invalid_argument("geometry intervals must be nonnegative");
  ProtocolDuration p;
  p.dt_c = geom.dt_c > 0 ? geom.dt_c : geom.d / constants::c;
  p.dt_r = switch_ratio_exact(body, geom.h) * p.dt_c;
  p.dt_exp_min = p.dt_r;
  p.dt_exp_max = 2 * p.dt_r;
  if (geom.d > 0)
    p.coefficient = p.dt_r * geom.h / geom.d;
  return p;
}

//============================================================================
// Clocks in superposed configurations
//============================================================================

struct ClockModel {
  double energy_gap = 0;  // J
  double initial_phase = 0;
};

enum class Configuration { kAB, kBA };

// Phase E tau / hbar for tau = t (1 + Phi(r)/c^2), split into the
// position-independent part and the gravitational part so both can be
// reduced separately.
struct ClockPhase {
  double common = 0;
  double gravitational = 0;
  double total() const { return common + gravitational; }
};

inline ClockPhase clock_phase(const ClockModel& clock, double r, const BodyConfig& body,
                              double t) {
  if (clock.energy_gap < 0)
    throw std::invalid_argument("clock energy gap must be nonnegative");
  detail::check_radius(r, body);
  const double w = clock.energy_gap * t / constants::hbar;
  const double two_pi = 2 * std::numbers::pi;
  return {std::fmod(w, two_pi), std::fmod(w * detail::phi_over_c2(r, body), two_pi)};
}

// (|0> + e^{i phi_0} e^{-i phase} |1>) / sqrt2
inline ComplexVector clock_qubit(const ClockModel& clock, double phase) {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, r * std::polar(1.0, clock.initial_phase - phase)};
}

inline ComplexVector grav_switch_clock_state(const ClockModel& clock_a, const ClockModel& clock_b,
                                             double r_a, double r_b, const BodyConfig& body,
                                             double t, Configuration config) {
  if (t < 0)
    throw std::invalid_argument("evolution time must be nonnegative");
  const double pos_a = config == Configuration::kAB ? r_a : r_b;
  const double pos_b = config == Configuration::kAB ? r_b : r_a;
  return kron(clock_qubit(clock_a, clock_phase(clock_a, pos_a, body, t).total()),
              clock_qubit(clock_b, clock_phase(clock_b, pos_b, body, t).total()));
}

// (|K_AB> clocks_AB + |K_BA> clocks_BA) / sqrt2, control first.
inline ComplexVector grav_switch_joint_state(const ComplexVector& clocks_ab,
                                             const ComplexVector& clocks_ba) {
  const double r = 1.0 / std::sqrt(2.0);
  return kron(ComplexVector{r, 0}, clocks_ab) + kron(ComplexVector{0, r}, clocks_ba);
}

inline double control_purity(const ComplexVector& joint) {
  const auto rho_c =
      partial_trace(ComplexMatrix::projector(joint), SubsystemDims{2, joint.dim() / 2}, {0});
  return hs_inner(rho_c, rho_c).real();
}

struct ResyncPurity {
  double before = 0;
  double after = 0;
};

// Purity of the control after time t in superposed configurations, and
// after a further time t with the configurations swapped.
inline ResyncPurity grav_switch_resync_purity(const ClockModel& clock_a, const ClockModel& clock_b,
                                              double r_a, double r_b, const BodyConfig& body,
                                              double t) {
  ResyncPurity out;
  out.before = control_purity(
      grav_switch_joint_state(grav_switch_clock_state(clock_a, clock_b, r_a, r_b, body, t,
                                                      Configuration::kAB),
                              grav_switch_clock_state(clock_a, clock_b, r_a, r_b, body, t,
                                                      Configuration::kBA)));
  auto accumulated = [&](const ClockModel& c, double first, double second) {
    const auto p1 = clock_phase(c, first, body, t), p2 = clock_phase(c, second, body, t);
    return (p1.common + p2.common) + (p1.gravitational + p2.gravitational);
  };
  const auto ab = kron(clock_qubit(clock_a, accumulated(clock_a, r_a, r_b)),
                       clock_qubit(clock_b, accumulated(clock_b, r_b, r_a)));
  const auto ba = kron(clock_qubit(clock_a, accumulated(clock_a, r_b, r_a)),
                       clock_qubit(clock_b, accumulated(clock_b, r_a, r_b)));
  out.after = control_purity(grav_switch_joint_state(ab, ba));
  return out;
}

}  // namespace qcausal

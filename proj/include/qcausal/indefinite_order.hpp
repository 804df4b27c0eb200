// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// The two-party guessing game with the OCB strategies, the quantum switch
// (supermap, process vector, contraction) and CHSH for temporal order.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "qcausal/linalg.hpp"
#include "qcausal/process.hpp"
#include "qcausal/quantum_ops.hpp"

namespace qcausal {

namespace detail {
inline void check_bit(int v) {
  if (v != 0 && v != 1)
    throw std::invalid_argument("bits must be 0 or 1");
}
inline double sign_of(int bit) { return bit ? -1.0 : 1.0; }
inline void check_sign(int s) {
  if (s != 1 && s != -1)
    throw std::invalid_argument("sign must be +1 or -1");
}
}  // namespace detail

//============================================================================
// Guessing game
//============================================================================

struct GameStrategy {
  std::function<ChoiOperator(int x, int a)> alice_choi;
  std::function<ChoiOperator(int y, int b, int bp)> bob_choi;
  ComplexMatrix bob_arbitrary_state;
};

// Alice measures Z on A_I (guess x) and prepares a in Z on A_O.
// Bob with b'=1 measures Z on B_I and prepares rho on B_O; with b'=0 he
// measures X on B_I and prepares b xor y in Z.
inline GameStrategy ocb_strategy(const ComplexMatrix& rho_b2 = ComplexMatrix::identity(2) *
                                                               complex_t(0.5)) {
  if (rho_b2.rows() != 2 || !is_density(rho_b2))
    throw std::invalid_argument("Bob's free state must be a qubit density operator");
  using namespace pauli;
  auto half_proj = [](const ComplexMatrix& p, int bit) {
    return (i2() + p * complex_t(detail::sign_of(bit))) * complex_t(0.5);
  };
  GameStrategy s;
  s.bob_arbitrary_state = rho_b2;
  s.alice_choi = [half_proj](int x, int a) {
    detail::check_bit(x);
    detail::check_bit(a);
    return ChoiOperator(2, 2, kron(half_proj(z(), x), half_proj(z(), a)),
                        ChoiConvention::kTransposed);
  };
  s.bob_choi = [half_proj, rho_b2](int y, int b, int bp) {
    detail::check_bit(y);
    detail::check_bit(b);
    detail::check_bit(bp);
    if (bp == 1)
      return ChoiOperator(2, 2, kron(half_proj(z(), y), rho_b2), ChoiConvention::kTransposed);
    return ChoiOperator(2, 2, kron(half_proj(x(), y), half_proj(z(), b ^ y)),
                        ChoiConvention::kTransposed);
  };
  return s;
}

inline void check_qubit_process(const ProcessMatrix& w) {
  if (!(w.dims() == SubsystemDims{2, 2, 2, 2}))
    throw std::invalid_argument("the game needs a process with all local dimensions 2");
}

// P(x, y | a, b, b')
inline double game_probability(const ProcessMatrix& w, const GameStrategy& s, int x, int y,
                               int a, int b, int bp) {
  check_qubit_process(w);
  return probability(w, s.alice_choi(x, a), s.bob_choi(y, b, bp));
}

struct GuessProbabilities {
  double bob_guesses_a = 0;    // P(y = a | b' = 1)
  double alice_guesses_b = 0;  // P(x = b | b' = 0)
  double success() const { return 0.5 * (bob_guesses_a + alice_guesses_b); }
};

inline GuessProbabilities guess_probabilities(const ProcessMatrix& w, const GameStrategy& s) {
  check_qubit_process(w);
  GuessProbabilities g;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int other = 0; other < 2; ++other) {
        g.alice_guesses_b += 0.25 * game_probability(w, s, b, other, a, b, 0);
        g.bob_guesses_a += 0.25 * game_probability(w, s, other, a, a, b, 1);
      }
  return g;
}

// 1/2 [P(x = b | b' = 0) + P(y = a | b' = 1)] with uniform a, b.
inline double success_probability(const ProcessMatrix& w, const GameStrategy& s) {
  return guess_probabilities(w, s).success();
}

// Tr_{A_I A_O}[W (sum_x M(x, a) (x) 1)]
inline ComplexMatrix reduced_matrix_bob(const ProcessMatrix& w, const GameStrategy& s, int a) {
  check_qubit_process(w);
  const auto m = s.alice_choi(0, a).matrix() + s.alice_choi(1, a).matrix();
  const auto x = w.matrix() * kron(m, ComplexMatrix::identity(4));
  return partial_trace(x, w.dims(), {kBI, kBO});
}

// Tr_{B_I B_O}[W (1 (x) sum_y N(y, b, b'))]
inline ComplexMatrix reduced_matrix_alice(const ProcessMatrix& w, const GameStrategy& s, int b,
                                          int bp) {
  check_qubit_process(w);
  const auto n = s.bob_choi(0, b, bp).matrix() + s.bob_choi(1, b, bp).matrix();
  const auto x = w.matrix() * kron(ComplexMatrix::identity(4), n);
  return partial_trace(x, w.dims(), {kAI, kAO});
}

//============================================================================
// Quantum switch
//============================================================================

struct SwitchSpec {
  ComplexVector target_state;
  std::pair<complex_t, complex_t> control_amplitudes{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

  void validate() const {
    if (target_state.dim() != 2)
      throw std::invalid_argument("switch target must be a qubit");
    if (std::abs(target_state.norm() - 1.0) > kDefaultTol)
      throw std::invalid_argument("switch target must be normalized");
    const double c = std::norm(control_amplitudes.first) + std::norm(control_amplitudes.second);
    if (std::abs(c - 1.0) > kDefaultTol)
      throw std::invalid_argument("control amplitudes must be normalized");
  }
};

namespace detail {
inline void check_qubit_unitary(const ComplexMatrix& u) {
  if (u.rows() != 2 || !is_unitary(u))
    throw std::invalid_argument("expected a 2x2 unitary");
}

// sum over target (x) control entries
inline ComplexVector target_control(const ComplexVector& t0, const ComplexVector& t1,
                                    complex_t c0, complex_t c1) {
  ComplexVector out(4);
  for (std::size_t t = 0; t < 2; ++t) {
    out[t * 2 + 0] = c0 * t0[t];
    out[t * 2 + 1] = c1 * t1[t];
  }
  return out;
}
}  // namespace detail

// c0 U_B U_A|psi> (x) |0> + c1 U_A U_B|psi> (x) |1>, ordered target (x)
// control.
inline ComplexVector switch_supermap_state(const ComplexMatrix& ua, const ComplexMatrix& ub,
                                           const SwitchSpec& spec) {
  spec.validate();
  detail::check_qubit_unitary(ua);
  detail::check_qubit_unitary(ub);
  return detail::target_control(ub * (ua * spec.target_state), ua * (ub * spec.target_state),
                                spec.control_amplitudes.first, spec.control_amplitudes.second);
}

// Process vector on A_I, A_O, B_I, B_O, C^t, C^c with unnormalized
// |1>> links:
//   c0 |psi>^{A_I} |1>>^{A_O B_I} |1>>^{B_O C^t} |0>^{C^c}
// + c1 |psi>^{B_I} |1>>^{B_O A_I} |1>>^{A_O C^t} |1>^{C^c}
inline ComplexVector switch_process_vector(const SwitchSpec& spec) {
  spec.validate();
  const SubsystemDims dims{2, 2, 2, 2, 2, 2};
  const auto& psi = spec.target_state;
  const auto [c0, c1] = spec.control_amplitudes;
  ComplexVector w(dims.total());
  for (std::size_t f = 0; f < dims.total(); ++f) {
    const auto g = dims.digits(f);
    const std::size_t ai = g[0], ao = g[1], bi = g[2], bo = g[3], t = g[4], c = g[5];
    if (c == 0 && ao == bi && bo == t)
      w[f] += c0 * psi[ai];
    if (c == 1 && bo == ai && ao == t)
      w[f] += c1 * psi[bi];
  }
  return w;
}

// Contract the A and B slots of a switch process vector with the Choi
// vectors of U_A and U_B: sum (U_A)_{ao,ai} (U_B)_{bo,bi} w[ai,ao,bi,bo,t,c].
// Result is ordered target (x) control.
inline ComplexVector contract_switch(const ComplexVector& w, const ComplexMatrix& ua,
                                     const ComplexMatrix& ub) {
  if (w.dim() != 64)
    throw std::invalid_argument("switch process vector must be 64-dimensional");
  detail::check_qubit_unitary(ua);
  detail::check_qubit_unitary(ub);
  const SubsystemDims dims{2, 2, 2, 2, 2, 2};
  ComplexVector out(4);
  for (std::size_t f = 0; f < 64; ++f) {
    if (w[f] == complex_t(0))
      continue;
    const auto g = dims.digits(f);
    out[g[4] * 2 + g[5]] += ua(g[1], g[0]) * ub(g[3], g[2]) * w[f];
  }
  return out;
}

// Probability of a measurement projector on C^t (x) C^c after contraction.
inline double switch_outcome_probability(const ComplexVector& w, const ComplexMatrix& ua,
                                         const ComplexMatrix& ub, const ComplexMatrix& projector) {
  if (projector.rows() != 4 || projector.cols() != 4)
    throw std::invalid_argument("switch measurement projector must be 4x4");
  const auto v = contract_switch(w, ua, ub);
  return inner(v, projector * v).real();
}

struct ControlOutcome {
  ComplexVector target;
  double probability = 0;
};

// Project the control of a target (x) control state onto |+> or |->.
inline ControlOutcome control_measurement(const ComplexVector& state, int sign) {
  detail::check_sign(sign);
  if (state.dim() % 2 != 0)
    throw std::invalid_argument("state must carry a qubit control as last factor");
  const std::size_t dt = state.dim() / 2;
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector t(dt);
  for (std::size_t i = 0; i < dt; ++i)
    t[i] = r * (state[i * 2] + static_cast<double>(sign) * state[i * 2 + 1]);
  const double n = t.norm();
  if (n <= kDefaultTol)
    throw ZeroOutcomeError("control outcome has zero probability");
  return {t * complex_t(1.0 / n), n * n};
}

//============================================================================
// CHSH for temporal order
//============================================================================

struct ChshSettings {
  ComplexMatrix a0, a1, b0, b1;
};

// A_0 = (Y - Z)/sqrt2, A_1 = (Y + Z)/sqrt2 on the first system; B_0 = Y,
// B_1 = Z on the second.
inline ChshSettings temporal_order_chsh_settings() {
  using namespace pauli;
  const complex_t r(1.0 / std::sqrt(2.0));
  return {(y() - z()) * r, (y() + z()) * r, y(), z()};
}

namespace detail {
inline void check_dichotomic(const ComplexMatrix& o) {
  if (o.rows() != 2 || !is_hermitian(o) ||
      !(o * o).approx_equal(ComplexMatrix::identity(2), kDefaultTol))
    throw std::invalid_argument("CHSH observables must be 2x2 with spectrum {-1, +1}");
}
}  // namespace detail

// E(0,0) + E(0,1) + E(1,0) - E(1,1) with E(i,j) = Tr[rho A_i (x) B_j].
inline double chsh_value(const ComplexMatrix& rho, const ChshSettings& s) {
  if (rho.rows() != 4 || !is_hermitian(rho))
    throw std::invalid_argument("CHSH needs a two-qubit state");
  for (const auto* o : {&s.a0, &s.a1, &s.b0, &s.b1})
    detail::check_dichotomic(*o);
  auto e = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    return trace_of_product(rho, kron(a, b)).real();
  };
  return e(s.a0, s.b0) + e(s.a0, s.b1) + e(s.a1, s.b0) - e(s.a1, s.b1);
}

inline double chsh_value(const ComplexVector& state, const ChshSettings& s) {
  if (state.dim() != 4)
    throw std::invalid_argument("CHSH needs a two-qubit state");
  return chsh_value(ComplexMatrix::projector(state), s);
}

// Normalized (U_B1 U_A1|psi1> (x) U_A2 U_B2|psi2>
//             +- U_A1 U_B1|psi1> (x) U_B2 U_A2|psi2>), ordered S1 (x) S2.
inline ComplexVector temporal_order_state(const ComplexMatrix& u_a1, const ComplexMatrix& u_b1,
                                          const ComplexMatrix& u_a2, const ComplexMatrix& u_b2,
                                          const ComplexVector& psi1, const ComplexVector& psi2,
                                          int sign) {
  detail::check_sign(sign);
  for (const auto* u : {&u_a1, &u_b1, &u_a2, &u_b2})
    detail::check_qubit_unitary(*u);
  for (const auto* p : {&psi1, &psi2})
    if (p->dim() != 2 || std::abs(p->norm() - 1.0) > kDefaultTol)
      throw std::invalid_argument("temporal_order_state needs normalized qubit states");
  const auto first = kron(u_b1 * (u_a1 * psi1), u_a2 * (u_b2 * psi2));
  const auto second = kron(u_a1 * (u_b1 * psi1), u_b2 * (u_a2 * psi2));
  const auto v = first + second * complex_t(sign);
  if (v.norm() <= kDefaultTol)
    throw ZeroOutcomeError("the two temporal orders cancel");
  return v.normalized();
}

}  // namespace qcausal

// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcausal/process.hpp"

using namespace qcausal;

namespace {

ChoiOperator tchoi(const Operation& op) { return choi_of_operation(op, ChoiConvention::kTransposed); }

// Measure-and-discard POVM element: Kraus <k| M^{1/2}, output dimension 1
// padded into a 2-dim output by preparing |0>.
Operation povm_element(const ComplexMatrix& effect) {
  const auto root = psd_sqrt(effect);
  ComplexMatrix k(2, 2);
  for (std::size_t j = 0; j < 2; ++j)
    k(0, j) = root(0, j);
  ComplexMatrix k2(2, 2);
  for (std::size_t j = 0; j < 2; ++j)
    k2(0, j) = root(1, j);
  return Operation(2, 2, {k, k2});
}

ComplexMatrix half_proj(const ComplexMatrix& pauli_op, int sign) {
  return (pauli::i2() + pauli_op * complex_t(sign)) * complex_t(0.5);
}

// Probability by sequential composition: Bob acts on rho, the channel
// carries his output to Alice, Alice's operation is traced out.
double direct_b_to_a(const ComplexMatrix& rho, const Operation& bob, const Operation& chan,
                     const Operation& alice) {
  return apply_operation(alice, apply_operation(chan, apply_operation(bob, rho))).trace().real();
}

}  // namespace

TEST(ProcessMatrix, RejectsBadShapes) {
  EXPECT_THROW(ProcessMatrix(SubsystemDims{2, 2, 2}, ComplexMatrix::identity(8)),
               std::invalid_argument);
  EXPECT_THROW(ProcessMatrix(SubsystemDims{2, 2, 2, 2}, ComplexMatrix::identity(8)),
               std::invalid_argument);
  ComplexMatrix nh = ComplexMatrix::identity(16);
  nh(0, 1) = 1.0;
  EXPECT_THROW(ProcessMatrix(SubsystemDims{2, 2, 2, 2}, nh), std::invalid_argument);
}

TEST(Probability, RejectsPlainConvention) {
  const auto w = ocb_process();
  const auto plain = choi_of_operation(Operation::unitary(pauli::i2()), ChoiConvention::kPlain);
  const auto tr = plain.to(ChoiConvention::kTransposed);
  EXPECT_THROW(probability(w, plain, tr), std::invalid_argument);
  EXPECT_THROW(probability(w, tr, plain), std::invalid_argument);
  const auto wrong = tchoi(Operation::unitary(ComplexMatrix::identity(3)));
  EXPECT_THROW(probability(w, wrong, tr), std::invalid_argument);
}

TEST(StateProcess, MaximallyMixedGivesScaledIdentity) {
  const auto w = state_process(ComplexMatrix::identity(4) * complex_t(0.25), SubsystemDims{2, 2, 2, 2});
  EXPECT_TRUE(w.matrix().approx_equal(ComplexMatrix::identity(16) * complex_t(0.25)));
}

TEST(StateProcess, BornRule) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(4, rng);
    const auto w = state_process(rho, SubsystemDims{2, 2, 2, 2});
    const auto ma = random_density(2, rng), nb = random_density(2, rng);
    // effects bounded by 1 since they are density operators
    const double p = probability(w, tchoi(povm_element(ma)), tchoi(povm_element(nb)));
    const double born = (kron(ma, nb) * rho).trace().real();
    EXPECT_NEAR(p, born, 1e-9);
  }
}

TEST(StateProcess, BellCorrelations) {
  const double r = 1 / std::sqrt(2.0);
  const auto bell = ComplexMatrix::projector(ComplexVector{r, 0, 0, r});
  const auto w = state_process(bell, SubsystemDims{2, 2, 2, 2});
  for (int a : {1, -1})
    for (int b : {1, -1}) {
      const double p = probability(w, tchoi(povm_element(half_proj(pauli::z(), a))),
                                   tchoi(povm_element(half_proj(pauli::z(), b))));
      EXPECT_NEAR(p, a == b ? 0.5 : 0.0, 1e-12);
    }
}

TEST(StateProcess, ProductStateIsDeterministic) {
  const auto w = state_process(ComplexMatrix::projector(ComplexVector::basis(4, 0)),
                               SubsystemDims{2, 2, 2, 2});
  const double p = probability(w, tchoi(povm_element(half_proj(pauli::z(), 1))),
                               tchoi(povm_element(half_proj(pauli::z(), 1))));
  EXPECT_NEAR(p, 1.0, 1e-12);
}

TEST(StateProcess, RejectsInvalidState) {
  EXPECT_THROW(state_process(pauli::z(), SubsystemDims{1, 2, 2, 2}), std::invalid_argument);
  EXPECT_THROW(state_process(ComplexMatrix::identity(4), SubsystemDims{2, 2, 2, 2}),
               std::invalid_argument);
}

TEST(ChannelProcess, IdentityChannelMatchesSequentialComposition) {
  Rng rng(32);
  const auto rho = ComplexMatrix::projector(ComplexVector::basis(2, 0));
  const auto id = Operation::unitary(pauli::i2());
  const auto w = channel_process(rho, tchoi(id));
  for (int trial = 0; trial < 50; ++trial) {
    const auto alice = random_instrument(2, 2, 2, 2, rng);
    const auto bob = random_instrument(2, 2, 3, 1, rng);
    for (const auto& ma : alice.elements)
      for (const auto& nb : bob.elements)
        EXPECT_NEAR(probability(w, tchoi(ma), tchoi(nb)), direct_b_to_a(rho, nb, id, ma), 1e-9);
  }
}

TEST(ChannelProcess, RandomChannelsBothDirections) {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = random_density(2, rng);
    const auto chan = random_cptp(2, 2, 2, rng);
    const auto ma = random_operation(2, 2, 2, rng);
    const auto nb = random_operation(2, 2, 2, rng);
    const auto w_ba = channel_process(rho, tchoi(chan));
    EXPECT_NEAR(probability(w_ba, tchoi(ma), tchoi(nb)), direct_b_to_a(rho, nb, chan, ma), 1e-9);
    const auto w_ab = channel_process(rho, tchoi(chan), 2, SignalDirection::kAToB);
    EXPECT_NEAR(probability(w_ab, tchoi(ma), tchoi(nb)), direct_b_to_a(rho, ma, chan, nb), 1e-9);
  }
}

TEST(ChannelProcess, UnequalDimensions) {
  Rng rng(34);
  // B_I = 3, B_O = 2, A_I = 3, A_O = 2
  const auto rho = random_density(3, rng);
  const auto chan = random_cptp(2, 3, 2, rng);
  const auto w = channel_process(rho, tchoi(chan), 2);
  EXPECT_EQ(w.dims(), (SubsystemDims{3, 2, 3, 2}));
  for (int trial = 0; trial < 10; ++trial) {
    const auto ma = random_operation(3, 2, 2, rng);
    const auto nb = random_operation(3, 2, 2, rng);
    EXPECT_NEAR(probability(w, tchoi(ma), tchoi(nb)), direct_b_to_a(rho, nb, chan, ma), 1e-9);
  }
}

TEST(ChannelProcess, DepolarizingHidesBobsOutput) {
  Rng rng(35);
  // completely depolarizing: Choi = 1/2 (plain)
  const ChoiOperator dep(2, 2, ComplexMatrix::identity(4) * complex_t(0.5), ChoiConvention::kPlain);
  const auto w = channel_process(random_density(2, rng), dep);
  const auto alice0 = tchoi(povm_element(half_proj(pauli::z(), 1)));
  const auto alice1 = tchoi(povm_element(half_proj(pauli::z(), -1)));
  for (int trial = 0; trial < 10; ++trial) {
    const auto bob = tchoi(random_cptp(2, 2, 2, rng));
    EXPECT_NEAR(probability(w, alice0, bob), 0.5, 1e-9);
    EXPECT_NEAR(probability(w, alice1, bob), 0.5, 1e-9);
  }
}

TEST(ChannelProcess, FullInstrumentsSumToOne) {
  Rng rng(36);
  const auto w = channel_process(random_density(2, rng), tchoi(random_cptp(2, 2, 3, rng)));
  const auto alice = random_instrument(2, 2, 3, 2, rng);
  const auto bob = random_instrument(2, 2, 2, 2, rng);
  double total = 0;
  for (const auto& ma : alice.elements)
    for (const auto& nb : bob.elements)
      total += probability(w, tchoi(ma), tchoi(nb));
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(ChannelProcess, RejectsNonCptp) {
  const ChoiOperator half(2, 2, ComplexMatrix::identity(4) * complex_t(0.25), ChoiConvention::kPlain);
  EXPECT_THROW(channel_process(pauli::i2() * complex_t(0.5), half), std::invalid_argument);
}

TEST(ChannelProcess, SignalingDiagnostic) {
  Rng rng(37);
  const auto chan = tchoi(random_cptp(2, 2, 1, rng));
  const auto rho = random_density(2, rng);
  const auto w_ba = channel_process(rho, chan);
  EXPECT_TRUE(cannot_signal_from(w_ba, Party::kA));
  EXPECT_FALSE(cannot_signal_from(w_ba, Party::kB));
  const auto w_ab = channel_process(rho, chan, 2, SignalDirection::kAToB);
  EXPECT_TRUE(cannot_signal_from(w_ab, Party::kB));
  EXPECT_FALSE(cannot_signal_from(w_ab, Party::kA));
  EXPECT_FALSE(cannot_signal_from(ocb_process(), Party::kA));
  EXPECT_FALSE(cannot_signal_from(ocb_process(), Party::kB));
}

TEST(Probability, Bilinear) {
  Rng rng(38);
  const auto w = ocb_process();
  const auto m1 = tchoi(random_operation(2, 2, 2, rng)), m2 = tchoi(random_operation(2, 2, 2, rng));
  const auto n = tchoi(random_operation(2, 2, 2, rng));
  const double a = 0.3, b = 0.6;
  EXPECT_NEAR(probability(w, a * m1 + b * m2, n),
              a * probability(w, m1, n) + b * probability(w, m2, n), 1e-12);
  EXPECT_NEAR(probability(w, n, a * m1 + b * m2),
              a * probability(w, n, m1) + b * probability(w, n, m2), 1e-12);
}

TEST(CausalMixture, EndpointsAndValidity) {
  Rng rng(39);
  const auto chan = tchoi(random_cptp(2, 2, 2, rng));
  const auto w1 = channel_process(random_density(2, rng), chan);
  const auto w2 = channel_process(random_density(2, rng), chan, 2, SignalDirection::kAToB);
  EXPECT_TRUE(causal_mixture(w1, w2, 1.0).matrix().approx_equal(w1.matrix()));
  EXPECT_TRUE(causal_mixture(w1, w2, 0.0).matrix().approx_equal(w2.matrix()));
  const auto mid = causal_mixture(w1, w2, 0.5);
  EXPECT_NEAR(mid.matrix().trace().real(), 4.0, 1e-9);
  const auto v = validate_process(mid, 50, rng);
  EXPECT_TRUE(v.psd);
  EXPECT_TRUE(v.trace_ok);
  EXPECT_LT(v.max_norm_deviation, 1e-8);
  EXPECT_THROW(causal_mixture(w1, w2, 1.5), std::invalid_argument);
  EXPECT_THROW(causal_mixture(w1, w2, -0.1), std::invalid_argument);
}

TEST(HsBasis, Orthogonality) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto b = hs_basis(d);
    ASSERT_EQ(b.elements.size(), d * d);
    EXPECT_TRUE(b.elements[0].approx_equal(ComplexMatrix::identity(d)));
    for (std::size_t i = 0; i < d * d; ++i) {
      EXPECT_TRUE(is_hermitian(b.elements[i]));
      if (i > 0) {
        EXPECT_NEAR(std::abs(b.elements[i].trace()), 0, 1e-12);
      }
      for (std::size_t j = 0; j < d * d; ++j)
        EXPECT_NEAR(std::abs(hs_inner(b.elements[i], b.elements[j]) -
                             complex_t(i == j ? double(d) : 0.0)),
                    0, 1e-12);
    }
  }
  const auto q = hs_basis(2);
  EXPECT_TRUE(q.elements[1].approx_equal(pauli::x()));
  EXPECT_TRUE(q.elements[2].approx_equal(pauli::y()));
  EXPECT_TRUE(q.elements[3].approx_equal(pauli::z()));
}

TEST(HsDecompose, ScaledIdentity) {
  const ProcessMatrix w(SubsystemDims{2, 2, 2, 2}, ComplexMatrix::identity(16) * complex_t(0.25));
  const auto c = hs_decompose(w);
  for (std::size_t f = 0; f < c.values.size(); ++f)
    EXPECT_NEAR(std::abs(c.values[f] - complex_t(f == 0 ? 0.25 : 0.0)), 0, 1e-12);
}

TEST(HsDecompose, OcbHasThreeTerms) {
  const auto c = hs_decompose(ocb_process());
  const double t = 1 / (4 * std::sqrt(2.0));
  // indices: 0 = 1, 1 = X, 2 = Y, 3 = Z
  EXPECT_NEAR(c.at(0, 0, 0, 0).real(), 0.25, 1e-12);
  EXPECT_NEAR(c.at(0, 3, 3, 0).real(), t, 1e-12);
  EXPECT_NEAR(c.at(3, 0, 1, 3).real(), t, 1e-12);
  int nonzero = 0;
  for (const auto& v : c.values) {
    EXPECT_NEAR(v.imag(), 0, 1e-12);
    if (std::abs(v) > 1e-12)
      ++nonzero;
  }
  EXPECT_EQ(nonzero, 3);
}

TEST(HsDecompose, RoundTripRandomHermitian) {
  Rng rng(40);
  for (const SubsystemDims& dims : {SubsystemDims{2, 2, 2, 2}, SubsystemDims{3, 2, 2, 3}}) {
    const ProcessMatrix w(dims, random_hermitian(dims.total(), rng));
    const auto c = hs_decompose(w);
    for (const auto& v : c.values)
      EXPECT_NEAR(v.imag(), 0, 1e-9);
    EXPECT_LE(hs_reconstruct(c).max_deviation(w.matrix()), 1e-9);
  }
}

TEST(ValidateProcess, OcbPasses) {
  Rng rng(41);
  const auto v = validate_process(ocb_process(), 500, rng);
  EXPECT_TRUE(v.psd);
  EXPECT_TRUE(v.trace_ok);
  EXPECT_LT(v.max_norm_deviation, 1e-8);
  EXPECT_GE(min_eigenvalue(ocb_process().matrix()), -1e-9);
}

TEST(ValidateProcess, WrongTraceDetected) {
  Rng rng(42);
  const ProcessMatrix w(SubsystemDims{2, 2, 2, 2}, ComplexMatrix::identity(16) * complex_t(0.125));
  const auto v = validate_process(w, 10, rng);
  EXPECT_FALSE(v.trace_ok);
  EXPECT_GT(v.max_norm_deviation, 0.4);
}

TEST(ValidateProcess, StateProcessPasses) {
  Rng rng(43);
  const auto w = state_process(random_density(4, rng), SubsystemDims{2, 2, 2, 2});
  const auto v = validate_process(w, 50, rng);
  EXPECT_TRUE(v.psd && v.trace_ok);
  EXPECT_LT(v.max_norm_deviation, 1e-8);
  EXPECT_THROW(validate_process(w, 0, rng), std::invalid_argument);
}

TEST(RandomCptpChoi, IsCptpAndTransposed) {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_cptp_choi(2, 3, rng);
    EXPECT_EQ(c.convention(), ChoiConvention::kTransposed);
    EXPECT_TRUE(is_cptp_choi(c));
  }
}

// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcausal/quantum_ops.hpp"

using namespace qcausal;

namespace {

ComplexMatrix ket_bra(std::size_t dim_out, std::size_t i, std::size_t dim_in, std::size_t j) {
  ComplexMatrix m(dim_out, dim_in);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix basis_proj(std::size_t dim, std::size_t k) { return ket_bra(dim, k, dim, k); }

}  // namespace

TEST(ApplyOperation, BitFlip) {
  const auto op = Operation::unitary(pauli::x());
  EXPECT_TRUE(apply_operation(op, basis_proj(2, 0)).approx_equal(basis_proj(2, 1)));
}

TEST(ApplyOperation, CnotPostselectedOnControl) {
  // E1 = |0><11|, E2 = |1><10|
  const Operation op(4, 2, {ket_bra(2, 0, 4, 3), ket_bra(2, 1, 4, 2)});
  EXPECT_FALSE(op.is_trace_preserving());
  const auto out = apply_operation(op, basis_proj(4, 2));
  EXPECT_TRUE(out.approx_equal(basis_proj(2, 1)));
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);

  const auto zero = apply_operation(op, basis_proj(4, 0));
  EXPECT_TRUE(zero.approx_equal(ComplexMatrix(2, 2)));
  EXPECT_TRUE(zero.approx_equal(oracle::kraus_sum_apply(op.kraus(), basis_proj(4, 0))));
}

TEST(ApplyOperation, DimensionMismatch) {
  const auto op = Operation::unitary(pauli::x());
  EXPECT_THROW(apply_operation(op, ComplexMatrix::identity(3)), std::invalid_argument);
}

TEST(ApplyOperation, Linear) {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = random_cptp(3, 2, 3, rng);
    const auto a = random_hermitian(3, rng), b = random_hermitian(3, rng);
    const complex_t alpha(0.7, -0.2);
    const auto lhs = apply_operation(op, a * alpha + b);
    const auto rhs = apply_operation(op, a) * alpha + apply_operation(op, b);
    EXPECT_LE(lhs.max_deviation(rhs), 1e-9);
  }
}

TEST(Operation, RejectsTraceIncreasingKraus) {
  EXPECT_THROW(Operation(2, 2, {pauli::i2() * complex_t(1.1)}), std::invalid_argument);
  EXPECT_THROW(Operation(2, 2, {ComplexMatrix(3, 2)}), std::invalid_argument);
}

TEST(ChoiOfOperation, IdentityTransposed) {
  const auto c = choi_of_operation(Operation::unitary(pauli::i2()), ChoiConvention::kTransposed);
  // |1>><<1| = sum_jk |jj><kk|
  const ComplexVector v{1, 0, 0, 1};
  EXPECT_TRUE(c.matrix().approx_equal(ComplexMatrix::projector(v)));
}

TEST(ChoiOfOperation, UnitaryIsRankOneProjector) {
  Rng rng(2);
  const auto u = random_unitary(3, rng);
  const auto c = choi_of_operation(Operation::unitary(u), ChoiConvention::kPlain);
  EXPECT_EQ(numerical_rank(c.matrix()), 1u);
  // (1 (x) U)|alpha>, |alpha> = sum |ii>
  ComplexVector alpha(9);
  for (std::size_t i = 0; i < 3; ++i)
    alpha[i * 3 + i] = 1;
  const auto v = kron(ComplexMatrix::identity(3), u) * alpha;
  EXPECT_LE(c.matrix().max_deviation(ComplexMatrix::projector(v)), 1e-12);
}

TEST(ChoiOfOperation, TraceOperationGivesIdentity) {
  // Kraus <k| for an orthonormal basis
  std::vector<ComplexMatrix> ks;
  for (std::size_t k = 0; k < 3; ++k)
    ks.push_back(ket_bra(1, 0, 3, k));
  const Operation tr(3, 1, ks);
  const auto c = choi_of_operation(tr, ChoiConvention::kPlain);
  EXPECT_TRUE(c.matrix().approx_equal(ComplexMatrix::identity(3)));
  EXPECT_TRUE(c.matrix().approx_equal(oracle::plain_choi_by_definition(tr)));
}

TEST(ChoiOfOperation, MatchesDefinitionAndTraceIsDin) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = random_cptp(2, 3, 2, rng);
    const auto c = choi_of_operation(op, ChoiConvention::kPlain);
    EXPECT_LE(c.matrix().max_deviation(oracle::plain_choi_by_definition(op)), 1e-12);
    EXPECT_NEAR(c.matrix().trace().real(), 2.0, 1e-9);
    EXPECT_TRUE(c.completely_positive());
  }
}

TEST(ApplyChoi, IdentityAndBitFlip) {
  Rng rng(4);
  const auto id = choi_of_operation(Operation::unitary(pauli::i2()), ChoiConvention::kTransposed);
  const auto rho = random_density(2, rng);
  EXPECT_TRUE(apply_choi(id, rho).approx_equal(rho));
  for (auto conv : {ChoiConvention::kPlain, ChoiConvention::kTransposed}) {
    const auto flip = choi_of_operation(Operation::unitary(pauli::x()), conv);
    EXPECT_TRUE(apply_choi(flip, basis_proj(2, 0)).approx_equal(basis_proj(2, 1)));
  }
}

TEST(ApplyChoi, RoundTripBothConventions) {
  Rng rng(5);
  const auto op = random_operation(2, 2, 3, rng);
  for (auto conv : {ChoiConvention::kPlain, ChoiConvention::kTransposed}) {
    const auto c = choi_of_operation(op, conv);
    double dev = 0;
    for (int s = 0; s < 20; ++s) {
      const auto rho = random_density(2, rng);
      dev = std::max(dev, apply_choi(c, rho).max_deviation(apply_operation(op, rho)));
    }
    EXPECT_LT(dev, 1e-9);
  }
}

TEST(KrausFromChoi, IdentityIsRankOne) {
  const auto c = choi_of_operation(Operation::unitary(pauli::i2()), ChoiConvention::kPlain);
  const auto op = kraus_from_choi(c);
  ASSERT_EQ(op.kraus().size(), 1u);
  const auto& k = op.kraus()[0];
  EXPECT_TRUE((k * k.adjoint()).approx_equal(pauli::i2()));
  EXPECT_NEAR(std::abs(k(0, 1)), 0, 1e-12);
}

TEST(KrausFromChoi, CompletelyDepolarizingHasRankFour) {
  const ChoiOperator c(2, 2, ComplexMatrix::identity(4) * complex_t(0.5), ChoiConvention::kPlain);
  const auto op = kraus_from_choi(c);
  EXPECT_EQ(op.kraus().size(), 4u);
  Rng rng(6);
  const auto rho = random_density(2, rng);
  EXPECT_TRUE(apply_operation(op, rho).approx_equal(pauli::i2() * complex_t(0.5)));
}

TEST(KrausFromChoi, OrthogonalCanonicalForm) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = random_cptp(3, 2, 4, rng);
    const auto c = choi_of_operation(op, ChoiConvention::kTransposed);
    const auto back = kraus_from_choi(c);
    const auto eig = hermitian_eigen(c.matrix());
    EXPECT_EQ(back.kraus().size(), numerical_rank(c.matrix()));
    std::vector<double> lambdas;
    for (auto it = eig.values.rbegin(); it != eig.values.rend(); ++it)
      if (*it > 1e-9)
        lambdas.push_back(*it);
    for (std::size_t i = 0; i < back.kraus().size(); ++i)
      for (std::size_t j = 0; j < back.kraus().size(); ++j) {
        const complex_t ip = hs_inner(back.kraus()[j], back.kraus()[i]);  // Tr(E_i E_j^dagger)
        EXPECT_NEAR(std::abs(ip - complex_t(i == j ? lambdas[i] : 0.0)), 0, 1e-9);
      }
    for (int s = 0; s < 5; ++s) {
      const auto rho = random_density(3, rng);
      EXPECT_LE(apply_operation(back, rho).max_deviation(apply_choi(c, rho)), 1e-9);
    }
  }
}

TEST(KrausFromChoi, RejectsNonCp) {
  // transpose map: its Choi is the swap, eigenvalue -1
  ComplexMatrix swap(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  const ChoiOperator c(2, 2, swap, ChoiConvention::kPlain);
  EXPECT_FALSE(c.completely_positive());
  EXPECT_THROW(kraus_from_choi(c), std::domain_error);
}

TEST(Stinespring, UnitaryChannelHasTrivialEnvironment) {
  Rng rng(8);
  const auto u = random_unitary(2, rng);
  const auto dil = stinespring_dilation(Operation::unitary(u));
  EXPECT_EQ(dil.env_dim, 1u);
  EXPECT_FALSE(dil.projector.has_value());
  EXPECT_TRUE(dil.unitary.approx_equal(u, 1e-12));
}

TEST(Stinespring, SingleProjectorNeedsTwoEnvironmentLevels) {
  const Operation p0(2, 2, {basis_proj(2, 0)});
  const auto dil = stinespring_dilation(p0);
  EXPECT_EQ(dil.env_dim, 2u);
  ASSERT_TRUE(dil.projector.has_value());
  EXPECT_TRUE(is_unitary(dil.unitary));
  // full operator basis |i><j| as inputs
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto e = ket_bra(2, i, 2, j);
      EXPECT_LE(apply_dilation(dil, e).max_deviation(apply_operation(p0, e)), 1e-9);
    }
}

TEST(Stinespring, ReconstructsRandomOperationsOnBasis) {
  Rng rng(9);
  const std::vector<std::array<std::size_t, 3>> shapes{{2, 2, 2}, {2, 3, 1}, {3, 2, 3}, {4, 2, 2}};
  for (const auto& [di, dout, k] : shapes) {
    for (bool decreasing : {false, true}) {
      const auto op = decreasing ? random_operation(di, dout, k + 1, rng)
                                 : random_cptp(di, dout, k + (dout * k < di ? di : 0), rng);
      const auto dil = stinespring_dilation(op);
      EXPECT_TRUE(is_unitary(dil.unitary, 1e-9));
      for (std::size_t i = 0; i < di; ++i)
        for (std::size_t j = 0; j < di; ++j) {
          const auto e = ket_bra(di, i, di, j);
          EXPECT_LE(apply_dilation(dil, e).max_deviation(apply_operation(op, e)), 1e-9);
        }
    }
  }
}

TEST(Stinespring, OpenSystemKrausRoundTrip) {
  Rng rng(10);
  const std::size_t ds = 2, de = 3;
  const auto u = random_unitary(ds * de, rng);
  const auto sigma = random_density(de, rng);
  // project the environment away from its last level
  ComplexMatrix pe = ComplexMatrix::identity(de);
  pe(2, 2) = 0;
  const auto p = kron(ComplexMatrix::identity(ds), pe);
  const auto op = open_system_operation(u, sigma, p, ds, de);
  const auto dil = stinespring_dilation(op);
  for (int s = 0; s < 5; ++s) {
    const auto rho = random_density(ds, rng);
    // Tr_E[P U (rho (x) sigma) U^dagger P] composed directly
    const auto big = p * u * kron(rho, sigma) * u.adjoint() * p;
    const auto direct = oracle::partial_trace_loops(big, {ds, de}, {true, false});
    EXPECT_LE(apply_operation(op, rho).max_deviation(direct), 1e-9);
    EXPECT_LE(apply_dilation(dil, rho).max_deviation(direct), 1e-9);
  }
}

TEST(ChoiVector, Examples) {
  EXPECT_TRUE(choi_vector_of_unitary(pauli::i2()).approx_equal(ComplexVector{1, 0, 0, 1}));
  EXPECT_TRUE(choi_vector_of_unitary(pauli::x()).approx_equal(ComplexVector{0, 1, 1, 0}));
  const complex_t i(0, 1);
  EXPECT_TRUE(choi_vector_of_unitary(pauli::y()).approx_equal(ComplexVector{0, -i, i, 0}));
  EXPECT_THROW(choi_vector_of_unitary(ComplexMatrix{{1, 1}, {0, 1}}), std::invalid_argument);
}

TEST(Tomographic, DualityHolds) {
  const auto rho = tomographic_basis();
  const auto d = tomographic_duals();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(std::abs(hs_inner(d[i], rho[j]) - complex_t(i == j ? 1.0 : 0.0)), 0, 1e-15);
}

TEST(Tomographic, IdentityImagesReconstructInput) {
  Rng rng(12);
  const auto rho = random_density(2, rng);
  EXPECT_TRUE(tomographic_apply(tomographic_basis(), rho).approx_equal(rho, 1e-12));
}

TEST(Tomographic, ZConjugationOfX) {
  const auto op = Operation::unitary(pauli::z());
  const auto out = tomographic_apply(tomographic_images(op), pauli::x());
  EXPECT_TRUE(out.approx_equal(pauli::x() * complex_t(-1), 1e-12));
  EXPECT_TRUE(out.approx_equal(pauli::z() * pauli::x() * pauli::z(), 1e-12));
}

TEST(Tomographic, AgreesWithDirectApplicationOnOperators) {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = random_cptp(2, 3, 2, rng);
    const auto a = random_ginibre(2, 2, rng);
    EXPECT_LE(tomographic_apply(tomographic_images(op), a).max_deviation(apply_operation(op, a)),
              1e-9);
  }
}

TEST(Instrument, Validation) {
  const Instrument proj{2, 2, {Operation(2, 2, {basis_proj(2, 0)}),
                               Operation(2, 2, {basis_proj(2, 1)})}};
  EXPECT_TRUE(validate_instrument(proj));
  const Instrument unit{2, 2, {Operation::unitary(pauli::y())}};
  EXPECT_TRUE(validate_instrument(unit));
  const Instrument partial{2, 2, {Operation(2, 2, {basis_proj(2, 0)})}};
  EXPECT_FALSE(validate_instrument(partial));
  Rng rng(14);
  EXPECT_TRUE(validate_instrument(random_instrument(2, 3, 3, 2, rng)));
}

TEST(RandomCptp, IsTracePreserving) {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial)
    EXPECT_TRUE(random_cptp(3, 2, 2, rng).is_trace_preserving());
  EXPECT_THROW(random_cptp(4, 1, 2, rng), std::invalid_argument);
}

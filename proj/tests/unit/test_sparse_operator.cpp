/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include <gtest/gtest.h>

#include <random>

#include "kvqe/error.hpp"
#include "kvqe/jordan_wigner.hpp"
#include "kvqe/sparse_operator.hpp"
#include "oracles.hpp"

using namespace kvqe;

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace

TEST(SectorBasis, Sizes) {
  const SpinOrbitalMap modes{2, 3};
  EXPECT_EQ(SectorBasis(modes, {6}).size(), binomial(12, 6));
  EXPECT_EQ(SectorBasis(modes, {6, 0}).size(), binomial(6, 3) * binomial(6, 3));
  EXPECT_EQ(SectorBasis::spin_resolved(modes, 3, 2).size(), binomial(6, 3) * binomial(6, 2));
  EXPECT_EQ(SectorBasis::full(5).size(), 32u);
  std::size_t total = 0;
  for (int r = 0; r < 3; ++r)
    total += SectorBasis(modes, {6, 0, r}).size();
  EXPECT_EQ(total, binomial(6, 3) * binomial(6, 3));
}

TEST(SectorBasis, PositionGatherScatter) {
  const SpinOrbitalMap modes{1, 2};
  const SectorBasis basis(modes, {2, 0});
  ASSERT_EQ(basis.size(), 4u);
  for (std::size_t i = 0; i < basis.size(); ++i)
    EXPECT_EQ(basis.position(basis.indices()[i]), static_cast<std::int64_t>(i));
  EXPECT_EQ(basis.position(0b0101), -1);
  std::vector<cplx> c = {1.0, cplx(0, 2), 3.0, 4.0};
  const auto s = basis.scatter(c);
  EXPECT_EQ(basis.gather(s), c);
}

TEST(SparseOperator, MatchesApplyOperatorInsideSector) {
  const auto ints = load_integrals(kvqe::testing::refdata("hchain_nk3/R1.40.kint.json"));
  const auto h = jordan_wigner(build_hamiltonian(ints), ints.n_qubits());
  const SectorBasis basis(ints.spin_orbitals(), {ints.n_elec(), 0});
  const SparseOperator sparse(h, basis);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::vector<cplx> c(basis.size());
  for (auto &x : c)
    x = {g(rng), g(rng)};
  const auto s = basis.scatter(c);
  const auto full = apply_operator(s, h);
  const auto proj = sparse.apply(s);
  // H conserves N and Sz, so nothing leaks out of the sector.
  for (std::size_t i = 0; i < s.dimension(); ++i)
    EXPECT_NEAR(std::abs(full[i] - proj[i]), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(sparse.expectation(s) - expectation(s, h)), 0.0, 1e-9);
}

TEST(SparseOperator, DenseIsHermitianProjection) {
  const auto ints = load_integrals(kvqe::testing::refdata("dimer_nk2/shift0.25.kint.json"));
  const auto h = jordan_wigner(build_hamiltonian(ints), ints.n_qubits());
  const SectorBasis basis(ints.spin_orbitals(), {4, 0});
  const SparseOperator sparse(h, basis);
  const Eigen::MatrixXcd d = sparse.dense();
  EXPECT_LE((d - d.adjoint()).norm(), 1e-12);
  const Eigen::MatrixXcd fock = kvqe::testing::dense_hamiltonian(ints);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      EXPECT_NEAR(std::abs(d(i, j) - fock(basis.indices()[i], basis.indices()[j])), 0.0, 1e-12);
}

TEST(SparseOperator, RejectsWrongSizes) {
  const SectorBasis basis(SpinOrbitalMap{1, 2}, {2});
  EXPECT_THROW(SparseOperator(PauliSum::identity(3), basis), SizeMismatch);
  const SparseOperator op(PauliSum::identity(4), basis);
  std::vector<cplx> x(2), y(basis.size());
  EXPECT_THROW(op.multiply(x, y), SizeMismatch);
  EXPECT_THROW(basis.scatter(x), SizeMismatch);
}

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "kvqe/error.hpp"
#include "kvqe/pauli.hpp"

using namespace kvqe;

namespace {

Eigen::Matrix2cd letter_matrix(char c) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  switch (c) {
  case 'X': m << 0, 1, 1, 0; break;
  case 'Y': m << 0, -i, i, 0; break;
  case 'Z': m << 1, 0, 0, -1; break;
  default: m.setIdentity();
  }
  return m;
}

// Kronecker product with qubit 0 as the least significant bit.
Eigen::MatrixXcd dense(const PauliString &p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < p.n_qubits; ++q) {
    const Eigen::Matrix2cd l = letter_matrix(p.letter(q));
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = l(a, b) * m;
    m = next;
  }
  return m;
}

std::vector<PauliString> all_strings(int n) {
  std::vector<PauliString> out;
  for (std::uint64_t x = 0; x < (1u << n); ++x)
    for (std::uint64_t z = 0; z < (1u << n); ++z)
      out.push_back({n, x, z});
  return out;
}

} // namespace

TEST(PauliString, ParseAndPrint) {
  const auto p = PauliString::parse("XYIZ");
  EXPECT_EQ(p.n_qubits, 4);
  EXPECT_EQ(p.x, 0b0011u);
  EXPECT_EQ(p.z, 0b1010u);
  EXPECT_EQ(p.to_string(), "XYIZ");
  EXPECT_EQ(p.weight(), 3);
  EXPECT_THROW(PauliString::parse("XQ"), Error);
  EXPECT_THROW(PauliString::single(2, 2, 'X'), IndexOutOfRange);
}

TEST(PauliProduct, XTimesZIsMinusIY) {
  const auto r = pauli_product(PauliString::parse("X"), PauliString::parse("Z"));
  EXPECT_EQ(r.string, PauliString::parse("Y"));
  EXPECT_NEAR(std::abs(r.phase() - cplx(0, -1)), 0.0, 1e-15);
}

TEST(PauliProduct, SquaresToIdentity) {
  for (const auto &p : all_strings(2)) {
    const auto r = pauli_product(p, p);
    EXPECT_TRUE(r.string.is_identity());
    EXPECT_EQ(r.phase_power, 0);
  }
}

TEST(PauliProduct, MatchesDenseOnThreeQubits) {
  const auto strings = all_strings(3);
  for (std::size_t i = 0; i < strings.size(); i += 7)
    for (std::size_t j = 0; j < strings.size(); j += 5) {
      const auto &a = strings[i];
      const auto &b = strings[j];
      const auto r = pauli_product(a, b);
      EXPECT_LE((r.phase() * dense(r.string) - dense(a) * dense(b)).norm(), 1e-12);
      const Eigen::MatrixXcd comm = dense(a) * dense(b) - dense(b) * dense(a);
      EXPECT_EQ(commutes(a, b), comm.norm() < 1e-12) << a.to_string() << " " << b.to_string();
    }
}

TEST(PauliProduct, RejectsSizeMismatch) {
  EXPECT_THROW(pauli_product(PauliString::parse("X"), PauliString::parse("XX")), SizeMismatch);
  PauliSum a(2), b(3);
  EXPECT_THROW(a += b, SizeMismatch);
}

TEST(PauliSum, AlgebraAndHermiticity) {
  PauliSum a = PauliSum::from_string(PauliString::parse("XI"), 0.5) +
               PauliSum::from_string(PauliString::parse("ZZ"), cplx(0, 2));
  EXPECT_FALSE(a.is_hermitian());
  EXPECT_TRUE(a.adjoint().approx_equal(
      PauliSum::from_string(PauliString::parse("XI"), 0.5) +
      PauliSum::from_string(PauliString::parse("ZZ"), cplx(0, -2))));
  const PauliSum sq = a * a;
  // {XI, ZZ} anticommute so the cross terms cancel.
  EXPECT_TRUE(sq.approx_equal(PauliSum::identity(2, 0.25 - 4.0)));
  PauliSum zero = a - a;
  EXPECT_TRUE(zero.empty());
  EXPECT_NEAR(a.max_abs_coefficient(), 2.0, 1e-15);
}

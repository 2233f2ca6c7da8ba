/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/jordan_wigner.hpp"

#include "kvqe/error.hpp"

namespace kvqe {

PauliSum jordan_wigner(const LadderOp &op, int n_qubits) {
  if (op.mode < 0 || op.mode >= n_qubits)
    throw IndexOutOfRange("mode " + std::to_string(op.mode) + " outside " +
                          std::to_string(n_qubits) + "-qubit register");
  const std::uint64_t bit = std::uint64_t{1} << op.mode;
  const std::uint64_t parity = bit - 1;
  // X_j Z_<j and Y_j Z_<j, each with unit phase under P = i^{|x z|} X^x Z^z.
  const PauliString xs{n_qubits, bit, parity};
  const PauliString ys{n_qubits, bit, parity | bit};
  PauliSum out(n_qubits);
  out.add(xs, 0.5);
  out.add(ys, op.dagger ? cplx(0, -0.5) : cplx(0, 0.5));
  return out;
}

PauliSum jordan_wigner(const FermionOperator &op, int n_qubits) {
  PauliSum out(n_qubits);
  for (const auto &[term, coeff] : op.terms()) {
    PauliSum prod = PauliSum::identity(n_qubits, coeff);
    for (const auto &ladder : term)
      prod = prod * jordan_wigner(ladder, n_qubits);
    out += prod;
  }
  return out;
}

} // namespace kvqe

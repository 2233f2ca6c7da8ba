/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include "kvqe/fermion.hpp"
#include "kvqe/pauli.hpp"

namespace kvqe {

/// Jordan-Wigner image of a single ladder operator:
///   c_j  = (X_j + i Y_j)/2 Z_{j-1} ... Z_0
///   c+_j = (X_j - i Y_j)/2 Z_{j-1} ... Z_0
PauliSum jordan_wigner(const LadderOp &op, int n_qubits);
PauliSum jordan_wigner(const FermionOperator &op, int n_qubits);

} // namespace kvqe

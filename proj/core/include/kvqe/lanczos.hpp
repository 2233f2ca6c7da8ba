/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace kvqe {

using MatVec = std::function<void(const Eigen::VectorXcd &x, Eigen::VectorXcd &y)>;

struct LanczosSettings {
  double residual_tolerance = 1e-10;
  int max_krylov = 600;
  unsigned seed = 20240531u;
};

struct LanczosResult {
  std::vector<double> values;            // ascending
  std::vector<Eigen::VectorXcd> vectors; // orthonormal
  std::vector<double> residuals;         // ||A v - lambda v||
};

/// Lowest n_states eigenpairs of a Hermitian operator of dimension dim.
/// Eigenpairs are found one at a time: each converged vector is locked and
/// the next run works in its orthogonal complement, so degenerate levels
/// come out with their multiplicity. Every run keeps full
/// reorthogonalization against the Krylov basis.
LanczosResult lanczos_lowest(const MatVec &op, Eigen::Index dim, int n_states,
                             const LanczosSettings &settings = {});

} // namespace kvqe

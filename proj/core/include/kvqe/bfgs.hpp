/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kvqe {

/// Value-and-gradient callback: returns f(x) and writes grad f(x).
using Objective = std::function<double(const Eigen::VectorXd &x, Eigen::VectorXd &grad)>;

struct BfgsSettings {
  double gradient_tolerance = 1e-6; // infinity norm
  int max_iterations = 10000;
  double c1 = 1e-4; // sufficient decrease
  double c2 = 0.9;  // curvature
  int max_line_search_evaluations = 40;
};

enum class BfgsStatus { Converged, MaxIterations, LineSearchFailure };
std::string to_string(BfgsStatus s);

struct BfgsStep {
  double value = 0.0;
  double gradient_norm = 0.0; // infinity norm
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd gradient;
  BfgsStatus status = BfgsStatus::MaxIterations;
  int iterations = 0;
  int evaluations = 0;
  /// Entry 0 is the starting point, then one entry per accepted step.
  std::vector<BfgsStep> trace;
  bool converged() const noexcept { return status == BfgsStatus::Converged; }
};

/// Quasi-Newton minimization with a strong-Wolfe line search.
BfgsResult bfgs_minimize(const Objective &f, Eigen::VectorXd x0, const BfgsSettings &settings = {});

} // namespace kvqe

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "kvqe/ansatz.hpp"
#include "kvqe/bfgs.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/sparse_operator.hpp"
#include "kvqe/statevector.hpp"

namespace kvqe {

/// Energy objective of a UCC circuit acting on a reference state. The
/// Hamiltonian is compiled once over the symmetry sector spanned by the
/// reference (particle number and Sz), which every ansatz preserves.
class VqeProblem {
public:
  VqeProblem(PauliSum hamiltonian, AnsatzCircuit circuit, StateVector reference,
             BfgsSettings settings = {});

  const PauliSum &hamiltonian() const noexcept { return hamiltonian_; }
  const AnsatzCircuit &circuit() const noexcept { return circuit_; }
  const StateVector &reference() const noexcept { return reference_; }
  const BfgsSettings &settings() const noexcept { return settings_; }
  int n_params() const noexcept { return circuit_.n_params(); }

  StateVector state(std::span<const double> params) const;
  double energy(std::span<const double> params) const;
  std::vector<double> gradient(std::span<const double> params) const;
  /// Energy and adjoint gradient from one forward and one reverse sweep.
  double energy_and_gradient(std::span<const double> params, std::span<double> grad) const;

private:
  void check(std::span<const double> params) const;
  StateVector apply_h(const StateVector &s) const;

  PauliSum hamiltonian_;
  AnsatzCircuit circuit_;
  StateVector reference_;
  BfgsSettings settings_;
  std::optional<SparseOperator> sparse_; // absent when the reference mixes sectors
};

struct VqeResult {
  std::vector<double> params;
  double energy = 0.0;
  std::vector<BfgsStep> trace;
  BfgsStatus status = BfgsStatus::MaxIterations;
  int iterations = 0;
  int evaluations = 0;
  double wall_time_s = 0.0;
  bool converged() const noexcept { return status == BfgsStatus::Converged; }
};

VqeResult minimize(const VqeProblem &problem, std::vector<double> initial);
/// Zero initial parameters (the reference state).
VqeResult minimize(const VqeProblem &problem);

/// {energy, params, trace, converged, wall_time_s} plus status and counters.
nlohmann::json to_json(const VqeResult &r);
VqeResult vqe_result_from_json(const nlohmann::json &doc);

} // namespace kvqe

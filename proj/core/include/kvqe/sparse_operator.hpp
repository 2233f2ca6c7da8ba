/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kvqe/integrals.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/statevector.hpp"

namespace kvqe {

/// Symmetry sector of Fock space: particle number plus optional 2*Sz and
/// crystal-momentum residue (sum of occupied k indices mod n_k).
struct SectorSpec {
  int n_elec = 0;
  std::optional<int> two_sz;
  std::optional<int> k_residue;
};

/// Sorted list of basis indices belonging to a sector.
class SectorBasis {
public:
  SectorBasis() = default;
  SectorBasis(const SpinOrbitalMap &modes, const SectorSpec &spec);
  /// Every basis index of an n-qubit register.
  static SectorBasis full(int n_qubits);
  /// Indices with the given alpha and beta occupation counts.
  static SectorBasis spin_resolved(const SpinOrbitalMap &modes, int n_alpha, int n_beta);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::span<const std::uint64_t> indices() const noexcept { return indices_; }
  /// Position of a full-register index, or -1 if outside the sector.
  std::int64_t position(std::uint64_t index) const noexcept;

  std::vector<cplx> gather(const StateVector &s) const;
  StateVector scatter(std::span<const cplx> coeffs) const;

private:
  int n_qubits_ = 0;
  std::vector<std::uint64_t> indices_;
};

/// Pauli-sum operator compiled to compressed sparse rows over a sector basis.
/// Matrix elements leaving the sector are dropped, so this is the projected
/// operator P O P.
class SparseOperator {
public:
  SparseOperator(const PauliSum &op, SectorBasis basis);

  const SectorBasis &basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// y = O x in sector coordinates.
  void multiply(std::span<const cplx> x, std::span<cplx> y) const;
  /// O|s> on a full register state; amplitudes outside the sector are ignored.
  StateVector apply(const StateVector &s) const;
  cplx expectation(const StateVector &s) const;
  /// Dense sector matrix (small sectors only).
  Eigen::MatrixXcd dense() const;

private:
  SectorBasis basis_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> columns_;
  std::vector<cplx> values_;
};

} // namespace kvqe

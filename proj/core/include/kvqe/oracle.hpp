/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <span>
#include <vector>

#include "kvqe/integrals.hpp"
#include "kvqe/lanczos.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/sparse_operator.hpp"
#include "kvqe/statevector.hpp"

namespace kvqe {

struct OracleSettings {
  /// Sectors up to this dimension are diagonalized densely.
  std::size_t dense_limit = 4096;
  double residual_tolerance = 1e-9;
};

struct Eigenpairs {
  std::vector<double> energies; // ascending
  std::vector<StateVector> states;
  std::vector<double> residuals;
};

/// Lowest n_states eigenpairs of H projected onto a sector.
Eigenpairs sector_eigenpairs(const PauliSum &h, const SectorBasis &basis, int n_states,
                             const OracleSettings &settings = {});

struct GroundState {
  double energy = 0.0;
  StateVector state;
  double residual = 0.0;
};

GroundState fci_ground(const PauliSum &h, const SectorBasis &basis,
                       const OracleSettings &settings = {});
GroundState fci_ground(const PauliSum &h, const SpinOrbitalMap &modes, const SectorSpec &sector,
                       const OracleSettings &settings = {});

std::vector<double> sector_spectrum(const PauliSum &h, const SpinOrbitalMap &modes,
                                    const SectorSpec &sector, int n_states,
                                    const OracleSettings &settings = {});

/// All sector ground states within degeneracy_tol of the lowest energy
/// (at most max_states).
Eigenpairs ground_manifold(const PauliSum &h, const SectorBasis &basis,
                           double degeneracy_tol = 1e-8, int max_states = 8,
                           const OracleSettings &settings = {});

/// |<a|b>|.
double fidelity(const StateVector &a, const StateVector &b);
/// Norm of the projection of a onto the span of orthonormal states.
double subspace_fidelity(const StateVector &a, std::span<const StateVector> subspace);

struct CrystalMomentum {
  cplx translation;   // <T_L>
  double modulus = 0; // |<T_L>|, 1 for a momentum eigenstate
  double k = 0;       // arg(<T_L>) / L, radians per Bohr
  /// K L / pi with K L = -i log<T_L>; the imaginary part is -log|<T_L>| / pi.
  cplx kl_over_pi;
};

/// T_L is diagonal in the occupation basis with phase
/// exp(i 2 pi sum_occupied (k + shift) / n_k).
CrystalMomentum crystal_momentum(const StateVector &s, const SpinOrbitalMap &modes,
                                 const KMesh &mesh);

} // namespace kvqe

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "kvqe/integrals.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/sparse_operator.hpp"
#include "kvqe/statevector.hpp"

namespace kvqe {

enum class PoolKind { IP, EA };

struct PoolOperator {
  int k = 0;
  int orb = 0;
  int spin = 0;
  PauliSum op; // JW image of c (IP) or c+ (EA)
};

/// IP: c_{l k s} over occupied bands l. EA: c+_{b k s} over virtual bands b.
struct SubspaceOperatorPool {
  PoolKind kind = PoolKind::IP;
  std::vector<PoolOperator> ops;
  std::size_t size() const noexcept { return ops.size(); }
};

/// Pool restricted to the given k-point and/or spin when provided.
SubspaceOperatorPool make_pool(const CrystalIntegrals &ints, PoolKind kind,
                               std::optional<int> k = std::nullopt,
                               std::optional<int> spin = std::nullopt);

struct SubspaceMatrices {
  Eigen::MatrixXcd h; // <R_i psi| H |R_j psi>
  Eigen::MatrixXcd s; // <R_i psi|R_j psi>
};

SubspaceMatrices subspace_matrices(const StateVector &psi, const PauliSum &h,
                                   const SubspaceOperatorPool &pool);
/// Same, with H already compiled over a sector containing every R_i psi.
SubspaceMatrices subspace_matrices(const StateVector &psi, const SparseOperator &h,
                                   const SubspaceOperatorPool &pool);

struct GeneralizedSolution {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd vectors;  // columns, S-orthonormal
  int n_discarded = 0;       // metric eigenvalues below the threshold
  double condition_number = 0.0; // of the retained metric
};

inline constexpr double kDefaultMetricThreshold = 1e-8;

/// Canonical orthogonalization: H C = S C E on the metric eigenvectors
/// whose eigenvalues are >= metric_threshold.
GeneralizedSolution solve_generalized(const Eigen::MatrixXcd &h, const Eigen::MatrixXcd &s,
                                      double metric_threshold = kDefaultMetricThreshold);

/// Distinct matrix elements for blocks of the given sizes: m (m + 1) / 2 for
/// each of H^sub and S^sub.
std::size_t measurement_count(std::span<const std::size_t> block_sizes);

struct QseSettings {
  double metric_threshold = kDefaultMetricThreshold;
};

struct KBands {
  int k = 0;
  double k_frac = 0.0;
  std::vector<double> valence;    // ascending, before alignment
  std::vector<double> conduction; // ascending, before alignment
  double ip_condition = 0.0;
  double ea_condition = 0.0;
  int ip_discarded = 0;
  int ea_discarded = 0;
};

/// Quasiparticle bands from the spin-up removal and addition blocks at each
/// k-point. valence = E0 - E(N-1), conduction = E(N+1) - E0, with the
/// sector constants of integrals::sector_constant applied to the charged
/// states.
struct BandStructure {
  double e0 = 0.0;
  double alignment = 0.0; // max valence energy; subtract to align
  std::vector<KBands> k_points;
  /// Largest |alpha - beta| difference between matching quasiparticle energies.
  double spin_asymmetry = 0.0;
  std::size_t measurements = 0;
};

BandStructure bands(const StateVector &psi, const PauliSum &h, const CrystalIntegrals &ints,
                    std::span<const int> k_list, const QseSettings &settings = {});
/// All k-points of the mesh.
BandStructure bands(const StateVector &psi, const PauliSum &h, const CrystalIntegrals &ints,
                    const QseSettings &settings = {});

struct DirectGap {
  double value = 0.0;
  int k = 0;
};

/// Smallest min(conduction) - max(valence) over k.
DirectGap direct_gap(const BandStructure &b);

/// Columns k_index,k_frac,band_kind,band_index,energy_hartree,energy_aligned_hartree.
void write_bands_csv(const BandStructure &b, std::ostream &out);
nlohmann::json gap_json(const BandStructure &b);

} // namespace kvqe

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/oracle.hpp"

#include <cmath>
#include <numbers>

#include "kvqe/error.hpp"

namespace kvqe {

Eigenpairs sector_eigenpairs(const PauliSum &h, const SectorBasis &basis, int n_states,
                             const OracleSettings &settings) {
  if (basis.size() == 0)
    throw SectorEmpty("requested sector contains no basis states");
  const SparseOperator op(h, basis);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  n_states = static_cast<int>(std::min<Eigen::Index>(std::max(n_states, 1), dim));

  std::vector<double> values;
  std::vector<Eigen::VectorXcd> vectors;
  if (basis.size() <= settings.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.dense());
    for (int i = 0; i < n_states; ++i) {
      values.push_back(es.eigenvalues()[i]);
      vectors.push_back(es.eigenvectors().col(i));
    }
  } else {
    LanczosSettings ls;
    ls.residual_tolerance = 0.1 * settings.residual_tolerance;
    const auto r = lanczos_lowest(
        [&](const Eigen::VectorXcd &x, Eigen::VectorXcd &y) {
          op.multiply({x.data(), static_cast<std::size_t>(x.size())},
                      {y.data(), static_cast<std::size_t>(y.size())});
        },
        dim, n_states, ls);
    values = r.values;
    vectors = r.vectors;
  }

  Eigenpairs out;
  Eigen::VectorXcd hv(dim);
  for (int i = 0; i < n_states; ++i) {
    op.multiply({vectors[i].data(), static_cast<std::size_t>(dim)},
                {hv.data(), static_cast<std::size_t>(dim)});
    out.energies.push_back(values[i]);
    out.residuals.push_back((hv - values[i] * vectors[i]).norm());
    StateVector s = basis.scatter({vectors[i].data(), static_cast<std::size_t>(dim)});
    s.mark_normalized(true);
    out.states.push_back(std::move(s));
  }
  return out;
}

GroundState fci_ground(const PauliSum &h, const SectorBasis &basis,
                       const OracleSettings &settings) {
  Eigenpairs e = sector_eigenpairs(h, basis, 1, settings);
  return {e.energies[0], std::move(e.states[0]), e.residuals[0]};
}

GroundState fci_ground(const PauliSum &h, const SpinOrbitalMap &modes, const SectorSpec &sector,
                       const OracleSettings &settings) {
  return fci_ground(h, SectorBasis(modes, sector), settings);
}

std::vector<double> sector_spectrum(const PauliSum &h, const SpinOrbitalMap &modes,
                                    const SectorSpec &sector, int n_states,
                                    const OracleSettings &settings) {
  return sector_eigenpairs(h, SectorBasis(modes, sector), n_states, settings).energies;
}

Eigenpairs ground_manifold(const PauliSum &h, const SectorBasis &basis, double degeneracy_tol,
                           int max_states, const OracleSettings &settings) {
  Eigenpairs e = sector_eigenpairs(h, basis, max_states, settings);
  std::size_t keep = 1;
  while (keep < e.energies.size() && e.energies[keep] - e.energies[0] <= degeneracy_tol)
    ++keep;
  e.energies.resize(keep);
  e.states.resize(keep);
  e.residuals.resize(keep);
  return e;
}

double fidelity(const StateVector &a, const StateVector &b) {
  return std::min(1.0, std::abs(inner_product(a, b)));
}

double subspace_fidelity(const StateVector &a, std::span<const StateVector> subspace) {
  double sq = 0.0;
  for (const auto &v : subspace)
    sq += std::norm(inner_product(v, a));
  return std::min(1.0, std::sqrt(sq));
}

CrystalMomentum crystal_momentum(const StateVector &s, const SpinOrbitalMap &modes,
                                 const KMesh &mesh) {
  if (modes.n_qubits() != s.n_qubits())
    throw SizeMismatch("state does not match the spin-orbital layout");
  std::vector<double> frac(modes.n_qubits());
  for (int q = 0; q < modes.n_qubits(); ++q)
    frac[q] = mesh.fraction(modes.mode(q).k);

  cplx t = 0.0;
  for (std::uint64_t b = 0; b < s.dimension(); ++b) {
    const double w = std::norm(s[b]);
    if (w == 0.0)
      continue;
    double phase = 0.0;
    for (std::uint64_t m = b; m; m &= m - 1)
      phase += frac[std::countr_zero(m)];
    // Reduce before exponentiating so large occupations keep full precision.
    phase -= std::floor(phase);
    t += w * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  CrystalMomentum cm;
  cm.translation = t;
  cm.modulus = std::abs(t);
  const double arg = std::arg(t);
  cm.k = arg / mesh.cell_length;
  cm.kl_over_pi = cplx(arg, -std::log(cm.modulus)) / std::numbers::pi;
  return cm;
}

} // namespace kvqe

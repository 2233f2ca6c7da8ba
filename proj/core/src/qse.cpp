/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/qse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "kvqe/error.hpp"
#include "kvqe/jordan_wigner.hpp"

namespace kvqe {

SubspaceOperatorPool make_pool(const CrystalIntegrals &ints, PoolKind kind, std::optional<int> k,
                               std::optional<int> spin) {
  const auto modes = ints.spin_orbitals();
  const int n = ints.n_qubits();
  const int n_occ = ints.n_occupied_bands();
  SubspaceOperatorPool pool;
  pool.kind = kind;
  for (int kk = 0; kk < ints.n_k(); ++kk) {
    if (k && ints.mesh().wrap(*k) != kk)
      continue;
    const int lo = kind == PoolKind::IP ? 0 : n_occ;
    const int hi = kind == PoolKind::IP ? n_occ : ints.n_orb();
    for (int orb = lo; orb < hi; ++orb)
      for (int s = 0; s < 2; ++s) {
        if (spin && *spin != s)
          continue;
        const LadderOp l{modes.qubit(kk, orb, s), kind == PoolKind::EA};
        pool.ops.push_back({kk, orb, s, jordan_wigner(l, n)});
      }
  }
  return pool;
}

namespace {

template <class ApplyH>
SubspaceMatrices build(const StateVector &psi, const SubspaceOperatorPool &pool, ApplyH &&apply_h) {
  const auto m = static_cast<Eigen::Index>(pool.size());
  std::vector<StateVector> r, hr;
  r.reserve(m);
  hr.reserve(m);
  for (const auto &op : pool.ops) {
    if (op.op.n_qubits() != psi.n_qubits())
      throw SizeMismatch("pool operator does not match the state register");
    r.push_back(apply_operator(psi, op.op));
    hr.push_back(apply_h(r.back()));
  }
  SubspaceMatrices out{Eigen::MatrixXcd(m, m), Eigen::MatrixXcd(m, m)};
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      out.s(i, j) = inner_product(r[i], r[j]);
      out.h(i, j) = inner_product(r[i], hr[j]);
      out.s(j, i) = std::conj(out.s(i, j));
      out.h(j, i) = std::conj(out.h(i, j));
    }
  // Diagonals are real by construction; drop roundoff.
  for (Eigen::Index i = 0; i < m; ++i) {
    out.s(i, i) = out.s(i, i).real();
    out.h(i, i) = out.h(i, i).real();
  }
  return out;
}

} // namespace

SubspaceMatrices subspace_matrices(const StateVector &psi, const PauliSum &h,
                                   const SubspaceOperatorPool &pool) {
  if (h.n_qubits() != psi.n_qubits())
    throw SizeMismatch("hamiltonian does not match the state register");
  return build(psi, pool, [&](const StateVector &v) { return apply_operator(v, h); });
}

SubspaceMatrices subspace_matrices(const StateVector &psi, const SparseOperator &h,
                                   const SubspaceOperatorPool &pool) {
  if (h.basis().n_qubits() != psi.n_qubits())
    throw SizeMismatch("hamiltonian does not match the state register");
  return build(psi, pool, [&](const StateVector &v) { return h.apply(v); });
}

GeneralizedSolution solve_generalized(const Eigen::MatrixXcd &h, const Eigen::MatrixXcd &s,
                                      double metric_threshold) {
  if (h.rows() != h.cols() || s.rows() != s.cols() || h.rows() != s.rows())
    throw SizeMismatch("subspace matrices must be square and of equal size");
  if (h.rows() == 0)
    throw EmptySubspace("empty subspace");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> metric(s);
  const Eigen::VectorXd &sv = metric.eigenvalues();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] >= metric_threshold && sv[i] > 0.0)
      kept.push_back(i);
  if (kept.empty())
    throw EmptySubspace("every metric eigenvalue is below the threshold");

  const auto r = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd x(s.rows(), r);
  for (Eigen::Index c = 0; c < r; ++c)
    x.col(c) = metric.eigenvectors().col(kept[c]) / std::sqrt(sv[kept[c]]);
  Eigen::MatrixXcd hp = x.adjoint() * h * x;
  hp = 0.5 * (hp + hp.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hp);

  GeneralizedSolution out;
  out.energies = es.eigenvalues();
  out.vectors = x * es.eigenvectors();
  out.n_discarded = static_cast<int>(s.rows() - r);
  out.condition_number = sv[kept.back()] / sv[kept.front()];
  return out;
}

std::size_t measurement_count(std::span<const std::size_t> block_sizes) {
  std::size_t total = 0;
  for (std::size_t m : block_sizes)
    total += m * (m + 1);
  return total;
}

BandStructure bands(const StateVector &psi, const PauliSum &h, const CrystalIntegrals &ints,
                    std::span<const int> k_list, const QseSettings &settings) {
  const auto modes = ints.spin_orbitals();
  const int n = ints.n_elec();
  if (psi.n_qubits() != ints.n_qubits() || h.n_qubits() != ints.n_qubits())
    throw SizeMismatch("state, hamiltonian and integrals disagree on the register size");

  BandStructure out;
  out.e0 = SparseOperator(h, SectorBasis(modes, SectorSpec{n, {}, {}})).expectation(psi).real();
  const double base = sector_constant(n, ints);
  const bool has_virtual = ints.n_occupied_bands() < ints.n_orb();
  const SparseOperator h_minus(h, SectorBasis(modes, SectorSpec{n - 1, {}, {}}));
  std::optional<SparseOperator> h_plus;
  if (has_virtual)
    h_plus.emplace(h, SectorBasis(modes, SectorSpec{n + 1, {}, {}}));
  const double shift_minus = sector_constant(n - 1, ints) - base;
  const double shift_plus = has_virtual ? sector_constant(n + 1, ints) - base : 0.0;

  std::vector<std::size_t> block_sizes;
  auto solve_block = [&](PoolKind kind, int k, int spin, const SparseOperator &op) {
    const auto pool = make_pool(ints, kind, k, spin);
    block_sizes.push_back(pool.size());
    const auto mats = subspace_matrices(psi, op, pool);
    return solve_generalized(mats.h, mats.s, settings.metric_threshold);
  };
  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
  };

  double vmax = -std::numeric_limits<double>::infinity();
  for (int k : k_list) {
    KBands kb;
    kb.k = ints.mesh().wrap(k);
    kb.k_frac = ints.mesh().fraction(kb.k);
    std::vector<double> per_spin[2];
    for (int spin = 0; spin < 2; ++spin) {
      const auto ip = solve_block(PoolKind::IP, kb.k, spin, h_minus);
      std::vector<double> v;
      for (double e : ip.energies)
        v.push_back(out.e0 - (e + shift_minus));
      if (spin == 0) {
        kb.valence = sorted(v);
        kb.ip_condition = ip.condition_number;
        kb.ip_discarded = ip.n_discarded;
      } else {
        per_spin[1] = sorted(v);
      }
    }
    for (std::size_t i = 0; i < kb.valence.size() && i < per_spin[1].size(); ++i)
      out.spin_asymmetry = std::max(out.spin_asymmetry, std::abs(kb.valence[i] - per_spin[1][i]));
    if (has_virtual) {
      for (int spin = 0; spin < 2; ++spin) {
        const auto ea = solve_block(PoolKind::EA, kb.k, spin, *h_plus);
        std::vector<double> c;
        for (double e : ea.energies)
          c.push_back(e + shift_plus - out.e0);
        if (spin == 0) {
          kb.conduction = sorted(c);
          kb.ea_condition = ea.condition_number;
          kb.ea_discarded = ea.n_discarded;
        } else {
          per_spin[0] = sorted(c);
        }
      }
      for (std::size_t i = 0; i < kb.conduction.size() && i < per_spin[0].size(); ++i)
        out.spin_asymmetry =
            std::max(out.spin_asymmetry, std::abs(kb.conduction[i] - per_spin[0][i]));
    }
    for (double v : kb.valence)
      vmax = std::max(vmax, v);
    out.k_points.push_back(std::move(kb));
  }
  out.alignment = std::isfinite(vmax) ? vmax : 0.0;
  out.measurements = measurement_count(block_sizes);
  return out;
}

BandStructure bands(const StateVector &psi, const PauliSum &h, const CrystalIntegrals &ints,
                    const QseSettings &settings) {
  std::vector<int> ks(ints.n_k());
  for (int k = 0; k < ints.n_k(); ++k)
    ks[k] = k;
  return bands(psi, h, ints, ks, settings);
}

DirectGap direct_gap(const BandStructure &b) {
  DirectGap g{std::numeric_limits<double>::quiet_NaN(), -1};
  for (const auto &kb : b.k_points) {
    if (kb.valence.empty() || kb.conduction.empty())
      continue;
    const double gap = kb.conduction.front() - kb.valence.back();
    if (g.k < 0 || gap < g.value)
      g = {gap, kb.k};
  }
  return g;
}

void write_bands_csv(const BandStructure &b, std::ostream &out) {
  const auto prec = out.precision();
  out << std::setprecision(12);
  out << "k_index,k_frac,band_kind,band_index,energy_hartree,energy_aligned_hartree\n";
  for (const auto &kb : b.k_points) {
    auto rows = [&](const std::vector<double> &energies, char kind) {
      for (std::size_t i = 0; i < energies.size(); ++i)
        out << kb.k << ',' << kb.k_frac << ',' << kind << ',' << i << ',' << energies[i] << ','
            << energies[i] - b.alignment << '\n';
    };
    rows(kb.valence, 'v');
    rows(kb.conduction, 'c');
  }
  out.precision(prec);
}

nlohmann::json gap_json(const BandStructure &b) {
  const DirectGap g = direct_gap(b);
  nlohmann::json doc = {{"e0_hartree", b.e0},
                        {"alignment_hartree", b.alignment},
                        {"spin_asymmetry_hartree", b.spin_asymmetry},
                        {"measurements", b.measurements}};
  if (g.k >= 0) {
    doc["direct_gap_hartree"] = g.value;
    doc["k_of_gap"] = g.k;
  } else {
    doc["direct_gap_hartree"] = nullptr;
    doc["k_of_gap"] = nullptr;
  }
  return doc;
}

} // namespace kvqe

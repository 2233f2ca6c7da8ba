/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/sparse_operator.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "kvqe/error.hpp"

namespace kvqe {

namespace {

std::uint64_t spin_mask(const SpinOrbitalMap &modes, int spin) {
  std::uint64_t m = 0;
  for (int q = spin; q < modes.n_qubits(); q += 2)
    m |= std::uint64_t{1} << q;
  return m;
}

} // namespace

SectorBasis::SectorBasis(const SpinOrbitalMap &modes, const SectorSpec &spec)
    : n_qubits_(modes.n_qubits()) {
  if (n_qubits_ > 30)
    throw SizeMismatch("sector enumeration supports up to 30 qubits");
  const std::uint64_t alpha = spin_mask(modes, 0);
  std::vector<std::uint64_t> k_masks(modes.n_k, 0);
  for (int q = 0; q < modes.n_qubits(); ++q)
    k_masks[modes.mode(q).k] |= std::uint64_t{1} << q;

  const std::uint64_t dim = std::uint64_t{1} << n_qubits_;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (std::popcount(b) != spec.n_elec)
      continue;
    if (spec.two_sz) {
      const int na = std::popcount(b & alpha);
      if (na - (spec.n_elec - na) != *spec.two_sz)
        continue;
    }
    if (spec.k_residue) {
      int total = 0;
      for (int k = 0; k < modes.n_k; ++k)
        total += k * std::popcount(b & k_masks[k]);
      if (total % modes.n_k != ((*spec.k_residue % modes.n_k) + modes.n_k) % modes.n_k)
        continue;
    }
    indices_.push_back(b);
  }
}

SectorBasis SectorBasis::full(int n_qubits) {
  SectorBasis s;
  s.n_qubits_ = n_qubits;
  s.indices_.resize(std::size_t{1} << n_qubits);
  for (std::uint64_t b = 0; b < s.indices_.size(); ++b)
    s.indices_[b] = b;
  return s;
}

SectorBasis SectorBasis::spin_resolved(const SpinOrbitalMap &modes, int n_alpha, int n_beta) {
  return SectorBasis(modes, SectorSpec{n_alpha + n_beta, n_alpha - n_beta, std::nullopt});
}

std::int64_t SectorBasis::position(std::uint64_t index) const noexcept {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index)
    return -1;
  return it - indices_.begin();
}

std::vector<cplx> SectorBasis::gather(const StateVector &s) const {
  if (s.n_qubits() != n_qubits_)
    throw SizeMismatch("state does not match sector register");
  std::vector<cplx> out(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i)
    out[i] = s[indices_[i]];
  return out;
}

StateVector SectorBasis::scatter(std::span<const cplx> coeffs) const {
  if (coeffs.size() != indices_.size())
    throw SizeMismatch("coefficient count does not match sector size");
  std::vector<cplx> amps(std::size_t{1} << n_qubits_);
  for (std::size_t i = 0; i < indices_.size(); ++i)
    amps[indices_[i]] = coeffs[i];
  return StateVector(n_qubits_, std::move(amps), false);
}

SparseOperator::SparseOperator(const PauliSum &op, SectorBasis basis)
    : basis_(std::move(basis)) {
  if (op.n_qubits() != basis_.n_qubits())
    throw SizeMismatch("operator and sector act on different registers");
  // Group by flip mask: every string with the same x maps row b to column b ^ x.
  std::map<std::uint64_t, std::vector<std::pair<PauliString, cplx>>> groups;
  for (const auto &[p, c] : op.terms())
    groups[p.x].emplace_back(p, c);

  const auto rows = basis_.indices();
  row_start_.reserve(rows.size() + 1);
  row_start_.push_back(0);
  std::vector<std::pair<std::uint32_t, cplx>> row;
  for (std::uint64_t b : rows) {
    row.clear();
    for (const auto &[x, terms] : groups) {
      const std::uint64_t col = b ^ x;
      const std::int64_t pos = basis_.position(col);
      if (pos < 0)
        continue;
      // <b|P|col> = phase(P, col)
      cplx v = 0.0;
      for (const auto &[p, c] : terms)
        v += c * pauli_phase(p, col);
      if (std::abs(v) >= 1e-14)
        row.emplace_back(static_cast<std::uint32_t>(pos), v);
    }
    std::sort(row.begin(), row.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    for (const auto &[c, v] : row) {
      columns_.push_back(c);
      values_.push_back(v);
    }
    row_start_.push_back(values_.size());
  }
}

void SparseOperator::multiply(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != dimension() || y.size() != dimension())
    throw SizeMismatch("sparse multiply with wrong vector length");
  for (std::size_t i = 0; i < dimension(); ++i) {
    cplx acc = 0.0;
    for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e)
      acc += values_[e] * x[columns_[e]];
    y[i] = acc;
  }
}

StateVector SparseOperator::apply(const StateVector &s) const {
  const auto x = basis_.gather(s);
  std::vector<cplx> y(x.size());
  multiply(x, y);
  return basis_.scatter(y);
}

cplx SparseOperator::expectation(const StateVector &s) const {
  const auto x = basis_.gather(s);
  std::vector<cplx> y(x.size());
  multiply(x, y);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += std::conj(x[i]) * y[i];
  return acc;
}

Eigen::MatrixXcd SparseOperator::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension(), dimension());
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e)
      m(i, columns_[e]) = values_[e];
  return m;
}

} // namespace kvqe

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "kvqe/integrals.hpp"
#include "kvqe/pauli.hpp"

namespace kvqe {

/// Dense amplitude vector over the 2^n computational basis. Basis index bit
/// j is the occupation of qubit (spin orbital) j.
class StateVector {
public:
  StateVector() = default;
  /// |0...0>.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes, bool normalized);

  static StateVector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::uint64_t i) const { return amps_[i]; }
  cplx &operator[](std::uint64_t i) { return amps_[i]; }

  /// Set by constructors and operations that preserve unit norm.
  bool normalized() const noexcept { return normalized_; }
  void mark_normalized(bool flag) noexcept { normalized_ = flag; }
  double norm() const;
  /// Rescale to unit norm; returns the previous norm.
  double normalize();

  StateVector &operator+=(const StateVector &rhs);
  StateVector &operator*=(cplx s);

  /// Binary dump: uint64 qubit count, then 2^n (re, im) little-endian doubles.
  void dump(const std::filesystem::path &path) const;
  static StateVector load(const std::filesystem::path &path);

private:
  int n_qubits_ = 0;
  std::vector<cplx> amps_;
  bool normalized_ = false;
};

/// Basis index with the lowest n_elec/(2 n_k) bands doubly occupied at every k.
std::uint64_t hartree_fock_index(const CrystalIntegrals &ints);
StateVector hartree_fock_state(const CrystalIntegrals &ints);

/// P|b> = i^{|x z|} (-1)^{|z & b|} |b ^ x>.
inline cplx pauli_phase(const PauliString &p, std::uint64_t b) noexcept {
  static constexpr cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int power = std::popcount(p.x & p.z) + 2 * (std::popcount(p.z & b) & 1);
  return ipow[power & 3];
}

/// exp(i angle P) applied in place.
void rotate_in_place(StateVector &s, const PauliString &p, double angle);
StateVector apply_pauli_rotation(const StateVector &s, const PauliString &p, double angle);

/// P|s> for a single string.
StateVector apply_pauli(const StateVector &s, const PauliString &p);
/// O|s> (not normalized).
StateVector apply_operator(const StateVector &s, const PauliSum &op);
/// <s|O|s>.
cplx expectation(const StateVector &s, const PauliSum &op);
/// <a|b>, conjugating a.
cplx inner_product(const StateVector &a, const StateVector &b);

} // namespace kvqe

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "kvqe/error.hpp"

namespace kvqe {

namespace {

// Indices of nonzero amplitudes; basis-state inputs then cost one pass.
std::vector<std::uint64_t> support(std::span<const cplx> a) {
  std::vector<std::uint64_t> nz;
  for (std::uint64_t b = 0; b < a.size(); ++b)
    if (a[b] != cplx(0.0))
      nz.push_back(b);
  return nz;
}

void check_register(const StateVector &s, int n) {
  if (s.n_qubits() != n)
    throw SizeMismatch("operator acts on " + std::to_string(n) + " qubits, state has " +
                       std::to_string(s.n_qubits()));
}

} // namespace

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits), normalized_(true) {
  if (n_qubits < 0 || n_qubits > 30)
    throw SizeMismatch("state vectors support 0..30 qubits");
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes, bool normalized)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)), normalized_(normalized) {
  if (n_qubits < 0 || n_qubits > 30 || amps_.size() != (std::size_t{1} << n_qubits))
    throw SizeMismatch("amplitude count does not match qubit count");
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dimension())
    throw IndexOutOfRange("basis index outside register");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto &a : amps_)
    acc += std::norm(a);
  return std::sqrt(acc);
}

double StateVector::normalize() {
  const double n = norm();
  if (n > 0.0)
    for (auto &a : amps_)
      a /= n;
  normalized_ = true;
  return n;
}

StateVector &StateVector::operator+=(const StateVector &rhs) {
  if (rhs.n_qubits_ != n_qubits_)
    throw SizeMismatch("adding states of different sizes");
  for (std::size_t i = 0; i < amps_.size(); ++i)
    amps_[i] += rhs.amps_[i];
  normalized_ = false;
  return *this;
}

StateVector &StateVector::operator*=(cplx s) {
  for (auto &a : amps_)
    a *= s;
  normalized_ = normalized_ && std::abs(std::abs(s) - 1.0) < 1e-15;
  return *this;
}

void StateVector::dump(const std::filesystem::path &path) const {
  static_assert(std::endian::native == std::endian::little,
                "state dump assumes a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path.string());
  const std::uint64_t n = static_cast<std::uint64_t>(n_qubits_);
  out.write(reinterpret_cast<const char *>(&n), sizeof n);
  out.write(reinterpret_cast<const char *>(amps_.data()),
            static_cast<std::streamsize>(amps_.size() * sizeof(cplx)));
}

StateVector StateVector::load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open " + path.string());
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char *>(&n), sizeof n);
  if (!in || n > 30)
    throw ParseError("bad state dump header in " + path.string());
  std::vector<cplx> amps(std::size_t{1} << n);
  in.read(reinterpret_cast<char *>(amps.data()),
          static_cast<std::streamsize>(amps.size() * sizeof(cplx)));
  if (!in)
    throw ParseError("truncated state dump " + path.string());
  StateVector s(static_cast<int>(n), std::move(amps), false);
  s.normalized_ = std::abs(s.norm() - 1.0) < 1e-12;
  return s;
}

std::uint64_t hartree_fock_index(const CrystalIntegrals &ints) {
  if (ints.n_elec() % 2 != 0)
    throw OddElectronCount("restricted reference needs an even electron count");
  if (ints.n_elec() % (2 * ints.n_k()) != 0)
    throw OddElectronCount("electron count must fill whole bands at every k-point");
  const auto modes = ints.spin_orbitals();
  std::uint64_t bits = 0;
  for (int k = 0; k < ints.n_k(); ++k)
    for (int p = 0; p < ints.n_occupied_bands(); ++p)
      for (int spin = 0; spin < 2; ++spin)
        bits |= std::uint64_t{1} << modes.qubit(k, p, spin);
  return bits;
}

StateVector hartree_fock_state(const CrystalIntegrals &ints) {
  return StateVector::basis_state(ints.n_qubits(), hartree_fock_index(ints));
}

void rotate_in_place(StateVector &s, const PauliString &p, double angle) {
  check_register(s, p.n_qubits);
  const double c = std::cos(angle), sn = std::sin(angle);
  auto amps = s.amplitudes();
  const std::uint64_t dim = amps.size();
  if (p.x == 0) {
    // Diagonal: exp(i angle lambda_b) with lambda_b = +-1 (|x z| = 0 here).
    const cplx plus(c, sn), minus(c, -sn);
    for (std::uint64_t b = 0; b < dim; ++b)
      amps[b] *= (std::popcount(p.z & b) & 1) ? minus : plus;
    return;
  }
  // exp(i a P) = cos a + i sin a P on each pair (b, b ^ x).
  const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(p.x));
  const cplx isn(0.0, sn);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & pivot)
      continue;
    const std::uint64_t b2 = b ^ p.x;
    const cplx a1 = amps[b], a2 = amps[b2];
    // (P a)[b] = phase(b2) a[b2], (P a)[b2] = phase(b) a[b]
    amps[b] = c * a1 + isn * pauli_phase(p, b2) * a2;
    amps[b2] = c * a2 + isn * pauli_phase(p, b) * a1;
  }
}

StateVector apply_pauli_rotation(const StateVector &s, const PauliString &p, double angle) {
  StateVector out = s;
  rotate_in_place(out, p, angle);
  return out;
}

StateVector apply_pauli(const StateVector &s, const PauliString &p) {
  check_register(s, p.n_qubits);
  std::vector<cplx> out(s.dimension());
  const auto in = s.amplitudes();
  for (std::uint64_t b = 0; b < in.size(); ++b)
    out[b ^ p.x] = pauli_phase(p, b) * in[b];
  return StateVector(s.n_qubits(), std::move(out), s.normalized());
}

StateVector apply_operator(const StateVector &s, const PauliSum &op) {
  check_register(s, op.n_qubits());
  std::vector<cplx> out(s.dimension());
  const auto in = s.amplitudes();
  const auto nz = support(in);
  for (const auto &[p, coeff] : op.terms())
    for (std::uint64_t b : nz)
      out[b ^ p.x] += coeff * pauli_phase(p, b) * in[b];
  return StateVector(s.n_qubits(), std::move(out), false);
}

cplx expectation(const StateVector &s, const PauliSum &op) {
  check_register(s, op.n_qubits());
  const auto a = s.amplitudes();
  const auto nz = support(a);
  cplx total = 0.0;
  for (const auto &[p, coeff] : op.terms()) {
    cplx acc = 0.0;
    for (std::uint64_t b : nz)
      acc += std::conj(a[b ^ p.x]) * pauli_phase(p, b) * a[b];
    total += coeff * acc;
  }
  return total;
}

cplx inner_product(const StateVector &a, const StateVector &b) {
  if (a.n_qubits() != b.n_qubits())
    throw SizeMismatch("inner product of states of different sizes");
  cplx acc = 0.0;
  const auto x = a.amplitudes(), y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += std::conj(x[i]) * y[i];
  return acc;
}

} // namespace kvqe

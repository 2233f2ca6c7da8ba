/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/pauli.hpp"

#include <cmath>
#include <sstream>

#include "kvqe/error.hpp"
#include "kvqe/fermion.hpp"

namespace kvqe {

namespace {

std::uint64_t mask_for(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

void check_size(int n) {
  if (n < 0 || n > 64)
    throw SizeMismatch("Pauli strings support up to 64 qubits");
}

} // namespace

PauliString PauliString::single(int n, int qubit, char letter) {
  check_size(n);
  if (qubit < 0 || qubit >= n)
    throw IndexOutOfRange("qubit " + std::to_string(qubit) + " outside register");
  PauliString p = identity(n);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
  case 'I':
    break;
  case 'X':
    p.x = bit;
    break;
  case 'Y':
    p.x = bit;
    p.z = bit;
    break;
  case 'Z':
    p.z = bit;
    break;
  default:
    throw Error(std::string("unknown Pauli letter '") + letter + "'");
  }
  return p;
}

PauliString PauliString::parse(std::string_view letters) {
  const int n = static_cast<int>(letters.size());
  check_size(n);
  PauliString p = identity(n);
  for (int j = 0; j < n; ++j) {
    const PauliString s = single(n, j, letters[j]);
    p.x |= s.x;
    p.z |= s.z;
  }
  return p;
}

char PauliString::letter(int qubit) const noexcept {
  const bool bx = (x >> qubit) & 1u, bz = (z >> qubit) & 1u;
  return bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
}

std::string PauliString::to_string() const {
  std::string s(n_qubits, 'I');
  for (int j = 0; j < n_qubits; ++j)
    s[j] = letter(j);
  return s;
}

cplx PauliProduct::phase() const noexcept {
  static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_power & 3];
}

PauliProduct pauli_product(const PauliString &a, const PauliString &b) {
  if (a.n_qubits != b.n_qubits)
    throw SizeMismatch("Pauli strings act on different register sizes");
  // i^{|xa za|} X^xa Z^za * i^{|xb zb|} X^xb Z^zb
  //   = i^{|xa za| + |xb zb|} (-1)^{|za xb|} X^{xa^xb} Z^{za^zb}
  PauliString c{a.n_qubits, a.x ^ b.x, a.z ^ b.z};
  int power = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
              2 * std::popcount(a.z & b.x) - std::popcount(c.x & c.z);
  return {c, ((power % 4) + 4) % 4};
}

bool commutes(const PauliString &a, const PauliString &b) {
  if (a.n_qubits != b.n_qubits)
    throw SizeMismatch("Pauli strings act on different register sizes");
  return std::popcount((a.x & b.z) ^ (a.z & b.x)) % 2 == 0;
}

PauliSum PauliSum::identity(int n_qubits, cplx coeff) {
  PauliSum s(n_qubits);
  s.add(PauliString::identity(n_qubits), coeff);
  return s;
}

PauliSum PauliSum::from_string(const PauliString &p, cplx coeff) {
  PauliSum s(p.n_qubits);
  s.add(p, coeff);
  return s;
}

cplx PauliSum::coefficient(const PauliString &p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? cplx{} : it->second;
}

void PauliSum::add(const PauliString &p, cplx coeff) {
  if (p.n_qubits != n_qubits_ || ((p.x | p.z) & ~mask_for(n_qubits_)))
    throw SizeMismatch("Pauli string does not fit the register");
  auto it = terms_.try_emplace(p).first;
  it->second += coeff;
  if (std::abs(it->second) < kPruneThreshold)
    terms_.erase(it);
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto &[p, c] : terms_)
    out.terms_.emplace(p, std::conj(c));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto &[p, c] : terms_)
    if (std::abs(c.imag()) > tol)
      return false;
  return true;
}

bool PauliSum::is_anti_hermitian(double tol) const {
  for (const auto &[p, c] : terms_)
    if (std::abs(c.real()) > tol)
      return false;
  return true;
}

bool PauliSum::approx_equal(const PauliSum &other, double tol) const {
  if (n_qubits_ != other.n_qubits_)
    return false;
  for (const auto &[p, c] : terms_)
    if (std::abs(c - other.coefficient(p)) > tol)
      return false;
  for (const auto &[p, c] : other.terms_)
    if (!terms_.contains(p) && std::abs(c) > tol)
      return false;
  return true;
}

double PauliSum::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const auto &[p, c] : terms_)
    m = std::max(m, std::abs(c));
  return m;
}

PauliSum &PauliSum::operator+=(const PauliSum &rhs) {
  if (rhs.n_qubits_ != n_qubits_)
    throw SizeMismatch("adding Pauli sums of different sizes");
  for (const auto &[p, c] : rhs.terms_)
    add(p, c);
  return *this;
}

PauliSum &PauliSum::operator-=(const PauliSum &rhs) {
  if (rhs.n_qubits_ != n_qubits_)
    throw SizeMismatch("subtracting Pauli sums of different sizes");
  for (const auto &[p, c] : rhs.terms_)
    add(p, -c);
  return *this;
}

PauliSum &PauliSum::operator*=(cplx s) {
  for (auto &[p, c] : terms_)
    c *= s;
  std::erase_if(terms_, [](const auto &kv) { return std::abs(kv.second) < kPruneThreshold; });
  return *this;
}

PauliSum operator*(const PauliSum &a, const PauliSum &b) {
  if (a.n_qubits() != b.n_qubits())
    throw SizeMismatch("multiplying Pauli sums of different sizes");
  PauliSum out(a.n_qubits());
  for (const auto &[pa, ca] : a.terms())
    for (const auto &[pb, cb] : b.terms()) {
      const auto prod = pauli_product(pa, pb);
      out.add(prod.string, ca * cb * prod.phase());
    }
  return out;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto &[p, c] : terms_) {
    if (!first)
      os << '\n';
    first = false;
    os << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i "
       << p.to_string();
  }
  return os.str();
}

} // namespace kvqe

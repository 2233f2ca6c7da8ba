/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace kvqe {

using cplx = std::complex<double>;

/// Tensor product of single-qubit Paulis stored as (x, z) bitmasks:
/// I = (0,0), X = (1,0), Z = (0,1), Y = (1,1). Bit j refers to qubit j.
/// Operator convention: P = i^{|x & z|} X^x Z^z.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  static PauliString identity(int n) { return {n, 0, 0}; }
  static PauliString single(int n, int qubit, char letter);
  /// Dense letters, qubit 0 first, e.g. "XYIZ".
  static PauliString parse(std::string_view letters);

  bool is_identity() const noexcept { return (x | z) == 0; }
  char letter(int qubit) const noexcept;
  std::string to_string() const;
  int weight() const noexcept { return std::popcount(x | z); }

  auto operator<=>(const PauliString &) const = default;
};

/// Result of multiplying two Pauli strings: string * i^phase_power.
struct PauliProduct {
  PauliString string;
  int phase_power = 0; // 0..3

  cplx phase() const noexcept;
};

PauliProduct pauli_product(const PauliString &a, const PauliString &b);
bool commutes(const PauliString &a, const PauliString &b);

/// Weighted sum of Pauli strings on a fixed number of qubits.
class PauliSum {
public:
  using TermMap = std::map<PauliString, cplx>;

  explicit PauliSum(int n_qubits = 0) : n_qubits_(n_qubits) {}
  static PauliSum identity(int n_qubits, cplx coeff = 1.0);
  static PauliSum from_string(const PauliString &p, cplx coeff = 1.0);

  int n_qubits() const noexcept { return n_qubits_; }
  const TermMap &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  cplx coefficient(const PauliString &p) const;

  void add(const PauliString &p, cplx coeff);
  PauliSum adjoint() const;
  /// All coefficients real to tol.
  bool is_hermitian(double tol = 1e-12) const;
  /// All coefficients imaginary to tol.
  bool is_anti_hermitian(double tol = 1e-12) const;
  bool approx_equal(const PauliSum &other, double tol = 1e-12) const;
  double max_abs_coefficient() const noexcept;

  PauliSum &operator+=(const PauliSum &rhs);
  PauliSum &operator-=(const PauliSum &rhs);
  PauliSum &operator*=(cplx s);
  friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum &b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum &a, const PauliSum &b);

  std::string to_string() const;

private:
  int n_qubits_;
  TermMap terms_;
};

} // namespace kvqe

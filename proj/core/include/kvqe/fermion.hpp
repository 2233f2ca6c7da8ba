/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <complex>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kvqe/integrals.hpp"

namespace kvqe {

/// A single creation (dagger) or annihilation operator on a spin orbital.
struct LadderOp {
  int mode = 0;
  bool dagger = false;

  auto operator<=>(const LadderOp &) const = default;
};

inline LadderOp create(int mode) { return {mode, true}; }
inline LadderOp annihilate(int mode) { return {mode, false}; }

/// Ordered product of ladder operators.
using FermionTerm = std::vector<LadderOp>;

/// Coefficients below this magnitude are dropped.
inline constexpr double kPruneThreshold = 1e-14;

/// Linear combination of ladder-operator products. Terms are always kept in
/// canonical normal order: creators left of annihilators, mode indices
/// descending inside each group.
class FermionOperator {
public:
  using TermMap = std::map<FermionTerm, cplx>;

  FermionOperator() = default;

  static FermionOperator identity(cplx coeff = 1.0);
  /// Product of the given factors (in the given order) times coeff,
  /// normal ordered on construction.
  static FermionOperator product(std::span<const LadderOp> factors, cplx coeff = 1.0);

  const TermMap &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  /// Coefficient of a canonical term (zero if absent).
  cplx coefficient(const FermionTerm &canonical_term) const;
  int max_mode() const noexcept;

  FermionOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool approx_equal(const FermionOperator &other, double tol = 1e-12) const;

  FermionOperator &operator+=(const FermionOperator &rhs);
  FermionOperator &operator-=(const FermionOperator &rhs);
  FermionOperator &operator*=(cplx scale);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator &b) {
    return a += b;
  }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator &b) {
    return a -= b;
  }
  friend FermionOperator operator*(FermionOperator a, cplx s) { return a *= s; }
  friend FermionOperator operator*(cplx s, FermionOperator a) { return a *= s; }
  friend FermionOperator operator*(const FermionOperator &a, const FermionOperator &b);

  std::string to_string() const;

private:
  friend FermionOperator normal_order(std::span<const LadderOp> factors, cplx coeff);
  void add_canonical(const FermionTerm &term, cplx coeff);
  void prune();

  TermMap terms_;
};

/// Normal-orders an arbitrary product; the result is the same linear map on
/// Fock space written in canonical form.
FermionOperator normal_order(std::span<const LadderOp> factors, cplx coeff = 1.0);
/// Re-canonicalizes an operator (idempotent on canonical input).
FermionOperator normal_order(const FermionOperator &op);

/// Second-quantized crystal Hamiltonian over spin orbitals:
///   sum_k,pq,s t[k]_pq c+_{pks} c_{qks}
///   + 1/2 sum' v[pq|rs] sum_{s,t} c+_{p s} c+_{r t} c_{s t} c_{q s}
///   + sector_constant(n_elec).
FermionOperator build_hamiltonian(const CrystalIntegrals &ints);

/// Spin-conserving occupied -> virtual excitation.
struct Excitation {
  enum class Kind { Single, Double };

  Kind kind = Kind::Single;
  std::vector<int> creation;     // sorted ascending
  std::vector<int> annihilation; // sorted ascending
  int momentum_residue = 0;      // (sum k_created - sum k_annihilated) mod n_k

  auto operator<=>(const Excitation &) const = default;

  /// T = c+_{c0} [c+_{c1}] c_{a0} [c_{a1}] as a raw (not normal ordered) product.
  FermionTerm excitation_string() const;
  std::string to_string() const;
};

/// Anti-Hermitian cluster generator amp * T - conj(amp) * T^dagger.
FermionOperator excitation_generator(const Excitation &exc, cplx amp);

} // namespace kvqe

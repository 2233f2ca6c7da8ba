/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kvqe/fermion.hpp"
#include "kvqe/integrals.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/statevector.hpp"

namespace kvqe {

enum class Variant { bUCCSD_Real, iUCCSD, bUCCD_Real, iUCCD };

/// Accepts the display names ("bUCCSD-Real", "iUCCD", ...), case-insensitive.
Variant parse_variant(std::string_view name);
std::string to_string(Variant v);
bool is_complex(Variant v) noexcept;
bool has_singles(Variant v) noexcept;
/// iUCC variants keep only momentum-conserving excitations unless told otherwise.
bool default_momentum_filter(Variant v) noexcept;

/// Spin-conserving occupied -> virtual excitations with respect to the
/// restricted HF reference. Doubles come first, each kind in lexicographic
/// (annihilation, creation) order.
std::vector<Excitation> enumerate_excitations(const CrystalIntegrals &ints, bool doubles_only,
                                              bool momentum_filter);

struct Rotation {
  PauliString pauli;
  double weight = 0.0;
};

/// One real parameter of a block: exp(theta * (a T - conj(a) T+)), whose
/// Jordan-Wigner image is prod_j exp(i theta w_j P_j).
struct AnsatzPart {
  int slot = 0;
  cplx amplitude_phase = 1.0;
  std::vector<Rotation> rotations;
};

struct AnsatzBlock {
  Excitation excitation;
  std::uint64_t annihilated = 0; // qubit mask of annihilated modes
  std::uint64_t created = 0;     // qubit mask of created modes
  std::vector<AnsatzPart> parts;
};

struct CircuitStats {
  int n_params = 0;
  int n_rotation_gates = 0;
  int n_blocks = 0;
  bool operator==(const CircuitStats &) const = default;
};

class AnsatzCircuit {
public:
  AnsatzCircuit(Variant variant, int n_qubits) : variant_(variant), n_qubits_(n_qubits) {}

  Variant variant() const noexcept { return variant_; }
  int n_qubits() const noexcept { return n_qubits_; }
  int n_params() const noexcept { return n_params_; }
  const std::vector<AnsatzBlock> &blocks() const noexcept { return blocks_; }

  void append(AnsatzBlock block);

private:
  Variant variant_;
  int n_qubits_;
  int n_params_ = 0;
  std::vector<AnsatzBlock> blocks_;
};

/// Doubles are placed before singles; relative order within a kind is kept.
AnsatzCircuit compile(const std::vector<Excitation> &excitations, Variant variant, int n_qubits);

/// Convenience: enumerate with the variant's rules and compile.
AnsatzCircuit build_ansatz(const CrystalIntegrals &ints, Variant variant, bool momentum_filter);

enum class Execution {
  /// Each part applied as an exact two-level fermionic rotation.
  Givens,
  /// Each part applied literally as its list of Pauli rotations.
  PauliRotations,
};

StateVector prepare_state(const AnsatzCircuit &circ, std::span<const double> params,
                          const StateVector &ref, Execution mode = Execution::Givens);

/// exp(theta G) for the part's generator G, in place.
void apply_part(StateVector &s, const AnsatzBlock &block, const AnsatzPart &part, double theta);
/// <bra| G |ket> for the part's generator G.
cplx generator_matrix_element(const StateVector &bra, const AnsatzBlock &block,
                              const AnsatzPart &part, const StateVector &ket);

CircuitStats report(const AnsatzCircuit &circ);

/// One `ROT <pauli> <weight> <slot>` line per rotation, in execution order.
void write_circuit(const AnsatzCircuit &circ, std::ostream &out);

} // namespace kvqe

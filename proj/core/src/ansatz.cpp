/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "kvqe/error.hpp"
#include "kvqe/jordan_wigner.hpp"

namespace kvqe {

namespace {

struct VariantName {
  Variant v;
  const char *name;
};
constexpr VariantName kVariantNames[] = {
    {Variant::bUCCSD_Real, "bUCCSD-Real"},
    {Variant::iUCCSD, "iUCCSD"},
    {Variant::bUCCD_Real, "bUCCD-Real"},
    {Variant::iUCCD, "iUCCD"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::uint64_t mask_of(const std::vector<int> &modes) {
  std::uint64_t m = 0;
  for (int q : modes)
    m |= std::uint64_t{1} << q;
  return m;
}

// Sign of T = c+_{c0} c+_{c1} c_{a0} c_{a1} acting on basis state b
// (annihilated modes occupied, created modes empty).
double excitation_sign(std::uint64_t b, const Excitation &exc) {
  int parity = 0;
  for (auto it = exc.annihilation.rbegin(); it != exc.annihilation.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << *it;
    parity += std::popcount(b & (bit - 1));
    b ^= bit;
  }
  for (auto it = exc.creation.rbegin(); it != exc.creation.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << *it;
    parity += std::popcount(b & (bit - 1));
    b ^= bit;
  }
  return (parity & 1) ? -1.0 : 1.0;
}

// Calls f(b, b2, sign) for every basis index b coupled by T to b2 = T b.
template <class F>
void for_each_pair(int n_qubits, const AnsatzBlock &block, F &&f) {
  const std::uint64_t fixed = block.annihilated | block.created;
  const std::uint64_t free = ((std::uint64_t{1} << n_qubits) - 1) & ~fixed;
  const std::uint64_t flip = fixed;
  std::uint64_t sub = 0;
  do {
    const std::uint64_t b = sub | block.annihilated;
    f(b, b ^ flip, excitation_sign(b, block.excitation));
    sub = (sub - free) & free;
  } while (sub != 0);
}

} // namespace

Variant parse_variant(std::string_view name) {
  const std::string key = lower(name);
  for (const auto &[v, n] : kVariantNames)
    if (lower(n) == key)
      return v;
  throw ParseError("unknown ansatz variant '" + std::string(name) + "'");
}

std::string to_string(Variant v) {
  for (const auto &[vv, n] : kVariantNames)
    if (vv == v)
      return n;
  return "unknown";
}

bool is_complex(Variant v) noexcept { return v == Variant::iUCCSD || v == Variant::iUCCD; }

bool has_singles(Variant v) noexcept {
  return v == Variant::bUCCSD_Real || v == Variant::iUCCSD;
}

bool default_momentum_filter(Variant v) noexcept { return is_complex(v); }

std::vector<Excitation> enumerate_excitations(const CrystalIntegrals &ints, bool doubles_only,
                                              bool momentum_filter) {
  const std::uint64_t hf = hartree_fock_index(ints);
  const auto modes = ints.spin_orbitals();
  const int n = ints.n_qubits();
  std::vector<int> occ, virt;
  for (int q = 0; q < n; ++q)
    ((hf >> q) & 1 ? occ : virt).push_back(q);

  auto spin = [&](int q) { return modes.mode(q).spin; };
  auto kval = [&](int q) { return modes.mode(q).k; };
  auto residue = [&](const std::vector<int> &cre, const std::vector<int> &ann) {
    int r = 0;
    for (int q : cre)
      r += kval(q);
    for (int q : ann)
      r -= kval(q);
    return ints.mesh().wrap(r);
  };

  std::vector<Excitation> out;
  auto push = [&](Excitation::Kind kind, std::vector<int> cre, std::vector<int> ann) {
    const int r = residue(cre, ann);
    if (momentum_filter && r != 0)
      return;
    out.push_back(Excitation{kind, std::move(cre), std::move(ann), r});
  };

  for (std::size_t i = 0; i < occ.size(); ++i)
    for (std::size_t j = i + 1; j < occ.size(); ++j)
      for (std::size_t a = 0; a < virt.size(); ++a)
        for (std::size_t b = a + 1; b < virt.size(); ++b) {
          if (spin(occ[i]) + spin(occ[j]) != spin(virt[a]) + spin(virt[b]))
            continue;
          push(Excitation::Kind::Double, {virt[a], virt[b]}, {occ[i], occ[j]});
        }
  if (!doubles_only)
    for (int i : occ)
      for (int a : virt)
        if (spin(i) == spin(a))
          push(Excitation::Kind::Single, {a}, {i});
  return out;
}

void AnsatzCircuit::append(AnsatzBlock block) {
  for (auto &part : block.parts)
    part.slot = n_params_++;
  blocks_.push_back(std::move(block));
}

AnsatzCircuit compile(const std::vector<Excitation> &excitations, Variant variant, int n_qubits) {
  AnsatzCircuit circ(variant, n_qubits);
  std::vector<const Excitation *> ordered;
  for (const auto &e : excitations)
    if (e.kind == Excitation::Kind::Double)
      ordered.push_back(&e);
  for (const auto &e : excitations)
    if (e.kind == Excitation::Kind::Single)
      ordered.push_back(&e);

  std::vector<cplx> phases{1.0};
  if (is_complex(variant))
    phases.emplace_back(0.0, 1.0);

  for (const Excitation *e : ordered) {
    AnsatzBlock block;
    block.excitation = *e;
    block.annihilated = mask_of(e->annihilation);
    block.created = mask_of(e->creation);
    if (std::max(block.annihilated, block.created) >> n_qubits)
      throw IndexOutOfRange("excitation " + e->to_string() + " exceeds the register");
    if (block.annihilated & block.created)
      throw InvalidExcitation("excitation " + e->to_string() + " reuses a mode");
    for (cplx a : phases) {
      const PauliSum g = jordan_wigner(excitation_generator(*e, a), n_qubits);
      AnsatzPart part;
      part.amplitude_phase = a;
      // g = i sum_j w_j P_j; terms() is already in lexicographic bitmask order.
      for (const auto &[p, c] : g.terms())
        part.rotations.push_back({p, c.imag()});
      block.parts.push_back(std::move(part));
    }
    circ.append(std::move(block));
  }
  return circ;
}

AnsatzCircuit build_ansatz(const CrystalIntegrals &ints, Variant variant, bool momentum_filter) {
  return compile(enumerate_excitations(ints, !has_singles(variant), momentum_filter), variant,
                 ints.n_qubits());
}

void apply_part(StateVector &s, const AnsatzBlock &block, const AnsatzPart &part, double theta) {
  if (theta == 0.0)
    return;
  const double c = std::cos(theta), sn = std::sin(theta);
  const cplx a = part.amplitude_phase;
  auto amps = s.amplitudes();
  // On span{|b>, |b2>} with T|b> = sign |b2>: G|b> = a sign |b2>, G|b2> = -conj(a) sign |b>.
  for_each_pair(s.n_qubits(), block, [&](std::uint64_t b, std::uint64_t b2, double sign) {
    const cplx x = amps[b], y = amps[b2];
    amps[b] = c * x - sn * sign * std::conj(a) * y;
    amps[b2] = c * y + sn * sign * a * x;
  });
}

cplx generator_matrix_element(const StateVector &bra, const AnsatzBlock &block,
                              const AnsatzPart &part, const StateVector &ket) {
  const cplx a = part.amplitude_phase;
  cplx fwd = 0.0, bwd = 0.0;
  for_each_pair(ket.n_qubits(), block, [&](std::uint64_t b, std::uint64_t b2, double sign) {
    fwd += sign * std::conj(bra[b2]) * ket[b];
    bwd += sign * std::conj(bra[b]) * ket[b2];
  });
  return a * fwd - std::conj(a) * bwd;
}

StateVector prepare_state(const AnsatzCircuit &circ, std::span<const double> params,
                          const StateVector &ref, Execution mode) {
  if (static_cast<int>(params.size()) != circ.n_params())
    throw ParamLengthMismatch("ansatz expects " + std::to_string(circ.n_params()) +
                              " parameters, got " + std::to_string(params.size()));
  if (ref.n_qubits() != circ.n_qubits())
    throw SizeMismatch("reference state does not match the ansatz register");
  StateVector s = ref;
  for (const auto &block : circ.blocks())
    for (const auto &part : block.parts) {
      const double theta = params[part.slot];
      if (mode == Execution::Givens)
        apply_part(s, block, part, theta);
      else
        for (const auto &r : part.rotations)
          rotate_in_place(s, r.pauli, theta * r.weight);
    }
  s.mark_normalized(ref.normalized());
  return s;
}

CircuitStats report(const AnsatzCircuit &circ) {
  CircuitStats st;
  st.n_params = circ.n_params();
  st.n_blocks = static_cast<int>(circ.blocks().size());
  for (const auto &block : circ.blocks())
    for (const auto &part : block.parts)
      st.n_rotation_gates += static_cast<int>(part.rotations.size());
  return st;
}

void write_circuit(const AnsatzCircuit &circ, std::ostream &out) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (const auto &block : circ.blocks())
    for (const auto &part : block.parts)
      for (const auto &r : part.rotations)
        out << "ROT " << r.pauli.to_string() << ' ' << r.weight << ' ' << part.slot << '\n';
  out.flags(flags);
  out.precision(prec);
}

} // namespace kvqe

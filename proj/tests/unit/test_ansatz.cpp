/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "kvqe/ansatz.hpp"
#include "kvqe/error.hpp"
#include "kvqe/oracle.hpp"
#include "oracles.hpp"

using namespace kvqe;

namespace {

const std::vector<Variant> kAllVariants = {Variant::bUCCSD_Real, Variant::iUCCSD,
                                           Variant::bUCCD_Real, Variant::iUCCD};

CrystalIntegrals dimer() {
  return load_integrals(kvqe::testing::refdata("dimer_nk2/shift0.25.kint.json"));
}

// Brute-force count of spin-conserving occupied -> virtual excitations.
std::pair<int, int> count_excitations(const CrystalIntegrals &ints, bool filter) {
  const auto modes = ints.spin_orbitals();
  std::vector<int> occ, vir;
  for (int q = 0; q < ints.n_qubits(); ++q)
    (modes.mode(q).orb < ints.n_occupied_bands() ? occ : vir).push_back(q);
  auto ok = [&](std::vector<int> a, std::vector<int> c) {
    int spin = 0, k = 0;
    for (int q : c) {
      spin += modes.mode(q).spin;
      k += modes.mode(q).k;
    }
    for (int q : a) {
      spin -= modes.mode(q).spin;
      k -= modes.mode(q).k;
    }
    return spin == 0 && (!filter || ints.mesh().wrap(k) == 0);
  };
  int singles = 0, doubles = 0;
  for (int a : occ)
    for (int c : vir)
      singles += ok({a}, {c});
  for (std::size_t i = 0; i < occ.size(); ++i)
    for (std::size_t j = i + 1; j < occ.size(); ++j)
      for (std::size_t m = 0; m < vir.size(); ++m)
        for (std::size_t n = m + 1; n < vir.size(); ++n)
          doubles += ok({occ[i], occ[j]}, {vir[m], vir[n]});
  return {singles, doubles};
}

} // namespace

TEST(Variant, ParseAndPrint) {
  for (auto v : kAllVariants)
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_EQ(parse_variant("iuccsd"), Variant::iUCCSD);
  EXPECT_THROW(parse_variant("UCCSDT"), ParseError);
  EXPECT_TRUE(is_complex(Variant::iUCCD));
  EXPECT_FALSE(has_singles(Variant::bUCCD_Real));
  EXPECT_TRUE(default_momentum_filter(Variant::iUCCSD));
  EXPECT_FALSE(default_momentum_filter(Variant::bUCCSD_Real));
}

TEST(Excitations, CountsMatchBruteForce) {
  const auto ints = dimer();
  auto all = enumerate_excitations(ints, false, false);
  int s = 0, d = 0;
  for (const auto &e : all)
    (e.kind == Excitation::Kind::Single ? s : d)++;
  EXPECT_EQ(s, 8);
  EXPECT_EQ(d, 18);
  EXPECT_EQ(std::make_pair(s, d), count_excitations(ints, false));

  const auto filtered = enumerate_excitations(ints, false, true);
  int fs = 0, fd = 0;
  for (const auto &e : filtered) {
    EXPECT_EQ(e.momentum_residue, 0);
    (e.kind == Excitation::Kind::Single ? fs : fd)++;
  }
  EXPECT_EQ(std::make_pair(fs, fd), count_excitations(ints, true));
  EXPECT_LT(filtered.size(), all.size());
}

TEST(Excitations, DoublesComeFirstAndFilterIsIdentityAtGamma) {
  const auto ints = load_integrals(kvqe::testing::refdata("synthetic/toy_gamma.kint.json"));
  EXPECT_EQ(enumerate_excitations(ints, false, true), enumerate_excitations(ints, false, false));
  const auto excs = enumerate_excitations(dimer(), false, false);
  bool seen_single = false;
  for (const auto &e : excs) {
    if (e.kind == Excitation::Kind::Single)
      seen_single = true;
    else
      EXPECT_FALSE(seen_single);
  }
  for (const auto &e : enumerate_excitations(dimer(), true, false))
    EXPECT_EQ(e.kind, Excitation::Kind::Double);
}

TEST(Compile, SingleExcitationRotations) {
  const Excitation e{Excitation::Kind::Single, {2}, {0}, 0};
  const auto circ = compile({e}, Variant::bUCCSD_Real, 4);
  ASSERT_EQ(circ.blocks().size(), 1u);
  const auto &parts = circ.blocks()[0].parts;
  ASSERT_EQ(parts.size(), 1u);
  std::map<std::string, double> got;
  for (const auto &r : parts[0].rotations)
    got[r.pauli.to_string()] = r.weight;
  const std::map<std::string, double> expected = {{"XZYI", -0.5}, {"YZXI", 0.5}};
  ASSERT_EQ(got.size(), 2u);
  for (const auto &[p, w] : expected)
    EXPECT_NEAR(got[p], w, 1e-15) << p;
  EXPECT_EQ(circ.blocks()[0].annihilated, 0b0001u);
  EXPECT_EQ(circ.blocks()[0].created, 0b0100u);
}

TEST(Compile, ComplexVariantsHaveTwoPartsPerBlock) {
  const auto ints = dimer();
  for (auto v : kAllVariants) {
    const auto circ = build_ansatz(ints, v, false);
    const auto stats = report(circ);
    const int per_block = is_complex(v) ? 2 : 1;
    EXPECT_EQ(stats.n_params, per_block * stats.n_blocks) << to_string(v);
    EXPECT_EQ(stats.n_blocks, has_singles(v) ? 26 : 18);
    int gates = 0;
    for (const auto &b : circ.blocks())
      for (const auto &p : b.parts) {
        const int expected = b.excitation.kind == Excitation::Kind::Double ? 8 : 2;
        EXPECT_EQ(static_cast<int>(p.rotations.size()), expected);
        gates += expected;
      }
    EXPECT_EQ(stats.n_rotation_gates, gates);
    int slot = 0;
    for (const auto &b : circ.blocks())
      for (const auto &p : b.parts)
        EXPECT_EQ(p.slot, slot++);
  }
}

TEST(PrepareState, ZeroParametersGiveReference) {
  const auto ints = dimer();
  const auto ref = hartree_fock_state(ints);
  for (auto v : kAllVariants) {
    const auto circ = build_ansatz(ints, v, default_momentum_filter(v));
    const std::vector<double> zeros(circ.n_params(), 0.0);
    for (auto mode : {Execution::Givens, Execution::PauliRotations}) {
      const auto s = prepare_state(circ, zeros, ref, mode);
      EXPECT_NEAR(fidelity(s, ref), 1.0, 1e-14);
    }
  }
}

TEST(PrepareState, GivensMatchesPauliRotations) {
  const auto ints = dimer();
  const auto ref = hartree_fock_state(ints);
  std::mt19937_64 rng(31);
  for (auto v : kAllVariants) {
    const auto circ = build_ansatz(ints, v, false);
    const auto p = kvqe::testing::random_params(rng, circ.n_params(), 1.0);
    const auto a = prepare_state(circ, p, ref, Execution::Givens);
    const auto b = prepare_state(circ, p, ref, Execution::PauliRotations);
    for (std::size_t i = 0; i < a.dimension(); ++i)
      EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12) << to_string(v);
  }
}

TEST(PrepareState, ConservesNumberAndSpin) {
  const auto ints = dimer();
  const auto ref = hartree_fock_state(ints);
  std::mt19937_64 rng(32);
  for (auto v : kAllVariants)
    for (int trial = 0; trial < 5; ++trial) {
      const auto circ = build_ansatz(ints, v, false);
      const auto s = prepare_state(circ, kvqe::testing::random_params(rng, circ.n_params(), 2.0),
                                   ref, Execution::PauliRotations);
      EXPECT_NEAR(s.norm(), 1.0, 1e-12);
      EXPECT_NEAR(kvqe::testing::number_expectation(s), ints.n_elec(), 1e-10);
      EXPECT_LE(kvqe::testing::number_variance(s), 1e-10);
      EXPECT_NEAR(kvqe::testing::two_sz_expectation(s), 0.0, 1e-10);
    }
}

TEST(PrepareState, FilteredAnsatzStaysAMomentumEigenstate) {
  const auto ints = dimer();
  const auto ref = hartree_fock_state(ints);
  std::mt19937_64 rng(33);
  for (auto v : {Variant::iUCCSD, Variant::iUCCD}) {
    const auto filtered = build_ansatz(ints, v, true);
    const auto unfiltered = build_ansatz(ints, v, false);
    const auto pf = kvqe::testing::random_params(rng, filtered.n_params(), 1.0);
    const auto pu = kvqe::testing::random_params(rng, unfiltered.n_params(), 1.0);
    const auto cf = crystal_momentum(prepare_state(filtered, pf, ref), ints.spin_orbitals(),
                                     ints.mesh());
    const auto cu = crystal_momentum(prepare_state(unfiltered, pu, ref), ints.spin_orbitals(),
                                     ints.mesh());
    EXPECT_GE(cf.modulus, 1.0 - 1e-10);
    EXPECT_LT(cu.modulus, 1.0 - 1e-3);
  }
}

TEST(PrepareState, RejectsBadInput) {
  const auto ints = dimer();
  const auto circ = build_ansatz(ints, Variant::bUCCD_Real, false);
  const std::vector<double> wrong(circ.n_params() + 1, 0.0);
  EXPECT_THROW(prepare_state(circ, wrong, hartree_fock_state(ints)), ParamLengthMismatch);
  const std::vector<double> right(circ.n_params(), 0.0);
  EXPECT_THROW(prepare_state(circ, right, StateVector(4)), SizeMismatch);
}

TEST(Circuit, DeterministicListing) {
  const auto ints = dimer();
  std::ostringstream a, b;
  write_circuit(build_ansatz(ints, Variant::iUCCSD, true), a);
  write_circuit(build_ansatz(ints, Variant::iUCCSD, true), b);
  EXPECT_EQ(a.str(), b.str());
  std::istringstream in(a.str());
  std::string word, pauli;
  double w;
  int slot, lines = 0;
  while (in >> word >> pauli >> w >> slot) {
    EXPECT_EQ(word, "ROT");
    EXPECT_EQ(static_cast<int>(pauli.size()), ints.n_qubits());
    ++lines;
  }
  EXPECT_EQ(lines, report(build_ansatz(ints, Variant::iUCCSD, true)).n_rotation_gates);
}

TEST(GeneratorMatrixElement, MatchesFiniteDifferenceOfPart) {
  const auto ints = dimer();
  const auto circ = build_ansatz(ints, Variant::iUCCSD, false);
  std::mt19937_64 rng(34);
  const auto ref = hartree_fock_state(ints);
  const auto psi = prepare_state(circ, kvqe::testing::random_params(rng, circ.n_params(), 0.5),
                                 ref);
  const auto chi = prepare_state(circ, kvqe::testing::random_params(rng, circ.n_params(), 0.5),
                                 ref);
  const double h = 1e-6;
  for (std::size_t bi = 0; bi < circ.blocks().size(); bi += 5) {
    const auto &block = circ.blocks()[bi];
    for (const auto &part : block.parts) {
      auto plus = psi, minus = psi;
      apply_part(plus, block, part, h);
      apply_part(minus, block, part, -h);
      const cplx fd = (inner_product(chi, plus) - inner_product(chi, minus)) / (2 * h);
      EXPECT_NEAR(std::abs(fd - generator_matrix_element(chi, block, part, psi)), 0.0, 1e-8);
    }
  }
}

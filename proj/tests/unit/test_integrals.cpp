/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "kvqe/error.hpp"
#include "kvqe/integrals.hpp"
#include "oracles.hpp"

using namespace kvqe;
using nlohmann::json;

namespace {

// Two orbitals, two k-points, a few valid two-body records.
json small_doc() {
  json t = json::array();
  for (int k = 0; k < 2; ++k)
    t.push_back({{{-1.0 - 0.1 * k, 0.0}, {0.05, 0.02}}, {{0.05, -0.02}, {0.4, 0.0}}});
  json v = json::array();
  v.push_back({{"kp", 0}, {"p", 0}, {"kq", 0}, {"q", 0}, {"kr", 0}, {"r", 0}, {"ks", 0}, {"s", 0},
               {"re", 0.6}, {"im", 0.0}});
  v.push_back({{"kp", 0}, {"p", 0}, {"kq", 1}, {"q", 0}, {"kr", 1}, {"r", 1}, {"ks", 0}, {"s", 1},
               {"re", 0.1}, {"im", 0.03}});
  return {{"meta",
           {{"n_orb", 2},
            {"n_k", 2},
            {"shift", 0.0},
            {"n_elec", 4},
            {"L_bohr", 3.0},
            {"e_const", 0.25},
            {"madelung", -0.5}}},
          {"t", t},
          {"v", v},
          {"refs", {{"hf", -1.0}}}};
}

} // namespace

TEST(KMesh, FractionAndWrap) {
  const KMesh m{3, 0.0, 2.0};
  EXPECT_EQ(m.wrap(-1), 2);
  EXPECT_EQ(m.wrap(4), 1);
  EXPECT_DOUBLE_EQ(m.fraction(1), 1.0 / 3.0);
  EXPECT_NEAR(m.value(1), 2.0 * std::numbers::pi / 3.0 / 2.0, 1e-15);
  const KMesh s{2, 0.25, 1.0};
  EXPECT_DOUBLE_EQ(s.fraction(0), 0.125);
}

TEST(MomentumConservation, Examples) {
  const KMesh m{3, 0.0, 1.0};
  EXPECT_TRUE(momentum_ok(0, 0, 0, 0, m));
  EXPECT_TRUE(momentum_ok(1, 0, 0, 1, m));
  EXPECT_TRUE(momentum_ok(2, 1, 2, 0, m)); // 2-1+2-0 = 3
  EXPECT_FALSE(momentum_ok(1, 0, 0, 0, m));
  EXPECT_FALSE(momentum_ok(1, 0, 1, 0, m));
}

TEST(TwoBodyKey, SymmetryImages) {
  const TwoBodyKey k{0, 1, 2, 0, 1, 1, 0, 0};
  EXPECT_EQ(k.hermitian_image().hermitian_image(), k);
  EXPECT_EQ(k.swapped().swapped(), k);
  EXPECT_EQ(k.canonical(), k.hermitian_image().canonical());
  EXPECT_EQ(k.canonical(), k.swapped().canonical());
  EXPECT_LE(k.canonical(), k);
}

TEST(SpinOrbitalMap, LayoutRoundTrip) {
  const SpinOrbitalMap m{2, 3};
  EXPECT_EQ(m.n_qubits(), 12);
  EXPECT_EQ(m.qubit(1, 1, 1), 1 * 4 + 2 + 1);
  for (int q = 0; q < m.n_qubits(); ++q) {
    const auto md = m.mode(q);
    EXPECT_EQ(m.qubit(md.k, md.orb, md.spin), q);
  }
  EXPECT_THROW(m.qubit(3, 0, 0), IndexOutOfRange);
  EXPECT_THROW(m.mode(12), IndexOutOfRange);
}

TEST(CrystalIntegrals, ParsesAndGeneratesImages) {
  const auto ints = parse_integrals(small_doc());
  EXPECT_EQ(ints.n_qubits(), 8);
  EXPECT_EQ(ints.n_occupied_bands(), 1);
  const TwoBodyKey key{0, 0, 1, 0, 1, 1, 0, 1};
  const cplx v = ints.two_body(key);
  EXPECT_NEAR(std::abs(v - cplx(0.1, 0.03)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ints.two_body(key.hermitian_image()) - std::conj(v)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ints.two_body(key.swapped()) - v), 0.0, 1e-15);
  EXPECT_EQ(ints.unique_two_body().size(), 2u);
  EXPECT_DOUBLE_EQ(ints.reference("hf"), -1.0);
  EXPECT_TRUE(std::isnan(ints.reference("ccsd")));
}

TEST(CrystalIntegrals, RoundTripThroughJson) {
  const auto a = parse_integrals(small_doc());
  const auto b = parse_integrals(to_json(a));
  EXPECT_EQ(a.two_body(), b.two_body());
  for (int k = 0; k < a.n_k(); ++k)
    EXPECT_EQ(a.one_body(k), b.one_body(k));
  EXPECT_EQ(a.e_const(), b.e_const());
  EXPECT_EQ(a.madelung(), b.madelung());
}

TEST(CrystalIntegrals, RejectsNonHermitianOneBody) {
  json doc = small_doc();
  doc["t"][0][0][1] = {0.05, 0.5};
  EXPECT_THROW(parse_integrals(doc), HermiticityViolation);
}

TEST(CrystalIntegrals, RejectsMomentumViolation) {
  json doc = small_doc();
  doc["v"].push_back({{"kp", 1}, {"p", 0}, {"kq", 0}, {"q", 0}, {"kr", 0}, {"r", 0}, {"ks", 0},
                      {"s", 0}, {"re", 0.01}, {"im", 0.0}});
  EXPECT_THROW(parse_integrals(doc), MomentumViolation);
}

TEST(CrystalIntegrals, RejectsInconsistentImages) {
  json doc = small_doc();
  // (00|00) is its own image under conjugation, so it must be real.
  doc["v"][0]["im"] = 0.1;
  EXPECT_THROW(parse_integrals(doc), HermiticityViolation);
  json doc2 = small_doc();
  // Explicit swapped image with a different value.
  doc2["v"].push_back({{"kp", 1}, {"p", 1}, {"kq", 0}, {"q", 1}, {"kr", 0}, {"r", 0}, {"ks", 1},
                       {"s", 0}, {"re", 0.2}, {"im", 0.03}});
  EXPECT_THROW(parse_integrals(doc2), HermiticityViolation);
}

TEST(CrystalIntegrals, RejectsMalformedInput) {
  json doc = small_doc();
  doc["meta"].erase("n_orb");
  EXPECT_THROW(parse_integrals(doc), ParseError);
  json doc2 = small_doc();
  doc2["t"].erase(1);
  EXPECT_THROW(parse_integrals(doc2), ParseError);
  json doc3 = small_doc();
  doc3["v"][0]["p"] = 5;
  EXPECT_THROW(parse_integrals(doc3), ParseError);
  EXPECT_THROW(load_integrals("/nonexistent/file.kint.json"), ParseError);
}

TEST(CrystalIntegrals, ShippedFilesLoad) {
  for (const auto &rel : kvqe::testing::shipped_files()) {
    SCOPED_TRACE(rel);
    const auto ints = load_integrals(kvqe::testing::refdata(rel));
    EXPECT_EQ(ints.n_qubits(), 2 * ints.n_orb() * ints.n_k());
    for (const auto &[key, v] : ints.two_body())
      EXPECT_TRUE(momentum_ok(key.kp, key.kq, key.kr, key.ks, ints.mesh()));
  }
  EXPECT_EQ(load_integrals(kvqe::testing::refdata("hchain_nk3/R1.40.kint.json")).n_qubits(), 12);
}

TEST(SectorConstant, ChargeDependence) {
  const auto ints = parse_integrals(small_doc());
  EXPECT_DOUBLE_EQ(sector_constant(4, ints), 0.25);
  EXPECT_DOUBLE_EQ(sector_constant(3, ints), 0.25 - 0.5);
  EXPECT_DOUBLE_EQ(sector_constant(5, ints), 0.25);
  EXPECT_THROW(sector_constant(2, ints), SectorOutOfRange);
  EXPECT_THROW(sector_constant(6, ints), SectorOutOfRange);
}

TEST(CrystalIntegrals, WriteAndReload) {
  const auto a = parse_integrals(small_doc());
  const auto path = std::filesystem::temp_directory_path() / "kvqe_roundtrip.kint.json";
  write_integrals(a, path);
  const auto b = load_integrals(path);
  EXPECT_EQ(a.two_body(), b.two_body());
  std::filesystem::remove(path);
}

TEST(MomentumConservation, DocumentedCases) {
  EXPECT_TRUE(momentum_ok(0, 0, 0, 0, KMesh{3, 0.0, 1.0}));
  EXPECT_TRUE(momentum_ok(2, 1, 1, 2, KMesh{3, 0.0, 1.0}));
  EXPECT_FALSE(momentum_ok(1, 0, 0, 0, KMesh{2, 0.0, 1.0}));
}

TEST(CrystalIntegrals, MinimalFileHasTwoQubits) {
  const auto ints = load_integrals(kvqe::testing::refdata("synthetic/toy_gamma.kint.json"));
  EXPECT_EQ(ints.n_qubits(), 2);
}

TEST(CrystalIntegrals, RejectsResidueOneTwoZeroZero) {
  json doc = {{"meta", {{"n_orb", 1}, {"n_k", 3}, {"n_elec", 6}, {"L_bohr", 2.0}, {"e_const", 0.0}}},
              {"t", {{{{-1.0, 0.0}}}, {{{-0.5, 0.0}}}, {{{-0.5, 0.0}}}}},
              {"v", {{{"kp", 1}, {"p", 0}, {"kq", 2}, {"q", 0}, {"kr", 0}, {"r", 0}, {"ks", 0},
                      {"s", 0}, {"re", 0.1}, {"im", 0.0}}}}};
  EXPECT_THROW(parse_integrals(doc), MomentumViolation);
}

TEST(CrystalIntegrals, RandomKeyPerturbationRejected) {
  const auto ints = load_integrals(kvqe::testing::refdata("hchain_nk3/R1.40.kint.json"));
  const json base = to_json(ints);
  std::mt19937_64 rng(11);
  int rejected = 0, tried = 0;
  for (int trial = 0; trial < 40; ++trial) {
    json doc = base;
    auto &rec = doc["v"][rng() % doc["v"].size()];
    const char *fields[] = {"kp", "kq", "kr", "ks"};
    auto &f = rec[fields[rng() % 4]];
    f = (f.get<int>() + 1 + static_cast<int>(rng() % 2)) % 3;
    ++tried;
    try {
      parse_integrals(doc);
    } catch (const MomentumViolation &) {
      ++rejected;
    } catch (const HermiticityViolation &) {
      ++rejected; // the perturbed key collided with an existing image
    } catch (const ParseError &) {
      ++rejected; // collided with an existing record
    }
  }
  EXPECT_EQ(rejected, tried);
}

TEST(CrystalIntegrals, ShippedOneBodyHermitian) {
  for (const auto &rel : kvqe::testing::shipped_files()) {
    const auto ints = load_integrals(kvqe::testing::refdata(rel));
    for (int k = 0; k < ints.n_k(); ++k)
      EXPECT_LE((ints.one_body(k) - ints.one_body(k).adjoint()).norm(),
                1e-10 * std::max(1.0, ints.one_body(k).norm()))
          << rel;
  }
}

TEST(CrystalIntegrals, WriteIsBitExact) {
  for (const auto &rel : kvqe::testing::shipped_files()) {
    const auto a = load_integrals(kvqe::testing::refdata(rel));
    const auto b = parse_integrals(json::parse(to_json(a).dump()));
    EXPECT_EQ(a.two_body(), b.two_body()) << rel;
    for (int k = 0; k < a.n_k(); ++k)
      EXPECT_EQ(a.one_body(k), b.one_body(k)) << rel;
    EXPECT_EQ(a.references(), b.references()) << rel;
  }
}

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include <benchmark/benchmark.h>

#include <filesystem>
#include <map>
#include <random>

#include "kvqe/ansatz.hpp"
#include "kvqe/jordan_wigner.hpp"
#include "kvqe/sparse_operator.hpp"
#include "kvqe/vqe.hpp"

namespace {

using namespace kvqe;

struct Fixture {
  CrystalIntegrals ints;
  PauliSum h;
  StateVector ref;
};

const Fixture &fixture(const char *rel) {
  static std::map<std::string, Fixture> cache;
  auto it = cache.find(rel);
  if (it == cache.end()) {
    auto ints = load_integrals(std::filesystem::path(KVQE_REFDATA_DIR) / rel);
    auto h = jordan_wigner(build_hamiltonian(ints), ints.n_qubits());
    auto ref = hartree_fock_state(ints);
    it = cache.emplace(rel, Fixture{std::move(ints), std::move(h), std::move(ref)}).first;
  }
  return it->second;
}

const char *file_for(int qubits) {
  return qubits == 16 ? "hchain_nk4/R2.00.kint.json" : "hchain_nk3/R1.40.kint.json";
}

std::vector<double> params(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<double> p(n);
  for (auto &x : p)
    x = u(rng);
  return p;
}

void BM_PauliRotation(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s(n);
  const PauliString p{n, 0b1011, 0b0110};
  for (auto _ : state) {
    rotate_in_place(s, p, 0.123);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_PauliRotation)->Arg(12)->Arg(16)->Arg(20);

void BM_GivensPart(benchmark::State &state) {
  const auto &f = fixture(file_for(static_cast<int>(state.range(0))));
  const auto circ = build_ansatz(f.ints, Variant::iUCCD, true);
  auto s = f.ref;
  const auto &block = circ.blocks().front();
  for (auto _ : state) {
    apply_part(s, block, block.parts.front(), 0.01);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_GivensPart)->Arg(12)->Arg(16);

void BM_SparseBuild(benchmark::State &state) {
  const auto &f = fixture(file_for(static_cast<int>(state.range(0))));
  const SectorBasis basis(f.ints.spin_orbitals(), {f.ints.n_elec(), 0});
  for (auto _ : state) {
    SparseOperator op(f.h, basis);
    benchmark::DoNotOptimize(op.nonzeros());
  }
}
BENCHMARK(BM_SparseBuild)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SparseApply(benchmark::State &state) {
  const auto &f = fixture(file_for(static_cast<int>(state.range(0))));
  const SparseOperator op(f.h, SectorBasis(f.ints.spin_orbitals(), {f.ints.n_elec(), 0}));
  std::vector<cplx> x(op.dimension(), cplx(1.0)), y(op.dimension());
  for (auto _ : state) {
    op.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["nnz"] = static_cast<double>(op.nonzeros());
}
BENCHMARK(BM_SparseApply)->Arg(12)->Arg(16);

void BM_EnergyAndGradient(benchmark::State &state) {
  const auto &f = fixture(file_for(static_cast<int>(state.range(0))));
  const VqeProblem p(f.h, build_ansatz(f.ints, Variant::bUCCSD_Real, false), f.ref);
  const auto x = params(p.n_params(), 7);
  std::vector<double> g(p.n_params());
  for (auto _ : state)
    benchmark::DoNotOptimize(p.energy_and_gradient(x, g));
  state.counters["params"] = p.n_params();
}
BENCHMARK(BM_EnergyAndGradient)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

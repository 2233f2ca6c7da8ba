/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kvqe/ansatz.hpp"
#include "kvqe/cli/config.hpp"
#include "kvqe/integrals.hpp"
#include "kvqe/oracle.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/statevector.hpp"
#include "kvqe/vqe.hpp"

namespace kvqe::cli {

struct System {
  std::filesystem::path path;
  CrystalIntegrals ints;
  PauliSum hamiltonian;
  StateVector hf;
  double e_hf = 0.0;
};

System load_system(const std::filesystem::path &path);

/// Particle-number and Sz = 0 sector of the restricted reference.
SectorBasis ground_sector(const CrystalIntegrals &ints);

struct VqeRun {
  AnsatzCircuit circuit;
  VqeResult result;
  bool momentum_filter = false;
};

VqeRun run_vqe(const System &sys, const RunConfig &cfg);
/// Re-prepares the optimized state of a stored run.
StateVector replay_state(const System &sys, Variant variant, bool momentum_filter,
                         std::span<const double> params);

struct PecRow {
  std::string geometry_label;
  double e_hf = 0.0;
  double e_vqe = 0.0;
  double e_fci = 0.0;
  double error_vs_fci = 0.0;
  bool ok = false;
  bool converged = false;
  std::string message;
};

/// Columns geometry_label,e_hf,e_vqe,e_fci,error_vs_fci; failed points
/// carry "nan" in the values they could not produce.
void write_pec_csv(const std::vector<PecRow> &rows, std::ostream &out);

struct Diagnostics {
  cplx kl_over_pi;
  double translation_modulus = 0.0;
  double infidelity = 0.0;
  double fci_energy = 0.0;
  double state_energy = 0.0;
  int ground_degeneracy = 1;
};

Diagnostics diagnose(const System &sys, const StateVector &state);
nlohmann::json to_json(const Diagnostics &d);

/// Entry point of the kvqe executable. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace kvqe::cli

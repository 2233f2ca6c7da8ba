/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kvqe/ansatz.hpp"
#include "kvqe/bfgs.hpp"

namespace kvqe::cli {

inline constexpr int kSchemaVersion = 1;

/// Settings shared by every command. Loaded from a JSON file; command-line
/// flags override individual fields.
struct RunConfig {
  std::vector<std::filesystem::path> integrals;
  Variant variant = Variant::bUCCSD_Real;
  std::optional<bool> momentum_filter; // unset: the variant's default
  BfgsSettings optimizer;
  std::filesystem::path output_dir = ".";
  std::set<std::string> tasks;
  std::optional<std::uint64_t> seed; // random initial parameters when set
  double init_scale = 1e-3;
  int jobs = 1;
  bool plot = true;
  std::optional<std::filesystem::path> input; // diag: a previous vqe_result.json
  bool use_hf = false;                        // diag: analyse the HF state

  bool effective_momentum_filter() const {
    return momentum_filter.value_or(default_momentum_filter(variant));
  }
  bool has_task(const std::string &t) const { return tasks.count(t) != 0; }
};

inline const std::set<std::string> kKnownTasks = {"vqe", "fci", "bands", "momentum", "fidelity"};

/// Relative paths are resolved against base_dir.
RunConfig parse_config(const nlohmann::json &doc, const std::filesystem::path &base_dir);
RunConfig load_config(const std::filesystem::path &file);
nlohmann::json to_json(const RunConfig &cfg);

} // namespace kvqe::cli

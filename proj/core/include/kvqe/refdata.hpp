/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace kvqe {

struct ExpectedValue {
  double value = 0.0;
  double tol = 0.0;
};

struct ManifestEntry {
  std::string path; // relative to the data root
  std::string sha256;
  std::string description;
  int n_qubits = 0;
  std::map<std::string, ExpectedValue> expected;
};

struct Manifest {
  int format_version = 1;
  std::vector<ManifestEntry> files;
  const ManifestEntry &entry(const std::string &path) const;
};

Manifest load_manifest(const std::filesystem::path &manifest_file);

struct ManifestIssue {
  std::string path;
  std::string message;
};

struct ManifestReport {
  int checked = 0;
  std::vector<ManifestIssue> issues;
  bool ok() const noexcept { return issues.empty(); }
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path &file);

/// Checks every manifest entry under root: file present, checksum,
/// loadability, qubit count, and stored refs against the expected map.
ManifestReport verify_manifest(const std::filesystem::path &root,
                               const std::string &manifest_name = "manifest.json");

} // namespace kvqe

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/refdata.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "kvqe/error.hpp"
#include "kvqe/integrals.hpp"

namespace kvqe {

const ManifestEntry &Manifest::entry(const std::string &path) const {
  for (const auto &e : files)
    if (e.path == path)
      return e;
  throw IndexOutOfRange("no manifest entry for " + path);
}

Manifest load_manifest(const std::filesystem::path &manifest_file) {
  std::ifstream in(manifest_file);
  if (!in)
    throw ParseError("cannot open manifest " + manifest_file.string());
  try {
    const auto doc = nlohmann::json::parse(in);
    Manifest m;
    m.format_version = doc.value("format_version", 1);
    for (const auto &[path, e] : doc.at("files").items()) {
      ManifestEntry me;
      me.path = path;
      me.sha256 = e.at("sha256").get<std::string>();
      me.description = e.value("description", std::string{});
      me.n_qubits = e.value("n_qubits", 0);
      if (e.contains("expected"))
        for (const auto &[label, ev] : e.at("expected").items())
          me.expected[label] = {ev.at("value").get<double>(), ev.at("tol").get<double>()};
      m.files.push_back(std::move(me));
    }
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError("malformed manifest " + manifest_file.string() + ": " + e.what());
  }
}

std::string sha256_file(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw ParseError("cannot open " + file.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 initialisation failed");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0)
      EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

ManifestReport verify_manifest(const std::filesystem::path &root,
                               const std::string &manifest_name) {
  ManifestReport report;
  Manifest m;
  try {
    m = load_manifest(root / manifest_name);
  } catch (const Error &e) {
    report.issues.push_back({manifest_name, e.what()});
    return report;
  }
  for (const auto &e : m.files) {
    ++report.checked;
    const auto file = root / e.path;
    if (!std::filesystem::exists(file)) {
      report.issues.push_back({e.path, "file missing"});
      continue;
    }
    const std::string digest = sha256_file(file);
    if (digest != e.sha256) {
      report.issues.push_back({e.path, "checksum mismatch: expected " + e.sha256 + ", got " + digest});
      continue;
    }
    try {
      const CrystalIntegrals ints = load_integrals(file);
      if (e.n_qubits && ints.n_qubits() != e.n_qubits)
        report.issues.push_back({e.path, "qubit count " + std::to_string(ints.n_qubits()) +
                                             " differs from manifest " +
                                             std::to_string(e.n_qubits)});
      for (const auto &[label, ev] : e.expected) {
        const double stored = ints.reference(label);
        if (!(std::abs(stored - ev.value) <= ev.tol))
          report.issues.push_back(
              {e.path, "reference '" + label + "' = " + std::to_string(stored) +
                           " does not match manifest " + std::to_string(ev.value)});
      }
    } catch (const Error &ex) {
      report.issues.push_back({e.path, std::string("load failed: ") + ex.what()});
    }
  }
  return report;
}

} // namespace kvqe

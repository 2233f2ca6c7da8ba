/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "kvqe/cli/commands.hpp"
#include "kvqe/cli/config.hpp"
#include "kvqe/error.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using kvqe::testing::refdata;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome kvqe_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kvqe");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = kvqe::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> golden_lines(const std::string &name) {
  std::ifstream in(fs::path(KVQE_GOLDEN_DIR) / name);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);)
    if (!l.empty())
      lines.push_back(l);
  return lines;
}

std::string first_line(const fs::path &file) {
  std::ifstream in(file);
  std::string l;
  std::getline(in, l);
  return l;
}

nlohmann::json read_json(const fs::path &file) {
  std::ifstream in(file);
  return nlohmann::json::parse(in);
}

std::vector<std::string> keys(const nlohmann::json &doc) {
  std::vector<std::string> k;
  for (auto it = doc.begin(); it != doc.end(); ++it)
    k.push_back(it.key());
  return k;
}

// Every golden key must be present; extra keys are allowed.
void expect_keys(const nlohmann::json &doc, const std::string &golden) {
  for (const auto &k : golden_lines(golden))
    EXPECT_TRUE(doc.contains(k)) << golden << " missing " << k;
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kvqe_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

const std::string kDimer = refdata("dimer_nk2/shift0.25.kint.json").string();

} // namespace

TEST_F(CliTest, VqeWritesResultWithSchema) {
  const auto r = kvqe_cli({"vqe", kDimer, "--out", dir_.string(), "--tasks", "vqe,fci",
                           "--export-circuit", "--no-plot"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "vqe_result.json");
  expect_keys(doc, "vqe_result.keys");
  EXPECT_EQ(doc.at("schema_version").get<int>(), kvqe::cli::kSchemaVersion);
  EXPECT_TRUE(doc.at("converged").get<bool>());
  EXPECT_GE(doc.at("energy").get<double>(), doc.at("e_fci").get<double>() - 1e-9);
  EXPECT_TRUE(fs::exists(dir_ / "circuit.txt"));
  EXPECT_EQ(first_line(dir_ / "circuit.txt").substr(0, 4), "ROT ");
}

TEST_F(CliTest, IterationCapGivesExitTwo) {
  const auto r = kvqe_cli({"vqe", kDimer, "--out", dir_.string(), "--max-iter", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(read_json(dir_ / "vqe_result.json").at("converged").get<bool>());
}

TEST_F(CliTest, BadInputGivesExitOne) {
  EXPECT_EQ(kvqe_cli({"vqe", (dir_ / "missing.kint.json").string(), "--out", dir_.string()}).code,
            1);
  EXPECT_EQ(kvqe_cli({"vqe", kDimer, "--variant", "UCCSDT", "--out", dir_.string()}).code, 1);
  EXPECT_EQ(kvqe_cli({"frobnicate"}).code, 1);
  const auto r = kvqe_cli({"pec", kDimer, "--out", dir_.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("kvqe: "), std::string::npos);
}

TEST_F(CliTest, PecCsvHeaderAndRows) {
  const auto r =
      kvqe_cli({"pec", refdata("hchain_nk3/R1.40.kint.json").string(),
                refdata("hchain_nk3/R2.00.kint.json").string(), "--out", dir_.string(), "--jobs",
                "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir_ / "pec.csv");
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);)
    lines.push_back(l);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], golden_lines("pec_header.csv").at(0));
  EXPECT_EQ(lines[1].substr(0, 6), "R1.40,");
  EXPECT_EQ(lines[2].substr(0, 6), "R2.00,");
  EXPECT_TRUE(fs::exists(dir_ / "pec.svg"));
  EXPECT_TRUE(fs::exists(dir_ / "points" / "R1.40.vqe_result.json"));
}

TEST_F(CliTest, BandsOutputs) {
  const auto r = kvqe_cli({"bands", kDimer, "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(dir_ / "bands.csv"), golden_lines("bands_header.csv").at(0));
  expect_keys(read_json(dir_ / "gap.json"), "gap.keys");
  EXPECT_TRUE(fs::exists(dir_ / "bands.svg"));
}

TEST_F(CliTest, DiagOnHartreeFock) {
  const auto r = kvqe_cli({"diag", kDimer, "--hf", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "diag.json");
  expect_keys(doc, "diag.keys");
  EXPECT_EQ(keys(doc).size(), golden_lines("diag.keys").size());

  // Independent check: overlap of HF with the dense ground state.
  const auto ints = kvqe::load_integrals(kDimer);
  const Eigen::MatrixXcd h = kvqe::testing::dense_hamiltonian(ints);
  const kvqe::SectorBasis basis(ints.spin_orbitals(), {ints.n_elec(), 0});
  Eigen::MatrixXcd hs(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      hs(i, j) = h(basis.indices()[i], basis.indices()[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hs);
  ASSERT_GT(es.eigenvalues()[1] - es.eigenvalues()[0], 1e-6);
  const auto hf_pos = basis.position(kvqe::hartree_fock_index(ints));
  const double overlap = std::abs(es.eigenvectors()(hf_pos, 0));
  EXPECT_NEAR(doc.at("infidelity").get<double>(), 1.0 - overlap, 1e-9);
  EXPECT_NEAR(doc.at("fci_energy").get<double>(), es.eigenvalues()[0], 1e-9);
  EXPECT_NEAR(doc.at("translation_modulus").get<double>(), 1.0, 1e-12);
  EXPECT_EQ(doc.at("ground_degeneracy").get<int>(), 1);
}

TEST_F(CliTest, DiagReplaysStoredRun) {
  ASSERT_EQ(kvqe_cli({"vqe", kDimer, "--variant", "iUCCSD", "--out", dir_.string()}).code, 0);
  const auto r = kvqe_cli({"diag", "--input", (dir_ / "vqe_result.json").string(), "--out",
                           dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "diag.json");
  EXPECT_GE(doc.at("translation_modulus").get<double>(), 1.0 - 1e-8);
  EXPECT_NEAR(doc.at("state_energy").get<double>(),
              read_json(dir_ / "vqe_result.json").at("energy").get<double>(), 1e-10);
}

TEST_F(CliTest, ValidateReferenceDirectory) {
  const auto r = kvqe_cli({"validate", kvqe::testing::refdata_dir().string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto bad = dir_ / "bad.kint.json";
  std::ofstream(bad) << "{\"meta\": {}}";
  EXPECT_EQ(kvqe_cli({"validate", bad.string()}).code, 1);
}

TEST_F(CliTest, ConfigFileAndOverrides) {
  const auto cfg = dir_ / "run.json";
  std::ofstream(cfg) << nlohmann::json{{"integrals", {kDimer}},
                                       {"variant", "bUCCD-Real"},
                                       {"output_dir", "out"},
                                       {"optimizer", {{"max_iterations", 500}}}}
                            .dump();
  const auto r = kvqe_cli({"vqe", "--config", cfg.string(), "--variant", "iUCCD"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "out" / "vqe_result.json");
  EXPECT_EQ(doc.at("variant").get<std::string>(), "iUCCD");
  EXPECT_TRUE(doc.at("momentum_filter").get<bool>());
}

TEST(Config, RejectsUnknownTask) {
  EXPECT_THROW(kvqe::cli::parse_config({{"integrals", {"a.json"}}, {"tasks", {"teleport"}}}, "."),
               kvqe::Error);
}

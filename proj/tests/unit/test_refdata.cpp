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

#include "kvqe/error.hpp"
#include "kvqe/refdata.hpp"
#include "oracles.hpp"

using namespace kvqe;
namespace fs = std::filesystem;

namespace {

// Private copy of the reference data that tests may damage.
class ScratchCopy : public ::testing::Test {
protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("kvqe_refdata_" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    fs::remove_all(root_);
    fs::copy(kvqe::testing::refdata_dir(), root_, fs::copy_options::recursive);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

} // namespace

TEST(Sha256, KnownDigest) {
  const auto path = fs::temp_directory_path() / "kvqe_sha_abc.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "abc";
  }
  EXPECT_EQ(sha256_file(path),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove(path);
  EXPECT_THROW(sha256_file(path), Error);
}

TEST(Manifest, ShippedDataVerifies) {
  const auto report = verify_manifest(kvqe::testing::refdata_dir());
  EXPECT_TRUE(report.ok());
  for (const auto &i : report.issues)
    ADD_FAILURE() << i.path << ": " << i.message;
  EXPECT_EQ(report.checked, static_cast<int>(kvqe::testing::shipped_files().size()));
  const auto m = load_manifest(kvqe::testing::refdata("manifest.json"));
  for (const auto &rel : kvqe::testing::shipped_files()) {
    const auto &e = m.entry(rel);
    EXPECT_EQ(e.n_qubits, load_integrals(kvqe::testing::refdata(rel)).n_qubits());
    EXPECT_TRUE(e.expected.count("hf"));
    EXPECT_TRUE(e.expected.count("fci"));
  }
}

TEST_F(ScratchCopy, CorruptedByteIsNamed) {
  const fs::path victim = root_ / "hchain_nk3" / "R2.00.kint.json";
  std::fstream f(victim, std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(10);
  f.put('~');
  f.close();
  const auto report = verify_manifest(root_);
  ASSERT_FALSE(report.ok());
  bool named = false;
  for (const auto &i : report.issues)
    named = named || i.path == "hchain_nk3/R2.00.kint.json";
  EXPECT_TRUE(named);
}

TEST_F(ScratchCopy, MissingFileFails) {
  fs::remove(root_ / "synthetic" / "toy_gamma.kint.json");
  const auto report = verify_manifest(root_);
  ASSERT_EQ(report.issues.size(), 1u);
  EXPECT_EQ(report.issues[0].path, "synthetic/toy_gamma.kint.json");
}

TEST(Manifest, UnknownEntryThrows) {
  const auto m = load_manifest(kvqe::testing::refdata("manifest.json"));
  EXPECT_THROW(m.entry("nope.kint.json"), Error);
  EXPECT_THROW(load_manifest(kvqe::testing::refdata("does_not_exist.json")), Error);
}

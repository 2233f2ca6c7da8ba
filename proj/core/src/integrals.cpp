/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "kvqe/error.hpp"

namespace kvqe {

namespace {

bool close_relative(cplx a, cplx b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-4});
  return std::abs(a - b) <= tol * scale;
}

std::string describe(const TwoBodyKey &k) {
  std::ostringstream os;
  os << "(" << k.kp << "," << k.p << " " << k.kq << "," << k.q << " | " << k.kr
     << "," << k.r << " " << k.ks << "," << k.s << ")";
  return os.str();
}

int require_int(const nlohmann::json &obj, const char *key) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer())
    throw ParseError(std::string("missing or non-integer field '") + key + "'");
  return obj.at(key).get<int>();
}

double require_number(const nlohmann::json &obj, const char *key) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw ParseError(std::string("missing or non-numeric field '") + key + "'");
  return obj.at(key).get<double>();
}

cplx parse_pair(const nlohmann::json &v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError("complex value must be a [re, im] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace

double KMesh::value(int k) const noexcept {
  return 2.0 * std::numbers::pi * fraction(k) / cell_length;
}

bool momentum_ok(int kp, int kq, int kr, int ks, const KMesh &mesh) noexcept {
  return mesh.wrap(kp - kq + kr - ks) == 0;
}

TwoBodyKey TwoBodyKey::canonical() const {
  const std::array<TwoBodyKey, 4> orbit = {*this, hermitian_image(), swapped(),
                                           swapped().hermitian_image()};
  return *std::min_element(orbit.begin(), orbit.end());
}

int SpinOrbitalMap::qubit(int k, int orb, int spin) const {
  if (k < 0 || k >= n_k || orb < 0 || orb >= n_orb || spin < 0 || spin > 1)
    throw IndexOutOfRange("spin orbital out of range");
  return k * 2 * n_orb + 2 * orb + spin;
}

SpinOrbitalMap::Mode SpinOrbitalMap::mode(int q) const {
  if (q < 0 || q >= n_qubits())
    throw IndexOutOfRange("qubit index out of range");
  return {q / (2 * n_orb), (q % (2 * n_orb)) / 2, q % 2};
}

CrystalIntegrals::CrystalIntegrals(Data data) : data_(std::move(data)) {
  const auto &mesh = data_.mesh;
  if (mesh.n_k < 1)
    throw ParseError("n_k must be positive");
  if (!(mesh.shift >= 0.0 && mesh.shift < 1.0))
    throw ParseError("mesh shift must lie in [0, 1)");
  if (!(mesh.cell_length > 0.0))
    throw ParseError("cell length must be positive");
  if (data_.n_orb < 1)
    throw ParseError("n_orb must be positive");
  if (data_.n_elec < 0 || data_.n_elec > n_qubits())
    throw ParseError("n_elec outside [0, n_qubits]");
  if (static_cast<int>(data_.one_body.size()) != mesh.n_k)
    throw ParseError("one-body table must have one matrix per k-point");

  for (int k = 0; k < mesh.n_k; ++k) {
    const auto &t = data_.one_body[k];
    if (t.rows() != data_.n_orb || t.cols() != data_.n_orb)
      throw ParseError("one-body matrix has wrong shape");
    for (int p = 0; p < data_.n_orb; ++p)
      for (int q = 0; q < data_.n_orb; ++q)
        if (!close_relative(t(p, q), std::conj(t(q, p)), kSymmetryTolerance))
          throw HermiticityViolation("one-body matrix at k=" + std::to_string(k) +
                                     " is not Hermitian");
  }

  std::map<TwoBodyKey, cplx> full;
  for (const auto &[key, val] : data_.two_body) {
    for (int idx : {key.kp, key.kq, key.kr, key.ks})
      if (idx < 0 || idx >= mesh.n_k)
        throw ParseError("k index out of range in " + describe(key));
    for (int idx : {key.p, key.q, key.r, key.s})
      if (idx < 0 || idx >= data_.n_orb)
        throw ParseError("orbital index out of range in " + describe(key));
    if (!momentum_ok(key.kp, key.kq, key.kr, key.ks, mesh))
      throw MomentumViolation("two-body key " + describe(key) +
                              " violates crystal momentum conservation");
    const std::array<std::pair<TwoBodyKey, cplx>, 4> images = {{
        {key, val},
        {key.hermitian_image(), std::conj(val)},
        {key.swapped(), val},
        {key.swapped().hermitian_image(), std::conj(val)},
    }};
    for (const auto &[img, img_val] : images) {
      auto [it, inserted] = full.emplace(img, img_val);
      if (!inserted && !close_relative(it->second, img_val, kSymmetryTolerance))
        throw HermiticityViolation("two-body integrals break symmetry at " +
                                   describe(img));
    }
  }
  data_.two_body = std::move(full);
}

int CrystalIntegrals::n_occupied_bands() const noexcept {
  return data_.n_elec / (2 * data_.mesh.n_k);
}

std::map<TwoBodyKey, cplx> CrystalIntegrals::unique_two_body() const {
  std::map<TwoBodyKey, cplx> out;
  for (const auto &[key, val] : data_.two_body)
    if (key.canonical() == key)
      out.emplace(key, val);
  return out;
}

cplx CrystalIntegrals::two_body(const TwoBodyKey &key) const {
  auto it = data_.two_body.find(key);
  return it == data_.two_body.end() ? cplx{} : it->second;
}

double CrystalIntegrals::reference(const std::string &label) const {
  auto it = data_.references.find(label);
  return it == data_.references.end() ? std::numeric_limits<double>::quiet_NaN()
                                      : it->second;
}

CrystalIntegrals parse_integrals(const nlohmann::json &doc) {
  if (!doc.is_object() || !doc.contains("meta") || !doc.contains("t"))
    throw ParseError("KINT document needs 'meta' and 't'");
  const auto &meta = doc.at("meta");
  CrystalIntegrals::Data d;
  d.n_orb = require_int(meta, "n_orb");
  d.mesh.n_k = require_int(meta, "n_k");
  d.mesh.shift = meta.contains("shift") ? require_number(meta, "shift") : 0.0;
  d.mesh.cell_length = require_number(meta, "L_bohr");
  d.n_elec = require_int(meta, "n_elec");
  d.e_const = require_number(meta, "e_const");
  d.madelung = meta.contains("madelung") ? require_number(meta, "madelung") : 0.0;
  if (d.n_orb < 1 || d.mesh.n_k < 1)
    throw ParseError("n_orb and n_k must be positive");

  const auto &t = doc.at("t");
  if (!t.is_array() || static_cast<int>(t.size()) != d.mesh.n_k)
    throw ParseError("'t' must hold one matrix per k-point");
  for (const auto &tk : t) {
    if (!tk.is_array() || static_cast<int>(tk.size()) != d.n_orb)
      throw ParseError("one-body matrix has wrong row count");
    Eigen::MatrixXcd m(d.n_orb, d.n_orb);
    for (int p = 0; p < d.n_orb; ++p) {
      const auto &row = tk[p];
      if (!row.is_array() || static_cast<int>(row.size()) != d.n_orb)
        throw ParseError("one-body matrix has wrong column count");
      for (int q = 0; q < d.n_orb; ++q)
        m(p, q) = parse_pair(row[q]);
    }
    d.one_body.push_back(std::move(m));
  }

  if (doc.contains("v")) {
    const auto &v = doc.at("v");
    if (!v.is_array())
      throw ParseError("'v' must be an array of records");
    for (const auto &rec : v) {
      if (!rec.is_object())
        throw ParseError("two-body record must be an object");
      TwoBodyKey key{require_int(rec, "kp"), require_int(rec, "p"),
                     require_int(rec, "kq"), require_int(rec, "q"),
                     require_int(rec, "kr"), require_int(rec, "r"),
                     require_int(rec, "ks"), require_int(rec, "s")};
      const cplx val{require_number(rec, "re"), require_number(rec, "im")};
      auto [it, inserted] = d.two_body.emplace(key, val);
      if (!inserted)
        throw ParseError("duplicate two-body record " + describe(key));
    }
  }

  if (doc.contains("refs")) {
    const auto &refs = doc.at("refs");
    if (!refs.is_object())
      throw ParseError("'refs' must be an object");
    for (const auto &[label, val] : refs.items()) {
      if (!val.is_number())
        throw ParseError("reference '" + label + "' is not a number");
      d.references[label] = val.get<double>();
    }
  }
  if (doc.contains("refs_meta") && doc.at("refs_meta").is_string())
    d.references_note = doc.at("refs_meta").get<std::string>();

  return CrystalIntegrals(std::move(d));
}

CrystalIntegrals load_integrals(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open integral file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_integrals(doc);
}

nlohmann::json to_json(const CrystalIntegrals &ints) {
  nlohmann::json doc;
  const auto &mesh = ints.mesh();
  doc["meta"] = {{"n_orb", ints.n_orb()},        {"n_k", mesh.n_k},
                 {"shift", mesh.shift},          {"n_elec", ints.n_elec()},
                 {"L_bohr", mesh.cell_length},   {"e_const", ints.e_const()},
                 {"madelung", ints.madelung()}};
  auto t = nlohmann::json::array();
  for (int k = 0; k < ints.n_k(); ++k) {
    auto mat = nlohmann::json::array();
    const auto &m = ints.one_body(k);
    for (int p = 0; p < ints.n_orb(); ++p) {
      auto row = nlohmann::json::array();
      for (int q = 0; q < ints.n_orb(); ++q)
        row.push_back({m(p, q).real(), m(p, q).imag()});
      mat.push_back(std::move(row));
    }
    t.push_back(std::move(mat));
  }
  doc["t"] = std::move(t);
  auto v = nlohmann::json::array();
  for (const auto &[key, val] : ints.unique_two_body())
    v.push_back({{"kp", key.kp}, {"p", key.p}, {"kq", key.kq}, {"q", key.q},
                 {"kr", key.kr}, {"r", key.r}, {"ks", key.ks}, {"s", key.s},
                 {"re", val.real()}, {"im", val.imag()}});
  doc["v"] = std::move(v);
  doc["refs"] = ints.references();
  if (!ints.references_note().empty())
    doc["refs_meta"] = ints.references_note();
  return doc;
}

void write_integrals(const CrystalIntegrals &ints, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  out << to_json(ints).dump(1) << '\n';
}

double sector_constant(int n_sector, const CrystalIntegrals &ints) {
  const int q = n_sector - ints.n_elec();
  if (q < -1 || q > 1)
    throw SectorOutOfRange("sector with " + std::to_string(n_sector) +
                           " electrons is outside n_elec +/- 1");
  return ints.e_const() + ints.madelung() * q * (q - 1) / 2.0;
}

} // namespace kvqe

/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <complex>
#include <compare>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace kvqe {

using cplx = std::complex<double>;

/// Uniform one-dimensional k-point mesh. A k-point is an integer index in
/// [0, n_k); its value is (index + shift) / n_k in units of 2*pi/L.
struct KMesh {
  int n_k = 1;
  double shift = 0.0;
  double cell_length = 1.0; // Bohr

  int wrap(int k) const noexcept { return ((k % n_k) + n_k) % n_k; }
  double fraction(int k) const noexcept { return (k + shift) / n_k; }
  /// Crystal momentum in radians per Bohr.
  double value(int k) const noexcept;
};

/// True iff k_p - k_q + k_r - k_s is a multiple of n_k (chemist pairing).
bool momentum_ok(int kp, int kq, int kr, int ks, const KMesh &mesh) noexcept;

/// Chemist-notation key (k_p p, k_q q | k_r r, k_s s) over spatial orbitals.
struct TwoBodyKey {
  int kp = 0, p = 0, kq = 0, q = 0, kr = 0, r = 0, ks = 0, s = 0;

  auto operator<=>(const TwoBodyKey &) const = default;

  /// (qp|sr): image under complex conjugation.
  TwoBodyKey hermitian_image() const { return {kq, q, kp, p, ks, s, kr, r}; }
  /// (rs|pq): image under pair swap.
  TwoBodyKey swapped() const { return {kr, r, ks, s, kp, p, kq, q}; }
  /// Lexicographically smallest member of the symmetry orbit.
  TwoBodyKey canonical() const;
};

/// Qubit layout: q = k * (2 n_orb) + 2 p + spin, spin 0 = alpha, 1 = beta.
struct SpinOrbitalMap {
  int n_orb = 1;
  int n_k = 1;

  struct Mode {
    int k;
    int orb;
    int spin;
    bool operator==(const Mode &) const = default;
  };

  int n_qubits() const noexcept { return 2 * n_orb * n_k; }
  int qubit(int k, int orb, int spin) const;
  Mode mode(int qubit) const;
};

/// k-resolved one- and two-body integrals of a crystal in the
/// crystalline-orbital basis. Immutable once constructed; the constructor
/// validates every invariant and throws on violation.
class CrystalIntegrals {
public:
  struct Data {
    KMesh mesh;
    int n_orb = 0;
    int n_elec = 0;
    std::vector<Eigen::MatrixXcd> one_body; // per k, n_orb x n_orb
    /// Any subset of the symmetry orbit may be given; images are generated.
    std::map<TwoBodyKey, cplx> two_body;
    double e_const = 0.0;
    double madelung = 0.0;
    std::map<std::string, double> references;
    std::string references_note;
  };

  explicit CrystalIntegrals(Data data);

  const KMesh &mesh() const noexcept { return data_.mesh; }
  int n_orb() const noexcept { return data_.n_orb; }
  int n_k() const noexcept { return data_.mesh.n_k; }
  int n_elec() const noexcept { return data_.n_elec; }
  int n_qubits() const noexcept { return 2 * data_.n_orb * data_.mesh.n_k; }
  /// Occupied spatial bands per k in the restricted reference.
  int n_occupied_bands() const noexcept;
  SpinOrbitalMap spin_orbitals() const { return {data_.n_orb, data_.mesh.n_k}; }

  const Eigen::MatrixXcd &one_body(int k) const { return data_.one_body.at(k); }
  /// Full two-body table including all symmetry images.
  const std::map<TwoBodyKey, cplx> &two_body() const noexcept { return data_.two_body; }
  /// Only canonical representatives, as stored on disk.
  std::map<TwoBodyKey, cplx> unique_two_body() const;
  cplx two_body(const TwoBodyKey &key) const;

  double e_const() const noexcept { return data_.e_const; }
  double madelung() const noexcept { return data_.madelung; }
  const std::map<std::string, double> &references() const noexcept {
    return data_.references;
  }
  const std::string &references_note() const noexcept { return data_.references_note; }
  /// Reference value or NaN if absent.
  double reference(const std::string &label) const;

private:
  Data data_;
};

/// Relative tolerance of every symmetry check performed on load.
inline constexpr double kSymmetryTolerance = 1e-10;

CrystalIntegrals parse_integrals(const nlohmann::json &doc);
CrystalIntegrals load_integrals(const std::filesystem::path &path);
nlohmann::json to_json(const CrystalIntegrals &ints);
void write_integrals(const CrystalIntegrals &ints, const std::filesystem::path &path);

/// Constant energy of the sector holding n_sector electrons. For charge
/// q = n_sector - n_elec this is e_const + madelung * q * (q - 1) / 2, so
/// removing an electron costs the exchange-divergence shift and adding one
/// does not.
double sector_constant(int n_sector, const CrystalIntegrals &ints);

} // namespace kvqe

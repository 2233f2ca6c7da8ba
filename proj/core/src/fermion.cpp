/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/fermion.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "kvqe/error.hpp"

namespace kvqe {

namespace {

bool out_of_order(const LadderOp &left, const LadderOp &right) {
  if (left.dagger != right.dagger)
    return !left.dagger; // annihilator left of creator
  return left.mode < right.mode;
}

} // namespace

FermionOperator normal_order(std::span<const LadderOp> factors, cplx coeff) {
  FermionOperator out;
  std::vector<std::pair<FermionTerm, cplx>> work;
  work.emplace_back(FermionTerm(factors.begin(), factors.end()), coeff);

  while (!work.empty()) {
    auto [term, c] = std::move(work.back());
    work.pop_back();
    if (std::abs(c) == 0.0)
      continue;

    bool vanished = false;
    bool swapped = true;
    // Bubble sort with anticommutation signs; contractions spawn new work.
    while (swapped && !vanished) {
      swapped = false;
      for (std::size_t i = 0; i + 1 < term.size(); ++i) {
        const LadderOp a = term[i], b = term[i + 1];
        if (a.mode == b.mode && a.dagger == b.dagger) {
          vanished = true;
          break;
        }
        if (!out_of_order(a, b))
          continue;
        if (a.mode == b.mode && !a.dagger && b.dagger) {
          // c_i c+_i = 1 - c+_i c_i
          FermionTerm contracted;
          contracted.reserve(term.size() - 2);
          contracted.insert(contracted.end(), term.begin(), term.begin() + i);
          contracted.insert(contracted.end(), term.begin() + i + 2, term.end());
          work.emplace_back(std::move(contracted), c);
        }
        std::swap(term[i], term[i + 1]);
        c = -c;
        swapped = true;
      }
    }
    if (!vanished)
      out.add_canonical(term, c);
  }
  out.prune();
  return out;
}

FermionOperator normal_order(const FermionOperator &op) {
  FermionOperator out;
  for (const auto &[term, c] : op.terms())
    out += normal_order(term, c);
  return out;
}

FermionOperator FermionOperator::identity(cplx coeff) {
  FermionOperator op;
  op.add_canonical({}, coeff);
  op.prune();
  return op;
}

FermionOperator FermionOperator::product(std::span<const LadderOp> factors, cplx coeff) {
  return normal_order(factors, coeff);
}

cplx FermionOperator::coefficient(const FermionTerm &canonical_term) const {
  auto it = terms_.find(canonical_term);
  return it == terms_.end() ? cplx{} : it->second;
}

int FermionOperator::max_mode() const noexcept {
  int m = -1;
  for (const auto &[term, c] : terms_)
    for (const auto &op : term)
      m = std::max(m, op.mode);
  return m;
}

void FermionOperator::add_canonical(const FermionTerm &term, cplx coeff) {
  terms_[term] += coeff;
}

void FermionOperator::prune() {
  std::erase_if(terms_, [](const auto &kv) { return std::abs(kv.second) < kPruneThreshold; });
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto &[term, c] : terms_) {
    FermionTerm rev(term.rbegin(), term.rend());
    for (auto &op : rev)
      op.dagger = !op.dagger;
    out += normal_order(rev, std::conj(c));
  }
  return out;
}

bool FermionOperator::approx_equal(const FermionOperator &other, double tol) const {
  for (const auto &[term, c] : terms_)
    if (std::abs(c - other.coefficient(term)) > tol)
      return false;
  for (const auto &[term, c] : other.terms_)
    if (!terms_.contains(term) && std::abs(c) > tol)
      return false;
  return true;
}

bool FermionOperator::is_hermitian(double tol) const {
  return approx_equal(adjoint(), tol);
}

FermionOperator &FermionOperator::operator+=(const FermionOperator &rhs) {
  for (const auto &[term, c] : rhs.terms_) {
    auto it = terms_.try_emplace(term).first;
    it->second += c;
    if (std::abs(it->second) < kPruneThreshold)
      terms_.erase(it);
  }
  return *this;
}

FermionOperator &FermionOperator::operator-=(const FermionOperator &rhs) {
  for (const auto &[term, c] : rhs.terms_) {
    auto it = terms_.try_emplace(term).first;
    it->second -= c;
    if (std::abs(it->second) < kPruneThreshold)
      terms_.erase(it);
  }
  return *this;
}

FermionOperator &FermionOperator::operator*=(cplx scale) {
  for (auto &[term, c] : terms_)
    c *= scale;
  prune();
  return *this;
}

FermionOperator operator*(const FermionOperator &a, const FermionOperator &b) {
  FermionOperator out;
  FermionTerm buf;
  for (const auto &[ta, ca] : a.terms()) {
    for (const auto &[tb, cb] : b.terms()) {
      buf.assign(ta.begin(), ta.end());
      buf.insert(buf.end(), tb.begin(), tb.end());
      out += normal_order(buf, ca * cb);
    }
  }
  return out;
}

std::string FermionOperator::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto &[term, c] : terms_) {
    if (!first)
      os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (const auto &op : term)
      os << " " << (op.dagger ? "c+" : "c") << op.mode;
  }
  return first ? "0" : os.str();
}

FermionOperator build_hamiltonian(const CrystalIntegrals &ints) {
  const SpinOrbitalMap modes = ints.spin_orbitals();
  FermionOperator h = FermionOperator::identity(sector_constant(ints.n_elec(), ints));

  for (int k = 0; k < ints.n_k(); ++k) {
    const auto &t = ints.one_body(k);
    for (int p = 0; p < ints.n_orb(); ++p)
      for (int q = 0; q < ints.n_orb(); ++q) {
        if (std::abs(t(p, q)) < kPruneThreshold)
          continue;
        for (int spin = 0; spin < 2; ++spin) {
          const LadderOp f[] = {create(modes.qubit(k, p, spin)),
                                annihilate(modes.qubit(k, q, spin))};
          h += FermionOperator::product(f, t(p, q));
        }
      }
  }

  for (const auto &[key, v] : ints.two_body()) {
    if (std::abs(v) < kPruneThreshold)
      continue;
    for (int sigma = 0; sigma < 2; ++sigma)
      for (int tau = 0; tau < 2; ++tau) {
        const int P = modes.qubit(key.kp, key.p, sigma);
        const int Q = modes.qubit(key.kq, key.q, sigma);
        const int R = modes.qubit(key.kr, key.r, tau);
        const int S = modes.qubit(key.ks, key.s, tau);
        if (P == R || Q == S)
          continue;
        const LadderOp f[] = {create(P), create(R), annihilate(S), annihilate(Q)};
        h += FermionOperator::product(f, 0.5 * v);
      }
  }
  return h;
}

FermionTerm Excitation::excitation_string() const {
  FermionTerm t;
  for (int c : creation)
    t.push_back(create(c));
  for (int a : annihilation)
    t.push_back(annihilate(a));
  return t;
}

std::string Excitation::to_string() const {
  std::ostringstream os;
  os << (kind == Kind::Single ? "S" : "D") << "[";
  for (int c : creation)
    os << c << "+ ";
  for (std::size_t i = 0; i < annihilation.size(); ++i)
    os << annihilation[i] << (i + 1 < annihilation.size() ? " " : "");
  os << "]";
  return os.str();
}

FermionOperator excitation_generator(const Excitation &exc, cplx amp) {
  const std::size_t rank = exc.kind == Excitation::Kind::Single ? 1 : 2;
  if (exc.creation.size() != rank || exc.annihilation.size() != rank)
    throw InvalidExcitation("excitation " + exc.to_string() + " has wrong rank");
  for (const auto *idx : {&exc.creation, &exc.annihilation}) {
    if (std::set<int>(idx->begin(), idx->end()).size() != idx->size())
      throw InvalidExcitation("repeated index in excitation " + exc.to_string());
    for (int m : *idx)
      if (m < 0)
        throw InvalidExcitation("negative mode index in " + exc.to_string());
  }
  const FermionTerm t = exc.excitation_string();
  const FermionOperator T = FermionOperator::product(t, 1.0);
  return T * amp - T.adjoint() * std::conj(amp);
}

} // namespace kvqe

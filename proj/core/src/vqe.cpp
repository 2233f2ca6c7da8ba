/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/vqe.hpp"

#include <bit>
#include <chrono>
#include <cmath>

#include "kvqe/error.hpp"

namespace kvqe {

namespace {

constexpr std::uint64_t kAlphaMask = 0x5555555555555555ULL;

// Sector spanned by the support of s, if it is a single (N, 2Sz) sector.
std::optional<SectorBasis> support_sector(const StateVector &s) {
  std::optional<std::pair<int, int>> key;
  for (std::uint64_t b = 0; b < s.dimension(); ++b) {
    if (s[b] == cplx(0.0))
      continue;
    const int n = std::popcount(b), na = std::popcount(b & kAlphaMask);
    const std::pair<int, int> k{n, 2 * na - n};
    if (key && *key != k)
      return std::nullopt;
    key = k;
  }
  if (!key)
    return std::nullopt;
  const SpinOrbitalMap modes{std::max(1, s.n_qubits() / 2), 1};
  if (modes.n_qubits() != s.n_qubits())
    return std::nullopt;
  return SectorBasis(modes, SectorSpec{key->first, key->second, std::nullopt});
}

} // namespace

VqeProblem::VqeProblem(PauliSum hamiltonian, AnsatzCircuit circuit, StateVector reference,
                       BfgsSettings settings)
    : hamiltonian_(std::move(hamiltonian)), circuit_(std::move(circuit)),
      reference_(std::move(reference)), settings_(settings) {
  if (hamiltonian_.n_qubits() != circuit_.n_qubits() ||
      reference_.n_qubits() != circuit_.n_qubits())
    throw SizeMismatch("hamiltonian, circuit and reference act on different registers");
  if (!hamiltonian_.is_hermitian(1e-10))
    throw HermiticityViolation("VQE hamiltonian is not Hermitian");
  if (auto basis = support_sector(reference_))
    sparse_.emplace(hamiltonian_, std::move(*basis));
}

void VqeProblem::check(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != circuit_.n_params())
    throw ParamLengthMismatch("expected " + std::to_string(circuit_.n_params()) +
                              " parameters, got " + std::to_string(params.size()));
}

StateVector VqeProblem::apply_h(const StateVector &s) const {
  return sparse_ ? sparse_->apply(s) : apply_operator(s, hamiltonian_);
}

StateVector VqeProblem::state(std::span<const double> params) const {
  check(params);
  return prepare_state(circuit_, params, reference_);
}

double VqeProblem::energy(std::span<const double> params) const {
  const StateVector s = state(params);
  return inner_product(s, apply_h(s)).real();
}

std::vector<double> VqeProblem::gradient(std::span<const double> params) const {
  std::vector<double> g(params.size());
  energy_and_gradient(params, g);
  return g;
}

double VqeProblem::energy_and_gradient(std::span<const double> params,
                                       std::span<double> grad) const {
  check(params);
  if (grad.size() != params.size())
    throw ParamLengthMismatch("gradient buffer has the wrong length");
  StateVector phi = prepare_state(circuit_, params, reference_);
  StateVector lambda = apply_h(phi);
  const double e = inner_product(phi, lambda).real();
  std::fill(grad.begin(), grad.end(), 0.0);
  const auto &blocks = circuit_.blocks();
  for (auto b = blocks.rbegin(); b != blocks.rend(); ++b)
    for (auto p = b->parts.rbegin(); p != b->parts.rend(); ++p) {
      grad[p->slot] += 2.0 * generator_matrix_element(lambda, *b, *p, phi).real();
      const double theta = params[p->slot];
      apply_part(phi, *b, *p, -theta);
      apply_part(lambda, *b, *p, -theta);
    }
  return e;
}

VqeResult minimize(const VqeProblem &problem, std::vector<double> initial) {
  if (static_cast<int>(initial.size()) != problem.n_params())
    throw ParamLengthMismatch("initial parameter vector has the wrong length");
  const auto t0 = std::chrono::steady_clock::now();
  const Objective f = [&](const Eigen::VectorXd &x, Eigen::VectorXd &g) {
    return problem.energy_and_gradient({x.data(), static_cast<std::size_t>(x.size())},
                                       {g.data(), static_cast<std::size_t>(g.size())});
  };
  const Eigen::VectorXd x0 =
      Eigen::Map<const Eigen::VectorXd>(initial.data(), static_cast<Eigen::Index>(initial.size()));
  BfgsResult br = bfgs_minimize(f, x0, problem.settings());

  VqeResult r;
  r.params.assign(br.x.data(), br.x.data() + br.x.size());
  r.energy = br.value;
  r.trace = std::move(br.trace);
  r.status = br.status;
  r.iterations = br.iterations;
  r.evaluations = br.evaluations;
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

VqeResult minimize(const VqeProblem &problem) {
  return minimize(problem, std::vector<double>(problem.n_params(), 0.0));
}

nlohmann::json to_json(const VqeResult &r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto &s : r.trace)
    trace.push_back({{"energy", s.value}, {"gradient_norm", s.gradient_norm}});
  return {{"energy", r.energy},
          {"params", r.params},
          {"trace", trace},
          {"converged", r.converged()},
          {"status", to_string(r.status)},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"wall_time_s", r.wall_time_s}};
}

VqeResult vqe_result_from_json(const nlohmann::json &doc) {
  try {
    VqeResult r;
    r.energy = doc.at("energy").get<double>();
    r.params = doc.at("params").get<std::vector<double>>();
    for (const auto &s : doc.at("trace"))
      r.trace.push_back({s.at("energy").get<double>(), s.at("gradient_norm").get<double>()});
    const std::string status = doc.value("status", std::string{});
    if (status == "line_search_failure")
      r.status = BfgsStatus::LineSearchFailure;
    else if (doc.at("converged").get<bool>())
      r.status = BfgsStatus::Converged;
    else
      r.status = BfgsStatus::MaxIterations;
    r.iterations = doc.value("iterations", 0);
    r.evaluations = doc.value("evaluations", 0);
    r.wall_time_s = doc.at("wall_time_s").get<double>();
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("malformed VQE result: ") + e.what());
  }
}

} // namespace kvqe

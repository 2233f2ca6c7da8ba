/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "kvqe/error.hpp"

namespace kvqe {

namespace {

void project_out(Eigen::VectorXcd &v, const std::vector<Eigen::VectorXcd> &basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto &q : basis)
      v -= q * q.dot(v);
}

struct Pair {
  double value;
  Eigen::VectorXcd vector;
  double residual;
};

// Lowest eigenpair of op restricted to the complement of `locked`.
Pair lowest_in_complement(const MatVec &op, Eigen::Index dim,
                          const std::vector<Eigen::VectorXcd> &locked, std::mt19937_64 &rng,
                          const LanczosSettings &st, const Eigen::VectorXcd *start = nullptr) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(dim);
  const Eigen::Index free_dim = dim - static_cast<Eigen::Index>(locked.size());
  if (start) {
    v = *start;
    project_out(v, locked);
  } else {
    for (int attempt = 0;; ++attempt) {
      for (Eigen::Index i = 0; i < dim; ++i)
        v[i] = {gauss(rng), gauss(rng)};
      project_out(v, locked);
      if (v.norm() > 1e-8 || attempt > 8)
        break;
    }
  }
  v.normalize();

  const int max_m = static_cast<int>(std::min<Eigen::Index>(free_dim, st.max_krylov));
  std::vector<Eigen::VectorXcd> V{v};
  std::vector<double> alpha, beta;
  Eigen::VectorXcd w(dim);
  Pair best{0.0, v, std::numeric_limits<double>::infinity()};

  for (int j = 0; j < max_m; ++j) {
    op(V[j], w);
    project_out(w, locked);
    const double a = V[j].dot(w).real();
    alpha.push_back(a);
    project_out(w, V);
    const double b = w.norm();
    const bool exhausted = b < 1e-12 || j + 1 == max_m;

    if (exhausted || (j + 1) % 8 == 0) {
      const int m = j + 1;
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m)
          T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      const Eigen::VectorXd y = es.eigenvectors().col(0);
      const double estimate = b * std::abs(y[m - 1]);
      if (exhausted || estimate <= 0.1 * st.residual_tolerance) {
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < m; ++i)
          x += y[i] * V[i];
        project_out(x, locked);
        x.normalize();
        Eigen::VectorXcd hx(dim);
        op(x, hx);
        const double theta = x.dot(hx).real();
        const double res = (hx - theta * x).norm();
        if (res < best.residual)
          best = {theta, x, res};
        if (res <= st.residual_tolerance || exhausted)
          break;
      }
    }
    if (b < 1e-12)
      break;
    beta.push_back(b);
    V.push_back(w / b);
  }
  return best;
}

} // namespace

LanczosResult lanczos_lowest(const MatVec &op, Eigen::Index dim, int n_states,
                             const LanczosSettings &st) {
  if (dim <= 0)
    throw SectorEmpty("Lanczos on an empty space");
  n_states = static_cast<int>(std::min<Eigen::Index>(n_states, dim));
  std::mt19937_64 rng(st.seed);
  LanczosResult out;
  std::vector<Eigen::VectorXcd> locked;
  for (int k = 0; k < n_states; ++k) {
    Pair p = lowest_in_complement(op, dim, locked, rng, st);
    // A non-converged pair is refined by restarting from the current best vector.
    for (int restart = 0; p.residual > st.residual_tolerance && restart < 20; ++restart) {
      Pair q = lowest_in_complement(op, dim, locked, rng, st, &p.vector);
      if (q.residual < p.residual)
        p = std::move(q);
    }
    locked.push_back(p.vector);
    out.values.push_back(p.value);
    out.vectors.push_back(std::move(p.vector));
    out.residuals.push_back(p.residual);
  }
  // Locking order is ascending in exact arithmetic; sort to absorb roundoff.
  std::vector<std::size_t> order(out.values.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.values[a] < out.values[b]; });
  LanczosResult sorted;
  for (std::size_t i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.vectors.push_back(std::move(out.vectors[i]));
    sorted.residuals.push_back(out.residuals[i]);
  }
  return sorted;
}

} // namespace kvqe

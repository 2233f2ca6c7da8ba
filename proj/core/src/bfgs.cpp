/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace kvqe {

namespace {

struct Probe {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0; // directional derivative
  Eigen::VectorXd grad;
};

// Minimizer of the cubic through (a, fa, ga) and (b, fb, gb), or the midpoint
// when the cubic has no usable minimum inside the safeguarded interval.
double cubic_step(const Probe &a, const Probe &b) {
  const double lo = std::min(a.alpha, b.alpha), hi = std::max(a.alpha, b.alpha);
  const double mid = 0.5 * (lo + hi);
  const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  if (!(disc >= 0.0))
    return mid;
  const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
  const double denom = b.slope - a.slope + 2.0 * d2;
  if (denom == 0.0)
    return mid;
  const double t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin)
    return mid;
  return t;
}

class LineSearch {
public:
  LineSearch(const Objective &f, const BfgsSettings &st, const Eigen::VectorXd &x,
             const Eigen::VectorXd &p, double f0, double g0, int &evaluations)
      : f_(f), st_(st), x_(x), p_(p), f0_(f0), g0_(g0), evals_(evaluations) {}

  std::optional<Probe> run(double alpha) {
    Probe prev{0.0, f0_, g0_, {}};
    for (int i = 0; budget_left(); ++i) {
      Probe cur = probe(alpha);
      if (!std::isfinite(cur.value) || cur.value > f0_ + st_.c1 * alpha * g0_ ||
          (i > 0 && cur.value >= prev.value))
        return zoom(prev, cur);
      if (std::abs(cur.slope) <= -st_.c2 * g0_)
        return cur;
      if (cur.slope >= 0.0)
        return zoom(cur, prev);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return std::nullopt;
  }

private:
  bool budget_left() const { return used_ < st_.max_line_search_evaluations; }

  Probe probe(double alpha) {
    ++used_;
    ++evals_;
    Probe pr;
    pr.alpha = alpha;
    pr.grad.resize(x_.size());
    pr.value = f_(x_ + alpha * p_, pr.grad);
    pr.slope = pr.grad.dot(p_);
    return pr;
  }

  std::optional<Probe> zoom(Probe lo, Probe hi) {
    while (budget_left()) {
      if (!std::isfinite(hi.value) || !std::isfinite(hi.slope)) {
        hi.value = std::numeric_limits<double>::infinity();
        hi.slope = 0.0;
      }
      const double alpha = std::isfinite(hi.value) ? cubic_step(lo, hi) : 0.5 * (lo.alpha + hi.alpha);
      if (std::abs(hi.alpha - lo.alpha) <= 1e-14 * std::max(1.0, std::abs(lo.alpha)))
        break;
      Probe cur = probe(alpha);
      if (!std::isfinite(cur.value) || cur.value > f0_ + st_.c1 * alpha * g0_ ||
          cur.value >= lo.value) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.slope) <= -st_.c2 * g0_)
        return cur;
      if (cur.slope * (hi.alpha - lo.alpha) >= 0.0)
        hi = std::move(lo);
      lo = std::move(cur);
    }
    // Out of budget: accept the best point if it still decreases sufficiently.
    if (lo.alpha > 0.0 && lo.value <= f0_ + st_.c1 * lo.alpha * g0_)
      return lo;
    return std::nullopt;
  }

  const Objective &f_;
  const BfgsSettings &st_;
  const Eigen::VectorXd &x_;
  const Eigen::VectorXd &p_;
  double f0_, g0_;
  int &evals_;
  int used_ = 0;
};

} // namespace

std::string to_string(BfgsStatus s) {
  switch (s) {
  case BfgsStatus::Converged:
    return "converged";
  case BfgsStatus::MaxIterations:
    return "max_iterations";
  case BfgsStatus::LineSearchFailure:
    return "line_search_failure";
  }
  return "unknown";
}

BfgsResult bfgs_minimize(const Objective &f, Eigen::VectorXd x0, const BfgsSettings &st) {
  const Eigen::Index n = x0.size();
  BfgsResult res;
  res.x = std::move(x0);
  res.gradient.resize(n);
  res.value = f(res.x, res.gradient);
  res.evaluations = 1;
  res.trace.push_back({res.value, n ? res.gradient.lpNorm<Eigen::Infinity>() : 0.0});

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  bool just_reset = true;

  while (true) {
    const double gnorm = n ? res.gradient.lpNorm<Eigen::Infinity>() : 0.0;
    if (gnorm <= st.gradient_tolerance) {
      res.status = BfgsStatus::Converged;
      return res;
    }
    if (res.iterations >= st.max_iterations) {
      res.status = BfgsStatus::MaxIterations;
      return res;
    }

    Eigen::VectorXd p = -(hinv * res.gradient);
    double slope = p.dot(res.gradient);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      scaled = false;
      p = -res.gradient;
      slope = p.dot(res.gradient);
    }
    const double alpha0 = scaled ? 1.0 : std::min(1.0, 1.0 / gnorm);
    LineSearch ls(f, st, res.x, p, res.value, slope, res.evaluations);
    std::optional<Probe> step = ls.run(alpha0);
    if (!step) {
      if (just_reset) {
        res.status = BfgsStatus::LineSearchFailure;
        return res;
      }
      // Retry once along steepest descent with a fresh curvature model.
      hinv.setIdentity();
      scaled = false;
      just_reset = true;
      continue;
    }
    just_reset = false;

    const Eigen::VectorXd s = step->alpha * p;
    const Eigen::VectorXd y = step->grad - res.gradient;
    res.x += s;
    res.value = step->value;
    res.gradient = step->grad;
    ++res.iterations;
    res.trace.push_back({res.value, res.gradient.lpNorm<Eigen::Infinity>()});

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * y;
      const double yhy = y.dot(hy);
      hinv.noalias() -= rho * (hy * s.transpose() + s * hy.transpose());
      hinv.noalias() += (rho * rho * yhy + rho) * (s * s.transpose());
    }
  }
}

} // namespace kvqe

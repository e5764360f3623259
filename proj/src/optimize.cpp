// src/optimize.cpp

// Copyright 2026  The llrcal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "llrcal/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace llrcal {

std::string_view to_string(OptimStatus s) {
  switch (s) {
    case OptimStatus::converged:
      return "converged";
    case OptimStatus::max_iter:
      return "max_iter";
    case OptimStatus::escaped_saddle_then_converged:
      return "escaped_saddle_then_converged";
    case OptimStatus::escaped_saddle_then_max_iter:
      return "escaped_saddle_then_max_iter";
    case OptimStatus::line_search_failure:
      return "line_search_failure";
    case OptimStatus::saddle_escape_failed:
      return "saddle_escape_failed";
  }
  return "unknown";
}

void BfgsConfig::validate() const {
  if (!(0.0 < c1 && c1 < c2 && c2 < 1.0))
    throw InvalidArgument("bfgs: Wolfe constants need 0 < c1 < c2 < 1");
  if (!(gradient_tolerance >= 0.0)) throw InvalidArgument("bfgs: negative gradient tolerance");
  if (max_iterations < 0 || max_line_search_steps < 1)
    throw InvalidArgument("bfgs: iteration limits must be positive");
}

void TrustRegionConfig::validate() const {
  if (!(hessian_subsample > 0.0 && hessian_subsample <= 1.0))
    throw InvalidArgument("trust-region: Hessian subsample fraction must be in (0, 1]");
  if (!(initial_radius > 0.0) || !(max_radius >= initial_radius))
    throw InvalidArgument("trust-region: need 0 < initial_radius <= max_radius");
  if (!(gradient_tolerance >= 0.0)) throw InvalidArgument("trust-region: negative tolerance");
  if (!(eta >= 0.0 && eta < 0.25)) throw InvalidArgument("trust-region: eta must be in [0, 0.25)");
  if (max_iterations < 0) throw InvalidArgument("trust-region: negative iteration limit");
}

// ---- BFGS ----------------------------------------------------------------------

namespace {

struct LinePoint {
  double a = 0.0;
  double f = 0.0;
  double d = 0.0;  // directional derivative
  Vector g;
  bool finite = true;
};

class WolfeSearch {
 public:
  WolfeSearch(const Objective &obj, const Vector &x, const Vector &p, double f0, double d0,
              const BfgsConfig &cfg)
      : obj_(obj), x_(x), p_(p), f0_(f0), d0_(d0), cfg_(cfg) {}

  // Returns the accepted point, or nullopt when the search is exhausted.
  std::optional<LinePoint> run() {
    LinePoint prev{0.0, f0_, d0_, {}, true};
    double a = 1.0;
    for (int i = 0; i < cfg_.max_line_search_steps; ++i) {
      LinePoint cur = eval(a);
      if (!cur.finite || cur.f > f0_ + cfg_.c1 * a * d0_ || (i > 0 && cur.f >= prev.f))
        return zoom(prev, cur);
      if (std::abs(cur.d) <= -cfg_.c2 * d0_) return cur;
      if (cur.d >= 0.0) return zoom(cur, prev);
      prev = cur;
      a *= 2.0;
    }
    return std::nullopt;
  }

 private:
  LinePoint eval(double a) const {
    LinePoint pt;
    pt.a = a;
    pt.f = obj_.value_and_gradient(x_ + a * p_, pt.g);
    pt.finite = std::isfinite(pt.f) && pt.g.allFinite();
    pt.d = pt.finite ? pt.g.dot(p_) : 0.0;
    return pt;
  }

  static double cubic_min(const LinePoint &lo, const LinePoint &hi) {
    if (!lo.finite || !hi.finite) return std::numeric_limits<double>::quiet_NaN();
    const double d1 = lo.d + hi.d - 3.0 * (lo.f - hi.f) / (lo.a - hi.a);
    const double disc = d1 * d1 - lo.d * hi.d;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double d2 = std::copysign(std::sqrt(disc), hi.a - lo.a);
    return hi.a - (hi.a - lo.a) * (hi.d + d2 - d1) / (hi.d - lo.d + 2.0 * d2);
  }

  std::optional<LinePoint> zoom(LinePoint lo, LinePoint hi) {
    for (int j = 0; j < cfg_.max_line_search_steps; ++j) {
      const double left = std::min(lo.a, hi.a), right = std::max(lo.a, hi.a);
      const double width = right - left;
      if (!(width > 0.0)) return std::nullopt;
      double a = cubic_min(lo, hi);
      if (!std::isfinite(a) || a < left + 0.1 * width || a > right - 0.1 * width)
        a = 0.5 * (lo.a + hi.a);
      LinePoint cur = eval(a);
      if (!cur.finite || cur.f > f0_ + cfg_.c1 * a * d0_ || cur.f >= lo.f) {
        hi = cur;
      } else {
        if (std::abs(cur.d) <= -cfg_.c2 * d0_) return cur;
        if (cur.d * (hi.a - lo.a) >= 0.0) hi = lo;
        lo = cur;
      }
    }
    // Exhausted: still hand back an Armijo point if the bracket found one.
    if (lo.a > 0.0 && lo.finite && lo.f < f0_) return lo;
    return std::nullopt;
  }

  const Objective &obj_;
  const Vector &x_;
  const Vector &p_;
  double f0_, d0_;
  const BfgsConfig &cfg_;
};

double tolerance_for(double tol, double f) { return tol * (std::abs(f) + 1.0); }

}  // namespace

OptimResult bfgs_minimize(const Objective &obj, const Vector &x0, const BfgsConfig &cfg) {
  cfg.validate();
  const int n = obj.dimension();
  if (x0.size() != n) throw InvalidArgument("bfgs: starting point has wrong dimension");

  OptimResult res;
  res.x = x0;
  Vector g;
  res.f = obj.value_and_gradient(res.x, g);
  if (!std::isfinite(res.f) || !g.allFinite())
    throw InvalidArgument("bfgs: objective is not finite at the starting point");
  res.trace.push_back(res.f);

  Matrix hinv = Matrix::Identity(n, n);
  bool scaled = false;
  res.status = OptimStatus::max_iter;
  for (;;) {
    res.gradient_norm = g.norm();
    if (res.gradient_norm <= tolerance_for(cfg.gradient_tolerance, res.f)) {
      res.status = OptimStatus::converged;
      break;
    }
    if (res.iterations >= cfg.max_iterations) break;

    Vector p = -hinv * g;
    double d0 = g.dot(p);
    if (!(d0 < 0.0)) {
      hinv.setIdentity();
      scaled = false;
      p = -g;
      d0 = -g.squaredNorm();
    }
    WolfeSearch search(obj, res.x, p, res.f, d0, cfg);
    const auto pt = search.run();
    if (!pt) {
      res.status = OptimStatus::line_search_failure;
      break;
    }
    const Vector s = pt->a * p;
    const Vector y = pt->g - g;
    res.x += s;
    res.f = pt->f;
    g = pt->g;
    ++res.iterations;
    res.trace.push_back(res.f);

    const double ys = y.dot(s);
    if (ys > 0.0) {
      if (!scaled) {
        hinv *= ys / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / ys;
      const Matrix left = Matrix::Identity(n, n) - rho * s * y.transpose();
      hinv = left * hinv * left.transpose() + rho * s * s.transpose();
    }
  }
  res.gradient_norm = g.norm();
  return res;
}

// ---- linear algebra ---------------------------------------------------------

SymmetricEigen eig_sym(const Matrix &a) {
  if (a.rows() != a.cols()) throw InvalidArgument("eig_sym: matrix is not square");
  if (a.rows() == 0) return {Vector(), Matrix()};
  if (!a.allFinite()) throw InvalidArgument("eig_sym: matrix has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument("eig_sym: matrix is not symmetric");
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("eig_sym: eigen-decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix build_hessian(const Objective &obj, const Vector &x, double rho, std::uint64_t seed) {
  if (!(rho > 0.0 && rho <= 1.0)) throw InvalidArgument("build_hessian: rho must be in (0, 1]");
  const int n = obj.dimension();
  if (n > 64) throw InvalidArgument("build_hessian: dimension above 64");
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(n, i);
    h.col(i) = rho < 1.0 ? obj.subsampled_hvp(x, e, rho, seed) : obj.hvp(x, e);
  }
  return 0.5 * (h + h.transpose());
}

Vector solve_trust_region_subproblem(const Matrix &h, const Vector &g, double radius) {
  const int n = static_cast<int>(g.size());
  const SymmetricEigen eig = eig_sym(h);
  const Vector &lam = eig.values;
  const Vector gt = eig.vectors.transpose() * g;
  const double lmin = lam[0];

  auto step_at = [&](double mu, const std::vector<bool> *skip) {
    Vector coef(n);
    for (int i = 0; i < n; ++i)
      coef[i] = (skip && (*skip)[i]) ? 0.0 : -gt[i] / (lam[i] + mu);
    return Vector(eig.vectors * coef);
  };

  if (lmin > 0.0) {
    const Vector p = step_at(0.0, nullptr);
    if (p.norm() <= radius) return p;
  }

  const double lo = std::max(0.0, -lmin);
  const double lam_scale = std::max(1.0, lam.cwiseAbs().maxCoeff());

  // Hard case: g has (numerically) no component along the bottom eigenspace
  // and the step restricted to the other directions stays inside.
  std::vector<bool> bottom(n, false);
  double g_bottom = 0.0;
  for (int i = 0; i < n; ++i) {
    if (lam[i] <= lmin + 1e-12 * lam_scale) {
      bottom[i] = true;
      g_bottom += gt[i] * gt[i];
    }
  }
  g_bottom = std::sqrt(g_bottom);
  if (g_bottom <= 1e-12 * std::max(1.0, g.norm())) {
    const Vector q = step_at(lo, &bottom);
    const double qn = q.norm();
    if (qn <= radius) {
      const Vector u = eig.vectors.col(0);
      const double tau = std::sqrt(std::max(0.0, radius * radius - qn * qn));
      const double sign = u.dot(g) > 0.0 ? -1.0 : 1.0;
      return q + sign * tau * u;
    }
  }

  // Secular equation 1/radius - 1/||p(mu)|| = 0 on (lo, hi], Newton with
  // bisection safeguard.  ||p(hi)|| <= radius by construction of hi.
  auto norm_and_slope = [&](double mu) {
    double s2 = 0.0, s3 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double den = lam[i] + mu;
      s2 += gt[i] * gt[i] / (den * den);
      s3 += gt[i] * gt[i] / (den * den * den);
    }
    return std::pair<double, double>(std::sqrt(s2), s3);
  };
  double left = lo;
  double right = lo + g.norm() / radius + std::numeric_limits<double>::min();
  double mu = right;
  for (int it = 0; it < 200; ++it) {
    const auto [pn, s3] = norm_and_slope(mu);
    const double phi = 1.0 / radius - 1.0 / pn;
    if (std::abs(pn - radius) <= 1e-12 * radius) break;
    if (phi < 0.0) right = mu; else left = mu;
    // d(1/||p||)/dmu = s3 / ||p||^3
    const double dphi = -s3 / (pn * pn * pn);
    double next = mu - phi / dphi;
    if (!(next > left && next < right)) next = 0.5 * (left + right);
    if (next == mu) break;
    mu = next;
  }
  return step_at(mu, nullptr);
}

// ---- saddle escape ----------------------------------------------------------

SaddleEscape escape_saddle(const Objective &obj, const Vector &x, const Matrix &hessian,
                           double curvature_threshold) {
  const SymmetricEigen eig = eig_sym(hessian);
  const double lmin = eig.values[0];
  if (lmin > 0.0)
    throw EscapeError(EscapeError::Kind::not_a_saddle,
                      "escape_saddle: Hessian is positive definite (lambda_min = " +
                          std::to_string(lmin) + ")");
  if (lmin >= curvature_threshold)
    throw EscapeError(EscapeError::Kind::no_decrease_found,
                      "escape_saddle: no curvature below threshold (flat region, lambda_min = " +
                          std::to_string(lmin) + ")");

  const Vector u = eig.vectors.col(0).normalized();
  const double f0 = obj.value(x);
  double t = 1.0;
  for (int k = 0; k <= 40; ++k, t *= 0.5) {
    const Vector xp = x + t * u, xm = x - t * u;
    const double fp = obj.value(xp), fm = obj.value(xm);
    const bool dp = std::isfinite(fp) && fp < f0;
    const bool dm = std::isfinite(fm) && fm < f0;
    if (dp && (!dm || fp <= fm)) return {xp, u, t, fp};
    if (dm) return {xm, Vector(-u), t, fm};
  }
  throw EscapeError(EscapeError::Kind::no_decrease_found,
                    "escape_saddle: no decrease along the most negative curvature direction");
}

// ---- trust-region Newton ----------------------------------------------------

OptimResult trust_region_newton(const Objective &obj, const Vector &x0,
                                const TrustRegionConfig &cfg) {
  cfg.validate();
  const int n = obj.dimension();
  if (x0.size() != n) throw InvalidArgument("trust-region: starting point has wrong dimension");

  OptimResult res;
  res.x = x0;
  Vector g;
  res.f = obj.value_and_gradient(res.x, g);
  if (!std::isfinite(res.f) || !g.allFinite())
    throw InvalidArgument("trust-region: objective is not finite at the starting point");
  res.trace.push_back(res.f);

  double radius = cfg.initial_radius;
  auto finish = [&](OptimStatus status, const Matrix *full_hessian) {
    res.status = status;
    res.gradient_norm = g.norm();
    const Matrix h = full_hessian ? *full_hessian : build_hessian(obj, res.x);
    if (h.allFinite()) res.min_hessian_eigenvalue = eig_sym(h).values[0];
    return res;
  };

  for (;;) {
    res.gradient_norm = g.norm();
    if (res.gradient_norm <= tolerance_for(cfg.gradient_tolerance, res.f)) {
      const Matrix h = build_hessian(obj, res.x);
      const double lmin = eig_sym(h).values[0];
      if (lmin >= cfg.curvature_threshold) {
        return finish(res.saddle_escapes > 0 ? OptimStatus::escaped_saddle_then_converged
                                             : OptimStatus::converged,
                      &h);
      }
      if (res.iterations >= cfg.max_iterations)
        return finish(res.saddle_escapes > 0 ? OptimStatus::escaped_saddle_then_max_iter
                                             : OptimStatus::max_iter,
                      &h);
      try {
        const SaddleEscape esc = escape_saddle(obj, res.x, h, cfg.curvature_threshold);
        res.x = esc.x;
        res.f = obj.value_and_gradient(res.x, g);
        res.escape_directions.push_back(esc.direction);
        ++res.saddle_escapes;
        ++res.iterations;
        res.trace.push_back(res.f);
        radius = std::max(cfg.initial_radius, esc.step);
        continue;
      } catch (const EscapeError &) {
        return finish(OptimStatus::saddle_escape_failed, &h);
      }
    }
    if (res.iterations >= cfg.max_iterations)
      return finish(res.saddle_escapes > 0 ? OptimStatus::escaped_saddle_then_max_iter
                                           : OptimStatus::max_iter,
                    nullptr);

    const Matrix h = build_hessian(obj, res.x, cfg.hessian_subsample,
                                   cfg.seed + static_cast<std::uint64_t>(res.iterations));
    const Vector p = solve_trust_region_subproblem(h, g, radius);
    const double pnorm = p.norm();
    const double predicted = -(g.dot(p) + 0.5 * p.dot(h * p));
    const Vector xn = res.x + p;
    Vector gn;
    const double fn = obj.value_and_gradient(xn, gn);
    double ratio = -1.0;
    if (std::isfinite(fn) && gn.allFinite() && predicted > 0.0) ratio = (res.f - fn) / predicted;

    if (ratio < 0.25) {
      radius = 0.25 * std::min(radius, pnorm);
    } else if (ratio > 0.75 && pnorm >= 0.99 * radius) {
      radius = std::min(2.0 * radius, cfg.max_radius);
    }
    ++res.iterations;
    if (ratio > cfg.eta && fn <= res.f) {
      res.x = xn;
      res.f = fn;
      g = gn;
      res.trace.push_back(res.f);
    }
    if (radius < 1e-15 * std::max(1.0, res.x.norm()))
      return finish(OptimStatus::line_search_failure, nullptr);
  }
}

}  // namespace llrcal

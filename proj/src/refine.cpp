#include "qseed/refine.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "qseed/errors.hpp"

namespace qseed::refine {

namespace {

double checked_eval(const objectives::Objective& obj,
                    const std::vector<double>& x) {
  const double f = obj.eval(x);
  if (!std::isfinite(f)) {
    throw NonFiniteValueError("objective returned a non-finite value");
  }
  return f;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

PsoResult pso(const objectives::Objective& obj, const std::vector<double>& lb,
              const std::vector<double>& ub, const PsoConfig& cfg,
              RngStream& rng, const std::vector<double>* warm_start) {
  const auto n = static_cast<std::size_t>(obj.dims());
  if (lb.size() != n || ub.size() != n) {
    throw std::invalid_argument("swarm bounds must match objective dims");
  }
  if (warm_start != nullptr && warm_start->size() != n) {
    throw std::invalid_argument("warm start must match objective dims");
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (!(lb[d] <= ub[d])) {
      throw std::invalid_argument("swarm bounds must satisfy lb <= ub");
    }
  }
  if (cfg.particles < 1 || cfg.iterations < 0) {
    throw std::invalid_argument("swarm needs >= 1 particle and >= 0 steps");
  }

  const auto m = static_cast<std::size_t>(cfg.particles);
  std::vector<double> vmax(n);
  for (std::size_t d = 0; d < n; ++d) {
    vmax[d] = cfg.velocity_clamp * (ub[d] - lb[d]);
  }

  std::vector<std::vector<double>> pos(m, std::vector<double>(n));
  std::vector<std::vector<double>> vel(m, std::vector<double>(n));
  std::vector<std::vector<double>> pbest(m);
  std::vector<double> pbest_f(m);

  // Draw order is part of the contract: per particle, all position
  // coordinates first, then all velocity components.
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t d = 0; d < n; ++d) pos[p][d] = rng.uniform(lb[d], ub[d]);
    for (std::size_t d = 0; d < n; ++d) {
      vel[p][d] = rng.uniform(-vmax[d], vmax[d]);
    }
  }
  if (warm_start != nullptr) {
    // Particle 0 takes the seed point; its drawn position is discarded so
    // the stream stays aligned with an unseeded run.
    for (std::size_t d = 0; d < n; ++d) {
      pos[0][d] = std::clamp((*warm_start)[d], lb[d], ub[d]);
    }
  }

  PsoResult result;
  std::size_t gbest_index = 0;
  for (std::size_t p = 0; p < m; ++p) {
    pbest[p] = pos[p];
    pbest_f[p] = checked_eval(obj, pos[p]);
    ++result.evals;
    if (pbest_f[p] < pbest_f[gbest_index]) gbest_index = p;
  }
  std::vector<double> gbest = pbest[gbest_index];
  double gbest_f = pbest_f[gbest_index];

  for (int it = 0; it < cfg.iterations; ++it) {
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t d = 0; d < n; ++d) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double v = cfg.inertia * vel[p][d] +
                   cfg.cognitive * r1 * (pbest[p][d] - pos[p][d]) +
                   cfg.social * r2 * (gbest[d] - pos[p][d]);
        v = std::clamp(v, -vmax[d], vmax[d]);
        double x = pos[p][d] + v;
        // Absorbing walls: park on the face and kill the normal velocity.
        if (x < lb[d]) {
          x = lb[d];
          v = 0.0;
        } else if (x > ub[d]) {
          x = ub[d];
          v = 0.0;
        }
        vel[p][d] = v;
        pos[p][d] = x;
      }
      const double f = checked_eval(obj, pos[p]);
      ++result.evals;
      if (f < pbest_f[p]) {
        pbest_f[p] = f;
        pbest[p] = pos[p];
      }
    }
    // Synchronous update: everyone saw the same gbest during this sweep.
    for (std::size_t p = 0; p < m; ++p) {
      if (pbest_f[p] < gbest_f) {
        gbest_f = pbest_f[p];
        gbest = pbest[p];
      }
    }
  }

  result.x_best = std::move(gbest);
  result.f_best = gbest_f;
  result.personal_bests = std::move(pbest);
  return result;
}

BfgsResult bfgs(const objectives::Objective& obj,
                const std::vector<double>& x0, double grad_tol,
                int max_iterations) {
  if (!obj.differentiable()) {
    throw NotDifferentiableError(obj.name() + " has no gradient");
  }
  const auto n = static_cast<std::size_t>(obj.dims());
  if (x0.size() != n) {
    throw std::invalid_argument("start point must match objective dims");
  }

  constexpr double kArmijoSlope = 1e-4;
  constexpr int kMaxHalvings = 60;

  std::vector<double> hess(n * n, 0.0);  // inverse Hessian estimate
  const auto reset_hess = [&] {
    std::fill(hess.begin(), hess.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) hess[i * n + i] = 1.0;
  };
  reset_hess();

  BfgsResult result;
  result.x = x0;
  result.f = checked_eval(obj, result.x);
  std::vector<double> g = obj.grad(result.x);

  std::vector<double> dir(n);
  std::vector<double> x_new(n);
  std::vector<double> s(n);
  std::vector<double> y(n);
  std::vector<double> hy(n);

  while (result.iterations < max_iterations) {
    if (inf_norm(g) <= grad_tol) {
      result.converged = true;
      return result;
    }

    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += hess[i * n + j] * g[j];
      dir[i] = -acc;
    }
    double slope = dot(g, dir);
    if (slope >= 0.0) {
      // The estimate stopped being a descent metric; fall back to steepest.
      reset_hess();
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      slope = -dot(g, g);
      if (slope >= 0.0) {
        result.converged = true;
        return result;
      }
    }

    double step = 1.0;
    bool accepted = false;
    double f_new = result.f;
    for (int h = 0; h < kMaxHalvings; ++h) {
      for (std::size_t i = 0; i < n; ++i) {
        x_new[i] = result.x[i] + step * dir[i];
      }
      f_new = obj.eval(x_new);
      if (std::isfinite(f_new) &&
          f_new <= result.f + kArmijoSlope * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      return result;  // converged stays false: the line search stalled
    }

    std::vector<double> g_new = obj.grad(x_new);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - result.x[i];
      y[i] = g_new[i] - g[i];
    }
    result.x = x_new;
    result.f = f_new;
    g = std::move(g_new);
    ++result.iterations;

    const double sy = dot(s, y);
    if (sy <= 1e-10) {
      reset_hess();  // curvature too weak to trust the secant pair
      continue;
    }
    const double rho = 1.0 / sy;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += hess[i * n + j] * y[j];
      hy[i] = acc;
    }
    const double yhy = dot(y, hy);
    const double scale = rho * rho * yhy + rho;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        hess[i * n + j] += scale * s[i] * s[j] -
                           rho * (hy[i] * s[j] + s[i] * hy[j]);
      }
    }
  }

  result.converged = inf_norm(g) <= grad_tol;
  return result;
}

RefineResult refine(const objectives::Objective& obj,
                    const precond::SeedBox& box, const RefineConfig& cfg,
                    RngStream& rng) {
  const std::vector<double>* warm = cfg.warm_start ? &box.x_seed : nullptr;
  const PsoResult swarm = pso(obj, box.lb, box.ub, cfg.pso, rng, warm);
  RefineResult result;
  result.pso_evals = swarm.evals;
  for (const auto& p : swarm.personal_bests) {
    if (obj.in_global_basin(p)) ++result.pbest_in_basin;
  }
  if (obj.differentiable()) {
    BfgsResult polish =
        bfgs(obj, swarm.x_best, cfg.bfgs_grad_tol, cfg.bfgs_max_iterations);
    if (warm != nullptr) {
      // Mid-convergence the swarm best can freeze in a basin whose floor
      // the seed's own basin undercuts; polishing the seed as well makes
      // the warm start a guarantee, not just a hint.
      const BfgsResult from_seed =
          bfgs(obj, *warm, cfg.bfgs_grad_tol, cfg.bfgs_max_iterations);
      if (from_seed.f < polish.f) polish = from_seed;
    }
    result.x_final = polish.x;
    result.f_final = polish.f;
    result.bfgs_iterations = polish.iterations;
  } else {
    result.x_final = swarm.x_best;
    result.f_final = swarm.f_best;
    result.bfgs_iterations = 0;
  }
  return result;
}

}  // namespace qseed::refine

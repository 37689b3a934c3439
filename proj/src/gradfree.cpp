#include "qseed/gradfree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qseed/errors.hpp"

namespace qseed::gradfree {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Budget-guarded objective wrapper; tracks the running best.
class Evaluator {
 public:
  Evaluator(const std::function<double(const std::vector<double>&)>& f,
            int budget)
      : f_(f), budget_(budget) {}

  bool exhausted() const { return used_ >= budget_; }
  int used() const { return used_; }
  const std::vector<double>& best_x() const { return best_x_; }
  double best_f() const { return best_f_; }

  double operator()(const std::vector<double>& x) {
    const double v = f_(x);
    ++used_;
    if (!std::isfinite(v))
      throw NonFiniteValueError("objective returned a non-finite value at eval " +
                                std::to_string(used_));
    if (v < best_f_) {
      best_f_ = v;
      best_x_ = x;
    }
    return v;
  }

 private:
  const std::function<double(const std::vector<double>&)>& f_;
  int budget_;
  int used_ = 0;
  std::vector<double> best_x_;
  double best_f_ = std::numeric_limits<double>::infinity();
};

// Gaussian elimination with partial pivoting; false when singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-14) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = a[r][col] / a[col][col];
      if (m == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * out[c];
    out[r] = s / a[r][r];
  }
  return true;
}

}  // namespace

GradFreeResult minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const GradFreeConfig& cfg) {
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("empty start point");
  for (double v : x0)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite start point");
  if (cfg.max_evals < n + 2)
    throw std::invalid_argument("budget must be at least dim + 2");
  if (!(cfg.rho_end > 0.0) || !(cfg.rho_end < cfg.rho_begin))
    throw std::invalid_argument("need 0 < rho_end < rho_begin");
  const bool bounded = !cfg.lower.empty() || !cfg.upper.empty();
  if (bounded && (static_cast<int>(cfg.lower.size()) != n ||
                  static_cast<int>(cfg.upper.size()) != n))
    throw std::invalid_argument("bound vectors must match dimension");

  auto clip = [&](std::vector<double>& x) {
    if (!bounded) return;
    for (int i = 0; i < n; ++i)
      x[i] = std::clamp(x[i], cfg.lower[i], cfg.upper[i]);
  };

  Evaluator eval(f, cfg.max_evals);
  clip(x0);

  // Initial simplex: x0 plus a rho_begin step along each axis, stepping
  // inward when x0 hugs an upper bound.
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  vals[0] = eval(pts[0]);
  for (int i = 0; i < n; ++i) {
    double step = cfg.rho_begin;
    if (bounded && cfg.upper[i] - x0[i] < 0.5 * cfg.rho_begin)
      step = -cfg.rho_begin;
    pts[i + 1][i] += step;
    clip(pts[i + 1]);
    vals[i + 1] = eval(pts[i + 1]);
  }

  double rho = cfg.rho_begin;
  Termination reason = Termination::budget;

  while (!eval.exhausted()) {
    std::size_t best = 0;
    std::size_t worst = 0;
    for (std::size_t j = 1; j < pts.size(); ++j) {
      if (vals[j] < vals[best]) best = j;
      if (vals[j] > vals[worst]) worst = j;
    }

    // Linear model around the best vertex: edge_j . g = f_j - f_best.
    std::vector<std::vector<double>> edges;
    std::vector<double> dvals;
    std::size_t far = best == 0 ? 1 : 0;
    double far_dist = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == best) continue;
      std::vector<double> e(n);
      for (int i = 0; i < n; ++i) e[i] = pts[j][i] - pts[best][i];
      const double d = norm2(e);
      if (d > far_dist) {
        far_dist = d;
        far = j;
      }
      edges.push_back(std::move(e));
      dvals.push_back(vals[j] - vals[best]);
    }

    std::vector<double> g;
    const bool solved = solve_linear(edges, dvals, g) && norm2(g) > 0.0;

    if (solved) {
      const double gn = norm2(g);
      std::vector<double> trial = pts[best];
      for (int i = 0; i < n; ++i) trial[i] -= rho * g[i] / gn;
      clip(trial);
      const double f_best_old = vals[best];
      const double ft = eval(trial);
      if (ft < vals[worst]) {
        pts[worst] = std::move(trial);
        vals[worst] = ft;
      }
      if (ft < f_best_old) continue;  // successful step, keep this radius
      if (eval.exhausted()) break;
    }

    if (far_dist > 2.0 * rho || !solved) {
      // Geometry repair: pull the farthest vertex to distance rho from the
      // best, along its own edge when it is long, else along a direction
      // restoring full rank (largest Gram-Schmidt residual of the axes).
      std::vector<double> dir(n, 0.0);
      if (far_dist > 2.0 * rho) {
        for (int i = 0; i < n; ++i)
          dir[i] = (pts[far][i] - pts[best][i]) / far_dist;
      } else {
        std::vector<std::vector<double>> basis;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          if (j == best || j == far) continue;
          std::vector<double> e(n);
          for (int i = 0; i < n; ++i) e[i] = pts[j][i] - pts[best][i];
          const double d = norm2(e);
          if (d < 1e-300) continue;
          for (int i = 0; i < n; ++i) e[i] /= d;
          basis.push_back(std::move(e));
        }
        double best_res = -1.0;
        for (int axis = 0; axis < n; ++axis) {
          std::vector<double> r(n, 0.0);
          r[axis] = 1.0;
          for (const auto& b : basis) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += r[i] * b[i];
            for (int i = 0; i < n; ++i) r[i] -= dot * b[i];
          }
          const double rn = norm2(r);
          if (rn > best_res) {
            best_res = rn;
            dir = r;
          }
        }
        const double dn = norm2(dir);
        if (dn < 1e-12) {
          dir.assign(n, 0.0);
          dir[eval.used() % n] = 1.0;  // deterministic last resort
        } else {
          for (double& v : dir) v /= dn;
        }
      }
      std::vector<double> fresh = pts[best];
      for (int i = 0; i < n; ++i) fresh[i] += rho * dir[i];
      clip(fresh);
      vals[far] = eval(fresh);
      pts[far] = std::move(fresh);
      continue;
    }

    // Good geometry and no progress at this radius: shrink.
    if (rho <= cfg.rho_end) {
      reason = Termination::radius;
      break;
    }
    rho *= 0.5;
    if (rho <= 1.5 * cfg.rho_end) rho = cfg.rho_end;
  }

  GradFreeResult res;
  res.x_opt = eval.best_x();
  res.f_opt = eval.best_f();
  res.evals_used = eval.used();
  res.terminated_by = reason;
  return res;
}

}  // namespace qseed::gradfree

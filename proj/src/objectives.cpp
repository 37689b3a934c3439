#include "qseed/objectives.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "qseed/errors.hpp"

namespace qseed::objectives {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Objective::slice(int, double) const {
  throw UnsupportedProblemError(name_ + " is not separable");
}

std::vector<double> Objective::grad(const std::vector<double>&) const {
  throw NotDifferentiableError(name_ + " has no analytic gradient");
}

std::uint64_t Objective::count_lattice_minima(int, double, double) const {
  throw UnsupportedProblemError(name_ + " has no minima lattice");
}

bool Objective::in_global_basin(const std::vector<double>& x) const {
  const auto& m = minima_.front();
  for (int i = 0; i < dims_; ++i)
    if (std::abs(x[i] - m[i]) > kBasinRadius) return false;
  return true;
}

int Objective::nearest_minimum(const std::vector<double>& x) const {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < minima_.size(); ++m) {
    double d2 = 0.0;
    for (int i = 0; i < dims_; ++i) {
      const double d = x[i] - minima_[m][i];
      d2 += d * d;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(m);
    }
  }
  return best;
}

namespace {

// Count of integers in [lo, hi] intersected with the lattice span.
std::uint64_t integers_in(double lo, double hi, double lat_lo, double lat_hi) {
  lo = std::max(lo, lat_lo);
  hi = std::min(hi, lat_hi);
  if (hi < lo) return 0;
  const double first = std::ceil(lo);
  const double last = std::floor(hi);
  if (last < first) return 0;
  return static_cast<std::uint64_t>(last - first) + 1;
}

class Rastrigin final : public Objective {
 public:
  explicit Rastrigin(int dims) {
    if (dims < 1) throw std::invalid_argument("rastrigin requires dims >= 1");
    name_ = "rastrigin";
    dims_ = dims;
    bounds_.assign(dims, Bounds{-5.12, 5.12});
    separable_ = true;
    differentiable_ = true;
    minima_.emplace_back(dims, 0.0);
  }

  double eval(const std::vector<double>& x) const override {
    double s = 0.0;
    for (int i = 0; i < dims_; ++i) s += slice(i, x[i]);
    return s;
  }

  double slice(int, double t) const override {
    return t * t - kA * std::cos(kTwoPi * t) + kA;
  }

  std::vector<double> grad(const std::vector<double>& x) const override {
    std::vector<double> g(dims_);
    for (int i = 0; i < dims_; ++i)
      g[i] = 2.0 * x[i] + kTwoPi * kA * std::sin(kTwoPi * x[i]);
    return g;
  }

  bool has_minima_lattice() const override { return true; }
  std::uint64_t count_lattice_minima(int, double lo,
                                     double hi) const override {
    return integers_in(lo, hi, -5.0, 5.0);
  }

 private:
  static constexpr double kA = 10.0;
};

class AckleySeparable final : public Objective {
 public:
  explicit AckleySeparable(int dims) {
    if (dims < 1) throw std::invalid_argument("ackley requires dims >= 1");
    name_ = "ackley";
    dims_ = dims;
    bounds_.assign(dims, Bounds{-32.768, 32.768});
    separable_ = true;
    differentiable_ = false;
    minima_.emplace_back(dims, 0.0);
  }

  double eval(const std::vector<double>& x) const override {
    double s = 0.0;
    for (int i = 0; i < dims_; ++i) s += slice(i, x[i]);
    return s;
  }

  // Grouped so both parts vanish exactly at t = 0.
  double slice(int, double t) const override {
    static const double kE1 = std::exp(1.0);
    return 20.0 * (1.0 - std::exp(-0.2 * std::abs(t))) +
           (kE1 - std::exp(std::cos(kTwoPi * t)));
  }

  bool has_minima_lattice() const override { return true; }
  std::uint64_t count_lattice_minima(int, double lo,
                                     double hi) const override {
    return integers_in(lo, hi, -32.0, 32.0);
  }
};

class Himmelblau final : public Objective {
 public:
  Himmelblau() {
    name_ = "himmelblau";
    dims_ = 2;
    bounds_.assign(2, Bounds{-50.0, 50.0});
    separable_ = false;
    differentiable_ = true;
    monomials_ = {
        {1.0, {4, 0}}, {1.0, {0, 4}},  {2.0, {2, 1}},
        {2.0, {1, 2}}, {-21.0, {2, 0}}, {-13.0, {0, 2}},
        {-14.0, {1, 0}}, {-22.0, {0, 1}}, {170.0, {0, 0}},
    };
    // The four zeros, refined from coarse seeds by Newton iteration rather
    // than pasted from tables.
    for (auto [sx, sy] : {std::pair{3.0, 2.0}, std::pair{-2.8, 3.1},
                          std::pair{-3.8, -3.3}, std::pair{3.6, -1.8}})
      minima_.push_back(newton_minimum(sx, sy));
  }

  double eval(const std::vector<double>& v) const override {
    const double x = v[0];
    const double y = v[1];
    const double a = x * x + y - 11.0;
    const double b = x + y * y - 7.0;
    return a * a + b * b;
  }

  std::vector<double> grad(const std::vector<double>& v) const override {
    const double x = v[0];
    const double y = v[1];
    const double a = x * x + y - 11.0;
    const double b = x + y * y - 7.0;
    return {4.0 * x * a + 2.0 * b, 2.0 * a + 4.0 * y * b};
  }

  const std::vector<Monomial>* monomials() const override {
    return &monomials_;
  }

  bool in_global_basin(const std::vector<double>& x) const override {
    const auto& m = minima_[nearest_minimum(x)];
    const double dx = x[0] - m[0];
    const double dy = x[1] - m[1];
    return dx * dx + dy * dy <= kBasinRadius * kBasinRadius;
  }

 private:
  static std::vector<double> newton_minimum(double x, double y) {
    for (int it = 0; it < 60; ++it) {
      const double a = x * x + y - 11.0;
      const double b = x + y * y - 7.0;
      const double gx = 4.0 * x * a + 2.0 * b;
      const double gy = 2.0 * a + 4.0 * y * b;
      if (std::max(std::abs(gx), std::abs(gy)) < 1e-13) break;
      const double hxx = 12.0 * x * x + 4.0 * y - 42.0;
      const double hxy = 4.0 * (x + y);
      const double hyy = 12.0 * y * y + 4.0 * x - 26.0;
      const double det = hxx * hyy - hxy * hxy;
      x -= (hyy * gx - hxy * gy) / det;
      y -= (hxx * gy - hxy * gx) / det;
    }
    return {x, y};
  }

  std::vector<Monomial> monomials_;
};

}  // namespace

std::unique_ptr<Objective> rastrigin(int dims) {
  return std::make_unique<Rastrigin>(dims);
}

std::unique_ptr<Objective> ackley_separable(int dims) {
  return std::make_unique<AckleySeparable>(dims);
}

std::unique_ptr<Objective> himmelblau() {
  return std::make_unique<Himmelblau>();
}

std::unique_ptr<Objective> make_objective(const std::string& name, int dims) {
  if (name == "rastrigin") return rastrigin(dims);
  if (name == "ackley") return ackley_separable(dims);
  if (name == "himmelblau") {
    if (dims != 2)
      throw std::invalid_argument("himmelblau is 2-dimensional");
    return himmelblau();
  }
  throw std::invalid_argument("unknown objective: " + name);
}

}  // namespace qseed::objectives

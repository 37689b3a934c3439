#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qseed::objectives {

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// One term coeff * x0^p0 * x1^p1 * ... of a polynomial objective.
struct Monomial {
  double coeff = 0.0;
  std::vector<int> powers;
};

// Radius of the global-basin ball/box used for success classification.
inline constexpr double kBasinRadius = 0.5;

// Benchmark landscape. Evaluation is pure and total: refiners may step
// slightly outside the bounds and still get the true function value.
class Objective {
 public:
  virtual ~Objective() = default;

  const std::string& name() const { return name_; }
  int dims() const { return dims_; }
  const Bounds& bounds(int i) const { return bounds_.at(i); }
  bool separable() const { return separable_; }
  bool differentiable() const { return differentiable_; }

  virtual double eval(const std::vector<double>& x) const = 0;

  // One additive term f_i(x_i); only separable objectives provide these.
  virtual double slice(int i, double xi) const;

  // Analytic gradient; throws NotDifferentiableError when undefined.
  virtual std::vector<double> grad(const std::vector<double>& x) const;

  // Local minima sit on an integer lattice for both separable landscapes;
  // count_lattice_minima counts lattice points inside [lo, hi].
  virtual bool has_minima_lattice() const { return false; }
  virtual std::uint64_t count_lattice_minima(int i, double lo,
                                             double hi) const;

  // Non-null when the objective is a polynomial in its variables.
  virtual const std::vector<Monomial>* monomials() const { return nullptr; }

  // Global-minimum locations to full double precision.
  const std::vector<std::vector<double>>& global_minima() const {
    return minima_;
  }

  // Success classification: +-0.5 box about the unique global minimum for
  // the separable landscapes, radius-0.5 ball about the nearest minimum
  // for Himmelblau.
  virtual bool in_global_basin(const std::vector<double>& x) const;

  // Index into global_minima() of the closest minimum (Euclidean).
  int nearest_minimum(const std::vector<double>& x) const;

 protected:
  std::string name_;
  int dims_ = 0;
  std::vector<Bounds> bounds_;
  bool separable_ = false;
  bool differentiable_ = false;
  std::vector<std::vector<double>> minima_;
};

std::unique_ptr<Objective> rastrigin(int dims);
std::unique_ptr<Objective> ackley_separable(int dims);
std::unique_ptr<Objective> himmelblau();

// Lookup by CLI name ("rastrigin", "ackley", "himmelblau").
std::unique_ptr<Objective> make_objective(const std::string& name, int dims);

}  // namespace qseed::objectives

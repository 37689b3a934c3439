#include <cmath>
#include <vector>

#include "doctest.h"
#include "qseed/errors.hpp"
#include "qseed/objectives.hpp"

using qseed::objectives::make_objective;

namespace {

// Central finite difference for gradient cross-checks.
std::vector<double> fd_grad(const qseed::objectives::Objective& obj,
                            std::vector<double> x, double h = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = obj.eval(x);
    x[i] = xi - h;
    const double fm = obj.eval(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_SUITE("objectives") {
  TEST_CASE("rastrigin geometry and calculus") {
    const auto obj = make_objective("rastrigin", 3);
    CHECK(obj->dims() == 3);
    CHECK(obj->separable());
    CHECK(obj->differentiable());
    CHECK(obj->bounds(0).lo == -5.12);
    CHECK(obj->bounds(2).hi == 5.12);

    CHECK(obj->eval({0.0, 0.0, 0.0}) == 0.0);
    const std::vector<double> x{0.3, -1.2, 2.7};
    double via_slices = 0.0;
    for (int i = 0; i < 3; ++i) via_slices += obj->slice(i, x[static_cast<size_t>(i)]);
    CHECK(obj->eval(x) == doctest::Approx(via_slices).epsilon(1e-14));

    const auto g = obj->grad(x);
    const auto fd = fd_grad(*obj, x);
    for (int i = 0; i < 3; ++i) {
      CHECK(g[static_cast<size_t>(i)] ==
            doctest::Approx(fd[static_cast<size_t>(i)]).epsilon(1e-5));
    }

    CHECK(obj->has_minima_lattice());
    CHECK(obj->count_lattice_minima(0, -5.12, 5.12) == 11);
    CHECK(obj->count_lattice_minima(0, -0.4, 0.45) == 1);
    CHECK(obj->count_lattice_minima(0, -1.0, 1.0) == 3);

    CHECK(obj->in_global_basin({0.5, -0.5, 0.49}));
    CHECK_FALSE(obj->in_global_basin({0.51, 0.0, 0.0}));
  }

  TEST_CASE("ackley slice vanishes exactly at the origin") {
    const auto obj = make_objective("ackley", 10);
    CHECK(obj->separable());
    CHECK_FALSE(obj->differentiable());
    CHECK(obj->bounds(0).lo == -32.768);
    CHECK(obj->bounds(9).hi == 32.768);

    CHECK(obj->slice(0, 0.0) == 0.0);
    CHECK(obj->eval(std::vector<double>(10, 0.0)) == 0.0);
    CHECK(obj->slice(0, 1.0) ==
          doctest::Approx(3.6253849384403636).epsilon(1e-14));
    CHECK(obj->slice(0, -1.0) == obj->slice(0, 1.0));

    CHECK_THROWS_AS(obj->grad(std::vector<double>(10, 1.0)),
                    qseed::NotDifferentiableError);

    CHECK(obj->count_lattice_minima(0, -32.768, 32.768) == 65);
    CHECK(obj->monomials() == nullptr);
  }

  TEST_CASE("himmelblau matches its standard form") {
    const auto obj = make_objective("himmelblau", 2);
    CHECK_FALSE(obj->separable());
    CHECK(obj->differentiable());
    CHECK(obj->bounds(0).lo == -50.0);
    CHECK(obj->bounds(1).hi == 50.0);
    CHECK_FALSE(obj->has_minima_lattice());

    CHECK(obj->eval({3.0, 2.0}) == 0.0);
    CHECK(obj->eval({0.0, 0.0}) == 170.0);
    const auto standard = [](double x, double y) {
      const double a = x * x + y - 11.0;
      const double b = x + y * y - 7.0;
      return a * a + b * b;
    };
    for (const auto& p : std::vector<std::vector<double>>{
             {-1.4, 2.3}, {4.9, -4.9}, {0.25, 7.75}, {-50.0, 50.0}}) {
      CHECK(obj->eval(p) == doctest::Approx(standard(p[0], p[1])).epsilon(1e-12));
    }
    CHECK_THROWS_AS(obj->slice(0, 1.0), qseed::UnsupportedProblemError);

    const auto g = obj->grad({-1.4, 2.3});
    const auto fd = fd_grad(*obj, {-1.4, 2.3});
    CHECK(g[0] == doctest::Approx(fd[0]).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(fd[1]).epsilon(1e-6));

    REQUIRE(obj->monomials() != nullptr);
    CHECK(obj->monomials()->size() == 9);
  }

  TEST_CASE("himmelblau minima are refined to machine precision") {
    const auto obj = make_objective("himmelblau", 2);
    const auto& minima = obj->global_minima();
    REQUIRE(minima.size() == 4);
    CHECK(minima[0][0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(minima[0][1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(minima[1][0] == doctest::Approx(-2.805118086952745).epsilon(1e-10));
    CHECK(minima[1][1] == doctest::Approx(3.131312518250573).epsilon(1e-10));
    CHECK(minima[2][0] == doctest::Approx(-3.779310253377747).epsilon(1e-10));
    CHECK(minima[2][1] == doctest::Approx(-3.283185991286170).epsilon(1e-10));
    CHECK(minima[3][0] == doctest::Approx(3.584428340330492).epsilon(1e-10));
    CHECK(minima[3][1] == doctest::Approx(-1.848126526964404).epsilon(1e-10));
    for (const auto& m : minima) {
      CHECK(obj->eval(m) < 1e-18);
      const auto g = obj->grad(m);
      CHECK(std::abs(g[0]) < 1e-9);
      CHECK(std::abs(g[1]) < 1e-9);
    }
  }

  TEST_CASE("himmelblau basin classification uses a euclidean ball") {
    const auto obj = make_objective("himmelblau", 2);
    CHECK(obj->in_global_basin({3.3, 2.4}));        // distance exactly 0.5
    CHECK_FALSE(obj->in_global_basin({3.4, 2.4}));  // distance ~0.57
    CHECK(obj->in_global_basin({-2.9, 3.0}));
    CHECK(obj->nearest_minimum({3.0, 1.0}) == 0);
    CHECK(obj->nearest_minimum({-3.0, 3.0}) == 1);
    CHECK(obj->nearest_minimum({-4.0, -3.0}) == 2);
    CHECK(obj->nearest_minimum({4.0, -2.0}) == 3);
  }

  TEST_CASE("factory validates names and dimensionality") {
    CHECK_THROWS_AS(make_objective("sphere", 2), std::invalid_argument);
    CHECK_THROWS_AS(make_objective("himmelblau", 3), std::invalid_argument);
    CHECK_THROWS_AS(make_objective("rastrigin", 0), std::invalid_argument);
    CHECK(make_objective("ackley", 4)->name() == "ackley");
  }
}

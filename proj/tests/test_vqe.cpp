#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qseed/encoding.hpp"
#include "qseed/objectives.hpp"
#include "qseed/vqe.hpp"

using qseed::encoding::DiagonalHamiltonian;
using qseed::encoding::DiscretizationGrid;
using qseed::qsim::ShotHistogram;
using qseed::vqe::AnsatzConfig;
using qseed::vqe::CVaRConfig;

namespace {

// 16-level register mapping bitstring b to energy b + 1.
DiagonalHamiltonian ladder() {
  return DiagonalHamiltonian(
      {DiscretizationGrid(0.0, 1.0, 4)}, [](const std::vector<double>& x) {
        return std::round(x[0] * 15.0) + 1.0;
      });
}

DiagonalHamiltonian flat(double level) {
  return DiagonalHamiltonian({DiscretizationGrid(0.0, 1.0, 4)},
                             [level](const std::vector<double>&) {
                               return level;
                             });
}

ShotHistogram hist_of(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> counts) {
  ShotHistogram h;
  for (const auto& [basis, count] : counts) {
    h.counts[basis] = count;
    h.total_shots += count;
  }
  return h;
}

}  // namespace

TEST_SUITE("vqe") {
  TEST_CASE("tail size is the alpha-quantile count, at least one shot") {
    CVaRConfig c;
    CHECK(c.tail_size() == 100);  // 0.1 of 1000
    c.alpha = 1.0;
    CHECK(c.tail_size() == 1000);
    c.alpha = 1e-9;
    CHECK(c.tail_size() == 1);
    c.alpha = 0.25;
    c.shots = 10;
    CHECK(c.tail_size() == 3);  // ceil(2.5)
    c.alpha = 1.5;
    CHECK_THROWS_AS(c.tail_size(), std::invalid_argument);
  }

  TEST_CASE("zero parameters leave the uniform superposition") {
    AnsatzConfig cfg;
    cfg.n_qubits = 4;
    cfg.layers = 3;
    CHECK(cfg.parameter_count() == 12);
    const auto state =
        qseed::vqe::build_ansatz(cfg, std::vector<double>(12, 0.0));
    const double expect = 1.0 / 4.0;  // amplitude 1/sqrt(16)
    for (std::uint64_t b = 0; b < 16; ++b) {
      CHECK(state.amplitude(b).real() == doctest::Approx(expect));
      CHECK(state.amplitude(b).imag() == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(qseed::vqe::build_ansatz(cfg, std::vector<double>(5, 0.0)),
                    std::invalid_argument);
  }

  TEST_CASE("cvar averages the lowest tail of the shot multiset") {
    const auto h = ladder();
    // One shot on each of the ten lowest states: energies 1..10.
    const auto hist = hist_of({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1},
                               {5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}});
    CVaRConfig cfg;
    cfg.shots = 10;
    cfg.alpha = 0.3;
    CHECK(qseed::vqe::cvar_energy(h, hist, cfg) == doctest::Approx(2.0));
    cfg.alpha = 1.0;
    CHECK(qseed::vqe::cvar_energy(h, hist, cfg) == doctest::Approx(5.5));
  }

  TEST_CASE("boundary state contributes only its remaining shots") {
    const auto h = ladder();
    const auto hist = hist_of({{0, 3}, {1, 7}});
    CVaRConfig cfg;
    cfg.shots = 10;
    cfg.alpha = 0.5;
    const auto tail = qseed::vqe::cvar_tail(h, hist, cfg);
    REQUIRE(tail.size() == 2);
    CHECK(tail[0].basis == 0);
    CHECK(tail[0].weight == doctest::Approx(3.0));
    CHECK(tail[1].basis == 1);
    CHECK(tail[1].weight == doctest::Approx(2.0));
    CHECK(qseed::vqe::cvar_energy(h, hist, cfg) == doctest::Approx(0.4 + 1.0));
  }

  TEST_CASE("exact energy ties share the boundary proportionally") {
    const auto h = flat(2.0);
    const auto hist = hist_of({{0, 3}, {7, 7}});
    CVaRConfig cfg;
    cfg.shots = 10;
    cfg.alpha = 0.5;
    const auto tail = qseed::vqe::cvar_tail(h, hist, cfg);
    REQUIRE(tail.size() == 2);
    CHECK(tail[0].weight == doctest::Approx(1.5));  // 5 * 3/10
    CHECK(tail[1].weight == doctest::Approx(3.5));  // 5 * 7/10
    CHECK(qseed::vqe::cvar_energy(h, hist, cfg) == doctest::Approx(2.0));
  }

  TEST_CASE("cvar never exceeds the sample mean") {
    const auto h = ladder();
    qseed::RngStream rng(31);
    for (int rep = 0; rep < 20; ++rep) {
      ShotHistogram hist;
      for (int draw = 0; draw < 6; ++draw) {
        hist.counts[rng.next_u64() % 16] += 1 + rng.next_u64() % 50;
      }
      hist.total_shots = 0;
      for (const auto& [b, c] : hist.counts) hist.total_shots += c;
      CVaRConfig cfg;
      cfg.shots = hist.total_shots;
      cfg.alpha = 0.2;
      CVaRConfig full = cfg;
      full.alpha = 1.0;
      const double tail_mean = qseed::vqe::cvar_energy(h, hist, cfg);
      const double mean = qseed::vqe::cvar_energy(h, hist, full);
      CHECK(tail_mean <= mean + 1e-12);
    }
  }

  TEST_CASE("histogram and config shot counts must agree") {
    const auto h = ladder();
    const auto hist = hist_of({{0, 5}});
    CVaRConfig cfg;  // expects 1000 shots
    CHECK_THROWS_AS(qseed::vqe::cvar_tail(h, hist, cfg), std::invalid_argument);
  }

  TEST_CASE("fragment runs are deterministic and respect their budget") {
    const auto obj = qseed::objectives::rastrigin(1);
    const DiscretizationGrid grid(-5.12, 5.12, 3);
    const auto h = qseed::encoding::build_slice_diagonal(*obj, 0, grid);
    AnsatzConfig acfg;
    acfg.n_qubits = 3;
    CVaRConfig ccfg;
    qseed::gradfree::GradFreeConfig gcfg;
    gcfg.max_evals = 40;

    qseed::RngStream r1(777);
    const auto a = qseed::vqe::run_fragment(h, acfg, ccfg, gcfg, r1);
    qseed::RngStream r2(777);
    const auto b = qseed::vqe::run_fragment(h, acfg, ccfg, gcfg, r2);

    CHECK(a.x_best == b.x_best);
    CHECK(a.x_cvar == b.x_cvar);
    CHECK(a.rms == b.rms);
    CHECK(a.cvar_trace == b.cvar_trace);
    CHECK(a.final_histogram.counts == b.final_histogram.counts);

    CHECK(a.evals_used <= 40);
    CHECK(a.cvar_trace.size() == static_cast<std::size_t>(a.evals_used));
    CHECK(a.final_histogram.total_shots == ccfg.shots);
    CHECK(a.x_best.size() == 1);
    CHECK(a.x_best[0] >= -5.12);
    CHECK(a.x_best[0] <= 5.12);
    CHECK(a.x_cvar[0] >= -5.12);
    CHECK(a.x_cvar[0] <= 5.12);
    CHECK(a.rms[0] >= 0.0);
    CHECK(a.e_best <= *std::min_element(a.cvar_trace.begin(),
                                        a.cvar_trace.end()));
  }

  TEST_CASE("training lowers the mean energy below the uniform start") {
    // With a thin tail a uniform start can already saturate CVaR (the
    // argmin state alone holds more than alpha of the shots), so progress
    // is only guaranteed against the full-distribution mean.
    const auto obj = qseed::objectives::rastrigin(1);
    const DiscretizationGrid grid(-5.12, 5.12, 3);
    const auto h = qseed::encoding::build_slice_diagonal(*obj, 0, grid);
    AnsatzConfig acfg;
    acfg.n_qubits = 3;
    CVaRConfig ccfg;
    ccfg.alpha = 1.0;
    qseed::gradfree::GradFreeConfig gcfg;
    gcfg.max_evals = 60;
    qseed::RngStream rng(777);
    const auto res = qseed::vqe::run_fragment(h, acfg, ccfg, gcfg, rng);
    CHECK(*std::min_element(res.cvar_trace.begin(), res.cvar_trace.end()) <
          res.cvar_trace.front() - 1.0);
  }
}

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qseed/qsim.hpp"
#include "qseed/rng.hpp"

using qseed::RngStream;
using qseed::qsim::Amplitude;
using qseed::qsim::StateVector;

namespace {
constexpr double kInvSqrt2 = 0.7071067811865476;
}

TEST_SUITE("qsim") {
  TEST_CASE("fresh register is the all-zeros basis state") {
    StateVector st(3);
    CHECK(st.n_qubits() == 3);
    CHECK(st.size() == 8);
    CHECK(st.amplitude(0) == Amplitude(1.0, 0.0));
    for (std::uint64_t b = 1; b < 8; ++b) {
      CHECK(st.amplitude(b) == Amplitude(0.0, 0.0));
    }
    CHECK(st.norm_sq() == doctest::Approx(1.0));
  }

  TEST_CASE("register size is capped") {
    CHECK_NOTHROW(StateVector(1));
    CHECK_THROWS_AS(StateVector(qseed::qsim::kMaxQubits + 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
  }

  TEST_CASE("hadamard produces the balanced superposition and squares to I") {
    StateVector st(1);
    st.apply_h(0);
    CHECK(st.amplitude(0).real() == doctest::Approx(kInvSqrt2));
    CHECK(st.amplitude(1).real() == doctest::Approx(kInvSqrt2));
    st.apply_h(0);
    CHECK(st.amplitude(0).real() == doctest::Approx(1.0));
    CHECK(std::abs(st.amplitude(1)) == doctest::Approx(0.0));
  }

  TEST_CASE("ry rotates |0> by half the angle") {
    StateVector st(1);
    st.apply_ry(0, std::numbers::pi / 2);
    CHECK(st.amplitude(0).real() == doctest::Approx(kInvSqrt2));
    CHECK(st.amplitude(1).real() == doctest::Approx(kInvSqrt2));

    st.apply_ry(0, -std::numbers::pi / 2);
    CHECK(st.amplitude(0).real() == doctest::Approx(1.0));

    st.apply_ry(0, std::numbers::pi);  // |0> -> |1>
    CHECK(std::abs(st.amplitude(0)) == doctest::Approx(0.0));
    CHECK(st.amplitude(1).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(st.apply_ry(0, std::nan("")), std::invalid_argument);
  }

  TEST_CASE("qubit 0 is the least significant bit") {
    StateVector st(2);
    st.apply_ry(1, std::numbers::pi);  // flip qubit 1 only
    CHECK(st.amplitude(2).real() == doctest::Approx(1.0));
    CHECK(std::abs(st.amplitude(1)) == doctest::Approx(0.0));
  }

  TEST_CASE("cnot entangles into a bell pair") {
    StateVector st(2);
    st.apply_h(0);
    st.apply_cnot(0, 1);
    CHECK(st.amplitude(0).real() == doctest::Approx(kInvSqrt2));
    CHECK(st.amplitude(3).real() == doctest::Approx(kInvSqrt2));
    CHECK(std::abs(st.amplitude(1)) == doctest::Approx(0.0));
    CHECK(std::abs(st.amplitude(2)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(st.apply_cnot(1, 1), std::invalid_argument);
  }

  TEST_CASE("cnot permutes basis states for every control/target order") {
    StateVector st(3);
    st.apply_ry(0, std::numbers::pi);
    st.apply_ry(2, std::numbers::pi);  // |101>
    st.apply_cnot(2, 1);               // high control, middle target
    CHECK(st.amplitude(0b111).real() == doctest::Approx(1.0));
    st.apply_cnot(1, 0);  // clears the low bit
    CHECK(st.amplitude(0b110).real() == doctest::Approx(1.0));
  }

  TEST_CASE("random circuits preserve the norm") {
    StateVector st(6);
    RngStream rng(7);
    for (int step = 0; step < 120; ++step) {
      const int q = static_cast<int>(rng.next_u64() % 6);
      switch (rng.next_u64() % 3) {
        case 0: st.apply_h(q); break;
        case 1: st.apply_ry(q, rng.uniform(-3.0, 3.0)); break;
        default: st.apply_cnot(q, (q + 1) % 6); break;
      }
    }
    CHECK(st.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("sampling rejects unnormalized states and zero shots") {
    StateVector bad(std::vector<Amplitude>{{0.5, 0.0}, {0.5, 0.0}});
    RngStream rng(1);
    CHECK_THROWS_AS(qseed::qsim::sample(bad, 100, rng),
                    std::invalid_argument);
    StateVector ok(1);
    CHECK_THROWS_AS(qseed::qsim::sample(ok, 0, rng), std::invalid_argument);
  }

  TEST_CASE("sampling is deterministic per seed and conserves shots") {
    StateVector st(4);
    for (int q = 0; q < 4; ++q) st.apply_h(q);
    RngStream a(99);
    RngStream b(99);
    const auto ha = qseed::qsim::sample(st, 500, a);
    const auto hb = qseed::qsim::sample(st, 500, b);
    CHECK(ha.total_shots == 500);
    CHECK(ha.counts == hb.counts);
    std::uint64_t total = 0;
    for (const auto& [basis, count] : ha.counts) {
      CHECK(basis < 16);
      total += count;
    }
    CHECK(total == 500);
  }

  TEST_CASE("sampler object matches the free function") {
    StateVector st(3);
    for (int q = 0; q < 3; ++q) st.apply_h(q);
    qseed::qsim::Sampler sampler;
    RngStream a(5);
    RngStream b(5);
    const auto ha = sampler.sample(st, 300, a);
    const auto hb = qseed::qsim::sample(st, 300, b);
    CHECK(ha.counts == hb.counts);
  }

  TEST_CASE("single-qubit frequencies track the born rule") {
    StateVector st(1);
    st.apply_ry(0, 2.0 * std::numbers::pi / 3.0);  // P(1) = sin^2(pi/3)
    RngStream rng(123);
    const auto h = qseed::qsim::sample(st, 100000, rng);
    const double p1 =
        static_cast<double>(h.counts.at(1)) / static_cast<double>(h.total_shots);
    CHECK(p1 == doctest::Approx(0.75).epsilon(0.02));
  }

  TEST_CASE("uniform sampling passes a chi-square gate in 99% of seeds") {
    StateVector st(5);
    for (int q = 0; q < 5; ++q) st.apply_h(q);
    // 99.9% critical value of chi-square with 31 degrees of freedom.
    constexpr double kCritical = 61.098306;
    constexpr int kReps = 200;
    constexpr std::uint64_t kShots = 1000;
    const double expected = static_cast<double>(kShots) / 32.0;
    int below = 0;
    for (int rep = 0; rep < kReps; ++rep) {
      RngStream rng(qseed::mix_seed({2024, static_cast<std::uint64_t>(rep)}));
      const auto h = qseed::qsim::sample(st, kShots, rng);
      double chi2 = 0.0;
      for (std::uint64_t b = 0; b < 32; ++b) {
        const auto it = h.counts.find(b);
        const double obs =
            it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
        chi2 += (obs - expected) * (obs - expected) / expected;
      }
      if (chi2 < kCritical) ++below;
    }
    CHECK(below >= 198);
  }
}

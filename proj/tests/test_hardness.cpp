#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qlab/hardness.hpp"
#include "qlab/rng.hpp"

using namespace qlab;
using std::numbers::e;

TEST_CASE("large-q hard instance construction") {
  // delta = 1/q boundary: p+ = (1, 0)
  const HardInstance edge = make_hard_instance_largeq(4, 0.25);
  CHECK(edge.p_plus[0] == doctest::Approx(1.0));
  CHECK(edge.p_plus[1] == doctest::Approx(0.0));

  const HardInstance inst = make_hard_instance_largeq(10, 0.05);
  CHECK(inst.p_plus[0] == doctest::Approx(0.95));
  CHECK(inst.p_plus[1] == doctest::Approx(0.05));
  CHECK(inst.p_minus[0] == doctest::Approx(0.85));
  CHECK(inst.p_minus[1] == doctest::Approx(0.15));

  // delta -> 0 collapses the pair
  const HardInstance tiny = make_hard_instance_largeq(5, 1e-13);
  CHECK(hellinger(tiny.p_plus, tiny.p_minus) < 1e-12);

  CHECK_THROWS_AS(make_hard_instance_largeq(4, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(make_hard_instance_largeq(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_hard_instance_largeq(2, 0.1), std::invalid_argument);
}

TEST_CASE("entropy gap: direct and binomial-sum routes agree") {
  for (int q : {3, 7, 20, 50, 64})
    for (double delta : {1.0 / (2.0 * q), 1.0 / (4.0 * q)}) {
      const HardInstance inst = make_hard_instance_largeq(q, delta);
      CHECK(std::abs(entropy_gap(inst) - entropy_gap_binomial_sum(inst)) < 1e-12);
    }
  // const-q family uses the same expansion around (2/3, 1/3)
  for (int q : {2, 3, 4}) {
    const HardInstance inst = make_hard_instance_constq(q, 0.01);
    CHECK(std::abs(entropy_gap(inst) - entropy_gap_binomial_sum(inst)) < 1e-12);
  }
}

TEST_CASE("entropy gap: hand check at q=3, delta=0.1") {
  const HardInstance inst = make_hard_instance_largeq(3, 0.1);
  // H_3(p-) - H_3(p+) with p+- = (2/3 +- 0.1, 1/3 -+ 0.1)
  auto h3 = [](double a, double b) {
    return (1.0 - (a * a * a + b * b * b)) / 2.0;
  };
  const double direct = h3(2.0 / 3.0 - 0.1, 1.0 / 3.0 + 0.1) -
                        h3(2.0 / 3.0 + 0.1, 1.0 / 3.0 - 0.1);
  CHECK(entropy_gap(inst) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("entropy gap exceeds 2 t delta with t = 0.3 from q = 3 up") {
  // frozen regression: the asymptotic guarantee already holds at q = 3
  for (int q = 3; q <= 64; ++q)
    for (double delta : {1.0 / (2.0 * q), 1.0 / (4.0 * q), 1.0 / (8.0 * q)})
      CHECK(entropy_gap(make_hard_instance_largeq(q, delta)) > 2.0 * 0.3 * delta);
}

TEST_CASE("gap lower witness") {
  // 2 ((2/3)^3 - (2/3)(1/3)^2) * 0.1 = 2 (8/27 - 2/27) / 10
  const HardInstance inst = make_hard_instance_largeq(3, 0.1);
  CHECK(gap_lower_witness(inst) == doctest::Approx(2.0 * 6.0 / 27.0 * 0.1).epsilon(1e-14));

  // the q -> infinity limit of the delta coefficient is 2/e
  const HardInstance big = make_hard_instance_largeq(1000000, 1e-7);
  CHECK(gap_lower_witness(big) / big.delta ==
        doctest::Approx(2.0 / e).epsilon(1e-5));

  const HardInstance constq = make_hard_instance_constq(2, 0.1);
  CHECK_THROWS_AS(gap_lower_witness(constq), std::invalid_argument);
}

TEST_CASE("strict chain gap > witness > 0 across the acceptance grid") {
  for (int q = 3; q <= 64; ++q)
    for (double delta : {1.0 / (2.0 * q), 1.0 / (4.0 * q)}) {
      const HardInstance inst = make_hard_instance_largeq(q, delta);
      const double gap = entropy_gap(inst);
      const double witness = gap_lower_witness(inst);
      CHECK(gap > witness);
      CHECK(witness > 0.0);
    }
}

TEST_CASE("hellinger witness") {
  const HardInstance tiny = make_hard_instance_largeq(5, 1e-13);
  const HellingerWitness w0 = hellinger_upper_witness(tiny);
  CHECK(w0.exact < 1e-10);
  CHECK(w0.bound < 1e-10);

  const HardInstance inst = make_hard_instance_largeq(4, 0.1);
  const HellingerWitness w = hellinger_upper_witness(inst);
  const double closed = std::sqrt(
      1.0 - std::sqrt(std::pow(0.75, 2) - 0.01) - std::sqrt(std::pow(0.25, 2) - 0.01));
  CHECK(w.exact == doctest::Approx(closed).epsilon(1e-12));
  CHECK(w.bound == doctest::Approx(0.4 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(w.exact <= w.bound * (1.0 + 1e-9));

  // O(sqrt(q) delta) constant stays near 1
  const HardInstance q100 = make_hard_instance_largeq(100, 0.001);
  const HellingerWitness w100 = hellinger_upper_witness(q100);
  CHECK(w100.exact / (std::sqrt(100.0) * 0.001) <= 1.01);
}

TEST_CASE("hellinger bound holds across the acceptance grid") {
  for (int q = 3; q <= 64; ++q)
    for (double delta : {1.0 / (2.0 * q), 1.0 / (4.0 * q)}) {
      const HellingerWitness w =
          hellinger_upper_witness(make_hard_instance_largeq(q, delta));
      CHECK(w.exact <= w.bound * (1.0 + 1e-9));
    }
}

TEST_CASE("the sqrt(a-x) >= sqrt(a) - x/sqrt(a) step of the chain") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.next_double() + 1e-9;
    const double x = rng.next_double() * a;
    CHECK(std::sqrt(a - x) >= std::sqrt(a) - x / std::sqrt(a) - 1e-12);
  }
}

TEST_CASE("odd-term binomial expansion identity for k <= 12") {
  Rng rng(43);
  for (int k = 0; k <= 12; ++k)
    for (int rep = 0; rep < 10; ++rep) {
      const double a = 2.0 * rng.next_double();
      const double x = 2.0 * rng.next_double();
      const double lhs = std::pow(a + x, k) - std::pow(a - x, k);
      double rhs = 0.0;
      for (int j = 0; 2 * j + 1 <= k; ++j) {
        double b = 1.0;
        for (int i = 0; i < 2 * j + 1; ++i) b = b * (k - i) / (i + 1);
        rhs += b * std::pow(a, k - 2 * j - 1) * std::pow(x, 2 * j + 1);
      }
      rhs *= 2.0;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("query lower value") {
  const HardInstance inst = make_hard_instance_largeq(4, 0.1);
  CHECK(query_lower_value(inst) ==
        doctest::Approx(1.0 / hellinger(inst.p_plus, inst.p_minus)));
  CHECK(query_lower_value(inst) >= 4.33);

  // well-defined at the delta = 1/q edge
  CHECK(query_lower_value(make_hard_instance_largeq(4, 0.25)) > 0.0);

  // sqrt(q) growth at delta = c/q: ratio between q=64 and q=16 near 2
  const double v16 = query_lower_value(make_hard_instance_largeq(16, 0.25 / 16));
  const double v64 = query_lower_value(make_hard_instance_largeq(64, 0.25 / 64));
  CHECK(v64 / v16 >= 1.8);
  CHECK(v64 / v16 <= 2.2);
}

TEST_CASE("const-q family: frozen regression bands") {
  for (int q : {2, 3, 4})
    for (double eps : {1e-2, 1e-3}) {
      const HardInstance inst = make_hard_instance_constq(q, eps);
      const double gap_ratio = entropy_gap(inst) / eps;
      CHECK(gap_ratio >= 0.5);   // Omega(eps)
      CHECK(gap_ratio <= 1.5);
      const double hel_ratio = hellinger(inst.p_plus, inst.p_minus) / eps;
      CHECK(hel_ratio >= 1.2);   // O(eps) with measured constant ~1.5
      CHECK(hel_ratio <= 1.8);
    }
}

TEST_CASE("degree sandwich experiment") {
  // q = 1: every column collapses to 1 for small eps
  const auto unit = degree_sandwich_experiment({1}, 0.05);
  CHECK(unit[0].floor_ceil == 1);
  CHECK(unit[0].minimax == 1);
  CHECK(unit[0].truncation == 1);

  const auto rows = degree_sandwich_experiment({4, 16, 64}, 0.05);
  REQUIRE(rows.size() == 3);
  for (const SandwichRow& r : rows) {
    CHECK(r.floor_real <= r.minimax);
    CHECK(r.minimax <= r.truncation);
    CHECK(r.floor_real ==
          doctest::Approx(std::sqrt(r.q * (1.0 - 1.0 / e - 0.2))).epsilon(1e-12));
  }
  // minimax column is non-decreasing in q
  CHECK(rows[0].minimax <= rows[1].minimax);
  CHECK(rows[1].minimax <= rows[2].minimax);

  CHECK_THROWS_AS(degree_sandwich_experiment({4}, 0.2), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlab/linalg.hpp"
#include "qlab/rng.hpp"

using namespace qlab;

namespace {

Distribution make_dist(std::initializer_list<double> vals) {
  RealVector p(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double v : vals) p[i++] = v;
  return Distribution(p);
}

Distribution random_dist(int n, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, 99);
  RealVector p(n);
  for (int i = 0; i < n; ++i) p[i] = -std::log(1.0 - rng.next_double());
  p /= p.sum();
  p[n - 1] += 1.0 - p.sum();
  return Distribution(p);
}

const Distribution kTwoThirds = make_dist({2.0 / 3.0, 1.0 / 3.0});

}  // namespace

TEST_CASE("density matrix validation") {
  Matrix bad(2, 2);
  bad << 1.0, Complex(0.2, 0.1), Complex(0.2, 0.2), 0.0;
  CHECK_THROWS_AS(DensityMatrix(1, bad), std::invalid_argument);  // not Hermitian

  Matrix off_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(1, off_trace), std::invalid_argument);

  Matrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(1, neg), std::invalid_argument);

  CHECK_THROWS_AS(make_dist({0.9, 0.2}), std::invalid_argument);
}

TEST_CASE("purify: pure state gives |00>") {
  Vector e0(2);
  e0 << 1.0, 0.0;
  const StatePrepOracle o = purify(DensityMatrix::pure(e0), 3);
  const Vector psi = o.prepared_state();
  CHECK(std::abs(std::abs(psi[0]) - 1.0) < 1e-12);
  CHECK(psi.tail(3).norm() < 1e-12);
  CHECK(unitarity_defect(o.unitary) < 1e-10);
}

TEST_CASE("purify: maximally mixed and diagonal round trips") {
  for (const DensityMatrix& rho :
       {DensityMatrix::maximally_mixed(1), DensityMatrix::diagonal(kTwoThirds)}) {
    const StatePrepOracle o = purify(rho, 11);
    CHECK(o.ancilla_qubits == o.system_qubits);
    const DensityMatrix back = o.prepared_density();
    CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-9);
  }
  // eigenvalue spectrum of tr_B equals {2/3, 1/3}
  const StatePrepOracle o = purify(DensityMatrix::diagonal(kTwoThirds), 5);
  const RealVector ev = o.prepared_density().eigenvalues();
  CHECK(ev[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(ev[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("purify: deterministic in the seed") {
  const DensityMatrix rho = DensityMatrix::random(1, 21);
  const StatePrepOracle a = purify(rho, 9);
  const StatePrepOracle b = purify(rho, 9);
  const StatePrepOracle c = purify(rho, 10);
  CHECK((a.unitary - b.unitary).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.unitary - c.unitary).cwiseAbs().maxCoeff() > 1e-3);
  CHECK(unitarity_defect(c.unitary) < 1e-10);
}

TEST_CASE("purify round trip over random states") {
  for (int n = 1; n <= 2; ++n)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho = DensityMatrix::random(n, 1000 + seed);
      const DensityMatrix back = purify(rho, seed).prepared_density();
      CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("trace_power") {
  CHECK(trace_power(DensityMatrix::maximally_mixed(1), 3) ==
        doctest::Approx(0.25).epsilon(1e-12));
  Vector plus(2);
  plus << 1.0, 1.0;
  for (int q : {1, 2, 5})
    CHECK(trace_power(DensityMatrix::pure(plus), q) ==
          doctest::Approx(1.0).epsilon(1e-10));
  // hand computation (2/3)^2 + (1/3)^2 = 5/9
  CHECK(trace_power(DensityMatrix::diagonal(kTwoThirds), 2) ==
        doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(trace_power(DensityMatrix::maximally_mixed(1), 0),
                  std::invalid_argument);
}

TEST_CASE("trace_power agrees with repeated matrix product") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = DensityMatrix::random(2, 31 + seed);
    for (int q : {1, 2, 3, 4, 5}) {
      Matrix p = rho.matrix();
      for (int i = 1; i < q; ++i) p = p * rho.matrix();
      CHECK(std::abs(trace_power(rho, q) - p.trace().real()) < 1e-10);
    }
  }
}

TEST_CASE("tsallis_exact") {
  Vector e1(2);
  e1 << 0.0, 1.0;
  CHECK(tsallis_exact(DensityMatrix::pure(e1), 5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tsallis_exact(DensityMatrix::maximally_mixed(1), 2) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tsallis_exact(DensityMatrix::diagonal(kTwoThirds), 2) ==
        doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(tsallis_exact(DensityMatrix::maximally_mixed(1), 1),
                  std::invalid_argument);
}

TEST_CASE("tsallis range and rank-1 zero") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = DensityMatrix::random(2, 500 + seed);
    for (int q : {2, 3, 4, 5}) {
      const double s = tsallis_exact(rho, q);
      CHECK(s >= -1e-12);
      CHECK(s <= 1.0 / (q - 1) + 1e-12);
    }
  }
  Rng rng(77);
  Vector psi(4);
  for (int i = 0; i < 4; ++i) psi[i] = Complex(rng.next_normal(), rng.next_normal());
  CHECK(std::abs(tsallis_exact(DensityMatrix::pure(psi), 4)) < 1e-10);
}

TEST_CASE("tsallis_exact_dist") {
  CHECK(tsallis_exact_dist(make_dist({0.5, 0.5}), 2) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tsallis_exact_dist(make_dist({1.0}), 7) == doctest::Approx(0.0));
  // (1 - (8/27 + 1/27)) / 2 = 1/3
  CHECK(tsallis_exact_dist(kTwoThirds, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("tsallis_exact_dist equals the diagonal embedding") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Distribution p = random_dist(4, seed);
    for (int q : {2, 3, 5})
      CHECK(std::abs(tsallis_exact_dist(p, q) -
                     tsallis_exact(DensityMatrix::diagonal(p), q)) < 1e-12);
  }
}

TEST_CASE("hellinger") {
  CHECK(hellinger(kTwoThirds, kTwoThirds) == doctest::Approx(0.0));
  CHECK(hellinger(make_dist({1.0, 0.0}), make_dist({0.0, 1.0})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hellinger(kTwoThirds, make_dist({1.0})), std::invalid_argument);

  // closed form vs the definition sum for the perturbed (3/4, 1/4) pair
  const Distribution a = make_dist({0.75 + 0.01, 0.25 - 0.01});
  const Distribution b = make_dist({0.75 - 0.01, 0.25 + 0.01});
  const double closed =
      std::sqrt(1.0 - std::sqrt(9.0 / 16.0 - 1e-4) - std::sqrt(1.0 / 16.0 - 1e-4));
  CHECK(hellinger(a, b) == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("hellinger triangle inequality") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Distribution a = random_dist(3, 3 * seed);
    const Distribution b = random_dist(3, 3 * seed + 1);
    const Distribution c = random_dist(3, 3 * seed + 2);
    CHECK(hellinger(a, c) <= hellinger(a, b) + hellinger(b, c) + 1e-12);
  }
}

TEST_CASE("partial_trace") {
  const DensityMatrix ra = DensityMatrix::random(1, 61);
  const DensityMatrix rb = DensityMatrix::random(1, 62);
  const Matrix joint = kron(ra.matrix(), rb.matrix());
  CHECK((partial_trace(joint, 1, 1, Subsystem::first).matrix() - ra.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((partial_trace(joint, 1, 1, Subsystem::second).matrix() - rb.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  Vector bell(4);
  bell << 1.0, 0.0, 0.0, 1.0;
  bell /= std::sqrt(2.0);
  const Matrix proj = bell * bell.adjoint();
  const DensityMatrix first = partial_trace(proj, 1, 1, Subsystem::first);
  CHECK((first.matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(partial_trace(proj, 1, 2, Subsystem::first), std::invalid_argument);
}

TEST_CASE("trace_power at q = 1 is the trace") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = DensityMatrix::random(2, 800 + seed);
    CHECK(std::abs(trace_power(rho, 1) - 1.0) < 1e-10);
  }
}

TEST_CASE("query ledger accumulates monotonically") {
  QueryLedger l;
  l.charge_forward(3);
  l.charge_inverse(2);
  l.charge_controlled(5);
  CHECK(l.total() == 10);
  l.charge_forward(1);
  CHECK(l.forward == 4);
  CHECK(l.total() == 11);
}

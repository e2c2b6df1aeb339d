#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qlab/chebyshev.hpp"
#include "qlab/rng.hpp"

using namespace qlab;

namespace {

// direct T_j recurrence, the independent route against Clenshaw
double direct_eval(const ChebyshevPoly& p, double x) {
  double t0 = 1.0, t1 = x, s = p.coeffs[0];
  if (p.degree() >= 1) s += p.coeffs[1] * x;
  for (int j = 2; j <= p.degree(); ++j) {
    const double t2 = 2.0 * x * t1 - t0;
    s += p.coeffs[j] * t2;
    t0 = t1;
    t1 = t2;
  }
  return s;
}

ChebyshevPoly basis(int d) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d + 1);
  c[d] = 1.0;
  return make_chebyshev(std::move(c), d % 2 == 0 ? Parity::even : Parity::odd);
}

}  // namespace

TEST_CASE("monomial expansion: small cases") {
  const ChebyshevPoly p2 = cheb_expand_monomial(2);
  CHECK(p2.degree() == 2);
  CHECK(p2.coeffs[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p2.coeffs[1] == 0.0);
  CHECK(p2.coeffs[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p2.parity == Parity::even);

  const ChebyshevPoly p3 = cheb_expand_monomial(3);
  CHECK(p3.coeffs[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p3.coeffs[3] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p3.parity == Parity::odd);

  const ChebyshevPoly p1 = cheb_expand_monomial(1);
  CHECK(p1.degree() == 1);
  CHECK(p1.coeffs[1] == 1.0);

  CHECK_THROWS_AS(cheb_expand_monomial(0), std::invalid_argument);
}

TEST_CASE("monomial expansion: grid oracle against direct powering") {
  const ChebyshevPoly p8 = cheb_expand_monomial(8);
  const Eigen::VectorXd xs = chebyshev_lobatto_nodes(2001);
  for (Eigen::Index k = 0; k < xs.size(); ++k)
    CHECK(std::abs(eval(p8, xs[k]) - std::pow(xs[k], 8)) < 1e-12);
}

TEST_CASE("monomial expansion: non-negative coefficients summing to 1") {
  for (int q : {1, 2, 7, 50, 200}) {
    const ChebyshevPoly p = cheb_expand_monomial(q);
    for (int j = 0; j <= p.degree(); ++j) CHECK(p.coeffs[j] >= 0.0);
    CHECK(std::abs(eval(p, 1.0) - 1.0) < 1e-12);
  }
}

TEST_CASE("truncate_sv14: exact at small q") {
  const auto [p, cert] = truncate_sv14(2, 0.5);
  CHECK(cert.sup_error == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(cert.degree == 2);
}

TEST_CASE("truncate_sv14: q=100 eps=0.01 certificate") {
  const auto [p, cert] = truncate_sv14(100, 0.01);
  CHECK(cert.degree <= 33);  // ceil(sqrt(200 ln 200))
  CHECK(cert.sup_error <= 0.01);
  CHECK(cert.max_abs <= 1.0 + 1e-12);
  CHECK(p.parity == Parity::even);
}

TEST_CASE("truncate_sv14: boundedness from non-negative sub-unit coefficients") {
  const auto [p, cert] = truncate_sv14(64, 0.1);
  double coeff_sum = 0.0;
  for (int j = 0; j <= p.degree(); ++j) coeff_sum += p.coeffs[j];
  CHECK(coeff_sum <= 1.0 + 1e-14);
  CHECK(cert.max_abs <= 1.0 + 1e-12);
}

TEST_CASE("truncate_sv14: full-degree truncation equals the exact expansion") {
  for (int q : {2, 3, 5, 9}) {
    const auto [p, cert] = truncate_sv14(q, 1e-6);  // degree formula >= q
    const ChebyshevPoly full = cheb_expand_monomial(q);
    REQUIRE(p.degree() == full.degree());
    for (int j = 0; j <= p.degree(); ++j)
      CHECK(std::abs(p.coeffs[j] - full.coeffs[j]) < 1e-14);
  }
}

TEST_CASE("truncate_sv14: certificate lattice subset") {
  for (int q : {2, 10, 50, 117, 200})
    for (double eps : {0.3, 0.1, 0.03, 0.01}) {
      const auto [p, cert] = truncate_sv14(q, eps);
      CHECK(cert.sup_error <= eps);
      CHECK(cert.max_abs <= 1.0 + 1e-12);
      CHECK(cert.degree <= sv14_truncation_degree(q, eps));
      CHECK(cert.degree <= q);
    }
}

TEST_CASE("clenshaw eval") {
  Rng rng(123);
  Eigen::VectorXd c(10);
  for (int i = 0; i < 10; ++i) c[i] = rng.next_normal();
  const ChebyshevPoly p = make_chebyshev(c, Parity::none);
  // eval at 1 is the coefficient sum
  CHECK(eval(p, 1.0) == doctest::Approx(c.sum()).epsilon(1e-12));
  // matches the direct T_j recurrence
  for (double x : {-1.0, -0.7, -0.2, 0.0, 0.3, 0.9, 1.0})
    CHECK(std::abs(eval(p, x) - direct_eval(p, x)) < 1e-12);
  // odd polynomial vanishes at the origin
  CHECK(eval(cheb_expand_monomial(9), 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(eval(p, 1.0 + 1e-9), std::invalid_argument);

  const auto [p9, cert9] = truncate_sv14(9, 0.1);
  CHECK(std::abs(eval(p9, 0.5) - std::pow(0.5, 9)) <= 0.1);
}

TEST_CASE("sup_error_vs_monomial") {
  CHECK(sup_error_vs_monomial(cheb_expand_monomial(5), 5, 2001) < 1e-12);
  const ChebyshevPoly zero = make_chebyshev(Eigen::VectorXd::Zero(1), Parity::none);
  CHECK(sup_error_vs_monomial(zero, 2, 2001) == doctest::Approx(1.0));
  const auto [p, cert] = truncate_sv14(50, 0.05);
  CHECK(sup_error_vs_monomial(p, 50, 100000) <= 0.05);
  CHECK_THROWS_AS(sup_error_vs_monomial(zero, 2, 100), std::invalid_argument);
}

TEST_CASE("parity projection") {
  const ChebyshevPoly even_in = cheb_expand_monomial(4);
  const ChebyshevPoly same = parity_project(even_in, Parity::even);
  CHECK((same.coeffs - even_in.coeffs).cwiseAbs().maxCoeff() == 0.0);

  // x + x^2 -> x^2
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
  c[0] = 0.5;
  c[1] = 1.0;
  c[2] = 0.5;
  const ChebyshevPoly mixed = make_chebyshev(c, Parity::none);
  const ChebyshevPoly projected = parity_project(mixed, Parity::even);
  CHECK(projected.coeffs[1] == 0.0);
  for (double x : {-0.8, -0.1, 0.4, 1.0})
    CHECK(eval(projected, x) == doctest::Approx(x * x).epsilon(1e-12));
}

TEST_CASE("parity projection never increases the error against a matching target") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng = Rng::derive(seed, 4);
    Eigen::VectorXd c(10);
    for (int i = 0; i < 10; ++i) c[i] = rng.next_normal();
    const ChebyshevPoly p = make_chebyshev(c, Parity::none);
    const ChebyshevPoly projected = parity_project(p, Parity::even);
    const double before = sup_error_vs_monomial(p, 4, 2001);
    const double after = sup_error_vs_monomial(projected, 4, 2001);
    CHECK(after <= before + 1e-12);
    CHECK(projected.degree() <= p.degree());
  }
}

TEST_CASE("remez: known equioscillation solutions") {
  // best degree-<=1 approx of x^3 is 3x/4, error T_3/4 = 1/4
  const RemezResult r31 = remez_best_approx(3, 1);
  CHECK(r31.levelled_error == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(r31.poly.coeffs[1] == doctest::Approx(0.75).epsilon(1e-9));
  // best degree-<=2 approx of x^4 drops T_4/8, error 1/8
  const RemezResult r42 = remez_best_approx(4, 2);
  CHECK(r42.levelled_error == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(sup_error_vs_monomial(r42.poly, 4, 100000) ==
        doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("minimax_degree: Chebyshev 1858 anchor") {
  // x^{2n+1} is approximable at degree 2n to 2^{-2n}; n = 1.
  const MinimaxResult r = minimax_degree(3, 0.25, 0, 3);
  CHECK(r.found);
  CHECK(r.degree <= 2);
}

TEST_CASE("minimax_degree: eps >= 1 needs degree 0") {
  for (int q : {3, 8}) {
    const MinimaxResult r = minimax_degree(q, 1.0, 0, q);
    CHECK(r.found);
    CHECK(r.degree == 0);
  }
}

TEST_CASE("minimax_degree: bracketed by the closed-form floor and truncation") {
  const int q = 16;
  const double eps = 0.1;
  const int trunc = truncate_sv14(q, eps).second.degree;
  const MinimaxResult r = minimax_degree(q, eps, 0, trunc);
  REQUIRE(r.found);
  CHECK(r.degree >= sv14_lower_bound(q, eps));  // floor 2.63 -> needs >= 3
  CHECK(r.degree <= trunc);
  CHECK(r.best_error <= eps + 1e-12);
}

TEST_CASE("minimax_degree: not-found carries the best error seen") {
  const MinimaxResult r = minimax_degree(50, 1e-6, 0, 3);
  CHECK(!r.found);
  CHECK(r.best_error > 1e-6);
  CHECK(r.best_error < 1.0);
}

TEST_CASE("minimax bracketing across the sandwich set") {
  for (int q : {4, 9, 16, 25, 36, 49, 64})
    for (double eps : {0.05, 0.1}) {
      const int trunc = truncate_sv14(q, eps).second.degree;
      const MinimaxResult r = minimax_degree(q, eps, 0, trunc);
      REQUIRE(r.found);
      CHECK(sv14_lower_bound(q, eps) <= r.degree);
      CHECK(r.degree <= trunc);
    }
}

TEST_CASE("minimax scaling law: degree / sqrt(q) stays in a fixed band") {
  for (int q : {16, 32, 64, 128}) {
    const int trunc = truncate_sv14(q, 0.1).second.degree;
    const MinimaxResult r = minimax_degree(q, 0.1, 0, trunc);
    REQUIRE(r.found);
    const double ratio = r.degree / std::sqrt(static_cast<double>(q));
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 3.0);
  }
}

TEST_CASE("markov certificate") {
  for (int d : {1, 2, 5, 8}) {
    const MarkovCertificate cert = markov_certificate(basis(d), 10000);
    CHECK(cert.bound == doctest::Approx(d * d));
    // T_d attains the Markov bound at the endpoints
    CHECK(cert.max_deriv == doctest::Approx(d * d).epsilon(1e-9));
    CHECK(cert.max_deriv <= cert.bound * (1.0 + 1e-9));
  }
  const ChebyshevPoly c = make_chebyshev(Eigen::VectorXd::Constant(1, 0.7), Parity::even);
  CHECK(markov_certificate(c, 10000).max_deriv == 0.0);

  const auto [p, cert] = truncate_sv14(30, 0.1);
  const MarkovCertificate mc = markov_certificate(p, 10000);
  CHECK(mc.max_deriv <= mc.bound * (1.0 + 1e-9));

  Eigen::VectorXd big = Eigen::VectorXd::Zero(4);
  big[3] = 2.0;  // 2 T_3 exceeds 1
  CHECK_THROWS_AS(markov_certificate(make_chebyshev(big, Parity::odd), 10000),
                  std::invalid_argument);
}

TEST_CASE("markov invariant across the truncation suite") {
  for (int q : {5, 20, 80})
    for (double eps : {0.3, 0.03}) {
      const auto [p, cert] = truncate_sv14(q, eps);
      const MarkovCertificate mc = markov_certificate(p, 10000);
      CHECK(mc.max_deriv <= mc.bound * (1.0 + 1e-9));
    }
}

TEST_CASE("sv14_lower_bound") {
  const double expected = std::sqrt(100.0 * (1.0 - 1.0 / std::numbers::e - 0.2));
  CHECK(sv14_lower_bound(100, 0.1) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(sv14_lower_bound(100, 0.1) == doctest::Approx(6.574).epsilon(1e-3));
  // bound vanishes at the eps boundary
  const double edge = (std::numbers::e - 1.0) / (2.0 * std::numbers::e);
  CHECK(sv14_lower_bound(9, edge - 1e-12) == doctest::Approx(0.0).epsilon(1e-4));
  CHECK_THROWS_AS(sv14_lower_bound(25, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sv14_lower_bound(25, edge), std::invalid_argument);
}

TEST_CASE("rescale_bounded") {
  const ChebyshevPoly exact = cheb_expand_monomial(6);
  const ChebyshevPoly id = rescale_bounded(exact, 6, 0.0);
  CHECK((id.coeffs - exact.coeffs).cwiseAbs().maxCoeff() == 0.0);

  const ChebyshevPoly r = rescale_bounded(exact, 6, 0.1);
  CHECK(max_abs_on_grid(r, 10000) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(sup_error_vs_monomial(r, 6, 10000) <= 0.2 + 1e-12);

  const auto [p40, cert40] = truncate_sv14(40, 0.05);
  const ChebyshevPoly r40 = rescale_bounded(p40, 40, 0.05, 10000);
  CHECK(sup_error_vs_monomial(r40, 40, 10000) <= 0.1 + 1e-12);
  CHECK(max_abs_on_grid(r40, 10000) <= 1.0 + 1e-12);
  CHECK(r40.degree() == p40.degree());

  // precondition violated: x^6 is not within 0.001 of the zero polynomial
  const ChebyshevPoly zero = make_chebyshev(Eigen::VectorXd::Zero(1), Parity::none);
  CHECK_THROWS_AS(rescale_bounded(zero, 6, 0.001), std::invalid_argument);
}

TEST_CASE("chebyshev parity invariant enforced") {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
  c[1] = 0.5;
  c[2] = 0.5;
  CHECK_THROWS_AS(make_chebyshev(c, Parity::even), std::invalid_argument);
}

TEST_CASE("derivative in the chebyshev basis") {
  // (T_3)' = 3 T_0 + 6 T_2
  const ChebyshevPoly d3 = derivative(basis(3));
  CHECK(d3.coeffs[0] == doctest::Approx(3.0));
  CHECK(d3.coeffs[2] == doctest::Approx(6.0));
  // derivative of x^5 expansion matches 5 x^4 on a grid
  const ChebyshevPoly dp = derivative(cheb_expand_monomial(5));
  for (double x : {-1.0, -0.3, 0.2, 0.8})
    CHECK(eval(dp, x) == doctest::Approx(5.0 * std::pow(x, 4)).epsilon(1e-11));
}

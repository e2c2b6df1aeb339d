#pragma once

#include <Eigen/Dense>
#include <utility>

namespace qlab {

enum class Parity { even, odd, none };

// Polynomial in the Chebyshev-T basis, sum_j c_j T_j(x) on [-1, 1].
// Trailing exact-zero coefficients are trimmed so coeffs[degree] != 0 unless
// the polynomial is identically zero.
struct ChebyshevPoly {
  Eigen::VectorXd coeffs;
  Parity parity = Parity::none;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

ChebyshevPoly make_chebyshev(Eigen::VectorXd coeffs, Parity parity);

// Grid certificate for |p(x) - x^q| <= epsilon and |p(x)| <= 1.
struct ApproxCertificate {
  int target_q = 0;
  double epsilon = 0.0;
  int degree = 0;
  double sup_error = 0.0;
  double max_abs = 0.0;
  int grid_size = 0;
};

// n Chebyshev-Lobatto nodes -cos(pi*k/(n-1)), ascending, endpoints included.
Eigen::VectorXd chebyshev_lobatto_nodes(int n);

// Exact expansion x^q = 2^{1-q} sum'_{j == q mod 2} binom(q, (q-j)/2) T_j(x)
// (j = 0 term halved). All coefficients non-negative and sum to 1 at x = 1.
ChebyshevPoly cheb_expand_monomial(int q);

// ceil(sqrt(2 q ln(2/eps))): the Chernoff-tail truncation degree.
int sv14_truncation_degree(int q, double eps);

// Truncation of the exact expansion at the degree above (never beyond q),
// parity preserved, with a measured grid certificate.
std::pair<ChebyshevPoly, ApproxCertificate> truncate_sv14(int q, double eps,
                                                          int grid_size = 10000);

// Clenshaw evaluation; |x| <= 1 required.
double eval(const ChebyshevPoly& p, double x);

ChebyshevPoly derivative(const ChebyshevPoly& p);

// max over the Lobatto grid of |p(x) - x^q|; grid_size >= 1001.
double sup_error_vs_monomial(const ChebyshevPoly& p, int q, int grid_size);

double max_abs_on_grid(const ChebyshevPoly& p, int grid_size);

// (p(x) + p(-x))/2 resp. (p(x) - p(-x))/2: zero out wrong-parity
// coefficients exactly. Never increases the degree or, for a matching-parity
// target, the uniform error.
ChebyshevPoly parity_project(const ChebyshevPoly& p, Parity target);

struct RemezResult {
  ChebyshevPoly poly;
  double levelled_error = 0.0;  // |E| on the final reference
  int iterations = 0;
};

// Best uniform approximation of x^q on [-1, 1] by polynomials of degree <= d:
// multi-point exchange on a Chebyshev-Lobatto grid of max(4d+1, 2001) nodes,
// then one off-grid refinement pass.
RemezResult remez_best_approx(int q, int d);

struct MinimaxResult {
  bool found = false;
  int degree = 0;          // smallest degree achieving eps, if found
  double best_error = 0.0; // certified error at `degree`, else best seen
  ChebyshevPoly poly;      // approximant at `degree`, if found
};

// Smallest d in [d_min, d_max] whose best approximation error of x^q is
// <= eps, certified on a 1e5-node cross grid (with 1e-12 absolute slack).
MinimaxResult minimax_degree(int q, double eps, int d_min, int d_max);

struct MarkovCertificate {
  double max_deriv = 0.0;
  double bound = 0.0;  // degree^2
};

// Markov brothers' certificate: requires max|p| <= 1 on the grid.
MarkovCertificate markov_certificate(const ChebyshevPoly& p, int grid_size);

// sqrt(q (1 - 1/e - 2 eps)) for eps in (0, (e-1)/(2e)).
double sv14_lower_bound(int q, double eps);

// r = (1 - eps) p given sup|p - x^q| <= eps; certifies sup|r - x^q| <= 2 eps
// and max|r| <= 1 on the grid.
ChebyshevPoly rescale_bounded(const ChebyshevPoly& p, int q, double eps,
                              int grid_size = 10000);

}  // namespace qlab

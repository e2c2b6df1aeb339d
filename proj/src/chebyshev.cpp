#include "qlab/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlab {

namespace {

constexpr double kCertifySlack = 1e-12;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool parity_ok(const Eigen::VectorXd& c, Parity p) {
  if (p == Parity::none) return true;
  const int wrong_residue = (p == Parity::even) ? 1 : 0;
  for (Eigen::Index j = 0; j < c.size(); ++j)
    if (j % 2 == wrong_residue && c[j] != 0.0) return false;
  return true;
}

double monomial(double x, int q) { return std::pow(x, q); }

// Clenshaw without the domain check, for grid loops.
double clenshaw(const Eigen::VectorXd& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (Eigen::Index j = c.size() - 1; j >= 1; --j) {
    const double b0 = c[j] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

}  // namespace

ChebyshevPoly make_chebyshev(Eigen::VectorXd coeffs, Parity parity) {
  Eigen::Index n = coeffs.size();
  while (n > 1 && coeffs[n - 1] == 0.0) --n;
  coeffs.conservativeResize(std::max<Eigen::Index>(n, 1));
  if (coeffs.size() == 0) coeffs = Eigen::VectorXd::Zero(1);
  require(parity_ok(coeffs, parity),
          "chebyshev: nonzero coefficient violates declared parity");
  return ChebyshevPoly{std::move(coeffs), parity};
}

Eigen::VectorXd chebyshev_lobatto_nodes(int n) {
  require(n >= 2, "lobatto grid needs at least 2 nodes");
  Eigen::VectorXd x(n);
  for (int k = 0; k < n; ++k)
    x[k] = -std::cos(std::numbers::pi * k / (n - 1));
  x[0] = -1.0;
  x[n - 1] = 1.0;
  return x;
}

ChebyshevPoly cheb_expand_monomial(int q) {
  require(q >= 1, "cheb_expand_monomial: q must be >= 1");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(q + 1);
  // B_k = binom(q, k) 2^-q, exact start (power of two) plus one-ulp steps.
  double b = std::ldexp(1.0, -q);
  for (int k = 0; k <= q; ++k) {
    c[std::abs(q - 2 * k)] += b;
    b *= static_cast<double>(q - k) / (k + 1);
  }
  return make_chebyshev(std::move(c), (q % 2 == 0) ? Parity::even : Parity::odd);
}

int sv14_truncation_degree(int q, double eps) {
  return static_cast<int>(std::ceil(std::sqrt(2.0 * q * std::log(2.0 / eps))));
}

std::pair<ChebyshevPoly, ApproxCertificate> truncate_sv14(int q, double eps,
                                                          int grid_size) {
  require(q >= 1, "truncate_sv14: q must be >= 1");
  require(eps > 0.0 && eps < 1.0, "truncate_sv14: eps must be in (0, 1)");
  const ChebyshevPoly full = cheb_expand_monomial(q);
  const int d = std::max(1, std::min(sv14_truncation_degree(q, eps), q));
  Eigen::VectorXd c = full.coeffs.head(std::min<Eigen::Index>(d + 1, full.coeffs.size()));
  ChebyshevPoly p = make_chebyshev(std::move(c), full.parity);

  ApproxCertificate cert;
  cert.target_q = q;
  cert.epsilon = eps;
  cert.degree = p.degree();
  cert.sup_error = sup_error_vs_monomial(p, q, grid_size);
  cert.max_abs = max_abs_on_grid(p, grid_size);
  cert.grid_size = grid_size;
  return {std::move(p), cert};
}

double eval(const ChebyshevPoly& p, double x) {
  require(std::abs(x) <= 1.0, "chebyshev eval: |x| must be <= 1");
  return clenshaw(p.coeffs, x);
}

ChebyshevPoly derivative(const ChebyshevPoly& p) {
  const int d = p.degree();
  if (d == 0) return make_chebyshev(Eigen::VectorXd::Zero(1), Parity::none);
  // b_{j-1} = b_{j+1} + 2 j c_j, then halve b_0.
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  double upper1 = 0.0, upper2 = 0.0;  // b_{j+1}, b_{j+2}
  for (int j = d; j >= 1; --j) {
    b[j - 1] = upper2 + 2.0 * j * p.coeffs[j];
    upper2 = upper1;
    upper1 = b[j - 1];
  }
  b[0] /= 2.0;
  Parity dp = Parity::none;
  if (p.parity == Parity::even) dp = Parity::odd;
  if (p.parity == Parity::odd) dp = Parity::even;
  return make_chebyshev(std::move(b), dp);
}

double sup_error_vs_monomial(const ChebyshevPoly& p, int q, int grid_size) {
  require(grid_size >= 1001, "sup_error_vs_monomial: grid_size must be >= 1001");
  const Eigen::VectorXd xs = chebyshev_lobatto_nodes(grid_size);
  double m = 0.0;
  for (Eigen::Index k = 0; k < xs.size(); ++k)
    m = std::max(m, std::abs(clenshaw(p.coeffs, xs[k]) - monomial(xs[k], q)));
  return m;
}

double max_abs_on_grid(const ChebyshevPoly& p, int grid_size) {
  const Eigen::VectorXd xs = chebyshev_lobatto_nodes(grid_size);
  double m = 0.0;
  for (Eigen::Index k = 0; k < xs.size(); ++k)
    m = std::max(m, std::abs(clenshaw(p.coeffs, xs[k])));
  return m;
}

ChebyshevPoly parity_project(const ChebyshevPoly& p, Parity target) {
  require(target != Parity::none, "parity_project: target must be even or odd");
  Eigen::VectorXd c = p.coeffs;
  const int wrong_residue = (target == Parity::even) ? 1 : 0;
  for (Eigen::Index j = 0; j < c.size(); ++j)
    if (j % 2 == wrong_residue) c[j] = 0.0;
  return make_chebyshev(std::move(c), target);
}

namespace {

struct ExchangeState {
  Eigen::VectorXd coeffs;
  double levelled = 0.0;
};

// Solve sum_j c_j T_j(y_i) + (-1)^i E = f(y_i) on the d+2 reference points.
ExchangeState solve_reference(const std::vector<double>& ref, int d, int q) {
  const int m = d + 2;
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const double x = ref[i];
    double t0 = 1.0, t1 = x;
    a(i, 0) = 1.0;
    if (d >= 1) a(i, 1) = x;
    for (int j = 2; j <= d; ++j) {
      const double t2 = 2.0 * x * t1 - t0;
      a(i, j) = t2;
      t0 = t1;
      t1 = t2;
    }
    a(i, d + 1) = (i % 2 == 0) ? 1.0 : -1.0;
    rhs[i] = monomial(x, q);
  }
  Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  ExchangeState st;
  st.coeffs = sol.head(d + 1);
  st.levelled = std::abs(sol[d + 1]);
  return st;
}

// Alternating local maxima of e on the grid: argmax |e| per sign run, then
// trimmed to m points keeping the global maximum.
std::vector<int> alternating_extrema(const Eigen::VectorXd& e, int m) {
  std::vector<int> idx;
  int run_best = 0;
  int run_sign = (e[0] >= 0.0) ? 1 : -1;
  for (int k = 1; k < e.size(); ++k) {
    const int s = (e[k] >= 0.0) ? 1 : -1;
    if (s != run_sign) {
      idx.push_back(run_best);
      run_best = k;
      run_sign = s;
    } else if (std::abs(e[k]) > std::abs(e[run_best])) {
      run_best = k;
    }
  }
  idx.push_back(run_best);
  if (static_cast<int>(idx.size()) < m) return {};
  while (static_cast<int>(idx.size()) > m) {
    if (std::abs(e[idx.front()]) <= std::abs(e[idx.back()]))
      idx.erase(idx.begin());
    else
      idx.pop_back();
  }
  return idx;
}

}  // namespace

RemezResult remez_best_approx(int q, int d) {
  require(q >= 1, "remez: q must be >= 1");
  require(d >= 0, "remez: degree bound must be >= 0");
  if (d >= q) {
    return RemezResult{cheb_expand_monomial(q), 0.0, 0};
  }

  const int n_grid = std::max(4 * d + 1, 2001);
  const Eigen::VectorXd xs = chebyshev_lobatto_nodes(n_grid);

  std::vector<double> ref(d + 2);
  for (int i = 0; i <= d + 1; ++i)
    ref[i] = -std::cos(std::numbers::pi * i / (d + 1));

  ExchangeState st;
  Eigen::VectorXd e(n_grid);
  int it = 0;
  for (; it < 60; ++it) {
    st = solve_reference(ref, d, q);
    for (int k = 0; k < n_grid; ++k)
      e[k] = clenshaw(st.coeffs, xs[k]) - monomial(xs[k], q);
    const std::vector<int> picks = alternating_extrema(e, d + 2);
    if (picks.empty()) break;
    double grid_max = 0.0;
    for (int k : picks) grid_max = std::max(grid_max, std::abs(e[k]));
    std::vector<double> next(d + 2);
    for (int i = 0; i <= d + 1; ++i) next[i] = xs[picks[i]];
    const bool converged = grid_max - st.levelled <= 1e-11 * std::max(1.0, grid_max);
    ref = std::move(next);
    if (converged) break;
  }

  // One off-grid refinement pass: quadratic fit of the error around each
  // reference point, then a final re-solve.
  auto err_at = [&](double x) { return clenshaw(st.coeffs, x) - monomial(x, q); };
  const double h = 2.0 / (n_grid - 1);
  for (double& x0 : ref) {
    if (x0 <= -1.0 + h || x0 >= 1.0 - h) continue;
    const double xm = x0 - h, xp = x0 + h;
    const double em = err_at(xm), e0 = err_at(x0), ep = err_at(xp);
    const double denom = (em - 2.0 * e0 + ep);
    if (denom == 0.0) continue;
    double x_new = x0 - 0.5 * h * (ep - em) / denom;
    if (x_new > xm && x_new < xp && std::abs(err_at(x_new)) > std::abs(e0))
      x0 = x_new;
  }
  std::sort(ref.begin(), ref.end());
  st = solve_reference(ref, d, q);

  RemezResult out;
  out.poly = make_chebyshev(st.coeffs, Parity::none);
  out.levelled_error = st.levelled;
  out.iterations = it + 1;
  return out;
}

MinimaxResult minimax_degree(int q, double eps, int d_min, int d_max) {
  require(q >= 1, "minimax_degree: q must be >= 1");
  require(eps > 0.0, "minimax_degree: eps must be positive");
  require(d_min >= 0 && d_min <= d_max, "minimax_degree: bad degree range");

  MinimaxResult res;
  res.best_error = std::numeric_limits<double>::infinity();
  for (int d = d_min; d <= d_max; ++d) {
    ChebyshevPoly cand;
    double certified;
    if (d >= q) {
      cand = cheb_expand_monomial(q);
      certified = 0.0;
    } else if (d == 0) {
      // best constant: 1/2 for even q (error 1/2), 0 for odd q (error 1)
      const double c0 = (q % 2 == 0) ? 0.5 : 0.0;
      Eigen::VectorXd c(1);
      c << c0;
      cand = make_chebyshev(std::move(c), Parity::none);
      certified = sup_error_vs_monomial(cand, q, 100000);
    } else {
      RemezResult r = remez_best_approx(q, d);
      cand = std::move(r.poly);
      certified = sup_error_vs_monomial(cand, q, 100000);
    }
    if (certified < res.best_error) res.best_error = certified;
    if (certified <= eps + kCertifySlack) {
      res.found = true;
      res.degree = d;
      res.best_error = certified;
      res.poly = std::move(cand);
      return res;
    }
  }
  return res;
}

MarkovCertificate markov_certificate(const ChebyshevPoly& p, int grid_size) {
  require(max_abs_on_grid(p, grid_size) <= 1.0 + kCertifySlack,
          "markov_certificate: polynomial exceeds 1 on the grid; rescale first");
  const ChebyshevPoly dp = derivative(p);
  MarkovCertificate cert;
  cert.max_deriv = max_abs_on_grid(dp, grid_size);
  const double d = p.degree();
  cert.bound = d * d;
  return cert;
}

double sv14_lower_bound(int q, double eps) {
  require(q >= 1, "sv14_lower_bound: q must be >= 1");
  const double upper = (std::numbers::e - 1.0) / (2.0 * std::numbers::e);
  require(eps > 0.0 && eps < upper,
          "sv14_lower_bound: eps must be in (0, (e-1)/(2e))");
  return std::sqrt(q * (1.0 - 1.0 / std::numbers::e - 2.0 * eps));
}

ChebyshevPoly rescale_bounded(const ChebyshevPoly& p, int q, double eps,
                              int grid_size) {
  require(eps >= 0.0 && eps < 1.0, "rescale_bounded: eps must be in [0, 1)");
  const double pre = sup_error_vs_monomial(p, q, grid_size);
  require(pre <= eps + kCertifySlack,
          "rescale_bounded: precondition sup|p - x^q| <= eps fails on grid");
  ChebyshevPoly r = make_chebyshev((1.0 - eps) * p.coeffs, p.parity);
  const double err = sup_error_vs_monomial(r, q, grid_size);
  const double mx = max_abs_on_grid(r, grid_size);
  require(err <= 2.0 * eps + kCertifySlack,
          "rescale_bounded: 2eps certificate failed");
  require(mx <= 1.0 + kCertifySlack, "rescale_bounded: boundedness certificate failed");
  return r;
}

}  // namespace qlab

#include "qlab/circuits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/rng.hpp"

namespace qlab {

namespace {

using std::numbers::pi;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// H on the most significant (control) qubit: block form [[I, I], [I, -I]]/sqrt2.
Matrix apply_hadamard_on_control(const Matrix& m) {
  const Eigen::Index h = m.rows() / 2;
  Matrix out(m.rows(), m.cols());
  const double inv = 1.0 / std::sqrt(2.0);
  out.topRows(h) = inv * (m.topRows(h) + m.bottomRows(h));
  out.bottomRows(h) = inv * (m.topRows(h) - m.bottomRows(h));
  return out;
}

Matrix controlled(const Matrix& u) {
  const Eigen::Index d = u.rows();
  Matrix cu = Matrix::Zero(2 * d, 2 * d);
  cu.topLeftCorner(d, d) = identity(d);
  cu.bottomRightCorner(d, d) = u;
  return cu;
}

double marked_probability(const Vector& state) {
  const Eigen::Index half = state.size() / 2;
  return state.head(half).squaredNorm();
}

}  // namespace

MarkedUnitary marked_from_amplitude(double gamma, std::uint64_t oracle_cost_per_use) {
  require(gamma >= 0.0 && gamma <= 1.0, "marked amplitude must be in [0, 1]");
  MarkedUnitary m;
  m.true_amplitude = gamma;
  m.oracle_cost_per_use = oracle_cost_per_use;
  return m;
}

MarkedUnitary marked_rotation(double gamma) {
  require(gamma >= 0.0 && gamma <= 1.0, "marked amplitude must be in [0, 1]");
  const double c = std::sqrt(gamma), s = std::sqrt(1.0 - gamma);
  Matrix v(2, 2);
  v << c, -s, s, c;
  MarkedUnitary m;
  m.unitary = std::move(v);
  m.qubits = 1;
  m.true_amplitude = gamma;
  m.oracle_cost_per_use = 0;
  return m;
}

double hadamard_test_probability(const BlockEncoding& be, const DensityMatrix& rho) {
  require(be.alpha == 1.0, "hadamard test: requires an alpha = 1 encoding");
  require(be.system_qubits == rho.qubits(),
          "hadamard test: system dimension mismatch");
  const Eigen::Index da = Eigen::Index{1} << be.ancillas;
  const Eigen::Index half = da * rho.dim();

  Matrix w = controlled(be.unitary);
  w = apply_hadamard_on_control(w);
  // right factor (H ox I): (m * (H ox I)^T)^T pattern, done via adjoint trick
  w = apply_hadamard_on_control(w.adjoint().eval()).adjoint();

  Matrix input = Matrix::Zero(2 * half, 2 * half);
  input.block(0, 0, rho.dim(), rho.dim()) = rho.matrix();  // ctrl=0, anc=0
  const Matrix out = w * input * w.adjoint();
  return out.topLeftCorner(half, half).trace().real();
}

MarkedUnitary build_hadamard_test_unitary(const StatePrepOracle& oracle,
                                          const BlockEncoding& be) {
  require(be.system_qubits == oracle.system_qubits,
          "hadamard-test unitary: block encoding and oracle disagree on n");
  const int total = 1 + be.ancillas + oracle.system_qubits + oracle.ancilla_qubits;
  require(total <= 18, "hadamard-test unitary: " + std::to_string(total) +
                           " qubits exceeds the 18-qubit budget");
  const Eigen::Index db = Eigen::Index{1} << oracle.ancilla_qubits;
  const Eigen::Index d = Eigen::Index{1} << total;

  // layout: [ctrl][be ancillas][A][B]
  Matrix v = kron(identity(d / oracle.dim()), oracle.unitary);
  v = apply_hadamard_on_control(v);
  v = kron(controlled(be.unitary), identity(db)) * v;
  v = apply_hadamard_on_control(v);

  MarkedUnitary m;
  m.qubits = total;
  m.true_amplitude = marked_probability(v.col(0));
  m.oracle_cost_per_use = be.ledger_cost + 1;
  m.unitary = std::move(v);
  return m;
}

Matrix shift_operator(int q, int n) {
  require(q >= 2 && n >= 1, "shift_operator: need q >= 2 and n >= 1");
  require(q * n <= 16, "shift_operator: q*n exceeds the 16-qubit budget");
  const Eigen::Index d = Eigen::Index{1} << (q * n);
  const Eigen::Index low_mask = (Eigen::Index{1} << n) - 1;
  Matrix p = Matrix::Zero(d, d);
  for (Eigen::Index x = 0; x < d; ++x) {
    const Eigen::Index dst = (x >> n) | ((x & low_mask) << (n * (q - 1)));
    p(dst, x) = 1.0;
  }
  return p;
}

double shift_test_probability(const DensityMatrix& rho, int q) {
  require(q >= 2, "shift test: q must be >= 2");
  const int n = rho.qubits();
  require(q * n + 1 <= 17, "shift test: q*n+1 exceeds the 17-qubit budget");

  if (q * n + 1 <= 11) {
    // dense circuit: H, controlled-Shift_q on rho^(ox q), H, measure
    Matrix rho_q = rho.matrix();
    for (int i = 1; i < q; ++i) rho_q = kron(rho_q, rho.matrix());
    Matrix w = controlled(shift_operator(q, n));
    w = apply_hadamard_on_control(w);
    w = apply_hadamard_on_control(w.adjoint().eval()).adjoint();
    const Eigen::Index half = rho_q.rows();
    Matrix input = Matrix::Zero(2 * half, 2 * half);
    input.topLeftCorner(half, half) = rho_q;
    const Matrix out = w * input * w.adjoint();
    return out.topLeftCorner(half, half).trace().real();
  }

  // Exact contraction of the same probability law for sizes where the dense
  // 2^(qn+1) operator does not fit: Pr[0] = (1 + Re tr(Shift rho^(ox q)))/2
  // with tr(Shift rho^(ox q)) = sum_x prod_i rho((shift^-1 x)_i, x_i).
  const Eigen::Index d = Eigen::Index{1} << (q * n);
  const Eigen::Index block = Eigen::Index{1} << n;
  const Eigen::Index low_mask = block - 1;
  Complex tr = 0.0;
  for (Eigen::Index x = 0; x < d; ++x) {
    const Eigen::Index y = ((x << n) & (d - 1)) | (x >> (n * (q - 1)));
    Complex prod = 1.0;
    for (int i = 0; i < q; ++i) {
      const int sh = n * (q - 1 - i);
      prod *= rho.matrix()((y >> sh) & low_mask, (x >> sh) & low_mask);
    }
    tr += prod;
  }
  return (1.0 + tr.real()) / 2.0;
}

MarkedUnitary build_shift_test_unitary(const StatePrepOracle& oracle, int q) {
  require(q >= 2, "shift-test unitary: q must be >= 2");
  const int n = oracle.system_qubits;
  const int a = oracle.ancilla_qubits;
  const int total = 1 + q * (n + a);
  require(total <= 11, "shift-test unitary: " + std::to_string(total) +
                           " qubits exceeds the dense 11-qubit budget");

  // blocks [A_i B_i]; the shift cycles the A_i fields in place.
  const int blk = n + a;
  const std::uint64_t d_sys = std::uint64_t{1} << (q * blk);
  const std::uint64_t n_mask = (std::uint64_t{1} << n) - 1;
  Matrix shift_a = Matrix::Zero(static_cast<Eigen::Index>(d_sys),
                                static_cast<Eigen::Index>(d_sys));
  for (std::uint64_t x = 0; x < d_sys; ++x) {
    std::uint64_t dst = x;
    for (int i = 0; i < q; ++i) {
      const int src_block = (i + q - 1) % q;  // new block i <- old block i-1
      const int sh_dst = blk * (q - 1 - i) + a;
      const int sh_src = blk * (q - 1 - src_block) + a;
      const std::uint64_t af = (x >> sh_src) & n_mask;
      dst = (dst & ~(n_mask << sh_dst)) | (af << sh_dst);
    }
    shift_a(static_cast<Eigen::Index>(dst), static_cast<Eigen::Index>(x)) = 1.0;
  }

  Matrix prep = oracle.unitary;
  for (int i = 1; i < q; ++i) prep = kron(prep, oracle.unitary);

  Matrix u = kron(identity(2), prep);
  u = apply_hadamard_on_control(u);
  u = controlled(shift_a) * u;
  u = apply_hadamard_on_control(u);

  MarkedUnitary m;
  m.qubits = total;
  m.true_amplitude = marked_probability(u.col(0));
  m.oracle_cost_per_use = static_cast<std::uint64_t>(q);
  m.unitary = std::move(u);
  return m;
}

int qae_grid_size(double eps) {
  require(eps > 0.0 && eps < 1.0, "amplitude estimation: eps must be in (0, 1)");
  const int log_m = static_cast<int>(std::ceil(std::log2(2.0 * pi / eps)));
  return 1 << log_m;
}

namespace {

// F_M(d) = (sin(M pi d) / (M sin(pi d)))^2, periodic with F_M(integer) = 1.
double fejer_kernel(double delta, int m) {
  double frac = delta - std::floor(delta);
  const double s = std::sin(pi * frac);
  if (std::abs(s) < 1e-15) return 1.0;
  const double t = std::sin(static_cast<double>(m) * pi * frac) / (m * s);
  return t * t;
}

}  // namespace

Eigen::VectorXd qae_outcome_distribution_analytic(double gamma, int m) {
  require(gamma >= -1e-12 && gamma <= 1.0 + 1e-12,
          "qae distribution: gamma must be in [0, 1]");
  gamma = std::clamp(gamma, 0.0, 1.0);
  const double omega = std::asin(std::sqrt(gamma)) / pi;
  Eigen::VectorXd p(m);
  for (int y = 0; y < m; ++y) {
    const double frac = static_cast<double>(y) / m;
    p[y] = 0.5 * (fejer_kernel(frac - omega, m) + fejer_kernel(frac + omega, m));
  }
  p /= p.sum();
  return p;
}

Matrix grover_operator(const MarkedUnitary& target) {
  require(target.has_matrix(), "grover operator: target carries no circuit");
  const Eigen::Index d = target.unitary.rows();
  const Eigen::Index half = d / 2;
  // Q = -V S_0 V^dag S_Pi with S_0 = I - 2|0><0|, S_Pi = I - 2 Pi.
  Matrix s0 = identity(d);
  s0(0, 0) = -1.0;
  Matrix spi = identity(d);
  spi.topLeftCorner(half, half) *= -1.0;
  return -target.unitary * s0 * target.unitary.adjoint() * spi;
}

Eigen::VectorXd qae_outcome_distribution_circuit(const MarkedUnitary& target, int m) {
  require(target.has_matrix(),
          "full-circuit QAE: target carries no circuit (analytic-only)");
  const int m_qubits = static_cast<int>(std::round(std::log2(m)));
  require((1 << m_qubits) == m, "full-circuit QAE: M must be a power of two");
  require(target.qubits + m_qubits <= 18,
          "full-circuit QAE: " + std::to_string(target.qubits + m_qubits) +
              " qubits exceeds the 18-qubit budget");

  const Matrix q = grover_operator(target);
  const Eigen::Index d = q.rows();
  // Exact phase-estimation register: outcome amplitude
  // A_y = (1/M) sum_k exp(-2 pi i k y / M) Q^k V|0>.
  std::vector<Vector> orbit(m);
  orbit[0] = target.unitary.col(0);
  for (int k = 1; k < m; ++k) orbit[k] = q * orbit[k - 1];

  Eigen::VectorXd p(m);
  for (int y = 0; y < m; ++y) {
    Vector acc = Vector::Zero(d);
    for (int k = 0; k < m; ++k) {
      const double ang = -2.0 * pi * k * y / m;
      acc += Complex(std::cos(ang), std::sin(ang)) * orbit[k];
    }
    p[y] = acc.squaredNorm() / (static_cast<double>(m) * m);
  }
  p /= p.sum();
  return p;
}

QAEResult amplitude_estimate(const MarkedUnitary& target, double eps,
                             std::uint64_t seed, QaeMode mode, int shots) {
  require(shots >= 1, "amplitude estimation: shots must be >= 1");
  const int m = qae_grid_size(eps);
  const Eigen::VectorXd dist =
      (mode == QaeMode::analytic_sampler)
          ? qae_outcome_distribution_analytic(target.true_amplitude, m)
          : qae_outcome_distribution_circuit(target, m);
  Eigen::VectorXd cdf(m);
  double acc = 0.0;
  for (int y = 0; y < m; ++y) {
    acc += dist[y];
    cdf[y] = acc;
  }

  QAEResult res;
  res.grid_m = m;
  res.shots = shots;
  res.queries_to_v = static_cast<std::uint64_t>(m) * shots;
  std::vector<double> estimates;
  estimates.reserve(shots);
  for (int s = 0; s < shots; ++s) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(s));
    const double u = rng.next_double();
    const int y = static_cast<int>(
        std::lower_bound(cdf.data(), cdf.data() + m, u) - cdf.data());
    const int yy = std::min(y, m - 1);
    res.raw_outcomes[yy] += 1;
    const double ang = pi * yy / m;
    estimates.push_back(std::sin(ang) * std::sin(ang));
  }
  std::sort(estimates.begin(), estimates.end());
  res.estimate = estimates[estimates.size() / 2];
  if (estimates.size() % 2 == 0)
    res.estimate = 0.5 * (res.estimate + estimates[estimates.size() / 2 - 1]);
  return res;
}

std::string qae_histogram_csv(const QAEResult& result) {
  std::string out = "outcome,count\n";
  for (const auto& [y, count] : result.raw_outcomes) {
    const double ang = pi * y / result.grid_m;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf),
                                   std::sin(ang) * std::sin(ang),
                                   std::chars_format::general, 17);
    out.append(buf, res.ptr);
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

double median_amplify(const MarkedUnitary& target, double eps, int k,
                      std::uint64_t seed, QaeMode mode) {
  require(k >= 1 && k % 2 == 1, "median_amplify: k must be odd");
  std::vector<double> vals;
  vals.reserve(k);
  for (int i = 0; i < k; ++i) {
    const QAEResult r = amplitude_estimate(
        target, eps, Rng::derive(seed, 1000003ULL + i).next_u64(), mode, 1);
    vals.push_back(r.estimate);
  }
  std::sort(vals.begin(), vals.end());
  return vals[vals.size() / 2];
}

}  // namespace qlab

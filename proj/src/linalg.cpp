#include "qlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qlab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Eigen::Index dim_for_qubits(int n) {
  require(n >= 0 && n <= 24, "qubit count out of range: " + std::to_string(n));
  return Eigen::Index{1} << n;
}

}  // namespace

Distribution::Distribution(RealVector probabilities) : p_(std::move(probabilities)) {
  require(p_.size() >= 1, "distribution: support size must be >= 1");
  for (Eigen::Index j = 0; j < p_.size(); ++j) {
    require(std::isfinite(p_[j]) && p_[j] >= 0.0,
            "distribution: probabilities must be finite and non-negative");
  }
  require(std::abs(p_.sum() - 1.0) <= 1e-12,
          "distribution: probabilities must sum to 1 within 1e-12, got sum " +
              std::to_string(p_.sum()));
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix rho)
    : n_qubits_(n_qubits), rho_(std::move(rho)) {
  const Eigen::Index d = dim_for_qubits(n_qubits);
  require(rho_.rows() == d && rho_.cols() == d,
          "density matrix: dimension does not match qubit count");
  require(rho_.allFinite(), "density matrix: entries must be finite");
  require((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTol,
          "density matrix: not Hermitian within 1e-10");
  require(std::abs(rho_.trace().real() - 1.0) <= kTraceTol &&
              std::abs(rho_.trace().imag()) <= kTraceTol,
          "density matrix: trace deviates from 1 beyond 1e-10");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= kEigenvalueFloor,
          "density matrix: negative eigenvalue beyond -1e-10 floor");
}

DensityMatrix DensityMatrix::pure(const Vector& state) {
  const Eigen::Index d = state.size();
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  require((Eigen::Index{1} << n) == d, "pure state: dimension must be a power of two");
  const double nrm = state.norm();
  require(nrm > 0.0, "pure state: zero vector");
  Vector psi = state / nrm;
  return DensityMatrix(n, psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const Eigen::Index d = dim_for_qubits(n_qubits);
  return DensityMatrix(n_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::diagonal(const Distribution& p) {
  const Eigen::Index n_outcomes = p.size();
  int n = 0;
  while ((Eigen::Index{1} << n) < n_outcomes) ++n;
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix rho = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < n_outcomes; ++j) rho(j, j) = p[j];
  return DensityMatrix(n, std::move(rho));
}

DensityMatrix DensityMatrix::random(int n_qubits, std::uint64_t seed) {
  const Eigen::Index d = dim_for_qubits(n_qubits);
  Rng rng = Rng::derive(seed, 0x726f68u);  // per-purpose stream tag
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      g(i, j) = Complex(rng.next_normal(), rng.next_normal());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityMatrix(n_qubits, std::move(rho));
}

RealVector DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  RealVector ev = es.eigenvalues();
  for (Eigen::Index j = 0; j < ev.size(); ++j)
    ev[j] = std::min(1.0, std::max(0.0, ev[j]));
  return ev;
}

DensityMatrix StatePrepOracle::prepared_density() const {
  const Vector psi = prepared_state();
  return partial_trace(psi * psi.adjoint(), system_qubits, ancilla_qubits,
                       Subsystem::first);
}

StatePrepOracle purify(const DensityMatrix& rho, std::uint64_t seed) {
  const int n = rho.qubits();
  const Eigen::Index d = rho.dim();
  const Eigen::Index dd = d * d;

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const RealVector lam = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();

  // |psi> = sum_j sqrt(lambda_j) |psi_j>_A |j>_B, A most significant; labels
  // j follow descending eigenvalue order so a pure state purifies to
  // |psi>|0>.
  Vector psi = Vector::Zero(dd);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double lj = std::max(0.0, lam[j]);
    if (lj == 0.0) continue;
    const double s = std::sqrt(lj);
    const Eigen::Index label = d - 1 - j;
    for (Eigen::Index i = 0; i < d; ++i) psi[i * d + label] += s * vecs(i, j);
  }
  psi /= psi.norm();

  Matrix u(dd, dd);
  u.col(0) = psi;
  Rng rng = Rng::derive(seed, 0x70757269u);
  for (Eigen::Index c = 1; c < dd; ++c) {
    Vector v(dd);
    while (true) {
      for (Eigen::Index i = 0; i < dd; ++i)
        v[i] = Complex(rng.next_normal(), rng.next_normal());
      // two Gram-Schmidt passes
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index k = 0; k < c; ++k)
          v -= u.col(k).dot(v) * u.col(k);
      const double nrm = v.norm();
      if (nrm > 1e-8) {
        u.col(c) = v / nrm;
        break;
      }
    }
  }

  StatePrepOracle oracle;
  oracle.system_qubits = n;
  oracle.ancilla_qubits = n;
  oracle.unitary = std::move(u);
  oracle.ledger = std::make_shared<QueryLedger>();
  return oracle;
}

double trace_power(const DensityMatrix& rho, int q) {
  require(q >= 1, "trace_power: q must be >= 1");
  const RealVector lam = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index j = 0; j < lam.size(); ++j) s += std::pow(lam[j], q);
  return s;
}

double tsallis_exact(const DensityMatrix& rho, int q) {
  require(q >= 2, "tsallis_exact: integer order q must be >= 2");
  return (1.0 - trace_power(rho, q)) / (q - 1);
}

double tsallis_exact_dist(const Distribution& p, int q) {
  require(q >= 2, "tsallis_exact_dist: integer order q must be >= 2");
  double s = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) s += std::pow(p[j], q);
  return (1.0 - s) / (q - 1);
}

double hellinger(const Distribution& p, const Distribution& r) {
  require(p.size() == r.size(), "hellinger: supports must have equal size");
  double s = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const double d = std::sqrt(p[j]) - std::sqrt(r[j]);
    s += d * d;
  }
  return std::sqrt(std::max(0.0, 0.5 * s));
}

DensityMatrix partial_trace(const Matrix& joint, int qubits_first,
                            int qubits_second, Subsystem keep) {
  const Eigen::Index da = dim_for_qubits(qubits_first);
  const Eigen::Index db = dim_for_qubits(qubits_second);
  require(joint.rows() == da * db && joint.cols() == da * db,
          "partial_trace: joint dimension does not match qubit split");
  if (keep == Subsystem::first) {
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index j = 0; j < db; ++j)
          out(i, k) += joint(i * db + j, k * db + j);
    return DensityMatrix(qubits_first, std::move(out));
  }
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index k = 0; k < db; ++k)
      for (Eigen::Index j = 0; j < da; ++j)
        out(i, k) += joint(j * db + i, j * db + k);
  return DensityMatrix(qubits_second, std::move(out));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double operator_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()[0];
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

}  // namespace qlab

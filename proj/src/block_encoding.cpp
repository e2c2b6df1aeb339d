#include "qlab/block_encoding.hpp"

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

// Permutation swapping the n most significant qubits (register A of AB) with
// the n least significant (register S'), identity on the a middle qubits.
Matrix swap_outer_registers(int n, int a) {
  const Eigen::Index d = Eigen::Index{1} << (2 * n + a);
  const Eigen::Index dn = Eigen::Index{1} << n;
  const Eigen::Index da = Eigen::Index{1} << a;
  Matrix p = Matrix::Zero(d, d);
  for (Eigen::Index ia = 0; ia < dn; ++ia)
    for (Eigen::Index ib = 0; ib < da; ++ib)
      for (Eigen::Index is = 0; is < dn; ++is) {
        const Eigen::Index src = (ia * da + ib) * dn + is;
        const Eigen::Index dst = (is * da + ib) * dn + ia;
        p(dst, src) = 1.0;
      }
  return p;
}

}  // namespace

Matrix extract_block(const BlockEncoding& be) {
  const Eigen::Index dn = Eigen::Index{1} << be.system_qubits;
  return be.alpha * be.unitary.topLeftCorner(dn, dn);
}

BlockEncoding density_block_encoding(const StatePrepOracle& oracle) {
  const int n = oracle.system_qubits;
  const int a = oracle.ancilla_qubits;
  require(2 * n + a <= 18,
          "density_block_encoding: 2n+a exceeds the 18-qubit budget");
  const Eigen::Index dn = Eigen::Index{1} << n;

  const Matrix u_ext = kron(oracle.unitary, identity(dn));
  const Matrix w = u_ext.adjoint() * swap_outer_registers(n, a) * u_ext;

  BlockEncoding be;
  be.unitary = w;
  be.alpha = 1.0;
  be.ancillas = n + a;
  be.err = 0.0;
  be.system_qubits = n;
  be.ledger_cost = 2;  // one query to U and one to U^dag per use
  return be;
}

BlockEncoding qsvt_apply(const BlockEncoding& be, const ChebyshevPoly& poly) {
  require(be.alpha == 1.0, "qsvt_apply: requires an alpha = 1 encoding");
  require(poly.parity == Parity::even || poly.parity == Parity::odd,
          "qsvt_apply: polynomial must have definite parity");
  require(max_abs_on_grid(poly, 4097) <= 1.0 + 1e-12,
          "qsvt_apply: polynomial exceeds 1 on [-1, 1]");

  Matrix a_block = extract_block(be);
  require((a_block - a_block.adjoint()).cwiseAbs().maxCoeff() <= 1e-9,
          "qsvt_apply: encoded block is not Hermitian within 1e-9");
  a_block = ((a_block + a_block.adjoint()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(a_block);
  const Eigen::Index dn = a_block.rows();
  RealVector pv(dn), sv(dn);
  for (Eigen::Index j = 0; j < dn; ++j) {
    const double lam = std::clamp(es.eigenvalues()[j], -1.0, 1.0);
    double val = eval(poly, lam);
    require(std::abs(val) <= 1.0 + 1e-12,
            "qsvt_apply: |p(A)| exceeds 1 after clamping");
    val = std::clamp(val, -1.0, 1.0);
    pv[j] = val;
    sv[j] = std::sqrt(std::max(0.0, 1.0 - val * val));
  }
  const Matrix pa = es.eigenvectors() * pv.asDiagonal().toDenseMatrix().cast<Complex>() *
                    es.eigenvectors().adjoint();
  const Matrix sa = es.eigenvectors() * sv.asDiagonal().toDenseMatrix().cast<Complex>() *
                    es.eigenvectors().adjoint();

  // [[p(A), S], [S, -p(A)]] on (new ancilla, system), identity on the
  // inherited ancillas in between; new ancilla is most significant.
  const Eigen::Index da = Eigen::Index{1} << be.ancillas;
  const Eigen::Index half = da * dn;
  Matrix u = Matrix::Zero(2 * half, 2 * half);
  for (Eigen::Index m = 0; m < da; ++m) {
    u.block(m * dn, m * dn, dn, dn) = pa;
    u.block(m * dn, half + m * dn, dn, dn) = sa;
    u.block(half + m * dn, m * dn, dn, dn) = sa;
    u.block(half + m * dn, half + m * dn, dn, dn) = -pa;
  }

  BlockEncoding out;
  out.unitary = std::move(u);
  out.alpha = 1.0;
  out.ancillas = be.ancillas + 1;
  out.err = 0.0;
  out.system_qubits = be.system_qubits;
  out.ledger_cost = static_cast<std::uint64_t>(poly.degree()) * be.ledger_cost;
  return out;
}

BlockEncoding embed_contraction(const Matrix& a) {
  require(a.rows() == a.cols(), "embed_contraction: matrix must be square");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  require(svd.singularValues().size() == 0 ||
              svd.singularValues()[0] <= 1.0 + 1e-12,
          "embed_contraction: operator norm exceeds 1");
  const Eigen::Index d = a.rows();
  RealVector c(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double s = std::min(1.0, svd.singularValues()[j]);
    c[j] = std::sqrt(std::max(0.0, 1.0 - s * s));
  }
  const Matrix cd = c.asDiagonal().toDenseMatrix().cast<Complex>();
  Matrix u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = a;
  u.topRightCorner(d, d) = svd.matrixU() * cd * svd.matrixU().adjoint();
  u.bottomLeftCorner(d, d) = svd.matrixV() * cd * svd.matrixV().adjoint();
  u.bottomRightCorner(d, d) = -a.adjoint();

  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;

  BlockEncoding be;
  be.unitary = std::move(u);
  be.alpha = 1.0;
  be.ancillas = 1;
  be.err = 0.0;
  be.system_qubits = n;
  be.ledger_cost = 0;
  return be;
}

}  // namespace qlab

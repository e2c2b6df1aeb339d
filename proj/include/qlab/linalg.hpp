#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>

#include "qlab/rng.hpp"

namespace qlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

// Exact count of oracle uses charged by an algorithm run. A "query" is a use
// of the oracle, its inverse, or a controlled version of either.
struct QueryLedger {
  std::uint64_t forward = 0;
  std::uint64_t inverse = 0;
  std::uint64_t controlled = 0;

  void charge_forward(std::uint64_t k) { forward += k; }
  void charge_inverse(std::uint64_t k) { inverse += k; }
  void charge_controlled(std::uint64_t k) { controlled += k; }
  std::uint64_t total() const { return forward + inverse + controlled; }
};

// Probability vector: non-negative entries summing to 1 within 1e-12.
class Distribution {
 public:
  explicit Distribution(RealVector probabilities);

  const RealVector& probabilities() const { return p_; }
  Eigen::Index size() const { return p_.size(); }
  double operator[](Eigen::Index j) const { return p_[j]; }

 private:
  RealVector p_;
};

// Hermitian PSD trace-1 operator on n qubits, validated on construction.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Matrix rho);

  static DensityMatrix pure(const Vector& state);
  static DensityMatrix maximally_mixed(int n_qubits);
  static DensityMatrix diagonal(const Distribution& p);
  // Ginibre-style: G G^dag / tr(G G^dag) with seeded complex Gaussian G.
  static DensityMatrix random(int n_qubits, std::uint64_t seed);

  int qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return rho_.rows(); }
  const Matrix& matrix() const { return rho_; }

  // Spectrum sorted ascending, clamped into [0, 1].
  RealVector eigenvalues() const;

 private:
  int n_qubits_;
  Matrix rho_;
};

// Unitary preparing a purification of some rho: U|0>_A|0>_B = |psi>_AB with
// rho = tr_B. Register A holds the first (most significant) system_qubits.
struct StatePrepOracle {
  int system_qubits = 0;
  int ancilla_qubits = 0;
  Matrix unitary;
  std::shared_ptr<QueryLedger> ledger;

  Eigen::Index dim() const { return unitary.rows(); }
  // |psi>_AB = U |0...0>.
  Vector prepared_state() const { return unitary.col(0); }
  DensityMatrix prepared_density() const;
};

// Eigendecomposition purification sum_j sqrt(lambda_j) |psi_j>|j> with the
// remaining unitary columns completed by seeded Gram-Schmidt. a_ancilla =
// n_system.
StatePrepOracle purify(const DensityMatrix& rho, std::uint64_t seed);

// tr(rho^q) = sum_j lambda_j^q, q >= 1.
double trace_power(const DensityMatrix& rho, int q);

// S_q(rho) = (1 - tr(rho^q)) / (q - 1), integer q >= 2.
double tsallis_exact(const DensityMatrix& rho, int q);

// H_q(p) on the diagonal embedding; equals tsallis_exact(diag(p), q).
double tsallis_exact_dist(const Distribution& p, int q);

// sqrt(1/2 sum_j (sqrt(p_j) - sqrt(r_j))^2), in [0, 1].
double hellinger(const Distribution& p, const Distribution& r);

enum class Subsystem { first, second };

// Partial trace of a density operator on qubits_first + qubits_second qubits
// (first block most significant). Keeps the selected subsystem.
DensityMatrix partial_trace(const Matrix& joint, int qubits_first,
                            int qubits_second, Subsystem keep);

// --- dense helpers ---------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);

// Largest singular value. Intended for small blocks (error certificates).
double operator_norm(const Matrix& a);

// ||U^dag U - I||_F; upper-bounds the operator-norm unitarity defect.
double unitarity_defect(const Matrix& u);

Matrix identity(Eigen::Index dim);

}  // namespace qlab

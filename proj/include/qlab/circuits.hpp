#pragma once

#include <cstdint>
#include <map>

#include "qlab/block_encoding.hpp"
#include "qlab/linalg.hpp"

namespace qlab {

// Unitary with a marked subspace (first qubit = |0> by convention) and its
// cached amplitude gamma = ||Pi V |0...0>||^2. For sweep configurations whose
// circuit would exceed the simulable qubit budget, `unitary` may be left
// empty and only gamma + the per-use oracle cost are carried; full-circuit
// amplitude estimation then rejects the target.
struct MarkedUnitary {
  Matrix unitary;
  int qubits = 0;
  double true_amplitude = 0.0;
  std::uint64_t oracle_cost_per_use = 0;

  bool has_matrix() const { return unitary.size() > 0; }
};

MarkedUnitary marked_from_amplitude(double gamma, std::uint64_t oracle_cost_per_use);

// Minimal concrete circuit with a prescribed amplitude (a 1-qubit rotation);
// used to exercise the full-circuit QAE path against the analytic law.
MarkedUnitary marked_rotation(double gamma);

// Simulates the Hadamard-test circuit (H, controlled-U, H) on
// rho ox |0><0|^(a+1) and returns Pr[first qubit = 0]. Requires alpha = 1.
double hadamard_test_probability(const BlockEncoding& be, const DensityMatrix& rho);

// Readout unitary V for the estimator pipeline: state preparation by the
// oracle followed by the Hadamard test on the block-encoding, wired so that
// gamma = (1 + Re tr(A rho)) / 2 with A the encoded block.
// One use of V charges be.ledger_cost + 1 oracle queries.
MarkedUnitary build_hadamard_test_unitary(const StatePrepOracle& oracle,
                                          const BlockEncoding& be);

// Cyclic register shift |phi_1>...|phi_q> -> |phi_q>|phi_1>...|phi_{q-1}>
// on q blocks of n qubits.
Matrix shift_operator(int q, int n);

// Pr[x = 0] of the Shift-test circuit on rho^(ox q). Dense circuit
// simulation up to 11 total qubits, exact tensor contraction up to the
// 17-qubit spec budget.
double shift_test_probability(const DensityMatrix& rho, int q);

// U = W * O^(ox q): the Shift test run on oracle-prepared purifications.
// One use charges q oracle queries.
MarkedUnitary build_shift_test_unitary(const StatePrepOracle& oracle, int q);

enum class QaeMode { full_circuit, analytic_sampler };

struct QAEResult {
  double estimate = 0.0;            // median of the per-shot estimates
  int grid_m = 0;                   // M, a power of two
  int shots = 0;
  std::map<int, int> raw_outcomes;  // measured grid index y -> count
  std::uint64_t queries_to_v = 0;   // M per shot
};

// M = 2^ceil(log2(2 pi / eps)).
int qae_grid_size(double eps);

// Closed-form phase-estimation outcome law: Pr[y] = (F_M(y/M - w) +
// F_M(y/M + w)) / 2 with w = arcsin(sqrt(gamma))/pi and F_M the Fejer-type
// kernel sin^2(M pi d) / (M sin(pi d))^2.
Eigen::VectorXd qae_outcome_distribution_analytic(double gamma, int m);

// Exact simulation of the M-point phase-estimation register over the Grover
// operator of (V, Pi).
Eigen::VectorXd qae_outcome_distribution_circuit(const MarkedUnitary& target, int m);

Matrix grover_operator(const MarkedUnitary& target);

// Canonical QAE: outcome y maps to the estimate sin^2(pi y / M). Single-shot
// guarantee Pr[|estimate - gamma| <= eps] >= 2/3.
QAEResult amplitude_estimate(const MarkedUnitary& target, double eps,
                             std::uint64_t seed, QaeMode mode, int shots = 1);

// Median of k independent single-shot estimates (k odd).
double median_amplify(const MarkedUnitary& target, double eps, int k,
                      std::uint64_t seed, QaeMode mode);

// Histogram dump: one "outcome,count" line per measured grid value
// sin^2(pi y / M), 17-significant-digit floats, trailing newline.
std::string qae_histogram_csv(const QAEResult& result);

}  // namespace qlab

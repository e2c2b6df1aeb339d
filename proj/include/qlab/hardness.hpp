#pragma once

#include <vector>

#include "qlab/chebyshev.hpp"
#include "qlab/linalg.hpp"

namespace qlab {

enum class HardFamily { large_q, const_q };

// Pair of 2-outcome distributions whose Tsallis-entropy gap and Hellinger
// distance witness the query lower bound.
struct HardInstance {
  Distribution p_plus;
  Distribution p_minus;
  int q = 0;
  double delta = 0.0;
  HardFamily family = HardFamily::large_q;
};

// p+- = (1 - 1/q +- delta, 1/q -+ delta), delta in (0, 1/q].
HardInstance make_hard_instance_largeq(int q, double delta);

// p+- = (2/3 +- eps, 1/3 -+ eps).
HardInstance make_hard_instance_constq(int q, double eps);

// H_q(p-) - H_q(p+), computed directly from the Tsallis formula.
double entropy_gap(const HardInstance& inst);

// The same gap via the odd-binomial-term expansion
// (2/(q-1)) sum_j binom(q, 2j+1) (a^{q-2j-1} - b^{q-2j-1}) delta^{2j+1};
// dual route for entropy_gap.
double entropy_gap_binomial_sum(const HardInstance& inst);

// Closed-form first-order witness 2((1-1/q)^q - (1-1/q)(1/q)^{q-1}) delta;
// strictly below entropy_gap for the large-q family, q >= 3.
double gap_lower_witness(const HardInstance& inst);

struct HellingerWitness {
  double exact = 0.0;
  double bound = 0.0;  // q delta / sqrt(q-1)
};

HellingerWitness hellinger_upper_witness(const HardInstance& inst);

// 1 / hellinger(p+, p-): the distinguishing query lower bound value.
double query_lower_value(const HardInstance& inst);

struct SandwichRow {
  int q = 0;
  double eps = 0.0;
  double floor_real = 0.0;  // sv14_lower_bound(q, 2 eps)
  int floor_ceil = 0;
  int minimax = 0;          // minimax_degree(q, eps)
  int truncation = 0;       // degree of truncate_sv14(q, eps)
  double minimax_error = 0.0;
};

// Per q: the Appendix-B floor for the rescaled bounded problem, the measured
// minimax degree, and the truncation degree; floor <= minimax <= truncation
// on every row. eps must lie in (0, 1/(2e)) for the R-valued reduction.
std::vector<SandwichRow> degree_sandwich_experiment(const std::vector<int>& q_list,
                                                    double eps);

}  // namespace qlab

#include "qlab/hardness.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qlab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

HardInstance make_pair(double a, double b, double delta, int q, HardFamily fam) {
  RealVector plus(2), minus(2);
  plus << a + delta, b - delta;
  minus << a - delta, b + delta;
  return HardInstance{Distribution(plus), Distribution(minus), q, delta, fam};
}

// (a, b) base point of the family: (1-1/q, 1/q) or (2/3, 1/3).
std::pair<double, double> base_point(const HardInstance& inst) {
  if (inst.family == HardFamily::large_q)
    return {1.0 - 1.0 / inst.q, 1.0 / inst.q};
  return {2.0 / 3.0, 1.0 / 3.0};
}

double binom(int n, int k) {
  double b = 1.0;
  for (int j = 0; j < k; ++j) b = b * (n - j) / (j + 1);
  return b;
}

}  // namespace

HardInstance make_hard_instance_largeq(int q, double delta) {
  require(q >= 3, "hard instance (large q): q must be >= 3");
  require(delta > 0.0 && delta <= 1.0 / q,
          "hard instance (large q): delta must be in (0, 1/q]");
  return make_pair(1.0 - 1.0 / q, 1.0 / q, delta, q, HardFamily::large_q);
}

HardInstance make_hard_instance_constq(int q, double eps) {
  require(q >= 2, "hard instance (const q): q must be >= 2");
  require(eps > 0.0 && eps <= 1.0 / 3.0,
          "hard instance (const q): eps must be in (0, 1/3]");
  return make_pair(2.0 / 3.0, 1.0 / 3.0, eps, q, HardFamily::const_q);
}

double entropy_gap(const HardInstance& inst) {
  return tsallis_exact_dist(inst.p_minus, inst.q) -
         tsallis_exact_dist(inst.p_plus, inst.q);
}

double entropy_gap_binomial_sum(const HardInstance& inst) {
  const auto [a, b] = base_point(inst);
  const int q = inst.q;
  const double d = inst.delta;
  double sum = 0.0;
  for (int j = 0; 2 * j + 1 <= q; ++j) {
    sum += binom(q, 2 * j + 1) *
           (std::pow(a, q - 2 * j - 1) - std::pow(b, q - 2 * j - 1)) *
           std::pow(d, 2 * j + 1);
  }
  return 2.0 * sum / (q - 1);
}

double gap_lower_witness(const HardInstance& inst) {
  require(inst.q > 2, "gap_lower_witness: requires q > 2");
  require(inst.family == HardFamily::large_q,
          "gap_lower_witness: defined for the large-q family");
  const int q = inst.q;
  const double one_m = 1.0 - 1.0 / q;
  return 2.0 * (std::pow(one_m, q) - one_m * std::pow(1.0 / q, q - 1)) *
         inst.delta;
}

HellingerWitness hellinger_upper_witness(const HardInstance& inst) {
  require(inst.family == HardFamily::large_q,
          "hellinger_upper_witness: defined for the large-q family");
  HellingerWitness w;
  w.exact = hellinger(inst.p_plus, inst.p_minus);
  w.bound = inst.q * inst.delta / std::sqrt(static_cast<double>(inst.q) - 1.0);
  return w;
}

double query_lower_value(const HardInstance& inst) {
  const double d = hellinger(inst.p_plus, inst.p_minus);
  require(d > 0.0, "query_lower_value: distributions must differ");
  return 1.0 / d;
}

std::vector<SandwichRow> degree_sandwich_experiment(const std::vector<int>& q_list,
                                                    double eps) {
  require(eps > 0.0 && eps < 1.0 / (2.0 * std::numbers::e),
          "degree sandwich: eps must be in (0, 1/(2e)) for the R-valued bound");
  std::vector<SandwichRow> rows;
  rows.reserve(q_list.size());
  for (const int q : q_list) {
    SandwichRow row;
    row.q = q;
    row.eps = eps;
    row.floor_real = sv14_lower_bound(q, 2.0 * eps);
    row.floor_ceil = static_cast<int>(std::ceil(row.floor_real));
    const auto [poly, cert] = truncate_sv14(q, eps);
    row.truncation = cert.degree;
    const MinimaxResult mm = minimax_degree(q, eps, 0, row.truncation);
    require(mm.found, "degree sandwich: minimax search failed below truncation");
    row.minimax = mm.degree;
    row.minimax_error = mm.best_error;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qlab

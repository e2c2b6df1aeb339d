#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlab/circuits.hpp"

namespace qlab {

// Error budget of the QSVT estimator: the estimate deviates from S_q(rho) by
// at most (eps_qsvt + eps_poly + 2 eps_qae) / (q-1) with probability >= 2/3.
struct BudgetSplit {
  double eps_poly = 0.0;
  double eps_qsvt = 0.0;
  double eps_qae = 0.0;
};

// The equal three-way split eps_qsvt = eps_poly = eps_qae = (q-1) eps / 4.
// Requires q >= 2 and eps in (0, 1/q].
BudgetSplit default_split(int q, double eps);

// eps_qsvt = 0, eps_poly = t (q-1) eps, eps_qae = (1-t)(q-1) eps / 2.
BudgetSplit nonuniform_split(int q, double eps, double t);

// (eps_qsvt + eps_poly + 2 eps_qae) / (q-1).
double predicted_error_bound(const BudgetSplit& split, int q);

enum class Method { qsvt, shift, nonuniform_minimax };

std::string method_name(Method m);

struct EstimateResult {
  double estimate = 0.0;
  double target_eps = 0.0;
  int q = 0;
  BudgetSplit split;
  QueryLedger ledger;  // queries charged by this trial
  std::uint64_t seed = 0;
  Method method = Method::qsvt;
  double gamma_estimate = 0.0;
  double gamma_exact = 0.0;
  int qae_grid_m = 0;
};

// Full estimator stack prepared once per (oracle, q, split); Monte-Carlo
// trials reuse it. `target` carries the Hadamard-test circuit matrix only when
// with_circuit is set (full-circuit QAE); the analytic sampler needs just the
// exact amplitude gamma = (1 + Re tr(A rho)) / 2.
struct QsvtPipeline {
  int q = 0;
  BudgetSplit split;
  Method method = Method::qsvt;
  StatePrepOracle oracle;
  BlockEncoding rho_encoding;
  BlockEncoding poly_encoding;
  ChebyshevPoly poly;
  double poly_sup_error = 0.0;  // measured grid certificate
  MarkedUnitary target;
  std::uint64_t cost_per_v_use = 0;  // 2 deg(p) + 1
};

QsvtPipeline build_qsvt_pipeline(const StatePrepOracle& oracle, int q,
                                 const BudgetSplit& split, Method backend,
                                 bool with_circuit);

// One seeded QAE trial on a prepared pipeline; charges the oracle ledger.
EstimateResult run_qsvt_trial(const QsvtPipeline& pipe, double target_eps,
                              std::uint64_t seed, QaeMode mode);

// The whole pipeline (encode, transform, read out, estimate) in one call.
EstimateResult estimate_tsallis_qsvt(const StatePrepOracle& oracle, int q,
                                     double eps, const BudgetSplit& split,
                                     std::uint64_t seed,
                                     QaeMode mode = QaeMode::analytic_sampler,
                                     Method backend = Method::qsvt);

// Folklore Shift-test estimator: QAE on U = W * O^(ox q) targeting Pr[x=0]
// to additive (q-1) eps / 2, mapped back via 2 (1 - p~) / (q-1).
EstimateResult estimate_tsallis_shift(const StatePrepOracle& oracle, int q,
                                      double eps, std::uint64_t seed,
                                      QaeMode mode = QaeMode::analytic_sampler);

// QAE bypassed: plug the exact gamma into Step 6. Deterministic; error is
// bounded by (eps_qsvt + eps_poly) / (q-1).
double deterministic_qsvt_estimate(const QsvtPipeline& pipe);

struct SweepRow {
  Method method = Method::qsvt;
  int q = 0;
  double eps = 0.0;
  double mean_queries = 0.0;
  double success_rate = 0.0;
  double wall_time_s = 0.0;
};

struct SweepConfig {
  std::vector<int> q_list;
  std::vector<double> eps_list;  // size 1 (broadcast) or paired with q_list
  int trials = 100;
  std::uint64_t seed = 1;
  bool timing = false;  // wall_time_s stays 0 unless set (CSV determinism)
};

// Both estimators on every (q, eps) configuration against the given state;
// ledger counts are deterministic, success rates are seeded Monte-Carlo over
// the analytic QAE sampler.
std::vector<SweepRow> sweep_query_scaling(const DensityMatrix& rho,
                                          const SweepConfig& config);

}  // namespace qlab

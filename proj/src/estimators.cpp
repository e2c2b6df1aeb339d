#include "qlab/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qlab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Monomial approximant for x^(q-1) per backend. The minimax backend takes the
// best polynomial at eps_poly/2 and rescales by (1 - eps_poly/2) so the QSVT
// boundedness condition |p| <= 1 holds while the error stays within eps_poly.
ChebyshevPoly step2_polynomial(int q, double eps_poly, Method backend) {
  const int power = q - 1;
  if (backend != Method::nonuniform_minimax) {
    return truncate_sv14(power, eps_poly).first;
  }
  const double half = eps_poly / 2.0;
  const int d_hi = std::min(sv14_truncation_degree(power, half), power);
  MinimaxResult best = minimax_degree(power, half, 0, d_hi);
  require(best.found, "nonuniform-minimax: no degree achieves eps_poly/2");
  ChebyshevPoly projected = parity_project(
      best.poly, power % 2 == 0 ? Parity::even : Parity::odd);
  return rescale_bounded(projected, power, half);
}

}  // namespace

BudgetSplit default_split(int q, double eps) {
  require(q >= 2, "default_split: q must be >= 2");
  require(eps > 0.0 && eps <= 1.0 / q,
          "default_split: eps must be in (0, 1/q]; the estimator theorem "
          "requires it (S_q ranges over [0, 1/(q-1)])");
  const double component = (q - 1) * eps / 4.0;
  return BudgetSplit{component, component, component};
}

BudgetSplit nonuniform_split(int q, double eps, double t) {
  require(q >= 2, "nonuniform_split: q must be >= 2");
  require(eps > 0.0 && eps <= 1.0 / q, "nonuniform_split: eps must be in (0, 1/q]");
  require(t > 0.0 && t < 1.0, "nonuniform_split: t must be in (0, 1)");
  return BudgetSplit{t * (q - 1) * eps, 0.0, (1.0 - t) * (q - 1) * eps / 2.0};
}

double predicted_error_bound(const BudgetSplit& split, int q) {
  require(q >= 2, "predicted_error_bound: q must be >= 2");
  return (split.eps_qsvt + split.eps_poly + 2.0 * split.eps_qae) / (q - 1);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::qsvt: return "qsvt";
    case Method::shift: return "shift";
    case Method::nonuniform_minimax: return "nonuniform-minimax";
  }
  return "?";
}

QsvtPipeline build_qsvt_pipeline(const StatePrepOracle& oracle, int q,
                                 const BudgetSplit& split, Method backend,
                                 bool with_circuit) {
  require(q >= 2, "qsvt pipeline: q must be >= 2");
  QsvtPipeline pipe;
  pipe.q = q;
  pipe.split = split;
  pipe.method = backend;
  pipe.oracle = oracle;
  pipe.rho_encoding = density_block_encoding(oracle);
  pipe.poly = step2_polynomial(q, split.eps_poly, backend);
  pipe.poly_sup_error = sup_error_vs_monomial(pipe.poly, q - 1, 10000);
  require(pipe.poly_sup_error <= split.eps_poly + 1e-12,
          "qsvt pipeline: polynomial certificate failed");
  pipe.poly_encoding = qsvt_apply(pipe.rho_encoding, pipe.poly);
  pipe.cost_per_v_use = pipe.poly_encoding.ledger_cost + 1;

  if (with_circuit) {
    pipe.target = build_hadamard_test_unitary(oracle, pipe.poly_encoding);
  } else {
    const Matrix block = extract_block(pipe.poly_encoding);
    const DensityMatrix rho = oracle.prepared_density();
    const double gamma =
        (1.0 + (block * rho.matrix()).trace().real()) / 2.0;
    pipe.target = marked_from_amplitude(std::clamp(gamma, 0.0, 1.0),
                                        pipe.cost_per_v_use);
  }
  return pipe;
}

EstimateResult run_qsvt_trial(const QsvtPipeline& pipe, double target_eps,
                              std::uint64_t seed, QaeMode mode) {
  const QAEResult qae =
      amplitude_estimate(pipe.target, pipe.split.eps_qae, seed, mode, 1);

  EstimateResult res;
  res.method = pipe.method;
  res.q = pipe.q;
  res.target_eps = target_eps;
  res.split = pipe.split;
  res.seed = seed;
  res.qae_grid_m = qae.grid_m;
  res.gamma_estimate = qae.estimate;
  res.gamma_exact = pipe.target.true_amplitude;
  res.estimate = 2.0 * (1.0 - qae.estimate) / (pipe.q - 1);

  // One O per Hadamard-test use plus the QSVT stack, which runs inside the
  // controlled block: M uses of V at 2 deg(p) + 1 queries each. The trial
  // ledger is local; callers aggregate into the oracle ledger after the run
  // (trials may execute in parallel).
  const std::uint64_t m = static_cast<std::uint64_t>(qae.grid_m);
  const std::uint64_t deg = static_cast<std::uint64_t>(pipe.poly.degree());
  res.ledger.charge_forward(m);
  res.ledger.charge_controlled(2 * deg * m);
  return res;
}

EstimateResult estimate_tsallis_qsvt(const StatePrepOracle& oracle, int q,
                                     double eps, const BudgetSplit& split,
                                     std::uint64_t seed, QaeMode mode,
                                     Method backend) {
  const QsvtPipeline pipe = build_qsvt_pipeline(oracle, q, split, backend,
                                                mode == QaeMode::full_circuit);
  return run_qsvt_trial(pipe, eps, seed, mode);
}

EstimateResult estimate_tsallis_shift(const StatePrepOracle& oracle, int q,
                                      double eps, std::uint64_t seed,
                                      QaeMode mode) {
  require(q >= 2, "shift estimator: q must be >= 2");
  require(eps > 0.0, "shift estimator: eps must be positive");
  const double eps_p = (q - 1) * eps / 2.0;  // Pr[x=0] to additive Theta(q eps)

  MarkedUnitary target;
  if (mode == QaeMode::full_circuit) {
    target = build_shift_test_unitary(oracle, q);
  } else {
    const DensityMatrix rho = oracle.prepared_density();
    target = marked_from_amplitude((1.0 + trace_power(rho, q)) / 2.0,
                                   static_cast<std::uint64_t>(q));
  }
  const QAEResult qae = amplitude_estimate(target, eps_p, seed, mode, 1);

  EstimateResult res;
  res.method = Method::shift;
  res.q = q;
  res.target_eps = eps;
  res.seed = seed;
  res.qae_grid_m = qae.grid_m;
  res.gamma_estimate = qae.estimate;
  res.gamma_exact = target.true_amplitude;
  res.estimate = 2.0 * (1.0 - qae.estimate) / (q - 1);
  res.ledger.charge_forward(static_cast<std::uint64_t>(q) * qae.grid_m);
  return res;
}

double deterministic_qsvt_estimate(const QsvtPipeline& pipe) {
  return 2.0 * (1.0 - pipe.target.true_amplitude) / (pipe.q - 1);
}

std::vector<SweepRow> sweep_query_scaling(const DensityMatrix& rho,
                                          const SweepConfig& config) {
  require(!config.q_list.empty(), "sweep: q_list must not be empty");
  require(config.eps_list.size() == 1 ||
              config.eps_list.size() == config.q_list.size(),
          "sweep: eps_list must have size 1 or match q_list");
  require(config.trials >= 1, "sweep: trials must be >= 1");

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < config.q_list.size(); ++i) {
    const int q = config.q_list[i];
    const double eps =
        config.eps_list.size() == 1 ? config.eps_list[0] : config.eps_list[i];
    const double exact = tsallis_exact(rho, q);
    const StatePrepOracle oracle =
        purify(rho, config.seed ^ (0x5157ULL + 31ULL * q));

    for (const Method method : {Method::qsvt, Method::shift}) {
      const auto t0 = std::chrono::steady_clock::now();
      double queries_sum = 0.0;
      int successes = 0;
      QsvtPipeline pipe;
      if (method == Method::qsvt)
        pipe = build_qsvt_pipeline(oracle, q, default_split(q, eps),
                                   Method::qsvt, false);
      for (int t = 0; t < config.trials; ++t) {
        const std::uint64_t trial_seed =
            Rng::derive(config.seed, 7919ULL * q + t).next_u64();
        const EstimateResult r =
            method == Method::qsvt
                ? run_qsvt_trial(pipe, eps, trial_seed, QaeMode::analytic_sampler)
                : estimate_tsallis_shift(oracle, q, eps, trial_seed,
                                         QaeMode::analytic_sampler);
        queries_sum += static_cast<double>(r.ledger.total());
        if (std::abs(r.estimate - exact) <= eps) ++successes;
      }
      const auto t1 = std::chrono::steady_clock::now();
      SweepRow row;
      row.method = method;
      row.q = q;
      row.eps = eps;
      row.mean_queries = queries_sum / config.trials;
      row.success_rate = static_cast<double>(successes) / config.trials;
      row.wall_time_s =
          config.timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace qlab

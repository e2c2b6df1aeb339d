#include "qlab/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "qlab/estimators.hpp"
#include "qlab/hardness.hpp"
#include "qlab/io.hpp"
#include "qlab/rng.hpp"

namespace qlab {

namespace {

// Accepts plain reals and fractions "a/b".
double parse_real(const std::string& s, const std::string& key) {
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw std::invalid_argument("zero denominator");
      return num / den;
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': cannot parse real '" + s + "'");
  }
}

long parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': cannot parse integer '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "3..8" expands to 3,4,...,8; mixes with comma lists.
std::vector<int> parse_int_list(const std::string& s, const std::string& key) {
  std::vector<int> out;
  for (const std::string& tok : split(s, ',')) {
    const auto dots = tok.find("..");
    if (dots != std::string::npos) {
      const long lo = parse_int(tok.substr(0, dots), key);
      const long hi = parse_int(tok.substr(dots + 2), key);
      if (lo > hi) throw ConfigError("config: key '" + key + "': empty range '" + tok + "'");
      for (long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    } else {
      out.push_back(static_cast<int>(parse_int(tok, key)));
    }
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_real(tok, key));
  return out;
}

const std::set<std::string> kCommands = {"poly", "estimate", "sweep", "hardness",
                                         "degree"};

const std::map<std::string, std::set<std::string>> kAllowedKeys = {
    {"poly", {"q", "eps", "grid", "out", "config"}},
    {"estimate",
     {"q", "eps", "rho", "trials", "seed", "method", "mode", "t", "out",
      "histogram", "config"}},
    {"sweep",
     {"q", "eps", "eps-rule", "rho", "trials", "seed", "timing", "plot", "out",
      "config"}},
    {"hardness",
     {"q", "delta", "delta-rule", "eps", "family", "distinguish", "trials",
      "seed", "method", "out", "config"}},
    {"degree", {"q", "eps", "plot", "out", "config"}},
};

const std::set<std::string> kBoolKeys = {"plot", "timing", "distinguish"};

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file line " + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError("config file line " + std::to_string(lineno) +
                        ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace

DensityMatrix parse_density_spec(const std::string& spec) {
  if (spec == "pure") {
    Vector psi(2);
    psi << 1.0, 0.0;
    return DensityMatrix::pure(psi);
  }
  const std::vector<std::string> parts = split(spec, ':');
  if (parts[0] == "maxmixed" && parts.size() == 2) {
    return DensityMatrix::maximally_mixed(
        static_cast<int>(parse_int(parts[1], "rho")));
  }
  if (parts[0] == "diag" && parts.size() == 2) {
    const std::vector<double> vals = parse_real_list(parts[1], "rho");
    RealVector p(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) p[static_cast<Eigen::Index>(i)] = vals[i];
    return DensityMatrix::diagonal(Distribution(p));
  }
  if (parts[0] == "random" && parts.size() == 3) {
    return DensityMatrix::random(
        static_cast<int>(parse_int(parts[1], "rho")),
        static_cast<std::uint64_t>(parse_int(parts[2], "rho")));
  }
  throw ConfigError(
      "config: key 'rho': unrecognized density literal '" + spec +
      "' (expected pure | maxmixed:n | diag:a,b,... | random:n:seed)");
}

ExperimentConfig parse_config(const std::vector<std::string>& args,
                              std::vector<std::string>* warnings) {
  if (args.empty())
    throw ConfigError(
        "config: missing command (poly | estimate | sweep | hardness | degree)");
  const std::string cmd = args[0];
  if (!kCommands.count(cmd))
    throw ConfigError("config: unknown command '" + cmd + "'");
  const std::set<std::string>& allowed = kAllowedKeys.at(cmd);

  // flags first, then config file as defaults underneath
  std::map<std::string, std::string> flag_kv;
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string key = args[i];
    if (key.rfind("--", 0) != 0)
      throw ConfigError("config: expected --key, got '" + key + "'");
    key = key.substr(2);
    if (!allowed.count(key))
      throw ConfigError("config: unknown key '" + key + "' for command '" + cmd + "'");
    std::string value = "true";
    if (!kBoolKeys.count(key)) {
      if (i + 1 >= args.size())
        throw ConfigError("config: key '" + key + "' is missing a value");
      value = args[++i];
    } else if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
      value = args[++i];
    }
    if (key == "config")
      config_path = value;
    else
      flag_kv[key] = value;
  }

  std::map<std::string, std::string> kv;
  if (!config_path.empty()) {
    for (const auto& [k, v] : load_config_file(config_path)) {
      if (!allowed.count(k))
        throw ConfigError("config: unknown key '" + k + "' for command '" + cmd + "'");
      kv[k] = v;
    }
  }
  for (const auto& [k, v] : flag_kv) {
    if (kv.count(k) && warnings)
      warnings->push_back("config: flag --" + k + "=" + v +
                          " overrides config-file value '" + kv[k] + "'");
    kv[k] = v;
  }

  ExperimentConfig cfg;
  cfg.command = cmd == "poly"       ? Command::poly
                : cmd == "estimate" ? Command::estimate
                : cmd == "sweep"    ? Command::sweep
                : cmd == "hardness" ? Command::hardness
                                    : Command::degree;
  for (const auto& [k, v] : kv) {
    if (k == "q") cfg.q_list = parse_int_list(v, k);
    else if (k == "eps") cfg.eps_list = parse_real_list(v, k);
    else if (k == "eps-rule") cfg.eps_rule = v;
    else if (k == "delta") cfg.delta_list = parse_real_list(v, k);
    else if (k == "delta-rule") cfg.delta_rule = v;
    else if (k == "trials") cfg.trials = static_cast<int>(parse_int(v, k));
    else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(v, k));
    else if (k == "method") cfg.method = v;
    else if (k == "rho") cfg.rho_spec = v;
    else if (k == "mode") cfg.mode = v;
    else if (k == "family") cfg.family = v;
    else if (k == "t") cfg.t_param = parse_real(v, k);
    else if (k == "grid") cfg.grid_size = static_cast<int>(parse_int(v, k));
    else if (k == "out") cfg.out_path = v;
    else if (k == "histogram") cfg.histogram_path = v;
    else if (k == "plot") cfg.plot = (v == "true" || v == "1");
    else if (k == "timing") cfg.timing = (v == "true" || v == "1");
    else if (k == "distinguish") cfg.distinguish = (v == "true" || v == "1");
  }

  // range validation before any computation
  if (cfg.q_list.empty())
    throw ConfigError("config: key 'q' is required for command '" + cmd + "'");
  for (int q : cfg.q_list)
    if (q < 1) throw ConfigError("config: key 'q': values must be >= 1");
  for (double e : cfg.eps_list)
    if (!(e > 0.0) || !(e < 1.0))
      throw ConfigError("config: key 'eps': values must lie in (0, 1)");
  for (double d : cfg.delta_list)
    if (!(d > 0.0)) throw ConfigError("config: key 'delta': values must be > 0");
  if (cfg.trials < 1) throw ConfigError("config: key 'trials' must be >= 1");
  if (cfg.grid_size < 1001)
    throw ConfigError("config: key 'grid' must be >= 1001");
  if (cfg.method != "qsvt" && cfg.method != "shift" &&
      cfg.method != "nonuniform-minimax")
    throw ConfigError("config: key 'method': unknown method '" + cfg.method + "'");
  if (cfg.mode != "analytic" && cfg.mode != "full-circuit")
    throw ConfigError("config: key 'mode': expected analytic | full-circuit");
  if (cfg.family != "large-q" && cfg.family != "const-q")
    throw ConfigError("config: key 'family': expected large-q | const-q");
  if (!cfg.eps_rule.empty() && cfg.eps_rule != "inv100q")
    throw ConfigError("config: key 'eps-rule': only 'inv100q' is supported");
  if (!cfg.delta_rule.empty())
    for (const std::string& tok : split(cfg.delta_rule, ','))
      if (tok != "half" && tok != "quarter")
        throw ConfigError("config: key 'delta-rule': unknown token '" + tok + "'");
  if (cfg.command == Command::estimate) {
    if (cfg.eps_list.size() != 1)
      throw ConfigError("config: command 'estimate' needs exactly one eps");
    if (cfg.q_list.size() != 1)
      throw ConfigError("config: command 'estimate' needs exactly one q");
    if (cfg.rho_spec.empty())
      throw ConfigError("config: key 'rho' is required for command 'estimate'");
  }
  if (cfg.command == Command::degree && cfg.eps_list.size() != 1)
    throw ConfigError("config: command 'degree' needs exactly one eps");
  if (cfg.command == Command::poly && cfg.eps_list.empty())
    throw ConfigError("config: key 'eps' is required for command 'poly'");
  return cfg;
}

namespace {

void emit(const CsvTable& table, const ExperimentConfig& cfg) {
  if (cfg.out_path.empty())
    std::cout << table.to_string();
  else
    table.write(cfg.out_path);
}

int run_poly(const ExperimentConfig& cfg) {
  CsvTable table({"q", "eps", "degree", "sup_error", "max_abs", "grid_size"});
  for (int q : cfg.q_list)
    for (double eps : cfg.eps_list) {
      const auto [poly, cert] = truncate_sv14(q, eps, cfg.grid_size);
      table.add_row({std::to_string(cert.target_q), format_float(cert.epsilon),
                     std::to_string(cert.degree), format_float(cert.sup_error),
                     format_float(cert.max_abs), std::to_string(cert.grid_size)});
    }
  emit(table, cfg);
  return 0;
}

int run_estimate(const ExperimentConfig& cfg) {
  const DensityMatrix rho = parse_density_spec(cfg.rho_spec);
  const int q = cfg.q_list[0];
  const double eps = cfg.eps_list[0];
  const double exact = tsallis_exact(rho, q);
  const StatePrepOracle oracle = purify(rho, cfg.seed);
  const QaeMode mode = cfg.mode == "analytic" ? QaeMode::analytic_sampler
                                              : QaeMode::full_circuit;

  std::vector<EstimateResult> results(static_cast<std::size_t>(cfg.trials));
  MarkedUnitary qae_target;
  double qae_eps = 0.0;
  if (cfg.method == "shift") {
    qae_target = mode == QaeMode::full_circuit
                     ? build_shift_test_unitary(oracle, q)
                     : marked_from_amplitude((1.0 + trace_power(rho, q)) / 2.0,
                                             static_cast<std::uint64_t>(q));
    qae_eps = (q - 1) * eps / 2.0;
    parallel_for(results.size(), [&](std::size_t t) {
      const std::uint64_t s = Rng::derive(cfg.seed, t).next_u64();
      results[t] = estimate_tsallis_shift(oracle, q, eps, s, mode);
    });
  } else {
    const Method backend =
        cfg.method == "qsvt" ? Method::qsvt : Method::nonuniform_minimax;
    const BudgetSplit split = backend == Method::qsvt
                                  ? default_split(q, eps)
                                  : nonuniform_split(q, eps, cfg.t_param);
    const QsvtPipeline pipe = build_qsvt_pipeline(
        oracle, q, split, backend, mode == QaeMode::full_circuit);
    qae_target = pipe.target;
    qae_eps = split.eps_qae;
    parallel_for(results.size(), [&](std::size_t t) {
      const std::uint64_t s = Rng::derive(cfg.seed, t).next_u64();
      results[t] = run_qsvt_trial(pipe, eps, s, mode);
    });
  }

  if (!cfg.histogram_path.empty()) {
    const QAEResult shots =
        amplitude_estimate(qae_target, qae_eps, cfg.seed, mode, cfg.trials);
    std::ofstream f(cfg.histogram_path, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot open histogram path " + cfg.histogram_path);
    f << qae_histogram_csv(shots);
  }

  CsvTable table({"method", "q", "eps", "trial", "estimate", "exact", "abs_err",
                  "queries", "success", "seed"});
  for (std::size_t t = 0; t < results.size(); ++t) {
    const EstimateResult& r = results[t];
    const double abs_err = std::abs(r.estimate - exact);
    if (oracle.ledger) {
      oracle.ledger->charge_forward(r.ledger.forward);
      oracle.ledger->charge_inverse(r.ledger.inverse);
      oracle.ledger->charge_controlled(r.ledger.controlled);
    }
    table.add_row({cfg.method, std::to_string(q), format_float(eps),
                   std::to_string(t), format_float(r.estimate),
                   format_float(exact), format_float(abs_err),
                   std::to_string(r.ledger.total()),
                   abs_err <= eps ? "1" : "0", std::to_string(r.seed)});
  }
  emit(table, cfg);
  return 0;
}

int run_sweep(const ExperimentConfig& cfg) {
  const DensityMatrix rho = parse_density_spec(
      cfg.rho_spec.empty() ? "diag:2/3,1/3" : cfg.rho_spec);
  SweepConfig sc;
  sc.q_list = cfg.q_list;
  if (cfg.eps_rule == "inv100q") {
    for (int q : cfg.q_list) sc.eps_list.push_back(1.0 / (100.0 * q));
  } else {
    if (cfg.eps_list.empty())
      throw ConfigError("config: command 'sweep' needs eps or eps-rule");
    sc.eps_list = cfg.eps_list;
  }
  sc.trials = cfg.trials;
  sc.seed = cfg.seed;
  sc.timing = cfg.timing;

  const std::vector<SweepRow> rows = sweep_query_scaling(rho, sc);
  CsvTable table(
      {"method", "q", "eps", "mean_queries", "success_rate", "wall_time_s"});
  for (const SweepRow& r : rows)
    table.add_row({method_name(r.method), std::to_string(r.q), format_float(r.eps),
                   format_float(r.mean_queries), format_float(r.success_rate),
                   format_float(r.wall_time_s)});
  emit(table, cfg);

  if (cfg.plot && !cfg.out_path.empty()) {
    PlotSeries qsvt{"qsvt", "#1f77b4", {}}, shift{"shift", "#d62728", {}};
    for (const SweepRow& r : rows)
      (r.method == Method::qsvt ? qsvt : shift)
          .points.emplace_back(r.q, r.mean_queries);
    write_svg_scatter(cfg.out_path + ".svg", "oracle queries vs q", "q",
                      "queries", {qsvt, shift}, true, true);
  }
  return 0;
}

int run_hardness(const ExperimentConfig& cfg) {
  if (cfg.family == "const-q") {
    if (cfg.eps_list.empty())
      throw ConfigError("config: const-q family needs eps values");
    CsvTable table({"family", "q", "eps", "gap", "gap_binomial", "hellinger",
                    "gap_over_eps", "hellinger_over_eps"});
    for (int q : cfg.q_list)
      for (double eps : cfg.eps_list) {
        const HardInstance inst = make_hard_instance_constq(q, eps);
        const double gap = entropy_gap(inst);
        const double hel = hellinger(inst.p_plus, inst.p_minus);
        table.add_row({"const-q", std::to_string(q), format_float(eps),
                       format_float(gap),
                       format_float(entropy_gap_binomial_sum(inst)),
                       format_float(hel), format_float(gap / eps),
                       format_float(hel / eps)});
      }
    emit(table, cfg);
    return 0;
  }

  std::vector<double> deltas_of_q;  // rule tokens applied per q
  std::vector<std::string> rule_tokens;
  if (!cfg.delta_rule.empty()) {
    std::istringstream ss(cfg.delta_rule);
    std::string tok;
    while (std::getline(ss, tok, ',')) rule_tokens.push_back(tok);
  } else if (cfg.delta_list.empty()) {
    rule_tokens = {"half", "quarter"};
  }

  if (cfg.distinguish) {
    // Empirical distinguisher: estimate H_q, answer p+ iff the estimate is
    // below H_q(p+) + eps.
    CsvTable table({"family", "q", "delta", "eps", "trials", "correct_rate"});
    for (int q : cfg.q_list) {
      const double delta =
          cfg.delta_list.empty() ? 1.0 / (2.0 * q) : cfg.delta_list[0];
      const HardInstance inst = make_hard_instance_largeq(q, delta);
      const double gap = entropy_gap(inst);
      const double eps = gap / 2.5;
      const double threshold = tsallis_exact_dist(inst.p_plus, q) + eps;
      int correct = 0;
      for (int t = 0; t < cfg.trials; ++t) {
        const bool use_plus = (t % 2 == 0);
        const Distribution& p = use_plus ? inst.p_plus : inst.p_minus;
        const StatePrepOracle oracle =
            purify(DensityMatrix::diagonal(p), cfg.seed ^ (17ULL * q));
        const std::uint64_t s = Rng::derive(cfg.seed, 31ULL * q + t).next_u64();
        const EstimateResult r =
            cfg.method == "shift"
                ? estimate_tsallis_shift(oracle, q, eps, s)
                : estimate_tsallis_qsvt(oracle, q, eps, default_split(q, eps), s);
        const bool answered_plus = r.estimate < threshold;
        if (answered_plus == use_plus) ++correct;
      }
      table.add_row({"large-q", std::to_string(q), format_float(delta),
                     format_float(eps), std::to_string(cfg.trials),
                     format_float(static_cast<double>(correct) / cfg.trials)});
    }
    emit(table, cfg);
    return 0;
  }

  CsvTable table({"family", "q", "delta", "gap", "gap_binomial", "gap_witness",
                  "hellinger", "hellinger_bound", "query_lower"});
  for (int q : cfg.q_list) {
    std::vector<double> deltas = cfg.delta_list;
    for (const std::string& tok : rule_tokens)
      deltas.push_back(tok == "half" ? 1.0 / (2.0 * q) : 1.0 / (4.0 * q));
    for (double delta : deltas) {
      const HardInstance inst = make_hard_instance_largeq(q, delta);
      const HellingerWitness hw = hellinger_upper_witness(inst);
      table.add_row({"large-q", std::to_string(q), format_float(delta),
                     format_float(entropy_gap(inst)),
                     format_float(entropy_gap_binomial_sum(inst)),
                     format_float(gap_lower_witness(inst)),
                     format_float(hw.exact), format_float(hw.bound),
                     format_float(query_lower_value(inst))});
    }
  }
  emit(table, cfg);
  return 0;
}

int run_degree(const ExperimentConfig& cfg) {
  const double eps = cfg.eps_list[0];
  const std::vector<SandwichRow> rows = degree_sandwich_experiment(cfg.q_list, eps);
  CsvTable table({"q", "eps", "floor", "floor_ceil", "minimax", "minimax_error",
                  "truncation"});
  for (const SandwichRow& r : rows)
    table.add_row({std::to_string(r.q), format_float(r.eps),
                   format_float(r.floor_real), std::to_string(r.floor_ceil),
                   std::to_string(r.minimax), format_float(r.minimax_error),
                   std::to_string(r.truncation)});
  emit(table, cfg);

  if (cfg.plot && !cfg.out_path.empty()) {
    PlotSeries fl{"floor", "#2ca02c", {}}, mm{"minimax", "#1f77b4", {}},
        tr{"truncation", "#d62728", {}};
    for (const SandwichRow& r : rows) {
      fl.points.emplace_back(r.q, r.floor_real);
      mm.points.emplace_back(r.q, r.minimax);
      tr.points.emplace_back(r.q, r.truncation);
    }
    write_svg_scatter(cfg.out_path + ".svg", "degree sandwich vs q", "q",
                      "degree", {fl, mm, tr}, false, false);
  }
  return 0;
}

}  // namespace

int run(const ExperimentConfig& cfg) {
  switch (cfg.command) {
    case Command::poly: return run_poly(cfg);
    case Command::estimate: return run_estimate(cfg);
    case Command::sweep: return run_sweep(cfg);
    case Command::hardness: return run_hardness(cfg);
    case Command::degree: return run_degree(cfg);
  }
  return 2;
}

}  // namespace qlab

// Batch experiment driver; see README for the command reference.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "qlab/driver.hpp"

namespace {

constexpr const char* kUsage = R"(usage: tsallis_qlab <command> [--key value ...]

commands:
  poly      --q <list> --eps <list> [--grid N] [--out FILE]
  estimate  --q Q --eps E --rho SPEC --trials T --seed S
            [--method qsvt|shift|nonuniform-minimax] [--mode analytic|full-circuit]
            [--t T] [--out FILE]
  sweep     --q <list> (--eps <list> | --eps-rule inv100q) [--rho SPEC]
            [--trials T] [--seed S] [--timing] [--plot] [--out FILE]
  hardness  --q <list|a..b> [--delta-rule half,quarter | --delta <list>]
            [--family large-q|const-q] [--eps <list>] [--distinguish]
            [--trials T] [--seed S] [--method M] [--out FILE]
  degree    --q <list> --eps E [--plot] [--out FILE]

Any command accepts --config FILE with key=value lines; flags override the
file (a warning is printed). Density literals: pure | maxmixed:n |
diag:a,b,... | random:n:seed. TSALLIS_QLAB_THREADS caps trial parallelism.
)";

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::cout << kUsage;
    return args.empty() ? 2 : 0;
  }
  try {
    std::vector<std::string> warnings;
    const qlab::ExperimentConfig cfg = qlab::parse_config(args, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return qlab::run(cfg);
  } catch (const qlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

#include "fedsim/baselines.hpp"

#include <stdexcept>

namespace fedsim::baselines {

namespace {

void require_mode(const cli::ExperimentConfig& cfg, cli::Mode expected, const char* who) {
    if (cfg.mode != expected)
        throw std::invalid_argument(std::string(who) + ": config mode is " +
                                    cli::to_string(cfg.mode) + ", expected " +
                                    cli::to_string(expected));
}

}  // namespace

federation::RunResult run_fedavg(const cli::ExperimentConfig& cfg) {
    require_mode(cfg, cli::Mode::kFedAvg, "run_fedavg");
    return federation::run_homogeneous(cfg);
}

federation::RunResult run_fedprox(const cli::ExperimentConfig& cfg) {
    require_mode(cfg, cli::Mode::kFedProx, "run_fedprox");
    return federation::run_homogeneous(cfg);
}

federation::RunResult run_local_only(const cli::ExperimentConfig& cfg) {
    require_mode(cfg, cli::Mode::kLocalOnly, "run_local_only");
    return federation::run_heterogeneous(cfg);
}

}  // namespace fedsim::baselines

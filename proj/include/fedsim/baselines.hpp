#pragma once

#include "fedsim/config.hpp"
#include "fedsim/federation.hpp"

namespace fedsim::baselines {

// The reference algorithms run through the same round engine as the
// alignment protocol with the alignment term absent (config validation pins
// eta0 = 0 for baseline modes), so the documented reductions hold
// bit-exactly by construction.

// Weighted layer-wise averaging, no representation alignment.
federation::RunResult run_fedavg(const cli::ExperimentConfig& cfg);

// FedAvg plus the quadratic pull (mu/2) * |W_i - W_global|^2 during local
// steps; mu = 0 degenerates to FedAvg exactly.
federation::RunResult run_fedprox(const cli::ExperimentConfig& cfg);

// Isolated per-client training; honors client_fraction, so with fraction 1
// each client trains rounds * local_epochs epochs with no communication.
federation::RunResult run_local_only(const cli::ExperimentConfig& cfg);

}  // namespace fedsim::baselines

#pragma once

#include <cstdint>
#include <vector>

#include "fedsim/cka.hpp"
#include "fedsim/config.hpp"
#include "fedsim/data.hpp"
#include "fedsim/matrix.hpp"
#include "fedsim/metrics.hpp"
#include "fedsim/nn.hpp"

namespace fedsim::federation {

// One server round's frozen inputs.
struct RoundPlan {
    int t = 0;
    double eta = 0.0;
    Matrix rad;  // empty when the round has no alignment term
    std::vector<std::size_t> selected_clients;
};

struct OptimizerConfig {
    double lr = 0.05;
    double momentum = 0.9;
    std::size_t batch_size = 0;  // 0 = full batch
};

// linear_ramp: eta0 * t / T; constant: eta0
double eta_schedule(double eta0, int t, int total_rounds, cli::ScheduleKind kind);

// L distinct pool rows, without replacement, deterministic per seed.
// The result carries no labels by construction.
Matrix generate_rad(const Matrix& pool, std::size_t l, std::uint64_t seed);

// max(1, round(fraction * n)) unique ids, ascending, deterministic per
// (seed, round)
std::vector<std::size_t> sample_clients(std::size_t n_clients, double fraction,
                                        std::uint64_t seed, int round);

// layer-wise weighted mean with weights n_i / sum(n). Aggregating identical
// params returns them exactly.
nn::ModelParams fedavg_aggregate(const std::vector<nn::ModelParams>& params,
                                 const std::vector<std::size_t>& counts);

// One client's local pass for the shared-architecture protocol: start from
// the incoming global params; when eta > 0 the alignment target is computed
// once from those incoming params and held fixed for all epochs. prox_mu > 0
// adds the quadratic pull mu/2 * |W - W_global|^2 used by the proximal
// baseline. align_gap_out (optional) receives 1 - CKA measured after
// training against the round's target.
nn::ModelParams local_training_homo(const nn::ModelParams& global_params, const Matrix* rad,
                                    double eta, const data::ClientShard& shard, int epochs,
                                    const OptimizerConfig& opt, const cka::KernelSpec& kernel,
                                    std::uint64_t batch_seed, double prox_mu = 0.0,
                                    double* align_gap_out = nullptr);

// Personalized-architecture variant: start from the client's own previous
// params and align against the externally supplied kernel target.
nn::ModelParams local_training_hetero(const nn::ModelParams& own_params,
                                      const cka::KernelMatrix* k_bar, const Matrix* rad,
                                      double eta, const data::ClientShard& shard, int epochs,
                                      const OptimizerConfig& opt, const cka::KernelSpec& kernel,
                                      std::uint64_t batch_seed, double* align_gap_out = nullptr);

// Everything a run needs, derived deterministically from the config: the
// working dataset (after the unlabeled pool is carved out), the pool itself,
// the client shards, and the client weight vector.
struct Problem {
    data::LabeledDataset dataset;
    Matrix rad_pool;
    std::vector<data::ClientShard> shards;
    std::vector<double> weights;
};

Problem prepare_problem(const cli::ExperimentConfig& cfg);

struct EvalResult {
    double accuracy = 0.0;
    double task_loss = 0.0;
};

// argmax accuracy (lowest class index wins ties) and mean cross-entropy
EvalResult evaluate_model(const nn::ModelParams& params, const data::LabeledDataset& ds);

// models.size() == 1: the global model is scored on every shard's test set;
// rows are client_<id>... ascending, then the pooled "global" row, then
// "macro_avg". models.size() == shards.size(): personalized models on their
// own shards, then "macro_avg". round/eta/alignment are left for the caller.
std::vector<cli::MetricsRow> evaluate(const std::vector<nn::ModelParams>& models,
                                      const std::vector<data::ClientShard>& shards);

struct RunResult {
    std::vector<nn::ModelParams> models;  // size 1 (global) or n_clients
    std::vector<cli::MetricsRow> metrics;
    double final_macro_test_accuracy = 0.0;
    double final_global_test_accuracy = 0.0;  // NaN for personalized modes
};

// Round loop for the global-model modes (fedhenn_homo, fedavg, fedprox).
// With eta0 = 0 the alignment machinery is skipped entirely, which makes the
// fedavg reduction bit-exact.
RunResult run_homogeneous(const cli::ExperimentConfig& cfg);

// Round loop for the personalized modes (fedhenn_hetero, local_only). The
// kernel target aggregates ALL clients' kernels each round, not only the
// sampled subset; unselected clients are frozen for the round.
RunResult run_heterogeneous(const cli::ExperimentConfig& cfg);

// Dispatch on cfg.mode.
RunResult run_experiment(const cli::ExperimentConfig& cfg);

}  // namespace fedsim::federation

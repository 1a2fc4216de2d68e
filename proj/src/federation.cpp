#include "fedsim/federation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "fedsim/rng.hpp"

namespace fedsim::federation {

double eta_schedule(double eta0, int t, int total_rounds, cli::ScheduleKind kind) {
    if (eta0 < 0.0) throw std::invalid_argument("eta_schedule: eta0 must be >= 0");
    if (total_rounds < 1) throw std::invalid_argument("eta_schedule: total_rounds must be >= 1");
    if (t < 1 || t > total_rounds)
        throw std::invalid_argument("eta_schedule: round " + std::to_string(t) +
                                    " outside [1, " + std::to_string(total_rounds) + "]");
    switch (kind) {
        case cli::ScheduleKind::kLinearRamp:
            return eta0 * (static_cast<double>(t) / static_cast<double>(total_rounds));
        case cli::ScheduleKind::kConstant:
            return eta0;
    }
    throw std::logic_error("eta_schedule: unknown schedule kind");
}

Matrix generate_rad(const Matrix& pool, std::size_t l, std::uint64_t seed) {
    if (l < 1) throw std::invalid_argument("generate_rad: need at least 1 row");
    if (l > pool.rows)
        throw std::invalid_argument("generate_rad: requested " + std::to_string(l) +
                                    " rows from a pool of " + std::to_string(pool.rows));
    Rng rng(derive_seed(seed, stream::kRad));
    const std::vector<std::size_t> rows = rng.sample_indices(pool.rows, l);
    Matrix rad(l, pool.cols);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < pool.cols; ++j) rad(i, j) = pool(rows[i], j);
    return rad;
}

std::vector<std::size_t> sample_clients(std::size_t n_clients, double fraction,
                                        std::uint64_t seed, int round) {
    if (n_clients < 1) throw std::invalid_argument("sample_clients: n_clients must be >= 1");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("sample_clients: fraction must be in (0,1]");
    const auto want = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(n_clients)));
    const std::size_t count = std::min(std::max<std::size_t>(want, 1), n_clients);
    Rng rng(derive_seed(seed, stream::kSampling, static_cast<std::uint64_t>(round)));
    std::vector<std::size_t> ids = rng.sample_indices(n_clients, count);
    std::sort(ids.begin(), ids.end());
    return ids;
}

nn::ModelParams fedavg_aggregate(const std::vector<nn::ModelParams>& params,
                                 const std::vector<std::size_t>& counts) {
    if (params.empty()) throw std::invalid_argument("fedavg_aggregate: no clients");
    if (params.size() != counts.size())
        throw std::invalid_argument("fedavg_aggregate: " + std::to_string(params.size()) +
                                    " param sets vs " + std::to_string(counts.size()) +
                                    " counts");
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!params[0].same_shape(params[i]))
            throw std::invalid_argument(
                "fedavg_aggregate: client " + std::to_string(i) +
                " has a different architecture (heterogeneous population?)");
        if (counts[i] == 0)
            throw std::invalid_argument("fedavg_aggregate: client " + std::to_string(i) +
                                        " has zero rows");
    }

    // exact conservation when every client returns the same params
    const bool all_equal = std::all_of(params.begin(), params.end(),
                                       [&](const nn::ModelParams& p) { return p == params[0]; });
    if (all_equal) return params[0];

    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(),
                                                             std::size_t{0}));
    nn::ModelParams out = nn::ModelParams::zeros_like(params[0]);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double ni = static_cast<double>(counts[i]);
        for (std::size_t l = 0; l < out.layers.size(); ++l) {
            add_scaled(out.layers[l].weight, params[i].layers[l].weight, ni);
            add_scaled(out.layers[l].bias, params[i].layers[l].bias, ni);
        }
    }
    for (auto& layer : out.layers) {
        for (double& v : layer.weight.data) v /= total;
        for (double& v : layer.bias.data) v /= total;
    }
    return out;
}

namespace {

cka::KernelMatrix representation_kernel(const nn::ModelParams& params, const Matrix& rad,
                                        const cka::KernelSpec& kernel) {
    const Matrix a = nn::forward_representation(params, rad).representation;
    return cka::gram(cka::center_columns(a), kernel);
}

// mu * (w - anchor), accumulated into the task/alignment gradient. The
// difference is formed first: adding mu*w and subtracting mu*anchor
// separately would wipe out the task gradient's low bits for large mu, and
// would not vanish exactly at w == anchor.
void add_prox_gradient(nn::ModelParams& grads, const nn::ModelParams& params,
                       const nn::ModelParams& anchor, double mu) {
    for (std::size_t l = 0; l < grads.layers.size(); ++l) {
        Matrix dw = params.layers[l].weight;
        add_scaled(dw, anchor.layers[l].weight, -1.0);
        add_scaled(grads.layers[l].weight, dw, mu);
        Matrix db = params.layers[l].bias;
        add_scaled(db, anchor.layers[l].bias, -1.0);
        add_scaled(grads.layers[l].bias, db, mu);
    }
}

// The one local-training loop behind both protocol variants and all
// baselines; the eta == 0 / mu == 0 branches skip their terms outright so
// reduced configurations follow bit-identical arithmetic.
nn::ModelParams train_core(nn::ModelParams params, const data::ClientShard& shard, int epochs,
                           double eta, const Matrix* rad, const cka::KernelMatrix* k_target,
                           const OptimizerConfig& opt, const cka::KernelSpec& kernel,
                           double prox_mu, const nn::ModelParams* prox_anchor,
                           std::uint64_t batch_seed) {
    if (epochs < 0) throw std::invalid_argument("local training: epochs must be >= 0");
    if (epochs == 0) return params;
    if (shard.train.size() == 0)
        throw std::invalid_argument("local training: client " + std::to_string(shard.client_id) +
                                    " has an empty train set");
    if (eta > 0.0 && (rad == nullptr || k_target == nullptr))
        throw std::invalid_argument("local training: eta > 0 requires a RAD and a kernel target");

    nn::ModelParams velocity = nn::ModelParams::zeros_like(params);
    Rng batch_rng(derive_seed(batch_seed, stream::kBatch));
    const std::size_t n = shard.train.size();

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    for (int epoch = 0; epoch < epochs; ++epoch) {
        if (opt.batch_size == 0 || opt.batch_size >= n) {
            const nn::LossGrad lg = nn::loss_and_grad(params, shard.train.features,
                                                      shard.train.labels, rad, k_target, eta,
                                                      kernel);
            nn::ModelParams grads = lg.grads;
            if (prox_mu > 0.0) add_prox_gradient(grads, params, *prox_anchor, prox_mu);
            nn::sgd_momentum_step(params, grads, velocity, opt.lr, opt.momentum);
            continue;
        }
        batch_rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += opt.batch_size) {
            const std::size_t stop = std::min(start + opt.batch_size, n);
            Matrix bx(stop - start, shard.train.dim());
            std::vector<int> by(stop - start);
            for (std::size_t i = start; i < stop; ++i) {
                by[i - start] = shard.train.labels[order[i]];
                for (std::size_t j = 0; j < bx.cols; ++j)
                    bx(i - start, j) = shard.train.features(order[i], j);
            }
            const nn::LossGrad lg = nn::loss_and_grad(params, bx, by, rad, k_target, eta, kernel);
            nn::ModelParams grads = lg.grads;
            if (prox_mu > 0.0) add_prox_gradient(grads, params, *prox_anchor, prox_mu);
            nn::sgd_momentum_step(params, grads, velocity, opt.lr, opt.momentum);
        }
    }
    return params;
}

void write_align_gap(double* out, const nn::ModelParams& trained, const Matrix* rad,
                     const cka::KernelMatrix* k_target, double eta,
                     const cka::KernelSpec& kernel) {
    if (out == nullptr) return;
    if (eta <= 0.0) {
        *out = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const cka::KernelMatrix ki = representation_kernel(trained, *rad, kernel);
    *out = 1.0 - cka::cka(ki, *k_target);
}

}  // namespace

nn::ModelParams local_training_homo(const nn::ModelParams& global_params, const Matrix* rad,
                                    double eta, const data::ClientShard& shard, int epochs,
                                    const OptimizerConfig& opt, const cka::KernelSpec& kernel,
                                    std::uint64_t batch_seed, double prox_mu,
                                    double* align_gap_out) {
    if (eta < 0.0) throw std::invalid_argument("local_training_homo: eta must be >= 0");
    if (prox_mu < 0.0) throw std::invalid_argument("local_training_homo: prox_mu must be >= 0");

    // the alignment target comes from the incoming global params, computed
    // once and frozen for every epoch of this round
    cka::KernelMatrix k_global;
    const cka::KernelMatrix* target = nullptr;
    if (eta > 0.0) {
        if (rad == nullptr)
            throw std::invalid_argument("local_training_homo: eta > 0 requires a RAD");
        k_global = representation_kernel(global_params, *rad, kernel);
        target = &k_global;
    }
    nn::ModelParams trained =
        train_core(global_params, shard, epochs, eta, rad, target, opt, kernel, prox_mu,
                   prox_mu > 0.0 ? &global_params : nullptr, batch_seed);
    write_align_gap(align_gap_out, trained, rad, target, eta, kernel);
    return trained;
}

nn::ModelParams local_training_hetero(const nn::ModelParams& own_params,
                                      const cka::KernelMatrix* k_bar, const Matrix* rad,
                                      double eta, const data::ClientShard& shard, int epochs,
                                      const OptimizerConfig& opt, const cka::KernelSpec& kernel,
                                      std::uint64_t batch_seed, double* align_gap_out) {
    if (eta < 0.0) throw std::invalid_argument("local_training_hetero: eta must be >= 0");
    nn::ModelParams trained = train_core(own_params, shard, epochs, eta, rad, k_bar, opt, kernel,
                                         0.0, nullptr, batch_seed);
    write_align_gap(align_gap_out, trained, rad, k_bar, eta, kernel);
    return trained;
}

namespace {

nn::Architecture make_arch(const std::vector<std::size_t>& hidden, std::size_t d_in,
                           std::size_t n_classes, nn::Activation act) {
    nn::Architecture arch;
    arch.activation = act;
    arch.layer_dims.reserve(hidden.size() + 2);
    arch.layer_dims.push_back(d_in);
    arch.layer_dims.insert(arch.layer_dims.end(), hidden.begin(), hidden.end());
    arch.layer_dims.push_back(n_classes);
    arch.validate();
    return arch;
}

}  // namespace

Problem prepare_problem(const cli::ExperimentConfig& cfg) {
    cfg.validate();

    data::LabeledDataset full =
        cfg.dataset == cli::DatasetKind::kSynth
            ? data::synth_gaussian_mixture(cfg.synth_classes, cfg.synth_dim, cfg.synth_per_class,
                                           cfg.synth_sep, cfg.seed)
            : data::load_csv_dataset(cfg.csv_path);
    if (cfg.classes_per_client > full.n_classes)
        throw std::invalid_argument("prepare_problem: classes_per_client " +
                                    std::to_string(cfg.classes_per_client) + " > dataset classes " +
                                    std::to_string(full.n_classes));

    Problem problem;

    // The unlabeled pool is carved out unconditionally (even for runs that
    // never build a RAD) so every mode sees identical client shards.
    if (cfg.rad_source == cli::RadSource::kHeldoutPool) {
        const std::size_t pool_target =
            std::max(2 * cfg.rad_size,
                     static_cast<std::size_t>(std::llround(0.10 * static_cast<double>(full.size()))));
        if (full.size() < pool_target + 2 * cfg.n_clients)
            throw std::invalid_argument(
                "prepare_problem: dataset too small: " + std::to_string(full.size()) +
                " rows cannot host a " + std::to_string(pool_target) + "-row pool plus " +
                std::to_string(cfg.n_clients) + " clients");
        Rng rng(derive_seed(cfg.seed, stream::kPool));
        std::vector<std::size_t> pool_rows = rng.sample_indices(full.size(), pool_target);
        std::sort(pool_rows.begin(), pool_rows.end());
        std::vector<char> in_pool(full.size(), 0);
        for (std::size_t r : pool_rows) in_pool[r] = 1;
        std::vector<std::size_t> rest;
        rest.reserve(full.size() - pool_target);
        for (std::size_t r = 0; r < full.size(); ++r)
            if (!in_pool[r]) rest.push_back(r);

        const data::LabeledDataset pool_ds = data::select_rows(full, pool_rows);
        problem.rad_pool = pool_ds.features;
        problem.dataset = data::select_rows(full, rest);
    } else {
        const std::size_t pool_target = std::max<std::size_t>(2 * cfg.rad_size, 2);
        Rng rng(derive_seed(cfg.seed, stream::kPool));
        problem.rad_pool = Matrix(pool_target, full.dim());
        for (double& v : problem.rad_pool.data) v = rng.next_normal();
        problem.dataset = std::move(full);
    }

    const auto shard_indices =
        data::partition_noniid(problem.dataset, cfg.n_clients, cfg.classes_per_client, cfg.seed);

    problem.shards.reserve(cfg.n_clients);
    for (std::size_t i = 0; i < cfg.n_clients; ++i) {
        if (shard_indices[i].size() < 2)
            throw std::runtime_error("prepare_problem: client " + std::to_string(i) +
                                     " received " + std::to_string(shard_indices[i].size()) +
                                     " rows; cannot split");
        auto [train, test] = data::split_train_test(shard_indices[i], problem.dataset,
                                                    cfg.test_frac,
                                                    derive_seed(cfg.seed, stream::kSplit, i));
        data::ClientShard shard;
        shard.client_id = i;
        shard.train = std::move(train);
        shard.test = std::move(test);
        const std::vector<std::size_t>& hidden =
            cli::mode_is_global_model(cfg.mode) ? cfg.arch_hidden
                                                : cfg.arch_family[i % cfg.arch_family.size()];
        shard.arch = make_arch(hidden, problem.dataset.dim(),
                               static_cast<std::size_t>(problem.dataset.n_classes),
                               cfg.activation);
        problem.shards.push_back(std::move(shard));
    }

    if (cfg.shrink_fraction > 0.0)
        problem.shards = data::shrink_clients(problem.shards, cfg.shrink_fraction, cfg.shrink_to,
                                              cfg.seed);

    if (cfg.client_weights.empty()) {
        problem.weights.assign(cfg.n_clients, 1.0 / static_cast<double>(cfg.n_clients));
    } else {
        problem.weights = cfg.client_weights;
    }
    return problem;
}

EvalResult evaluate_model(const nn::ModelParams& params, const data::LabeledDataset& ds) {
    if (ds.size() == 0) throw std::invalid_argument("evaluate_model: empty test set");
    const Matrix logits = nn::forward(params, ds.features).logits;
    std::size_t correct = 0;
    for (std::size_t r = 0; r < logits.rows; ++r) {
        std::size_t arg = 0;
        for (std::size_t c = 1; c < logits.cols; ++c)
            if (logits(r, c) > logits(r, arg)) arg = c;  // ties keep the lowest index
        if (arg == static_cast<std::size_t>(ds.labels[r])) ++correct;
    }
    return {static_cast<double>(correct) / static_cast<double>(logits.rows),
            nn::task_loss(logits, ds.labels)};
}

std::vector<cli::MetricsRow> evaluate(const std::vector<nn::ModelParams>& models,
                                      const std::vector<data::ClientShard>& shards) {
    if (shards.empty()) throw std::invalid_argument("evaluate: no shards");
    const bool global = models.size() == 1;
    if (!global && models.size() != shards.size())
        throw std::invalid_argument("evaluate: " + std::to_string(models.size()) +
                                    " models for " + std::to_string(shards.size()) + " shards");

    std::vector<cli::MetricsRow> rows;
    double acc_sum = 0.0;
    double loss_sum = 0.0;
    double pooled_correct = 0.0;
    double pooled_loss = 0.0;
    std::size_t pooled_rows = 0;
    for (std::size_t i = 0; i < shards.size(); ++i) {
        const nn::ModelParams& m = global ? models[0] : models[i];
        const EvalResult r = evaluate_model(m, shards[i].test);
        cli::MetricsRow row;
        row.scope = "client_" + std::to_string(shards[i].client_id);
        row.accuracy = r.accuracy;
        row.task_loss = r.task_loss;
        rows.push_back(row);
        acc_sum += r.accuracy;
        loss_sum += r.task_loss;
        const auto n = static_cast<double>(shards[i].test.size());
        pooled_correct += r.accuracy * n;
        pooled_loss += r.task_loss * n;
        pooled_rows += shards[i].test.size();
    }
    if (global) {
        cli::MetricsRow row;
        row.scope = "global";
        row.accuracy = pooled_correct / static_cast<double>(pooled_rows);
        row.task_loss = pooled_loss / static_cast<double>(pooled_rows);
        rows.push_back(row);
    }
    cli::MetricsRow macro;
    macro.scope = "macro_avg";
    macro.accuracy = acc_sum / static_cast<double>(shards.size());
    macro.task_loss = loss_sum / static_cast<double>(shards.size());
    rows.push_back(macro);
    return rows;
}

namespace {

// Run the per-client closures either in order or on one thread each;
// results land in caller-owned slots, so both schedules aggregate in
// ascending client order and agree bit-for-bit.
void run_tasks(std::size_t count, bool parallel, const std::function<void(std::size_t)>& task) {
    if (!parallel || count < 2) {
        for (std::size_t k = 0; k < count; ++k) task(k);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> threads;
    threads.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        threads.emplace_back([&, k] {
            try {
                task(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (std::thread& th : threads) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

void append_round_rows(std::vector<cli::MetricsRow>& metrics,
                       std::vector<cli::MetricsRow> rows, int t, double eta,
                       const std::vector<std::size_t>& selected,
                       const std::vector<double>& gaps) {
    double gap_sum = 0.0;
    std::size_t gap_count = 0;
    for (cli::MetricsRow& row : rows) {
        row.round = t;
        row.eta = eta;
        for (std::size_t k = 0; k < selected.size(); ++k) {
            if (row.scope == "client_" + std::to_string(selected[k]) && !std::isnan(gaps[k])) {
                row.alignment_term = gaps[k];
                gap_sum += gaps[k];
                ++gap_count;
            }
        }
    }
    if (gap_count > 0) {
        for (cli::MetricsRow& row : rows)
            if (row.scope == "macro_avg")
                row.alignment_term = gap_sum / static_cast<double>(gap_count);
    }
    metrics.insert(metrics.end(), rows.begin(), rows.end());
}

void fill_finals(RunResult& result, const std::vector<data::ClientShard>& shards) {
    const std::vector<cli::MetricsRow> rows = evaluate(result.models, shards);
    result.final_global_test_accuracy = std::numeric_limits<double>::quiet_NaN();
    for (const cli::MetricsRow& row : rows) {
        if (row.scope == "macro_avg") result.final_macro_test_accuracy = row.accuracy;
        if (row.scope == "global") result.final_global_test_accuracy = row.accuracy;
    }
}

}  // namespace

RunResult run_homogeneous(const cli::ExperimentConfig& cfg) {
    if (!cli::mode_is_global_model(cfg.mode))
        throw std::invalid_argument("run_homogeneous: mode " + cli::to_string(cfg.mode) +
                                    " is not a global-model mode");
    const Problem problem = prepare_problem(cfg);
    const OptimizerConfig opt{cfg.lr, cfg.momentum, cfg.batch_size};
    const double prox_mu = cfg.mode == cli::Mode::kFedProx ? cfg.fedprox_mu : 0.0;

    nn::ModelParams global = nn::init_params(problem.shards[0].arch, cfg.seed);

    RunResult result;
    for (int t = 1; t <= cfg.rounds; ++t) {
        RoundPlan plan;
        plan.t = t;
        plan.eta = eta_schedule(cfg.eta0, t, cfg.rounds, cfg.eta_schedule);
        plan.selected_clients = sample_clients(cfg.n_clients, cfg.client_fraction, cfg.seed, t);
        if (plan.eta > 0.0)
            plan.rad = generate_rad(problem.rad_pool, cfg.rad_size,
                                    derive_seed(cfg.seed, stream::kRad,
                                                static_cast<std::uint64_t>(t)));
        const Matrix* rad = plan.eta > 0.0 ? &plan.rad : nullptr;

        const std::size_t n_sel = plan.selected_clients.size();
        std::vector<nn::ModelParams> trained(n_sel);
        std::vector<double> gaps(n_sel, std::numeric_limits<double>::quiet_NaN());
        std::vector<std::size_t> counts(n_sel);
        run_tasks(n_sel, cfg.parallel, [&](std::size_t k) {
            const std::size_t i = plan.selected_clients[k];
            trained[k] = local_training_homo(
                global, rad, plan.eta, problem.shards[i], cfg.local_epochs, opt, cfg.kernel,
                derive_seed(cfg.seed, stream::kBatch, static_cast<std::uint64_t>(t), i), prox_mu,
                &gaps[k]);
            counts[k] = problem.shards[i].n_i();
        });
        global = fedavg_aggregate(trained, counts);

        result.models = {global};
        append_round_rows(result.metrics, evaluate(result.models, problem.shards), t, plan.eta,
                          plan.selected_clients, gaps);
    }
    result.models = {global};
    fill_finals(result, problem.shards);
    return result;
}

RunResult run_heterogeneous(const cli::ExperimentConfig& cfg) {
    if (cli::mode_is_global_model(cfg.mode))
        throw std::invalid_argument("run_heterogeneous: mode " + cli::to_string(cfg.mode) +
                                    " is not a personalized mode");
    const Problem problem = prepare_problem(cfg);
    const OptimizerConfig opt{cfg.lr, cfg.momentum, cfg.batch_size};

    std::vector<nn::ModelParams> params;
    params.reserve(cfg.n_clients);
    for (std::size_t i = 0; i < cfg.n_clients; ++i)
        params.push_back(nn::init_params(problem.shards[i].arch,
                                         derive_seed(cfg.seed, stream::kInit, 1 + i)));

    RunResult result;
    for (int t = 1; t <= cfg.rounds; ++t) {
        RoundPlan plan;
        plan.t = t;
        plan.eta = eta_schedule(cfg.eta0, t, cfg.rounds, cfg.eta_schedule);
        plan.selected_clients = sample_clients(cfg.n_clients, cfg.client_fraction, cfg.seed, t);
        if (plan.eta > 0.0)
            plan.rad = generate_rad(problem.rad_pool, cfg.rad_size,
                                    derive_seed(cfg.seed, stream::kRad,
                                                static_cast<std::uint64_t>(t)));
        const Matrix* rad = plan.eta > 0.0 ? &plan.rad : nullptr;

        // K-bar aggregates every client's kernel from its round-start params,
        // selected or not
        cka::KernelMatrix k_bar;
        const cka::KernelMatrix* target = nullptr;
        if (plan.eta > 0.0) {
            std::vector<cka::KernelMatrix> kernels;
            kernels.reserve(cfg.n_clients);
            for (std::size_t j = 0; j < cfg.n_clients; ++j)
                kernels.push_back(representation_kernel(params[j], plan.rad, cfg.kernel));
            k_bar = cka::aggregate_kernels(kernels, problem.weights);
            target = &k_bar;
        }

        const std::size_t n_sel = plan.selected_clients.size();
        std::vector<nn::ModelParams> trained(n_sel);
        std::vector<double> gaps(n_sel, std::numeric_limits<double>::quiet_NaN());
        run_tasks(n_sel, cfg.parallel, [&](std::size_t k) {
            const std::size_t i = plan.selected_clients[k];
            trained[k] = local_training_hetero(
                params[i], target, rad, plan.eta, problem.shards[i], cfg.local_epochs, opt,
                cfg.kernel,
                derive_seed(cfg.seed, stream::kBatch, static_cast<std::uint64_t>(t), i),
                &gaps[k]);
        });
        for (std::size_t k = 0; k < n_sel; ++k)
            params[plan.selected_clients[k]] = std::move(trained[k]);

        result.models = params;
        append_round_rows(result.metrics, evaluate(params, problem.shards), t, plan.eta,
                          plan.selected_clients, gaps);
    }
    result.models = params;
    fill_finals(result, problem.shards);
    return result;
}

RunResult run_experiment(const cli::ExperimentConfig& cfg) {
    return cli::mode_is_global_model(cfg.mode) ? run_homogeneous(cfg) : run_heterogeneous(cfg);
}

}  // namespace fedsim::federation

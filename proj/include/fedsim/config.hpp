#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fedsim/cka.hpp"
#include "fedsim/nn.hpp"

namespace fedsim::cli {

enum class Mode { kFedHeNNHomo, kFedHeNNHetero, kFedAvg, kFedProx, kLocalOnly };
enum class DatasetKind { kSynth, kCsv };
enum class RadSource { kHeldoutPool, kGaussianNoise };
enum class ScheduleKind { kLinearRamp, kConstant };

std::string to_string(Mode m);
std::string to_string(DatasetKind k);
std::string to_string(RadSource s);
std::string to_string(ScheduleKind k);

bool mode_is_global_model(Mode m);   // fedhenn_homo, fedavg, fedprox
bool mode_is_baseline(Mode m);       // fedavg, fedprox, local_only

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
    Mode mode = Mode::kFedHeNNHomo;

    DatasetKind dataset = DatasetKind::kSynth;
    std::string csv_path;
    int synth_classes = 4;
    std::size_t synth_dim = 8;
    std::size_t synth_per_class = 60;
    double synth_sep = 2.0;

    std::size_t n_clients = 4;
    int classes_per_client = 2;
    int rounds = 200;
    int local_epochs = 20;
    double client_fraction = 0.1;

    double eta0 = 0.001;  // forced to 0 by default for baseline modes
    ScheduleKind eta_schedule = ScheduleKind::kLinearRamp;
    std::size_t rad_size = 64;
    RadSource rad_source = RadSource::kHeldoutPool;
    cka::KernelSpec kernel = cka::KernelSpec::linear();

    double lr = 0.05;
    double momentum = 0.9;
    std::size_t batch_size = 0;  // 0 = full batch
    double test_frac = 0.2;

    std::vector<std::size_t> arch_hidden = {16};
    std::vector<std::vector<std::size_t>> arch_family = {{16}, {24}, {32}};
    nn::Activation activation = nn::Activation::kRelu;

    std::vector<double> client_weights;  // empty = uniform 1/n
    double fedprox_mu = 0.1;
    double shrink_fraction = 0.0;  // 0 = off
    double shrink_to = 0.5;
    bool parallel = false;

    std::uint64_t seed = 1;
    std::string out_dir = "out";

    bool operator==(const ExperimentConfig&) const = default;

    void validate() const;
};

// "key = value" lines; '#' comments and [section] headers are ignored;
// duplicate keys within one file are an error.
std::map<std::string, std::string> read_kv_file(const std::string& path);

// overrides are "key=value" strings applied on top of the file's pairs
void apply_overrides(std::map<std::string, std::string>& kv,
                     const std::vector<std::string>& overrides);

// defaults applied, every value parsed and validated; unknown keys error
ExperimentConfig build_config(const std::map<std::string, std::string>& kv);

ExperimentConfig parse_config(const std::string& path,
                              const std::vector<std::string>& overrides = {});

// canonical echo; parse_config of the written text yields an equal config
std::string write_resolved(const ExperimentConfig& cfg);

}  // namespace fedsim::cli

#include "fedsim/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fedsim/metrics.hpp"

namespace fedsim::cli {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::kFedHeNNHomo: return "fedhenn_homo";
        case Mode::kFedHeNNHetero: return "fedhenn_hetero";
        case Mode::kFedAvg: return "fedavg";
        case Mode::kFedProx: return "fedprox";
        case Mode::kLocalOnly: return "local_only";
    }
    return "?";
}

std::string to_string(DatasetKind k) { return k == DatasetKind::kSynth ? "synth" : "csv"; }

std::string to_string(RadSource s) {
    return s == RadSource::kHeldoutPool ? "heldout_pool" : "gaussian_noise";
}

std::string to_string(ScheduleKind k) {
    return k == ScheduleKind::kLinearRamp ? "linear_ramp" : "constant";
}

bool mode_is_global_model(Mode m) {
    return m == Mode::kFedHeNNHomo || m == Mode::kFedAvg || m == Mode::kFedProx;
}

bool mode_is_baseline(Mode m) {
    return m == Mode::kFedAvg || m == Mode::kFedProx || m == Mode::kLocalOnly;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void type_error(const std::string& key, const std::string& expected,
                             const std::string& got) {
    throw ConfigError("config: key \"" + key + "\": expected " + expected + ", got \"" + got +
                      "\"");
}

long long parse_int(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    const char* b = s.c_str();
    char* end = nullptr;
    const long long r = std::strtoll(b, &end, 10);
    if (s.empty() || end != b + s.size()) type_error(key, "integer", v);
    return r;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    const long long r = parse_int(key, v);
    if (r < 0) type_error(key, "nonnegative integer", v);
    return static_cast<std::size_t>(r);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    const char* b = s.c_str();
    char* end = nullptr;
    const unsigned long long r = std::strtoull(b, &end, 10);
    if (s.empty() || end != b + s.size() || s[0] == '-') type_error(key, "unsigned integer", v);
    return r;
}

double parse_double(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    const char* b = s.c_str();
    char* end = nullptr;
    const double r = std::strtod(b, &end);
    if (s.empty() || end != b + s.size()) type_error(key, "number", v);
    return r;
}

bool parse_bool(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    if (s == "true") return true;
    if (s == "false") return false;
    type_error(key, "true|false", v);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

// "16,8" -> {16,8}; "none" -> {}
std::vector<std::size_t> parse_hidden(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    if (s == "none") return {};
    std::vector<std::size_t> dims;
    for (const std::string& part : split_on(s, ',')) {
        const std::size_t d = parse_count(key, part);
        if (d == 0) type_error(key, "positive layer width", v);
        dims.push_back(d);
    }
    if (dims.empty()) type_error(key, "layer widths or \"none\"", v);
    return dims;
}

std::string hidden_to_string(const std::vector<std::size_t>& dims) {
    if (dims.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(dims[i]);
    }
    return out;
}

constexpr std::array kKnownKeys = {
    "mode",           "dataset",       "csv_path",        "synth_classes",
    "synth_dim",      "synth_per_class", "synth_sep",     "n_clients",
    "classes_per_client", "rounds",    "local_epochs",    "client_fraction",
    "eta0",           "eta_schedule",  "rad_size",        "rad_source",
    "kernel",         "rbf_sigma",     "lr",              "momentum",
    "batch",          "test_frac",     "arch",            "arch_family",
    "activation",     "client_weights", "fedprox_mu",     "shrink_fraction",
    "shrink_to",      "parallel",      "seed",            "out_dir",
};

bool known_key(const std::string& k) {
    return std::find(kKnownKeys.begin(), kKnownKeys.end(), k) != kKnownKeys.end();
}

}  // namespace

std::map<std::string, std::string> read_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[' && s.back() == ']') continue;  // section headers are cosmetic
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not \"key = value\": " + s);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            throw ConfigError("config: duplicate key \"" + key + "\" at line " +
                              std::to_string(lineno));
        kv[key] = value;
    }
    return kv;
}

void apply_overrides(std::map<std::string, std::string>& kv,
                     const std::vector<std::string>& overrides) {
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos || trim(ov.substr(0, eq)).empty())
            throw ConfigError("config: override is not \"key=value\": " + ov);
        kv[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
    }
}

ExperimentConfig build_config(const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv)
        if (!known_key(k)) throw ConfigError("config: unknown key \"" + k + "\"");

    const auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    ExperimentConfig cfg;

    const std::string* mode = get("mode");
    if (!mode) throw ConfigError("config: missing required key \"mode\"");
    if (*mode == "fedhenn_homo") cfg.mode = Mode::kFedHeNNHomo;
    else if (*mode == "fedhenn_hetero") cfg.mode = Mode::kFedHeNNHetero;
    else if (*mode == "fedavg") cfg.mode = Mode::kFedAvg;
    else if (*mode == "fedprox") cfg.mode = Mode::kFedProx;
    else if (*mode == "local_only") cfg.mode = Mode::kLocalOnly;
    else type_error("mode", "fedhenn_homo|fedhenn_hetero|fedavg|fedprox|local_only", *mode);

    if (const auto* v = get("dataset")) {
        if (*v == "synth") cfg.dataset = DatasetKind::kSynth;
        else if (*v == "csv") cfg.dataset = DatasetKind::kCsv;
        else type_error("dataset", "synth|csv", *v);
    }
    if (const auto* v = get("csv_path")) cfg.csv_path = *v;
    if (const auto* v = get("synth_classes")) {
        cfg.synth_classes = static_cast<int>(parse_count("synth_classes", *v));
    }
    if (const auto* v = get("synth_dim")) cfg.synth_dim = parse_count("synth_dim", *v);
    if (const auto* v = get("synth_per_class"))
        cfg.synth_per_class = parse_count("synth_per_class", *v);
    if (const auto* v = get("synth_sep")) cfg.synth_sep = parse_double("synth_sep", *v);

    if (const auto* v = get("n_clients")) cfg.n_clients = parse_count("n_clients", *v);
    if (const auto* v = get("classes_per_client"))
        cfg.classes_per_client = static_cast<int>(parse_count("classes_per_client", *v));
    if (const auto* v = get("rounds")) cfg.rounds = static_cast<int>(parse_count("rounds", *v));
    if (const auto* v = get("local_epochs"))
        cfg.local_epochs = static_cast<int>(parse_count("local_epochs", *v));
    if (const auto* v = get("client_fraction"))
        cfg.client_fraction = parse_double("client_fraction", *v);

    // eta0's default is mode-dependent: alignment runs ramp to 0.001, the
    // baselines run with the alignment term absent
    if (const auto* v = get("eta0")) cfg.eta0 = parse_double("eta0", *v);
    else cfg.eta0 = mode_is_baseline(cfg.mode) ? 0.0 : 0.001;

    if (const auto* v = get("eta_schedule")) {
        if (*v == "linear_ramp") cfg.eta_schedule = ScheduleKind::kLinearRamp;
        else if (*v == "constant") cfg.eta_schedule = ScheduleKind::kConstant;
        else type_error("eta_schedule", "linear_ramp|constant", *v);
    }
    if (const auto* v = get("rad_size")) cfg.rad_size = parse_count("rad_size", *v);
    if (const auto* v = get("rad_source")) {
        if (*v == "heldout_pool") cfg.rad_source = RadSource::kHeldoutPool;
        else if (*v == "gaussian_noise") cfg.rad_source = RadSource::kGaussianNoise;
        else type_error("rad_source", "heldout_pool|gaussian_noise", *v);
    }

    if (const auto* v = get("kernel")) {
        if (*v == "linear") cfg.kernel.kind = cka::KernelKind::kLinear;
        else if (*v == "rbf") cfg.kernel.kind = cka::KernelKind::kRbf;
        else type_error("kernel", "linear|rbf", *v);
    }
    if (const auto* v = get("rbf_sigma")) {
        const auto colon = v->find(':');
        const std::string head = colon == std::string::npos ? *v : trim(v->substr(0, colon));
        const std::string tail = colon == std::string::npos ? "" : trim(v->substr(colon + 1));
        if (head == "median" && !tail.empty()) {
            cfg.kernel.sigma_mode = cka::SigmaMode::kMedianFraction;
            cfg.kernel.sigma_value = parse_double("rbf_sigma", tail);
        } else if (head == "fixed" && !tail.empty()) {
            cfg.kernel.sigma_mode = cka::SigmaMode::kFixed;
            cfg.kernel.sigma_value = parse_double("rbf_sigma", tail);
        } else {
            type_error("rbf_sigma", "median:<fraction> or fixed:<sigma>", *v);
        }
    }

    if (const auto* v = get("lr")) cfg.lr = parse_double("lr", *v);
    if (const auto* v = get("momentum")) cfg.momentum = parse_double("momentum", *v);
    if (const auto* v = get("batch")) {
        if (trim(*v) == "full") cfg.batch_size = 0;
        else {
            cfg.batch_size = parse_count("batch", *v);
            if (cfg.batch_size == 0) type_error("batch", "\"full\" or a positive size", *v);
        }
    }
    if (const auto* v = get("test_frac")) cfg.test_frac = parse_double("test_frac", *v);

    if (const auto* v = get("arch")) cfg.arch_hidden = parse_hidden("arch", *v);
    if (const auto* v = get("arch_family")) {
        cfg.arch_family.clear();
        for (const std::string& entry : split_on(*v, ';'))
            cfg.arch_family.push_back(parse_hidden("arch_family", entry));
        if (cfg.arch_family.empty()) type_error("arch_family", "semicolon-separated lists", *v);
    }
    if (const auto* v = get("activation")) cfg.activation = nn::activation_from_string(*v);

    if (const auto* v = get("client_weights")) {
        if (trim(*v) == "uniform") cfg.client_weights.clear();
        else {
            cfg.client_weights.clear();
            for (const std::string& part : split_on(*v, ','))
                cfg.client_weights.push_back(parse_double("client_weights", part));
        }
    }
    if (const auto* v = get("fedprox_mu")) cfg.fedprox_mu = parse_double("fedprox_mu", *v);
    if (const auto* v = get("shrink_fraction"))
        cfg.shrink_fraction = parse_double("shrink_fraction", *v);
    if (const auto* v = get("shrink_to")) cfg.shrink_to = parse_double("shrink_to", *v);
    if (const auto* v = get("parallel")) cfg.parallel = parse_bool("parallel", *v);
    if (const auto* v = get("seed")) cfg.seed = parse_u64("seed", *v);
    if (const auto* v = get("out_dir")) cfg.out_dir = *v;

    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    const auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };

    if (dataset == DatasetKind::kCsv && csv_path.empty())
        fail("dataset = csv requires csv_path");
    if (dataset == DatasetKind::kSynth) {
        if (synth_classes < 1 || synth_dim < 1 || synth_per_class < 1)
            fail("synth_* counts must be >= 1");
        if (!(synth_sep > 0.0)) fail("synth_sep must be > 0");
        if (classes_per_client > synth_classes)
            fail("classes_per_client " + std::to_string(classes_per_client) +
                 " exceeds synth_classes " + std::to_string(synth_classes));
    }
    if (n_clients < 1) fail("n_clients must be >= 1");
    if (classes_per_client < 1) fail("classes_per_client must be >= 1");
    if (rounds < 0) fail("rounds must be >= 0");
    if (local_epochs < 0) fail("local_epochs must be >= 0");
    if (!(client_fraction > 0.0 && client_fraction <= 1.0))
        fail("client_fraction must be in (0,1]");
    if (eta0 < 0.0) fail("eta0 must be >= 0");
    if (mode_is_baseline(mode) && eta0 != 0.0)
        fail("mode " + to_string(mode) + " requires eta0 = 0");
    if (eta0 > 0.0 && rad_size < 2) fail("rad_size must be >= 2 when eta0 > 0");
    kernel.validate();
    if (!(lr > 0.0)) fail("lr must be > 0");
    if (!(momentum >= 0.0 && momentum < 1.0)) fail("momentum must be in [0,1)");
    if (!(test_frac > 0.0 && test_frac < 1.0)) fail("test_frac must be in (0,1)");
    if (mode == Mode::kFedHeNNHetero || mode == Mode::kLocalOnly) {
        if (arch_family.empty()) fail("heterogeneous modes require arch_family");
    }
    if (!client_weights.empty()) {
        if (client_weights.size() != n_clients)
            fail("client_weights has " + std::to_string(client_weights.size()) +
                 " entries for " + std::to_string(n_clients) + " clients");
        double sum = 0.0;
        for (double w : client_weights) {
            if (w < 0.0) fail("client_weights must be nonnegative");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-6) fail("client_weights must sum to 1");
    }
    if (fedprox_mu < 0.0) fail("fedprox_mu must be >= 0");
    if (!(shrink_fraction >= 0.0 && shrink_fraction <= 1.0))
        fail("shrink_fraction must be in [0,1]");
    if (!(shrink_to > 0.0 && shrink_to <= 1.0)) fail("shrink_to must be in (0,1]");
    if (out_dir.empty()) fail("out_dir must be nonempty");
}

ExperimentConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    auto kv = read_kv_file(path);
    apply_overrides(kv, overrides);
    return build_config(kv);
}

std::string write_resolved(const ExperimentConfig& cfg) {
    std::string out;
    const auto put = [&](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("mode", to_string(cfg.mode));
    put("dataset", to_string(cfg.dataset));
    if (!cfg.csv_path.empty()) put("csv_path", cfg.csv_path);
    put("synth_classes", std::to_string(cfg.synth_classes));
    put("synth_dim", std::to_string(cfg.synth_dim));
    put("synth_per_class", std::to_string(cfg.synth_per_class));
    put("synth_sep", fmt_g17(cfg.synth_sep));
    put("n_clients", std::to_string(cfg.n_clients));
    put("classes_per_client", std::to_string(cfg.classes_per_client));
    put("rounds", std::to_string(cfg.rounds));
    put("local_epochs", std::to_string(cfg.local_epochs));
    put("client_fraction", fmt_g17(cfg.client_fraction));
    put("eta0", fmt_g17(cfg.eta0));
    put("eta_schedule", to_string(cfg.eta_schedule));
    put("rad_size", std::to_string(cfg.rad_size));
    put("rad_source", to_string(cfg.rad_source));
    put("kernel", cfg.kernel.kind == cka::KernelKind::kLinear ? "linear" : "rbf");
    put("rbf_sigma",
        (cfg.kernel.sigma_mode == cka::SigmaMode::kMedianFraction ? "median:" : "fixed:") +
            fmt_g17(cfg.kernel.sigma_value));
    put("lr", fmt_g17(cfg.lr));
    put("momentum", fmt_g17(cfg.momentum));
    put("batch", cfg.batch_size == 0 ? "full" : std::to_string(cfg.batch_size));
    put("test_frac", fmt_g17(cfg.test_frac));
    put("arch", hidden_to_string(cfg.arch_hidden));
    std::string family;
    for (std::size_t i = 0; i < cfg.arch_family.size(); ++i) {
        if (i) family += ';';
        family += hidden_to_string(cfg.arch_family[i]);
    }
    put("arch_family", family);
    put("activation", to_string(cfg.activation));
    if (cfg.client_weights.empty()) {
        put("client_weights", "uniform");
    } else {
        std::string w;
        for (std::size_t i = 0; i < cfg.client_weights.size(); ++i) {
            if (i) w += ',';
            w += fmt_g17(cfg.client_weights[i]);
        }
        put("client_weights", w);
    }
    put("fedprox_mu", fmt_g17(cfg.fedprox_mu));
    put("shrink_fraction", fmt_g17(cfg.shrink_fraction));
    put("shrink_to", fmt_g17(cfg.shrink_to));
    put("parallel", cfg.parallel ? "true" : "false");
    put("seed", std::to_string(cfg.seed));
    put("out_dir", cfg.out_dir);
    return out;
}

}  // namespace fedsim::cli

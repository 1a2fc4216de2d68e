#include "fedsim/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedsim/metrics.hpp"

namespace fedsim::cli {

namespace fs = std::filesystem;

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out.good()) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string summary_text(const ExperimentConfig& cfg, const federation::RunResult& result) {
    std::ostringstream out;
    out << "mode = " << to_string(cfg.mode) << "\n";
    out << "rounds = " << cfg.rounds << "\n";
    out << "final_macro_test_accuracy = " << fmt_g9(result.final_macro_test_accuracy) << "\n";
    if (std::isfinite(result.final_global_test_accuracy)) {
        out << "final_global_test_accuracy = " << fmt_g9(result.final_global_test_accuracy)
            << "\n";
    }
    return out.str();
}

// The three files a run produces inside its out_dir.
std::vector<fs::path> output_paths(const fs::path& dir) {
    return {dir / "metrics.csv", dir / "config.resolved", dir / "summary.txt"};
}

void remove_outputs(const fs::path& dir) {
    std::error_code ec;  // best-effort cleanup; never throws
    for (const auto& p : output_paths(dir)) {
        fs::remove(p, ec);
    }
}

// Filesystem-safe directory name for one sweep value.
std::string sanitize_component(const std::string& value) {
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '.' || c == '-' || c == '+';
        out.push_back(ok ? c : '_');
    }
    if (out.empty()) {
        out = "_";
    }
    return out;
}

}  // namespace

std::string resolve_out_dir(const std::string& out_dir) {
    fs::path p(out_dir);
    if (p.is_relative()) {
        if (const char* root = std::getenv("FEDSIM_OUT_ROOT"); root != nullptr && *root != '\0') {
            p = fs::path(root) / p;
        }
    }
    return p.string();
}

federation::RunResult run_to_dir(const ExperimentConfig& cfg) {
    const fs::path dir(resolve_out_dir(cfg.out_dir));
    fs::create_directories(dir);
    // Drop any previous run's files up front so a failure below cannot leave
    // stale outputs that look like results of this config.
    remove_outputs(dir);
    try {
        federation::RunResult result = federation::run_experiment(cfg);
        write_text_file(dir / "metrics.csv", to_csv(result.metrics));
        write_text_file(dir / "config.resolved", write_resolved(cfg));
        write_text_file(dir / "summary.txt", summary_text(cfg, result));
        return result;
    } catch (...) {
        remove_outputs(dir);
        throw;
    }
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
    try {
        ExperimentConfig cfg = parse_config(config_path, overrides);
        run_to_dir(cfg);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "fedsim: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& key,
              const std::vector<std::string>& values) {
    if (values.empty()) {
        std::cerr << "fedsim: sweep needs at least one value\n";
        return 2;
    }
    ExperimentConfig base;
    try {
        base = parse_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "fedsim: " << e.what() << "\n";
        return 1;
    }

    const fs::path sweep_dir(resolve_out_dir(base.out_dir));
    std::ostringstream summary;
    summary << "value,status,final_macro_test_accuracy\n";
    int failures = 0;
    for (const std::string& value : values) {
        const fs::path cell_dir = sweep_dir / sanitize_component(value);
        try {
            ExperimentConfig cfg = parse_config(
                config_path, {key + "=" + value, "out_dir=" + cell_dir.string()});
            federation::RunResult result = run_to_dir(cfg);
            summary << value << ",ok," << fmt_g9(result.final_macro_test_accuracy) << "\n";
        } catch (const std::exception& e) {
            std::cerr << "fedsim: " << key << "=" << value << ": " << e.what() << "\n";
            summary << value << ",error,\n";
            ++failures;
        }
    }
    try {
        fs::create_directories(sweep_dir);
        write_text_file(sweep_dir / "sweep_summary.csv", summary.str());
    } catch (const std::exception& e) {
        std::cerr << "fedsim: " << e.what() << "\n";
        return 1;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace fedsim::cli

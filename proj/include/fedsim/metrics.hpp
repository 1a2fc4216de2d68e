#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fedsim::cli {

// One evaluation record. scope is "global", "client_<id>", or "macro_avg";
// alignment_term is the round's unweighted alignment gap 1 - CKA (so it
// stays in [0,1] regardless of eta) and is empty whenever no alignment was
// performed: baselines, eta = 0 rounds, and unselected clients.
struct MetricsRow {
    int round = 0;
    std::string scope;
    std::string split = "test";
    double accuracy = 0.0;
    double task_loss = 0.0;
    std::optional<double> alignment_term;
    double eta = 0.0;

    bool operator==(const MetricsRow&) const = default;
};

// floats with 9 significant digits, the metrics-file convention
std::string fmt_g9(double v);
// full-precision round-trip formatting, used by config echoing
std::string fmt_g17(double v);

std::string metrics_csv_header();
std::string to_csv_line(const MetricsRow& row);
std::string to_csv(const std::vector<MetricsRow>& rows);

}  // namespace fedsim::cli

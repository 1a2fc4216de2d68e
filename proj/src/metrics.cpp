#include "fedsim/metrics.hpp"

#include <cstdio>

namespace fedsim::cli {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

std::string fmt_g9(double v) { return fmt("%.9g", v); }

std::string fmt_g17(double v) { return fmt("%.17g", v); }

std::string metrics_csv_header() {
    return "round,scope,split,accuracy,task_loss,alignment_term,eta";
}

std::string to_csv_line(const MetricsRow& row) {
    std::string line = std::to_string(row.round);
    line += ',';
    line += row.scope;
    line += ',';
    line += row.split;
    line += ',';
    line += fmt_g9(row.accuracy);
    line += ',';
    line += fmt_g9(row.task_loss);
    line += ',';
    if (row.alignment_term) line += fmt_g9(*row.alignment_term);
    line += ',';
    line += fmt_g9(row.eta);
    return line;
}

std::string to_csv(const std::vector<MetricsRow>& rows) {
    std::string out = metrics_csv_header();
    out += '\n';
    for (const MetricsRow& r : rows) {
        out += to_csv_line(r);
        out += '\n';
    }
    return out;
}

}  // namespace fedsim::cli

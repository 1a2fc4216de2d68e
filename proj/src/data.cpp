#include "fedsim/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "fedsim/rng.hpp"

namespace fedsim::data {

void LabeledDataset::validate() const {
    if (features.rows == 0) throw std::invalid_argument("LabeledDataset: no rows");
    if (labels.size() != features.rows)
        throw std::invalid_argument("LabeledDataset: " + std::to_string(labels.size()) +
                                    " labels for " + std::to_string(features.rows) + " rows");
    if (n_classes < 1) throw std::invalid_argument("LabeledDataset: n_classes < 1");
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] < 0 || labels[i] >= n_classes)
            throw std::invalid_argument("LabeledDataset: label " + std::to_string(labels[i]) +
                                        " at row " + std::to_string(i) + " outside [0, " +
                                        std::to_string(n_classes) + ")");
    require_finite(features, "LabeledDataset features");
}

bool LabeledDataset::covers_all_classes() const {
    std::vector<char> seen(static_cast<std::size_t>(n_classes), 0);
    for (int l : labels) seen[static_cast<std::size_t>(l)] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

namespace {

// deterministic lattice: class c sits at class_sep * (base-B digits of c),
// with B the smallest integer satisfying B^dim >= n_classes
Matrix lattice_centers(int n_classes, std::size_t dim, double class_sep) {
    std::size_t base = 2;
    auto capacity = [&](std::size_t b) {
        double cap = 1.0;
        for (std::size_t j = 0; j < dim; ++j) cap *= static_cast<double>(b);
        return cap;
    };
    while (capacity(base) < static_cast<double>(n_classes)) ++base;
    Matrix centers(static_cast<std::size_t>(n_classes), dim);
    for (int c = 0; c < n_classes; ++c) {
        std::size_t rem = static_cast<std::size_t>(c);
        for (std::size_t j = 0; j < dim; ++j) {
            centers(static_cast<std::size_t>(c), j) =
                class_sep * static_cast<double>(rem % base);
            rem /= base;
        }
    }
    return centers;
}

}  // namespace

LabeledDataset synth_gaussian_mixture(int n_classes, std::size_t dim, std::size_t n_per_class,
                                      double class_sep, std::uint64_t seed) {
    if (n_classes < 1) throw std::invalid_argument("synth_gaussian_mixture: n_classes < 1");
    if (dim < 1) throw std::invalid_argument("synth_gaussian_mixture: dim < 1");
    if (n_per_class < 1) throw std::invalid_argument("synth_gaussian_mixture: n_per_class < 1");
    if (!(class_sep > 0.0))
        throw std::invalid_argument("synth_gaussian_mixture: class_sep must be > 0");

    const Matrix centers = lattice_centers(n_classes, dim, class_sep);
    Rng rng(derive_seed(seed, stream::kSynth));

    LabeledDataset ds;
    ds.n_classes = n_classes;
    ds.features = Matrix(static_cast<std::size_t>(n_classes) * n_per_class, dim);
    ds.labels.resize(ds.features.rows);
    std::size_t r = 0;
    for (int c = 0; c < n_classes; ++c) {
        for (std::size_t k = 0; k < n_per_class; ++k, ++r) {
            ds.labels[r] = c;
            for (std::size_t j = 0; j < dim; ++j)
                ds.features(r, j) = centers(static_cast<std::size_t>(c), j) + rng.next_normal();
        }
    }
    ds.validate();
    return ds;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
    const std::string s = trim(raw);
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (s.empty() || end != begin + s.size())
        throw std::invalid_argument("load_csv_dataset: non-numeric cell \"" + raw +
                                    "\" at data row " + std::to_string(row) + ", column " +
                                    std::to_string(col));
    return v;
}

}  // namespace

LabeledDataset load_csv_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv_dataset: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv_dataset: empty file " + path);
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty() || trim(header.back()) != "label")
        throw std::runtime_error("load_csv_dataset: last header column must be \"label\"");
    const std::size_t n_cols = header.size();
    if (n_cols < 2) throw std::runtime_error("load_csv_dataset: no feature columns");

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t row = 1;  // 1-based data row numbers in messages
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != n_cols)
            throw std::runtime_error("load_csv_dataset: data row " + std::to_string(row) +
                                     " has " + std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(n_cols));
        for (std::size_t c = 0; c + 1 < n_cols; ++c)
            values.push_back(parse_cell(cells[c], row, c));
        const double lv = parse_cell(cells[n_cols - 1], row, n_cols - 1);
        if (lv < 0.0 || lv != std::floor(lv))
            throw std::runtime_error("load_csv_dataset: label at data row " + std::to_string(row) +
                                     " is not a nonnegative integer");
        labels.push_back(static_cast<int>(lv));
        ++row;
    }
    if (labels.empty()) throw std::runtime_error("load_csv_dataset: no data rows in " + path);

    LabeledDataset ds;
    ds.features = Matrix(labels.size(), n_cols - 1);
    ds.features.data = std::move(values);
    ds.labels = std::move(labels);
    ds.n_classes = 1 + *std::max_element(ds.labels.begin(), ds.labels.end());
    ds.validate();
    return ds;
}

std::vector<std::vector<std::size_t>> partition_noniid(const LabeledDataset& ds,
                                                       std::size_t n_clients,
                                                       int classes_per_client, std::uint64_t seed,
                                                       bool strict_coverage) {
    ds.validate();
    if (n_clients < 1) throw std::invalid_argument("partition_noniid: n_clients < 1");
    if (classes_per_client < 1)
        throw std::invalid_argument("partition_noniid: classes_per_client < 1");
    if (classes_per_client > ds.n_classes)
        throw std::invalid_argument("partition_noniid: classes_per_client " +
                                    std::to_string(classes_per_client) + " > n_classes " +
                                    std::to_string(ds.n_classes));

    const std::size_t n_classes = static_cast<std::size_t>(ds.n_classes);
    Rng rng(derive_seed(seed, stream::kPartition));

    // each client draws its class set uniformly without replacement
    std::vector<std::vector<std::size_t>> holders(n_classes);
    for (std::size_t i = 0; i < n_clients; ++i) {
        std::vector<std::size_t> classes =
            rng.sample_indices(n_classes, static_cast<std::size_t>(classes_per_client));
        for (std::size_t c : classes) holders[c].push_back(i);
    }
    for (auto& h : holders) std::sort(h.begin(), h.end());

    for (std::size_t c = 0; c < n_classes; ++c) {
        if (!holders[c].empty()) continue;
        if (strict_coverage)
            throw std::runtime_error("partition_noniid: class " + std::to_string(c) +
                                     " assigned to no client");
        std::cerr << "partition_noniid: warning: class " << c
                  << " assigned to no client; its rows are dropped\n";
    }

    // deal each class's rows round-robin among its holders, in dataset order
    std::vector<std::vector<std::size_t>> shards(n_clients);
    std::vector<std::size_t> dealt(n_classes, 0);
    for (std::size_t r = 0; r < ds.size(); ++r) {
        const std::size_t c = static_cast<std::size_t>(ds.labels[r]);
        if (holders[c].empty()) continue;
        shards[holders[c][dealt[c] % holders[c].size()]].push_back(r);
        ++dealt[c];
    }
    for (auto& s : shards) std::sort(s.begin(), s.end());
    return shards;
}

LabeledDataset select_rows(const LabeledDataset& ds, const std::vector<std::size_t>& rows) {
    LabeledDataset out;
    out.n_classes = ds.n_classes;
    out.features = Matrix(rows.size(), ds.dim());
    out.labels.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= ds.size())
            throw std::invalid_argument("select_rows: row index " + std::to_string(rows[i]) +
                                        " out of range for " + std::to_string(ds.size()) +
                                        " rows");
        out.labels[i] = ds.labels[rows[i]];
        for (std::size_t j = 0; j < ds.dim(); ++j) out.features(i, j) = ds.features(rows[i], j);
    }
    return out;
}

namespace {

LabeledDataset take_rows(const LabeledDataset& ds, const std::vector<std::size_t>& rows) {
    return select_rows(ds, rows);
}

// both sides nonempty: round(frac * n) clamped to [1, n-1]
std::size_t test_count(std::size_t n, double frac) {
    const auto raw = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
    return std::min(std::max<std::size_t>(raw, 1), n - 1);
}

}  // namespace

std::pair<LabeledDataset, LabeledDataset> split_train_test(const std::vector<std::size_t>& indices,
                                                           const LabeledDataset& ds,
                                                           double test_frac, std::uint64_t seed) {
    if (!(test_frac > 0.0 && test_frac < 1.0))
        throw std::invalid_argument("split_train_test: test_frac must be in (0,1)");
    if (indices.size() < 2)
        throw std::invalid_argument("split_train_test: need >= 2 rows, got " +
                                    std::to_string(indices.size()));
    for (std::size_t r : indices)
        if (r >= ds.size())
            throw std::invalid_argument("split_train_test: row index " + std::to_string(r) +
                                        " out of range");

    // group by class to decide on stratification
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.n_classes));
    for (std::size_t r : indices) by_class[static_cast<std::size_t>(ds.labels[r])].push_back(r);
    const bool stratify = std::all_of(by_class.begin(), by_class.end(),
                                      [](const auto& g) { return g.empty() || g.size() >= 2; });

    Rng rng(derive_seed(seed, stream::kSplit));
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
    if (stratify) {
        for (auto& group : by_class) {
            if (group.empty()) continue;
            rng.shuffle(group);
            const std::size_t k = test_count(group.size(), test_frac);
            test_rows.insert(test_rows.end(), group.begin(), group.begin() + k);
            train_rows.insert(train_rows.end(), group.begin() + k, group.end());
        }
    } else {
        std::vector<std::size_t> rows = indices;
        rng.shuffle(rows);
        const std::size_t k = test_count(rows.size(), test_frac);
        test_rows.assign(rows.begin(), rows.begin() + k);
        train_rows.assign(rows.begin() + k, rows.end());
    }
    return {take_rows(ds, train_rows), take_rows(ds, test_rows)};
}

std::vector<ClientShard> shrink_clients(const std::vector<ClientShard>& shards,
                                        double fraction_of_clients, double shrink_to,
                                        std::uint64_t seed) {
    if (!(fraction_of_clients > 0.0 && fraction_of_clients <= 1.0))
        throw std::invalid_argument("shrink_clients: fraction_of_clients must be in (0,1]");
    if (!(shrink_to > 0.0 && shrink_to <= 1.0))
        throw std::invalid_argument("shrink_clients: shrink_to must be in (0,1]");

    const std::size_t n = shards.size();
    const auto k = static_cast<std::size_t>(
        std::ceil(fraction_of_clients * static_cast<double>(n) - 1e-12));
    Rng pick_rng(derive_seed(seed, stream::kShrink));
    std::vector<std::size_t> picked = pick_rng.sample_indices(n, k);
    std::sort(picked.begin(), picked.end());

    std::vector<ClientShard> out = shards;
    for (std::size_t idx : picked) {
        ClientShard& sh = out[idx];
        const std::size_t n_train = sh.train.size();
        const auto keep = static_cast<std::size_t>(
            std::llround(shrink_to * static_cast<double>(n_train)));
        if (keep == 0)
            throw std::runtime_error("shrink_clients: shrink would empty client " +
                                     std::to_string(sh.client_id) + "'s train set");
        if (keep == n_train) continue;
        Rng row_rng(derive_seed(seed, stream::kShrink, 1 + sh.client_id));
        std::vector<std::size_t> kept = row_rng.sample_indices(n_train, keep);
        std::sort(kept.begin(), kept.end());
        sh.train = take_rows(sh.train, kept);
    }
    return out;
}

}  // namespace fedsim::data

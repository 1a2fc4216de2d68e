#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fedsim/matrix.hpp"
#include "fedsim/nn.hpp"

namespace fedsim::data {

struct LabeledDataset {
    Matrix features;          // n x d
    std::vector<int> labels;  // values in [0, n_classes)
    int n_classes = 0;

    std::size_t size() const { return features.rows; }
    std::size_t dim() const { return features.cols; }

    // label range / row count / finiteness; class coverage is checked
    // separately because client shards legitimately hold a class subset
    void validate() const;

    // true iff every class in [0, n_classes) has at least one row
    bool covers_all_classes() const;
};

struct ClientShard {
    std::size_t client_id = 0;
    LabeledDataset train;
    LabeledDataset test;
    nn::Architecture arch;

    std::size_t n_i() const { return train.size(); }
};

// Materialize the given rows (in the given order) as a new dataset.
LabeledDataset select_rows(const LabeledDataset& ds, const std::vector<std::size_t>& rows);

// Gaussian blobs with unit covariance around deterministic lattice centers
// spaced class_sep apart. Rows are emitted class-major: n_per_class rows of
// class 0, then class 1, ...
LabeledDataset synth_gaussian_mixture(int n_classes, std::size_t dim, std::size_t n_per_class,
                                      double class_sep, std::uint64_t seed);

// CSV with a header row; float feature columns, trailing integer column
// named "label". n_classes = max label + 1.
LabeledDataset load_csv_dataset(const std::string& path);

// Class-restricted partitioning: each client draws classes_per_client
// distinct classes uniformly (seeded), then each class's rows are dealt
// round-robin among the clients holding that class. Rows of classes no
// client drew are dropped with a warning unless strict_coverage is set.
std::vector<std::vector<std::size_t>> partition_noniid(const LabeledDataset& ds,
                                                       std::size_t n_clients,
                                                       int classes_per_client,
                                                       std::uint64_t seed,
                                                       bool strict_coverage = false);

// Seeded shuffle-then-split of the given rows; stratified per class whenever
// every class present has >= 2 rows, so both sides keep per-class presence.
std::pair<LabeledDataset, LabeledDataset> split_train_test(const std::vector<std::size_t>& indices,
                                                           const LabeledDataset& ds,
                                                           double test_frac, std::uint64_t seed);

// Reduced-data transformation: a seeded subset of ceil(fraction * N) clients
// has its train set subsampled to shrink_to of its original size. Test sets
// and unaffected clients are returned bit-identical.
std::vector<ClientShard> shrink_clients(const std::vector<ClientShard>& shards,
                                        double fraction_of_clients, double shrink_to,
                                        std::uint64_t seed);

}  // namespace fedsim::data

#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "fedsim/matrix.hpp"

namespace fedsim::cka {

// Constant representations make HSIC(K,K) vanish and CKA undefined; a silent
// zero would corrupt the eta-weighted loss, so this is always an error.
struct DegenerateRepresentationError : std::runtime_error {
    explicit DegenerateRepresentationError(const std::string& what)
        : std::runtime_error(what) {}
};

enum class KernelKind { kLinear, kRbf };
enum class SigmaMode { kFixed, kMedianFraction };

struct KernelSpec {
    KernelKind kind = KernelKind::kLinear;
    SigmaMode sigma_mode = SigmaMode::kMedianFraction;
    double sigma_value = 0.5;  // sigma itself (kFixed) or the median fraction c

    static KernelSpec linear() { return {KernelKind::kLinear, SigmaMode::kMedianFraction, 0.5}; }
    static KernelSpec rbf_fixed(double sigma) {
        return {KernelKind::kRbf, SigmaMode::kFixed, sigma};
    }
    static KernelSpec rbf_median(double fraction) {
        return {KernelKind::kRbf, SigmaMode::kMedianFraction, fraction};
    }

    bool operator==(const KernelSpec&) const = default;

    void validate() const;
};

// L x L symmetric PSD gram matrix over one activation matrix's rows.
struct KernelMatrix {
    Matrix k;

    std::size_t size() const { return k.rows; }
};

// Subtracts each column's mean; every CKA computation runs on
// column-centered activations so the linear closed form and the
// HSIC/kernel path agree exactly.
Matrix center_columns(const Matrix& a);

// H = I_L - (1/L) 11^T
Matrix centering_matrix(std::size_t l);

// Resolve the RBF bandwidth for an activation matrix. Median mode uses
// c * median of the nonzero pairwise row distances; all-zero distances
// (constant rows) are an error.
double resolve_rbf_sigma(const Matrix& a, const KernelSpec& spec);

// linear: K = A A^T; rbf: K(p,q) = exp(-|a_p - a_q|^2 / (2 sigma^2))
KernelMatrix gram(const Matrix& a, const KernelSpec& spec);

// biased estimator tr(Ki H Kj H) / (L-1)^2
double hsic(const KernelMatrix& ki, const KernelMatrix& kj);

// HSIC(Ki,Kj) / sqrt(HSIC(Ki,Ki) HSIC(Kj,Kj)), in [0,1].
// Drift beyond 1e-12 outside [0,1] is an error, smaller drift is clamped.
double cka(const KernelMatrix& ki, const KernelMatrix& kj);

// Closed form |Aj^T Ai|_F^2 / (|Ai^T Ai|_F |Aj^T Aj|_F) on column-centered
// inputs (inputs are centered here; centering is idempotent).
double linear_cka(const Matrix& ai, const Matrix& aj);

// K-bar = sum_j w_j K_j
KernelMatrix aggregate_kernels(std::span<const KernelMatrix> kernels,
                               std::span<const double> weights);

}  // namespace fedsim::cka

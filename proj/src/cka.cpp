#include "fedsim/cka.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fedsim::cka {

void KernelSpec::validate() const {
    if (kind == KernelKind::kRbf && sigma_value <= 0.0)
        throw std::invalid_argument("KernelSpec: rbf sigma/fraction must be > 0");
}

Matrix center_columns(const Matrix& a) {
    Matrix out = a;
    if (a.rows == 0) return out;
    for (std::size_t j = 0; j < a.cols; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < a.rows; ++i) mean += a(i, j);
        mean /= static_cast<double>(a.rows);
        for (std::size_t i = 0; i < a.rows; ++i) out(i, j) -= mean;
    }
    return out;
}

Matrix centering_matrix(std::size_t l) {
    if (l < 2) throw std::invalid_argument("centering_matrix: L must be >= 2");
    Matrix h(l, l, -1.0 / static_cast<double>(l));
    for (std::size_t i = 0; i < l; ++i) h(i, i) += 1.0;
    return h;
}

namespace {

double squared_row_distance(const Matrix& a, std::size_t p, std::size_t q) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) {
        const double d = a(p, j) - a(q, j);
        s += d * d;
    }
    return s;
}

// K with its rows and columns H-centered: K - rowmean - colmean + allmean
Matrix double_center(const Matrix& k) {
    const std::size_t l = k.rows;
    std::vector<double> rowmean(l, 0.0), colmean(l, 0.0);
    double allmean = 0.0;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            rowmean[i] += k(i, j);
            colmean[j] += k(i, j);
            allmean += k(i, j);
        }
    for (auto& v : rowmean) v /= static_cast<double>(l);
    for (auto& v : colmean) v /= static_cast<double>(l);
    allmean /= static_cast<double>(l * l);
    Matrix c(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            c(i, j) = k(i, j) - rowmean[i] - colmean[j] + allmean;
    return c;
}

}  // namespace

double resolve_rbf_sigma(const Matrix& a, const KernelSpec& spec) {
    spec.validate();
    if (spec.kind != KernelKind::kRbf)
        throw std::invalid_argument("resolve_rbf_sigma: spec is not rbf");
    if (spec.sigma_mode == SigmaMode::kFixed) return spec.sigma_value;

    std::vector<double> dists;
    dists.reserve(a.rows * (a.rows - 1) / 2);
    for (std::size_t p = 0; p < a.rows; ++p)
        for (std::size_t q = p + 1; q < a.rows; ++q) {
            const double d2 = squared_row_distance(a, p, q);
            if (d2 > 0.0) dists.push_back(std::sqrt(d2));
        }
    if (dists.empty())
        throw DegenerateRepresentationError(
            "rbf median sigma: all pairwise row distances are zero");
    std::sort(dists.begin(), dists.end());
    const std::size_t n = dists.size();
    const double median =
        (n % 2 == 1) ? dists[n / 2] : 0.5 * (dists[n / 2 - 1] + dists[n / 2]);
    return spec.sigma_value * median;
}

KernelMatrix gram(const Matrix& a, const KernelSpec& spec) {
    spec.validate();
    if (a.rows < 2) throw std::invalid_argument("gram: need at least 2 rows");
    if (spec.kind == KernelKind::kLinear) return {matmul_a_bt(a, a)};

    const double sigma = resolve_rbf_sigma(a, spec);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    Matrix k(a.rows, a.rows);
    for (std::size_t p = 0; p < a.rows; ++p) {
        k(p, p) = 1.0;
        for (std::size_t q = p + 1; q < a.rows; ++q) {
            const double v = std::exp(-squared_row_distance(a, p, q) * inv);
            k(p, q) = v;
            k(q, p) = v;
        }
    }
    return {k};
}

double hsic(const KernelMatrix& ki, const KernelMatrix& kj) {
    const std::size_t l = ki.size();
    if (l < 2) throw std::invalid_argument("hsic: L must be >= 2");
    if (kj.size() != l)
        throw std::invalid_argument("hsic: kernel sizes differ, " + shape_str(ki.k) +
                                    " vs " + shape_str(kj.k));
    // tr(Ki H Kj H) = <Ki, H Kj H>_F
    const Matrix kjc = double_center(kj.k);
    const double denom = static_cast<double>(l - 1) * static_cast<double>(l - 1);
    return frob_dot(ki.k, kjc) / denom;
}

double cka(const KernelMatrix& ki, const KernelMatrix& kj) {
    const double sxx = hsic(ki, ki);
    const double syy = hsic(kj, kj);
    if (sxx <= 0.0 || syy <= 0.0)
        throw DegenerateRepresentationError(
            "cka: zero self-HSIC (constant representation rows)");
    const double v = hsic(ki, kj) / std::sqrt(sxx * syy);
    if (v < -1e-12 || v > 1.0 + 1e-12)
        throw std::runtime_error("cka: value " + std::to_string(v) +
                                 " outside [0,1] beyond float drift");
    return std::clamp(v, 0.0, 1.0);
}

double linear_cka(const Matrix& ai, const Matrix& aj) {
    if (ai.rows != aj.rows)
        throw std::invalid_argument("linear_cka: row counts differ, " + shape_str(ai) +
                                    " vs " + shape_str(aj));
    const Matrix ci = center_columns(ai);
    const Matrix cj = center_columns(aj);
    const double cross = frob_norm(matmul_at_b(cj, ci));
    const double ni = frob_norm(matmul_at_b(ci, ci));
    const double nj = frob_norm(matmul_at_b(cj, cj));
    if (ni == 0.0 || nj == 0.0)
        throw DegenerateRepresentationError(
            "linear_cka: zero activation matrix after centering");
    return (cross * cross) / (ni * nj);
}

KernelMatrix aggregate_kernels(std::span<const KernelMatrix> kernels,
                               std::span<const double> weights) {
    if (kernels.empty()) throw std::invalid_argument("aggregate_kernels: no kernels");
    if (kernels.size() != weights.size())
        throw std::invalid_argument("aggregate_kernels: kernel/weight count mismatch");
    const std::size_t l = kernels.front().size();
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("aggregate_kernels: negative weight");
        wsum += w;
    }
    if (wsum <= 0.0) throw std::invalid_argument("aggregate_kernels: weights sum to zero");

    Matrix out(l, l);
    for (std::size_t n = 0; n < kernels.size(); ++n) {
        if (kernels[n].size() != l)
            throw std::invalid_argument("aggregate_kernels: kernel size mismatch at index " +
                                        std::to_string(n));
        add_scaled(out, kernels[n].k, weights[n]);
    }
    return {out};
}

}  // namespace fedsim::cka

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fedsim/cka.hpp"
#include "fedsim/matrix.hpp"
#include "fedsim/rng.hpp"

using namespace fedsim;
using namespace fedsim::cka;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double scale = 1.0) {
    Matrix m(r, c);
    for (auto& v : m.data) v = scale * rng.next_normal();
    return m;
}

Matrix random_symmetric(Rng& rng, std::size_t l) {
    Matrix m(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i; j < l; ++j) {
            const double v = rng.next_normal();
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

// Literal oracle: form H K_j H by explicit loops, then trace against K_i.
// Kept free of the library's hsic/centering path on purpose.
double hsic_oracle(const Matrix& ki, const Matrix& kj) {
    const std::size_t l = ki.rows;
    Matrix h(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            h(i, j) = (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(l);
    Matrix hk(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t k = 0; k < l; ++k) hk(i, j) += h(i, k) * kj(k, j);
    Matrix hkh(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t k = 0; k < l; ++k) hkh(i, j) += hk(i, k) * h(k, j);
    double tr = 0.0;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t k = 0; k < l; ++k) tr += ki(i, k) * hkh(k, i);
    return tr / (static_cast<double>(l - 1) * static_cast<double>(l - 1));
}

// Orthonormal d x d matrix via Gram-Schmidt on a random matrix.
Matrix random_orthogonal(Rng& rng, std::size_t d) {
    Matrix m = random_matrix(rng, d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) dot += m(i, j) * m(i, k);
            for (std::size_t i = 0; i < d; ++i) m(i, j) -= dot * m(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < d; ++i) norm += m(i, j) * m(i, j);
        norm = std::sqrt(norm);
        REQUIRE(norm > 1e-8);
        for (std::size_t i = 0; i < d; ++i) m(i, j) /= norm;
    }
    return m;
}

}  // namespace

TEST_CASE("centering_matrix closed form and projector identities") {
    const Matrix h2 = centering_matrix(2);
    CHECK(h2(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h2(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(h2(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(h2(1, 1) == doctest::Approx(0.5).epsilon(1e-15));

    for (std::size_t l : {2u, 3u, 7u}) {
        const Matrix h = centering_matrix(l);
        CHECK(max_abs_diff(matmul(h, h), h) < 1e-12);  // idempotent
        for (std::size_t i = 0; i < l; ++i) {
            double rowsum = 0.0;
            for (std::size_t j = 0; j < l; ++j) rowsum += h(i, j);
            CHECK(std::abs(rowsum) < 1e-14);
        }
    }

    CHECK_THROWS_AS(centering_matrix(1), std::invalid_argument);
}

TEST_CASE("gram: linear kernel") {
    CHECK(gram(Matrix::identity(2), KernelSpec::linear()).k == Matrix::identity(2));

    const Matrix a = Matrix::from_rows({{1, 0}, {1, 0}, {0, 1}});
    const Matrix expected = Matrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    CHECK(gram(a, KernelSpec::linear()).k == expected);

    CHECK_THROWS_AS(gram(Matrix(1, 3), KernelSpec::linear()), std::invalid_argument);
}

TEST_CASE("gram: rbf kernel") {
    Rng rng(11);
    const Matrix a = random_matrix(rng, 5, 3);

    SUBCASE("diagonal is exactly 1") {
        for (auto spec : {KernelSpec::rbf_fixed(0.7), KernelSpec::rbf_median(0.5)}) {
            const KernelMatrix k = gram(a, spec);
            for (std::size_t i = 0; i < 5; ++i) CHECK(k.k(i, i) == 1.0);
        }
    }

    SUBCASE("fixed sigma matches direct formula") {
        const double sigma = 1.3;
        const KernelMatrix k = gram(a, KernelSpec::rbf_fixed(sigma));
        double d2 = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            const double d = a(0, j) - a(2, j);
            d2 += d * d;
        }
        CHECK(k.k(0, 2) == doctest::Approx(std::exp(-d2 / (2 * sigma * sigma))).epsilon(1e-14));
    }

    SUBCASE("median sigma on degenerate (constant-row) input errors") {
        Matrix c(4, 2, 3.5);
        CHECK_THROWS_AS(gram(c, KernelSpec::rbf_median(0.5)), DegenerateRepresentationError);
        // fixed sigma has no median to resolve and stays defined
        CHECK_NOTHROW(gram(c, KernelSpec::rbf_fixed(1.0)));
    }

    SUBCASE("invalid sigma rejected") {
        CHECK_THROWS_AS(gram(a, KernelSpec::rbf_fixed(0.0)), std::invalid_argument);
    }
}

TEST_CASE("hsic: hand values and errors") {
    // Kj = 11^T is annihilated by H
    Rng rng(3);
    const KernelMatrix ones{Matrix(4, 4, 1.0)};
    const KernelMatrix ki{random_symmetric(rng, 4)};
    CHECK(std::abs(hsic(ki, ones)) < 1e-12);
    CHECK(std::abs(hsic(ones, ki)) < 1e-12);

    // hsic(I3, I3) = tr(H)/(L-1)^2 = 2/4
    const KernelMatrix i3{Matrix::identity(3)};
    CHECK(hsic(i3, i3) == doctest::Approx(0.5).epsilon(1e-15));

    const KernelMatrix i4{Matrix::identity(4)};
    CHECK_THROWS_AS(hsic(i3, i4), std::invalid_argument);
}

TEST_CASE("hsic: equals nested-loop oracle, symmetric, self-nonnegative") {
    Rng rng(42);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t l = 2 + rep % 5;
        const KernelMatrix ki{random_symmetric(rng, l)};
        const KernelMatrix kj{random_symmetric(rng, l)};
        const double fast = hsic(ki, kj);
        CHECK(std::abs(fast - hsic_oracle(ki.k, kj.k)) < 1e-12);
        CHECK(std::abs(fast - hsic(kj, ki)) < 1e-12);
        CHECK(hsic(ki, ki) >= 0.0);
        CHECK(hsic(kj, kj) >= 0.0);
    }
}

TEST_CASE("cka: identity, scaling, symmetry, range") {
    Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const Matrix a = random_matrix(rng, 6, 3);
        const Matrix b = random_matrix(rng, 6, 4);
        const KernelMatrix ka = gram(center_columns(a), KernelSpec::linear());
        const KernelMatrix kb = gram(center_columns(b), KernelSpec::linear());

        CHECK(cka::cka(ka, ka) == doctest::Approx(1.0).epsilon(1e-12));

        // scale numerator and denominator equally
        KernelMatrix scaled = ka;
        for (auto& v : scaled.k.data) v *= 3.7;
        CHECK(std::abs(cka::cka(scaled, kb) - cka::cka(ka, kb)) < 1e-12);

        const double v = cka::cka(ka, kb);
        CHECK(std::abs(v - cka::cka(kb, ka)) < 1e-12);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("cka: degenerate kernel errors") {
    // constant representation rows -> K = c 11^T -> zero self-HSIC
    const KernelMatrix flat{Matrix(5, 5, 2.0)};
    const KernelMatrix ok{Matrix::identity(5)};
    CHECK_THROWS_AS(cka::cka(flat, ok), DegenerateRepresentationError);
    CHECK_THROWS_AS(cka::cka(ok, flat), DegenerateRepresentationError);
}

TEST_CASE("cka: orthogonal-transform invariance (linear kernel)") {
    Rng rng(19);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t l = 4 + rep % 5;
        const std::size_t d = 2 + rep % 3;
        const Matrix a = center_columns(random_matrix(rng, l, d));
        const Matrix b = center_columns(random_matrix(rng, l, d + 1));
        const Matrix q = random_orthogonal(rng, d);
        const Matrix aq = matmul(a, q);

        const KernelMatrix ka = gram(a, KernelSpec::linear());
        const KernelMatrix kaq = gram(aq, KernelSpec::linear());
        const KernelMatrix kb = gram(b, KernelSpec::linear());
        CHECK(std::abs(cka::cka(ka, kb) - cka::cka(kaq, kb)) < 1e-8);
        CHECK(cka::cka(ka, kaq) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("linear_cka: hand cases") {
    Rng rng(23);
    const Matrix a = random_matrix(rng, 6, 3);
    CHECK(linear_cka(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    // centered columns with orthogonal spans as L-vectors -> zero numerator
    const Matrix ai = Matrix::from_rows({{1}, {-1}, {1}, {-1}});
    const Matrix aj = Matrix::from_rows({{1}, {1}, {-1}, {-1}});
    CHECK(linear_cka(ai, aj) == doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(linear_cka(Matrix(6, 2, 5.0), a), DegenerateRepresentationError);
    CHECK_THROWS_AS(linear_cka(Matrix(3, 2), Matrix(4, 2)), std::invalid_argument);
}

TEST_CASE("linear_cka: isotropic-scaling invariance") {
    Rng rng(29);
    const Matrix a = random_matrix(rng, 8, 3);
    const Matrix b = random_matrix(rng, 8, 5);
    const double base = linear_cka(a, b);
    for (double c : {1e-3, 1.0, 1e3}) {
        Matrix ca = a;
        for (auto& v : ca.data) v *= c;
        CHECK(std::abs(linear_cka(ca, b) - base) < 1e-10);
    }
}

TEST_CASE("linear_cka equals kernel-path cka on centered inputs (>=100 instances)") {
    Rng rng(31);
    for (int rep = 0; rep < 120; ++rep) {
        const std::size_t l = 4 + rep % 8;
        const Matrix ai = center_columns(random_matrix(rng, l, 2 + rep % 4));
        const Matrix aj = center_columns(random_matrix(rng, l, 2 + (rep + 1) % 5));
        const double closed = linear_cka(ai, aj);
        const double path = cka::cka(gram(ai, KernelSpec::linear()), gram(aj, KernelSpec::linear()));
        CHECK(std::abs(closed - path) < 1e-10);
    }
}

TEST_CASE("aggregate_kernels") {
    const KernelMatrix k1{Matrix::identity(2)};
    const KernelMatrix k2{Matrix::from_rows({{3, 1}, {1, 3}})};

    SUBCASE("single kernel, weight 1 is identity operation") {
        const std::vector<KernelMatrix> ks{k1};
        const std::vector<double> w{1.0};
        CHECK(aggregate_kernels(ks, w).k == k1.k);
    }

    SUBCASE("two identical kernels, half weights") {
        const std::vector<KernelMatrix> ks{k2, k2};
        const std::vector<double> w{0.5, 0.5};
        CHECK(max_abs_diff(aggregate_kernels(ks, w).k, k2.k) < 1e-15);
    }

    SUBCASE("weighted sum arithmetic") {
        const std::vector<KernelMatrix> ks{k1, k2};
        const std::vector<double> w{0.25, 0.75};
        const Matrix expected = Matrix::from_rows({{2.5, 0.75}, {0.75, 2.5}});
        CHECK(max_abs_diff(aggregate_kernels(ks, w).k, expected) < 1e-15);
    }

    SUBCASE("errors") {
        const std::vector<KernelMatrix> mismatched{k1, KernelMatrix{Matrix::identity(3)}};
        const std::vector<double> w{0.5, 0.5};
        CHECK_THROWS_AS(aggregate_kernels(mismatched, w), std::invalid_argument);

        const std::vector<KernelMatrix> ks{k1, k2};
        const std::vector<double> zeros{0.0, 0.0};
        CHECK_THROWS_AS(aggregate_kernels(ks, zeros), std::invalid_argument);
        const std::vector<double> neg{0.5, -0.5};
        CHECK_THROWS_AS(aggregate_kernels(ks, neg), std::invalid_argument);
    }
}

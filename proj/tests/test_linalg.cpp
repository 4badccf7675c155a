#include "ouspec/linalg.hpp"
#include "ouspec/rng.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace ouspec;

TEST_CASE("jacobi matches the closed-form 2x2 oracle") {
    la::Mat m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = m(1, 0) = 1.0;
    m(1, 1) = 1.0;
    const auto eig = la::jacobi_eigen(m);
    const auto expect = testing::eig2x2(1.0, 1.0, 1.0);
    CHECK(eig.values[0] == doctest::Approx(expect[0]).epsilon(1e-12));  // 0
    CHECK(eig.values[1] == doctest::Approx(expect[1]).epsilon(1e-12));  // 2
}

TEST_CASE("jacobi reconstructs random symmetric matrices") {
    for (int n : {1, 2, 3, 5, 8}) {
        Xorshift64Star rng(42 + static_cast<std::uint64_t>(n));
        la::Mat g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rng.gauss();
        la::Mat a = la::symmetrize(g);
        const auto eig = la::jacobi_eigen(a);

        la::Mat rebuilt(n, n);
        for (int k = 0; k < n; ++k) {
            Vec v = eig.vectors.col(k);
            rebuilt += eig.values[k] * la::outer(v, v);
        }
        CHECK(la::max_abs(a - rebuilt) < 1e-12 * (1.0 + la::fro_norm(a)));

        // Orthonormal frame.
        la::Mat vtv = la::transpose(eig.vectors) * eig.vectors;
        CHECK(la::max_abs(vtv - la::Mat::identity(n)) < 1e-12);

        for (int k = 0; k + 1 < n; ++k) CHECK(eig.values[k] <= eig.values[k + 1]);
    }
}

TEST_CASE("jacobi handles the zero matrix") {
    la::Mat z(3, 3);
    const auto eig = la::jacobi_eigen(z);
    for (double v : eig.values) CHECK(v == 0.0);
}

TEST_CASE("rank decomposition finds kernel dimensions") {
    // Rank-1 projector in Sym coordinates: map x -> p x p with p = e11.
    la::Mat m(3, 3);
    m(0, 0) = 1.0;  // keeps only the first coordinate
    const auto rd = la::rank_decompose(m);
    CHECK(rd.rank == 1);

    // Null vectors really annihilate.
    for (int k = rd.rank; k < 3; ++k) {
        Vec v = rd.right_vectors.col(k);
        Vec mv(3, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mv[i] += m(i, j) * v[j];
        double norm = 0.0;
        for (double x : mv) norm += x * x;
        CHECK(std::sqrt(norm) < 1e-12);
    }
}

TEST_CASE("column space basis is orthonormal and spans") {
    Xorshift64Star rng(7);
    la::Mat a(4, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = rng.gauss();
    // Third column is a combination of the first two: rank 2.
    for (int i = 0; i < 4; ++i) a(i, 2) = 2.0 * a(i, 0) - a(i, 1);

    la::Mat basis = la::column_space(a);
    CHECK(basis.cols() == 2);
    la::Mat btb = la::transpose(basis) * basis;
    CHECK(la::max_abs(btb - la::Mat::identity(2)) < 1e-10);
}

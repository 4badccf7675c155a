#pragma once

// Test-only oracles, independent of the library's decomposition path.

#include "ouspec/element.hpp"

#include <array>
#include <cmath>

namespace ouspec::testing {

/// Closed-form eigenvalues of [[a, b], [b, c]], ascending.
inline std::array<double, 2> eig2x2(double a, double b, double c) {
    const double mean = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return {mean - rad, mean + rad};
}

inline Element mat2(const Ctx& ctx, double a, double b, double c) {
    la::Mat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = m(1, 0) = b;
    m(1, 1) = c;
    return Element::from_matrix(ctx, m);
}

inline Element diag(const Ctx& ctx, const Vec& values) {
    la::Mat m(ctx->n, ctx->n);
    for (int i = 0; i < ctx->n; ++i) m(i, i) = values[i];
    return Element::from_matrix(ctx, m);
}

/// Brute-force matrix product oracle for small checks.
inline la::Mat mul(const la::Mat& x, const la::Mat& y) { return x * y; }

} // namespace ouspec::testing

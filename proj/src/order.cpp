#include "ouspec/order.hpp"

#include <cmath>

namespace ouspec {

double order_unit_norm(const Element& a) {
    const auto& ctx = *a.ctx();
    if (ctx.kind == ModelKind::matrix) {
        la::SymEigen eig = la::jacobi_eigen(a.to_matrix());
        return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    }
    return std::abs(a.alpha()) + ctx.oracle->dual_norm(a.spin_y());
}

double cone_violation(const Element& a) {
    const auto& ctx = *a.ctx();
    if (ctx.kind == ModelKind::matrix) {
        la::SymEigen eig = la::jacobi_eigen(a.to_matrix());
        return std::max(0.0, -eig.values.front());
    }
    return std::max(0.0, ctx.oracle->dual_norm(a.spin_y()) - a.alpha());
}

bool cone_contains(const Element& a) {
    const double tol = a.ctx()->eps_cone * std::max(1.0, order_unit_norm(a));
    return cone_violation(a) <= tol;
}

bool order_leq(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    return cone_contains(b - a);
}

bool is_effect(const Element& e) {
    return cone_contains(e) && order_leq(e, Element::unit(e.ctx()));
}

bool approx_eq(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    const double scale = 1.0 + std::max(order_unit_norm(a), order_unit_norm(b));
    return order_unit_norm(a - b) <= a.ctx()->eps_eq * scale;
}

double order_unit_norm_bisect(const Element& a, int iterations) {
    double hi = 0.0;
    for (double c : a.coords()) hi += std::abs(c);
    if (hi == 0.0) return 0.0;
    double lo = 0.0;

    const Element one = Element::unit(a.ctx());
    auto inside = [&](double lambda) {
        // -lambda <= a <= lambda, with the raw (tolerance-free) cone test.
        return cone_violation(lambda * one - a) == 0.0 &&
               cone_violation(a + lambda * one) == 0.0;
    };
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (inside(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace ouspec

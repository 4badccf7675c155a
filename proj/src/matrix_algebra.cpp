#include "ouspec/matrix_algebra.hpp"

#include <cmath>

namespace ouspec {

namespace {

void require_matrix_ctx(const Element& a, const char* who) {
    require(a.ctx()->kind == ModelKind::matrix, std::string(who) + ": matrix model only");
}

} // namespace

Element jordan_product(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    require_matrix_ctx(a, "jordan_product");
    la::Mat ma = a.to_matrix(), mb = b.to_matrix();
    la::Mat ab = ma * mb;
    la::Mat ba = mb * ma;
    return Element::from_matrix(a.ctx(), 0.5 * (ab + ba));
}

Element triple_product(const Element& a, const Element& b, const Element& c) {
    return jordan_product(jordan_product(a, b), c) + jordan_product(jordan_product(b, c), a) -
           jordan_product(jordan_product(a, c), b);
}

Element quadratic_map(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    require_matrix_ctx(a, "quadratic_map");
    la::Mat ma = a.to_matrix();
    return Element::from_matrix(a.ctx(), ma * b.to_matrix() * ma);
}

Element mult_operator(const Element& a, const Element& x) {
    return jordan_product(a, x);
}

double mult_operator_identity_check(const Element& p, const Element& a) {
    require_matrix_projection(p);
    require_same_ctx(p, a);
    const Element comp = Element::unit(p.ctx()) - p;
    const Element up = quadratic_map(p, a);
    const Element tp = mult_operator(p, a);
    const Element r1 = up - (2.0 * mult_operator(p, tp) - tp);
    const Element r2 = tp - 0.5 * (a + up - quadratic_map(comp, a));
    return std::max(order_unit_norm(r1), order_unit_norm(r2));
}

double cluster_tau(const Element& a) {
    return 1e-8 * (1.0 + order_unit_norm(a));
}

EigenSystem eigen_decompose(const Element& a) {
    require_matrix_ctx(a, "eigen_decompose");
    const int n = a.ctx()->n;
    la::Mat m = a.to_matrix();
    la::SymEigen eig = la::jacobi_eigen(m);

    EigenSystem out;
    out.eigenvalues = eig.values;
    out.vectors = eig.vectors;

    const double tau = cluster_tau(a);
    std::vector<int> current{0};
    for (int i = 1; i < n; ++i) {
        if (out.eigenvalues[i] - out.eigenvalues[i - 1] > tau) {
            out.clusters.push_back(current);
            current.clear();
        }
        current.push_back(i);
    }
    out.clusters.push_back(current);

    for (const auto& cl : out.clusters) {
        double mean = 0.0;
        la::Mat proj(n, n);
        for (int idx : cl) {
            mean += out.eigenvalues[idx];
            Vec v = out.vectors.col(idx);
            proj += la::outer(v, v);
        }
        out.cluster_values.push_back(mean / static_cast<double>(cl.size()));
        out.cluster_projections.push_back(Element::from_matrix(a.ctx(), proj));
    }

    la::Mat rebuilt(n, n);
    for (int i = 0; i < n; ++i) {
        Vec v = out.vectors.col(i);
        rebuilt += out.eigenvalues[i] * la::outer(v, v);
    }
    out.reconstruction_residual = order_unit_norm(a - Element::from_matrix(a.ctx(), rebuilt));
    if (out.reconstruction_residual > 1e-9 * (1.0 + order_unit_norm(a)))
        throw numeric_error("eigen_decompose: reconstruction residual " +
                            std::to_string(out.reconstruction_residual));
    return out;
}

bool is_matrix_projection(const Element& p) {
    if (p.ctx()->kind != ModelKind::matrix) return false;
    if (order_unit_norm(jordan_product(p, p) - p) > 1e-9) return false;
    return cone_contains(p) && order_leq(p, Element::unit(p.ctx()));
}

void require_matrix_projection(const Element& p) {
    require(is_matrix_projection(p), "expected an idempotent 0 <= p <= 1");
}

Element lattice_meet(const Element& p, const Element& q) {
    require_matrix_projection(p);
    require_matrix_projection(q);
    require_same_ctx(p, q);
    const Element one = Element::unit(p.ctx());
    const Element gap = (one - p) + (one - q);

    la::SymEigen eig = la::jacobi_eigen(gap.to_matrix());
    const int n = p.ctx()->n;
    const double top = std::max(std::abs(eig.values.back()), 1.0);
    const double cut = 1e-8 * top;
    la::Mat proj(n, n);
    for (int i = 0; i < n; ++i) {
        const double lam = std::abs(eig.values[i]);
        if (lam <= cut) {
            Vec v = eig.vectors.col(i);
            proj += la::outer(v, v);
        } else if (lam < 1e3 * cut) {
            throw numeric_error("lattice_meet: rank decision ambiguous at tolerance (eigenvalue " +
                                std::to_string(eig.values[i]) + ")");
        }
    }
    Element meet = Element::from_matrix(p.ctx(), proj);
    require_matrix_projection(meet);
    return meet;
}

Element lattice_join(const Element& p, const Element& q) {
    const Element one = Element::unit(p.ctx());
    return one - lattice_meet(one - p, one - q);
}

bool operator_commute(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    require_matrix_ctx(a, "operator_commute");
    const Ctx& ctx = a.ctx();
    const int n = ctx->n;
    double worst = 0.0;
    for (int i = 0; i < n && worst <= 1e-9; ++i) {
        for (int j = i; j < n && worst <= 1e-9; ++j) {
            la::Mat e(n, n);
            e(i, j) = e(j, i) = 1.0;
            const Element basis = Element::from_matrix(ctx, e);
            const Element d = mult_operator(a, mult_operator(b, basis)) -
                              mult_operator(b, mult_operator(a, basis));
            worst = std::max(worst, order_unit_norm(d));
        }
    }
    return worst <= 1e-9;
}

namespace {

// Packed orthonormal coordinates on Sym(n): basis E_ii and (E_ij+E_ji)/sqrt2
// under the Frobenius inner product.
la::Mat unpack_orthonormal(const Ctx& ctx, std::span<const double> packed) {
    const int n = ctx->n;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    la::Mat m(n, n);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++idx)
            m(i, j) = m(j, i) = (i == j) ? packed[idx] : inv_sqrt2 * packed[idx];
    return m;
}

void pack_orthonormal(const la::Mat& m, la::Mat& out, int col) {
    const int n = m.rows();
    const double sqrt2 = std::sqrt(2.0);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++idx)
            out(idx, col) = (i == j) ? m(i, j) : sqrt2 * m(i, j);
}

// d x d matrix of a linear map on Sym(n) in the orthonormal basis.
template <typename MapFn>
la::Mat operator_matrix(const Ctx& ctx, MapFn&& map) {
    const int n = ctx->n;
    const int d = n * (n + 1) / 2;
    la::Mat op(d, d);
    Vec unit(d, 0.0);
    for (int k = 0; k < d; ++k) {
        unit[k] = 1.0;
        la::Mat e = unpack_orthonormal(ctx, unit);
        unit[k] = 0.0;
        pack_orthonormal(map(e), op, k);
    }
    return op;
}

} // namespace

AnnihilatorReport annihilator_check(const Element& a) {
    require_matrix_ctx(a, "annihilator_check");
    require(cone_contains(a), "annihilator_check: a must be positive");
    const Ctx& ctx = a.ctx();
    const int n = ctx->n;
    const int d = n * (n + 1) / 2;
    const double tau = cluster_tau(a);

    EigenSystem eig = eigen_decompose(a);
    la::Mat s(n, n);
    for (size_t c = 0; c < eig.clusters.size(); ++c)
        if (eig.cluster_values[c] > tau) s += eig.cluster_projections[c].to_matrix();

    AnnihilatorReport out{Element::from_matrix(ctx, s),
                          Element::unit(ctx) - Element::from_matrix(ctx, s),
                          0, 0, 0.0, false};

    la::Mat ma = a.to_matrix();
    la::Mat mp = out.annihilator_p.to_matrix();

    // Route 1: kernel of x -> T_a x; for positive a this is {x : U_x(a) = 0}.
    la::Mat t_a = operator_matrix(ctx, [&](const la::Mat& x) {
        return la::Mat(0.5 * (ma * x + x * ma));
    });
    la::RankData kern = la::rank_decompose(t_a);
    out.kernel_dim = d - kern.rank;

    // Route 2: image of x -> U_p x with p = 1 - s(a) from the eigen oracle.
    la::Mat u_p = operator_matrix(ctx, [&](const la::Mat& x) {
        return la::Mat(mp * x * mp);
    });
    la::RankData img = la::rank_decompose(u_p);
    out.image_dim = img.rank;

    // Inclusion U_p(A) ⊆ ker T_a, then equality by dimension count.
    la::Mat img_basis = la::column_space(u_p);
    double worst = 0.0;
    for (int k = 0; k < img_basis.cols(); ++k) {
        Vec b = img_basis.col(k);
        const Element be = Element::from_matrix(ctx, unpack_orthonormal(ctx, b));
        worst = std::max(worst, order_unit_norm(mult_operator(a, be)));
    }
    out.inclusion_residual = worst;
    out.subspaces_match = (out.kernel_dim == out.image_dim) &&
                          worst <= 1e-8 * (1.0 + order_unit_norm(a));
    return out;
}

NormAxiomSlacks jb_norm_axioms(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    const double na = order_unit_norm(a), nb = order_unit_norm(b);
    const Element a2 = jordan_product(a, a);
    const Element b2 = jordan_product(b, b);
    NormAxiomSlacks s{};
    s.product = na * nb - order_unit_norm(jordan_product(a, b));
    s.square = na * na - order_unit_norm(a2);
    s.sum = order_unit_norm(a2 + b2) - order_unit_norm(a2);
    return s;
}

} // namespace ouspec

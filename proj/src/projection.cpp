#include "ouspec/projection.hpp"

#include <cmath>

namespace ouspec {

Projection Projection::from_matrix(Element p) {
    require(p.ctx()->kind == ModelKind::matrix, "Projection: matrix element expected");
    require_matrix_projection(p);
    return Projection(std::move(p));
}

Projection Projection::from_spin(const Ctx& ctx, SpinProjection sp) {
    Projection p(sp.to_element(ctx));
    p.spin_ = std::move(sp);
    return p;
}

Projection Projection::zero(const Ctx& ctx) {
    if (ctx->kind == ModelKind::spin) return from_spin(ctx, SpinProjection::zero());
    return Projection(Element::zero(ctx));
}

Projection Projection::one(const Ctx& ctx) {
    if (ctx->kind == ModelKind::spin) return from_spin(ctx, SpinProjection::one());
    return Projection(Element::unit(ctx));
}

const SpinProjection& Projection::spin_data() const {
    require(spin_.has_value(), "Projection: not a spin projection");
    return *spin_;
}

Projection Projection::complement() const {
    if (is_spin()) return from_spin(ctx(), spin_->complement(*ctx()->oracle));
    Projection c(Element::unit(ctx()) - element_);
    return c;
}

Element compress(const Projection& p, const Element& a) {
    require(p.ctx()->compatible(*a.ctx()), "compress: context mismatch");
    if (p.is_spin()) return compression_apply(a.ctx(), p.spin_data(), a);
    return quadratic_map(p.element(), a);
}

Element half_mult(const Projection& p, const Element& a) {
    return 0.5 * (a + compress(p, a) - compress(p.complement(), a));
}

bool projection_equal(const Projection& p, const Projection& q) {
    return approx_eq(p.element(), q.element());
}

bool projection_leq(const Projection& p, const Projection& q) {
    return order_leq(p.element(), q.element());
}

namespace {

// Noise floor: spectral points this close to zero are zero. Keeps
// non-Lipschitz calculus (fractional roots) from amplifying eigensolver
// noise on exact kernels; well below the cluster threshold tau.
void snap_zero(Vec& jumps, double scale) {
    for (double& j : jumps)
        if (std::abs(j) <= 1e-12 * scale) j = 0.0;
}

} // namespace

SpectralData spectral_data(const Element& a) {
    const Ctx& ctx = a.ctx();
    const double scale = 1.0 + order_unit_norm(a);
    SpectralData out;
    if (ctx->kind == ModelKind::matrix) {
        EigenSystem eig = eigen_decompose(a);
        for (size_t c = 0; c < eig.clusters.size(); ++c) {
            out.jumps.push_back(eig.cluster_values[c]);
            out.atoms.push_back(Projection::from_matrix(eig.cluster_projections[c]));
        }
        snap_zero(out.jumps, scale);
        return out;
    }
    const double alpha = a.alpha();
    const double beta = ctx->oracle->dual_norm(a.spin_y());
    const double tau = 1e-8 * (1.0 + order_unit_norm(a));
    if (2.0 * beta <= tau) {
        // Degenerate direction: one jump, full projection.
        out.jumps.push_back(alpha);
        out.atoms.push_back(Projection::one(ctx));
        return out;
    }
    Vec unit(a.spin_y().begin(), a.spin_y().end());
    for (double& u : unit) u /= beta;
    const SpinProjection p = SpinProjection::atom(*ctx->oracle, unit);
    out.jumps = {alpha - beta, alpha + beta};
    out.atoms.push_back(Projection::from_spin(ctx, p.complement(*ctx->oracle)));
    out.atoms.push_back(Projection::from_spin(ctx, p));
    snap_zero(out.jumps, scale);
    return out;
}

Projection support_projection(const Element& a) {
    const double tau = 1e-8 * (1.0 + order_unit_norm(a));
    SpectralData sd = spectral_data(a);
    if (a.ctx()->kind == ModelKind::matrix) {
        la::Mat s(a.ctx()->n, a.ctx()->n);
        for (size_t i = 0; i < sd.jumps.size(); ++i)
            if (std::abs(sd.jumps[i]) > tau) s += sd.atoms[i].element().to_matrix();
        return Projection::from_matrix(Element::from_matrix(a.ctx(), s));
    }
    // Spin: at most two atoms; sum the qualifying ones by tag logic.
    std::vector<const Projection*> keep;
    for (size_t i = 0; i < sd.jumps.size(); ++i)
        if (std::abs(sd.jumps[i]) > tau) keep.push_back(&sd.atoms[i]);
    if (keep.empty()) return Projection::zero(a.ctx());
    if (keep.size() == sd.atoms.size()) return Projection::one(a.ctx());
    return *keep.front();
}

} // namespace ouspec

#include "ouspec/spin_factor.hpp"

#include "ouspec/rng.hpp"

#include <cmath>

namespace ouspec {

namespace {

void require_spin_ctx(const Ctx& ctx, const char* who) {
    require(ctx->kind == ModelKind::spin, std::string(who) + ": spin model only");
}

Vec scaled(std::span<const double> v, double s) {
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

} // namespace

SpinProjection SpinProjection::atom(const NormOracle& oracle, Vec y) {
    require(std::abs(oracle.dual_norm(y) - 1.0) <= 1e-10,
            "SpinProjection::atom: direction must be a unit dual vector");
    SpinProjection p(Tag::atom);
    p.xy_ = oracle.duality_map(y);
    p.y_ = std::move(y);
    return p;
}

Element SpinProjection::to_element(const Ctx& ctx) const {
    require_spin_ctx(ctx, "SpinProjection");
    switch (tag_) {
        case Tag::zero: return Element::zero(ctx);
        case Tag::one: return Element::unit(ctx);
        case Tag::atom: break;
    }
    require(static_cast<int>(y_.size()) == ctx->n, "SpinProjection: dimension mismatch");
    return Element::from_spin(ctx, 0.5, scaled(y_, 0.5));
}

SpinProjection SpinProjection::complement(const NormOracle& oracle) const {
    switch (tag_) {
        case Tag::zero: return one();
        case Tag::one: return zero();
        case Tag::atom: break;
    }
    return atom(oracle, scaled(y_, -1.0));
}

Vec duality_map(const NormOracle& oracle, std::span<const double> y) {
    return oracle.duality_map(y);
}

SpinProjection sharp_projection(const NormOracle& oracle, std::span<const double> y) {
    const double ny = oracle.dual_norm(y);
    require(ny > 0.0, "sharp_projection: y must be nonzero");
    return SpinProjection::atom(oracle, scaled(y, 1.0 / ny));
}

Element compression_apply(const Ctx& ctx, const SpinProjection& p, const Element& a) {
    require_spin_ctx(ctx, "compression_apply");
    require(a.ctx()->compatible(*ctx), "compression_apply: context mismatch");
    switch (p.tag()) {
        case SpinProjection::Tag::zero: return Element::zero(ctx);
        case SpinProjection::Tag::one: return a;
        case SpinProjection::Tag::atom: break;
    }
    const double coeff = a.alpha() + la::dot(a.spin_y(), p.norming_point());
    return coeff * p.to_element(ctx);
}

JbGap jb_condition_gap(const Ctx& ctx, const SpinProjection& p, const SpinProjection& q) {
    require_spin_ctx(ctx, "jb_condition_gap");
    const NormOracle& oracle = *ctx->oracle;
    const SpinProjection pc = p.complement(oracle);
    const SpinProjection qc = q.complement(oracle);

    const Element lhs = compression_apply(ctx, p, q.to_element(ctx)) +
                        compression_apply(ctx, pc, qc.to_element(ctx));
    const Element rhs = compression_apply(ctx, q, p.to_element(ctx)) +
                        compression_apply(ctx, qc, pc.to_element(ctx));
    JbGap gap{order_unit_norm(lhs - rhs), 0.0};
    if (p.is_atom() && q.is_atom()) {
        gap.symmetry_defect = std::abs(la::dot(q.direction(), p.norming_point()) -
                                       la::dot(p.direction(), q.norming_point()));
    }
    return gap;
}

Element spin_square(const Element& a) {
    const Ctx& ctx = a.ctx();
    require_spin_ctx(ctx, "spin_square");
    const double alpha = a.alpha();
    const double beta = ctx->oracle->dual_norm(a.spin_y());
    // Two-point spectrum {alpha - beta, alpha + beta}; g(t) = t^2 acts on the
    // jumps. The vector part collapses to 2 alpha w, direction-free at w = 0.
    return Element::from_spin(ctx, alpha * alpha + beta * beta, scaled(a.spin_y(), 2.0 * alpha));
}

Element quarter_square_product(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    return 0.25 * (spin_square(a + b) - spin_square(a - b));
}

double bilinearity_defect(const Element& a, const Element& b, const Element& c) {
    const Element lhs = quarter_square_product(a + b, c);
    const Element rhs = quarter_square_product(a, c) + quarter_square_product(b, c);
    return order_unit_norm(lhs - rhs);
}

Element spin_jordan_l2(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    require_spin_ctx(a.ctx(), "spin_jordan_l2");
    const double alpha = a.alpha(), beta = b.alpha();
    Vec v(a.ctx()->n);
    auto ya = a.spin_y();
    auto yb = b.spin_y();
    for (int i = 0; i < a.ctx()->n; ++i) v[i] = alpha * yb[i] + beta * ya[i];
    return Element::from_spin(a.ctx(), alpha * beta + la::dot(ya, yb), v);
}

Vec psi_map(const NormOracle& oracle, std::span<const double> y) {
    const double ny = oracle.dual_norm(y);
    if (ny == 0.0) return Vec(y.size(), 0.0);
    Vec x = oracle.duality_map(scaled(y, 1.0 / ny));
    for (double& xi : x) xi *= ny;
    return x;
}

PsiGram psi_gram(const NormOracle& oracle, const std::vector<Vec>& basis_vectors, int samples,
                 std::uint64_t seed) {
    const int n = oracle.dim();
    PsiGram out;
    out.gram = la::Mat(static_cast<int>(basis_vectors.size()), static_cast<int>(basis_vectors.size()));
    std::vector<Vec> psi_of(basis_vectors.size());
    for (size_t j = 0; j < basis_vectors.size(); ++j) {
        require(oracle.dual_norm(basis_vectors[j]) > 0.0, "psi_gram: zero basis vector");
        psi_of[j] = psi_map(oracle, basis_vectors[j]);
    }
    for (size_t i = 0; i < basis_vectors.size(); ++i)
        for (size_t j = 0; j < basis_vectors.size(); ++j)
            out.gram(static_cast<int>(i), static_cast<int>(j)) =
                la::dot(basis_vectors[i], psi_of[j]);

    out.linearity_defect = 0.0;
    for (int t = 0; t < samples; ++t) {
        Xorshift64Star rng = trial_stream(seed, static_cast<std::uint64_t>(t));
        Vec y(n), z(n), w(n);
        for (int i = 0; i < n; ++i) y[i] = rng.gauss();
        for (int i = 0; i < n; ++i) z[i] = rng.gauss();
        for (int i = 0; i < n; ++i) w[i] = rng.gauss();
        const double nw = oracle.dual_norm(w);
        if (nw == 0.0) continue;
        for (double& wi : w) wi /= nw;

        Vec sum(n);
        for (int i = 0; i < n; ++i) sum[i] = y[i] + z[i];
        const Vec ps = psi_map(oracle, sum);
        const Vec py = psi_map(oracle, y);
        const Vec pz = psi_map(oracle, z);
        Vec diff(n);
        for (int i = 0; i < n; ++i) diff[i] = ps[i] - py[i] - pz[i];
        out.linearity_defect = std::max(out.linearity_defect, std::abs(la::dot(w, diff)));
    }
    return out;
}

} // namespace ouspec

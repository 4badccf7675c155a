#include "ouspec/compression.hpp"

#include "ouspec/rng.hpp"

#include <algorithm>
#include <cmath>

namespace ouspec {

Element model_product(const Element& a, const Element& b) {
    if (a.ctx()->kind == ModelKind::matrix) return jordan_product(a, b);
    return quarter_square_product(a, b);
}

std::optional<Projection> as_projection(const Element& e) {
    const Ctx& ctx = e.ctx();
    if (ctx->kind == ModelKind::matrix) {
        if (!is_matrix_projection(e)) return std::nullopt;
        return Projection::from_matrix(e);
    }
    const double tol = 1e-8;
    const double alpha = e.alpha();
    const double ny = ctx->oracle->dual_norm(e.spin_y());
    if (std::abs(alpha) <= tol && ny <= tol) return Projection::zero(ctx);
    if (std::abs(alpha - 1.0) <= tol && ny <= tol) return Projection::one(ctx);
    if (std::abs(alpha - 0.5) <= tol && std::abs(ny - 0.5) <= tol) {
        Vec y(e.spin_y().begin(), e.spin_y().end());
        for (double& yi : y) yi /= ny;
        return Projection::from_spin(ctx, SpinProjection::atom(*ctx->oracle, y));
    }
    return std::nullopt;
}

AxiomResiduals verify_compression_axioms(const Projection& p, std::span<const Element> effects) {
    const Ctx& ctx = p.ctx();
    const Element one = Element::unit(ctx);
    const Projection comp = p.complement();

    AxiomResiduals out{0.0, 0.0, 0.0, static_cast<int>(effects.size())};
    out.f1 = order_unit_norm(compress(p, one) - p.element());

    for (const Element& f : effects) {
        // F2 on e = J_p(f), scaled into [0, p].
        Element e = compress(p, f);
        const double scale = std::max(1.0, order_unit_norm(e));
        e *= 1.0 / scale;
        out.f2 = std::max(out.f2, order_unit_norm(compress(p, e) - e));

        // F3 on kernel effects e' = J_{1-p}(f): must sit below 1 - p.
        const Element k = compress(comp, f);
        out.f3 = std::max(out.f3, cone_violation(comp.element() - k));
    }
    return out;
}

namespace {

// p + r as a certified projection, or nullopt when the sum is not one.
std::optional<Projection> sum_projection(const Projection& p, const Projection& r) {
    const Element sum = p.element() + r.element();
    const Ctx& ctx = p.ctx();
    if (ctx->kind == ModelKind::matrix) {
        if (!is_matrix_projection(sum)) return std::nullopt;
        return Projection::from_matrix(sum);
    }
    return as_projection(sum);
}

} // namespace

BaseIdentityResult verify_base_identity(const Projection& p, const Projection& q,
                                        const Projection& r, std::span<const Element> samples) {
    const Ctx& ctx = p.ctx();
    const Element one = Element::unit(ctx);
    BaseIdentityResult out{false, 0.0, ""};

    if (!order_leq(p.element() + q.element() + r.element(), one)) {
        out.note = "rejected: p + q + r <= 1 fails";
        return out;
    }
    auto pr = sum_projection(p, r);
    auto qr = sum_projection(q, r);
    if (!pr || !qr) {
        out.note = "rejected: p + r or q + r is not a projection";
        return out;
    }
    out.admissible = true;
    for (const Element& a : samples) {
        const Element lhs = compress(*pr, compress(*qr, a));
        out.residual = std::max(out.residual, order_unit_norm(lhs - compress(r, a)));
    }
    return out;
}

double commute_residual(const Element& a, const Projection& p) {
    return order_unit_norm(a - compress(p, a) - compress(p.complement(), a));
}

bool commutes(const Element& a, const Projection& p) {
    return commute_residual(a, p) <= 1e-9;
}

bool projections_compatible(const Projection& p, const Projection& q) {
    return commutes(q.element(), p);
}

CompatCertificate mackey_compatible(const Element& e, const Element& f) {
    require_same_ctx(e, f);
    auto pe = as_projection(e);
    auto pf = as_projection(f);
    if (pe && pf) {
        const bool ok = projections_compatible(*pe, *pf);
        return {ok ? Tri::yes : Tri::no, "projection-commute"};
    }
    if (order_leq(e, f) || order_leq(f, e)) return {Tri::yes, "order"};
    if (e.ctx()->kind == ModelKind::matrix) {
        if (operator_commute(e, f)) return {Tri::yes, "operator-commute"};
        return {Tri::unknown, "no certificate fired"};
    }
    // Spin effects share a block iff their vector parts are aligned.
    const NormOracle& oracle = *e.ctx()->oracle;
    const double ne = oracle.dual_norm(e.spin_y());
    const double nf = oracle.dual_norm(f.spin_y());
    if (ne <= 1e-12 || nf <= 1e-12) return {Tri::yes, "scalar"};
    double worst = 0.0;
    for (int i = 0; i < e.ctx()->n; ++i)
        worst = std::max(worst, std::abs(e.spin_y()[i] / ne - f.spin_y()[i] / nf));
    double worst_neg = 0.0;
    for (int i = 0; i < e.ctx()->n; ++i)
        worst_neg = std::max(worst_neg, std::abs(e.spin_y()[i] / ne + f.spin_y()[i] / nf));
    if (std::min(worst, worst_neg) <= 1e-9) return {Tri::yes, "aligned"};
    return {Tri::unknown, "no certificate fired"};
}

namespace {

double zero_threshold(const Element& a) {
    return 1e-8 * (1.0 + order_unit_norm(a));
}

Projection join_atoms(const Ctx& ctx, const SpectralData& sd, const std::vector<int>& keep) {
    if (ctx->kind == ModelKind::matrix) {
        la::Mat s(ctx->n, ctx->n);
        for (int i : keep) s += sd.atoms[i].element().to_matrix();
        return Projection::from_matrix(Element::from_matrix(ctx, s));
    }
    if (keep.empty()) return Projection::zero(ctx);
    if (keep.size() == sd.atoms.size()) return Projection::one(ctx);
    return sd.atoms[keep.front()];
}

OrthogonalDecomposition decompose_with(const Projection& p, const Element& a) {
    OrthogonalDecomposition d{p, compress(p, a), -1.0 * compress(p.complement(), a),
                              Element::zero(a.ctx())};
    d.abs = d.plus + d.minus;
    return d;
}

} // namespace

OrthogonalDecomposition orthogonal_decomposition(const Element& a) {
    const Ctx& ctx = a.ctx();
    const SpectralData sd = spectral_data(a);
    const double tau = zero_threshold(a);

    if (ctx->kind == ModelKind::spin && sd.jumps.size() == 1) {
        // Degenerate direction: canonical rule p = one for alpha >= 0.
        const Projection p = sd.jumps[0] >= 0.0 ? Projection::one(ctx) : Projection::zero(ctx);
        return decompose_with(p, a);
    }
    std::vector<int> keep;
    for (size_t i = 0; i < sd.jumps.size(); ++i)
        if (sd.jumps[i] > tau) keep.push_back(static_cast<int>(i));
    return decompose_with(join_atoms(ctx, sd, keep), a);
}

OrthogonalDecomposition orthogonal_decomposition_search(const Element& a) {
    CommutantQuery cq = bicommutant(a);
    std::vector<Projection> candidates;
    for (std::uint32_t mask : cq.member_masks) {
        Projection q = cq.projection_for(mask);
        if (cone_contains(compress(q, a)) && cone_contains(-1.0 * compress(q.complement(), a)))
            candidates.push_back(std::move(q));
    }
    if (candidates.empty()) throw numeric_error("orthogonal_decomposition_search: empty P±(a)");
    for (const Projection& cand : candidates) {
        bool least = true;
        for (const Projection& other : candidates)
            if (!projection_leq(cand, other)) { least = false; break; }
        if (least) return decompose_with(cand, a);
    }
    throw numeric_error("orthogonal_decomposition_search: no least element found");
}

Projection rickart_map(const Element& a) {
    return support_projection(a).complement();
}

RickartAudit rickart_audit(const Element& a) {
    const Ctx& ctx = a.ctx();
    const double tau = zero_threshold(a);
    Projection star = rickart_map(a);

    RickartAudit out{star,
                     std::max(commute_residual(a, star), order_unit_norm(compress(star, a))),
                     true,
                     0,
                     false,
                     0.0,
                     0.0,
                     false,
                     std::nullopt};

    CommutantQuery cq = bicommutant(a);
    for (std::uint32_t mask : cq.member_masks) {
        const Projection p = cq.projection_for(mask);
        const bool lhs = projection_leq(p, star);
        const bool rhs = commutes(a, p) && order_unit_norm(compress(p, a)) <= tau;
        if (lhs != rhs) out.biconditional_ok = false;
        ++out.members_checked;
    }

    // Mixed-sign probe: J_q(a) = 0 alone does not put q below a*. Built only
    // from clearly separated sign clusters so the incompatibility is visible.
    const double sep = 1e-3;
    if (ctx->kind == ModelKind::matrix) {
        EigenSystem eig = eigen_decompose(a);
        int neg = -1, pos = -1;
        for (size_t c = 0; c < eig.clusters.size(); ++c) {
            if (eig.cluster_values[c] < -sep) neg = eig.clusters[c].front();
            if (eig.cluster_values[c] > sep && pos < 0) pos = eig.clusters[c].front();
        }
        if (neg >= 0 && pos >= 0) {
            const double lp = eig.eigenvalues[pos], ln = eig.eigenvalues[neg];
            Vec up = eig.vectors.col(pos), un = eig.vectors.col(neg);
            Vec v(ctx->n);
            for (int i = 0; i < ctx->n; ++i)
                v[i] = std::sqrt(-ln) * up[i] + std::sqrt(lp) * un[i];
            const double nv2 = la::dot(v, v);
            la::Mat q = (1.0 / nv2) * la::outer(v, v);
            const Projection qp = Projection::from_matrix(Element::from_matrix(ctx, q));
            out.witness_constructed = true;
            out.witness_commute_residual = commute_residual(a, qp);
            out.witness_compress_residual = order_unit_norm(compress(qp, a));
            out.witness_below_star = projection_leq(qp, star);
            out.witness = qp.element();
        }
    } else if (ctx->oracle->is_lp() && std::abs(ctx->oracle->exponent() - 2.0) < 1e-12 &&
               ctx->n >= 2) {
        const SpectralData sd = spectral_data(a);
        if (sd.jumps.size() == 2 && sd.jumps.front() < -sep && sd.jumps.back() > sep) {
            // Unit z with <w, z> = -alpha: exists exactly when the spectrum
            // straddles zero (|alpha| < ||w||).
            const double alpha = a.alpha();
            auto w = a.spin_y();
            const double nw = std::sqrt(la::dot(w, w));
            Vec base(w.begin(), w.end());
            for (double& b : base) b *= -alpha / (nw * nw);
            // Orthogonal direction to fill the unit sphere.
            Vec perp(ctx->n, 0.0);
            int k = 0;
            for (int i = 1; i < ctx->n; ++i)
                if (std::abs(w[i]) < std::abs(w[k])) k = i;
            perp[k] = 1.0;
            const double proj = la::dot(perp, w) / (nw * nw);
            for (int i = 0; i < ctx->n; ++i) perp[i] -= proj * w[i];
            const double np = std::sqrt(la::dot(perp, perp));
            const double rem = 1.0 - (alpha * alpha) / (nw * nw);
            if (np > 1e-9 && rem > 1e-12) {
                for (int i = 0; i < ctx->n; ++i)
                    base[i] += std::sqrt(rem) * perp[i] / np;
                const Projection qp =
                    Projection::from_spin(ctx, SpinProjection::atom(*ctx->oracle, base));
                out.witness_constructed = true;
                out.witness_commute_residual = commute_residual(a, qp);
                out.witness_compress_residual = order_unit_norm(compress(qp, a));
                out.witness_below_star = projection_leq(qp, star);
                out.witness = qp.element();
            }
        }
    }
    return out;
}

Projection projection_cover(const Element& e) {
    require(is_effect(e), "projection_cover: e must be an effect");
    return support_projection(e);
}

Projection CommutantQuery::projection_for(std::uint32_t mask) const {
    const Ctx& ctx = generator.ctx();
    std::vector<int> keep;
    for (size_t i = 0; i < span_basis.size(); ++i)
        if (mask & (1u << i)) keep.push_back(static_cast<int>(i));
    if (ctx->kind == ModelKind::matrix) {
        la::Mat s(ctx->n, ctx->n);
        for (int i : keep) s += span_basis[i].element().to_matrix();
        return Projection::from_matrix(Element::from_matrix(ctx, s));
    }
    if (keep.empty()) return Projection::zero(ctx);
    if (keep.size() == span_basis.size()) return Projection::one(ctx);
    return span_basis[keep.front()];
}

std::vector<Projection> CommutantQuery::all_projections() const {
    std::vector<Projection> out;
    out.reserve(member_masks.size());
    for (std::uint32_t m : member_masks) out.push_back(projection_for(m));
    return out;
}

CommutantQuery bicommutant(const Element& a) {
    SpectralData sd = spectral_data(a);
    const size_t k = sd.atoms.size();
    if (k > 20)
        throw numeric_error("bicommutant: refusing cluster count " + std::to_string(k) + " > 20");

    CommutantQuery out{a, std::move(sd.atoms), sd.jumps, {}, 0.0};
    out.member_masks.resize(static_cast<size_t>(1) << k);
    for (std::uint32_t m = 0; m < out.member_masks.size(); ++m) out.member_masks[m] = m;

    Element rebuilt = Element::zero(a.ctx());
    for (size_t i = 0; i < k; ++i) rebuilt += out.atom_values[i] * out.span_basis[i].element();
    out.span_residual = order_unit_norm(a - rebuilt);
    return out;
}

Tri extended_commute(const Element& a, const Element& b) {
    require_same_ctx(a, b);
    const SpectralData sa = spectral_data(a);
    const SpectralData sb = spectral_data(b);
    for (const Projection& p : sa.atoms)
        for (const Projection& q : sb.atoms)
            if (!projections_compatible(p, q)) return Tri::no;
    return Tri::yes;
}

namespace {

Projection atom_meet(const Projection& t, const Projection& g) {
    const Ctx& ctx = t.ctx();
    if (ctx->kind == ModelKind::matrix) return
        Projection::from_matrix(lattice_meet(t.element(), g.element()));
    // Spin tag logic (inputs are compatible by construction).
    const SpinProjection& st = t.spin_data();
    const SpinProjection& sg = g.spin_data();
    using Tag = SpinProjection::Tag;
    if (st.tag() == Tag::zero || sg.tag() == Tag::zero) return Projection::zero(ctx);
    if (st.tag() == Tag::one) return g;
    if (sg.tag() == Tag::one) return t;
    double diff = 0.0;
    for (size_t i = 0; i < st.direction().size(); ++i)
        diff = std::max(diff, std::abs(st.direction()[i] - sg.direction()[i]));
    if (diff <= 1e-9) return t;
    return Projection::zero(ctx);
}

bool projection_is_zero(const Projection& p) {
    return order_unit_norm(p.element()) < 0.5;
}

} // namespace

BlockReport block_and_cblock(const Ctx& ctx, std::vector<Projection> generators,
                             const BlockOptions& opt) {
    BlockReport out;
    for (size_t i = 0; i < generators.size(); ++i)
        for (size_t j = i + 1; j < generators.size(); ++j)
            if (!projections_compatible(generators[i], generators[j])) {
                out.rejected = true;
                out.note = "rejected: incompatible generators";
                return out;
            }

    // Boolean closure: refine the atom partition by each generator.
    std::vector<Projection> atoms{Projection::one(ctx)};
    auto refine = [&](const Projection& g) {
        std::vector<Projection> next;
        const Projection gc = g.complement();
        for (const Projection& t : atoms) {
            Projection m1 = atom_meet(t, g);
            Projection m2 = atom_meet(t, gc);
            if (!projection_is_zero(m1)) next.push_back(std::move(m1));
            if (!projection_is_zero(m2)) next.push_back(std::move(m2));
        }
        atoms = std::move(next);
    };
    for (const Projection& g : generators) {
        refine(g);
        if (atoms.size() > 20) {
            out.rejected = true;
            out.note = "rejected: atom count exceeds 20";
            return out;
        }
    }

    // Greedy maximal extension within the declared pool: spectral projections
    // of seeded elements compressed into the current atoms.
    for (int k = 0; k < opt.pool_elements; ++k) {
        Xorshift64Star rng = trial_stream(opt.seed, static_cast<std::uint64_t>(k));
        Vec coords(ctx->coord_count());
        for (double& c : coords) c = rng.gauss();
        const Element raw(ctx, coords);
        Element pooled = Element::zero(ctx);
        for (const Projection& t : atoms) pooled += compress(t, raw);
        for (const Projection& s : spectral_data(pooled).atoms) {
            bool compat = true;
            for (const Projection& t : atoms)
                if (!projections_compatible(t, s)) { compat = false; break; }
            if (compat) refine(s);
        }
        if (atoms.size() >= static_cast<size_t>(ctx->coord_count())) break;
    }

    out.atom_count = static_cast<int>(atoms.size());
    out.span_dim = out.atom_count;

    // Joint commutant dimension: kernel of the stacked maps
    // a -> a - J_t(a) - J_{t'}(a) over the coordinate basis.
    const int d = ctx->coord_count();
    la::Mat stacked(static_cast<int>(atoms.size()) * d, d);
    for (int col = 0; col < d; ++col) {
        Vec unit(d, 0.0);
        unit[col] = 1.0;
        const Element basis(ctx, unit);
        int row0 = 0;
        for (const Projection& t : atoms) {
            const Element r = basis - compress(t, basis) - compress(t.complement(), basis);
            for (int i = 0; i < d; ++i) stacked(row0 + i, col) = r.coords()[i];
            row0 += d;
        }
    }
    la::RankData rd = la::rank_decompose(stacked);
    out.commutant_dim = d - rd.rank;
    out.span_matches = (out.commutant_dim == out.atom_count);

    // Closure cross-check (matrix): meets recomputed through the range
    // intersection must agree with the Boolean structure of the atoms.
    if (ctx->kind == ModelKind::matrix) {
        for (size_t i = 0; i + 1 < atoms.size(); ++i) {
            const Element orth = lattice_meet(atoms[i].element(), atoms[i + 1].element());
            out.closure_residual = std::max(out.closure_residual, order_unit_norm(orth));
            if (i + 2 < atoms.size()) {
                const Element u1 = atoms[i].element() + atoms[i + 1].element();
                const Element u2 = atoms[i + 1].element() + atoms[i + 2].element();
                const Element mid = lattice_meet(u1, u2);
                out.closure_residual = std::max(
                    out.closure_residual, order_unit_norm(mid - atoms[i + 1].element()));
            }
        }
    }

    // Associativity sampling inside span(B).
    Xorshift64Star rng = trial_stream(opt.seed, 0xb10cULL);
    for (int s = 0; s < opt.samples; ++s) {
        auto span_elem = [&] {
            Element e = Element::zero(ctx);
            for (const Projection& t : atoms) e += rng.gauss() * t.element();
            return e;
        };
        const Element a = span_elem(), b = span_elem(), c = span_elem();
        const Element lhs = model_product(model_product(a, b), c);
        const Element rhs = model_product(a, model_product(b, c));
        out.associativity_residual =
            std::max(out.associativity_residual, order_unit_norm(lhs - rhs));
    }
    return out;
}

} // namespace ouspec

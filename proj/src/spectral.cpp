#include "ouspec/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ouspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Projection accumulate_atoms(const Ctx& ctx, const std::vector<Projection>& atoms, size_t upto) {
    // Sum of atoms[0..upto] as a certified projection.
    if (upto + 1 == atoms.size()) return Projection::one(ctx);
    if (ctx->kind == ModelKind::matrix) {
        la::Mat s(ctx->n, ctx->n);
        for (size_t i = 0; i <= upto; ++i) s += atoms[i].element().to_matrix();
        return Projection::from_matrix(Element::from_matrix(ctx, s));
    }
    return atoms[0];  // spin: at most two atoms, partial sum is the first
}

} // namespace

Projection SpectralResolution::at(double lambda) const {
    int idx = -1;
    for (size_t i = 0; i < jumps.size(); ++i)
        if (jumps[i] <= lambda) idx = static_cast<int>(i);
    if (idx < 0) return Projection::zero(ctx());
    return cumulative[idx];
}

SpectralResolution spectral_resolution(const Element& a) {
    SpectralData sd = spectral_data(a);
    SpectralResolution out;
    out.jumps = std::move(sd.jumps);
    out.atoms = std::move(sd.atoms);
    const Ctx& ctx = a.ctx();
    for (size_t i = 0; i < out.atoms.size(); ++i)
        out.cumulative.push_back(accumulate_atoms(ctx, out.atoms, i));

    for (size_t i = 0; i + 1 < out.cumulative.size(); ++i)
        if (!order_leq(out.cumulative[i].element(), out.cumulative[i + 1].element()))
            throw numeric_error("spectral_resolution: cumulative family not monotone");
    if (!approx_eq(out.cumulative.back().element(), Element::unit(ctx)))
        throw numeric_error("spectral_resolution: final cumulative projection is not 1");
    return out;
}

double resolution_definition_residual(const Element& a, const SpectralResolution& r,
                                      double lambda) {
    const Element shifted = a - Element::scalar(a.ctx(), lambda);
    const OrthogonalDecomposition d = orthogonal_decomposition(shifted);
    const Projection defined = rickart_map(d.plus);
    return order_unit_norm(r.at(lambda).element() - defined.element());
}

std::pair<double, double> spectral_bounds(const Element& a) {
    const SpectralResolution r = spectral_resolution(a);
    return {r.lower(), r.upper()};
}

std::pair<double, double> spectral_bounds_bisect(const Element& a, int iterations) {
    const double m = order_unit_norm(a) + 1.0;
    const Element one = Element::unit(a.ctx());
    auto leq = [&](const Element& x, const Element& y) {
        return cone_violation(y - x) == 0.0;  // raw cone membership
    };
    // L_a = sup { lambda : lambda 1 <= a }.
    double lo = -m, hi = m;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (leq(mid * one, a))
            lo = mid;
        else
            hi = mid;
    }
    const double lower = lo;
    // U_a = inf { lambda : a <= lambda 1 }.
    lo = -m;
    hi = m;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (leq(a, mid * one))
            hi = mid;
        else
            lo = mid;
    }
    return {lower, hi};
}

std::pair<Element, double> rs_integral_approx(const Element& a, double mesh) {
    require(mesh > 0.0, "rs_integral_approx: mesh must be positive");
    const SpectralResolution r = spectral_resolution(a);
    const double upper = r.upper();

    // Grid { upper - k * mesh }: each jump is charged to the nearest grid
    // point at or above it.
    Element sum = Element::zero(a.ctx());
    for (size_t j = 0; j < r.jumps.size(); ++j) {
        const double k = std::floor((upper - r.jumps[j]) / mesh);
        const double tag = upper - k * mesh;
        sum += tag * r.atoms[j].element();
    }
    return {sum, order_unit_norm(a - sum)};
}

// ---- Intervals -----------------------------------------------------------------

bool Interval::contains(double t, double tol) const {
    const bool above = lo_open ? (t > lo) : (t >= lo - tol);
    const bool below = hi_closed ? (t <= hi + tol) : (t < hi);
    return above && below;
}

bool IntervalSet::contains(double t, double tol) const {
    for (const Interval& p : parts)
        if (p.contains(t, tol)) return true;
    return false;
}

IntervalSet IntervalSet::half_open(const std::vector<std::pair<double, double>>& parts) {
    IntervalSet s;
    for (const auto& [u, v] : parts) {
        require(u < v, "IntervalSet: need u < v for (u, v]");
        s.parts.push_back(Interval{u, v, true, true});
    }
    return s;
}

IntervalSet IntervalSet::upto(double lambda) {
    IntervalSet s;
    s.parts.push_back(Interval{-kInf, lambda, true, true});
    return s;
}

IntervalSet IntervalSet::whole_line() {
    IntervalSet s;
    s.parts.push_back(Interval{-kInf, kInf, true, true});
    return s;
}

// ---- RealFunction ----------------------------------------------------------------

RealFunction RealFunction::identity() { return poly({0.0, 1.0}); }

RealFunction RealFunction::constant(double c) { return poly({c}); }

RealFunction RealFunction::poly(Vec coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    std::ostringstream name;
    name << "poly";
    for (double c : coeffs) name << ' ' << c;
    RealFunction f(Kind::poly, name.str());
    f.coeffs_ = std::move(coeffs);
    require(!f.coeffs_.empty(), "poly: needs at least one coefficient");
    return f;
}

RealFunction RealFunction::pos() { return RealFunction(Kind::pos, "pos"); }

RealFunction RealFunction::abs() { return RealFunction(Kind::abs, "abs"); }

RealFunction RealFunction::chi(double u, double v) {
    require(u < v, "chi: need u < v");
    std::ostringstream name;
    name << "chi " << u << ' ' << v;
    RealFunction f(Kind::chi, name.str());
    f.u_ = u;
    f.v_ = v;
    return f;
}

RealFunction RealFunction::root(int n) {
    require(n >= 1, "root: n >= 1");
    RealFunction f(Kind::root, "root " + std::to_string(n));
    f.nth_ = n;
    return f;
}

RealFunction RealFunction::from_eval(std::function<double(double)> f, std::string name) {
    RealFunction g(Kind::custom, std::move(name));
    g.eval_ = std::move(f);
    return g;
}

RealFunction RealFunction::parse(const std::string& spec) {
    std::istringstream in(spec);
    std::string head;
    if (!(in >> head)) throw contract_error("function spec: empty");
    if (head == "poly") {
        Vec coeffs;
        double c;
        while (in >> c) coeffs.push_back(c);
        if (coeffs.empty()) throw contract_error("function spec: poly needs coefficients");
        return poly(std::move(coeffs));
    }
    if (head == "pos") return pos();
    if (head == "abs") return abs();
    if (head == "chi") {
        double u, v;
        if (!(in >> u >> v)) throw contract_error("function spec: chi needs two bounds");
        return chi(u, v);
    }
    if (head == "root") {
        int n;
        if (!(in >> n)) throw contract_error("function spec: root needs an integer");
        return root(n);
    }
    throw contract_error("function spec: unknown head '" + head + "'");
}

double RealFunction::operator()(double t) const {
    double val = 0.0;
    switch (kind_) {
        case Kind::poly: {
            for (size_t i = coeffs_.size(); i-- > 0;) val = val * t + coeffs_[i];
            break;
        }
        case Kind::pos: val = std::max(t, 0.0); break;
        case Kind::abs: val = std::abs(t); break;
        case Kind::chi: val = (t > u_ && t <= v_) ? 1.0 : 0.0; break;
        case Kind::root: {
            if (t < -1e-9)
                throw numeric_error("root: spectrum point " + std::to_string(t) + " is negative");
            val = std::pow(std::max(t, 0.0), 1.0 / static_cast<double>(nth_));
            break;
        }
        case Kind::custom: val = eval_(t); break;
    }
    if (!std::isfinite(val))
        throw numeric_error("function '" + name_ + "' failed at spectrum point " +
                            std::to_string(t));
    return val;
}

bool RealFunction::has_preimage() const {
    switch (kind_) {
        case Kind::poly: return coeffs_.size() <= 3;
        case Kind::custom: return false;
        default: return true;
    }
}

IntervalSet RealFunction::preimage_leq(double lambda) const {
    require(has_preimage(),
            "preimage not declared for function '" + name_ + "' (monotone pieces unknown)");
    switch (kind_) {
        case Kind::poly: {
            const double c0 = coeffs_[0];
            const double c1 = coeffs_.size() > 1 ? coeffs_[1] : 0.0;
            const double c2 = coeffs_.size() > 2 ? coeffs_[2] : 0.0;
            if (c2 == 0.0 && c1 == 0.0)
                return lambda >= c0 ? IntervalSet::whole_line() : IntervalSet::empty();
            if (c2 == 0.0) {
                const double t = (lambda - c0) / c1;
                IntervalSet s;
                if (c1 > 0.0)
                    s.parts.push_back(Interval{-kInf, t, true, true});
                else
                    s.parts.push_back(Interval{t, kInf, false, true});
                return s;
            }
            const double h = -c1 / (2.0 * c2);
            const double kval = c0 - c1 * c1 / (4.0 * c2);
            const double rad = (lambda - kval) / c2;
            IntervalSet s;
            if (c2 > 0.0) {
                if (rad < 0.0) return IntervalSet::empty();
                const double w = std::sqrt(rad);
                s.parts.push_back(Interval{h - w, h + w, false, true});
            } else {
                if (rad <= 0.0) return IntervalSet::whole_line();
                const double w = std::sqrt(rad);
                s.parts.push_back(Interval{-kInf, h - w, true, true});
                s.parts.push_back(Interval{h + w, kInf, false, true});
            }
            return s;
        }
        case Kind::pos:
            return lambda < 0.0 ? IntervalSet::empty() : IntervalSet::upto(lambda);
        case Kind::abs: {
            if (lambda < 0.0) return IntervalSet::empty();
            IntervalSet s;
            s.parts.push_back(Interval{-lambda, lambda, false, true});
            return s;
        }
        case Kind::chi: {
            if (lambda < 0.0) return IntervalSet::empty();
            if (lambda >= 1.0) return IntervalSet::whole_line();
            IntervalSet s;
            s.parts.push_back(Interval{-kInf, u_, true, true});
            s.parts.push_back(Interval{v_, kInf, true, true});
            return s;
        }
        case Kind::root: {
            if (lambda < 0.0) return IntervalSet::empty();
            return IntervalSet::upto(std::pow(lambda, static_cast<double>(nth_)));
        }
        case Kind::custom: break;
    }
    throw contract_error("preimage_leq: unreachable");
}

// ---- Calculus ---------------------------------------------------------------------

Element continuous_fc(const Element& a, const RealFunction& g) {
    const SpectralResolution r = spectral_resolution(a);
    Element out = Element::zero(a.ctx());
    for (size_t i = 0; i < r.jumps.size(); ++i) out += g(r.jumps[i]) * r.atoms[i].element();
    return out;
}

Element borel_fc(const Element& a, const RealFunction& g) { return continuous_fc(a, g); }

Projection spectral_measure(const Element& a, const IntervalSet& B) {
    const SpectralResolution r = spectral_resolution(a);
    const Ctx& ctx = a.ctx();
    std::vector<int> keep;
    for (size_t i = 0; i < r.jumps.size(); ++i) {
        const double tol = 1e-9 * (1.0 + std::abs(r.jumps[i]));
        if (B.contains(r.jumps[i], tol)) keep.push_back(static_cast<int>(i));
    }
    if (keep.size() == r.atoms.size()) return Projection::one(ctx);
    if (ctx->kind == ModelKind::matrix) {
        la::Mat s(ctx->n, ctx->n);
        for (int i : keep) s += r.atoms[i].element().to_matrix();
        return Projection::from_matrix(Element::from_matrix(ctx, s));
    }
    if (keep.empty()) return Projection::zero(ctx);
    return r.atoms[keep.front()];
}

double pushforward_check(const Element& a, const RealFunction& g, double lambda) {
    require(g.has_preimage(), "pushforward_check: function must declare preimages");
    const Element b = continuous_fc(a, g);
    const Projection lhs = spectral_resolution(b).at(lambda);
    const Projection rhs = spectral_measure(a, g.preimage_leq(lambda));
    return order_unit_norm(lhs.element() - rhs.element());
}

Vec resolve_in_cc(const SpectralResolution& r, const Element& x) {
    Vec coeffs(r.atoms.size());
    Element rebuilt = Element::zero(x.ctx());
    for (size_t i = 0; i < r.atoms.size(); ++i) {
        const Element image = compress(r.atoms[i], x);
        const Vec& pc = r.atoms[i].element().coords();
        coeffs[i] = la::dot(image.coords(), pc) / la::dot(pc, pc);
        rebuilt += coeffs[i] * r.atoms[i].element();
    }
    if (order_unit_norm(rebuilt - x) > 1e-8 * (1.0 + order_unit_norm(x)))
        throw contract_error("resolve_in_cc: element does not lie in the span of the atoms");
    return coeffs;
}

Element cc_join(const SpectralResolution& r, const Element& x, const Element& y) {
    const Vec cx = resolve_in_cc(r, x);
    const Vec cy = resolve_in_cc(r, y);
    Element out = Element::zero(x.ctx());
    for (size_t i = 0; i < r.atoms.size(); ++i)
        out += std::max(cx[i], cy[i]) * r.atoms[i].element();
    return out;
}

} // namespace ouspec

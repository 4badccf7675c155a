#include "ouspec/element.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ouspec {

Element::Element(Ctx ctx, Vec coords) : ctx_(std::move(ctx)), coords_(std::move(coords)) {
    require(static_cast<bool>(ctx_), "Element: null context");
    require(static_cast<int>(coords_.size()) == ctx_->coord_count(),
            "Element: coordinate length does not match context");
    for (double c : coords_)
        require(std::isfinite(c), "Element: coordinates must be finite");
}

Element Element::zero(const Ctx& ctx) {
    return Element(ctx, Vec(ctx->coord_count(), 0.0));
}

Element Element::unit(const Ctx& ctx) {
    return scalar(ctx, 1.0);
}

Element Element::scalar(const Ctx& ctx, double c) {
    Vec v(ctx->coord_count(), 0.0);
    if (ctx->kind == ModelKind::matrix) {
        int idx = 0;
        for (int i = 0; i < ctx->n; ++i)
            for (int j = i; j < ctx->n; ++j, ++idx)
                if (i == j) v[idx] = c;
    } else {
        v[0] = c;
    }
    return Element(ctx, std::move(v));
}

la::Mat Element::to_matrix() const {
    require(ctx_->kind == ModelKind::matrix, "Element: not a matrix-model element");
    const int n = ctx_->n;
    la::Mat m(n, n);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++idx) m(i, j) = m(j, i) = coords_[idx];
    return m;
}

Element Element::from_matrix(const Ctx& ctx, const la::Mat& m) {
    require(ctx->kind == ModelKind::matrix, "Element: not a matrix-model context");
    const int n = ctx->n;
    require(m.rows() == n && m.cols() == n, "Element: matrix size mismatch");
    Vec v(ctx->coord_count());
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++idx) v[idx] = 0.5 * (m(i, j) + m(j, i));
    return Element(ctx, std::move(v));
}

double Element::alpha() const {
    require(ctx_->kind == ModelKind::spin, "Element: not a spin-model element");
    return coords_[0];
}

std::span<const double> Element::spin_y() const {
    require(ctx_->kind == ModelKind::spin, "Element: not a spin-model element");
    return {coords_.data() + 1, static_cast<size_t>(ctx_->n)};
}

Element Element::from_spin(const Ctx& ctx, double alpha, std::span<const double> y) {
    require(ctx->kind == ModelKind::spin, "Element: not a spin-model context");
    require(static_cast<int>(y.size()) == ctx->n, "Element: spin vector size mismatch");
    Vec v(ctx->coord_count());
    v[0] = alpha;
    for (int i = 0; i < ctx->n; ++i) v[i + 1] = y[i];
    return Element(ctx, std::move(v));
}

Element& Element::operator+=(const Element& o) {
    require_same_ctx(*this, o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

Element& Element::operator-=(const Element& o) {
    require_same_ctx(*this, o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

Element& Element::operator*=(double s) {
    for (double& c : coords_) c *= s;
    return *this;
}

Element operator+(Element a, const Element& b) { a += b; return a; }
Element operator-(Element a, const Element& b) { a -= b; return a; }
Element operator-(Element a) { a *= -1.0; return a; }
Element operator*(double s, Element a) { a *= s; return a; }

void require_same_ctx(const Element& a, const Element& b) {
    require(a.ctx()->compatible(*b.ctx()), "elements belong to different model contexts");
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string to_text(const Element& a) {
    std::ostringstream s;
    const auto& ctx = *a.ctx();
    if (ctx.kind == ModelKind::matrix) {
        s << "matrix n " << ctx.n << " rowmajor";
        la::Mat m = a.to_matrix();
        for (int i = 0; i < ctx.n; ++i)
            for (int j = 0; j < ctx.n; ++j) s << ' ' << fmt(m(i, j));
    } else {
        require(ctx.oracle->is_lp(), "to_text: only lp spin models have a text form");
        s << "spin p " << fmt(ctx.oracle->exponent()) << " alpha " << fmt(a.alpha()) << " y";
        for (double yi : a.spin_y()) s << ' ' << fmt(yi);
    }
    return s.str();
}

std::pair<Ctx, Element> parse_element_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    if (!(in >> tok)) throw contract_error("element text: empty input");

    if (tok == "matrix") {
        std::string key;
        int n = 0;
        if (!(in >> key >> n) || key != "n" || n < 1)
            throw contract_error("element text: expected 'matrix n <n>'");
        if (!(in >> key) || key != "rowmajor")
            throw contract_error("element text: expected 'rowmajor'");
        la::Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(in >> m(i, j))) throw contract_error("element text: expected " +
                                                           std::to_string(n * n) + " floats");
        Ctx ctx = make_matrix_context(n);
        return {ctx, Element::from_matrix(ctx, m)};
    }
    if (tok == "spin") {
        std::string key;
        double p = 0.0, alpha = 0.0;
        if (!(in >> key >> p) || key != "p")
            throw contract_error("element text: expected 'spin p <p>'");
        if (!(in >> key >> alpha) || key != "alpha")
            throw contract_error("element text: expected 'alpha <float>'");
        if (!(in >> key) || key != "y")
            throw contract_error("element text: expected 'y <floats>'");
        Vec y;
        double v;
        while (in >> v) y.push_back(v);
        if (y.empty()) throw contract_error("element text: spin vector must be nonempty");
        Ctx ctx = make_spin_context(NormOracle::lp(static_cast<int>(y.size()), p));
        return {ctx, Element::from_spin(ctx, alpha, y)};
    }
    throw contract_error("element text: unknown model tag '" + tok + "'");
}

Element parse_element_text(const Ctx& ctx, const std::string& text) {
    auto [parsed_ctx, elem] = parse_element_text(text);
    require(ctx->compatible(*parsed_ctx), "element text does not match the expected context");
    return Element(ctx, elem.coords());
}

} // namespace ouspec

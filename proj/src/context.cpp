#include "ouspec/context.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ouspec {

namespace {

double lp_norm(std::span<const double> x, double p) {
    double s = 0.0;
    for (double xi : x) s += std::pow(std::abs(xi), p);
    return std::pow(s, 1.0 / p);
}

} // namespace

NormOracle NormOracle::lp(int dim, double exponent) {
    require(dim >= 1, "NormOracle: dim >= 1");
    require(exponent > 1.0 && std::isfinite(exponent), "NormOracle: lp exponent must be in (1, inf)");
    NormOracle o;
    o.dim_ = dim;
    o.is_lp_ = true;
    o.p_ = exponent;
    o.q_ = exponent / (exponent - 1.0);
    char buf[48];
    std::snprintf(buf, sizeof buf, "lp:%.17g", exponent);
    o.id_ = buf;
    return o;
}

NormOracle NormOracle::custom(int dim, std::string name, NormFn primal, NormFn dual,
                              DualityFn duality) {
    require(dim >= 1, "NormOracle: dim >= 1");
    require(static_cast<bool>(primal) && static_cast<bool>(dual),
            "NormOracle: custom oracle needs primal and dual evaluators");
    NormOracle o;
    o.dim_ = dim;
    o.is_lp_ = false;
    o.id_ = "custom:" + name;
    o.primal_ = std::move(primal);
    o.dual_ = std::move(dual);
    o.duality_ = std::move(duality);
    return o;
}

double NormOracle::norm(std::span<const double> x) const {
    require(static_cast<int>(x.size()) == dim_, "NormOracle: dimension mismatch");
    return is_lp_ ? lp_norm(x, p_) : primal_(x);
}

double NormOracle::dual_norm(std::span<const double> y) const {
    require(static_cast<int>(y.size()) == dim_, "NormOracle: dimension mismatch");
    return is_lp_ ? lp_norm(y, q_) : dual_(y);
}

Vec NormOracle::ascent_duality(std::span<const double> y) const {
    // Maximize <y, x> over the primal unit sphere by projected ascent.
    // Start at y normalized in the primal norm (the documented selection rule).
    Vec x(y.begin(), y.end());
    double nx = norm(x);
    if (nx <= 0.0) throw numeric_error("duality_map: degenerate start vector");
    for (double& xi : x) xi /= nx;

    auto objective = [&](const Vec& v) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += y[i] * v[i];
        return s;
    };

    double step = 1.0;
    double best = objective(x);
    for (int it = 0; it < 4000 && step > 1e-10; ++it) {
        Vec cand(dim_);
        for (int i = 0; i < dim_; ++i) cand[i] = x[i] + step * y[i];
        const double cn = norm(cand);
        if (cn <= 0.0) { step *= 0.5; continue; }
        for (double& ci : cand) ci /= cn;
        const double val = objective(cand);
        if (val > best + 1e-16) {
            x = std::move(cand);
            best = val;
        } else {
            step *= 0.5;
        }
    }
    return x;
}

Vec NormOracle::duality_map(std::span<const double> y) const {
    require(static_cast<int>(y.size()) == dim_, "NormOracle: dimension mismatch");
    const double ny = dual_norm(y);
    require(std::abs(ny - 1.0) <= 1e-8, "duality_map: input must be a unit dual vector");

    Vec x;
    if (is_lp_) {
        // (x_y)_i = sign(y_i) |y_i|^{q-1}; then ||x_y||_p = ||y||_q^{q-1} = 1.
        x.resize(dim_);
        for (int i = 0; i < dim_; ++i) {
            const double a = std::abs(y[i]);
            x[i] = (y[i] >= 0 ? 1.0 : -1.0) * std::pow(a, q_ - 1.0);
        }
    } else if (duality_) {
        x = duality_(y);
        require(static_cast<int>(x.size()) == dim_, "duality_map: evaluator returned wrong dimension");
    } else {
        x = ascent_duality(y);
    }

    const double nx = norm(x);
    double pairing = 0.0;
    for (int i = 0; i < dim_; ++i) pairing += y[i] * x[i];
    if (std::abs(nx - 1.0) > 1e-8 || std::abs(pairing - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << "duality_map: post-check failed for oracle " << id_
            << " (||x_y|| = " << nx << ", <y,x_y> = " << pairing << "; witness y =";
        for (double yi : y) msg << ' ' << yi;
        msg << ")";
        throw numeric_error(msg.str());
    }
    return x;
}

std::string ModelContext::descriptor() const {
    std::ostringstream s;
    if (kind == ModelKind::matrix) {
        s << "matrix:" << n;
    } else if (oracle->is_lp()) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.17g", oracle->exponent());
        s << "spin:" << buf << ":" << n;
    } else {
        s << "spin:" << oracle->id() << ":" << n;
    }
    return s.str();
}

bool ModelContext::compatible(const ModelContext& other) const {
    if (kind != other.kind || n != other.n) return false;
    if (kind == ModelKind::spin && oracle->id() != other.oracle->id()) return false;
    return true;
}

namespace {

void check_tols(double eps_cone, double eps_eq) {
    require(eps_cone > 0.0 && eps_cone < 1e-3, "ModelContext: eps_cone must be in (0, 1e-3)");
    require(eps_eq > 0.0 && eps_eq < 1e-3, "ModelContext: eps_eq must be in (0, 1e-3)");
}

} // namespace

Ctx make_matrix_context(int n, double eps_cone, double eps_eq) {
    require(n >= 1, "ModelContext: n >= 1");
    check_tols(eps_cone, eps_eq);
    auto ctx = std::make_shared<ModelContext>();
    ctx->kind = ModelKind::matrix;
    ctx->n = n;
    ctx->eps_cone = eps_cone;
    ctx->eps_eq = eps_eq;
    return ctx;
}

Ctx make_spin_context(NormOracle oracle, double eps_cone, double eps_eq) {
    check_tols(eps_cone, eps_eq);
    auto ctx = std::make_shared<ModelContext>();
    ctx->kind = ModelKind::spin;
    ctx->n = oracle.dim();
    ctx->oracle = std::move(oracle);
    ctx->eps_cone = eps_cone;
    ctx->eps_eq = eps_eq;
    return ctx;
}

Ctx parse_model(const std::string& descriptor) {
    const auto bad = [&] {
        throw contract_error("bad model descriptor '" + descriptor +
                             "' (expected matrix:N or spin:P:N)");
    };
    const auto colon = descriptor.find(':');
    if (colon == std::string::npos) bad();
    const std::string head = descriptor.substr(0, colon);
    try {
        if (head == "matrix") {
            const int n = std::stoi(descriptor.substr(colon + 1));
            return make_matrix_context(n);
        }
        if (head == "spin") {
            const auto colon2 = descriptor.find(':', colon + 1);
            if (colon2 == std::string::npos) bad();
            const double p = std::stod(descriptor.substr(colon + 1, colon2 - colon - 1));
            const int n = std::stoi(descriptor.substr(colon2 + 1));
            require(p >= 1.1 && p <= 10.0, "spin model exponent restricted to [1.1, 10]");
            return make_spin_context(NormOracle::lp(n, p));
        }
    } catch (const contract_error&) {
        throw;
    } catch (const std::exception&) {
        bad();
    }
    bad();
    return nullptr;
}

} // namespace ouspec

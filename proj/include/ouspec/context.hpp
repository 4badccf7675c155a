#pragma once

#include "ouspec/common.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

namespace ouspec {

// Norm package for X = R^n: primal norm on X, dual norm on X*, and the
// duality (norming-point) map sending a unit dual vector y to x_y with
// ||x_y|| = 1 and <y, x_y> = 1. lp oracles use closed forms; custom
// oracles plug in three evaluators (the duality map is optional and falls
// back to projected ascent on the primal unit sphere).
class NormOracle {
public:
    using NormFn = std::function<double(std::span<const double>)>;
    using DualityFn = std::function<Vec(std::span<const double>)>;

    static NormOracle lp(int dim, double exponent);
    static NormOracle custom(int dim, std::string name, NormFn primal, NormFn dual,
                             DualityFn duality = {});

    int dim() const { return dim_; }
    bool is_lp() const { return is_lp_; }
    double exponent() const { return p_; }
    double dual_exponent() const { return q_; }
    const std::string& id() const { return id_; }

    double norm(std::span<const double> x) const;
    double dual_norm(std::span<const double> y) const;

    // Requires dual_norm(y) = 1 within 1e-8. Validates the result to 1e-8
    // and throws numeric_error with a witness if a custom map fails.
    Vec duality_map(std::span<const double> y) const;

private:
    NormOracle() = default;
    Vec ascent_duality(std::span<const double> y) const;

    int dim_ = 0;
    bool is_lp_ = true;
    double p_ = 2.0, q_ = 2.0;
    std::string id_;
    NormFn primal_, dual_;
    DualityFn duality_;
};

enum class ModelKind { matrix, spin };

// Which concrete order unit space an Element lives in, plus the numeric
// tolerances every operation is interpreted against.
struct ModelContext {
    ModelKind kind;
    int n;                             // matrix size | spin dimension
    std::optional<NormOracle> oracle;  // spin only
    double eps_cone;                   // relative cone-test base
    double eps_eq;                     // equality-test base

    int coord_count() const {
        return kind == ModelKind::matrix ? n * (n + 1) / 2 : n + 1;
    }
    std::string descriptor() const;
    bool compatible(const ModelContext& other) const;
};

using Ctx = std::shared_ptr<const ModelContext>;

Ctx make_matrix_context(int n, double eps_cone = 1e-9, double eps_eq = 1e-9);
Ctx make_spin_context(NormOracle oracle, double eps_cone = 1e-9, double eps_eq = 1e-9);

/// Parses "matrix:N" or "spin:P:N" (lp exponent P in [1.1, 10]).
Ctx parse_model(const std::string& descriptor);

} // namespace ouspec

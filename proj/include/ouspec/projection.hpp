#pragma once

#include "ouspec/matrix_algebra.hpp"
#include "ouspec/spin_factor.hpp"

namespace ouspec {

// Model-tagged sharp element: a certified matrix idempotent, or a
// SpinProjection. All compression-base and spectral machinery goes through
// this type.
class Projection {
public:
    /// Certifies idempotency (1e-9) and 0 <= p <= 1; throws contract_error.
    static Projection from_matrix(Element p);
    static Projection from_spin(const Ctx& ctx, SpinProjection sp);
    static Projection zero(const Ctx& ctx);
    static Projection one(const Ctx& ctx);

    const Ctx& ctx() const { return element_.ctx(); }
    const Element& element() const { return element_; }
    bool is_spin() const { return spin_.has_value(); }
    const SpinProjection& spin_data() const;

    Projection complement() const;

private:
    explicit Projection(Element e) : element_(std::move(e)) {}
    Element element_;
    std::optional<SpinProjection> spin_;
};

/// J_p(a): U_p in the matrix model, the explicit atom compression in the
/// spin model.
Element compress(const Projection& p, const Element& a);

/// T_p(a) = (a + J_p(a) - J_{1-p}(a)) / 2, built from the compressions.
Element half_mult(const Projection& p, const Element& a);

bool projection_equal(const Projection& p, const Projection& q);
bool projection_leq(const Projection& p, const Projection& q);

// Finite spectrum of an element: ascending distinct jumps with one atom
// projection each; atoms sum to the unit. The jump dedup threshold is the
// eigen cluster threshold tau = 1e-8 (1 + ||a||_1).
struct SpectralData {
    Vec jumps;
    std::vector<Projection> atoms;
};

SpectralData spectral_data(const Element& a);

/// Carrier s(a): join of the atoms whose |jump| exceeds tau.
Projection support_projection(const Element& a);

} // namespace ouspec

#pragma once

#include "ouspec/order.hpp"

#include <cstdint>

namespace ouspec {

// Sharp projection in the spin model: zero, one, or an atom 1/2 (1, y)
// with y a unit dual vector. Atoms cache the norming point x_y.
class SpinProjection {
public:
    enum class Tag { zero, one, atom };

    static SpinProjection zero() { return SpinProjection(Tag::zero); }
    static SpinProjection one() { return SpinProjection(Tag::one); }
    /// y must be a unit dual vector (within 1e-10); use sharp_projection to normalize.
    static SpinProjection atom(const NormOracle& oracle, Vec y);

    Tag tag() const { return tag_; }
    bool is_atom() const { return tag_ == Tag::atom; }
    const Vec& direction() const { return y_; }       // unit dual y
    const Vec& norming_point() const { return xy_; }  // x_y

    Element to_element(const Ctx& ctx) const;
    SpinProjection complement(const NormOracle& oracle) const;

private:
    explicit SpinProjection(Tag t) : tag_(t) {}
    Tag tag_;
    Vec y_, xy_;
};

/// Norming point x_y of a unit dual vector (delegates to the oracle and
/// revalidates; deterministic for a fixed oracle).
Vec duality_map(const NormOracle& oracle, std::span<const double> y);

/// Normalizes y to unit dual norm and returns the atom 1/2 (1, y); y = 0 is
/// a contract violation.
SpinProjection sharp_projection(const NormOracle& oracle, std::span<const double> y);

/// J_p(a): atom case (alpha + <w, x_y>) p; zero -> 0; one -> a.
Element compression_apply(const Ctx& ctx, const SpinProjection& p, const Element& a);

struct JbGap {
    double eq7_residual;     // || J_p(q)+J_{1-p}(1-q) - J_q(p)-J_{1-q}(1-p) ||_1
    double symmetry_defect;  // |<z, x_y> - <y, x_z>| for atom pairs, else 0
};

JbGap jb_condition_gap(const Ctx& ctx, const SpinProjection& p, const SpinProjection& q);

/// Square through the two-point spectral form of (alpha, w).
Element spin_square(const Element& a);

/// a o b = 1/4 [ (a+b)^2 - (a-b)^2 ], squares taken spectrally.
Element quarter_square_product(const Element& a, const Element& b);

/// || (a+b) o c - a o c - b o c ||_1 for the quarter-square product.
double bilinearity_defect(const Element& a, const Element& b, const Element& c);

/// Hilbert-space Jordan product (alpha,y) o (beta,z) = (alpha beta + <y,z>,
/// alpha z + beta y); meaningful for the l2 oracle.
Element spin_jordan_l2(const Element& a, const Element& b);

/// psi(y) = ||y|| x_{y/||y||}, psi(0) = 0.
Vec psi_map(const NormOracle& oracle, std::span<const double> y);

struct PsiGram {
    la::Mat gram;             // G_ij = <v_i, psi(v_j)>
    double linearity_defect;  // max |<w, psi(y+z) - psi(y) - psi(z)>| over samples
};

PsiGram psi_gram(const NormOracle& oracle, const std::vector<Vec>& basis_vectors,
                 int samples = 100, std::uint64_t seed = 0);

} // namespace ouspec

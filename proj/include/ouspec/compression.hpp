#pragma once

#include "ouspec/projection.hpp"

#include <cstdint>
#include <optional>

namespace ouspec {

/// Jordan product of the model: symmetrized matrix product, or the
/// quarter-square product in the spin model.
Element model_product(const Element& a, const Element& b);

/// Recognize an element as a certified projection of its model.
std::optional<Projection> as_projection(const Element& e);

// ---- Compression axioms ----------------------------------------------------

struct AxiomResiduals {
    double f1;  // ||J_p(1) - p||
    double f2;  // max ||J_p(e) - e|| on e = J_p(f), f sampled
    double f3;  // max cone-violation of (1-p) - e on kernel effects e = J_{1-p}(f)
    int samples;
    double max() const { return std::max(f1, std::max(f2, f3)); }
};

AxiomResiduals verify_compression_axioms(const Projection& p, std::span<const Element> effects);

// ---- Compression base identity ---------------------------------------------

struct BaseIdentityResult {
    bool admissible;   // p + q + r <= 1 and the needed sums are projections
    double residual;   // max over samples of ||J_{p+r}(J_{q+r}(a)) - J_r(a)||
    std::string note;
};

BaseIdentityResult verify_base_identity(const Projection& p, const Projection& q,
                                        const Projection& r, std::span<const Element> samples);

// ---- Commutation -----------------------------------------------------------

/// || a - J_p(a) - J_{1-p}(a) ||_1.
double commute_residual(const Element& a, const Projection& p);
bool commutes(const Element& a, const Projection& p);

enum class Tri { yes, no, unknown };

struct CompatCertificate {
    Tri verdict;
    std::string certificate;  // which rule fired
};

/// Mackey compatibility: decided for projection pairs (via commutation);
/// certified for general effects (order or commutation certificates only).
CompatCertificate mackey_compatible(const Element& e, const Element& f);

/// Definitive for projections: q in C(p) within 1e-9.
bool projections_compatible(const Projection& p, const Projection& q);

// ---- Comparability ----------------------------------------------------------

struct OrthogonalDecomposition {
    Projection p;
    Element plus;   // J_p(a)
    Element minus;  // -J_{1-p}(a)
    Element abs;    // plus + minus
};

/// Spectral construction: p joins the strictly positive clusters (matrix),
/// or the canonical atom rule in the spin model (p = one for degenerate
/// a = alpha 1 with alpha >= 0, p = zero otherwise).
OrthogonalDecomposition orthogonal_decomposition(const Element& a);

/// Independent route: least projection in P(a) separating signs.
OrthogonalDecomposition orthogonal_decomposition_search(const Element& a);

// ---- Rickart mapping ---------------------------------------------------------

/// a* = 1 - s(a).
Projection rickart_map(const Element& a);

struct RickartAudit {
    Projection star;
    double star_residual;     // max(commute residual, ||J_{a*}(a)||)
    bool biconditional_ok;    // p <= a*  <=>  a in C(p) and J_p(a) = 0, over P(a)
    int members_checked;
    // Mixed-sign probe: a projection with J_q(a) = 0 that does not commute
    // with a (so q <= a* must fail). Matrix model and l2 spin only.
    bool witness_constructed;
    double witness_commute_residual;
    double witness_compress_residual;
    bool witness_below_star;
    std::optional<Element> witness;
};

RickartAudit rickart_audit(const Element& a);

/// Least projection dominating the effect e: its carrier s(e).
Projection projection_cover(const Element& e);

// ---- Bicommutant -------------------------------------------------------------

// P(a) as the Boolean algebra of cluster unions; CC(a) spanned by the atoms.
struct CommutantQuery {
    Element generator;
    std::vector<Projection> span_basis;       // cluster atoms
    Vec atom_values;
    std::vector<std::uint32_t> member_masks;  // all 2^k subsets
    double span_residual;                     // || a - sum value_i atom_i ||

    Projection projection_for(std::uint32_t mask) const;
    std::vector<Projection> all_projections() const;
};

/// Refuses (numeric_error) when the cluster count exceeds 20.
CommutantQuery bicommutant(const Element& a);

/// Pairwise compatibility of P(a) and P(b), decided on the spectral atoms.
Tri extended_commute(const Element& a, const Element& b);

// ---- Blocks ------------------------------------------------------------------

struct BlockOptions {
    int pool_elements = 6;  // seeded family whose spectral projections extend the block
    int samples = 40;       // associativity probes
    std::uint64_t seed = 0;
};

struct BlockReport {
    bool rejected = false;
    std::string note;
    int atom_count = 0;    // block size is 2^atom_count
    int span_dim = 0;      // dim span(B) = atom_count
    int commutant_dim = 0; // dim { a : a commutes with every atom }
    bool span_matches = false;
    double closure_residual = 0.0;        // lattice-meet vs compression cross-check
    double associativity_residual = 0.0;  // max ||(a o b) o c - a o (b o c)|| on span samples
};

BlockReport block_and_cblock(const Ctx& ctx, std::vector<Projection> generators,
                             const BlockOptions& opt = {});

} // namespace ouspec

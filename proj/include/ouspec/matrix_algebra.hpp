#pragma once

#include "ouspec/order.hpp"

namespace ouspec {

// ---- Jordan structure on symmetric matrices ------------------------------

/// a o b = (ab + ba)/2.
Element jordan_product(const Element& a, const Element& b);

/// {abc} = (a o b) o c + (b o c) o a - (a o c) o b; symmetric in a and c.
Element triple_product(const Element& a, const Element& b, const Element& c);

/// U_a b = {aba}; computed as the matrix product a b a in this model.
Element quadratic_map(const Element& a, const Element& b);

/// T_a x = a o x.
Element mult_operator(const Element& a, const Element& x);

/// Residual of the operator identities U_p = 2T_p^2 - T_p and
/// T_p = (I + U_p - U_{1-p})/2 on the sample a, for an idempotent p.
double mult_operator_identity_check(const Element& p, const Element& a);

// ---- Eigenstructure -------------------------------------------------------

struct EigenSystem {
    Vec eigenvalues;   // ascending
    la::Mat vectors;   // orthonormal columns
    std::vector<std::vector<int>> clusters;  // index partition, gap threshold tau
    Vec cluster_values;                      // mean eigenvalue per cluster
    std::vector<Element> cluster_projections;
    double reconstruction_residual;          // ||a - sum lambda_i v_i v_i^T||_1
};

/// Cluster gap threshold tau = 1e-8 * (1 + ||a||_1).
double cluster_tau(const Element& a);

EigenSystem eigen_decompose(const Element& a);

// ---- Projection lattice ---------------------------------------------------

bool is_matrix_projection(const Element& p);
void require_matrix_projection(const Element& p);

/// Orthogonal projection onto range(p) ∩ range(q), from the null space of
/// (1-p) + (1-q). Throws numeric_error when the rank decision is ambiguous.
Element lattice_meet(const Element& p, const Element& q);
Element lattice_join(const Element& p, const Element& q);

/// T_a T_b = T_b T_a, tested over the symmetric basis (residual 1e-9).
bool operator_commute(const Element& a, const Element& b);

// ---- Rickart annihilator --------------------------------------------------

struct AnnihilatorReport {
    Element support;       // s(a)
    Element annihilator_p; // p = 1 - s(a)
    int kernel_dim;        // dim {x : T_a x = 0}
    int image_dim;         // dim U_p(A)
    double inclusion_residual;  // max ||T_a b||_1 over the U_p(A) basis
    bool subspaces_match;
};

/// For a in A+: the annihilator {x : U_x(a) = 0} equals ker T_a; compares it
/// with U_p(A), p = 1 - s(a), as subspaces (rank cutoff 1e-8 relative).
AnnihilatorReport annihilator_check(const Element& a);

// ---- Norm axioms ----------------------------------------------------------

struct NormAxiomSlacks {
    double product;  // ||a|| ||b|| - ||a o b||
    double square;   // ||a||^2 - ||a^2||
    double sum;      // ||a^2 + b^2|| - ||a^2||
    double min() const { return std::min(product, std::min(square, sum)); }
};

NormAxiomSlacks jb_norm_axioms(const Element& a, const Element& b);

} // namespace ouspec

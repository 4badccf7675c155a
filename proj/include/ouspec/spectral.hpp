#pragma once

#include "ouspec/compression.hpp"

#include <functional>

namespace ouspec {

// Right-continuous projection-valued step function: p(lambda) = 0 below the
// first jump, cumulative sums of the atoms afterwards, 1 from the last jump.
struct SpectralResolution {
    Vec jumps;  // ascending
    std::vector<Projection> atoms;
    std::vector<Projection> cumulative;

    const Ctx& ctx() const { return atoms.front().ctx(); }
    double lower() const { return jumps.front(); }   // L_a
    double upper() const { return jumps.back(); }    // U_a
    Projection at(double lambda) const;              // p_{a,lambda}
};

SpectralResolution spectral_resolution(const Element& a);

/// || p_{a,lambda} - ((a - lambda)+)* ||, the defining cross-check.
double resolution_definition_residual(const Element& a, const SpectralResolution& r,
                                      double lambda);

std::pair<double, double> spectral_bounds(const Element& a);

/// Bisection on the order relation (raw cone membership), the independent
/// route to (L_a, U_a).
std::pair<double, double> spectral_bounds_bisect(const Element& a, int iterations = 80);

/// Riemann-Stieltjes approximant on a uniform grid of spacing `mesh`
/// anchored at U_a and extended below L_a - mesh (so halving the mesh
/// refines the grid in place). Returns the sum and ||a - sum||_1.
std::pair<Element, double> rs_integral_approx(const Element& a, double mesh);

// ---- Interval machinery ------------------------------------------------------

struct Interval {
    double lo, hi;
    bool lo_open = true;
    bool hi_closed = true;
    bool contains(double t, double tol = 0.0) const;
};

struct IntervalSet {
    std::vector<Interval> parts;
    bool contains(double t, double tol = 0.0) const;

    /// Union of half-open pieces (u, v].
    static IntervalSet half_open(const std::vector<std::pair<double, double>>& parts);
    /// (-inf, lambda].
    static IntervalSet upto(double lambda);
    static IntervalSet empty() { return {}; }
    static IntervalSet whole_line();
};

// ---- Function mini-language ----------------------------------------------------

// Real function usable against a finite spectrum. Preimages of (-inf, lambda]
// are available for the shapes whose monotone pieces are declared (poly of
// degree <= 2, pos, abs, chi, root); pushforward checks require them.
class RealFunction {
public:
    static RealFunction identity();
    static RealFunction constant(double c);
    static RealFunction poly(Vec coeffs);  // c0 + c1 t + c2 t^2 + ...
    static RealFunction pos();             // t -> max(t, 0)
    static RealFunction abs();
    static RealFunction chi(double u, double v);  // indicator of (u, v]
    static RealFunction root(int n);              // t -> t^{1/n} on nonnegative spectra
    static RealFunction from_eval(std::function<double(double)> f, std::string name);

    /// "poly c0 c1 ... ck" | "pos" | "abs" | "chi u v" | "root n"
    static RealFunction parse(const std::string& spec);

    const std::string& name() const { return name_; }
    double operator()(double t) const;  // numeric_error on a non-finite value
    bool has_preimage() const;
    IntervalSet preimage_leq(double lambda) const;

private:
    enum class Kind { poly, pos, abs, chi, root, custom };
    RealFunction(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    Vec coeffs_;
    double u_ = 0.0, v_ = 0.0;
    int nth_ = 1;
    std::function<double(double)> eval_;
};

// ---- Functional calculus ---------------------------------------------------------

/// g(a) = sum g(jump_i) atom_i over the spectral resolution.
Element continuous_fc(const Element& a, const RealFunction& g);

/// Same evaluation rule (finite spectra collapse the Borel/continuous
/// distinction); kept as the entry point for indicator and limit work.
Element borel_fc(const Element& a, const RealFunction& g);

/// xi_a(B) = chi_B(a) for a finite union of intervals.
Projection spectral_measure(const Element& a, const IntervalSet& B);

/// || p_{g(a),lambda} - xi_a(g^{-1}((-inf, lambda])) ||_1; the function must
/// declare its preimages (contract violation otherwise).
double pushforward_check(const Element& a, const RealFunction& g, double lambda);

/// Coefficients of x on the atoms of r (x must lie in the span).
Vec resolve_in_cc(const SpectralResolution& r, const Element& x);

/// Join of x and y inside CC(a): coefficient-wise max over the atoms of r.
Element cc_join(const SpectralResolution& r, const Element& x, const Element& y);

} // namespace ouspec

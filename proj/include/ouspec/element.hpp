#pragma once

#include "ouspec/context.hpp"
#include "ouspec/linalg.hpp"

#include <span>
#include <string>
#include <utility>

namespace ouspec {

// Member of an order unit space, in model coordinates: the packed upper
// triangle of a symmetric matrix (row-major, off-diagonal entries stored
// once), or a scalar-vector pair (alpha, y) for the spin model.
class Element {
public:
    Element(Ctx ctx, Vec coords);

    const Ctx& ctx() const { return ctx_; }
    const Vec& coords() const { return coords_; }

    static Element zero(const Ctx& ctx);
    static Element unit(const Ctx& ctx);
    static Element scalar(const Ctx& ctx, double c);  // c * unit

    // Matrix model access. from_matrix symmetrizes its input.
    la::Mat to_matrix() const;
    static Element from_matrix(const Ctx& ctx, const la::Mat& m);

    // Spin model access.
    double alpha() const;
    std::span<const double> spin_y() const;
    static Element from_spin(const Ctx& ctx, double alpha, std::span<const double> y);

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(double s);

private:
    Ctx ctx_;
    Vec coords_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator-(Element a);
Element operator*(double s, Element a);

void require_same_ctx(const Element& a, const Element& b);

// Text format: "matrix n <n> rowmajor <n*n floats>" or
// "spin p <p> alpha <float> y <n floats>".
std::string to_text(const Element& a);
std::pair<Ctx, Element> parse_element_text(const std::string& text);
Element parse_element_text(const Ctx& ctx, const std::string& text);

} // namespace ouspec

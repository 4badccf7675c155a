#pragma once

#include "ouspec/element.hpp"

namespace ouspec {

/// Order unit norm, closed form per model: max |eigenvalue| for matrices,
/// |alpha| + dual-norm(y) for spin elements.
double order_unit_norm(const Element& a);

/// How far a sits below the positive cone (0 for members): max(0, -lambda_min)
/// for matrices, max(0, dual-norm(y) - alpha) for spin elements.
double cone_violation(const Element& a);

/// a in A+ up to the relative tolerance eps_cone * max(1, ||a||_1); exact
/// boundary cases count as members.
bool cone_contains(const Element& a);

bool order_leq(const Element& a, const Element& b);

/// 0 <= e <= 1.
bool is_effect(const Element& e);

/// ||a - b||_1 <= eps_eq * (1 + max(||a||_1, ||b||_1)).
bool approx_eq(const Element& a, const Element& b);

// Infimum-definition norm: bisection on lambda with raw cone membership as
// the oracle, bracket [0, sum |coords|], fixed iteration count.
double order_unit_norm_bisect(const Element& a, int iterations = 60);

} // namespace ouspec

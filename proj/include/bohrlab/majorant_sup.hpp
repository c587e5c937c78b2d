#pragma once

#include "bohrlab/ball.hpp"
#include "bohrlab/polynomial.hpp"

namespace bohrlab {

/// first: the Bohr radius K, driven by sup_{rB} sum |c_alpha z^alpha|.
/// second: the radius B, driven by sum sup_{rB} |c_alpha z^alpha|.
enum class RadiusKind { first, second };

const char* to_string(RadiusKind kind);

/// sup over r * ball of sum c_alpha |z^alpha| for a polynomial with
/// non-negative real coefficients, r in [0, 1].
///
/// On the polydisc this is the value at (r, ..., r). For finite p the sup is
/// attained at a non-negative real point of the r-sphere and is found by
/// projected ascent from the vertices, the barycenter and a few fixed random
/// starts; the result never exceeds the true sup by more than rounding.
double majorant_sup(const SparsePolynomial& poly_abs, const BallSpec& ball, double r);

/// sum c_alpha sup_{rB} |z^alpha| for non-negative real coefficients.
double term_sup_sum(const SparsePolynomial& poly_abs, const BallSpec& ball, double r);

/// Largest r in [0, 1] whose kind-specific majorant quantity of poly_abs
/// stays at or below level. Homogeneous input is solved in closed form;
/// otherwise bisection to tolerance tol over a shared interval sequence, so
/// the second-kind answer never exceeds the first-kind one.
double largest_radius(const SparsePolynomial& poly_abs, const BallSpec& ball, RadiusKind kind, double level,
                      double tol = 1e-7);

}  // namespace bohrlab

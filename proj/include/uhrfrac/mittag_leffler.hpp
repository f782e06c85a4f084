#pragma once

namespace uhrfrac {

/// One-parameter Mittag-Leffler function E_alpha(t) = sum t^k / Gamma(alpha k + 1)
/// for alpha in (0, 1] and t >= 0, by direct series summation.
///
/// The series terms eventually decay faster than any geometric ratio; once
/// the term ratio drops below 1/2 the tail is bounded geometrically and
/// summation stops as soon as that bound falls under `tol`. Throws
/// ConvergenceError if `max_terms` terms do not reach the bound (small alpha
/// with large t needs a slowly converging series this routine does not
/// target).
double mittag_leffler(double alpha, double t, double tol, int max_terms = 500);

}  // namespace uhrfrac

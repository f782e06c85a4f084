#pragma once

#include <vector>

#include "uhrfrac/grid_function.hpp"
#include "uhrfrac/mesh.hpp"
#include "uhrfrac/psi.hpp"

namespace uhrfrac {

/// psi-fractional Riemann-Liouville integral
///     (1/Gamma(alpha)) * int_lower^t psi'(s) (psi(t) - psi(s))^(alpha-1) F(s) ds
/// by product integration: F is interpolated piecewise-linearly in the
/// transformed variable u = psi(s) and the kernel power is integrated
/// exactly against the interpolant. `lower` and `t` must be mesh nodes.
///
/// When F carries a weighted head and the integral starts at 0, the first
/// panel treats the weighted representative of F as constant and integrates
/// the resulting (psi(t)-u)^(alpha-1) u^(gamma-1) moment by an incomplete-
/// Beta rule, so the head singularity costs no accuracy.
double frac_integral_at(const PsiFunction& psi, double alpha,
                        const GridFunction& F, double lower, double t);

/// Partial-range variant with the kernel anchored at `anchor`:
///     (1/Gamma(alpha)) * int_lower^upper psi'(s) (psi(anchor) - psi(s))^(alpha-1) F(s) ds
/// with upper <= anchor. This is the memory-term shape where the
/// integration stops at s_i but the kernel argument is the evaluation
/// point t.
double frac_integral_ranged(const PsiFunction& psi, double alpha,
                            const GridFunction& F, double lower, double upper,
                            double anchor);

/// Convolution weights w_j so that frac_integral_at(psi, alpha, F, 0, t)
/// equals sum_j w_j F(node_j) for raw-valued F. The returned vector covers
/// nodes 0..index_of(t). All weights are nonnegative and sum to
/// (psi(t) - psi(0))^alpha / Gamma(alpha + 1).
std::vector<double> precompute_weights(const PsiFunction& psi, double alpha,
                                       const Mesh& mesh, double t);

}  // namespace uhrfrac

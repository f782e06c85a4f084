#pragma once

#include <memory>
#include <vector>

#include "uhrfrac/grid_function.hpp"
#include "uhrfrac/mesh.hpp"
#include "uhrfrac/problem.hpp"

namespace uhrfrac {

struct SolveResult {
    GridFunction solution;             // y_0
    int iterations;                    // operator applications performed
    std::vector<double> diff_history;  // weighted sup distance per iteration
    bool converged;
};

/// One application of the mild-solution operator: on [0, t_1] the head
/// term plus the f-integral from 0; on (t_i, s_i] the impulse law with its
/// memory integral; on (s_i, t_{i+1}] the impulse value frozen at s_i plus
/// the f-integral restarted at s_i. Output is stored in weighted-head form
/// when gamma < 1. Expression failures propagate as EvalError annotated
/// with the node location.
GridFunction omega_apply(const ImpulsiveProblem& problem, const GridFunction& x);

/// Initial iterate: the head weight times x0 on [0, t_1] (stored in
/// weighted form), zero elsewhere.
GridFunction skeleton_guess(const ImpulsiveProblem& problem,
                            std::shared_ptr<const Mesh> mesh);

/// Picard iteration x_{n+1} = Omega x_n until the weighted sup distance of
/// successive iterates drops below tol. Runs regardless of whether the
/// contraction constant is below 1; non-convergence is reported in the
/// result, not thrown.
SolveResult picard_solve(const ImpulsiveProblem& problem,
                         const GridFunction& initial, double tol, int max_iter);
SolveResult picard_solve(const ImpulsiveProblem& problem,
                         std::shared_ptr<const Mesh> mesh, double tol,
                         int max_iter);

/// Solves the scalar implicit impulse equation x = g_i(t, x, memory) by
/// fixed-point iteration, switching to 0.5 damping if plain iteration
/// oscillates without contracting. Throws ConvergenceError after the
/// iteration budget.
double impulse_pointwise_solve(const ImpulsiveProblem& problem,
                               int impulse_index, double t, double memory_value);

}  // namespace uhrfrac

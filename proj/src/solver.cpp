#include "uhrfrac/solver.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/frac_integral.hpp"
#include "uhrfrac/gamma.hpp"
#include "uhrfrac/parallel.hpp"

namespace uhrfrac {

namespace {

double eval_at(const Expression& e, const EvalContext& ctx, const char* what) {
    try {
        return e.evaluate(ctx);
    } catch (const EvalError& err) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", ctx.t);
        throw EvalError(std::string(what) + " failed at node t = " + buf + ": " +
                            err.what(),
                        err.position());
    }
}

// Samples a kernel expression e(t, x(t)) into a grid function that shares
// x's storage convention, so the fractional integral's head panel sees the
// weighted representative. Node 0 is the constant extrapolation of the
// first positive node's weighted value.
GridFunction sample_kernel(const ImpulsiveProblem& p, const GridFunction& x,
                           const std::vector<double>& raw, const Expression& e,
                           const char* what) {
    GridFunction out(x.mesh_ptr(), x.gamma(), x.weighted_head());
    const auto& nodes = x.mesh().nodes();
    EvalContext ctx;
    ctx.psi = &p.psi;
    for (std::size_t i = 1; i < out.size(); ++i) {
        ctx.t = nodes[i];
        ctx.x = raw[i];
        out.set_raw(p.psi, i, eval_at(e, ctx, what));
    }
    if (out.head_weighted(0)) {
        out[0] = out[1];
    } else {
        ctx.t = nodes[0];
        ctx.x = raw[0];
        out[0] = eval_at(e, ctx, what);
    }
    return out;
}

}  // namespace

GridFunction omega_apply(const ImpulsiveProblem& p, const GridFunction& x) {
    const double alpha = p.order.alpha;
    const double gamma = p.order.gamma;
    if (x.weighted_head() != (gamma < 1.0) ||
        (x.weighted_head() && x.gamma() != gamma)) {
        throw MeshError("input grid function does not match the problem's "
                        "storage convention");
    }
    const auto mesh = x.mesh_ptr();
    const auto& nodes = mesh->nodes();
    const std::size_t n = mesh->size();

    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        raw[i] = x.raw(p.psi, i);  // raw[0] is unused when gamma < 1
    }

    const GridFunction k_values =
        sample_kernel(p, x, raw, p.memory_kernel, "K kernel");
    const GridFunction ell_values =
        sample_kernel(p, x, raw, p.impulse_memory_kernel, "ell kernel");

    // Inner memory w(s) = I^alpha[K(., x(.))](s) at every node.
    std::vector<double> w_mem(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        if (i > 0) {
            w_mem[i] = frac_integral_at(p.psi, alpha, k_values, 0.0, nodes[i]);
        }
    });

    // Forcing samples f(s, x(s), w(s)).
    GridFunction f_values(mesh, gamma, x.weighted_head());
    {
        EvalContext ctx;
        ctx.psi = &p.psi;
        for (std::size_t i = 1; i < n; ++i) {
            ctx.t = nodes[i];
            ctx.x = raw[i];
            ctx.w = w_mem[i];
            f_values.set_raw(p.psi, i, eval_at(p.forcing, ctx, "forcing"));
        }
        if (f_values.head_weighted(0)) {
            f_values[0] = f_values[1];
        } else {
            ctx.t = nodes[0];
            ctx.x = raw[0];
            ctx.w = 0.0;
            f_values[0] = eval_at(p.forcing, ctx, "forcing");
        }
    }

    GridFunction out(mesh, gamma, gamma < 1.0);
    const double head_datum = p.x0 / gamma_fn(gamma);

    for (const MeshSegment& seg : mesh->segments()) {
        switch (seg.kind) {
            case IntervalKind::Initial: {
                out[0] = head_datum;
                parallel_for(seg.last_node, [&](std::size_t k) {
                    const std::size_t i = k + 1;
                    const double integral =
                        frac_integral_at(p.psi, alpha, f_values, 0.0, nodes[i]);
                    if (gamma < 1.0) {
                        out[i] = head_datum + out.head_factor(p.psi, i) * integral;
                    } else {
                        out[i] = p.x0 + integral;
                    }
                });
                break;
            }
            case IntervalKind::Impulse: {
                const Expression& g =
                    p.impulses[static_cast<std::size_t>(seg.impulse_index) - 1];
                parallel_for(seg.last_node - seg.first_node, [&](std::size_t k) {
                    const std::size_t i = seg.first_node + 1 + k;
                    const double memory =
                        frac_integral_at(p.psi, alpha, ell_values, 0.0, nodes[i]);
                    EvalContext ctx;
                    ctx.psi = &p.psi;
                    ctx.t = nodes[i];
                    ctx.x = raw[i];
                    ctx.w = memory;
                    out[i] = eval_at(g, ctx, "impulse law");
                });
                break;
            }
            case IntervalKind::Post: {
                const Expression& g =
                    p.impulses[static_cast<std::size_t>(seg.impulse_index) - 1];
                const double si = seg.left;
                const double x_si = raw[mesh->index_of(si)];
                const double fixed_memory =
                    (p.memory_anchor == MemoryAnchor::AtSi)
                        ? frac_integral_at(p.psi, alpha, ell_values, 0.0, si)
                        : 0.0;
                parallel_for(seg.last_node - seg.first_node, [&](std::size_t k) {
                    const std::size_t i = seg.first_node + 1 + k;
                    const double memory =
                        (p.memory_anchor == MemoryAnchor::AtT)
                            ? frac_integral_ranged(p.psi, alpha, ell_values, 0.0,
                                                   si, nodes[i])
                            : fixed_memory;
                    EvalContext ctx;
                    ctx.psi = &p.psi;
                    ctx.t = si;
                    ctx.x = x_si;
                    ctx.w = memory;
                    const double impulse_part = eval_at(g, ctx, "impulse law");
                    out[i] = impulse_part +
                             frac_integral_at(p.psi, alpha, f_values, si, nodes[i]);
                });
                break;
            }
        }
    }
    return out;
}

GridFunction skeleton_guess(const ImpulsiveProblem& p,
                            std::shared_ptr<const Mesh> mesh) {
    const double gamma = p.order.gamma;
    GridFunction guess(std::move(mesh), gamma, gamma < 1.0);
    const double head_datum = p.x0 / gamma_fn(gamma);
    for (std::size_t i = 0; i <= guess.mesh().head_last(); ++i) {
        guess[i] = head_datum;
    }
    return guess;
}

SolveResult picard_solve(const ImpulsiveProblem& p, const GridFunction& initial,
                         double tol, int max_iter) {
    if (!(tol > 0.0)) {
        throw DomainError("picard_solve requires tol > 0");
    }
    if (max_iter < 1) {
        throw DomainError("picard_solve requires max_iter >= 1");
    }
    GridFunction current = initial;
    std::vector<double> history;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        GridFunction next = omega_apply(p, current);
        const double diff = weighted_sup_distance(next, current);
        history.push_back(diff);
        current = std::move(next);
        if (diff < tol) {
            converged = true;
            break;
        }
    }
    const int iterations = static_cast<int>(history.size());
    return SolveResult{std::move(current), iterations, std::move(history),
                       converged};
}

SolveResult picard_solve(const ImpulsiveProblem& p,
                         std::shared_ptr<const Mesh> mesh, double tol,
                         int max_iter) {
    return picard_solve(p, skeleton_guess(p, std::move(mesh)), tol, max_iter);
}

double impulse_pointwise_solve(const ImpulsiveProblem& p, int impulse_index,
                               double t, double memory_value) {
    if (impulse_index < 1 ||
        static_cast<std::size_t>(impulse_index) > p.impulses.size()) {
        throw DomainError("impulse index out of range");
    }
    const Expression& g =
        p.impulses[static_cast<std::size_t>(impulse_index) - 1];
    EvalContext ctx;
    ctx.psi = &p.psi;
    ctx.t = t;
    ctx.w = memory_value;

    double x = 0.0;
    double prev_delta = 0.0;
    bool damped = false;
    for (int it = 0; it < 200; ++it) {
        ctx.x = x;
        const double gx = eval_at(g, ctx, "impulse law");
        const double next = damped ? 0.5 * (x + gx) : gx;
        const double delta = next - x;
        if (std::abs(delta) <= 1e-13 * (1.0 + std::abs(next))) {
            return next;
        }
        // Sign-alternating updates that stop shrinking mean plain iteration
        // is bouncing around the fixed point; average it out from here on.
        if (!damped && it > 0 && delta * prev_delta < 0.0 &&
            std::abs(delta) >= 0.9 * std::abs(prev_delta)) {
            damped = true;
        }
        prev_delta = delta;
        x = next;
    }
    throw ConvergenceError("impulse fixed-point iteration exhausted its budget at t = " +
                           std::to_string(t));
}

}  // namespace uhrfrac

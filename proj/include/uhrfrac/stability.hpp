#pragma once

#include <optional>

#include "uhrfrac/grid_function.hpp"
#include "uhrfrac/mesh.hpp"
#include "uhrfrac/problem.hpp"

namespace uhrfrac {

struct StabilityCertificate {
    double phi_constant;                   // the contraction constant
    bool contraction_ok;                   // phi_constant < 1
    std::optional<double> envelope_coeff;  // (1 + C_phi)/(1 - phi), when ok
    double c_phi_used;
    double delta;
};

/// Contraction constant: the maximum over impulse intervals of
///   (L C + L A + 1) L_{g_i} + (Kbar B C^2 + Kbar C^2 + C) L_f
/// with A = (psi(T)-psi(0))^alpha / Gamma(alpha+1),
///      B = (psi(T)-psi(0))^(2 alpha) / Gamma(alpha+1),
///      C = C_phi, L = L_ell. Without impulses only the L_f part remains.
double phi_constant(const HypothesisData& h, const FractionalOrder& order,
                    const PsiFunction& psi, double total_time);

/// Stability envelope coefficient (1 + c_phi)/(1 - phi_c); throws
/// ContractionError when phi_c >= 1.
double envelope_coeff(double phi_c, double c_phi);

StabilityCertificate make_certificate(const HypothesisData& h,
                                      const FractionalOrder& order,
                                      const PsiFunction& psi, double total_time);

/// Numerically observed sup over mesh nodes t > 0 of I^{alpha,psi} phi(t)
/// divided by phi(t); compare against the declared C_phi.
double verify_h6(const PsiFunction& psi, double alpha, const Expression& phi,
                 std::shared_ptr<const Mesh> mesh);

/// Per-interval-type maxima of (defect - allowance), where the defect is
/// |y - Omega y| and the allowance is I^alpha phi on [0, t_1], delta on
/// impulse intervals, and delta + I^alpha_{s_i} phi after them. Entries
/// are absent for interval types the partition does not contain.
/// `satisfied` applies slack 1e-8 absolute plus 1e-6 relative to the
/// allowance.
struct ResidualReport {
    std::optional<double> initial_max;
    std::optional<double> impulse_max;
    std::optional<double> post_max;
    bool satisfied;
};

ResidualReport residual_check(const ImpulsiveProblem& problem,
                              const HypothesisData& h, const GridFunction& y);

struct EnvelopeCheck {
    bool ok;
    double max_violation;  // max over nodes of |y-y0| - coeff*(phi+delta), clamped at 0
};

/// Checks |y(t) - y0(t)| <= envelope_coeff * (phi(t) + delta) at every
/// node t > 0 in raw values.
EnvelopeCheck verify_envelope(const GridFunction& y, const GridFunction& y0,
                              const StabilityCertificate& cert,
                              const Expression& phi, const PsiFunction& psi);

}  // namespace uhrfrac

#include "uhrfrac/stability.hpp"

#include <algorithm>
#include <cmath>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/frac_integral.hpp"
#include "uhrfrac/gamma.hpp"
#include "uhrfrac/solver.hpp"

namespace uhrfrac {

double phi_constant(const HypothesisData& h, const FractionalOrder& order,
                    const PsiFunction& psi, double total_time) {
    const double gap = psi.value(total_time) - psi.value(0.0);
    const double a_norm = std::pow(gap, order.alpha) / gamma_fn(order.alpha + 1.0);
    const double b_norm =
        std::pow(gap, 2.0 * order.alpha) / gamma_fn(order.alpha + 1.0);
    const double c = h.phi_comparison;
    const double ell = h.impulse_kernel_lipschitz;

    const double f_part = (h.memory_kernel_bound * b_norm * c * c +
                           h.memory_kernel_bound * c * c + c) *
                          h.forcing_lipschitz;
    double worst_g = 0.0;
    for (double lg : h.impulse_lipschitz) {
        worst_g = std::max(worst_g, lg);
    }
    return (ell * c + ell * a_norm + 1.0) * worst_g + f_part;
}

double envelope_coeff(double phi_c, double c_phi) {
    if (phi_c >= 1.0) {
        throw ContractionError("envelope requires a contraction constant below 1");
    }
    return (1.0 + c_phi) / (1.0 - phi_c);
}

StabilityCertificate make_certificate(const HypothesisData& h,
                                      const FractionalOrder& order,
                                      const PsiFunction& psi,
                                      double total_time) {
    StabilityCertificate cert{};
    cert.phi_constant = phi_constant(h, order, psi, total_time);
    cert.contraction_ok = cert.phi_constant < 1.0;
    cert.c_phi_used = h.phi_comparison;
    cert.delta = h.delta;
    if (cert.contraction_ok) {
        cert.envelope_coeff = envelope_coeff(cert.phi_constant, h.phi_comparison);
    }
    return cert;
}

double verify_h6(const PsiFunction& psi, double alpha, const Expression& phi,
                 std::shared_ptr<const Mesh> mesh) {
    GridFunction samples = GridFunction::sample(mesh, [&](double t) {
        EvalContext c;
        c.psi = &psi;
        c.t = t;
        return phi.evaluate(c);
    });
    double sup = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double integral =
            frac_integral_at(psi, alpha, samples, 0.0, mesh->nodes()[i]);
        sup = std::max(sup, integral / samples[i]);
    }
    return sup;
}

ResidualReport residual_check(const ImpulsiveProblem& problem,
                              const HypothesisData& h, const GridFunction& y) {
    const GridFunction omega_y = omega_apply(problem, y);
    const auto mesh = y.mesh_ptr();
    const auto& nodes = mesh->nodes();
    const PsiFunction& psi = problem.psi;
    const double alpha = problem.order.alpha;

    GridFunction phi_samples = GridFunction::sample(mesh, [&](double t) {
        EvalContext c;
        c.psi = &psi;
        c.t = t;
        return h.phi.evaluate(c);
    });

    ResidualReport report{};
    report.satisfied = true;

    auto record = [&](std::optional<double>& slot, double defect,
                      double allowance) {
        const double margin = defect - allowance;
        if (!slot || margin > *slot) {
            slot = margin;
        }
        if (defect > allowance + 1e-8 + 1e-6 * std::abs(allowance)) {
            report.satisfied = false;
        }
    };

    for (const MeshSegment& seg : mesh->segments()) {
        switch (seg.kind) {
            case IntervalKind::Initial:
                for (std::size_t i = 1; i <= seg.last_node; ++i) {
                    const double defect =
                        std::abs(y.raw(psi, i) - omega_y.raw(psi, i));
                    const double allowance =
                        frac_integral_at(psi, alpha, phi_samples, 0.0, nodes[i]);
                    record(report.initial_max, defect, allowance);
                }
                break;
            case IntervalKind::Impulse:
                for (std::size_t i = seg.first_node + 1; i <= seg.last_node; ++i) {
                    const double defect = std::abs(y[i] - omega_y[i]);
                    record(report.impulse_max, defect, h.delta);
                }
                break;
            case IntervalKind::Post:
                for (std::size_t i = seg.first_node + 1; i <= seg.last_node; ++i) {
                    const double defect = std::abs(y[i] - omega_y[i]);
                    const double allowance =
                        h.delta + frac_integral_at(psi, alpha, phi_samples,
                                                   seg.left, nodes[i]);
                    record(report.post_max, defect, allowance);
                }
                break;
        }
    }
    return report;
}

EnvelopeCheck verify_envelope(const GridFunction& y, const GridFunction& y0,
                              const StabilityCertificate& cert,
                              const Expression& phi, const PsiFunction& psi) {
    if (!cert.contraction_ok || !cert.envelope_coeff) {
        throw ContractionError("envelope check needs a certificate with phi < 1");
    }
    if (y.mesh_ptr() != y0.mesh_ptr() && y.mesh().nodes() != y0.mesh().nodes()) {
        throw MeshError("envelope check requires a common mesh");
    }
    const double coeff = *cert.envelope_coeff;
    EvalContext ctx;
    ctx.psi = &psi;
    double worst = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        ctx.t = y.mesh().nodes()[i];
        const double bound = coeff * (phi.evaluate(ctx) + cert.delta);
        const double gap = std::abs(y.raw(psi, i) - y0.raw(psi, i));
        worst = std::max(worst, gap - bound);
    }
    return EnvelopeCheck{worst <= 0.0, std::max(worst, 0.0)};
}

}  // namespace uhrfrac

#include "uhrfrac/frac_integral.hpp"

#include <array>
#include <cmath>
#include <iterator>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/gamma.hpp"

namespace uhrfrac {

namespace {

struct GaussRule {
    std::array<double, 32> nodes;    // on [-1, 1]
    std::array<double, 32> weights;
};

// 32-point Gauss-Legendre rule, generated by Newton iteration on P_32.
const GaussRule& gauss32() {
    static const GaussRule rule = [] {
        GaussRule r{};
        constexpr int n = 32;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double pk =
                        ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) {
                    break;
                }
            }
            r.nodes[static_cast<std::size_t>(i)] = x;
            r.weights[static_cast<std::size_t>(i)] =
                2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

// a^p - b^p for 0 <= b <= a without catastrophic cancellation.
double power_diff(double a, double b, double p) {
    if (b <= 0.0) {
        return std::pow(a, p);
    }
    if (a == b) {
        return 0.0;
    }
    return -std::pow(a, p) * std::expm1(p * std::log1p((b - a) / a));
}

// int_0^h (c - u)^(alpha-1) u^(g-1) du with 0 < h <= c, 0 < g <= 1.
// h == c is the complete Beta moment; otherwise the u = h z^(1/g)
// substitution removes the left singularity and composite 32-point
// Gauss panels handle the rest.
double singular_beta_moment(double c, double h, double alpha, double g) {
    if (h >= c) {
        return std::pow(c, alpha + g - 1.0) * gamma_fn(g) * gamma_fn(alpha) /
               gamma_fn(g + alpha);
    }
    const auto& rule = gauss32();
    static constexpr double breaks[] = {0.0, 0.5, 0.9, 0.99, 1.0};
    double integral = 0.0;
    for (std::size_t p = 0; p + 1 < std::size(breaks); ++p) {
        const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        double acc = 0.0;
        for (int q = 0; q < 32; ++q) {
            const double z = mid + half * rule.nodes[static_cast<std::size_t>(q)];
            const double u = h * std::pow(z, 1.0 / g);
            acc += rule.weights[static_cast<std::size_t>(q)] *
                   std::pow(c - u, alpha - 1.0);
        }
        integral += acc * half;
    }
    return integral * std::pow(h, g) / g;
}

// Exact integral of the linear interpolant {Fa at ua, Fb at ub} against
// (c - u)^(alpha - 1) over [ua, ub], ub <= c.
double linear_panel(double c, double ua, double ub, double Fa, double Fb,
                    double alpha) {
    const double va = c - ua;
    const double vb = c - ub;
    const double m0 = power_diff(va, vb, alpha) / alpha;
    const double m1 = va * m0 - power_diff(va, vb, alpha + 1.0) / (alpha + 1.0);
    return Fa * m0 + (Fb - Fa) * (m1 / (ub - ua));
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw DomainError("fractional integral requires alpha in (0, 1]");
    }
}

}  // namespace

double frac_integral_ranged(const PsiFunction& psi, double alpha,
                            const GridFunction& F, double lower, double upper,
                            double anchor) {
    check_alpha(alpha);
    const Mesh& mesh = F.mesh();
    const std::size_t jl = mesh.index_of(lower);
    const std::size_t ju = mesh.index_of(upper);
    mesh.index_of(anchor);
    if (jl >= ju) {
        throw MeshError("fractional integral requires lower < upper");
    }
    if (anchor < upper) {
        throw MeshError("kernel anchor must not precede the upper limit");
    }

    const double psi0 = psi.value(0.0);
    const double c = psi.value(anchor) - psi0;
    const auto& nodes = mesh.nodes();

    double total = 0.0;
    std::size_t j = jl;
    if (jl == 0 && F.head_weighted(0)) {
        const double h = psi.value(nodes[1]) - psi0;
        total += F[0] * singular_beta_moment(c, h, alpha, F.gamma());
        j = 1;
    }
    for (; j < ju; ++j) {
        const double ua = psi.value(nodes[j]) - psi0;
        const double ub = psi.value(nodes[j + 1]) - psi0;
        total += linear_panel(c, ua, ub, F.raw(psi, j), F.raw(psi, j + 1), alpha);
    }
    return total / gamma_fn(alpha);
}

double frac_integral_at(const PsiFunction& psi, double alpha,
                        const GridFunction& F, double lower, double t) {
    return frac_integral_ranged(psi, alpha, F, lower, t, t);
}

std::vector<double> precompute_weights(const PsiFunction& psi, double alpha,
                                       const Mesh& mesh, double t) {
    check_alpha(alpha);
    const std::size_t jt = mesh.index_of(t);
    if (jt == 0) {
        throw MeshError("weights need a target node past the origin");
    }
    const double psi0 = psi.value(0.0);
    const double c = psi.value(t) - psi0;
    const auto& nodes = mesh.nodes();
    const double inv_gamma = 1.0 / gamma_fn(alpha);

    std::vector<double> weights(jt + 1, 0.0);
    for (std::size_t j = 0; j < jt; ++j) {
        const double ua = psi.value(nodes[j]) - psi0;
        const double ub = psi.value(nodes[j + 1]) - psi0;
        const double va = c - ua;
        const double vb = c - ub;
        const double m0 = power_diff(va, vb, alpha) / alpha;
        const double m1 =
            va * m0 - power_diff(va, vb, alpha + 1.0) / (alpha + 1.0);
        const double slope_w = m1 / (ub - ua);
        weights[j] += (m0 - slope_w) * inv_gamma;
        weights[j + 1] += slope_w * inv_gamma;
    }
    return weights;
}

}  // namespace uhrfrac

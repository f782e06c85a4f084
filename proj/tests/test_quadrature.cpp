#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/frac_integral.hpp"
#include "uhrfrac/grid_function.hpp"
#include "uhrfrac/mesh.hpp"
#include "uhrfrac/psi.hpp"

using namespace uhrfrac;

namespace {

std::shared_ptr<const Mesh> make_mesh(
    const std::vector<std::pair<double, double>>& partition, double T, int n,
    double grading) {
    return std::make_shared<const Mesh>(Mesh::build(partition, T, n, grading));
}

// Closed-form oracle for the psi-power rule, evaluated through libm.
double power_rule(const PsiFunction& psi, double alpha, double p, double t) {
    const double gap = psi.value(t) - psi.value(0.0);
    return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + alpha) *
           std::pow(gap, p + alpha);
}

}  // namespace

TEST_CASE("build_mesh uniform example") {
    const auto mesh = Mesh::build({{1.0, 2.0}}, 2.0, 4, 1.0);
    const std::vector<double> expected = {0.0, 0.25, 0.5, 0.75, 1.0,
                                          1.25, 1.5, 1.75, 2.0};
    REQUIRE(mesh.nodes().size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(mesh.nodes()[i] == doctest::Approx(expected[i]).epsilon(1e-15));
    }
    CHECK(mesh.segments().size() == 2);
    CHECK(mesh.head_last() == 4);
}

TEST_CASE("build_mesh graded example") {
    const auto mesh = Mesh::build({}, 1.0, 2, 2.0);
    REQUIRE(mesh.nodes().size() == 3);
    CHECK(mesh.nodes()[0] == 0.0);
    CHECK(mesh.nodes()[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mesh.nodes()[2] == 1.0);
}

TEST_CASE("build_mesh rejects bad input") {
    CHECK_THROWS_AS(Mesh::build({{2.0, 1.0}}, 3.0, 4, 1.0), MeshError);
    CHECK_THROWS_AS(Mesh::build({{-1.0, 0.5}}, 2.0, 4, 1.0), MeshError);
    CHECK_THROWS_AS(Mesh::build({{1.0, 3.0}}, 2.0, 4, 1.0), MeshError);
    CHECK_THROWS_AS(Mesh::build({{1.0, 1.5}, {1.2, 1.8}}, 2.0, 4, 1.0), MeshError);
    CHECK_THROWS_AS(Mesh::build({}, 1.0, 0, 1.0), MeshError);
    CHECK_THROWS_AS(Mesh::build({}, 1.0, 4, 0.5), MeshError);
}

TEST_CASE("mesh places partition points on nodes and grades toward 0") {
    const auto mesh = Mesh::build({{0.5, 0.75}, {1.25, 1.5}}, 2.0, 8, 2.0);
    CHECK(mesh.nodes().front() == 0.0);
    CHECK(mesh.nodes().back() == 2.0);
    for (double boundary : {0.5, 0.75, 1.25, 1.5}) {
        CHECK_NOTHROW(mesh.index_of(boundary));
    }
    for (std::size_t i = 1; i < mesh.nodes().size(); ++i) {
        CHECK(mesh.nodes()[i] > mesh.nodes()[i - 1]);
    }
    // (j/n)^r scaling on the initial interval
    for (int j = 1; j <= 8; ++j) {
        CHECK(mesh.nodes()[static_cast<std::size_t>(j)] ==
              doctest::Approx(0.5 * std::pow(j / 8.0, 2.0)).epsilon(1e-14));
    }
}

TEST_CASE("frac_integral constant example: I^{1/2} 1 at t=1") {
    const auto mesh = make_mesh({}, 1.0, 64, 1.0);
    const auto psi = PsiFunction::identity();
    const auto ones = GridFunction::sample(mesh, [](double) { return 1.0; });
    const double got = frac_integral_at(psi, 0.5, ones, 0.0, 1.0);
    CHECK(got == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-10));
}

TEST_CASE("frac_integral linear example is exact for alpha = 1") {
    const auto mesh = make_mesh({}, 2.0, 16, 1.0);
    const auto psi = PsiFunction::identity();
    const auto f = GridFunction::sample(mesh, [](double s) { return s; });
    CHECK(frac_integral_at(psi, 1.0, f, 0.0, 2.0) ==
          doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("psi power rule across families and orders") {
    const std::vector<PsiFunction> psis = {PsiFunction::identity(),
                                           PsiFunction::power(2.0),
                                           PsiFunction::logarithm(1.0)};
    for (const auto& psi : psis) {
        for (double alpha : {0.3, 0.5, 1.0}) {
            for (double p : {0.0, 1.0, 2.5}) {
                const auto mesh = make_mesh({}, 1.0, 200, 1.0);
                const double psi0 = psi.value(0.0);
                const auto f = GridFunction::sample(mesh, [&](double s) {
                    return std::pow(psi.value(s) - psi0, p);
                });
                const double got = frac_integral_at(psi, alpha, f, 0.0, 1.0);
                const double expected = power_rule(psi, alpha, p, 1.0);
                CHECK(std::abs(got - expected) <=
                      2e-4 * std::max(1.0, std::abs(expected)));
            }
        }
    }
}

TEST_CASE("power-rule convergence: doubling n shrinks the error by >= 3.5x") {
    const auto psi = PsiFunction::identity();
    const double exact = power_rule(psi, 0.5, 2.0, 1.0);
    std::vector<double> errors;
    for (int n : {32, 64, 128}) {
        const auto mesh = make_mesh({}, 1.0, n, 1.0);
        const auto f =
            GridFunction::sample(mesh, [](double s) { return s * s; });
        errors.push_back(
            std::abs(frac_integral_at(psi, 0.5, f, 0.0, 1.0) - exact));
    }
    CHECK(errors[0] / errors[1] >= 3.5);
    CHECK(errors[1] / errors[2] >= 3.5);
}

TEST_CASE("linearity of the integral in F") {
    const auto mesh = make_mesh({{0.5, 1.0}}, 2.0, 12, 1.0);
    const auto psi = PsiFunction::identity();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto f = GridFunction::sample(mesh, [&](double) { return dist(rng); });
    auto g = GridFunction::sample(mesh, [&](double) { return dist(rng); });
    GridFunction combo = f;
    const double a = 1.7, b = -0.4;
    for (std::size_t i = 0; i < combo.size(); ++i) {
        combo[i] = a * f[i] + b * g[i];
    }
    for (double t : {0.5, 1.0, 2.0}) {
        const double lhs = frac_integral_at(psi, 0.5, combo, 0.0, t);
        const double rhs = a * frac_integral_at(psi, 0.5, f, 0.0, t) +
                           b * frac_integral_at(psi, 0.5, g, 0.0, t);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("positivity") {
    const auto mesh = make_mesh({}, 2.0, 40, 1.0);
    const auto psi = PsiFunction::power(2.0);
    const auto f = GridFunction::sample(
        mesh, [](double s) { return 0.2 + std::abs(std::sin(5.0 * s)); });
    for (std::size_t i = 1; i < mesh->size(); ++i) {
        CHECK(frac_integral_at(psi, 0.4, f, 0.0, mesh->nodes()[i]) >= 0.0);
    }
}

TEST_CASE("domain monotonicity") {
    // For alpha < 1 the kernel decays in t, so monotonicity in the upper
    // limit needs a nondecreasing integrand; alpha = 1 is monotone for any
    // nonnegative integrand.
    const auto mesh = make_mesh({}, 2.0, 40, 1.0);
    const auto psi = PsiFunction::power(2.0);
    SUBCASE("alpha < 1, nondecreasing F") {
        const auto f = GridFunction::sample(
            mesh, [](double s) { return 0.2 + s * s; });
        double prev = 0.0;
        for (std::size_t i = 1; i < mesh->size(); ++i) {
            const double v =
                frac_integral_at(psi, 0.4, f, 0.0, mesh->nodes()[i]);
            CHECK(v >= prev - 1e-14);
            prev = v;
        }
    }
    SUBCASE("alpha = 1, any nonnegative F") {
        const auto f = GridFunction::sample(
            mesh, [](double s) { return 0.2 + std::abs(std::sin(5.0 * s)); });
        double prev = 0.0;
        for (std::size_t i = 1; i < mesh->size(); ++i) {
            const double v =
                frac_integral_at(psi, 1.0, f, 0.0, mesh->nodes()[i]);
            CHECK(v >= prev - 1e-14);
            prev = v;
        }
    }
}

TEST_CASE("precomputed weights reproduce the integral and the closed form") {
    const auto mesh = make_mesh({}, 1.5, 48, 1.0);
    const auto psi = PsiFunction::logarithm(1.0);
    const double alpha = 0.5;
    const double t = mesh->nodes()[30];
    const auto weights = precompute_weights(psi, alpha, *mesh, t);
    REQUIRE(weights.size() == 31);

    for (double w : weights) {
        CHECK(w >= 0.0);
    }
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    const double gap = psi.value(t) - psi.value(0.0);
    CHECK(std::abs(total - std::pow(gap, alpha) / std::tgamma(alpha + 1.0)) <=
          1e-10);

    const auto f = GridFunction::sample(
        mesh, [](double s) { return std::cos(3.0 * s) + 2.0; });
    double dot = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        dot += weights[i] * f[i];
    }
    CHECK(dot == doctest::Approx(frac_integral_at(psi, alpha, f, 0.0, t))
                     .epsilon(1e-13));
}

TEST_CASE("weights for alpha = 1 on a uniform mesh are composite trapezoid") {
    const auto mesh = make_mesh({}, 1.0, 4, 1.0);
    const auto weights =
        precompute_weights(PsiFunction::identity(), 1.0, *mesh, 1.0);
    REQUIRE(weights.size() == 5);
    const double h = 0.25;
    CHECK(weights.front() == doctest::Approx(h / 2).epsilon(1e-14));
    CHECK(weights.back() == doctest::Approx(h / 2).epsilon(1e-14));
    for (std::size_t i = 1; i + 1 < weights.size(); ++i) {
        CHECK(weights[i] == doctest::Approx(h).epsilon(1e-14));
    }
}

TEST_CASE("single-panel mesh integrates a constant exactly") {
    const auto mesh = make_mesh({}, 0.8, 1, 1.0);
    const auto psi = PsiFunction::power(2.0);
    const double c = 3.25;
    const auto f = GridFunction::sample(mesh, [&](double) { return c; });
    const double alpha = 0.7;
    const double gap = psi.value(0.8) - psi.value(0.0);
    CHECK(frac_integral_at(psi, alpha, f, 0.0, 0.8) ==
          doctest::Approx(c * std::pow(gap, alpha) / std::tgamma(alpha + 1.0))
              .epsilon(1e-13));
}

TEST_CASE("weighted head: singular integrand integrates to the Beta moment") {
    // raw F(s) = (psi(s) - psi(0))^(gamma - 1), stored weighted value 1;
    // oracle is the power rule with p = gamma - 1.
    const auto psi = PsiFunction::identity();
    const double gamma = 0.5, alpha = 0.5;
    const auto mesh = make_mesh({}, 1.0, 128, 2.0);
    GridFunction f(mesh, gamma, true);
    for (std::size_t i = 0; i <= mesh->head_last(); ++i) {
        f[i] = 1.0;  // weighted representative of s^(gamma-1)
    }
    const double expected = power_rule(psi, alpha, gamma - 1.0, 1.0);
    CHECK(expected == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    const double got = frac_integral_at(psi, alpha, f, 0.0, 1.0);
    CHECK(std::abs(got - expected) <= 2e-3 * expected);

    // the first-node value is the exact complete Beta moment
    const double t1 = mesh->nodes()[1];
    const double at_first = frac_integral_at(psi, alpha, f, 0.0, t1);
    CHECK(at_first == doctest::Approx(power_rule(psi, alpha, gamma - 1.0, t1))
                          .epsilon(1e-12));
}

TEST_CASE("node alignment is enforced") {
    const auto mesh = make_mesh({}, 1.0, 8, 1.0);
    const auto psi = PsiFunction::identity();
    const auto f = GridFunction::sample(mesh, [](double) { return 1.0; });
    CHECK_THROWS_AS(frac_integral_at(psi, 0.5, f, 0.0, 0.33), MeshError);
    CHECK_THROWS_AS(frac_integral_at(psi, 0.5, f, 0.33, 1.0), MeshError);
    CHECK_THROWS_AS(frac_integral_at(psi, 0.5, f, 0.5, 0.5), MeshError);
    CHECK_THROWS_AS(frac_integral_ranged(psi, 0.5, f, 0.0, 1.0, 0.5), MeshError);
}

TEST_CASE("ranged integral with an anchor past the upper limit") {
    const auto mesh = make_mesh({}, 1.0, 256, 1.0);
    const auto psi = PsiFunction::identity();
    const auto f = GridFunction::sample(mesh, [](double s) { return 1.0 + s; });
    const double got = frac_integral_ranged(psi, 0.5, f, 0.0, 0.5, 1.0);
    // oracle: (1/Gamma(1/2)) int_0^(1/2) (1-s)^(-1/2) (1+s) ds by a
    // high-resolution midpoint sum (the integrand is smooth on [0, 1/2])
    double oracle = 0.0;
    const int steps = 200'000;
    for (int k = 0; k < steps; ++k) {
        const double s = (k + 0.5) * 0.5 / steps;
        oracle += std::pow(1.0 - s, -0.5) * (1.0 + s);
    }
    oracle *= 0.5 / steps / std::tgamma(0.5);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-7));
}

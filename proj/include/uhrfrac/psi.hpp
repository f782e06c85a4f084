#pragma once

#include <string>

namespace uhrfrac {

enum class PsiFamily { Identity, Power, Logarithm, Exponential };

/// Monotone kernel-generating function psi on [0, T].
///
/// The catalog is closed so that the derivative and the inverse are exact:
/// the quadrature substitutes u = psi(s) and needs psi^{-1} to machine
/// precision.
///   identity     psi(t) = t
///   power        psi(t) = t^sigma,        sigma > 0, t >= 0
///   logarithm    psi(t) = ln(shift + t),  shift > 0, t > -shift
///   exponential  psi(t) = exp(rate * t),  rate > 0
class PsiFunction {
public:
    static PsiFunction identity();
    static PsiFunction power(double sigma);
    static PsiFunction logarithm(double shift = 1.0);
    static PsiFunction exponential(double rate = 1.0);

    double value(double t) const;
    double derivative(double t) const;
    double inverse(double u) const;

    PsiFamily family() const noexcept { return family_; }
    double parameter() const noexcept { return parameter_; }
    std::string name() const;

private:
    PsiFunction(PsiFamily family, double parameter)
        : family_(family), parameter_(parameter) {}

    PsiFamily family_;
    double parameter_;
};

/// Singular convolution kernel psi'(s) * (psi(t) - psi(s))^(alpha - 1).
/// Requires s < t when alpha < 1; point evaluation at s = t is refused
/// because the kernel is unbounded there.
double psi_kernel(const PsiFunction& psi, double alpha, double t, double s);

/// Head weight (psi(t) - psi(0))^(gamma - 1) / Gamma(gamma).
/// Identically 1 for gamma = 1; unbounded at t = 0 otherwise.
double singular_weight(const PsiFunction& psi, double gamma, double t);

/// Order pair (alpha, beta) with the derived weight exponent
/// gamma = alpha + beta * (1 - alpha), so gamma lies in [alpha, 1].
struct FractionalOrder {
    double alpha;
    double beta;
    double gamma;

    FractionalOrder(double alpha_in, double beta_in);
};

}  // namespace uhrfrac

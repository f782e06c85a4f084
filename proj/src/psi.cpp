#include "uhrfrac/psi.hpp"

#include <cmath>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/gamma.hpp"

namespace uhrfrac {

PsiFunction PsiFunction::identity() {
    return PsiFunction(PsiFamily::Identity, 0.0);
}

PsiFunction PsiFunction::power(double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("power family requires sigma > 0");
    }
    return PsiFunction(PsiFamily::Power, sigma);
}

PsiFunction PsiFunction::logarithm(double shift) {
    if (!(shift > 0.0)) {
        throw DomainError("logarithm family requires shift > 0");
    }
    return PsiFunction(PsiFamily::Logarithm, shift);
}

PsiFunction PsiFunction::exponential(double rate) {
    if (!(rate > 0.0)) {
        throw DomainError("exponential family requires rate > 0");
    }
    return PsiFunction(PsiFamily::Exponential, rate);
}

double PsiFunction::value(double t) const {
    switch (family_) {
        case PsiFamily::Identity:
            return t;
        case PsiFamily::Power:
            if (t < 0.0) {
                throw DomainError("power family is defined for t >= 0");
            }
            return std::pow(t, parameter_);
        case PsiFamily::Logarithm:
            if (t <= -parameter_) {
                throw DomainError("logarithm family is defined for t > -shift");
            }
            return std::log(parameter_ + t);
        case PsiFamily::Exponential:
            return std::exp(parameter_ * t);
    }
    throw DomainError("unknown psi family");
}

double PsiFunction::derivative(double t) const {
    switch (family_) {
        case PsiFamily::Identity:
            return 1.0;
        case PsiFamily::Power:
            if (t < 0.0) {
                throw DomainError("power family is defined for t >= 0");
            }
            return parameter_ * std::pow(t, parameter_ - 1.0);
        case PsiFamily::Logarithm:
            if (t <= -parameter_) {
                throw DomainError("logarithm family is defined for t > -shift");
            }
            return 1.0 / (parameter_ + t);
        case PsiFamily::Exponential:
            return parameter_ * std::exp(parameter_ * t);
    }
    throw DomainError("unknown psi family");
}

double PsiFunction::inverse(double u) const {
    switch (family_) {
        case PsiFamily::Identity:
            return u;
        case PsiFamily::Power:
            if (u < 0.0) {
                throw DomainError("power family range is u >= 0");
            }
            return std::pow(u, 1.0 / parameter_);
        case PsiFamily::Logarithm:
            return std::exp(u) - parameter_;
        case PsiFamily::Exponential:
            if (!(u > 0.0)) {
                throw DomainError("exponential family range is u > 0");
            }
            return std::log(u) / parameter_;
    }
    throw DomainError("unknown psi family");
}

std::string PsiFunction::name() const {
    switch (family_) {
        case PsiFamily::Identity:
            return "identity";
        case PsiFamily::Power:
            return "power";
        case PsiFamily::Logarithm:
            return "log";
        case PsiFamily::Exponential:
            return "exp";
    }
    return "unknown";
}

double psi_kernel(const PsiFunction& psi, double alpha, double t, double s) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw DomainError("psi_kernel requires alpha in (0, 1]");
    }
    if (s > t) {
        throw DomainError("psi_kernel requires s <= t");
    }
    if (s == t && alpha < 1.0) {
        throw SingularityError(
            "psi_kernel is unbounded at s = t for alpha < 1; integrate instead");
    }
    const double gap = psi.value(t) - psi.value(s);
    if (alpha == 1.0) {
        return psi.derivative(s);
    }
    return psi.derivative(s) * std::pow(gap, alpha - 1.0);
}

double singular_weight(const PsiFunction& psi, double gamma, double t) {
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw DomainError("singular_weight requires gamma in (0, 1]");
    }
    if (gamma == 1.0) {
        return 1.0;
    }
    if (t <= 0.0) {
        throw SingularityError("singular_weight is unbounded at t = 0 for gamma < 1");
    }
    const double gap = psi.value(t) - psi.value(0.0);
    return std::pow(gap, gamma - 1.0) / gamma_fn(gamma);
}

FractionalOrder::FractionalOrder(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in), gamma(alpha_in + beta_in * (1.0 - alpha_in)) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw DomainError("fractional order requires alpha in (0, 1]");
    }
    if (beta < 0.0 || beta > 1.0) {
        throw DomainError("fractional order requires beta in [0, 1]");
    }
}

}  // namespace uhrfrac

#include "uhrfrac/mittag_leffler.hpp"

#include <cmath>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/gamma.hpp"

namespace uhrfrac {

double mittag_leffler(double alpha, double t, double tol, int max_terms) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw DomainError("mittag_leffler requires alpha in (0, 1]");
    }
    if (t < 0.0 || !std::isfinite(t)) {
        throw DomainError("mittag_leffler requires t >= 0");
    }
    if (!(tol > 0.0)) {
        throw DomainError("mittag_leffler requires tol > 0");
    }
    if (t == 0.0) {
        return 1.0;
    }

    const double log_t = std::log(t);
    double sum = 1.0;  // k = 0 term
    double prev_term = 1.0;
    for (int k = 1; k <= max_terms; ++k) {
        const double term = std::exp(k * log_t - log_gamma_fn(alpha * k + 1.0));
        sum += term;
        // Term ratios are monotonically decreasing, so once the current
        // ratio r is below 1 the remaining tail is at most
        // term * r / (1 - r).
        const double ratio = term / prev_term;
        if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= tol) {
            return sum;
        }
        prev_term = term;
    }
    throw ConvergenceError("mittag_leffler series did not meet the tail bound within the term budget");
}

}  // namespace uhrfrac

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uhrfrac/expr.hpp"
#include "uhrfrac/psi.hpp"

namespace uhrfrac {

/// Kernel anchor used for the impulse memory term on (s_i, t_{i+1}]: the
/// integral stops at s_i but the kernel argument may be the evaluation
/// point t (the printed operator) or s_i itself.
enum class MemoryAnchor { AtT, AtSi };

/// The full problem datum: order, kernel function, horizon, impulse
/// partition, initial datum, and the defining scalar expressions
///   f(t, x, w)   forcing, with w the inner K-memory integral
///   K(t, x)      kernel of the forcing memory integral
///   ell(t, x)    kernel of the impulse memory integral
///   g_i(t, x, w) impulse laws, one per impulse interval, with w the
///                ell-memory integral
struct ImpulsiveProblem {
    FractionalOrder order;
    PsiFunction psi;
    double total_time;
    std::vector<std::pair<double, double>> partition;  // (t_i, s_i)
    double x0 = 0.0;  // weighted initial datum I^{1-gamma,psi} x(0)
    Expression forcing;
    Expression memory_kernel;
    Expression impulse_memory_kernel;
    std::vector<Expression> impulses;
    MemoryAnchor memory_anchor = MemoryAnchor::AtT;
};

/// Lipschitz and comparison constants (user-supplied, never inferred from
/// the expressions) plus the stability weight phi and defect level delta.
struct HypothesisData {
    double forcing_lipschitz = 0.0;           // L_f
    std::vector<double> impulse_lipschitz;    // L_{g_i}
    double memory_kernel_bound = 0.0;         // K_bar
    double impulse_kernel_lipschitz = 0.0;    // L
    double phi_comparison = 0.0;              // C_phi
    Expression phi;                           // phi(t), nondecreasing
    double delta = 0.0;
};

struct LoadedProblem {
    ImpulsiveProblem problem;
    HypothesisData hypotheses;
};

/// Parses the line-oriented key = value config format (sections [order],
/// [psi], [partition], [functions], [hypotheses]; expression values are
/// quoted). Throws ConfigError with key context on any parse or
/// validation failure; missing required keys are all listed.
LoadedProblem load_problem(std::string_view config_text);

/// Emits config text that reloads to an equivalent problem (expression
/// trees structurally equal, reals bit-equal).
std::string serialize_problem(const LoadedProblem& loaded);

/// Built-in scenario catalog: "example-rl" (alpha = 1/2, beta = 0) and
/// "example-integer" (alpha = 1, beta = 1/2). Throws ConfigError for
/// unknown names.
LoadedProblem builtin_scenario(std::string_view name);

/// Reference values published for a built-in scenario, surfaced next to
/// the formula evaluation in reports. Not used in any computation.
struct ScenarioReference {
    std::string phi_text;       // e.g. "3/8"
    double phi_value;
    std::string envelope_text;  // published envelope form
};

std::optional<ScenarioReference> scenario_reference(std::string_view name);

}  // namespace uhrfrac

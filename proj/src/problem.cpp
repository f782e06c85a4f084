#include "uhrfrac/problem.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/mesh.hpp"

namespace uhrfrac {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_real(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ConfigError(key + ": expected a real number, got '" + text + "'");
    }
    return v;
}

Expression parse_expr(const std::string& key, const std::string& quoted) {
    if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"') {
        throw ConfigError(key + ": expression values must be quoted");
    }
    const std::string body = quoted.substr(1, quoted.size() - 2);
    auto outcome = parse_expression(body);
    if (const auto* err = std::get_if<ParseError>(&outcome)) {
        throw ConfigError(key + ": parse error at offset " +
                          std::to_string(err->position) + ": " + err->message);
    }
    return std::get<Expression>(std::move(outcome));
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

struct RawConfig {
    // scalar entries keyed "section.key"; repeated keys keep every value
    std::multimap<std::string, std::string> entries;

    bool has(const std::string& key) const { return entries.count(key) > 0; }

    std::string get_one(const std::string& key) const {
        const auto range = entries.equal_range(key);
        if (range.first == range.second) {
            throw ConfigError(key + ": missing");
        }
        if (std::distance(range.first, range.second) > 1) {
            throw ConfigError(key + ": given more than once");
        }
        return range.first->second;
    }

    std::vector<std::string> get_all(const std::string& key) const {
        std::vector<std::string> out;
        const auto range = entries.equal_range(key);
        for (auto it = range.first; it != range.second; ++it) {
            out.push_back(it->second);
        }
        return out;
    }
};

RawConfig scan_config(std::string_view text) {
    RawConfig raw;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        // strip comments outside quotes
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.erase(i);
                break;
            }
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": malformed section header");
            }
            section = trim(std::string_view(body).substr(1, body.size() - 2));
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (section.empty() || key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": key outside a [section]");
        }
        raw.entries.emplace(section + "." + key, value);
    }
    return raw;
}

PsiFunction build_psi(const RawConfig& raw) {
    const std::string kind = raw.get_one("psi.kind");
    if (kind == "identity") {
        return PsiFunction::identity();
    }
    if (kind == "power") {
        if (!raw.has("psi.sigma")) {
            throw ConfigError("psi.sigma: missing (required by kind = power)");
        }
        return PsiFunction::power(parse_real("psi.sigma", raw.get_one("psi.sigma")));
    }
    if (kind == "log") {
        const double shift = raw.has("psi.shift")
                                 ? parse_real("psi.shift", raw.get_one("psi.shift"))
                                 : 1.0;
        return PsiFunction::logarithm(shift);
    }
    if (kind == "exp") {
        const double rate = raw.has("psi.rate")
                                ? parse_real("psi.rate", raw.get_one("psi.rate"))
                                : 1.0;
        return PsiFunction::exponential(rate);
    }
    throw ConfigError("psi.kind: unknown family '" + kind +
                      "' (expected identity, power, log, or exp)");
}

void validate(const LoadedProblem& loaded) {
    const ImpulsiveProblem& p = loaded.problem;
    const HypothesisData& h = loaded.hypotheses;

    try {
        check_partition(p.partition, p.total_time);
    } catch (const MeshError& e) {
        throw ConfigError(std::string("partition: ") + e.what());
    }
    if (p.impulses.size() != p.partition.size()) {
        throw ConfigError("functions.g: need exactly one impulse law per impulse "
                          "interval (" + std::to_string(p.partition.size()) +
                          " expected, " + std::to_string(p.impulses.size()) +
                          " given)");
    }
    if (h.impulse_lipschitz.size() != p.partition.size()) {
        throw ConfigError("hypotheses.L_g: need one constant per impulse interval");
    }
    if (p.memory_kernel.references(ExprVar::W)) {
        throw ConfigError("functions.K: must not reference w");
    }
    if (p.impulse_memory_kernel.references(ExprVar::W)) {
        throw ConfigError("functions.ell: must not reference w");
    }

    if (!(h.forcing_lipschitz > 0.0)) {
        throw ConfigError("hypotheses.L_f: must be positive");
    }
    for (double lg : h.impulse_lipschitz) {
        if (!(lg > 0.0)) {
            throw ConfigError("hypotheses.L_g: must be positive");
        }
    }
    if (!(h.memory_kernel_bound > 0.0)) {
        throw ConfigError("hypotheses.K_bar: must be positive");
    }
    if (!(h.impulse_kernel_lipschitz > 0.0)) {
        throw ConfigError("hypotheses.L_ell: must be positive");
    }
    if (!(h.phi_comparison > 0.0)) {
        throw ConfigError("hypotheses.C_phi: must be positive");
    }
    if (h.delta < 0.0) {
        throw ConfigError("hypotheses.delta: must be nonnegative");
    }
    if (h.phi.references(ExprVar::X) || h.phi.references(ExprVar::W)) {
        throw ConfigError("hypotheses.phi: must be a function of t only");
    }

    // phi must be nondecreasing; checked on a 200-point grid.
    EvalContext ctx;
    ctx.psi = &p.psi;
    double prev = 0.0;
    double scale = 1.0;
    for (int j = 0; j <= 200; ++j) {
        ctx.t = p.total_time * static_cast<double>(j) / 200.0;
        double v = 0.0;
        try {
            v = h.phi.evaluate(ctx);
        } catch (const EvalError& e) {
            throw ConfigError(std::string("hypotheses.phi: ") + e.what());
        }
        scale = std::max(scale, std::abs(v));
        if (j > 0 && v < prev - 1e-12 * scale) {
            throw ConfigError("hypotheses.phi: not nondecreasing near t = " +
                              format_real(ctx.t));
        }
        prev = v;
    }
}

}  // namespace

LoadedProblem load_problem(std::string_view config_text) {
    const RawConfig raw = scan_config(config_text);

    static const char* kRequired[] = {
        "order.alpha",      "order.beta",       "psi.kind",
        "partition.T",      "functions.f",      "functions.K",
        "functions.ell",    "hypotheses.L_f",   "hypotheses.K_bar",
        "hypotheses.L_ell", "hypotheses.C_phi", "hypotheses.delta",
        "hypotheses.phi",
    };
    std::string missing;
    for (const char* key : kRequired) {
        if (!raw.has(key)) {
            missing += missing.empty() ? "" : ", ";
            missing += key;
        }
    }
    if (!missing.empty()) {
        throw ConfigError("missing required keys: " + missing);
    }

    FractionalOrder order(parse_real("order.alpha", raw.get_one("order.alpha")),
                          parse_real("order.beta", raw.get_one("order.beta")));
    PsiFunction psi = build_psi(raw);

    const double total_time = parse_real("partition.T", raw.get_one("partition.T"));
    std::vector<std::pair<double, double>> partition;
    for (const std::string& text : raw.get_all("partition.impulse")) {
        std::istringstream pair_stream(text);
        double ti = 0.0, si = 0.0;
        std::string rest;
        if (!(pair_stream >> ti >> si) || (pair_stream >> rest)) {
            throw ConfigError("partition.impulse: expected 't_i s_i', got '" +
                              text + "'");
        }
        partition.emplace_back(ti, si);
    }

    MemoryAnchor anchor = MemoryAnchor::AtT;
    if (raw.has("partition.memory_anchor")) {
        const std::string a = raw.get_one("partition.memory_anchor");
        if (a == "t") {
            anchor = MemoryAnchor::AtT;
        } else if (a == "s_i") {
            anchor = MemoryAnchor::AtSi;
        } else {
            throw ConfigError("partition.memory_anchor: expected 't' or 's_i'");
        }
    }

    const double x0 = raw.has("functions.x0")
                          ? parse_real("functions.x0", raw.get_one("functions.x0"))
                          : 0.0;

    std::vector<Expression> impulses;
    for (const std::string& text : raw.get_all("functions.g")) {
        impulses.push_back(parse_expr("functions.g", text));
    }

    HypothesisData hypo;
    hypo.forcing_lipschitz = parse_real("hypotheses.L_f", raw.get_one("hypotheses.L_f"));
    hypo.memory_kernel_bound =
        parse_real("hypotheses.K_bar", raw.get_one("hypotheses.K_bar"));
    hypo.impulse_kernel_lipschitz =
        parse_real("hypotheses.L_ell", raw.get_one("hypotheses.L_ell"));
    hypo.phi_comparison =
        parse_real("hypotheses.C_phi", raw.get_one("hypotheses.C_phi"));
    hypo.delta = parse_real("hypotheses.delta", raw.get_one("hypotheses.delta"));
    hypo.phi = parse_expr("hypotheses.phi", raw.get_one("hypotheses.phi"));
    for (const std::string& text : raw.get_all("hypotheses.L_g")) {
        hypo.impulse_lipschitz.push_back(parse_real("hypotheses.L_g", text));
    }
    // A single L_g line covers every impulse interval.
    if (hypo.impulse_lipschitz.size() == 1 && partition.size() > 1) {
        hypo.impulse_lipschitz.assign(partition.size(), hypo.impulse_lipschitz[0]);
    }

    LoadedProblem loaded{
        ImpulsiveProblem{order, psi, total_time, std::move(partition), x0,
                         parse_expr("functions.f", raw.get_one("functions.f")),
                         parse_expr("functions.K", raw.get_one("functions.K")),
                         parse_expr("functions.ell", raw.get_one("functions.ell")),
                         std::move(impulses), anchor},
        std::move(hypo)};
    validate(loaded);
    return loaded;
}

std::string serialize_problem(const LoadedProblem& loaded) {
    const ImpulsiveProblem& p = loaded.problem;
    const HypothesisData& h = loaded.hypotheses;
    std::string out;
    out += "[order]\n";
    out += "alpha = " + format_real(p.order.alpha) + "\n";
    out += "beta = " + format_real(p.order.beta) + "\n\n";
    out += "[psi]\n";
    out += "kind = " + p.psi.name() + "\n";
    switch (p.psi.family()) {
        case PsiFamily::Power:
            out += "sigma = " + format_real(p.psi.parameter()) + "\n";
            break;
        case PsiFamily::Logarithm:
            out += "shift = " + format_real(p.psi.parameter()) + "\n";
            break;
        case PsiFamily::Exponential:
            out += "rate = " + format_real(p.psi.parameter()) + "\n";
            break;
        case PsiFamily::Identity:
            break;
    }
    out += "\n[partition]\n";
    out += "T = " + format_real(p.total_time) + "\n";
    for (const auto& [ti, si] : p.partition) {
        out += "impulse = " + format_real(ti) + " " + format_real(si) + "\n";
    }
    out += std::string("memory_anchor = ") +
           (p.memory_anchor == MemoryAnchor::AtT ? "t" : "s_i") + "\n";
    out += "\n[functions]\n";
    out += "x0 = " + format_real(p.x0) + "\n";
    out += "f = \"" + p.forcing.to_string() + "\"\n";
    out += "K = \"" + p.memory_kernel.to_string() + "\"\n";
    out += "ell = \"" + p.impulse_memory_kernel.to_string() + "\"\n";
    for (const Expression& g : p.impulses) {
        out += "g = \"" + g.to_string() + "\"\n";
    }
    out += "\n[hypotheses]\n";
    out += "L_f = " + format_real(h.forcing_lipschitz) + "\n";
    for (double lg : h.impulse_lipschitz) {
        out += "L_g = " + format_real(lg) + "\n";
    }
    out += "K_bar = " + format_real(h.memory_kernel_bound) + "\n";
    out += "L_ell = " + format_real(h.impulse_kernel_lipschitz) + "\n";
    out += "C_phi = " + format_real(h.phi_comparison) + "\n";
    out += "delta = " + format_real(h.delta) + "\n";
    out += "phi = \"" + h.phi.to_string() + "\"\n";
    return out;
}

namespace {

const char* kScenarioRL = R"cfg(
[order]
alpha = 0.5
beta = 0

[psi]
kind = identity

[partition]
T = 2
impulse = 1 2

[functions]
x0 = 0
f = "1/(5+psi(t))*(abs(x)+w)"
K = "abs(x)/(10+psi(t))"
ell = "abs(x)/(15+psi(t))"
g = "1/((5+psi(t))*(1+abs(x)))*(abs(x)+w)"

[hypotheses]
L_f = 0.2
L_g = 0.2
K_bar = 0.1
L_ell = 0.066666666666666666
C_phi = 1
delta = 1
phi = "mitlef(0.5,t)"
)cfg";

const char* kScenarioInteger = R"cfg(
[order]
alpha = 1
beta = 0.5

[psi]
kind = identity

[partition]
T = 2
impulse = 1 2

[functions]
x0 = 0
f = "1/(5+psi(t))*(abs(x)+w)"
K = "abs(x)/(10+psi(t))"
ell = "abs(x)/(15+psi(t))"
g = "1/((5+psi(t))*(1+abs(x)))*(abs(x)+w)"

[hypotheses]
L_f = 0.2
L_g = 0.2
K_bar = 0.1
L_ell = 0.066666666666666666
C_phi = 1
delta = 1
phi = "mitlef(1,t)"
)cfg";

}  // namespace

LoadedProblem builtin_scenario(std::string_view name) {
    if (name == "example-rl") {
        return load_problem(kScenarioRL);
    }
    if (name == "example-integer") {
        return load_problem(kScenarioInteger);
    }
    throw ConfigError("unknown scenario '" + std::string(name) +
                      "' (available: example-rl, example-integer)");
}

std::optional<ScenarioReference> scenario_reference(std::string_view name) {
    if (name == "example-rl") {
        return ScenarioReference{"3/8", 3.0 / 8.0,
                                 "(54/19) E_{1/2}(t+1)"};
    }
    if (name == "example-integer") {
        return ScenarioReference{"14/25", 14.0 / 25.0,
                                 "(50/11) (e^t + 1)"};
    }
    return std::nullopt;
}

}  // namespace uhrfrac

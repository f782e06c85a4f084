#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/expr.hpp"
#include "uhrfrac/psi.hpp"

using namespace uhrfrac;

namespace {

Expression parse_ok(const std::string& src) {
    auto outcome = parse_expression(src);
    REQUIRE_MESSAGE(std::holds_alternative<Expression>(outcome),
                    "failed to parse: " << src);
    return std::get<Expression>(std::move(outcome));
}

ParseError parse_err(const std::string& src) {
    auto outcome = parse_expression(src);
    REQUIRE_MESSAGE(std::holds_alternative<ParseError>(outcome),
                    "unexpectedly parsed: " << src);
    return std::get<ParseError>(outcome);
}

double eval(const Expression& e, double t, double x, double w,
            const PsiFunction* psi = nullptr) {
    EvalContext ctx;
    ctx.t = t;
    ctx.x = x;
    ctx.w = w;
    ctx.psi = psi;
    return e.evaluate(ctx);
}

// Random well-formed expression source text.
std::string random_source(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    std::uniform_real_distribution<double> num(0.0, 10.0);
    switch (pick(rng)) {
        case 0: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", num(rng));
            return buf;
        }
        case 1:
            return std::vector<std::string>{"t", "x", "w"}[rng() % 3];
        case 2:
            return "abs(" + random_source(rng, depth - 1) + ")";
        case 3:
            return "-" + random_source(rng, depth - 1);
        case 4:
            return "(" + random_source(rng, depth - 1) + ")";
        case 5:
            return "psi(" + random_source(rng, depth - 1) + ")";
        case 6:
            return "mitlef(0.5," + random_source(rng, depth - 1) + ")";
        case 7:
            return "pow(" + random_source(rng, depth - 1) + ",2)";
        default: {
            const char ops[] = {'+', '-', '*', '/'};
            return random_source(rng, depth - 1) + ops[rng() % 4] +
                   random_source(rng, depth - 1);
        }
    }
}

}  // namespace

TEST_CASE("parse examples") {
    const auto f = parse_ok("1/(5+psi(t))*(abs(x)+w)");
    const auto psi = PsiFunction::identity();
    CHECK(eval(f, 0.0, 5.0, 0.0, &psi) == doctest::Approx(1.0).epsilon(1e-15));

    const auto t_only = parse_ok("t");
    CHECK(eval(t_only, 7.0, 0.0, 0.0) == 7.0);

    const auto err = parse_err("1+(");
    CHECK(err.position == 3);
}

TEST_CASE("evaluate examples") {
    CHECK(eval(parse_ok("abs(x)"), 0.0, -3.0, 0.0) == 3.0);
    const auto f = parse_ok("1/(5+t)*(abs(x)+w)");
    CHECK(eval(f, 0.0, 0.0, 0.0) == 0.0);
    CHECK(eval(f, 0.0, 5.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("precedence and associativity") {
    CHECK(eval(parse_ok("1-2*3"), 0, 0, 0) == -5.0);
    CHECK(eval(parse_ok("2*3+4*5"), 0, 0, 0) == 26.0);
    CHECK(eval(parse_ok("2-3-4"), 0, 0, 0) == -5.0);
    CHECK(eval(parse_ok("12/4/3"), 0, 0, 0) == 1.0);
    // unary minus binds tighter than *
    CHECK(eval(parse_ok("-2*3"), 0, 0, 0) == -6.0);
    CHECK(eval(parse_ok("2--3"), 0, 0, 0) == 5.0);
}

TEST_CASE("functions") {
    const auto sq = PsiFunction::power(2.0);
    CHECK(eval(parse_ok("psi(t)"), 3.0, 0, 0, &sq) ==
          doctest::Approx(9.0).epsilon(1e-15));
    CHECK(eval(parse_ok("mitlef(1,t)"), 1.0, 0, 0) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(eval(parse_ok("pow(x,2)"), 0, -2.0, 0) == 4.0);
    CHECK(eval(parse_ok("pow(x,-1)"), 0, 4.0, 0) == 0.25);
    CHECK(eval(parse_ok("pow(x,0.5)"), 0, 9.0, 0) == 3.0);
}

TEST_CASE("runtime errors carry positions") {
    const auto div = parse_ok("1/(t-1)");
    CHECK_THROWS_AS(eval(div, 1.0, 0, 0), EvalError);
    try {
        eval(div, 1.0, 0, 0);
    } catch (const EvalError& e) {
        CHECK(e.position() == 1);
    }

    CHECK_THROWS_AS(eval(parse_ok("psi(t)"), 1.0, 0, 0), EvalError);
    CHECK_THROWS_AS(eval(parse_ok("pow(x,0.5)"), 0, -1.0, 0), EvalError);
    CHECK_THROWS_AS(eval(parse_ok("pow(x,-2)"), 0, 0.0, 0), EvalError);
    CHECK_THROWS_AS(eval(parse_ok("mitlef(0.5,t)"), -1.0, 0, 0), EvalError);
}

TEST_CASE("parse errors carry in-bounds positions") {
    const std::vector<std::string> bad = {
        "",        "(",        ")",      "1+",      "1+(",     "foo",
        "t t",     "1..2",     "abs",    "abs(",    "abs(x",   "abs x",
        "pow(x)",  "pow(x,t)", "pow(,2)", "mitlef(t,x)", "mitlef(0.5)",
        "1*/2",    "2**3",     "@",      "x$",      "psi",     "psi()",
        "1,2",     "((1)",     "(1))",   "1 2",     "-",       "--",
        ".",       "x+*2",     "pow(x,2",  "mitlef(0.5,t",
        "abs(x))", "w w w",    "unknown(3)", "T",   "X",       "tt",
        "1e.5",    "pow(x 2)", "mitlef 0.5", "/3",  "*",
        "()",      "abs()",    "psi(t))", "2+()",    "pow()",   "5!",
    };
    REQUIRE(bad.size() >= 50);
    for (const auto& src : bad) {
        const auto err = parse_err(src);
        CHECK(err.position <= src.size() + 1);
        CHECK_FALSE(err.message.empty());
    }
}

TEST_CASE("print-parse round trip on 1000 generated expressions") {
    std::mt19937 rng(20240817);
    int done = 0;
    while (done < 1000) {
        const std::string src = random_source(rng, 4);
        auto first = parse_expression(src);
        REQUIRE_MESSAGE(std::holds_alternative<Expression>(first),
                        "generator produced unparsable text: " << src);
        const auto& e1 = std::get<Expression>(first);
        const std::string printed = e1.to_string();
        auto second = parse_expression(printed);
        REQUIRE_MESSAGE(std::holds_alternative<Expression>(second),
                        "printed form failed to parse: " << printed);
        CHECK_MESSAGE(e1.structurally_equal(std::get<Expression>(second)),
                      "round trip changed structure: " << src << " -> "
                                                       << printed);
        ++done;
    }
}

TEST_CASE("evaluation is total: errors propagate as exceptions, never abort") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    const auto psi = PsiFunction::identity();
    for (int i = 0; i < 400; ++i) {
        const std::string src = random_source(rng, 4);
        auto outcome = parse_expression(src);
        REQUIRE(std::holds_alternative<Expression>(outcome));
        const auto& e = std::get<Expression>(outcome);
        try {
            const double v = eval(e, std::abs(val(rng)), val(rng), val(rng), &psi);
            (void)v;
        } catch (const EvalError&) {
            // acceptable: division by zero or a domain error inside the tree
        }
    }
}

TEST_CASE("structural equality distinguishes different trees") {
    CHECK(parse_ok("1+2").structurally_equal(parse_ok("1 + 2")));
    CHECK_FALSE(parse_ok("1+2").structurally_equal(parse_ok("2+1")));
    CHECK_FALSE(parse_ok("1+2").structurally_equal(parse_ok("1-2")));
    CHECK_FALSE(parse_ok("pow(x,2)").structurally_equal(parse_ok("pow(x,3)")));
    CHECK_FALSE(parse_ok("t").structurally_equal(parse_ok("x")));
    CHECK(parse_ok("1+2*3").structurally_equal(parse_ok("1+(2*3)")));
}

TEST_CASE("variable reference scan") {
    const auto e = parse_ok("1/(5+psi(t))*(abs(x)+w)");
    CHECK(e.references(ExprVar::T));
    CHECK(e.references(ExprVar::X));
    CHECK(e.references(ExprVar::W));
    const auto k = parse_ok("abs(x)/(10+t)");
    CHECK_FALSE(k.references(ExprVar::W));
}

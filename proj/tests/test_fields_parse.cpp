#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "paralab/expr_parse.hpp"
#include "paralab/field.hpp"

using namespace paralab;

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

double eval(const std::string& src, std::vector<double> at) {
    return parse_expression(src, kXYZ).eval_value(at);
}

}  // namespace

TEST_CASE("parser handles precedence, associativity and functions") {
    CHECK(eval("1 + 2*3", {0, 0, 0}) == 7.0);
    CHECK(eval("(1 + 2)*3", {0, 0, 0}) == 9.0);
    // Right-associative: 2^(3^2) = 512, not (2^3)^2 = 64.  The exponent is a
    // computed subtree, so the value goes through exp/log and may be an ulp off.
    CHECK(eval("2^3^2", {0, 0, 0}) == doctest::Approx(512.0).epsilon(1e-13));
    CHECK(std::abs(eval("2^3^2", {0, 0, 0}) - 64.0) > 400.0);
    CHECK(eval("2^-3", {0, 0, 0}) == doctest::Approx(0.125));
    CHECK(eval("-2^2", {0, 0, 0}) == -4.0);  // ^ binds tighter than unary -
    CHECK(eval("6/3/2", {0, 0, 0}) == 1.0);  // left-associative
    CHECK(eval("1 - 2 - 3", {0, 0, 0}) == -4.0);
    CHECK(eval("exp(2*z)", {0, 0, 0.5}) == doctest::Approx(std::exp(1.0)));
    CHECK(eval("sinh(x)^2 - cosh(x)^2", {0.7, 0, 0}) == doctest::Approx(-1.0));
    CHECK(eval("1.5e2 + .0", {0, 0, 0}) == doctest::Approx(150.0));
    CHECK(eval("x*-y", {3, 4, 0}) == -12.0);
}

TEST_CASE("unary minus applies after the power is formed") {
    // -y^2 at y = 3 must be -(y^2) = -9, never (-y)^2 = 9.
    CHECK(eval("-y^2", {0, 3, 0}) == -9.0);
    CHECK(eval("(-y)^2", {0, 3, 0}) == 9.0);
}

TEST_CASE("differential notation is rejected as an unknown identifier") {
    // Manifests describe one-forms by component arrays, never dx symbols.
    try {
        parse_expression("dz - y*dx", kXYZ);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown identifier 'dz'") != std::string::npos);
        CHECK(e.offset() == 0);
    }
}

TEST_CASE("syntax errors carry byte offsets and clear messages") {
    auto offset_of = [](const std::string& src) {
        try {
            parse_expression(src, kXYZ);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return static_cast<size_t>(-1);
    };
    CHECK(offset_of("1 + ") == 4);
    CHECK(offset_of("(x + y") == 6);
    CHECK(offset_of("x + * y") == 4);
    CHECK(offset_of("x ? y") == 2);
    CHECK(offset_of("foo(x)") == 0);
    CHECK(offset_of("1 2") == 2);  // trailing input
    CHECK_THROWS_AS(parse_expression("", kXYZ), ParseError);
    CHECK_THROWS_AS(parse_expression("1.e", kXYZ), ParseError);
    CHECK_THROWS_AS(parse_expression(".", kXYZ), ParseError);
}

TEST_CASE("deeply nested input errors out instead of overflowing the stack") {
    std::string src(5000, '(');
    src += "x";
    src.append(5000, ')');
    CHECK_THROWS_AS(parse_expression(src, kXYZ), ParseError);
}

TEST_CASE("printing then reparsing yields a structurally identical tree") {
    const std::vector<std::string> srcs = {
        "1 + 2*3",
        "-y^2",
        "(-y)^2",
        "2^-3",
        "2^3^2",
        "x*-y",
        "a_long_name - -2",
        "exp(2*z)*sin(x*y) - tanh(z)/(1 + x^2)",
        "sqrt(1 + x*x) + log(2 + y*y)^2",
        "x/(y/z) - (x/y)/z",
        "1 - (2 - 3) - 4",
        "-(x + y)*z^(x + 1)",
    };
    const std::vector<std::string> coords = {"x", "y", "z", "a_long_name"};
    for (const auto& src : srcs) {
        CAPTURE(src);
        const ScalarField first = parse_expression(src, coords);
        const std::string printed = parse_expression(first.to_string(coords), coords)
                                        .to_string(coords);
        const ScalarField second = parse_expression(first.to_string(coords), coords);
        CHECK(first.same_structure(second));
        CHECK(first.to_string(coords) == printed);  // printing is a fixed point
    }
}

TEST_CASE("parser survives 10k random byte strings") {
    // Fuzz property: every input yields either a field or a ParseError;
    // nothing crashes, and successes evaluate or raise EvalError only.
    std::mt19937_64 rng(123456789);
    const std::string alphabet = "xyz+-*/^().,0123456789eE \t_aqs";
    int parsed = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const size_t len = 1 + rng() % 24;
        std::string src;
        for (size_t i = 0; i < len; ++i) src += alphabet[rng() % alphabet.size()];
        try {
            const ScalarField f = parse_expression(src, kXYZ);
            ++parsed;
            try {
                (void)f.eval_value(std::vector<double>{0.5, 0.25, 0.125});
            } catch (const EvalError&) {
            }
        } catch (const ParseError&) {
        }
    }
    CHECK(parsed > 100);  // the alphabet is expression-shaped often enough
}

TEST_CASE("symbolic derivatives agree with jet gradients") {
    const std::vector<std::string> coords = {"x", "y", "z"};
    const ScalarField f =
        parse_expression("exp(2*z)*sin(x*y) + x^3/(2 + cosh(y))", coords);
    const std::vector<double> p = {0.4, -0.3, 0.2};
    const Jet3 j = f.eval_jet(p);
    for (int i = 0; i < 3; ++i) {
        CHECK(f.derivative(i).eval_value(p) == doctest::Approx(j.grad(i)).epsilon(1e-12));
        for (int k = 0; k < 3; ++k)
            CHECK(f.derivative(i).derivative(k).eval_value(p) ==
                  doctest::Approx(j.hess(i, k)).epsilon(1e-12));
    }
}

TEST_CASE("required_dim reports the highest referenced coordinate") {
    CHECK(parse_expression("1 + 2", kXYZ).required_dim() == 0);
    CHECK(parse_expression("x*x", kXYZ).required_dim() == 1);
    CHECK(parse_expression("x + z", kXYZ).required_dim() == 3);
}

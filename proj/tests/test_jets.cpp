#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "paralab/field.hpp"
#include "paralab/jet.hpp"
#include "paralab/sampling.hpp"

using namespace paralab;

namespace {

ScalarField coord(int i) { return ScalarField::coordinate(i); }

// A moderately nasty smooth field exercising every node kind.
ScalarField mixed_field() {
    const ScalarField x = coord(0);
    const ScalarField y = coord(1);
    const ScalarField z = coord(2);
    return exp(ScalarField::constant(2.0) * z) * sin(x * y) +
           pow(ScalarField::constant(1.0) + x * x, 3.0) / cosh(y) - tanh(z) * log(x * x + 2.0);
}

}  // namespace

TEST_CASE("jet of exp(2z) carries the closed-form derivative ladder") {
    // d^k/dz^k exp(2z) = 2^k exp(2z); every mixed slot vanishes.
    const ScalarField f = exp(ScalarField::constant(2.0) * coord(2));
    const std::vector<double> p = {0.3, -0.7, 0.25};
    const Jet3 j = f.eval_jet(p);
    const double v = std::exp(2.0 * p[2]);
    CHECK(j.value() == doctest::Approx(v).epsilon(1e-14));
    CHECK(j.grad(2) == doctest::Approx(2.0 * v).epsilon(1e-14));
    CHECK(j.hess(2, 2) == doctest::Approx(4.0 * v).epsilon(1e-14));
    CHECK(j.third(2, 2, 2) == doctest::Approx(8.0 * v).epsilon(1e-14));
    CHECK(j.grad(0) == 0.0);
    CHECK(j.hess(0, 2) == 0.0);
    CHECK(j.third(0, 1, 2) == 0.0);
}

TEST_CASE("jet coefficients match central finite differences of eval_value") {
    // Pinned steps and bounds: orders 1-2 at step 1e-4 within 1e-6 relative,
    // order 3 at step 1e-3 within 1e-3.
    const ScalarField f = mixed_field();
    std::mt19937_64 rng(11);
    const std::vector<std::array<double, 2>> box(3, {0.2, 1.2});
    for (int trial = 0; trial < 12; ++trial) {
        const std::vector<double> p = sample_box(box, rng);
        CHECK(fd_residual(f, p, 1, 1e-4) < 1e-6);
        CHECK(fd_residual(f, p, 2, 1e-4) < 1e-6);
        CHECK(fd_residual(f, p, 3, 1e-3) < 1e-3);
    }
}

TEST_CASE("jet arithmetic satisfies the Leibniz rule slotwise") {
    const ScalarField a = mixed_field();
    const ScalarField b = sin(coord(0)) + pow(coord(2), 2.0) * coord(1);
    std::mt19937_64 rng(7);
    const std::vector<std::array<double, 2>> box(3, {0.2, 1.2});
    for (int trial = 0; trial < 8; ++trial) {
        const std::vector<double> p = sample_box(box, rng);
        const Jet3 ja = a.eval_jet(p);
        const Jet3 jb = b.eval_jet(p);
        const Jet3 prod = ja * jb;
        for (int i = 0; i < 3; ++i) {
            const double want = ja.grad(i) * jb.value() + ja.value() * jb.grad(i);
            CHECK(prod.grad(i) == doctest::Approx(want).epsilon(1e-12));
            for (int j = 0; j < 3; ++j) {
                const double w2 = ja.hess(i, j) * jb.value() + ja.grad(i) * jb.grad(j) +
                                  ja.grad(j) * jb.grad(i) + ja.value() * jb.hess(i, j);
                CHECK(prod.hess(i, j) == doctest::Approx(w2).epsilon(1e-12));
            }
        }
        const Jet3 sum = ja + jb;
        CHECK(sum.value() == doctest::Approx(ja.value() + jb.value()));
        CHECK(sum.third(0, 1, 2) == doctest::Approx(ja.third(0, 1, 2) + jb.third(0, 1, 2)));
    }
}

TEST_CASE("jet division inverts multiplication and flags zero denominators") {
    const ScalarField a = mixed_field();
    const ScalarField b = ScalarField::constant(2.0) + sin(coord(1));
    const std::vector<double> p = {0.4, 0.9, 0.6};
    const Jet3 ja = a.eval_jet(p);
    const Jet3 jb = b.eval_jet(p);
    const Jet3 q = ja / jb;
    const Jet3 back = q * jb;
    CHECK(back.value() == doctest::Approx(ja.value()).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(back.third(i, j, k) ==
                      doctest::Approx(ja.third(i, j, k)).epsilon(1e-10).scale(1.0));

    const Jet3 zero = Jet3::constant(3, 0.0);
    CHECK_THROWS_AS(ja / zero, EvalError);
}

TEST_CASE("compose applies the univariate chain rule through order 3") {
    // h(u) = u^3 against the jet of u = x + y^2: compare with the direct
    // symbolic cube.
    const ScalarField u = coord(0) + coord(1) * coord(1);
    const ScalarField cube = u * u * u;
    const std::vector<double> p = {0.7, -0.4};
    const Jet3 ju = u.eval_jet(p);
    const double uv = ju.value();
    const Jet3 composed = ju.compose(uv * uv * uv, 3.0 * uv * uv, 6.0 * uv, 6.0);
    const Jet3 direct = cube.eval_jet(p);
    CHECK(composed.value() == doctest::Approx(direct.value()).epsilon(1e-13));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                CHECK(composed.third(i, j, k) ==
                      doctest::Approx(direct.third(i, j, k)).epsilon(1e-12));
}

TEST_CASE("pow_int matches repeated multiplication and reciprocals") {
    const ScalarField u = ScalarField::constant(1.5) + coord(0) * coord(1);
    const std::vector<double> p = {0.3, 0.8};
    const Jet3 ju = u.eval_jet(p);
    const Jet3 sq = ju.pow_int(2);
    const Jet3 direct = ju * ju;
    CHECK(sq.hess(0, 1) == doctest::Approx(direct.hess(0, 1)).epsilon(1e-13));
    const Jet3 inv = ju.pow_int(-1);
    const Jet3 one = inv * ju;
    CHECK(one.value() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(one.grad(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(ju.pow_int(0).value() == 1.0);
}

TEST_CASE("domain errors surface as EvalError, not NaN") {
    const std::vector<double> neg = {-2.0};
    CHECK_THROWS_AS(log(coord(0)).eval_jet(neg), EvalError);
    CHECK_THROWS_AS(sqrt(coord(0)).eval_jet(neg), EvalError);
    CHECK_THROWS_AS(log(coord(0)).eval_value(neg), EvalError);
}

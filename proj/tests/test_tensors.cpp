#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "paralab/tensor.hpp"

using namespace paralab;

namespace {

std::vector<double> random_symmetric(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = u(rng);
            m[static_cast<size_t>(i) * n + j] = v;
            m[static_cast<size_t>(j) * n + i] = v;
        }
    return m;
}

}  // namespace

TEST_CASE("Jacobi eigenvalues match hand-diagonalizable matrices") {
    // [[2,1],[1,2]] has eigenvalues 1 and 3.
    const std::vector<double> a = {2, 1, 1, 2};
    const auto ev = symmetric_eigenvalues(a, 2);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));

    // diag(-1, 0, 4) stays put and comes back sorted.
    const std::vector<double> d = {4, 0, 0, 0, -1, 0, 0, 0, 0};
    const auto evd = symmetric_eigenvalues(d, 3);
    CHECK(evd[0] == doctest::Approx(-1.0));
    CHECK(evd[1] == doctest::Approx(0.0).scale(1.0));
    CHECK(evd[2] == doctest::Approx(4.0));
}

TEST_CASE("eigenvalues satisfy trace and determinant invariants on random input") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto m = random_symmetric(rng, n);
        const auto ev = symmetric_eigenvalues(m, n);
        REQUIRE(static_cast<int>(ev.size()) == n);
        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += m[static_cast<size_t>(i) * n + i];
        double sum = 0.0;
        for (double v : ev) sum += v;
        CHECK(sum == doctest::Approx(trace).epsilon(1e-10).scale(1.0));
        for (size_t i = 1; i < ev.size(); ++i) CHECK(ev[i - 1] <= ev[i]);

        double det_ref = 1.0;
        for (double v : ev) det_ref *= v;
        try {
            double det = 0.0;
            (void)invert_matrix(m, n, &det);
            CHECK(det == doctest::Approx(det_ref).epsilon(1e-9).scale(1.0));
        } catch (const DegenerateMetricError&) {
            CHECK(std::abs(det_ref) < 1e-10);
        }
    }
}

TEST_CASE("metric_index counts negative directions and flags near-zero bands") {
    const std::vector<double> lorentz = {-1, 0, 0, 0, 1, 0, 0, 0, 1};
    CHECK(metric_index(lorentz, 3) == 1);
    const std::vector<double> neutral = {0, 1, 1, 0};  // eigenvalues -1, 1
    CHECK(metric_index(neutral, 2) == 1);
    const std::vector<double> negdef = {-2, 0, 0, -3};
    CHECK(metric_index(negdef, 2) == 2);
    const std::vector<double> singular = {1, 0, 0, 0};
    CHECK_THROWS_AS(metric_index(singular, 2), DegenerateMetricError);
}

TEST_CASE("numeric_rank sees through scale and near-zero pivots") {
    const std::vector<double> full = {1, 2, 3, 5};
    CHECK(numeric_rank(full, 2) == 2);
    const std::vector<double> rank1 = {1, 2, 2, 4};
    CHECK(numeric_rank(rank1, 2) == 1);
    // Same rank-1 structure scaled up hugely: relative tolerance must hold.
    const std::vector<double> rank1_big = {1e12, 2e12, 2e12, 4e12};
    CHECK(numeric_rank(rank1_big, 2) == 1);
    const std::vector<double> zero(9, 0.0);
    CHECK(numeric_rank(zero, 3) == 0);
}

TEST_CASE("invert_matrix round-trips and rejects singular input") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<double> m(static_cast<size_t>(n) * n);
        for (auto& v : m) v = u(rng);
        for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] += 4.0;  // keep well-conditioned
        const auto inv = invert_matrix(m, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k)
                    s += m[static_cast<size_t>(i) * n + k] * inv[static_cast<size_t>(k) * n + j];
                CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
            }
    }
    const std::vector<double> sing = {1, 2, 2, 4};
    CHECK_THROWS_AS(invert_matrix(sing, 2), DegenerateMetricError);
}

TEST_CASE("contract traces an up slot against a down slot") {
    // T^i_j = diag(1, 2, 3); trace = 6.
    LabeledTensor t(3, {Variance::Up, Variance::Down});
    t.at({0, 0}) = 1;
    t.at({1, 1}) = 2;
    t.at({2, 2}) = 3;
    const LabeledTensor tr = contract(t, 0, 1);
    CHECK(tr.rank() == 0);
    CHECK(tr.data()[0] == 6.0);

    // R^l_{ijk} contracted on (l, j) leaves a rank-2 tensor: spot-check one entry.
    LabeledTensor r(2, {Variance::Up, Variance::Down, Variance::Down, Variance::Down});
    r.at({0, 0, 0, 1}) = 5;
    r.at({1, 0, 1, 1}) = 7;
    const LabeledTensor ric = contract(r, 0, 2);
    CHECK(ric.rank() == 2);
    CHECK(ric.at({0, 1}) == 12.0);
}

TEST_CASE("raising then lowering an index is the identity") {
    const int n = 3;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    // An indefinite but invertible metric.
    LabeledTensor g(n, {Variance::Down, Variance::Down});
    const std::vector<double> gm = {2, 0.3, 0, 0.3, -1, 0.1, 0, 0.1, 1.5};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at({i, j}) = gm[static_cast<size_t>(i) * n + j];
    LabeledTensor ginv(n, {Variance::Up, Variance::Up});
    const auto gi = invert_matrix(gm, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ginv.at({i, j}) = gi[static_cast<size_t>(i) * n + j];

    LabeledTensor t(n, {Variance::Up, Variance::Down, Variance::Down});
    for (auto& v : t.data()) v = u(rng);

    const LabeledTensor lowered = move_index(t, 0, g, MoveDirection::Lower);
    CHECK(lowered.variances()[0] == Variance::Down);
    const LabeledTensor back = move_index(lowered, 0, ginv, MoveDirection::Raise);
    CHECK(back.variances()[0] == Variance::Up);
    REQUIRE(back.data().size() == t.data().size());
    for (size_t i = 0; i < t.data().size(); ++i)
        CHECK(back.data()[i] == doctest::Approx(t.data()[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("move_index refuses mismatched variances") {
    LabeledTensor g(2, {Variance::Down, Variance::Down});
    g.at({0, 0}) = g.at({1, 1}) = 1.0;
    LabeledTensor t(2, {Variance::Down});
    t.at({0}) = 1.0;
    // Lowering an already-Down slot is a caller error.
    CHECK_THROWS_AS(move_index(t, 0, g, MoveDirection::Lower), std::invalid_argument);
    CHECK_THROWS_AS(contract(t, 0, 0), std::invalid_argument);
}

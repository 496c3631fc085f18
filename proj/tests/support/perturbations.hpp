#pragma once

// Chart deformations for property tests.  Each builder keeps the almost
// paracontact metric axioms valid by construction while moving the
// connection-level behavior, so implications quantified over all structures
// (for example: s-paracontact iff paracontact with closed eta) can be
// exercised away from the hand-picked gallery.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "paralab/chart.hpp"
#include "paralab/field.hpp"
#include "paralab/gallery.hpp"
#include "paralab/sampling.hpp"
#include "paralab/tensor.hpp"

namespace paralab::testing {

// g_a = a g + (1 - a) eps eta (x) eta.  On ker eta this scales the metric
// by a while g(xi, .) = eps eta is untouched, so every structure axiom
// survives for any a != 0; the Levi-Civita connection does not.
inline StructuredChart metric_pencil(const StructuredChart& base, double a) {
    const int n = base.dim;
    const ScalarField ca = ScalarField::constant(a);
    const ScalarField cb = ScalarField::constant((1.0 - a) * base.epsilon);
    std::vector<ScalarField> met(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const ScalarField entry =
                ca * base.g(i, j) + cb * (base.eta[static_cast<size_t>(i)] *
                                          base.eta[static_cast<size_t>(j)]);
            met[static_cast<size_t>(i) * n + j] = entry;
            met[static_cast<size_t>(j) * n + i] = entry;  // shared node
        }
    }
    return make_chart(base.name + "_pencil", n, base.epsilon, base.coords, base.domain, met,
                      base.phi, base.xi, base.eta);
}

// Potential-generated chart with a randomized polynomial potential and
// randomized positive polynomial weights; always s-paracontact.
inline StructuredChart random_potential_structure(std::mt19937_64& rng, const std::string& name) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int q = 1 + static_cast<int>(rng() % 2);
    const int m = p + q;
    auto coef = [&rng]() { return -1.0 + 2.0 * unit_double(rng()); };

    ScalarField theta = ScalarField::constant(0.0);
    for (int i = 0; i < m; ++i) {
        theta = theta + ScalarField::constant(coef()) * ScalarField::coordinate(i);
        for (int j = i; j < m; ++j) {
            theta = theta + ScalarField::constant(0.5 * coef()) *
                                (ScalarField::coordinate(i) * ScalarField::coordinate(j));
        }
    }
    std::vector<ScalarField> F;
    for (int i = 0; i < m; ++i) {
        // 1 + u + w x_k^2 with u, w > 0: positive on any box.
        const int k = static_cast<int>(rng() % static_cast<uint64_t>(m));
        F.push_back(ScalarField::constant(1.0 + unit_double(rng())) +
                    ScalarField::constant(unit_double(rng())) *
                        (ScalarField::coordinate(k) * ScalarField::coordinate(k)));
    }
    return make_potential_structure(p, q, theta, F, name);
}

// Almost-product-generated chart with J conjugated away from the diagonal:
// J = P D P^{-1} with D = diag(+-1) and G = P^{-T} H P^{-1} for a positive
// diagonal H, so J^2 = I and G(JX, JY) = G(X, Y) hold exactly.
inline StructuredChart random_product_chart(std::mt19937_64& rng, const std::string& name) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const size_t un = static_cast<size_t>(n);
    std::vector<double> P;
    std::vector<double> Pinv;
    for (;;) {
        P.assign(un * un, 0.0);
        for (size_t i = 0; i < un; ++i) {
            P[i * un + i] = 1.0;
            for (size_t j = 0; j < un; ++j)
                if (j != i) P[i * un + j] = -0.4 + 0.8 * unit_double(rng());
        }
        try {
            Pinv = invert_matrix(P, n);
            break;
        } catch (const DegenerateMetricError&) {
            continue;  // redraw
        }
    }
    std::vector<double> D(un, 1.0);
    D[un - 1] = -1.0;  // at least one -1 so J != I
    for (size_t i = 0; i + 1 < un; ++i)
        if (rng() % 2) D[i] = -1.0;
    std::vector<double> H(un);
    for (size_t i = 0; i < un; ++i) H[i] = 0.5 + unit_double(rng());

    std::vector<ScalarField> J(un * un), G(un * un);
    for (size_t i = 0; i < un; ++i) {
        for (size_t j = 0; j < un; ++j) {
            double jv = 0.0;
            double gv = 0.0;
            for (size_t k = 0; k < un; ++k) {
                jv += P[i * un + k] * D[k] * Pinv[k * un + j];
                gv += Pinv[k * un + i] * H[k] * Pinv[k * un + j];
            }
            J[i * un + j] = ScalarField::constant(jv);
            G[i * un + j] = ScalarField::constant(gv);
        }
    }
    // Mirror the symmetric G slots onto shared nodes for make_chart.
    for (size_t i = 0; i < un; ++i)
        for (size_t j = i + 1; j < un; ++j) G[j * un + i] = G[i * un + j];
    const int eps = (rng() % 2) ? 1 : -1;
    return from_almost_product(n, J, G, eps, {}, name);
}

}  // namespace paralab::testing

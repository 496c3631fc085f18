#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paralab/field.hpp"
#include "paralab/tensor.hpp"

namespace paralab {

// One coordinate chart carrying an (epsilon)-almost paracontact metric
// candidate: metric g_ij, endomorphism phi^i_j (first index contravariant),
// vector xi^i, one-form eta_i, and the declared sign epsilon = g(xi, xi).
// Nothing is assumed to hold; the axiom report measures what actually does.
struct StructuredChart {
    std::string name;
    int dim = 0;
    int epsilon = 1;  // +1 or -1
    std::vector<std::string> coords;
    std::vector<std::array<double, 2>> domain;  // per-coordinate [lo, hi]
    std::vector<ScalarField> metric;  // dim*dim, row-major, symmetric slots share nodes
    std::vector<ScalarField> phi;     // phi^i_j at i*dim + j
    std::vector<ScalarField> xi;      // dim
    std::vector<ScalarField> eta;     // dim

    const ScalarField& g(int i, int j) const { return metric[static_cast<size_t>(i) * dim + j]; }
    const ScalarField& phi_at(int i, int j) const { return phi[static_cast<size_t>(i) * dim + j]; }
};

// Validates shapes, the domain, and metric symmetry.  Mirrored metric slots
// must be structurally equal expressions; afterwards they share one node.
StructuredChart make_chart(std::string name, int dim, int epsilon,
                           std::vector<std::string> coords,
                           std::vector<std::array<double, 2>> domain,
                           std::vector<ScalarField> metric, std::vector<ScalarField> phi,
                           std::vector<ScalarField> xi, std::vector<ScalarField> eta);

// All structure data evaluated at one point: jets through order 3 for the
// fields, plus the inverse metric and determinant at the point.
struct FrameJets {
    int dim = 0;
    int epsilon = 1;
    std::vector<double> point;
    std::vector<Jet3> g, phi;  // dim*dim
    std::vector<Jet3> xi, eta; // dim
    std::vector<double> ginv;  // dim*dim values
    double det_g = 0.0;

    const Jet3& gj(int i, int j) const { return g[static_cast<size_t>(i) * dim + j]; }
    const Jet3& phij(int i, int j) const { return phi[static_cast<size_t>(i) * dim + j]; }
    double ginv_at(int i, int j) const { return ginv[static_cast<size_t>(i) * dim + j]; }
};

// Throws DegenerateMetricError when |det g| < 1e-12 * max(1, max|g_ij|)^dim.
FrameJets evaluate_frame(const StructuredChart& chart, std::span<const double> point);

// Pointwise residuals of the defining axioms, each scaled by
// max(1, largest term entering the identity).
struct AxiomReport {
    double phi_squared = 0.0;    // phi^2 - (I - xi (x) eta)
    double eta_of_xi = 0.0;      // eta(xi) - 1
    double phi_xi = 0.0;         // phi(xi)
    double eta_phi = 0.0;        // eta o phi
    double phi_cubed = 0.0;      // phi^3 - phi
    double compatibility = 0.0;  // g(phi X, phi Y) - g(X, Y) + eps eta(X) eta(Y)
    double phi_symmetry = 0.0;   // g(phi X, Y) - g(X, phi Y)
    double xi_lowering = 0.0;    // g(X, xi) - eps eta(X)
    double xi_norm = 0.0;        // g(xi, xi) - eps
    int rank_phi = 0;
    int index = 0;               // negative eigenvalue count of g
    double kernel_min_eig = 0.0; // smallest |eigenvalue| of g on ker eta
    bool kernel_nondegenerate = false;

    double max_structural() const;
    bool passes(int dim, double tol) const;
};

AxiomReport axiom_report(const StructuredChart& chart, std::span<const double> point,
                         double tol = 1e-9);

// Builds the (n+1)-dimensional chart (M x R, phi = (J, 0), xi = d/dt,
// eta = dt, g = G + eps dt^2) from an almost product candidate (J, G) on the
// first n coordinates.  J^2 = I and G(J., J.) = G are spot-checked on seeded
// sample points.
StructuredChart from_almost_product(int n, std::vector<ScalarField> J,
                                    std::vector<ScalarField> G, int epsilon,
                                    std::vector<std::string> coords = {},
                                    const std::string& name = "product");

}  // namespace paralab

#pragma once

#include <string>
#include <vector>

#include "paralab/chart.hpp"

namespace paralab {

// Levi-Civita data at one point: Christoffel symbols Gamma^k_ij together
// with their first and second coordinate derivatives, which is exactly what
// curvature and its covariant derivative need.  Index order puts derivative
// slots first: dgamma[m][k][i][j], d2gamma[m][n][k][i][j].
struct ConnectionFrame {
    int dim = 0;
    std::vector<double> gamma, dgamma, d2gamma;
    std::vector<double> dginv;  // d_m g^{kl}, [m][k][l]

    double G(int k, int i, int j) const {
        const size_t n = static_cast<size_t>(dim);
        return gamma[(static_cast<size_t>(k) * n + i) * n + j];
    }
    double dG(int m, int k, int i, int j) const {
        const size_t n = static_cast<size_t>(dim);
        return dgamma[((static_cast<size_t>(m) * n + k) * n + i) * n + j];
    }
    double d2G(int m, int nn, int k, int i, int j) const {
        const size_t n = static_cast<size_t>(dim);
        return d2gamma[(((static_cast<size_t>(m) * n + nn) * n + k) * n + i) * n + j];
    }
};

ConnectionFrame christoffel_frame(const FrameJets& f);

// A tensor field given by per-component scalar fields; flat row-major
// component order matching LabeledTensor.
struct TensorField {
    std::vector<Variance> variances;
    std::vector<ScalarField> components;
};

// Covariant derivative at a point; the new covariant slot comes first.
LabeledTensor covariant_derivative(const StructuredChart& chart, std::span<const double> point,
                                   const TensorField& field);

// Same computation from already-evaluated component values and gradients
// (grads indexed [m * ncomp + flat]).
LabeledTensor covariant_from_values(int dim, const std::vector<Variance>& variances,
                                    std::span<const double> values, std::span<const double> grads,
                                    const ConnectionFrame& conn);

// The structure tensors measuring normality, all at one point:
//   nij_phi  Nijenhuis torsion [phi, phi]^k_ij          (partial-derivative route)
//   nij_cov  the same from covariant derivatives        (cross-check route)
//   d_eta    (d eta)_ij = (d_i eta_j - d_j eta_i) / 2
//   n1^k_ij  [phi,phi] - 2 d_eta (x) xi
//   n2_ij    (L_{phi e_i} eta)(e_j) - (L_{phi e_j} eta)(e_i)
//   n3^k_j   (L_xi phi)^k_j
//   n4_j     (L_xi eta)_j
// *_scale fields hold max(1, largest term entering the tensor) for residual
// normalization.
struct NormalityTensors {
    int dim = 0;
    std::vector<double> nij_phi, nij_cov, d_eta, n1, n2, n3, n4;
    double nij_scale = 1.0, deta_scale = 1.0, n1_scale = 1.0, n2_scale = 1.0,
           n3_scale = 1.0, n4_scale = 1.0;
};

NormalityTensors normality_tensors(const FrameJets& f, const ConnectionFrame& conn);

// Scaled max-abs residuals of the defining conditions of each structure
// class.  lie_paracontact recomputes the paracontact defect through the Lie
// derivative of g; it must match `paracontact` to roundoff.
struct StructureResiduals {
    double paracontact = 0.0;
    double lie_paracontact = 0.0;
    double s_paracontact = 0.0;
    double para_sasakian = 0.0;
    double eta_closed = 0.0;
    double xi_geodesic = 0.0;
};

StructureResiduals structure_residuals(const FrameJets& f, const ConnectionFrame& conn);

struct IdentityValue {
    std::string name;
    double residual = 0.0;
};

// Identities satisfied by every almost paracontact structure (metric not
// involved): the Lie-bracket relations among N1..N4, d eta and phi.
std::vector<IdentityValue> normality_rows(const FrameJets& f);

// Identities for the fundamental form Phi(X, Y) = g(X, phi Y) and its
// covariant derivative; they need the full metric structure axioms.
std::vector<IdentityValue> phi_rows(const FrameJets& f, const ConnectionFrame& conn);

// Residual of d eta(phi X, phi Y) + d eta(X, Y); zero exactly when N2
// vanishes.
double n2_criterion(const FrameJets& f);

// Lie derivatives of the structure fields along xi, exposed for tests.
std::vector<double> lie_metric(const FrameJets& f);  // [i][j]
std::vector<double> lie_phi(const FrameJets& f);     // [k][j]
std::vector<double> lie_eta(const FrameJets& f);     // [j]

}  // namespace paralab

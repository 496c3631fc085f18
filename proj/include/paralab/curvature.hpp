#pragma once

#include "paralab/connection.hpp"

namespace paralab {

// Curvature data at one point.  Conventions:
//   R(X,Y)Z            = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   R^l_ijk            = d_i Gamma^l_jk - d_j Gamma^l_ik
//                        + Gamma^l_ip Gamma^p_jk - Gamma^l_jp Gamma^p_ik
//   R_ijkl             = g(R(e_i, e_j) e_k, e_l)
//   S(Y, Z)            = trace of X -> R(X, Y) Z, i.e. S_jk = R^i_ijk
// Covariant derivatives put the new slot first: nabla_r[m][i][j][k][l].
struct CurvatureFrame {
    int dim = 0;
    std::vector<double> r_up;         // [l][i][j][k]
    std::vector<double> dr_up;        // [m][l][i][j][k]
    std::vector<double> r_down;       // [i][j][k][l]
    std::vector<double> nabla_r;      // [m][i][j][k][l]
    std::vector<double> ricci;        // [j][k]
    std::vector<double> nabla_ricci;  // [m][j][k]
    double scalar = 0.0;
    // max(1, largest term) scales for the covariant derivatives, used to
    // normalize the "is zero" residuals built from them.
    double nabla_r_scale = 1.0;
    double nabla_ricci_scale = 1.0;

    double Rup(int l, int i, int j, int k) const {
        const size_t n = static_cast<size_t>(dim);
        return r_up[((static_cast<size_t>(l) * n + i) * n + j) * n + k];
    }
    double Rdown(int i, int j, int k, int l) const {
        const size_t n = static_cast<size_t>(dim);
        return r_down[((static_cast<size_t>(i) * n + j) * n + k) * n + l];
    }
    double nablaR(int m, int i, int j, int k, int l) const {
        const size_t n = static_cast<size_t>(dim);
        return nabla_r[(((static_cast<size_t>(m) * n + i) * n + j) * n + k) * n + l];
    }
    double S(int j, int k) const {
        return ricci[static_cast<size_t>(j) * dim + k];
    }
    double nablaS(int m, int j, int k) const {
        const size_t n = static_cast<size_t>(dim);
        return nabla_ricci[(static_cast<size_t>(m) * n + j) * n + k];
    }
};

CurvatureFrame curvature_frame(const FrameJets& f, const ConnectionFrame& conn);

// Sectional curvature of span(X, Y); throws DegenerateMetricError when the
// plane is degenerate for g.
double sectional(const StructuredChart& chart, std::span<const double> point,
                 std::span<const double> X, std::span<const double> Y);

// Scaled max-abs residuals of the curvature-level classification conditions.
struct ClassificationResiduals {
    double flat = 0.0;                         // R = 0
    double constant_curvature_minus_eps = 0.0; // R + eps R0 = 0
    double symmetric = 0.0;                    // nabla R = 0
    double semi_symmetric = 0.0;               // R(X,Y) . R = 0
    double ricci_symmetric = 0.0;              // nabla S = 0
    double ricci_semisymmetric = 0.0;          // R(X,Y) . S = 0
    double einstein_ps = 0.0;                  // S + eps (n-1) g = 0
    double einstein_general = 0.0;             // S - (r/n) g = 0
};

ClassificationResiduals classification_residuals(const FrameJets& f, const CurvatureFrame& c);

// Antisymmetry, pair symmetry and the two Bianchi identities; hold for any
// Levi-Civita connection and so act as internal consistency rows.
std::vector<IdentityValue> curvature_generic_rows(const CurvatureFrame& c);

// Curvature identities specific to para-Sasakian structures.
std::vector<IdentityValue> ps_curvature_rows(const FrameJets& f, const CurvatureFrame& c);

// Ricci identities specific to para-Sasakian structures.
std::vector<IdentityValue> ricci_rows(const FrameJets& f, const CurvatureFrame& c);

// The fundamental-form product identity valid at constant curvature -eps.
IdentityValue const_curv_row(const FrameJets& f);

// Least-squares recurrence coefficient: alpha_m minimizing
// |nabla_m T - alpha_m T|^2 per direction, with the max-abs of the defect.
struct RecurrenceFit {
    std::vector<double> alpha;
    double residual = 0.0;
};

enum class RecurrenceTarget { Riemann, Ricci };

// Throws std::domain_error when |T| is below 1e-9 (fit is ill-posed).
RecurrenceFit recurrence_fit(const StructuredChart& chart, std::span<const double> point,
                             RecurrenceTarget target);
RecurrenceFit recurrence_fit_from(std::span<const double> nabla_t, std::span<const double> t,
                                  int dim);

}  // namespace paralab

#include "paralab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paralab {
namespace {

struct Scale {
    double s = 1.0;
    void term(double v) { s = std::max(s, std::abs(v)); }
    double apply(double diff) const { return std::abs(diff) / s; }
};

// Pointwise structure values extracted from the jets.
struct Vals {
    int n = 0;
    int eps = 1;
    std::vector<double> g, phi, Phi, P;  // P_ij = g(phi e_i, phi e_j)
    std::vector<double> xi, eta;

    double G(int i, int j) const { return g[static_cast<size_t>(i) * n + j]; }
    double Ph(int i, int j) const { return phi[static_cast<size_t>(i) * n + j]; }
    double F(int i, int j) const { return Phi[static_cast<size_t>(i) * n + j]; }
    double PP(int i, int j) const { return P[static_cast<size_t>(i) * n + j]; }
};

Vals extract(const FrameJets& f) {
    Vals v;
    v.n = f.dim;
    v.eps = f.epsilon;
    const int n = f.dim;
    const size_t un = static_cast<size_t>(n);
    v.g.resize(un * un);
    v.phi.resize(un * un);
    v.Phi.assign(un * un, 0.0);
    v.P.assign(un * un, 0.0);
    v.xi.resize(un);
    v.eta.resize(un);
    for (int i = 0; i < n; ++i) {
        v.xi[static_cast<size_t>(i)] = f.xi[static_cast<size_t>(i)].value();
        v.eta[static_cast<size_t>(i)] = f.eta[static_cast<size_t>(i)].value();
        for (int j = 0; j < n; ++j) {
            v.g[static_cast<size_t>(i) * un + j] = f.gj(i, j).value();
            v.phi[static_cast<size_t>(i) * un + j] = f.phij(i, j).value();
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double fij = 0.0, pij = 0.0;
            for (int a = 0; a < n; ++a) {
                fij += v.G(i, a) * v.Ph(a, j);
                for (int b = 0; b < n; ++b)
                    pij += v.Ph(a, i) * v.G(a, b) * v.Ph(b, j);
            }
            v.Phi[static_cast<size_t>(i) * un + j] = fij;
            v.P[static_cast<size_t>(i) * un + j] = pij;
        }
    return v;
}

}  // namespace

CurvatureFrame curvature_frame(const FrameJets& f, const ConnectionFrame& conn) {
    const int n = f.dim;
    const size_t un = static_cast<size_t>(n);
    CurvatureFrame c;
    c.dim = n;
    c.r_up.assign(un * un * un * un, 0.0);
    c.dr_up.assign(un * un * un * un * un, 0.0);
    c.r_down.assign(un * un * un * un, 0.0);
    c.nabla_r.assign(un * un * un * un * un, 0.0);
    c.ricci.assign(un * un, 0.0);
    c.nabla_ricci.assign(un * un * un, 0.0);

    // R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
    //           + Gamma^l_ip Gamma^p_jk - Gamma^l_jp Gamma^p_ik
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double r = conn.dG(i, l, j, k) - conn.dG(j, l, i, k);
                    for (int p = 0; p < n; ++p)
                        r += conn.G(l, i, p) * conn.G(p, j, k) -
                             conn.G(l, j, p) * conn.G(p, i, k);
                    c.r_up[((static_cast<size_t>(l) * un + i) * un + j) * un + k] = r;
                }

    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double r = conn.d2G(m, i, l, j, k) - conn.d2G(m, j, l, i, k);
                        for (int p = 0; p < n; ++p)
                            r += conn.dG(m, l, i, p) * conn.G(p, j, k) +
                                 conn.G(l, i, p) * conn.dG(m, p, j, k) -
                                 conn.dG(m, l, j, p) * conn.G(p, i, k) -
                                 conn.G(l, j, p) * conn.dG(m, p, i, k);
                        c.dr_up[(((static_cast<size_t>(m) * un + l) * un + i) * un + j) * un +
                                k] = r;
                    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double r = 0.0;
                    for (int a = 0; a < n; ++a)
                        r += c.Rup(a, i, j, k) * f.gj(a, l).value();
                    c.r_down[((static_cast<size_t>(i) * un + j) * un + k) * un + l] = r;
                }

    // nabla_m R_ijkl = d_m R_ijkl - Gamma^a_mi R_ajkl - Gamma^a_mj R_iakl
    //                  - Gamma^a_mk R_ijal - Gamma^a_ml R_ijka
    Scale nr_scale;
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double dpart = 0.0;
                        for (int a = 0; a < n; ++a)
                            dpart += c.dr_up[(((static_cast<size_t>(m) * un + a) * un + i) * un +
                                              j) * un + k] * f.gj(a, l).value() +
                                     c.Rup(a, i, j, k) * f.gj(a, l).grad(m);
                        double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
                        for (int a = 0; a < n; ++a) {
                            t1 += conn.G(a, m, i) * c.Rdown(a, j, k, l);
                            t2 += conn.G(a, m, j) * c.Rdown(i, a, k, l);
                            t3 += conn.G(a, m, k) * c.Rdown(i, j, a, l);
                            t4 += conn.G(a, m, l) * c.Rdown(i, j, k, a);
                        }
                        nr_scale.term(dpart);
                        nr_scale.term(t1);
                        nr_scale.term(t2);
                        nr_scale.term(t3);
                        nr_scale.term(t4);
                        c.nabla_r[(((static_cast<size_t>(m) * un + i) * un + j) * un + k) * un +
                                  l] = dpart - t1 - t2 - t3 - t4;
                    }
    c.nabla_r_scale = nr_scale.s;

    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += c.Rup(i, i, j, k);
            c.ricci[static_cast<size_t>(j) * un + k] = s;
        }

    Scale ns_scale;
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double dpart = 0.0;
                for (int i = 0; i < n; ++i)
                    dpart += c.dr_up[(((static_cast<size_t>(m) * un + i) * un + i) * un + j) *
                                     un + k];
                double t1 = 0.0, t2 = 0.0;
                for (int a = 0; a < n; ++a) {
                    t1 += conn.G(a, m, j) * c.S(a, k);
                    t2 += conn.G(a, m, k) * c.S(j, a);
                }
                ns_scale.term(dpart);
                ns_scale.term(t1);
                ns_scale.term(t2);
                c.nabla_ricci[(static_cast<size_t>(m) * un + j) * un + k] = dpart - t1 - t2;
            }
    c.nabla_ricci_scale = ns_scale.s;

    double r = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            r += f.ginv_at(j, k) * c.S(j, k);
    c.scalar = r;
    return c;
}

double sectional(const StructuredChart& chart, std::span<const double> point,
                 std::span<const double> X, std::span<const double> Y) {
    const FrameJets f = evaluate_frame(chart, point);
    const ConnectionFrame conn = christoffel_frame(f);
    const CurvatureFrame c = curvature_frame(f, conn);
    const int n = f.dim;
    if (static_cast<int>(X.size()) != n || static_cast<int>(Y.size()) != n)
        throw std::invalid_argument("sectional: vector dimension mismatch");
    double gXX = 0.0, gYY = 0.0, gXY = 0.0, num = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double gij = f.gj(i, j).value();
            gXX += gij * X[static_cast<size_t>(i)] * X[static_cast<size_t>(j)];
            gYY += gij * Y[static_cast<size_t>(i)] * Y[static_cast<size_t>(j)];
            gXY += gij * X[static_cast<size_t>(i)] * Y[static_cast<size_t>(j)];
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    num += c.Rdown(i, j, k, l) * X[static_cast<size_t>(i)] *
                           Y[static_cast<size_t>(j)] * Y[static_cast<size_t>(k)] *
                           X[static_cast<size_t>(l)];
    const double denom = gXX * gYY - gXY * gXY;
    const double band = 1e-12 * std::max({1.0, std::abs(gXX * gYY), gXY * gXY});
    if (std::abs(denom) <= band)
        throw DegenerateMetricError("sectional: the plane spanned by the two vectors is degenerate");
    return num / denom;
}

ClassificationResiduals classification_residuals(const FrameJets& f, const CurvatureFrame& c) {
    const int n = f.dim;
    const Vals v = extract(f);
    ClassificationResiduals out;

    {
        Scale sc;
        double worst = 0.0;
        for (double x : c.r_down) {
            sc.term(x);
            worst = std::max(worst, std::abs(x));
        }
        out.flat = worst / sc.s;
    }
    {
        // R_ijkl = -eps (g_jk g_il - g_ik g_jl)
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const double r0 = v.G(j, k) * v.G(i, l) - v.G(i, k) * v.G(j, l);
                        sc.term(c.Rdown(i, j, k, l));
                        sc.term(r0);
                        worst = std::max(worst,
                                         std::abs(c.Rdown(i, j, k, l) + v.eps * r0));
                    }
        out.constant_curvature_minus_eps = worst / sc.s;
    }
    {
        double worst = 0.0;
        for (double x : c.nabla_r)
            worst = std::max(worst, std::abs(x));
        out.symmetric = worst / c.nabla_r_scale;
    }
    {
        // (R(e_a, e_b) . R)^l_cde with L_ab = R(e_a, e_b) acting as a derivation.
        Scale sc;
        double worst = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int l = 0; l < n; ++l)
                    for (int cc = 0; cc < n; ++cc)
                        for (int d = 0; d < n; ++d)
                            for (int e = 0; e < n; ++e) {
                                double t0 = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
                                for (int ff = 0; ff < n; ++ff) {
                                    t0 += c.Rup(l, a, b, ff) * c.Rup(ff, cc, d, e);
                                    t1 += c.Rup(l, ff, d, e) * c.Rup(ff, a, b, cc);
                                    t2 += c.Rup(l, cc, ff, e) * c.Rup(ff, a, b, d);
                                    t3 += c.Rup(l, cc, d, ff) * c.Rup(ff, a, b, e);
                                }
                                sc.term(t0);
                                sc.term(t1);
                                sc.term(t2);
                                sc.term(t3);
                                worst = std::max(worst, std::abs(t0 - t1 - t2 - t3));
                            }
        out.semi_symmetric = worst / sc.s;
    }
    {
        double worst = 0.0;
        for (double x : c.nabla_ricci)
            worst = std::max(worst, std::abs(x));
        out.ricci_symmetric = worst / c.nabla_ricci_scale;
    }
    {
        // (R(e_a, e_b) . S)_cd = -S(L_ab c, d) - S(c, L_ab d)
        Scale sc;
        double worst = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int cc = 0; cc < n; ++cc)
                    for (int d = 0; d < n; ++d) {
                        double t1 = 0.0, t2 = 0.0;
                        for (int ff = 0; ff < n; ++ff) {
                            t1 += c.S(ff, d) * c.Rup(ff, a, b, cc);
                            t2 += c.S(cc, ff) * c.Rup(ff, a, b, d);
                        }
                        sc.term(t1);
                        sc.term(t2);
                        worst = std::max(worst, std::abs(t1 + t2));
                    }
        out.ricci_semisymmetric = worst / sc.s;
    }
    {
        // S = -eps (n-1) g
        Scale sc;
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double want = -static_cast<double>(v.eps) * (n - 1) * v.G(j, k);
                sc.term(c.S(j, k));
                sc.term(want);
                worst = std::max(worst, std::abs(c.S(j, k) - want));
            }
        out.einstein_ps = worst / sc.s;
    }
    {
        // S = (r/n) g
        Scale sc;
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double want = c.scalar / n * v.G(j, k);
                sc.term(c.S(j, k));
                sc.term(want);
                worst = std::max(worst, std::abs(c.S(j, k) - want));
            }
        out.einstein_general = worst / sc.s;
    }
    return out;
}

std::vector<IdentityValue> curvature_generic_rows(const CurvatureFrame& c) {
    const int n = c.dim;
    std::vector<IdentityValue> rows;

    {
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        sc.term(c.Rdown(i, j, k, l));
                        worst = std::max(worst, std::abs(c.Rdown(i, j, k, l) +
                                                         c.Rdown(j, i, k, l)));
                        worst = std::max(worst, std::abs(c.Rdown(i, j, k, l) +
                                                         c.Rdown(i, j, l, k)));
                    }
        rows.push_back({"riemann_antisymmetry", worst / sc.s});
    }
    {
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        sc.term(c.Rdown(i, j, k, l));
                        worst = std::max(worst, std::abs(c.Rdown(i, j, k, l) -
                                                         c.Rdown(k, l, i, j)));
                    }
        rows.push_back({"riemann_pair_symmetry", worst / sc.s});
    }
    {
        Scale sc;
        double worst = 0.0;
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        const double a = c.Rup(l, i, j, k);
                        const double b = c.Rup(l, j, k, i);
                        const double d = c.Rup(l, k, i, j);
                        sc.term(a);
                        sc.term(b);
                        sc.term(d);
                        worst = std::max(worst, std::abs(a + b + d));
                    }
        rows.push_back({"bianchi_first", worst / sc.s});
    }
    {
        Scale sc;
        double worst = 0.0;
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            const double a = c.nablaR(m, i, j, k, l);
                            const double b = c.nablaR(i, j, m, k, l);
                            const double d = c.nablaR(j, m, i, k, l);
                            sc.term(a);
                            sc.term(b);
                            sc.term(d);
                            worst = std::max(worst, std::abs(a + b + d));
                        }
        rows.push_back({"bianchi_second", worst / sc.s});
    }
    return rows;
}

std::vector<IdentityValue> ps_curvature_rows(const FrameJets& f, const CurvatureFrame& c) {
    const int n = f.dim;
    const Vals v = extract(f);
    const double eps = v.eps;
    std::vector<IdentityValue> rows;

    {
        // R(X,Y)xi = eta(X) Y - eta(Y) X
        Scale sc;
        double worst = 0.0;
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double lhs = 0.0;
                    for (int k = 0; k < n; ++k)
                        lhs += c.Rup(l, i, j, k) * v.xi[static_cast<size_t>(k)];
                    const double rhs = v.eta[static_cast<size_t>(i)] * (l == j ? 1.0 : 0.0) -
                                       v.eta[static_cast<size_t>(j)] * (l == i ? 1.0 : 0.0);
                    sc.term(lhs);
                    sc.term(rhs);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        rows.push_back({"r_xy_xi", worst / sc.s});
    }
    {
        // g(R(X,Y)Z, xi) = -eta(X) g(Y,Z) + eta(Y) g(X,Z)
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double lhs = 0.0;
                    for (int l = 0; l < n; ++l)
                        lhs += c.Rdown(i, j, k, l) * v.xi[static_cast<size_t>(l)];
                    const double rhs = -v.eta[static_cast<size_t>(i)] * v.G(j, k) +
                                       v.eta[static_cast<size_t>(j)] * v.G(i, k);
                    sc.term(lhs);
                    sc.term(rhs);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        rows.push_back({"r_xyz_xi", worst / sc.s});
    }
    {
        // eta(R(X,Y)Z) = -eps eta(X) g(Y,Z) + eps eta(Y) g(X,Z)
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double lhs = 0.0;
                    for (int l = 0; l < n; ++l)
                        lhs += v.eta[static_cast<size_t>(l)] * c.Rup(l, i, j, k);
                    const double rhs = eps * (-v.eta[static_cast<size_t>(i)] * v.G(j, k) +
                                              v.eta[static_cast<size_t>(j)] * v.G(i, k));
                    sc.term(lhs);
                    sc.term(rhs);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        rows.push_back({"eta_of_r", worst / sc.s});
    }
    {
        // R(xi,X)Y = -eps g(X,Y) xi + eta(Y) X
        Scale sc;
        double worst = 0.0;
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double lhs = 0.0;
                    for (int i = 0; i < n; ++i)
                        lhs += c.Rup(l, i, j, k) * v.xi[static_cast<size_t>(i)];
                    const double rhs = -eps * v.G(j, k) * v.xi[static_cast<size_t>(l)] +
                                       v.eta[static_cast<size_t>(k)] * (l == j ? 1.0 : 0.0);
                    sc.term(lhs);
                    sc.term(rhs);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        rows.push_back({"r_xi_x", worst / sc.s});
    }
    {
        // R(X,Y,phi Z,W) - R(X,Y,Z,phi W) =
        //   eps Phi(Y,Z) g(phi X, phi W) - eps Phi(X,Z) g(phi Y, phi W)
        //   + eps Phi(Y,W) g(phi X, phi Z) - eps Phi(X,W) g(phi Y, phi Z)
        //   + eta(Y) eta(Z) Phi(X,W) - eta(X) eta(Z) Phi(Y,W)
        //   + eta(Y) eta(W) Phi(X,Z) - eta(X) eta(W) Phi(Y,Z)
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double t1 = 0.0, t2 = 0.0;
                        for (int a = 0; a < n; ++a) {
                            t1 += c.Rdown(i, j, a, l) * v.Ph(a, k);
                            t2 += c.Rdown(i, j, k, a) * v.Ph(a, l);
                        }
                        const double ei = v.eta[static_cast<size_t>(i)];
                        const double ej = v.eta[static_cast<size_t>(j)];
                        const double ek = v.eta[static_cast<size_t>(k)];
                        const double el = v.eta[static_cast<size_t>(l)];
                        const double rhs =
                            eps * v.F(j, k) * v.PP(i, l) - eps * v.F(i, k) * v.PP(j, l) +
                            eps * v.F(j, l) * v.PP(i, k) - eps * v.F(i, l) * v.PP(j, k) +
                            ej * ek * v.F(i, l) - ei * ek * v.F(j, l) +
                            ej * el * v.F(i, k) - ei * el * v.F(j, k);
                        sc.term(t1);
                        sc.term(t2);
                        sc.term(rhs);
                        worst = std::max(worst, std::abs(t1 - t2 - rhs));
                    }
        rows.push_back({"r_phi_skew", worst / sc.s});
    }
    {
        // R(X,Y,phi Z,phi W) - R(X,Y,Z,W) =
        //   eps Phi(Y,Z) Phi(X,W) - eps Phi(X,Z) Phi(Y,W)
        //   + eps g(phi X, phi Z) g(phi Y, phi W) - eps g(phi Y, phi Z) g(phi X, phi W)
        //   + eta(Z) { eta(Y) g(X,W) - eta(X) g(Y,W) }
        //   - eta(W) { eta(Y) g(X,Z) - eta(X) g(Y,Z) }
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double lhs1 = 0.0;
                        for (int a = 0; a < n; ++a)
                            for (int b = 0; b < n; ++b)
                                lhs1 += c.Rdown(i, j, a, b) * v.Ph(a, k) * v.Ph(b, l);
                        const double ei = v.eta[static_cast<size_t>(i)];
                        const double ej = v.eta[static_cast<size_t>(j)];
                        const double ek = v.eta[static_cast<size_t>(k)];
                        const double el = v.eta[static_cast<size_t>(l)];
                        const double rhs =
                            eps * v.F(j, k) * v.F(i, l) - eps * v.F(i, k) * v.F(j, l) +
                            eps * v.PP(i, k) * v.PP(j, l) - eps * v.PP(j, k) * v.PP(i, l) +
                            ek * (ej * v.G(i, l) - ei * v.G(j, l)) -
                            el * (ej * v.G(i, k) - ei * v.G(j, k));
                        sc.term(lhs1);
                        sc.term(c.Rdown(i, j, k, l));
                        sc.term(rhs);
                        worst = std::max(worst, std::abs(lhs1 - c.Rdown(i, j, k, l) - rhs));
                    }
        rows.push_back({"r_phi_phi", worst / sc.s});
    }
    {
        // R(X,Y,phi Z,phi W) = R(phi X,phi Y,Z,W)
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double lhs = 0.0, rhs = 0.0;
                        for (int a = 0; a < n; ++a)
                            for (int b = 0; b < n; ++b) {
                                lhs += c.Rdown(i, j, a, b) * v.Ph(a, k) * v.Ph(b, l);
                                rhs += c.Rdown(a, b, k, l) * v.Ph(a, i) * v.Ph(b, j);
                            }
                        sc.term(lhs);
                        sc.term(rhs);
                        worst = std::max(worst, std::abs(lhs - rhs));
                    }
        rows.push_back({"r_phi_pair", worst / sc.s});
    }
    {
        // R(phi X,phi Y,phi Z,phi W) = R(X,Y,Z,W)
        //   + eta(Z) { eta(Y) g(X,W) - eta(X) g(Y,W) }
        //   - eta(W) { eta(Y) g(X,Z) - eta(X) g(Y,Z) }
        Scale sc;
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double lhs = 0.0;
                        for (int a = 0; a < n; ++a)
                            for (int b = 0; b < n; ++b)
                                for (int p = 0; p < n; ++p)
                                    for (int q = 0; q < n; ++q)
                                        lhs += c.Rdown(a, b, p, q) * v.Ph(a, i) * v.Ph(b, j) *
                                               v.Ph(p, k) * v.Ph(q, l);
                        const double ei = v.eta[static_cast<size_t>(i)];
                        const double ej = v.eta[static_cast<size_t>(j)];
                        const double ek = v.eta[static_cast<size_t>(k)];
                        const double el = v.eta[static_cast<size_t>(l)];
                        const double rhs = c.Rdown(i, j, k, l) +
                                           ek * (ej * v.G(i, l) - ei * v.G(j, l)) -
                                           el * (ej * v.G(i, k) - ei * v.G(j, k));
                        sc.term(lhs);
                        sc.term(rhs);
                        worst = std::max(worst, std::abs(lhs - rhs));
                    }
        rows.push_back({"r_all_phi", worst / sc.s});
    }
    return rows;
}

std::vector<IdentityValue> ricci_rows(const FrameJets& f, const CurvatureFrame& c) {
    const int n = f.dim;
    const Vals v = extract(f);
    std::vector<IdentityValue> rows;

    {
        // S(phi Y, phi Z) = S(Y,Z) + (n-1) eta(Y) eta(Z)
        Scale sc;
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double lhs = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        lhs += c.S(a, b) * v.Ph(a, j) * v.Ph(b, k);
                const double rhs = c.S(j, k) + (n - 1) * v.eta[static_cast<size_t>(j)] *
                                                   v.eta[static_cast<size_t>(k)];
                sc.term(lhs);
                sc.term(rhs);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        rows.push_back({"ricci_phi_phi", worst / sc.s});
    }
    {
        // S(phi Y, Z) = S(Y, phi Z)
        Scale sc;
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double lhs = 0.0, rhs = 0.0;
                for (int a = 0; a < n; ++a) {
                    lhs += c.S(a, k) * v.Ph(a, j);
                    rhs += c.S(j, a) * v.Ph(a, k);
                }
                sc.term(lhs);
                sc.term(rhs);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        rows.push_back({"ricci_phi_swap", worst / sc.s});
    }
    {
        // S(Y, xi) = -(n-1) eta(Y)
        Scale sc;
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            double lhs = 0.0;
            for (int a = 0; a < n; ++a)
                lhs += c.S(j, a) * v.xi[static_cast<size_t>(a)];
            const double rhs = -static_cast<double>(n - 1) * v.eta[static_cast<size_t>(j)];
            sc.term(lhs);
            sc.term(rhs);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        rows.push_back({"ricci_xi", worst / sc.s});
    }
    return rows;
}

IdentityValue const_curv_row(const FrameJets& f) {
    const int n = f.dim;
    const Vals v = extract(f);
    Scale sc;
    double worst = 0.0;
    // Substituting R = -eps R0 into the phi-phi curvature identity and
    // expanding g(phi., phi.) = g - eps eta x eta leaves
    //   Phi(Y,Z) Phi(X,W) - Phi(X,Z) Phi(Y,W) =
    //     g(phi Y, phi Z) g(phi X, phi W) - g(phi X, phi Z) g(phi Y, phi W);
    // the eta cross terms cancel, so the right side is sign-definite.  On the
    // warped non-constant-curvature charts the two sides differ by twice the
    // product scale, which is what makes this row a usable detector.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double lhs = v.F(j, k) * v.F(i, l) - v.F(i, k) * v.F(j, l);
                    const double rhs = v.PP(j, k) * v.PP(i, l) - v.PP(i, k) * v.PP(j, l);
                    sc.term(lhs);
                    sc.term(rhs);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
    return {"const_curv_fundamental", worst / sc.s};
}

RecurrenceFit recurrence_fit_from(std::span<const double> nabla_t, std::span<const double> t,
                                  int dim) {
    const size_t ncomp = t.size();
    if (nabla_t.size() != ncomp * static_cast<size_t>(dim))
        throw std::invalid_argument("recurrence_fit_from: size mismatch");
    double tt = 0.0, tmax = 0.0;
    for (double x : t) {
        tt += x * x;
        tmax = std::max(tmax, std::abs(x));
    }
    if (tmax < 1e-9)
        throw std::domain_error(
            "recurrence fit is ill-posed: the tensor is numerically zero");
    RecurrenceFit fit;
    fit.alpha.assign(static_cast<size_t>(dim), 0.0);
    Scale sc;
    for (int m = 0; m < dim; ++m) {
        double dot = 0.0;
        for (size_t i = 0; i < ncomp; ++i)
            dot += nabla_t[static_cast<size_t>(m) * ncomp + i] * t[i];
        fit.alpha[static_cast<size_t>(m)] = dot / tt;
    }
    double worst = 0.0;
    for (int m = 0; m < dim; ++m)
        for (size_t i = 0; i < ncomp; ++i) {
            const double a = nabla_t[static_cast<size_t>(m) * ncomp + i];
            const double b = fit.alpha[static_cast<size_t>(m)] * t[i];
            sc.term(a);
            sc.term(b);
            worst = std::max(worst, std::abs(a - b));
        }
    fit.residual = worst / sc.s;
    return fit;
}

RecurrenceFit recurrence_fit(const StructuredChart& chart, std::span<const double> point,
                             RecurrenceTarget target) {
    const FrameJets f = evaluate_frame(chart, point);
    const ConnectionFrame conn = christoffel_frame(f);
    const CurvatureFrame c = curvature_frame(f, conn);
    if (target == RecurrenceTarget::Riemann)
        return recurrence_fit_from(c.nabla_r, c.r_down, c.dim);
    return recurrence_fit_from(c.nabla_ricci, c.ricci, c.dim);
}

}  // namespace paralab

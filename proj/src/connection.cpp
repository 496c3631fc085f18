#include "paralab/connection.hpp"

#include <cmath>

namespace paralab {

namespace {

struct Scale {
    double s = 1.0;
    void term(double v) { s = std::max(s, std::abs(v)); }
    double apply(double diff) const { return std::abs(diff) / s; }
};

}  // namespace

ConnectionFrame christoffel_frame(const FrameJets& f) {
    const int n = f.dim;
    const size_t un = static_cast<size_t>(n);
    ConnectionFrame c;
    c.dim = n;

    // A_lij = d_i g_jl + d_j g_il - d_l g_ij and its two derivative layers.
    const auto dg = [&](int m, int a, int b) { return f.gj(a, b).grad(m); };
    const auto d2g = [&](int m, int nn, int a, int b) { return f.gj(a, b).hess(m, nn); };
    const auto d3g = [&](int m, int nn, int p, int a, int b) { return f.gj(a, b).third(m, nn, p); };

    std::vector<double> dginv(un * un * un);
    std::vector<double> d2ginv(un * un * un * un);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                double s = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        s -= f.ginv_at(k, a) * dg(m, a, b) * f.ginv_at(b, l);
                dginv[(static_cast<size_t>(m) * un + k) * un + l] = s;
            }
    const auto dgi = [&](int m, int k, int l) {
        return dginv[(static_cast<size_t>(m) * un + k) * un + l];
    };
    for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double s = 0.0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            s -= dgi(nn, k, a) * dg(m, a, b) * f.ginv_at(b, l) +
                                 f.ginv_at(k, a) * d2g(m, nn, a, b) * f.ginv_at(b, l) +
                                 f.ginv_at(k, a) * dg(m, a, b) * dgi(nn, b, l);
                    d2ginv[((static_cast<size_t>(m) * un + nn) * un + k) * un + l] = s;
                }
    const auto d2gi = [&](int m, int nn, int k, int l) {
        return d2ginv[((static_cast<size_t>(m) * un + nn) * un + k) * un + l];
    };

    const auto A = [&](int l, int i, int j) { return dg(i, j, l) + dg(j, i, l) - dg(l, i, j); };
    const auto dA = [&](int m, int l, int i, int j) {
        return d2g(m, i, j, l) + d2g(m, j, i, l) - d2g(m, l, i, j);
    };
    const auto d2A = [&](int m, int nn, int l, int i, int j) {
        return d3g(m, nn, i, j, l) + d3g(m, nn, j, i, l) - d3g(m, nn, l, i, j);
    };

    c.gamma.assign(un * un * un, 0.0);
    c.dgamma.assign(un * un * un * un, 0.0);
    c.d2gamma.assign(un * un * un * un * un, 0.0);
    c.dginv = dginv;

    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l) s += f.ginv_at(k, l) * A(l, i, j);
                c.gamma[(static_cast<size_t>(k) * un + i) * un + j] = 0.5 * s;
            }
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int l = 0; l < n; ++l)
                        s += dgi(m, k, l) * A(l, i, j) + f.ginv_at(k, l) * dA(m, l, i, j);
                    c.dgamma[((static_cast<size_t>(m) * un + k) * un + i) * un + j] = 0.5 * s;
                }
    for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double s = 0.0;
                        for (int l = 0; l < n; ++l)
                            s += d2gi(m, nn, k, l) * A(l, i, j) + dgi(m, k, l) * dA(nn, l, i, j) +
                                 dgi(nn, k, l) * dA(m, l, i, j) + f.ginv_at(k, l) * d2A(m, nn, l, i, j);
                        c.d2gamma[(((static_cast<size_t>(m) * un + nn) * un + k) * un + i) * un + j] =
                            0.5 * s;
                    }
    return c;
}

LabeledTensor covariant_from_values(int dim, const std::vector<Variance>& variances,
                                    std::span<const double> values, std::span<const double> grads,
                                    const ConnectionFrame& conn) {
    const int r = static_cast<int>(variances.size());
    const size_t un = static_cast<size_t>(dim);
    size_t ncomp = 1;
    for (int s = 0; s < r; ++s) ncomp *= un;
    if (values.size() != ncomp || grads.size() != un * ncomp)
        throw std::invalid_argument("covariant_from_values: component array size mismatch");

    std::vector<Variance> out_var;
    out_var.push_back(Variance::Down);
    for (Variance v : variances) out_var.push_back(v);
    LabeledTensor out(dim, out_var);

    std::vector<int> idx(static_cast<size_t>(r), 0);
    for (size_t flat = 0; flat < ncomp; ++flat) {
        size_t rem = flat;
        for (int s = r - 1; s >= 0; --s) {
            idx[static_cast<size_t>(s)] = static_cast<int>(rem % un);
            rem /= un;
        }
        for (int m = 0; m < dim; ++m) {
            double s = grads[static_cast<size_t>(m) * ncomp + flat];
            for (int slot = 0; slot < r; ++slot) {
                const int orig = idx[static_cast<size_t>(slot)];
                // flat index with slot `slot` replaced by a
                size_t stride = 1;
                for (int t = r - 1; t > slot; --t) stride *= un;
                const size_t base = flat - static_cast<size_t>(orig) * stride;
                for (int a = 0; a < dim; ++a) {
                    const double comp = values[base + static_cast<size_t>(a) * stride];
                    if (variances[static_cast<size_t>(slot)] == Variance::Up) {
                        s += conn.G(orig, m, a) * comp;
                    } else {
                        s -= conn.G(a, m, orig) * comp;
                    }
                }
            }
            std::vector<int> oidx;
            oidx.push_back(m);
            for (int v : idx) oidx.push_back(v);
            out.at(oidx) = s;
        }
    }
    return out;
}

LabeledTensor covariant_derivative(const StructuredChart& chart, std::span<const double> point,
                                   const TensorField& field) {
    const int n = chart.dim;
    const size_t un = static_cast<size_t>(n);
    size_t ncomp = 1;
    for (size_t s = 0; s < field.variances.size(); ++s) ncomp *= un;
    if (field.components.size() != ncomp)
        throw std::invalid_argument("covariant_derivative: component count mismatch");
    const FrameJets f = evaluate_frame(chart, point);
    const ConnectionFrame conn = christoffel_frame(f);
    std::vector<double> values(ncomp), grads(un * ncomp);
    for (size_t c = 0; c < ncomp; ++c) {
        const Jet3 j = field.components[c].eval_jet(point);
        values[c] = j.value();
        for (int m = 0; m < n; ++m) grads[static_cast<size_t>(m) * ncomp + c] = j.grad(m);
    }
    return covariant_from_values(n, field.variances, values, grads, conn);
}

// ---------------------------------------------------------------------------
// pointwise structure tensors

namespace {

// Values and first derivatives extracted from a frame, the common currency
// of everything below.
struct Vals {
    int n;
    std::vector<double> g, phi, xi, eta;        // values
    std::vector<double> dg, dphi, dxi, deta;    // [m][...] gradients
    double gs, phis, xis, etas;                 // max-abs of the value arrays

    double G(int i, int j) const { return g[static_cast<size_t>(i) * n + j]; }
    double P(int i, int j) const { return phi[static_cast<size_t>(i) * n + j]; }
    double Xi(int i) const { return xi[static_cast<size_t>(i)]; }
    double Eta(int i) const { return eta[static_cast<size_t>(i)]; }
    double dG(int m, int i, int j) const {
        return dg[(static_cast<size_t>(m) * n + i) * n + j];
    }
    double dP(int m, int i, int j) const {
        return dphi[(static_cast<size_t>(m) * n + i) * n + j];
    }
    double dXi(int m, int k) const { return dxi[static_cast<size_t>(m) * n + k]; }
    double dEta(int m, int j) const { return deta[static_cast<size_t>(m) * n + j]; }
};

Vals extract(const FrameJets& f) {
    const int n = f.dim;
    const size_t un = static_cast<size_t>(n);
    Vals v;
    v.n = n;
    v.g.resize(un * un);
    v.phi.resize(un * un);
    v.xi.resize(un);
    v.eta.resize(un);
    v.dg.resize(un * un * un);
    v.dphi.resize(un * un * un);
    v.dxi.resize(un * un);
    v.deta.resize(un * un);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            v.g[static_cast<size_t>(i) * un + j] = f.gj(i, j).value();
            v.phi[static_cast<size_t>(i) * un + j] = f.phij(i, j).value();
            for (int m = 0; m < n; ++m) {
                v.dg[(static_cast<size_t>(m) * un + i) * un + j] = f.gj(i, j).grad(m);
                v.dphi[(static_cast<size_t>(m) * un + i) * un + j] = f.phij(i, j).grad(m);
            }
        }
    for (int i = 0; i < n; ++i) {
        v.xi[static_cast<size_t>(i)] = f.xi[static_cast<size_t>(i)].value();
        v.eta[static_cast<size_t>(i)] = f.eta[static_cast<size_t>(i)].value();
        for (int m = 0; m < n; ++m) {
            v.dxi[static_cast<size_t>(m) * un + i] = f.xi[static_cast<size_t>(i)].grad(m);
            v.deta[static_cast<size_t>(m) * un + i] = f.eta[static_cast<size_t>(i)].grad(m);
        }
    }
    v.gs = max_abs(v.g);
    v.phis = max_abs(v.phi);
    v.xis = max_abs(v.xi);
    v.etas = max_abs(v.eta);
    return v;
}

}  // namespace

NormalityTensors normality_tensors(const FrameJets& f, const ConnectionFrame& conn) {
    const Vals v = extract(f);
    const int n = v.n;
    const size_t un = static_cast<size_t>(n);
    NormalityTensors t;
    t.dim = n;
    t.nij_phi.assign(un * un * un, 0.0);
    t.nij_cov.assign(un * un * un, 0.0);
    t.d_eta.assign(un * un, 0.0);
    t.n1.assign(un * un * un, 0.0);
    t.n2.assign(un * un, 0.0);
    t.n3.assign(un * un, 0.0);
    t.n4.assign(un, 0.0);

    // covariant derivative of phi, for the second Nijenhuis route
    std::vector<double> cphi(un * un * un);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                double s = v.dP(m, k, j);
                for (int a = 0; a < n; ++a)
                    s += conn.G(k, m, a) * v.P(a, j) - conn.G(a, m, j) * v.P(k, a);
                cphi[(static_cast<size_t>(m) * un + k) * un + j] = s;
            }
    const auto CP = [&](int m, int k, int j) {
        return cphi[(static_cast<size_t>(m) * un + k) * un + j];
    };

    double nij_term = 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0, sc = 0.0;
                for (int l = 0; l < n; ++l) {
                    const double t1 = v.P(l, i) * v.dP(l, k, j);
                    const double t2 = v.P(l, j) * v.dP(l, k, i);
                    const double t3 = v.P(k, l) * v.dP(j, l, i);
                    const double t4 = v.P(k, l) * v.dP(i, l, j);
                    s += t1 - t2 + t3 - t4;
                    nij_term = std::max({nij_term, std::abs(t1), std::abs(t2), std::abs(t3),
                                         std::abs(t4)});
                    sc += v.P(l, i) * CP(l, k, j) - v.P(l, j) * CP(l, k, i) +
                          v.P(k, l) * (CP(j, l, i) - CP(i, l, j));
                }
                t.nij_phi[(static_cast<size_t>(k) * un + i) * un + j] = s;
                t.nij_cov[(static_cast<size_t>(k) * un + i) * un + j] = sc;
            }
    t.nij_scale = std::max(1.0, nij_term);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.d_eta[static_cast<size_t>(i) * un + j] = 0.5 * (v.dEta(i, j) - v.dEta(j, i));
    t.deta_scale = std::max(1.0, max_abs(v.deta));

    const double nij_max = max_abs(t.nij_phi);
    double deta_xi = 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double corr = 2.0 * t.d_eta[static_cast<size_t>(i) * un + j] * v.Xi(k);
                deta_xi = std::max(deta_xi, std::abs(corr));
                t.n1[(static_cast<size_t>(k) * un + i) * un + j] =
                    t.nij_phi[(static_cast<size_t>(k) * un + i) * un + j] - corr;
            }
    t.n1_scale = std::max({1.0, nij_max, deta_xi});

    double n2_term = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double lhs = 0.0, rhs = 0.0;
            for (int l = 0; l < n; ++l) {
                lhs += v.P(l, i) * v.dEta(l, j) + v.Eta(l) * v.dP(j, l, i);
                rhs += v.P(l, j) * v.dEta(l, i) + v.Eta(l) * v.dP(i, l, j);
            }
            n2_term = std::max({n2_term, std::abs(lhs), std::abs(rhs)});
            t.n2[static_cast<size_t>(i) * un + j] = lhs - rhs;
        }
    t.n2_scale = std::max(1.0, n2_term);

    double n3_term = 0.0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int l = 0; l < n; ++l) {
                const double t1 = v.Xi(l) * v.dP(l, k, j);
                const double t2 = v.P(l, j) * v.dXi(l, k);
                const double t3 = v.P(k, l) * v.dXi(j, l);
                s += t1 - t2 + t3;
                n3_term = std::max({n3_term, std::abs(t1), std::abs(t2), std::abs(t3)});
            }
            t.n3[static_cast<size_t>(k) * un + j] = s;
        }
    t.n3_scale = std::max(1.0, n3_term);

    double n4_term = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
            const double t1 = v.Xi(l) * v.dEta(l, j);
            const double t2 = v.Eta(l) * v.dXi(j, l);
            s += t1 + t2;
            n4_term = std::max({n4_term, std::abs(t1), std::abs(t2)});
        }
        t.n4[static_cast<size_t>(j)] = s;
    }
    t.n4_scale = std::max(1.0, n4_term);
    return t;
}

std::vector<double> lie_metric(const FrameJets& f) {
    const Vals v = extract(f);
    const int n = v.n;
    const size_t un = static_cast<size_t>(n);
    std::vector<double> out(un * un);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int l = 0; l < n; ++l)
                s += v.Xi(l) * v.dG(l, i, j) + v.G(l, j) * v.dXi(i, l) + v.G(i, l) * v.dXi(j, l);
            out[static_cast<size_t>(i) * un + j] = s;
        }
    return out;
}

std::vector<double> lie_phi(const FrameJets& f) {
    return normality_tensors(f, christoffel_frame(f)).n3;
}

std::vector<double> lie_eta(const FrameJets& f) {
    return normality_tensors(f, christoffel_frame(f)).n4;
}

// ---------------------------------------------------------------------------
// structure residuals

namespace {

// Shared derived arrays for the metric-level residuals.
struct MetricDerived {
    std::vector<double> Phi;        // g_ia phi^a_j
    std::vector<double> ceta;       // nabla_m eta_j
    std::vector<double> cxi;        // (nabla_m xi)^k, [m][k]
    std::vector<double> cphi;       // (nabla_m phi)^k_j, [m][k][j]
    std::vector<double> cPhi;       // nabla_m Phi_ij, [m][i][j]
    std::vector<double> phi2;       // (phi^2)^k_i
    std::vector<double> gphiphi;    // g(phi e_i, phi e_j)
};

MetricDerived metric_derived(const Vals& v, const ConnectionFrame& conn) {
    const int n = v.n;
    const size_t un = static_cast<size_t>(n);
    MetricDerived d;
    d.Phi.assign(un * un, 0.0);
    d.ceta.assign(un * un, 0.0);
    d.cxi.assign(un * un, 0.0);
    d.cphi.assign(un * un * un, 0.0);
    d.cPhi.assign(un * un * un, 0.0);
    d.phi2.assign(un * un, 0.0);
    d.gphiphi.assign(un * un, 0.0);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0, p2 = 0.0, gpp = 0.0;
            for (int a = 0; a < n; ++a) {
                s += v.G(i, a) * v.P(a, j);
                p2 += v.P(i, a) * v.P(a, j);
                for (int b = 0; b < n; ++b) gpp += v.P(a, i) * v.G(a, b) * v.P(b, j);
            }
            d.Phi[static_cast<size_t>(i) * un + j] = s;
            d.phi2[static_cast<size_t>(i) * un + j] = p2;
            d.gphiphi[static_cast<size_t>(i) * un + j] = gpp;
        }
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < n; ++j) {
            double s = v.dEta(m, j);
            for (int a = 0; a < n; ++a) s -= conn.G(a, m, j) * v.Eta(a);
            d.ceta[static_cast<size_t>(m) * un + j] = s;
        }
        for (int k = 0; k < n; ++k) {
            double s = v.dXi(m, k);
            for (int a = 0; a < n; ++a) s += conn.G(k, m, a) * v.Xi(a);
            d.cxi[static_cast<size_t>(m) * un + k] = s;
        }
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                double s = v.dP(m, k, j);
                for (int a = 0; a < n; ++a)
                    s += conn.G(k, m, a) * v.P(a, j) - conn.G(a, m, j) * v.P(k, a);
                d.cphi[(static_cast<size_t>(m) * un + k) * un + j] = s;
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int a = 0; a < n; ++a)
                    s += v.dG(m, i, a) * v.P(a, j) + v.G(i, a) * v.dP(m, a, j);
                for (int a = 0; a < n; ++a)
                    s -= conn.G(a, m, i) * d.Phi[static_cast<size_t>(a) * un + j] +
                         conn.G(a, m, j) * d.Phi[static_cast<size_t>(i) * un + a];
                d.cPhi[(static_cast<size_t>(m) * un + i) * un + j] = s;
            }
    }
    return d;
}

}  // namespace

StructureResiduals structure_residuals(const FrameJets& f, const ConnectionFrame& conn) {
    const Vals v = extract(f);
    const MetricDerived d = metric_derived(v, conn);
    const int n = v.n;
    const size_t un = static_cast<size_t>(n);
    const double eps = static_cast<double>(f.epsilon);
    StructureResiduals r;

    {
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double lhs = 2.0 * d.Phi[static_cast<size_t>(i) * un + j];
                const double rhs = d.ceta[static_cast<size_t>(i) * un + j] +
                                   d.ceta[static_cast<size_t>(j) * un + i];
                sc.term(lhs);
                sc.term(rhs);
                diff = std::max(diff, std::abs(lhs - rhs));
            }
        r.paracontact = diff / sc.s;
    }

    {
        const std::vector<double> lg = lie_metric(f);
        Scale sc;
        double diff = 0.0;
        for (size_t i = 0; i < un * un; ++i) {
            const double lhs = 2.0 * d.Phi[i];
            const double rhs = eps * lg[i];
            sc.term(lhs);
            sc.term(rhs);
            diff = std::max(diff, std::abs(lhs - rhs));
        }
        r.lie_paracontact = diff / sc.s;
    }

    {
        Scale sc;
        double diff = 0.0;
        for (int m = 0; m < n; ++m)
            for (int k = 0; k < n; ++k) {
                const double lhs = d.cxi[static_cast<size_t>(m) * un + k];
                const double rhs = eps * v.P(k, m);
                sc.term(lhs);
                sc.term(rhs);
                diff = std::max(diff, std::abs(lhs - rhs));
            }
        r.s_paracontact = diff / sc.s;
    }

    {
        // (nabla_X phi)Y = -g(phi X, phi Y) xi - eps eta(Y) phi^2 X
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double t1 = d.cphi[(static_cast<size_t>(i) * un + k) * un + j];
                    const double t2 = d.gphiphi[static_cast<size_t>(i) * un + j] * v.Xi(k);
                    const double t3 = eps * v.Eta(j) * d.phi2[static_cast<size_t>(k) * un + i];
                    sc.term(t1);
                    sc.term(t2);
                    sc.term(t3);
                    diff = std::max(diff, std::abs(t1 + t2 + t3));
                }
        r.para_sasakian = diff / sc.s;
    }

    {
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                diff = std::max(diff, 0.5 * std::abs(v.dEta(i, j) - v.dEta(j, i)));
        r.eta_closed = diff / std::max(1.0, max_abs(v.deta));
    }

    {
        Scale sc;
        sc.term(v.xis * max_abs(d.cxi));
        double diff = 0.0;
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += v.Xi(i) * d.cxi[static_cast<size_t>(i) * un + k];
            diff = std::max(diff, std::abs(s));
        }
        r.xi_geodesic = diff / sc.s;
    }
    return r;
}

// ---------------------------------------------------------------------------
// identity rows

std::vector<IdentityValue> normality_rows(const FrameJets& f) {
    const ConnectionFrame conn = christoffel_frame(f);
    const NormalityTensors t = normality_tensors(f, conn);
    const Vals v = extract(f);
    const int n = v.n;
    const size_t un = static_cast<size_t>(n);
    const auto N1 = [&](int k, int i, int j) {
        return t.n1[(static_cast<size_t>(k) * un + i) * un + j];
    };
    const auto N2 = [&](int i, int j) { return t.n2[static_cast<size_t>(i) * un + j]; };
    const auto N3 = [&](int k, int j) { return t.n3[static_cast<size_t>(k) * un + j]; };
    const auto N4 = [&](int j) { return t.n4[static_cast<size_t>(j)]; };
    const auto dEta = [&](int i, int j) { return t.d_eta[static_cast<size_t>(i) * un + j]; };

    std::vector<IdentityValue> rows;

    {  // N4(X) = 2 d eta(xi, X)
        Scale sc;
        double diff = 0.0;
        for (int j = 0; j < n; ++j) {
            double rhs = 0.0;
            for (int l = 0; l < n; ++l) rhs += 2.0 * v.Xi(l) * dEta(l, j);
            sc.term(N4(j));
            sc.term(rhs);
            diff = std::max(diff, std::abs(N4(j) - rhs));
        }
        rows.push_back({"n4_from_deta", diff / sc.s});
    }

    {  // N2(X, Y) = 2 (d eta(phi X, Y) + d eta(X, phi Y))
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double rhs = 0.0;
                for (int a = 0; a < n; ++a)
                    rhs += 2.0 * (v.P(a, i) * dEta(a, j) + v.P(a, j) * dEta(i, a));
                sc.term(N2(i, j));
                sc.term(rhs);
                diff = std::max(diff, std::abs(N2(i, j) - rhs));
            }
        rows.push_back({"n2_from_deta", diff / sc.s});
    }

    {  // N1(X, xi) = -N3(phi X), and the bracket expansion of the same vector
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double lhs = 0.0, rhs = 0.0, expand = 0.0;
                for (int j = 0; j < n; ++j) lhs += N1(k, i, j) * v.Xi(j);
                for (int a = 0; a < n; ++a) rhs -= N3(k, a) * v.P(a, i);
                // -[xi, X] + phi[xi, phi X] + xi(eta(X)) xi for X = e_i
                expand = v.dXi(i, k);
                for (int m = 0; m < n; ++m) {
                    expand += v.P(k, m) * ([&] {
                        double s = 0.0;
                        for (int l = 0; l < n; ++l)
                            s += v.Xi(l) * v.dP(l, m, i) - v.P(l, i) * v.dXi(l, m);
                        return s;
                    }());
                }
                double xi_eta = 0.0;
                for (int l = 0; l < n; ++l) xi_eta += v.Xi(l) * v.dEta(l, i);
                expand += xi_eta * v.Xi(k);
                sc.term(lhs);
                sc.term(rhs);
                sc.term(expand);
                diff = std::max(diff, std::abs(lhs - rhs));
                diff = std::max(diff, std::abs(lhs - expand));
            }
        rows.push_back({"n1_with_xi", diff / sc.s});
    }

    {  // N1(phi X, Y) = -phi[phi,phi](X, Y) - N2(X, Y) xi - eta(X) N3(Y)
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double lhs = 0.0;
                    for (int a = 0; a < n; ++a) lhs += N1(k, a, j) * v.P(a, i);
                    double phin = 0.0;
                    for (int m = 0; m < n; ++m)
                        phin += v.P(k, m) * t.nij_phi[(static_cast<size_t>(m) * un + i) * un + j];
                    const double rhs = -phin - N2(i, j) * v.Xi(k) - v.Eta(i) * N3(k, j);
                    sc.term(lhs);
                    sc.term(phin);
                    sc.term(N2(i, j) * v.Xi(k));
                    sc.term(v.Eta(i) * N3(k, j));
                    diff = std::max(diff, std::abs(lhs - rhs));
                }
        rows.push_back({"n1_phi_expansion", diff / sc.s});
    }

    {  // N2(X, phi Y) = 2 (d eta(phi X, phi Y) + d eta(X, Y)) + eta(Y) N4(X)
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double lhs = 0.0;
                for (int a = 0; a < n; ++a) lhs += N2(i, a) * v.P(a, j);
                double dpp = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) dpp += v.P(a, i) * dEta(a, b) * v.P(b, j);
                const double rhs = 2.0 * (dpp + dEta(i, j)) + v.Eta(j) * N4(i);
                sc.term(lhs);
                sc.term(2.0 * dpp);
                sc.term(2.0 * dEta(i, j));
                sc.term(v.Eta(j) * N4(i));
                diff = std::max(diff, std::abs(lhs - rhs));
            }
        rows.push_back({"n2_phi_argument", diff / sc.s});
    }

    {  // N4(X) = eta(N1(X, xi)) = N2(xi, phi X) = -eta(N3(phi X))
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            double etaN1 = 0.0, n2route = 0.0, etaN3 = 0.0;
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) etaN1 += v.Eta(k) * N1(k, i, j) * v.Xi(j);
            for (int l = 0; l < n; ++l)
                for (int a = 0; a < n; ++a) n2route += N2(l, a) * v.Xi(l) * v.P(a, i);
            for (int k = 0; k < n; ++k)
                for (int a = 0; a < n; ++a) etaN3 += v.Eta(k) * N3(k, a) * v.P(a, i);
            sc.term(N4(i));
            sc.term(etaN1);
            sc.term(n2route);
            sc.term(etaN3);
            diff = std::max({diff, std::abs(N4(i) - etaN1), std::abs(N4(i) - n2route),
                             std::abs(N4(i) + etaN3)});
        }
        rows.push_back({"n4_three_routes", diff / sc.s});
    }

    {  // N4(phi X) = -eta(N3(X))
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            double lhs = 0.0, rhs = 0.0;
            for (int a = 0; a < n; ++a) lhs += N4(a) * v.P(a, i);
            for (int k = 0; k < n; ++k) rhs -= v.Eta(k) * N3(k, i);
            sc.term(lhs);
            sc.term(rhs);
            diff = std::max(diff, std::abs(lhs - rhs));
        }
        rows.push_back({"n4_of_phi", diff / sc.s});
    }

    {  // phi(N1(X, xi)) = N3(X) + N4(phi X) xi
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double lhs = 0.0;
                for (int m = 0; m < n; ++m)
                    for (int j = 0; j < n; ++j) lhs += v.P(k, m) * N1(m, i, j) * v.Xi(j);
                double n4phi = 0.0;
                for (int a = 0; a < n; ++a) n4phi += N4(a) * v.P(a, i);
                const double rhs = N3(k, i) + n4phi * v.Xi(k);
                sc.term(lhs);
                sc.term(N3(k, i));
                sc.term(n4phi * v.Xi(k));
                diff = std::max(diff, std::abs(lhs - rhs));
            }
        rows.push_back({"phi_of_n1_xi", diff / sc.s});
    }

    {  // eta(N1(phi X, Y)) = -N2(X, Y) + eta(X) N4(phi Y)
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double lhs = 0.0;
                for (int k = 0; k < n; ++k)
                    for (int a = 0; a < n; ++a) lhs += v.Eta(k) * N1(k, a, j) * v.P(a, i);
                double n4phi = 0.0;
                for (int a = 0; a < n; ++a) n4phi += N4(a) * v.P(a, j);
                const double rhs = -N2(i, j) + v.Eta(i) * n4phi;
                sc.term(lhs);
                sc.term(N2(i, j));
                sc.term(v.Eta(i) * n4phi);
                diff = std::max(diff, std::abs(lhs - rhs));
            }
        rows.push_back({"eta_of_n1_phi", diff / sc.s});
    }

    return rows;
}

double n2_criterion(const FrameJets& f) {
    const NormalityTensors t = normality_tensors(f, christoffel_frame(f));
    const Vals v = extract(f);
    const int n = v.n;
    const size_t un = static_cast<size_t>(n);
    Scale sc;
    double diff = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dpp = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    dpp += v.P(a, i) * t.d_eta[static_cast<size_t>(a) * un + b] * v.P(b, j);
            const double de = t.d_eta[static_cast<size_t>(i) * un + j];
            sc.term(dpp);
            sc.term(de);
            diff = std::max(diff, std::abs(dpp + de));
        }
    return diff / sc.s;
}

std::vector<IdentityValue> phi_rows(const FrameJets& f, const ConnectionFrame& conn) {
    const Vals v = extract(f);
    const MetricDerived d = metric_derived(v, conn);
    const int n = v.n;
    const size_t un = static_cast<size_t>(n);
    std::vector<IdentityValue> rows;
    const auto Phi = [&](int i, int j) { return d.Phi[static_cast<size_t>(i) * un + j]; };
    const auto cPhi = [&](int m, int i, int j) {
        return d.cPhi[(static_cast<size_t>(m) * un + i) * un + j];
    };

    {
        Scale sc;
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                sc.term(Phi(i, j));
                diff = std::max(diff, std::abs(Phi(i, j) - Phi(j, i)));
            }
        rows.push_back({"fundamental_symmetric", diff / sc.s});
    }

    {  // (nabla_X Phi)(Y,Z) = g((nabla_X phi) Y, Z) = (nabla_X Phi)(Z,Y)
        Scale sc;
        double diff = 0.0;
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double low = 0.0;
                    for (int k = 0; k < n; ++k)
                        low += d.cphi[(static_cast<size_t>(m) * un + k) * un + i] * v.G(k, j);
                    sc.term(cPhi(m, i, j));
                    sc.term(low);
                    diff = std::max(diff, std::abs(cPhi(m, i, j) - low));
                    diff = std::max(diff, std::abs(cPhi(m, i, j) - cPhi(m, j, i)));
                }
        rows.push_back({"nabla_phi_lowered", diff / sc.s});
    }

    {  // (nabla_X Phi)(phi Y, phi Z) =
       //   -(nabla_X Phi)(Y,Z) + eta(Y)(nabla_X Phi)(xi,Z) + eta(Z)(nabla_X Phi)(Y,xi)
        Scale sc;
        double diff = 0.0;
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double lhs = 0.0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            lhs += cPhi(m, a, b) * v.P(a, i) * v.P(b, j);
                    double xiz = 0.0, yxi = 0.0;
                    for (int a = 0; a < n; ++a) {
                        xiz += v.Xi(a) * cPhi(m, a, j);
                        yxi += cPhi(m, i, a) * v.Xi(a);
                    }
                    const double rhs = -cPhi(m, i, j) + v.Eta(i) * xiz + v.Eta(j) * yxi;
                    sc.term(lhs);
                    sc.term(cPhi(m, i, j));
                    sc.term(v.Eta(i) * xiz);
                    sc.term(v.Eta(j) * yxi);
                    diff = std::max(diff, std::abs(lhs - rhs));
                }
        rows.push_back({"nabla_phi_phi_phi", diff / sc.s});
    }
    return rows;
}

}  // namespace paralab

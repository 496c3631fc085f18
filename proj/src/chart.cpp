#include "paralab/chart.hpp"

#include <cmath>

#include "paralab/sampling.hpp"

namespace paralab {

StructuredChart make_chart(std::string name, int dim, int epsilon,
                           std::vector<std::string> coords,
                           std::vector<std::array<double, 2>> domain,
                           std::vector<ScalarField> metric, std::vector<ScalarField> phi,
                           std::vector<ScalarField> xi, std::vector<ScalarField> eta) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("make_chart: dimension must be in 1..8");
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("make_chart: epsilon must be +1 or -1");
    const size_t n = static_cast<size_t>(dim);
    if (coords.size() != n) throw std::invalid_argument("make_chart: coordinate name count mismatch");
    if (domain.size() != n) throw std::invalid_argument("make_chart: domain size mismatch");
    for (const auto& box : domain)
        if (!(box[0] < box[1])) throw std::invalid_argument("make_chart: domain interval must have lo < hi");
    if (metric.size() != n * n || phi.size() != n * n || xi.size() != n || eta.size() != n)
        throw std::invalid_argument("make_chart: component array size mismatch");

    // Symmetrize the metric storage: both triangles must agree structurally,
    // after which they share one node per unordered pair.
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            ScalarField& upper = metric[i * n + j];
            ScalarField& lower = metric[j * n + i];
            if (!upper.same_structure(lower))
                throw std::invalid_argument("make_chart: metric entries (" + std::to_string(i) +
                                            "," + std::to_string(j) + ") and transpose differ");
            lower = upper;
        }

    StructuredChart c;
    c.name = std::move(name);
    c.dim = dim;
    c.epsilon = epsilon;
    c.coords = std::move(coords);
    c.domain = std::move(domain);
    c.metric = std::move(metric);
    c.phi = std::move(phi);
    c.xi = std::move(xi);
    c.eta = std::move(eta);

    for (const auto& f : c.metric)
        if (f.required_dim() > dim) throw std::invalid_argument("make_chart: metric field uses unknown coordinate");
    for (const auto& f : c.phi)
        if (f.required_dim() > dim) throw std::invalid_argument("make_chart: phi field uses unknown coordinate");
    for (const auto& f : c.xi)
        if (f.required_dim() > dim) throw std::invalid_argument("make_chart: xi field uses unknown coordinate");
    for (const auto& f : c.eta)
        if (f.required_dim() > dim) throw std::invalid_argument("make_chart: eta field uses unknown coordinate");
    return c;
}

FrameJets evaluate_frame(const StructuredChart& chart, std::span<const double> point) {
    if (static_cast<int>(point.size()) != chart.dim)
        throw std::invalid_argument("evaluate_frame: point dimension mismatch");
    FrameJets f;
    f.dim = chart.dim;
    f.epsilon = chart.epsilon;
    f.point.assign(point.begin(), point.end());
    f.g.reserve(chart.metric.size());
    f.phi.reserve(chart.phi.size());
    const size_t n = static_cast<size_t>(chart.dim);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (j < i) {
                // shared node: reuse the mirror jet so symmetry is bitwise
                f.g.push_back(f.g[j * n + i]);
            } else {
                f.g.push_back(chart.metric[i * n + j].eval_jet(point));
            }
        }
    for (const auto& fld : chart.phi) f.phi.push_back(fld.eval_jet(point));
    for (const auto& fld : chart.xi) f.xi.push_back(fld.eval_jet(point));
    for (const auto& fld : chart.eta) f.eta.push_back(fld.eval_jet(point));

    std::vector<double> gv(n * n);
    for (size_t i = 0; i < n * n; ++i) gv[i] = f.g[i].value();
    const double scale = std::pow(std::max(1.0, max_abs(gv)), chart.dim);
    double det = 0.0;
    try {
        f.ginv = invert_matrix(gv, chart.dim, &det);
    } catch (const DegenerateMetricError&) {
        throw DegenerateMetricError("evaluate_frame: metric is singular at the point");
    }
    if (std::abs(det) < 1e-12 * scale)
        throw DegenerateMetricError("evaluate_frame: metric determinant below the degeneracy band");
    f.det_g = det;
    return f;
}

double AxiomReport::max_structural() const {
    double m = phi_squared;
    for (double v : {eta_of_xi, phi_xi, eta_phi, phi_cubed, compatibility, phi_symmetry,
                     xi_lowering, xi_norm})
        m = std::max(m, v);
    return m;
}

bool AxiomReport::passes(int dim, double tol) const {
    return max_structural() < tol && rank_phi == dim - 1 && kernel_nondegenerate;
}

namespace {

double scaled(double diff, double scale) { return diff / std::max(1.0, scale); }

}  // namespace

AxiomReport axiom_report(const StructuredChart& chart, std::span<const double> point, double tol) {
    const FrameJets f = evaluate_frame(chart, point);
    const int n = chart.dim;
    const size_t un = static_cast<size_t>(n);
    const double eps = static_cast<double>(chart.epsilon);

    std::vector<double> g(un * un), phi(un * un), xi(un), eta(un);
    for (size_t i = 0; i < un * un; ++i) g[i] = f.g[i].value();
    for (size_t i = 0; i < un * un; ++i) phi[i] = f.phi[i].value();
    for (size_t i = 0; i < un; ++i) xi[i] = f.xi[i].value();
    for (size_t i = 0; i < un; ++i) eta[i] = f.eta[i].value();
    const auto G = [&](int i, int j) { return g[static_cast<size_t>(i) * un + j]; };
    const auto P = [&](int i, int j) { return phi[static_cast<size_t>(i) * un + j]; };

    AxiomReport r;

    // phi^2 = I - xi (x) eta
    std::vector<double> phi2(un * un, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int a = 0; a < n; ++a) s += P(i, a) * P(a, j);
            phi2[static_cast<size_t>(i) * un + j] = s;
        }
    {
        double diff = 0.0, rhs = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double target = (i == j ? 1.0 : 0.0) - xi[static_cast<size_t>(i)] * eta[static_cast<size_t>(j)];
                rhs = std::max(rhs, std::abs(target));
                diff = std::max(diff, std::abs(phi2[static_cast<size_t>(i) * un + j] - target));
            }
        r.phi_squared = scaled(diff, std::max(max_abs(phi2), rhs));
    }

    {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += eta[static_cast<size_t>(i)] * xi[static_cast<size_t>(i)];
        r.eta_of_xi = scaled(std::abs(s - 1.0), std::abs(s));
    }

    {
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += P(i, j) * xi[static_cast<size_t>(j)];
            diff = std::max(diff, std::abs(s));
        }
        r.phi_xi = scaled(diff, max_abs(phi) * max_abs(xi));
    }

    {
        double diff = 0.0;
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += eta[static_cast<size_t>(i)] * P(i, j);
            diff = std::max(diff, std::abs(s));
        }
        r.eta_phi = scaled(diff, max_abs(eta) * max_abs(phi));
    }

    {
        double diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int a = 0; a < n; ++a) s += phi2[static_cast<size_t>(i) * un + a] * P(a, j);
                diff = std::max(diff, std::abs(s - P(i, j)));
            }
        r.phi_cubed = scaled(diff, std::max(max_abs(phi2) * max_abs(phi), max_abs(phi)));
    }

    {
        double diff = 0.0, lhs = 0.0, rhs = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) s += P(a, i) * G(a, b) * P(b, j);
                const double target = G(i, j) - eps * eta[static_cast<size_t>(i)] * eta[static_cast<size_t>(j)];
                lhs = std::max(lhs, std::abs(s));
                rhs = std::max(rhs, std::abs(target));
                diff = std::max(diff, std::abs(s - target));
            }
        r.compatibility = scaled(diff, std::max(lhs, rhs));
    }

    {
        double diff = 0.0, mag = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double phiX = 0.0, phiY = 0.0;
                for (int a = 0; a < n; ++a) {
                    phiX += P(a, i) * G(a, j);  // g(phi e_i, e_j)
                    phiY += G(i, a) * P(a, j);  // g(e_i, phi e_j)
                }
                mag = std::max(mag, std::max(std::abs(phiX), std::abs(phiY)));
                diff = std::max(diff, std::abs(phiX - phiY));
            }
        r.phi_symmetry = scaled(diff, mag);
    }

    {
        double diff = 0.0, mag = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int a = 0; a < n; ++a) s += G(i, a) * xi[static_cast<size_t>(a)];
            const double target = eps * eta[static_cast<size_t>(i)];
            mag = std::max(mag, std::max(std::abs(s), std::abs(target)));
            diff = std::max(diff, std::abs(s - target));
        }
        r.xi_lowering = scaled(diff, mag);
    }

    {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s += xi[static_cast<size_t>(i)] * G(i, j) * xi[static_cast<size_t>(j)];
        r.xi_norm = scaled(std::abs(s - eps), std::abs(s));
    }

    r.rank_phi = numeric_rank(phi, n, tol);
    r.index = metric_index(g, n, tol);

    // g restricted to ker eta, via the basis e_i - (eta_i / eta_p) e_p with
    // p the largest |eta| slot.
    {
        int p = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(eta[static_cast<size_t>(i)]) > std::abs(eta[static_cast<size_t>(p)])) p = i;
        if (eta[static_cast<size_t>(p)] == 0.0) {
            r.kernel_min_eig = 0.0;
            r.kernel_nondegenerate = false;
        } else {
            const int m = n - 1;
            std::vector<int> basis;
            for (int i = 0; i < n; ++i)
                if (i != p) basis.push_back(i);
            std::vector<double> gram(static_cast<size_t>(m) * m);
            const double ep = eta[static_cast<size_t>(p)];
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    const int i = basis[static_cast<size_t>(a)], j = basis[static_cast<size_t>(b)];
                    const double ci = eta[static_cast<size_t>(i)] / ep;
                    const double cj = eta[static_cast<size_t>(j)] / ep;
                    gram[static_cast<size_t>(a) * m + b] =
                        G(i, j) - ci * G(p, j) - cj * G(i, p) + ci * cj * G(p, p);
                }
            const std::vector<double> eig = symmetric_eigenvalues(gram, m);
            double mn = std::abs(eig[0]), mx = 0.0;
            for (double l : eig) {
                mn = std::min(mn, std::abs(l));
                mx = std::max(mx, std::abs(l));
            }
            r.kernel_min_eig = mn;
            r.kernel_nondegenerate = mn > tol * std::max(1.0, mx);
        }
    }
    return r;
}

StructuredChart from_almost_product(int n, std::vector<ScalarField> J, std::vector<ScalarField> G,
                                    int epsilon, std::vector<std::string> coords,
                                    const std::string& name) {
    if (n < 1 || n > 7) throw std::invalid_argument("from_almost_product: base dimension must be in 1..7");
    const size_t un = static_cast<size_t>(n);
    if (J.size() != un * un || G.size() != un * un)
        throw std::invalid_argument("from_almost_product: J and G must be n*n field arrays");
    if (coords.empty()) {
        for (int i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i + 1));
    }
    if (coords.size() != un) throw std::invalid_argument("from_almost_product: coordinate name count mismatch");

    // Spot-check J^2 = I, symmetry of G, and G(J., J.) = G on seeded points.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::vector<std::array<double, 2>> base_box(un, {-1.0, 1.0});
    for (int trial = 0; trial < 8; ++trial) {
        const std::vector<double> p = sample_box(base_box, rng);
        std::vector<double> Jv(un * un), Gv(un * un);
        for (size_t i = 0; i < un * un; ++i) Jv[i] = J[i].eval_value(p);
        for (size_t i = 0; i < un * un; ++i) Gv[i] = G[i].eval_value(p);
        const double jscale = std::max(1.0, max_abs(Jv) * max_abs(Jv));
        const double gscale = std::max(1.0, max_abs(Gv) * max_abs(Jv) * max_abs(Jv));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double jj = 0.0;
                for (int a = 0; a < n; ++a) jj += Jv[static_cast<size_t>(i) * un + a] * Jv[static_cast<size_t>(a) * un + j];
                if (std::abs(jj - (i == j ? 1.0 : 0.0)) > 1e-9 * jscale)
                    throw std::invalid_argument("from_almost_product: J^2 differs from the identity");
                if (std::abs(Gv[static_cast<size_t>(i) * un + j] - Gv[static_cast<size_t>(j) * un + i]) > 1e-9 * std::max(1.0, max_abs(Gv)))
                    throw std::invalid_argument("from_almost_product: G is not symmetric");
                double gjj = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        gjj += Jv[static_cast<size_t>(a) * un + i] * Gv[static_cast<size_t>(a) * un + b] * Jv[static_cast<size_t>(b) * un + j];
                if (std::abs(gjj - Gv[static_cast<size_t>(i) * un + j]) > 1e-9 * gscale)
                    throw std::invalid_argument("from_almost_product: G is not J-invariant");
            }
        invert_matrix(Gv, n);  // throws when G is singular at the sample
    }

    const int dim = n + 1;
    const size_t ud = static_cast<size_t>(dim);
    std::vector<ScalarField> metric(ud * ud, ScalarField::constant(0.0));
    std::vector<ScalarField> phi(ud * ud, ScalarField::constant(0.0));
    std::vector<ScalarField> xi(ud, ScalarField::constant(0.0));
    std::vector<ScalarField> eta(ud, ScalarField::constant(0.0));
    for (size_t i = 0; i < un; ++i)
        for (size_t j = 0; j < un; ++j) {
            metric[i * ud + j] = G[i * un + j];
            phi[i * ud + j] = J[i * un + j];
        }
    metric[un * ud + un] = ScalarField::constant(static_cast<double>(epsilon));
    xi[un] = ScalarField::constant(1.0);
    eta[un] = ScalarField::constant(1.0);
    coords.push_back("t");
    std::vector<std::array<double, 2>> domain(ud, {-1.0, 1.0});

    return make_chart(name, dim, epsilon, std::move(coords), std::move(domain), std::move(metric),
                      std::move(phi), std::move(xi), std::move(eta));
}

}  // namespace paralab

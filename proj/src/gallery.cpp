#include "paralab/gallery.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "paralab/sampling.hpp"

namespace paralab {
namespace {

ScalarField C(double v) { return ScalarField::constant(v); }
ScalarField X(int i) { return ScalarField::coordinate(i); }

// Assigns one shared expression to both mirrored metric slots.
void sym_set(std::vector<ScalarField>& met, int n, int i, int j, const ScalarField& f) {
    met[static_cast<size_t>(i) * n + j] = f;
    met[static_cast<size_t>(j) * n + i] = f;
}

std::vector<std::array<double, 2>> unit_box(int n) {
    return std::vector<std::array<double, 2>>(static_cast<size_t>(n), {-1.0, 1.0});
}

using Exp = std::map<std::string, Status>;
constexpr Status H = Status::Holds;
constexpr Status F = Status::Fails;

// Statuses shared by every chart whose fields are all constant: the
// connection vanishes, so everything built from derivatives of the structure
// vanishes while the purely algebraic para conditions fail.
Exp constant_flat_expectations(Status einstein_general) {
    return Exp{
        {"almost_paracontact_metric", H},
        {"paracontact", F},
        {"s_paracontact", F},
        {"eta_closed", H},
        {"xi_geodesic", H},
        {"normal", H},
        {"n2_zero", H},
        {"n3_zero", H},
        {"n4_zero", H},
        {"para_sasakian", F},
        {"flat", H},
        {"constant_curvature_minus_eps", F},
        {"symmetric", H},
        {"semi_symmetric", H},
        {"ricci_symmetric", H},
        {"ricci_semisymmetric", H},
        {"einstein_ps", F},
        {"einstein_general", einstein_general},
    };
}

// Shared by the eta = ds - y dx (- t dz) family: eta is not closed, N3 and
// N4 vanish identically while N1 and N2 do not, and no connection- or
// curvature-level property holds anywhere on the sampled box.
Exp open_eta_expectations() {
    return Exp{
        {"almost_paracontact_metric", H},
        {"paracontact", F},
        {"s_paracontact", F},
        {"eta_closed", F},
        {"xi_geodesic", H},
        {"normal", F},
        {"n2_zero", F},
        {"n3_zero", H},
        {"n4_zero", H},
        {"para_sasakian", F},
        {"flat", F},
        {"constant_curvature_minus_eps", F},
        {"symmetric", F},
        {"semi_symmetric", F},
        {"ricci_symmetric", F},
        {"ricci_semisymmetric", F},
        {"einstein_ps", F},
        {"einstein_general", F},
    };
}

GalleryEntry make_ex2_1(int which) {
    const int n = 3;
    std::vector<ScalarField> met(9), phi(9), xi(3), eta(3);
    phi[2 * 3 + 0] = C(1);  // phi(d/dx) = d/dz
    phi[0 * 3 + 2] = C(1);  // phi(d/dz) = d/dx
    xi[1] = C(1);
    eta[1] = C(1);
    const bool first = which == 1;
    sym_set(met, n, 0, 0, C(first ? 1 : -1));
    sym_set(met, n, 1, 1, C(first ? -1 : 1));
    sym_set(met, n, 2, 2, C(first ? 1 : -1));
    GalleryEntry e;
    e.chart = make_chart(first ? "ex2_1_g1" : "ex2_1_g2", n, first ? -1 : 1, {"x", "y", "z"},
                         unit_box(n), met, phi, xi, eta);
    e.description = first
        ? "constant chart on R^3: phi swaps x and z, xi = d/dy, g = dx^2 - dy^2 + dz^2 "
          "(epsilon = -1, index 1)"
        : "constant chart on R^3: phi swaps x and z, xi = d/dy, g = -dx^2 + dy^2 - dz^2 "
          "(epsilon = +1, index 2)";
    e.notes = "All fields are constant, so the connection and curvature vanish; the "
              "structure is normal and flat but not paracontact (the fundamental form "
              "is nonzero while eta is parallel).";
    e.expected = constant_flat_expectations(H);
    return e;
}

GalleryEntry make_ex2_2(int which) {
    const int n = 3;
    std::vector<ScalarField> met(9), phi(9), xi(3), eta(3);
    const ScalarField y = X(1);
    phi[0 * 3 + 0] = C(-1);
    phi[1 * 3 + 1] = C(-1);
    phi[2 * 3 + 0] = -y;  // phi(d/dx) = -d/dx - y d/dz
    xi[2] = C(1);
    eta[0] = -y;  // eta = dz - y dx
    eta[2] = C(1);

    GalleryEntry e;
    if (which == 1) {
        // g = dx^2 + dy^2 - eta (x) eta
        sym_set(met, n, 0, 0, C(1) - y * y);
        sym_set(met, n, 1, 1, C(1));
        sym_set(met, n, 2, 2, C(-1));
        sym_set(met, n, 0, 2, y);
        e.chart = make_chart("ex2_2_g1", n, -1, {"x", "y", "z"}, unit_box(n), met, phi, xi,
                             eta);
        e.description = "chart on R^3 with eta = dz - y dx, g = dx^2 + dy^2 - eta (x) eta "
                        "(epsilon = -1, index 1)";
        e.notes = "eta is not closed (d eta = dx^dy /= 0), yet the integral curves of xi "
                  "are geodesics; the most demanding fixture for the normality-tensor "
                  "identities.";
        e.expected = open_eta_expectations();
    } else if (which == 2) {
        // g = dx^2 + dy^2 + dz^2 - y (dx dz + dz dx)
        sym_set(met, n, 0, 0, C(1));
        sym_set(met, n, 1, 1, C(1));
        sym_set(met, n, 2, 2, C(1));
        sym_set(met, n, 0, 2, -y);
        std::vector<std::array<double, 2>> box = unit_box(n);
        box[1] = {-2.0, 2.0};
        e.chart = make_chart("ex2_2_g2", n, 1, {"x", "y", "z"}, box, met, phi, xi, eta);
        e.description = "chart on R^3 with eta = dz - y dx, g = dx^2 + dy^2 + dz^2 "
                        "- y (dx dz + dz dx) (epsilon = +1, index depends on y)";
        e.notes = "The x-z block has determinant 1 - y^2: the metric is Riemannian where "
                  "|y| < 1 and has index 1 where |y| > 1; the domain spans both regions "
                  "and the index histogram records the split.";
        e.expected = open_eta_expectations();
    } else {
        // g = -dx^2 + dy^2 + dz^2 - y (dx dz + dz dx)
        sym_set(met, n, 0, 0, C(-1));
        sym_set(met, n, 1, 1, C(1));
        sym_set(met, n, 2, 2, C(1));
        sym_set(met, n, 0, 2, -y);
        e.chart = make_chart("ex2_2_g3", n, 1, {"x", "y", "z"}, unit_box(n), met, phi, xi,
                             eta);
        e.description = "chart on R^3 with eta = dz - y dx, g = -dx^2 + dy^2 + dz^2 "
                        "- y (dx dz + dz dx) (epsilon = +1, index 1)";
        e.notes = "The x-z block has determinant -1 - y^2 < 0, so the pointwise index is "
                  "1 at every point of this domain.";
        e.expected = open_eta_expectations();
    }
    return e;
}

GalleryEntry make_ex2_3(int which) {
    const int n = 5;
    std::vector<ScalarField> met(25), phi(25), xi(5), eta(5);
    const ScalarField y = X(1);
    const ScalarField t = X(3);
    for (int i = 0; i < 4; ++i) phi[static_cast<size_t>(i) * 5 + i] = C(-1);
    phi[4 * 5 + 0] = -y;  // phi(d/dx) = -d/dx - y d/ds
    phi[4 * 5 + 2] = -t;  // phi(d/dz) = -d/dz - t d/ds
    xi[4] = C(1);
    eta[0] = -y;  // eta = ds - y dx - t dz
    eta[2] = -t;
    eta[4] = C(1);

    GalleryEntry e;
    if (which == 1) {
        // g = dx^2 + dy^2 + dz^2 + dt^2 - eta (x) eta
        sym_set(met, n, 0, 0, C(1) - y * y);
        sym_set(met, n, 1, 1, C(1));
        sym_set(met, n, 2, 2, C(1) - t * t);
        sym_set(met, n, 3, 3, C(1));
        sym_set(met, n, 4, 4, C(-1));
        sym_set(met, n, 0, 2, -(y * t));
        sym_set(met, n, 0, 4, y);
        sym_set(met, n, 2, 4, t);
        e.chart = make_chart("ex2_3_g1", n, -1, {"x", "y", "z", "t", "s"}, unit_box(n), met,
                             phi, xi, eta);
        e.description = "chart on R^5 with eta = ds - y dx - t dz, g = flat - eta (x) eta "
                        "(epsilon = -1, index 1)";
        e.notes = "Five-dimensional sibling of the eta (x) eta construction; eta is not "
                  "closed.";
    } else {
        // g = -dx^2 - dy^2 + dz^2 + dt^2 + ds^2 - t (dz ds + ds dz) - y (dx ds + ds dx)
        sym_set(met, n, 0, 0, C(-1));
        sym_set(met, n, 1, 1, C(-1));
        sym_set(met, n, 2, 2, C(1));
        sym_set(met, n, 3, 3, C(1));
        sym_set(met, n, 4, 4, C(1));
        sym_set(met, n, 0, 4, -y);
        sym_set(met, n, 2, 4, -t);
        e.chart = make_chart("ex2_3_g2", n, 1, {"x", "y", "z", "t", "s"}, unit_box(n), met,
                             phi, xi, eta);
        e.description = "chart on R^5 with eta = ds - y dx - t dz, g = -dx^2 - dy^2 + dz^2 "
                        "+ dt^2 + ds^2 - t (dz ds + ds dz) - y (dx ds + ds dx) "
                        "(epsilon = +1)";
        e.notes = "At the origin the metric is diag(-1,-1,1,1,1), of index 2; the "
                  "histogram reports the pointwise count over the sampled domain.";
    }
    e.expected = open_eta_expectations();
    return e;
}

GalleryEntry make_ex4_1() {
    GalleryEntry e;
    e.chart = make_potential_structure(1, 1, X(0) * X(1), {C(1), C(1)}, "ex4_1_default",
                                       {"x", "y", "z"});
    e.description = "potential-generated structure with theta = x y, F = (1, 1): "
                    "s-paracontact, eta exact (epsilon = -1, index 1)";
    e.notes = "eta = d(x y + z) is exact, so eta is closed and xi is geodesic; the chart "
              "is s-paracontact but not para-Sasakian (that residual is of order one over "
              "most of the domain).";
    e.expected = Exp{
        {"almost_paracontact_metric", H},
        {"paracontact", H},
        {"s_paracontact", H},
        {"eta_closed", H},
        {"xi_geodesic", H},
        {"normal", H},
        {"n2_zero", H},
        {"n3_zero", H},
        {"n4_zero", H},
        {"para_sasakian", F},
        {"flat", F},
        {"constant_curvature_minus_eps", F},
        {"symmetric", F},
        {"semi_symmetric", F},
        {"ricci_symmetric", F},
        {"ricci_semisymmetric", F},
        {"einstein_ps", F},
        {"einstein_general", F},
    };
    return e;
}

GalleryEntry make_ex5_1(bool spacelike) {
    const int n = 3;
    std::vector<ScalarField> met(9), phi(9), xi(3), eta(3);
    const int eps = spacelike ? 1 : -1;
    const ScalarField z = X(2);
    phi[0 * 3 + 0] = C(1);
    phi[1 * 3 + 1] = C(-1);
    xi[2] = C(1);
    eta[2] = C(1);
    sym_set(met, n, 0, 0, exp(C(2.0 * eps) * z));
    sym_set(met, n, 1, 1, exp(C(-2.0 * eps) * z));
    sym_set(met, n, 2, 2, C(eps));
    GalleryEntry e;
    e.chart = make_chart(spacelike ? "ex5_1_spacelike" : "ex5_1_timelike", n, eps,
                         {"x", "y", "z"}, unit_box(n), met, phi, xi, eta);
    e.description = spacelike
        ? "warped chart g = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2, phi = diag(1,-1,0): "
          "para-Sasakian (epsilon = +1, index 0)"
        : "warped chart g = e^{-2z} dx^2 + e^{2z} dy^2 - dz^2, phi = diag(1,-1,0): "
          "para-Sasakian (epsilon = -1, index 1)";
    e.notes = "Sectional curvatures K(d1,d3) = K(d2,d3) = -epsilon and K(d1,d2) = "
              "+epsilon, so the chart is para-Sasakian but not of constant curvature, "
              "not symmetric and not Einstein.";
    e.expected = Exp{
        {"almost_paracontact_metric", H},
        {"paracontact", H},
        {"s_paracontact", H},
        {"eta_closed", H},
        {"xi_geodesic", H},
        {"normal", H},
        {"n2_zero", H},
        {"n3_zero", H},
        {"n4_zero", H},
        {"para_sasakian", H},
        {"flat", F},
        {"constant_curvature_minus_eps", F},
        {"symmetric", F},
        {"semi_symmetric", F},
        {"ricci_symmetric", F},
        {"ricci_semisymmetric", F},
        {"einstein_ps", F},
        {"einstein_general", F},
    };
    return e;
}

GalleryEntry make_hyperbolic_ps() {
    const int n = 3;
    std::vector<ScalarField> met(9), phi(9), xi(3), eta(3);
    const ScalarField z = X(2);
    phi[0 * 3 + 0] = C(1);
    phi[1 * 3 + 1] = C(1);
    xi[2] = C(1);
    eta[2] = C(1);
    sym_set(met, n, 0, 0, exp(C(2) * z));
    sym_set(met, n, 1, 1, exp(C(2) * z));
    sym_set(met, n, 2, 2, C(1));
    GalleryEntry e;
    e.chart = make_chart("hyperbolic_ps", n, 1, {"x", "y", "z"}, unit_box(n), met, phi, xi,
                         eta);
    e.description = "hyperbolic chart g = e^{2z} (dx^2 + dy^2) + dz^2, phi = diag(1,1,0): "
                    "para-Sasakian of constant curvature -1 (epsilon = +1, index 0)";
    e.notes = "Constant curvature -1: R = -R0, S = -2 g, r = -6, K = -1 on every plane; "
              "symmetric, semi-symmetric and Einstein.";
    e.expected = Exp{
        {"almost_paracontact_metric", H},
        {"paracontact", H},
        {"s_paracontact", H},
        {"eta_closed", H},
        {"xi_geodesic", H},
        {"normal", H},
        {"n2_zero", H},
        {"n3_zero", H},
        {"n4_zero", H},
        {"para_sasakian", H},
        {"flat", F},
        {"constant_curvature_minus_eps", H},
        {"symmetric", H},
        {"semi_symmetric", H},
        {"ricci_symmetric", H},
        {"ricci_semisymmetric", H},
        {"einstein_ps", H},
        {"einstein_general", H},
    };
    return e;
}

GalleryEntry make_product_ap() {
    std::vector<ScalarField> J(4), G(4);
    J[0] = C(1);
    J[3] = C(-1);
    G[0] = C(1);
    G[3] = C(1);
    GalleryEntry e;
    e.chart = from_almost_product(2, J, G, 1, {"u", "v"}, "product_ap");
    e.description = "product of the flat almost product plane (J = diag(1,-1), G = I) "
                    "with a line (epsilon = +1, index 0)";
    e.notes = "All fields are constant: flat and normal, but not paracontact.";
    e.expected = constant_flat_expectations(H);
    return e;
}

std::vector<GalleryEntry> build_gallery() {
    std::vector<GalleryEntry> out;
    out.push_back(make_ex2_1(1));
    out.push_back(make_ex2_1(2));
    out.push_back(make_ex2_2(1));
    out.push_back(make_ex2_2(2));
    out.push_back(make_ex2_2(3));
    out.push_back(make_ex2_3(1));
    out.push_back(make_ex2_3(2));
    out.push_back(make_ex4_1());
    out.push_back(make_ex5_1(true));
    out.push_back(make_ex5_1(false));
    out.push_back(make_hyperbolic_ps());
    out.push_back(make_product_ap());
    return out;
}

}  // namespace

const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> entries = build_gallery();
    return entries;
}

const GalleryEntry* find_chart(std::string_view name) {
    for (const GalleryEntry& e : gallery())
        if (e.chart.name == name) return &e;
    return nullptr;
}

StructuredChart make_potential_structure(int p, int q, const ScalarField& theta,
                                         const std::vector<ScalarField>& F,
                                         const std::string& name,
                                         std::vector<std::string> coords,
                                         std::vector<std::array<double, 2>> domain) {
    if (p < 1 || q < 1)
        throw std::invalid_argument("make_potential_structure: p and q must be >= 1");
    const int m = p + q;
    const int n = m + 1;
    if (n > 8) throw std::invalid_argument("make_potential_structure: dimension above 8");
    if (static_cast<int>(F.size()) != m)
        throw std::invalid_argument("make_potential_structure: need p+q weight functions");
    if (theta.required_dim() > m)
        throw std::invalid_argument(
            "make_potential_structure: theta may depend only on the first p+q coordinates");
    for (const ScalarField& f : F)
        if (f.required_dim() > m)
            throw std::invalid_argument(
                "make_potential_structure: weights may depend only on the first p+q "
                "coordinates");

    if (coords.empty()) {
        for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
    }
    if (domain.empty()) domain = unit_box(n);
    if (static_cast<int>(coords.size()) != n || static_cast<int>(domain.size()) != n)
        throw std::invalid_argument("make_potential_structure: coords/domain size mismatch");

    // Spot-check positivity of the weights over the domain.
    {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        for (int trial = 0; trial < 8; ++trial) {
            const std::vector<double> pt = sample_box(domain, rng);
            for (size_t i = 0; i < F.size(); ++i)
                if (F[i].eval_value(pt) <= 0.0) {
                    std::ostringstream os;
                    os << "make_potential_structure: weight F" << (i + 1)
                       << " is not positive on the domain";
                    throw std::invalid_argument(os.str());
                }
        }
    }

    std::vector<ScalarField> dtheta;
    dtheta.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) dtheta.push_back(theta.derivative(i));

    std::vector<ScalarField> met(static_cast<size_t>(n) * n), phi(static_cast<size_t>(n) * n),
        xi(static_cast<size_t>(n)), eta(static_cast<size_t>(n));
    const ScalarField last = X(n - 1);
    for (int i = 0; i < m; ++i) {
        const bool first_block = i < p;
        phi[static_cast<size_t>(i) * n + i] = C(first_block ? 1 : -1);
        phi[static_cast<size_t>(n - 1) * n + i] =
            first_block ? -dtheta[static_cast<size_t>(i)] : dtheta[static_cast<size_t>(i)];
        eta[static_cast<size_t>(i)] = dtheta[static_cast<size_t>(i)];
        sym_set(met, n, i, i,
                F[static_cast<size_t>(i)] * exp(C(first_block ? -2 : 2) * last) -
                    dtheta[static_cast<size_t>(i)] * dtheta[static_cast<size_t>(i)]);
        for (int j = 0; j < i; ++j)
            sym_set(met, n, i, j,
                    -(dtheta[static_cast<size_t>(i)] * dtheta[static_cast<size_t>(j)]));
        sym_set(met, n, i, n - 1, -dtheta[static_cast<size_t>(i)]);
    }
    xi[static_cast<size_t>(n - 1)] = C(1);
    eta[static_cast<size_t>(n - 1)] = C(1);
    sym_set(met, n, n - 1, n - 1, C(-1));

    return make_chart(name, n, -1, std::move(coords), std::move(domain), std::move(met),
                      std::move(phi), std::move(xi), std::move(eta));
}

}  // namespace paralab

#include "paralab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "paralab/connection.hpp"
#include "paralab/sampling.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paralab {
namespace {

constexpr const char* kPropertyNames[kPropertyCount] = {
    "almost_paracontact_metric",
    "paracontact",
    "s_paracontact",
    "eta_closed",
    "xi_geodesic",
    "normal",
    "n2_zero",
    "n3_zero",
    "n4_zero",
    "para_sasakian",
    "flat",
    "constant_curvature_minus_eps",
    "symmetric",
    "semi_symmetric",
    "ricci_symmetric",
    "ricci_semisymmetric",
    "einstein_ps",
    "einstein_general",
};

enum Prop {
    kApm = 0,
    kParacontact,
    kSParacontact,
    kEtaClosed,
    kXiGeodesic,
    kNormal,
    kN2Zero,
    kN3Zero,
    kN4Zero,
    kParaSasakian,
    kFlat,
    kConstCurv,
    kSymmetric,
    kSemiSymmetric,
    kRicciSymmetric,
    kRicciSemisymmetric,
    kEinsteinPs,
    kEinsteinGeneral,
};

constexpr IdentityRowSpec kIdentityTable[] = {
    {"phi_squared", "axioms", "none"},
    {"eta_of_xi", "axioms", "none"},
    {"phi_xi", "axioms", "none"},
    {"eta_phi", "axioms", "none"},
    {"phi_cubed", "axioms", "none"},
    {"compatibility", "axioms", "none"},
    {"phi_symmetry", "axioms", "none"},
    {"xi_lowering", "axioms", "none"},
    {"xi_norm", "axioms", "none"},
    {"n4_from_deta", "normality", "almost_paracontact"},
    {"n2_from_deta", "normality", "almost_paracontact"},
    {"n1_with_xi", "normality", "almost_paracontact"},
    {"n1_phi_expansion", "normality", "almost_paracontact"},
    {"n2_phi_argument", "normality", "almost_paracontact"},
    {"n4_three_routes", "normality", "almost_paracontact"},
    {"n4_of_phi", "normality", "almost_paracontact"},
    {"phi_of_n1_xi", "normality", "almost_paracontact"},
    {"eta_of_n1_phi", "normality", "almost_paracontact"},
    {"nijenhuis_two_routes", "normality", "none"},
    {"fundamental_symmetric", "fundamental", "metric"},
    {"nabla_phi_lowered", "fundamental", "metric"},
    {"nabla_phi_phi_phi", "fundamental", "metric"},
    {"riemann_antisymmetry", "curvature", "levi_civita"},
    {"riemann_pair_symmetry", "curvature", "levi_civita"},
    {"bianchi_first", "curvature", "levi_civita"},
    {"bianchi_second", "curvature", "levi_civita"},
    {"r_xy_xi", "curvature", "para_sasakian"},
    {"r_xyz_xi", "curvature", "para_sasakian"},
    {"eta_of_r", "curvature", "para_sasakian"},
    {"r_xi_x", "curvature", "para_sasakian"},
    {"r_phi_skew", "curvature", "para_sasakian"},
    {"r_phi_phi", "curvature", "para_sasakian"},
    {"r_phi_pair", "curvature", "para_sasakian"},
    {"r_all_phi", "curvature", "para_sasakian"},
    {"ricci_phi_phi", "ricci", "para_sasakian"},
    {"ricci_phi_swap", "ricci", "para_sasakian"},
    {"ricci_xi", "ricci", "para_sasakian"},
    {"const_curv_fundamental", "ricci", "constant_curvature"},
};

constexpr int kIdentityCount = static_cast<int>(std::size(kIdentityTable));

Status aggregate_status(int ok_count, int total) {
    if (ok_count == total) return Status::Holds;
    if (ok_count == 0) return Status::Fails;
    return Status::Mixed;
}

}  // namespace

const char* status_name(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Fails: return "fails";
        default: return "mixed";
    }
}

std::span<const char* const> property_names() {
    return std::span<const char* const>(kPropertyNames, kPropertyCount);
}

int property_index(std::string_view name) {
    for (int i = 0; i < kPropertyCount; ++i)
        if (name == kPropertyNames[i]) return i;
    return -1;
}

std::span<const IdentityRowSpec> identity_table() {
    return std::span<const IdentityRowSpec>(kIdentityTable, kIdentityCount);
}

PointEvaluation evaluate_point(const StructuredChart& chart, std::span<const double> point) {
    PointEvaluation ev;
    ev.point.assign(point.begin(), point.end());
    ev.identity_residuals.assign(static_cast<size_t>(kIdentityCount), 0.0);

    const AxiomReport ax = axiom_report(chart, point);
    const FrameJets f = evaluate_frame(chart, point);
    const ConnectionFrame conn = christoffel_frame(f);
    const NormalityTensors nt = normality_tensors(f, conn);
    const StructureResiduals sr = structure_residuals(f, conn);
    const CurvatureFrame cf = curvature_frame(f, conn);
    const ClassificationResiduals cr = classification_residuals(f, cf);

    ev.nu = ax.index;

    const bool shape_ok = ax.rank_phi == chart.dim - 1 && ax.kernel_nondegenerate;
    // A rank or kernel defect is a structural failure that no residual
    // captures; report it as a unit residual so the status comes out right.
    ev.residuals[kApm] =
        shape_ok ? ax.max_structural() : std::max(ax.max_structural(), 1.0);
    ev.residuals[kParacontact] = sr.paracontact;
    ev.residuals[kSParacontact] = sr.s_paracontact;
    ev.residuals[kEtaClosed] = sr.eta_closed;
    ev.residuals[kXiGeodesic] = sr.xi_geodesic;

    auto maxabs = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    ev.residuals[kNormal] = maxabs(nt.n1) / nt.n1_scale;
    ev.residuals[kN2Zero] = maxabs(nt.n2) / nt.n2_scale;
    ev.residuals[kN3Zero] = maxabs(nt.n3) / nt.n3_scale;
    ev.residuals[kN4Zero] = maxabs(nt.n4) / nt.n4_scale;
    ev.residuals[kParaSasakian] = sr.para_sasakian;
    ev.residuals[kFlat] = cr.flat;
    ev.residuals[kConstCurv] = cr.constant_curvature_minus_eps;
    ev.residuals[kSymmetric] = cr.symmetric;
    ev.residuals[kSemiSymmetric] = cr.semi_symmetric;
    ev.residuals[kRicciSymmetric] = cr.ricci_symmetric;
    ev.residuals[kRicciSemisymmetric] = cr.ricci_semisymmetric;
    ev.residuals[kEinsteinPs] = cr.einstein_ps;
    ev.residuals[kEinsteinGeneral] = cr.einstein_general;

    int at = 0;
    auto put = [&](double v) { ev.identity_residuals[static_cast<size_t>(at++)] = v; };
    put(ax.phi_squared);
    put(ax.eta_of_xi);
    put(ax.phi_xi);
    put(ax.eta_phi);
    put(ax.phi_cubed);
    put(ax.compatibility);
    put(ax.phi_symmetry);
    put(ax.xi_lowering);
    put(ax.xi_norm);
    for (const IdentityValue& row : normality_rows(f)) put(row.residual);
    {
        double diff = 0.0;
        for (size_t i = 0; i < nt.nij_phi.size(); ++i)
            diff = std::max(diff, std::abs(nt.nij_phi[i] - nt.nij_cov[i]));
        put(diff / nt.nij_scale);
    }
    for (const IdentityValue& row : phi_rows(f, conn)) put(row.residual);
    for (const IdentityValue& row : curvature_generic_rows(cf)) put(row.residual);
    for (const IdentityValue& row : ps_curvature_rows(f, cf)) put(row.residual);
    for (const IdentityValue& row : ricci_rows(f, cf)) put(row.residual);
    put(const_curv_row(f).residual);
    if (at != kIdentityCount)
        throw std::logic_error("evaluate_point: identity table size mismatch");
    return ev;
}

std::vector<PointEvaluation> evaluate_points(const StructuredChart& chart,
                                             const std::vector<std::vector<double>>& points,
                                             bool parallel) {
    std::vector<PointEvaluation> out(points.size());
    const int n = static_cast<int>(points.size());
#ifdef _OPENMP
    if (parallel) {
        std::vector<std::exception_ptr> errors(points.size());
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            try {
                out[static_cast<size_t>(i)] =
                    evaluate_point(chart, points[static_cast<size_t>(i)]);
            } catch (...) {
                errors[static_cast<size_t>(i)] = std::current_exception();
            }
        }
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
        return out;
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = evaluate_point(chart, points[static_cast<size_t>(i)]);
    return out;
}

std::vector<std::vector<double>> sample_points(const StructuredChart& chart, int count,
                                               std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_points: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> points;
    points.reserve(static_cast<size_t>(count));
    const int max_attempts = 10 * count;
    for (int attempt = 0; attempt < max_attempts && static_cast<int>(points.size()) < count;
         ++attempt) {
        std::vector<double> p = sample_box(chart.domain, rng);
        try {
            (void)evaluate_frame(chart, p);
        } catch (const DegenerateMetricError&) {
            continue;
        }
        points.push_back(std::move(p));
    }
    if (static_cast<int>(points.size()) < count)
        throw DegenerateMetricError(
            "sample_points: could not find enough points with a nondegenerate metric");
    return points;
}

ClassificationReport classify_chart(const StructuredChart& chart, const SampleSpec& spec,
                                    bool parallel) {
    ClassificationReport rep;
    rep.chart = chart.name;
    rep.dim = chart.dim;
    rep.epsilon = chart.epsilon;
    rep.spec = spec;
    rep.coords = chart.coords;
    rep.domain = chart.domain;
    rep.points = sample_points(chart, spec.count, spec.seed);
    const std::vector<PointEvaluation> evals = evaluate_points(chart, rep.points, parallel);

    rep.indices.reserve(evals.size());
    for (const PointEvaluation& ev : evals) {
        rep.indices.push_back(ev.nu);
        ++rep.index_histogram[ev.nu];
    }

    rep.properties.reserve(kPropertyCount);
    for (int p = 0; p < kPropertyCount; ++p) {
        PropertyStatus st;
        st.property = kPropertyNames[p];
        st.tol_used = spec.tol;
        int ok = 0;
        double worst = -1.0;
        int worst_index = 0;
        for (size_t i = 0; i < evals.size(); ++i) {
            const double r = evals[i].residuals[static_cast<size_t>(p)];
            if (r <= spec.tol) ++ok;
            if (r > worst) {
                worst = r;
                worst_index = static_cast<int>(i);
            }
        }
        st.status = aggregate_status(ok, static_cast<int>(evals.size()));
        st.max_residual = worst;
        st.worst_index = worst_index;
        st.worst_point = rep.points[static_cast<size_t>(worst_index)];
        rep.properties.push_back(std::move(st));
    }

    const bool ps_holds = rep.properties[kParaSasakian].status == Status::Holds;
    const bool cc_holds = rep.properties[kConstCurv].status == Status::Holds;
    rep.identities.reserve(static_cast<size_t>(kIdentityCount));
    for (int r = 0; r < kIdentityCount; ++r) {
        IdentityRowResult row;
        row.name = kIdentityTable[r].name;
        row.suite = kIdentityTable[r].suite;
        row.tier = kIdentityTable[r].tier;
        row.applicable = true;
        if (row.tier == "para_sasakian") row.applicable = ps_holds;
        if (row.tier == "constant_curvature") row.applicable = cc_holds;
        double worst = -1.0;
        int worst_index = 0;
        for (size_t i = 0; i < evals.size(); ++i) {
            const double v = evals[i].identity_residuals[static_cast<size_t>(r)];
            if (v > worst) {
                worst = v;
                worst_index = static_cast<int>(i);
            }
        }
        row.max_residual = worst;
        row.worst_index = worst_index;
        row.worst_point = rep.points[static_cast<size_t>(worst_index)];
        rep.identities.push_back(std::move(row));
    }

    rep.audit = implication_audit(rep);
    return rep;
}

std::vector<AuditFinding> implication_audit(const ClassificationReport& report) {
    std::vector<AuditFinding> findings;
    if (report.properties.size() != static_cast<size_t>(kPropertyCount)) return findings;
    auto status = [&](int p) { return report.properties[static_cast<size_t>(p)].status; };
    if (status(kApm) != Status::Holds) return findings;

    auto implies = [&](int from, int to, const std::string& rule) {
        if (status(from) == Status::Holds && status(to) != Status::Holds) {
            std::ostringstream os;
            os << kPropertyNames[from] << " holds but " << kPropertyNames[to] << " is "
               << status_name(status(to));
            findings.push_back({rule, os.str()});
        }
    };
    auto equivalent = [&](int a, int b, const std::string& rule) {
        const bool ha = status(a) == Status::Holds;
        const bool hb = status(b) == Status::Holds;
        if (ha != hb) {
            std::ostringstream os;
            os << kPropertyNames[a] << " is " << status_name(status(a)) << " while "
               << kPropertyNames[b] << " is " << status_name(status(b));
            findings.push_back({rule, os.str()});
        }
    };

    implies(kParaSasakian, kSParacontact, "para_sasakian_implies_s_paracontact");
    implies(kParaSasakian, kNormal, "para_sasakian_implies_normal");
    implies(kSParacontact, kParacontact, "s_paracontact_implies_paracontact");
    implies(kSParacontact, kEtaClosed, "s_paracontact_implies_eta_closed");
    if (status(kParacontact) == Status::Holds && status(kEtaClosed) == Status::Holds &&
        status(kSParacontact) != Status::Holds) {
        std::ostringstream os;
        os << "paracontact and eta_closed hold but s_paracontact is "
           << status_name(status(kSParacontact));
        findings.push_back({"paracontact_and_closed_implies_s_paracontact", os.str()});
    }
    implies(kEtaClosed, kXiGeodesic, "eta_closed_implies_xi_geodesic");
    implies(kNormal, kN2Zero, "normal_implies_n2_zero");
    implies(kNormal, kN3Zero, "normal_implies_n3_zero");
    implies(kNormal, kN4Zero, "normal_implies_n4_zero");
    implies(kN2Zero, kN4Zero, "n2_zero_implies_n4_zero");
    implies(kN3Zero, kN4Zero, "n3_zero_implies_n4_zero");
    if (status(kParaSasakian) == Status::Holds && status(kFlat) == Status::Holds)
        findings.push_back({"para_sasakian_cannot_be_flat",
                            "para_sasakian and flat both hold"});
    if (status(kParaSasakian) == Status::Holds) {
        equivalent(kSymmetric, kConstCurv, "symmetric_iff_constant_curvature");
        equivalent(kSymmetric, kSemiSymmetric, "symmetric_iff_semi_symmetric");
        equivalent(kEinsteinPs, kRicciSymmetric, "einstein_iff_ricci_symmetric");
        equivalent(kEinsteinPs, kRicciSemisymmetric, "einstein_iff_ricci_semisymmetric");
    }
    return findings;
}

std::vector<IdentityRowResult> identity_suite(const StructuredChart& chart,
                                              const std::vector<std::vector<double>>& points,
                                              double tol, bool parallel) {
    const std::vector<PointEvaluation> evals = evaluate_points(chart, points, parallel);
    int ps_ok = 0, cc_ok = 0;
    for (const PointEvaluation& ev : evals) {
        if (ev.residuals[kParaSasakian] <= tol) ++ps_ok;
        if (ev.residuals[kConstCurv] <= tol) ++cc_ok;
    }
    const bool ps_holds = !evals.empty() && ps_ok == static_cast<int>(evals.size());
    const bool cc_holds = !evals.empty() && cc_ok == static_cast<int>(evals.size());

    std::vector<IdentityRowResult> rows;
    rows.reserve(static_cast<size_t>(kIdentityCount));
    for (int r = 0; r < kIdentityCount; ++r) {
        IdentityRowResult row;
        row.name = kIdentityTable[r].name;
        row.suite = kIdentityTable[r].suite;
        row.tier = kIdentityTable[r].tier;
        row.applicable = true;
        if (row.tier == "para_sasakian") row.applicable = ps_holds;
        if (row.tier == "constant_curvature") row.applicable = cc_holds;
        double worst = -1.0;
        int worst_index = 0;
        for (size_t i = 0; i < evals.size(); ++i) {
            const double v = evals[i].identity_residuals[static_cast<size_t>(r)];
            if (v > worst) {
                worst = v;
                worst_index = static_cast<int>(i);
            }
        }
        row.max_residual = worst;
        row.worst_index = worst_index;
        if (!points.empty()) row.worst_point = points[static_cast<size_t>(worst_index)];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace paralab

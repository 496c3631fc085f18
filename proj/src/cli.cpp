#include "paralab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <CLI11.hpp>

#include "paralab/classify.hpp"
#include "paralab/curvature.hpp"
#include "paralab/expr_parse.hpp"
#include "paralab/gallery.hpp"
#include "paralab/manifest.hpp"
#include "paralab/report_io.hpp"

namespace paralab {
namespace {

struct Resolved {
    StructuredChart chart;
    const GalleryEntry* entry = nullptr;  // set when the reference named a gallery chart
};

Resolved resolve_chart(const std::string& ref) {
    if (const GalleryEntry* e = find_chart(ref)) return {e->chart, e};
    if (!std::filesystem::exists(ref)) {
        throw ManifestError("unknown chart '" + ref +
                            "': not a gallery name (see `list`) and not a manifest file");
    }
    return {load_manifest(ref), nullptr};
}

int do_list(std::ostream& out) {
    size_t width = 0;
    for (const auto& e : gallery()) width = std::max(width, e.chart.name.size());
    for (const auto& e : gallery()) {
        out << "  " << std::left << std::setw(static_cast<int>(width)) << e.chart.name << "  "
            << e.description << "\n";
    }
    return 0;
}

int do_validate(const std::string& file, std::ostream& out) {
    const StructuredChart c = load_manifest(file);
    out << "ok: '" << c.name << "' is a valid chart manifest (dim " << c.dim << ", epsilon "
        << c.epsilon << ")\n";
    return 0;
}

int do_classify(const Resolved& res, const SampleSpec& spec, bool json, bool assert_expected,
                std::ostream& out, std::ostream& err) {
    const ClassificationReport rep = classify_chart(res.chart, spec);
    out << (json ? report_to_json(rep) : report_to_text(rep));
    if (!assert_expected) return 0;

    std::vector<std::string> bad;
    if (res.entry) {
        for (const auto& [prop, want] : res.entry->expected) {
            for (const auto& ps : rep.properties) {
                if (ps.property == prop && ps.status != want) {
                    bad.push_back("property '" + prop + "' expected " + status_name(want) +
                                  ", got " + std::string(status_name(ps.status)));
                }
            }
        }
    }
    for (const auto& finding : rep.audit) {
        bad.push_back("implication audit: " + finding.rule + " (" + finding.detail + ")");
    }
    for (const auto& b : bad) err << "assert failed: " << b << "\n";
    return bad.empty() ? 0 : 1;
}

int do_identities(const Resolved& res, const std::string& suite, bool json, std::ostream& out) {
    const ClassificationReport rep = classify_chart(res.chart, SampleSpec{});
    out << (json ? identities_to_json(rep, suite) : identities_to_text(rep, suite));
    return 0;
}

void print_tuple(std::ostream& out, std::span<const double> v) {
    out << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << format_double(v[i]);
    }
    out << ")";
}

// Sectional curvatures of all coordinate planes; nullopt marks a plane that
// is degenerate for g.
std::vector<std::optional<double>> coordinate_plane_curvatures(const StructuredChart& chart,
                                                               std::span<const double> point) {
    const int n = chart.dim;
    std::vector<std::optional<double>> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<double> X(static_cast<size_t>(n), 0.0);
            std::vector<double> Y(static_cast<size_t>(n), 0.0);
            X[static_cast<size_t>(i)] = 1.0;
            Y[static_cast<size_t>(j)] = 1.0;
            try {
                out.push_back(sectional(chart, point, X, Y));
            } catch (const DegenerateMetricError&) {
                out.push_back(std::nullopt);
            }
        }
    }
    return out;
}

void curvature_text(const StructuredChart& chart, std::span<const double> point,
                    const FrameJets& f, const ConnectionFrame& conn, const CurvatureFrame& curv,
                    std::ostream& out) {
    constexpr double kShow = 1e-12;  // display threshold for "nonzero"
    const int n = chart.dim;
    out << "chart " << chart.name << "  (dim " << n << ", epsilon " << chart.epsilon << ")\n";
    out << "point ";
    print_tuple(out, point);
    out << "\n\n";

    out << "christoffel symbols Gamma^k_ij (nonzero, i <= j):\n";
    bool any = false;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double v = conn.G(k, i, j);
                if (std::abs(v) <= kShow) continue;
                out << "  Gamma^" << k + 1 << "_" << i + 1 << j + 1 << " = " << format_double(v)
                    << "\n";
                any = true;
            }
        }
    }
    if (!any) out << "  (all zero)\n";

    out << "riemann curvature R^l_ijk (nonzero, i < j):\n";
    any = false;
    for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    const double v = curv.Rup(l, i, j, k);
                    if (std::abs(v) <= kShow) continue;
                    out << "  R^" << l + 1 << "_" << i + 1 << j + 1 << k + 1 << " = "
                        << format_double(v) << "\n";
                    any = true;
                }
            }
        }
    }
    if (!any) out << "  (all zero)\n";

    out << "ricci tensor S_jk (nonzero, j <= k):\n";
    any = false;
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            const double v = curv.S(j, k);
            if (std::abs(v) <= kShow) continue;
            out << "  S_" << j + 1 << k + 1 << " = " << format_double(v) << "\n";
            any = true;
        }
    }
    if (!any) out << "  (all zero)\n";

    double sxx = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            sxx += curv.S(j, k) * f.xi[static_cast<size_t>(j)].value() *
                   f.xi[static_cast<size_t>(k)].value();
        }
    }
    out << "scalar curvature r = " << format_double(curv.scalar) << "\n";
    out << "S(xi,xi) = " << format_double(sxx) << "\n";

    out << "sectional curvature of coordinate planes:\n";
    const auto planes = coordinate_plane_curvatures(chart, point);
    size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++idx) {
            out << "  K(d" << i + 1 << ",d" << j + 1 << ") = ";
            if (planes[idx]) {
                out << format_double(*planes[idx]) << "\n";
            } else {
                out << "degenerate plane, skipped\n";
            }
        }
    }
}

void curvature_json(const StructuredChart& chart, std::span<const double> point,
                    const FrameJets& f, const ConnectionFrame& conn, const CurvatureFrame& curv,
                    std::ostream& out) {
    const int n = chart.dim;
    auto num = [](double v) { return format_double(v); };
    out << "{\n";
    out << "  \"chart\": \"" << chart.name << "\",\n";
    out << "  \"epsilon\": " << chart.epsilon << ",\n";
    out << "  \"point\": [";
    for (size_t i = 0; i < point.size(); ++i) out << (i ? ", " : "") << num(point[i]);
    out << "],\n";

    out << "  \"christoffel\": [";
    for (int k = 0; k < n; ++k) {
        out << (k ? ", " : "") << "[";
        for (int i = 0; i < n; ++i) {
            out << (i ? ", " : "") << "[";
            for (int j = 0; j < n; ++j) out << (j ? ", " : "") << num(conn.G(k, i, j));
            out << "]";
        }
        out << "]";
    }
    out << "],\n";

    out << "  \"riemann\": [";
    for (int l = 0; l < n; ++l) {
        out << (l ? ", " : "") << "[";
        for (int i = 0; i < n; ++i) {
            out << (i ? ", " : "") << "[";
            for (int j = 0; j < n; ++j) {
                out << (j ? ", " : "") << "[";
                for (int k = 0; k < n; ++k) out << (k ? ", " : "") << num(curv.Rup(l, i, j, k));
                out << "]";
            }
            out << "]";
        }
        out << "]";
    }
    out << "],\n";

    out << "  \"riemann_down\": [";
    for (int i = 0; i < n; ++i) {
        out << (i ? ", " : "") << "[";
        for (int j = 0; j < n; ++j) {
            out << (j ? ", " : "") << "[";
            for (int k = 0; k < n; ++k) {
                out << (k ? ", " : "") << "[";
                for (int l = 0; l < n; ++l) out << (l ? ", " : "") << num(curv.Rdown(i, j, k, l));
                out << "]";
            }
            out << "]";
        }
        out << "]";
    }
    out << "],\n";

    out << "  \"ricci\": [";
    for (int j = 0; j < n; ++j) {
        out << (j ? ", " : "") << "[";
        for (int k = 0; k < n; ++k) out << (k ? ", " : "") << num(curv.S(j, k));
        out << "]";
    }
    out << "],\n";

    double sxx = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            sxx += curv.S(j, k) * f.xi[static_cast<size_t>(j)].value() *
                   f.xi[static_cast<size_t>(k)].value();
        }
    }
    out << "  \"scalar\": " << num(curv.scalar) << ",\n";
    out << "  \"ricci_xi_xi\": " << num(sxx) << ",\n";

    out << "  \"sectional\": [";
    const auto planes = coordinate_plane_curvatures(chart, point);
    size_t idx = 0;
    bool first = true;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++idx) {
            out << (first ? "" : ", ") << "{\"plane\": [" << i << ", " << j << "], \"value\": ";
            if (planes[idx]) {
                out << num(*planes[idx]);
            } else {
                out << "null";
            }
            out << "}";
            first = false;
        }
    }
    out << "]\n";
    out << "}\n";
}

int do_curvature(const Resolved& res, const std::vector<double>& at, bool json, std::ostream& out,
                 std::ostream& err) {
    const StructuredChart& chart = res.chart;
    if (static_cast<int>(at.size()) != chart.dim) {
        err << "error: --at expects " << chart.dim << " comma-separated coordinates for chart '"
            << chart.name << "' (got " << at.size() << ")\n";
        return 2;
    }
    const FrameJets f = evaluate_frame(chart, at);
    const ConnectionFrame conn = christoffel_frame(f);
    const CurvatureFrame curv = curvature_frame(f, conn);
    if (json) {
        curvature_json(chart, at, f, conn, curv, out);
    } else {
        curvature_text(chart, at, f, conn, curv, out);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"laboratory for indefinite almost paracontact metric charts", "paralab"};
    app.require_subcommand(1);

    CLI::App* list_cmd = app.add_subcommand("list", "gallery chart names and descriptions");

    std::string validate_file;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a manifest file");
    validate_cmd->add_option("file", validate_file, "manifest file")->required();

    std::string classify_ref;
    SampleSpec spec;
    bool classify_json = false;
    bool classify_assert = false;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "sample a chart and report property statuses");
    classify_cmd->add_option("chart", classify_ref, "gallery name or manifest file")->required();
    classify_cmd->add_option("--points", spec.count, "sample point count")
        ->check(CLI::PositiveNumber);
    classify_cmd->add_option("--seed", spec.seed, "sampling seed");
    classify_cmd->add_option("--tol", spec.tol, "residual tolerance")->check(CLI::PositiveNumber);
    classify_cmd->add_flag("--json", classify_json, "emit the JSON report");
    classify_cmd->add_flag("--assert", classify_assert,
                           "exit 1 when an expected status is violated or the audit is nonempty");

    std::string identities_ref;
    std::string suite = "all";
    bool identities_json = false;
    CLI::App* identities_cmd =
        app.add_subcommand("identities", "evaluate the identity table on sampled points");
    identities_cmd->add_option("chart", identities_ref, "gallery name or manifest file")
        ->required();
    identities_cmd->add_option("--suite", suite, "identity suite to show")
        ->check(CLI::IsMember({"axioms", "normality", "fundamental", "curvature", "ricci", "all"}));
    identities_cmd->add_flag("--json", identities_json, "emit JSON");

    std::string curvature_ref;
    std::vector<double> at;
    bool curvature_json_flag = false;
    CLI::App* curvature_cmd =
        app.add_subcommand("curvature", "connection and curvature at one point");
    curvature_cmd->add_option("chart", curvature_ref, "gallery name or manifest file")->required();
    curvature_cmd->add_option("--at", at, "point coordinates v1,v2,...")
        ->required()
        ->delimiter(',');
    curvature_cmd->add_flag("--json", curvature_json_flag, "emit JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (list_cmd->parsed()) return do_list(out);
        if (validate_cmd->parsed()) return do_validate(validate_file, out);
        if (classify_cmd->parsed()) {
            return do_classify(resolve_chart(classify_ref), spec, classify_json, classify_assert,
                               out, err);
        }
        if (identities_cmd->parsed()) {
            return do_identities(resolve_chart(identities_ref), suite, identities_json, out);
        }
        if (curvature_cmd->parsed()) {
            return do_curvature(resolve_chart(curvature_ref), at, curvature_json_flag, out, err);
        }
    } catch (const ManifestError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateMetricError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable with require_subcommand(1)
}

}  // namespace paralab

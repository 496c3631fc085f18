#include "paralab/report_io.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace paralab {
namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void append_point(std::string& out, const std::vector<double>& p) {
    out += '[';
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += format_double(p[i]);
    }
    out += ']';
}

std::string point_text(const std::vector<double>& p) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ", ";
        os << std::setprecision(6) << p[i];
    }
    os << ')';
    return os.str();
}

void append_identity_row(std::string& out, const IdentityRowResult& row) {
    out += "{\"identity\": ";
    append_escaped(out, row.name);
    out += ", \"suite\": ";
    append_escaped(out, row.suite);
    out += ", \"tier\": ";
    append_escaped(out, row.tier);
    out += ", \"applicable\": ";
    out += row.applicable ? "true" : "false";
    out += ", \"max_residual\": ";
    out += format_double(row.max_residual);
    out += ", \"worst_point\": ";
    append_point(out, row.worst_point);
    out += '}';
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_to_json(const ClassificationReport& report) {
    std::string out;
    out.reserve(1 << 14);
    out += "{\n  \"chart\": ";
    append_escaped(out, report.chart);
    out += ",\n  \"epsilon\": ";
    out += std::to_string(report.epsilon);
    out += ",\n  \"samples\": {\"count\": ";
    out += std::to_string(report.spec.count);
    out += ", \"seed\": ";
    out += std::to_string(report.spec.seed);
    out += ", \"tol\": ";
    out += format_double(report.spec.tol);
    out += ", \"domain\": [";
    for (size_t i = 0; i < report.domain.size(); ++i) {
        if (i) out += ", ";
        out += '[';
        out += format_double(report.domain[i][0]);
        out += ", ";
        out += format_double(report.domain[i][1]);
        out += ']';
    }
    out += "]},\n  \"index_histogram\": {";
    {
        bool first = true;
        for (const auto& [nu, count] : report.index_histogram) {
            if (!first) out += ", ";
            first = false;
            append_escaped(out, std::to_string(nu));
            out += ": ";
            out += std::to_string(count);
        }
    }
    out += "},\n  \"properties\": [\n";
    for (size_t i = 0; i < report.properties.size(); ++i) {
        const PropertyStatus& p = report.properties[i];
        out += "    {\"property\": ";
        append_escaped(out, p.property);
        out += ", \"status\": ";
        append_escaped(out, status_name(p.status));
        out += ", \"max_residual\": ";
        out += format_double(p.max_residual);
        out += ", \"worst_point\": ";
        append_point(out, p.worst_point);
        out += ", \"tol_used\": ";
        out += format_double(p.tol_used);
        out += '}';
        if (i + 1 < report.properties.size()) out += ',';
        out += '\n';
    }
    out += "  ],\n  \"identities\": [\n";
    for (size_t i = 0; i < report.identities.size(); ++i) {
        out += "    ";
        append_identity_row(out, report.identities[i]);
        if (i + 1 < report.identities.size()) out += ',';
        out += '\n';
    }
    out += "  ],\n  \"audit\": [";
    for (size_t i = 0; i < report.audit.size(); ++i) {
        if (i) out += ", ";
        out += "{\"rule\": ";
        append_escaped(out, report.audit[i].rule);
        out += ", \"detail\": ";
        append_escaped(out, report.audit[i].detail);
        out += '}';
    }
    out += "]\n}\n";
    return out;
}

std::string report_to_text(const ClassificationReport& report) {
    std::ostringstream os;
    os << "chart " << report.chart << "  (dim " << report.dim << ", epsilon "
       << (report.epsilon > 0 ? "+1" : "-1") << ")\n";
    os << "samples: count " << report.spec.count << ", seed " << report.spec.seed
       << ", tol " << format_double(report.spec.tol) << "\n";
    os << "domain:";
    for (size_t i = 0; i < report.domain.size(); ++i) {
        os << ' ' << (i < report.coords.size() ? report.coords[i] : "x" + std::to_string(i))
           << " in [" << report.domain[i][0] << ", " << report.domain[i][1] << ']';
        if (i + 1 < report.domain.size()) os << ';';
    }
    os << "\n\nmetric index histogram:\n";
    for (const auto& [nu, count] : report.index_histogram)
        os << "  index " << nu << ": " << count << " points\n";
    os << "\nproperties:\n";
    for (const PropertyStatus& p : report.properties) {
        os << "  " << std::left << std::setw(29) << p.property << std::setw(7)
           << status_name(p.status) << "max residual " << std::setw(13)
           << format_double(p.max_residual) << " at " << point_text(p.worst_point) << "\n";
    }
    os << "\naudit: ";
    if (report.audit.empty()) {
        os << "no violations\n";
    } else {
        os << report.audit.size() << " violation(s)\n";
        for (const AuditFinding& f : report.audit)
            os << "  " << f.rule << ": " << f.detail << "\n";
    }
    return os.str();
}

std::string identities_to_json(const ClassificationReport& report, const std::string& suite) {
    std::string out;
    out += "{\n  \"chart\": ";
    append_escaped(out, report.chart);
    out += ",\n  \"suite\": ";
    append_escaped(out, suite);
    out += ",\n  \"identities\": [\n";
    bool first = true;
    for (const IdentityRowResult& row : report.identities) {
        if (suite != "all" && row.suite != suite) continue;
        if (!first) out += ",\n";
        first = false;
        out += "    ";
        append_identity_row(out, row);
    }
    out += "\n  ]\n}\n";
    return out;
}

std::string identities_to_text(const ClassificationReport& report, const std::string& suite) {
    std::ostringstream os;
    os << "chart " << report.chart << ", identity suite " << suite << "\n";
    os << "  " << std::left << std::setw(24) << "identity" << std::setw(12) << "suite"
       << std::setw(20) << "tier" << std::setw(12) << "applies" << "max residual\n";
    for (const IdentityRowResult& row : report.identities) {
        if (suite != "all" && row.suite != suite) continue;
        os << "  " << std::left << std::setw(24) << row.name << std::setw(12) << row.suite
           << std::setw(20) << row.tier << std::setw(12) << (row.applicable ? "yes" : "no")
           << format_double(row.max_residual) << "\n";
    }
    return os.str();
}

}  // namespace paralab

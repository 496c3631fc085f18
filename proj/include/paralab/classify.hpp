#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "paralab/chart.hpp"
#include "paralab/curvature.hpp"

namespace paralab {

// Three-valued pointwise verdict over a sample set: a property holds when
// its residual stays within tolerance at every point, fails when it exceeds
// the tolerance at every point, and is mixed otherwise.
enum class Status { Holds, Fails, Mixed };

const char* status_name(Status s);

inline constexpr int kPropertyCount = 18;

// Fixed report order of the classified properties.
std::span<const char* const> property_names();
int property_index(std::string_view name);  // -1 when unknown

struct SampleSpec {
    int count = 32;
    std::uint64_t seed = 42;
    double tol = 1e-8;
};

// One row of the identity table: `suite` groups rows for display, `tier`
// names the weakest structure class under which the identity is a theorem.
struct IdentityRowSpec {
    const char* name;
    const char* suite;
    const char* tier;  // "none", "almost_paracontact", "metric",
                       // "levi_civita", "para_sasakian", "constant_curvature"
};

std::span<const IdentityRowSpec> identity_table();

// Everything measured at a single sample point.
struct PointEvaluation {
    std::vector<double> point;
    int nu = 0;  // negative eigenvalue count of g
    std::array<double, kPropertyCount> residuals{};
    std::vector<double> identity_residuals;  // identity_table() order
};

PointEvaluation evaluate_point(const StructuredChart& chart, std::span<const double> point);

// Serial and OpenMP evaluation produce bitwise-identical results; each point
// writes only its own slot and aggregation is order-independent.
std::vector<PointEvaluation> evaluate_points(const StructuredChart& chart,
                                             const std::vector<std::vector<double>>& points,
                                             bool parallel);

// Seeded uniform draws over the domain box; points with a degenerate metric
// are rejected and redrawn.  Throws DegenerateMetricError when fewer than
// `count` valid points are found within 10*count attempts.
std::vector<std::vector<double>> sample_points(const StructuredChart& chart, int count,
                                               std::uint64_t seed);

struct PropertyStatus {
    std::string property;
    Status status = Status::Mixed;
    double max_residual = 0.0;
    int worst_index = 0;
    std::vector<double> worst_point;
    double tol_used = 0.0;
};

struct IdentityRowResult {
    std::string name;
    std::string suite;
    std::string tier;
    bool applicable = true;  // tier prerequisite holds on this sample set
    double max_residual = 0.0;
    int worst_index = 0;
    std::vector<double> worst_point;
};

struct AuditFinding {
    std::string rule;
    std::string detail;
};

struct ClassificationReport {
    std::string chart;
    int dim = 0;
    int epsilon = 1;
    SampleSpec spec;
    std::vector<std::string> coords;
    std::vector<std::array<double, 2>> domain;
    std::vector<std::vector<double>> points;
    std::vector<int> indices;       // nu per point
    std::map<int, int> index_histogram;
    std::vector<PropertyStatus> properties;    // property_names() order
    std::vector<IdentityRowResult> identities; // identity_table() order
    std::vector<AuditFinding> audit;           // violations only
};

ClassificationReport classify_chart(const StructuredChart& chart, const SampleSpec& spec = {},
                                    bool parallel = true);

// Checks the implications and equivalences between structure classes against
// the statuses recorded in the report.  Runs only when
// almost_paracontact_metric holds; returns the list of violations (empty in
// the consistent case).  No inference is drawn in either direction between
// {normal and paracontact} and para_sasakian.
std::vector<AuditFinding> implication_audit(const ClassificationReport& report);

// The identity table alone, for a caller-chosen point set.
std::vector<IdentityRowResult> identity_suite(const StructuredChart& chart,
                                              const std::vector<std::vector<double>>& points,
                                              double tol, bool parallel = true);

}  // namespace paralab

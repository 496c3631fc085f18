#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "paralab/classify.hpp"
#include "paralab/gallery.hpp"
#include "paralab/report_io.hpp"

using namespace paralab;

namespace {

int holds_rank(Status s) {
    switch (s) {
        case Status::Fails: return 0;
        case Status::Mixed: return 1;
        case Status::Holds: return 2;
    }
    return -1;
}

}  // namespace

TEST_CASE("classification is deterministic: two runs give identical bytes") {
    for (const char* name : {"ex5_1_spacelike", "ex2_2_g2", "ex4_1_default"}) {
        const GalleryEntry* e = find_chart(name);
        REQUIRE(e != nullptr);
        CAPTURE(name);
        const std::string a = report_to_json(classify_chart(e->chart));
        const std::string b = report_to_json(classify_chart(e->chart));
        CHECK(a == b);
    }
}

TEST_CASE("serial and parallel evaluation produce bitwise-identical reports") {
    for (const GalleryEntry& entry : gallery()) {
        CAPTURE(entry.chart.name);
        const std::string serial = report_to_json(classify_chart(entry.chart, {}, false));
        const std::string parallel = report_to_json(classify_chart(entry.chart, {}, true));
        CHECK(serial == parallel);
    }
}

TEST_CASE("per-point evaluations match bitwise between serial and parallel paths") {
    const GalleryEntry* e = find_chart("ex4_1_default");
    REQUIRE(e != nullptr);
    const auto pts = sample_points(e->chart, 24, 2026);
    const auto s = evaluate_points(e->chart, pts, false);
    const auto p = evaluate_points(e->chart, pts, true);
    REQUIRE(s.size() == p.size());
    for (size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].nu == p[i].nu);
        for (int r = 0; r < kPropertyCount; ++r)
            CHECK(s[i].residuals[static_cast<size_t>(r)] ==
                  p[i].residuals[static_cast<size_t>(r)]);
        REQUIRE(s[i].identity_residuals.size() == p[i].identity_residuals.size());
        for (size_t r = 0; r < s[i].identity_residuals.size(); ++r)
            CHECK(s[i].identity_residuals[r] == p[i].identity_residuals[r]);
    }
}

TEST_CASE("loosening the tolerance can only move verdicts toward holding") {
    for (const char* name : {"ex2_2_g1", "ex5_1_spacelike", "ex2_3_g2"}) {
        const GalleryEntry* e = find_chart(name);
        REQUIRE(e != nullptr);
        CAPTURE(name);
        SampleSpec tight;
        tight.tol = 1e-10;
        SampleSpec loose;
        loose.tol = 1e-4;
        const auto rt = classify_chart(e->chart, tight);
        const auto rl = classify_chart(e->chart, loose);
        REQUIRE(rt.properties.size() == rl.properties.size());
        for (size_t i = 0; i < rt.properties.size(); ++i) {
            CAPTURE(rt.properties[i].property);
            CHECK(holds_rank(rl.properties[i].status) >= holds_rank(rt.properties[i].status));
        }
    }
}

TEST_CASE("the mixed-signature chart splits its index histogram") {
    const GalleryEntry* e = find_chart("ex2_2_g2");
    REQUIRE(e != nullptr);
    const ClassificationReport rep = classify_chart(e->chart);
    REQUIRE(rep.index_histogram.size() == 2);
    int total = 0;
    for (const auto& [nu, count] : rep.index_histogram) total += count;
    CHECK(total == rep.spec.count);
    // The x-z block has determinant 1 - y^2, so the metric is Riemannian
    // (index 0) where |y| < 1 and Lorentzian (index 1) where |y| > 1.
    CHECK(rep.index_histogram.at(0) == 22);
    CHECK(rep.index_histogram.at(1) == 10);
    for (const auto& [nu, count] : rep.index_histogram) CHECK(count > 0);
}

TEST_CASE("every reference chart passes the implication audit") {
    for (const GalleryEntry& entry : gallery()) {
        CAPTURE(entry.chart.name);
        const ClassificationReport rep = classify_chart(entry.chart);
        CHECK(rep.audit.empty());
    }
}

TEST_CASE("a doctored report trips the implication audit") {
    const GalleryEntry* e = find_chart("hyperbolic_ps");
    REQUIRE(e != nullptr);
    ClassificationReport rep = classify_chart(e->chart);
    REQUIRE(rep.audit.empty());
    const int slot = property_index("s_paracontact");
    REQUIRE(slot >= 0);
    rep.properties[static_cast<size_t>(slot)].status = Status::Fails;
    const auto findings = implication_audit(rep);
    REQUIRE(!findings.empty());
    const auto has_rule = [&](const std::string& rule) {
        return std::any_of(findings.begin(), findings.end(),
                           [&](const AuditFinding& f) { return f.rule == rule; });
    };
    CHECK(has_rule("para_sasakian_implies_s_paracontact"));
    CHECK(has_rule("paracontact_and_closed_implies_s_paracontact"));

    // Breaking one side of a para-Sasakian equivalence is also caught.
    ClassificationReport rep2 = classify_chart(e->chart);
    const int sym = property_index("symmetric");
    REQUIRE(sym >= 0);
    rep2.properties[static_cast<size_t>(sym)].status = Status::Mixed;
    const auto findings2 = implication_audit(rep2);
    const auto has_rule2 = [&](const std::string& rule) {
        return std::any_of(findings2.begin(), findings2.end(),
                           [&](const AuditFinding& f) { return f.rule == rule; });
    };
    CHECK(has_rule2("symmetric_iff_constant_curvature"));
    CHECK(has_rule2("symmetric_iff_semi_symmetric"));
}

TEST_CASE("the audit stays silent when the base axioms do not hold") {
    const GalleryEntry* e = find_chart("hyperbolic_ps");
    REQUIRE(e != nullptr);
    ClassificationReport rep = classify_chart(e->chart);
    const int apm = property_index("almost_paracontact_metric");
    const int spc = property_index("s_paracontact");
    REQUIRE(apm >= 0);
    REQUIRE(spc >= 0);
    rep.properties[static_cast<size_t>(apm)].status = Status::Fails;
    rep.properties[static_cast<size_t>(spc)].status = Status::Fails;
    CHECK(implication_audit(rep).empty());
}

TEST_CASE("conditional identity rows are gated by their structure tier") {
    {
        const GalleryEntry* e = find_chart("ex2_2_g1");  // not para-Sasakian
        REQUIRE(e != nullptr);
        const ClassificationReport rep = classify_chart(e->chart);
        for (const IdentityRowResult& row : rep.identities) {
            CAPTURE(row.name);
            if (row.tier == "para_sasakian" || row.tier == "constant_curvature")
                CHECK(!row.applicable);
            else
                CHECK(row.applicable);
            if (row.applicable) CHECK(row.max_residual < 1e-8);
        }
    }
    {
        const GalleryEntry* e = find_chart("hyperbolic_ps");  // constant curvature -eps
        REQUIRE(e != nullptr);
        const ClassificationReport rep = classify_chart(e->chart);
        for (const IdentityRowResult& row : rep.identities) {
            CAPTURE(row.name);
            CHECK(row.applicable);
            CHECK(row.max_residual < 1e-8);
        }
    }
    {
        const GalleryEntry* e = find_chart("ex5_1_spacelike");  // PS, not constant curvature
        REQUIRE(e != nullptr);
        const ClassificationReport rep = classify_chart(e->chart);
        bool saw_ps_row = false;
        for (const IdentityRowResult& row : rep.identities) {
            CAPTURE(row.name);
            if (row.tier == "constant_curvature") {
                CHECK(!row.applicable);
            } else {
                CHECK(row.applicable);
                CHECK(row.max_residual < 1e-8);
                saw_ps_row = saw_ps_row || row.tier == "para_sasakian";
            }
        }
        CHECK(saw_ps_row);
    }
}

TEST_CASE("identity_suite agrees with the rows embedded in the full report") {
    const GalleryEntry* e = find_chart("ex5_1_timelike");
    REQUIRE(e != nullptr);
    const ClassificationReport rep = classify_chart(e->chart);
    const auto rows = identity_suite(e->chart, rep.points, rep.spec.tol);
    REQUIRE(rows.size() == rep.identities.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].name == rep.identities[i].name);
        CHECK(rows[i].applicable == rep.identities[i].applicable);
        CHECK(rows[i].max_residual == rep.identities[i].max_residual);
    }
}

TEST_CASE("report fields carry the sampling metadata they claim") {
    const GalleryEntry* e = find_chart("ex2_3_g1");
    REQUIRE(e != nullptr);
    SampleSpec spec;
    spec.count = 12;
    spec.seed = 77;
    const ClassificationReport rep = classify_chart(e->chart, spec);
    CHECK(rep.chart == "ex2_3_g1");
    CHECK(rep.dim == 5);
    CHECK(rep.epsilon == -1);
    CHECK(rep.points.size() == 12);
    CHECK(rep.indices.size() == 12);
    CHECK(rep.properties.size() == static_cast<size_t>(kPropertyCount));
    CHECK(rep.identities.size() == identity_table().size());
    for (const auto& p : rep.points) {
        REQUIRE(p.size() == 5);
        for (size_t c = 0; c < 5; ++c) {
            CHECK(p[c] >= rep.domain[c][0]);
            CHECK(p[c] <= rep.domain[c][1]);
        }
    }
    // Same spec, same points: the seed fully determines the sample.
    const ClassificationReport rep2 = classify_chart(e->chart, spec);
    CHECK(rep.points == rep2.points);
}

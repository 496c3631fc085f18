#include <doctest.h>

#include <set>
#include <string>

#include "paralab/classify.hpp"
#include "paralab/gallery.hpp"

using namespace paralab;

TEST_CASE("the reference gallery is populated, named uniquely and documented") {
    const auto& entries = gallery();
    REQUIRE(entries.size() == 12);
    std::set<std::string> names;
    for (const GalleryEntry& e : entries) {
        CAPTURE(e.chart.name);
        CHECK(!e.chart.name.empty());
        CHECK(!e.description.empty());
        CHECK(names.insert(e.chart.name).second);
        CHECK(e.chart.dim >= 2);
        CHECK(e.chart.dim <= 8);
        // Every entry documents a verdict for every classified property.
        REQUIRE(e.expected.size() == static_cast<size_t>(kPropertyCount));
        for (const auto& [prop, status] : e.expected) CHECK(property_index(prop) >= 0);
    }
}

TEST_CASE("find_chart resolves every gallery name and nothing else") {
    for (const GalleryEntry& e : gallery()) {
        const GalleryEntry* found = find_chart(e.chart.name);
        REQUIRE(found != nullptr);
        CHECK(found == &e);
    }
    CHECK(find_chart("no_such_chart") == nullptr);
    CHECK(find_chart("") == nullptr);
    CHECK(find_chart("EX5_1_SPACELIKE") == nullptr);  // lookups are case-sensitive
}

TEST_CASE("classification reproduces the documented verdict of every reference chart") {
    for (const GalleryEntry& entry : gallery()) {
        CAPTURE(entry.chart.name);
        const ClassificationReport rep = classify_chart(entry.chart);
        REQUIRE(rep.properties.size() == static_cast<size_t>(kPropertyCount));
        for (const PropertyStatus& ps : rep.properties) {
            CAPTURE(ps.property);
            const auto it = entry.expected.find(ps.property);
            REQUIRE(it != entry.expected.end());
            CHECK(status_name(ps.status) == std::string(status_name(it->second)));
        }
        CHECK(rep.audit.empty());
    }
}

TEST_CASE("documented verdicts are stable under a different seed and sample size") {
    // The gallery's expected statuses are decisive (Holds or Fails at every
    // point), so they must not depend on which points were drawn.
    SampleSpec spec;
    spec.count = 48;
    spec.seed = 20260814;
    for (const GalleryEntry& entry : gallery()) {
        CAPTURE(entry.chart.name);
        const ClassificationReport rep = classify_chart(entry.chart, spec);
        for (const PropertyStatus& ps : rep.properties) {
            CAPTURE(ps.property);
            const auto it = entry.expected.find(ps.property);
            REQUIRE(it != entry.expected.end());
            CHECK(status_name(ps.status) == std::string(status_name(it->second)));
        }
    }
}

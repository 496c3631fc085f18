#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "paralab/classify.hpp"
#include "paralab/gallery.hpp"
#include "paralab/manifest.hpp"
#include "paralab/report_io.hpp"

using namespace paralab;

namespace {

const char* kWarpedManifest = R"json({
  "version": 1,
  "name": "ex5_1_spacelike",
  "epsilon": 1,
  "coordinates": ["x", "y", "z"],
  "domain": [[-1, 1], [-1, 1], [-1, 1]],
  "metric": [
    ["exp(2*z)", 0, 0],
    [0, "exp(-2*z)", 0],
    [0, 0, 1]
  ],
  "phi": [
    [1, 0, 0],
    [0, -1, 0],
    [0, 0, 0]
  ],
  "xi": [0, 0, 1],
  "eta": [0, 0, 1]
})json";

// Same structure as the ex2_2_g1 gallery chart, written by hand; the lower
// triangle exercises both the mirror rule (null entry) and short rows.
const char* kOpenEtaManifest = R"json({
  "version": 1,
  "name": "ex2_2_g1",
  "epsilon": -1,
  "coordinates": ["x", "y", "z"],
  "metric": [
    ["1 - y*y", 0, "y"],
    [0, 1, 0],
    [null, 0, -1]
  ],
  "phi": [
    [-1, 0, 0],
    [0, -1, 0],
    ["-y", 0, 0]
  ],
  "xi": [0, 0, 1],
  "eta": ["-y", 0, 1]
})json";

std::string message_of(const std::string& text) {
    try {
        (void)load_manifest_text(text);
    } catch (const ManifestError& e) {
        return e.what();
    }
    return "(no error)";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("a hand-written manifest reproduces the warped gallery chart byte for byte") {
    const StructuredChart chart = load_manifest_text(kWarpedManifest);
    CHECK(chart.name == "ex5_1_spacelike");
    CHECK(chart.dim == 3);
    CHECK(chart.epsilon == 1);
    const GalleryEntry* e = find_chart("ex5_1_spacelike");
    REQUIRE(e != nullptr);
    CHECK(report_to_json(classify_chart(chart)) == report_to_json(classify_chart(e->chart)));
}

TEST_CASE("a manifest using the mirror rule reproduces the open-eta gallery chart") {
    const StructuredChart chart = load_manifest_text(kOpenEtaManifest);
    const GalleryEntry* e = find_chart("ex2_2_g1");
    REQUIRE(e != nullptr);
    CHECK(report_to_json(classify_chart(chart)) == report_to_json(classify_chart(e->chart)));
}

TEST_CASE("save -> load -> classify round-trips every gallery chart byte for byte") {
    for (const GalleryEntry& entry : gallery()) {
        CAPTURE(entry.chart.name);
        const std::string text = save_manifest(entry.chart);
        const StructuredChart loaded = load_manifest_text(text);
        CHECK(report_to_json(classify_chart(loaded)) ==
              report_to_json(classify_chart(entry.chart)));
        // Saving the loaded chart must print the identical manifest again.
        CHECK(save_manifest(loaded) == text);
    }
}

TEST_CASE("saved manifests are valid JSON documents with the expected fields") {
    const GalleryEntry* e = find_chart("ex2_3_g1");
    REQUIRE(e != nullptr);
    const std::string text = save_manifest(e->chart);
    CHECK(contains(text, "\"version\": 1"));
    CHECK(contains(text, "\"name\": \"ex2_3_g1\""));
    CHECK(contains(text, "\"epsilon\": -1"));
    CHECK(contains(text, "\"coordinates\""));
    CHECK(contains(text, "\"domain\""));
    CHECK(text.back() == '\n');
}

TEST_CASE("manifest validation errors name the offending field") {
    CHECK(contains(message_of("[1, 2]"), "top-level value must be an object"));
    CHECK(contains(message_of("{ not json"), "manifest: invalid JSON"));

    // Start from the valid document and break one thing at a time.
    const std::string base = kWarpedManifest;
    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string s = base;
        const size_t at = s.find(from);
        REQUIRE(at != std::string::npos);
        s.replace(at, from.size(), to);
        return message_of(s);
    };

    CHECK(contains(mutate("\"version\": 1", "\"verison\": 1"), "unknown field 'verison'"));
    CHECK(contains(mutate("\"version\": 1,", "\"version\": 2,"), "version: expected 1"));
    CHECK(contains(mutate("\"epsilon\": 1", "\"epsilon\": 2"), "epsilon: expected 1 or -1"));
    CHECK(contains(mutate("[\"x\", \"y\", \"z\"]", "[\"x\", \"y\", \"x\"]"),
                   "coordinates[2]: duplicate name 'x'"));
    CHECK(contains(mutate("[\"x\", \"y\", \"z\"]", "[\"x\", \"exp\", \"z\"]"),
                   "coordinates[1]: 'exp' collides with a function name"));
    CHECK(contains(mutate("[\"x\", \"y\", \"z\"]", "[\"x\", \"2y\", \"z\"]"),
                   "coordinates[1]: '2y' is not a valid identifier"));
    CHECK(contains(mutate("[[-1, 1], [-1, 1], [-1, 1]]", "[[-1, 1], [1, -1], [-1, 1]]"),
                   "domain[1]: expected lo < hi"));
    CHECK(contains(mutate("[[-1, 1], [-1, 1], [-1, 1]]", "[[-1, 1], [-1, 1]]"),
                   "domain: expected one [lo, hi] pair per coordinate"));
    CHECK(contains(mutate("\"exp(2*z)\", 0, 0", "\"exp(2*w)\", 0, 0"),
                   "metric[0][0]: unknown identifier 'w'"));
    CHECK(contains(mutate("\"exp(2*z)\", 0, 0", "\"exp(2*z\", 0, 0"),
                   "metric[0][0]: expected ')'"));
    CHECK(contains(mutate("\"exp(2*z)\", 0, 0", "null, 0, 0"), "metric[0][0]: missing entry"));
    CHECK(contains(mutate("\"xi\": [0, 0, 1]", "\"xi\": [0, 1]"),
                   "xi: expected 3 components"));
    CHECK(contains(mutate("\"eta\": [0, 0, 1]", "\"eta\": [0, 0, true]"),
                   "eta[2]: expected an expression string or number, got"));
    CHECK(contains(mutate("\"phi\": [\n    [1, 0, 0],", "\"phi\": [\n    [1, 0],"),
                   "phi[0]: expected 3 entries"));

    // Removing a required field entirely.
    {
        std::string s = base;
        const size_t at = s.find("\"eta\": [0, 0, 1]");
        REQUIRE(at != std::string::npos);
        s.replace(at, std::string("\"eta\": [0, 0, 1]").size(), "\"name\": \"twice\"");
        // Duplicate keys collapse in JSON; eta is now absent.
        CHECK(contains(message_of(s), "eta: missing"));
    }
}

TEST_CASE("mirrored metric entries must agree structurally when both are written") {
    const char* conflicting = R"json({
      "version": 1, "epsilon": 1, "coordinates": ["x", "y"],
      "metric": [[1, "x"], ["2*x", 1]],
      "phi": [[0, 0], [0, 0]],
      "xi": [0, 1], "eta": [0, 1]
    })json";
    const std::string msg = message_of(conflicting);
    CHECK(contains(msg, "metric[1][0]"));
    CHECK(contains(msg, "inconsistent symmetry with metric[0][1]"));

    // The same value written differently but structurally equal is accepted.
    const char* agreeing = R"json({
      "version": 1, "epsilon": 1, "coordinates": ["x", "y"],
      "metric": [[1, "2*x"], ["2*x", 1]],
      "phi": [[0, 0], [0, 0]],
      "xi": [0, 1], "eta": [0, 1]
    })json";
    CHECK_NOTHROW((void)load_manifest_text(agreeing));

    const char* hole = R"json({
      "version": 1, "epsilon": 1, "coordinates": ["x", "y"],
      "metric": [[1], [null, 1]],
      "phi": [[0, 0], [0, 0]],
      "xi": [0, 1], "eta": [0, 1]
    })json";
    CHECK(contains(message_of(hole), "metric[0][1]: missing entry (give it in either triangle)"));
}

TEST_CASE("expression-valued components and file errors behave like field errors") {
    // Function calls and coordinate-dependent entries anywhere in the chart
    // are legal; validation happens structurally, not by evaluation.
    const char* expressive = R"json({
      "version": 1, "epsilon": 1, "coordinates": ["x", "y"],
      "metric": [["2 + x*y", 0], [0, 1]],
      "phi": [[0, 0], [0, 0]],
      "xi": [0, "sqrt(4 + x*x)"], "eta": [0, 1]
    })json";
    CHECK_NOTHROW((void)load_manifest_text(expressive));

    const std::string missing_file_msg = [] {
        try {
            (void)load_manifest("/nonexistent/path/chart.json");
        } catch (const ManifestError& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    }();
    CHECK(contains(missing_file_msg, "cannot read file"));
}

TEST_CASE("manifests load identically from text and from a file on disk") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "paralab_manifest_roundtrip.json";
    {
        std::ofstream out(path);
        REQUIRE(out.good());
        out << kWarpedManifest;
    }
    const StructuredChart from_file = load_manifest(path.string());
    const StructuredChart from_text = load_manifest_text(kWarpedManifest);
    CHECK(report_to_json(classify_chart(from_file)) ==
          report_to_json(classify_chart(from_text)));
    fs::remove(path);
}

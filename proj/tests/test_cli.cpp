#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "paralab/cli.hpp"
#include "paralab/classify.hpp"
#include "paralab/gallery.hpp"
#include "paralab/report_io.hpp"

using namespace paralab;

namespace {

struct CliResult {
    int rc = 0;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliResult r;
    r.rc = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Writes `text` to a unique file under the system temp directory; removes it
// on destruction so test runs stay clean.
struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& stem, const std::string& text) {
        path = std::filesystem::temp_directory_path() / (stem + ".json");
        std::ofstream f(path);
        f << text;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

const char* kWarpedManifest = R"json({
  "version": 1,
  "name": "ex5_1_spacelike",
  "epsilon": 1,
  "coordinates": ["x", "y", "z"],
  "metric": [["exp(2*z)", 0, 0], [0, "exp(-2*z)", 0], [0, 0, 1]],
  "phi": [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
  "xi": [0, 0, 1],
  "eta": [0, 0, 1]
})json";

}  // namespace

TEST_CASE("list prints every gallery chart with a description") {
    const CliResult r = run({"list"});
    CHECK(r.rc == 0);
    CHECK(r.err.empty());
    for (const GalleryEntry& e : gallery()) {
        CAPTURE(e.chart.name);
        CHECK(contains(r.out, e.chart.name));
    }
}

TEST_CASE("validate accepts a good manifest and reports its shape") {
    const TempFile f("paralab_cli_good", kWarpedManifest);
    const CliResult r = run({"validate", f.str()});
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "ok: 'ex5_1_spacelike' is a valid chart manifest (dim 3, epsilon 1)"));
}

TEST_CASE("validate rejects a broken manifest with the field path and exit code 2") {
    std::string bad = kWarpedManifest;
    const size_t at = bad.find("\"version\": 1");
    REQUIRE(at != std::string::npos);
    bad.replace(at, std::string("\"version\": 1").size(), "\"version\": 3");
    const TempFile f("paralab_cli_bad", bad);
    const CliResult r = run({"validate", f.str()});
    CHECK(r.rc == 2);
    CHECK(contains(r.err, "version: expected 1"));
}

TEST_CASE("classify runs on every gallery chart with --assert staying green") {
    for (const GalleryEntry& e : gallery()) {
        CAPTURE(e.chart.name);
        const CliResult r = run({"classify", e.chart.name, "--assert"});
        CHECK(r.rc == 0);
        CHECK(r.err.empty());
        CHECK(contains(r.out, e.chart.name));
        CHECK(contains(r.out, "almost_paracontact_metric"));
    }
}

TEST_CASE("classify --json emits the byte-stable report") {
    const CliResult a = run({"classify", "ex4_1_default", "--json"});
    const CliResult b = run({"classify", "ex4_1_default", "--json"});
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    const GalleryEntry* e = find_chart("ex4_1_default");
    REQUIRE(e != nullptr);
    CHECK(a.out == report_to_json(classify_chart(e->chart)));
}

TEST_CASE("classify accepts sampling options") {
    const CliResult r = run({"classify", "ex2_2_g3", "--points", "8", "--seed", "7"});
    CHECK(r.rc == 0);
    const CliResult bad_points = run({"classify", "ex2_2_g3", "--points", "-4"});
    CHECK(bad_points.rc == 2);
}

TEST_CASE("an impossible tolerance makes --assert fail with exit code 1") {
    // At tol = 1e-18 even exact identities sit above threshold, so statuses
    // that are documented as holding get demoted and the assertion trips.
    const CliResult r = run({"classify", "ex4_1_default", "--assert", "--tol", "1e-18"});
    CHECK(r.rc == 1);
    CHECK(contains(r.err, "assert failed: property"));
}

TEST_CASE("classify from a manifest file matches the gallery chart it mirrors") {
    const TempFile f("paralab_cli_chart", kWarpedManifest);
    const CliResult from_file = run({"classify", f.str(), "--json"});
    const CliResult from_name = run({"classify", "ex5_1_spacelike", "--json"});
    CHECK(from_file.rc == 0);
    CHECK(from_file.out == from_name.out);
}

TEST_CASE("unknown chart references exit with code 2 and a helpful message") {
    const CliResult r = run({"classify", "nope_nothing"});
    CHECK(r.rc == 2);
    CHECK(contains(r.err, "unknown chart 'nope_nothing'"));
    CHECK(contains(r.err, "not a gallery name"));
}

TEST_CASE("identities honors the suite filter and rejects unknown suites") {
    const CliResult all = run({"identities", "hyperbolic_ps"});
    CHECK(all.rc == 0);
    CHECK(contains(all.out, "normality"));
    const CliResult filtered = run({"identities", "hyperbolic_ps", "--suite", "curvature"});
    CHECK(filtered.rc == 0);
    CHECK(!contains(filtered.out, "normality"));
    const CliResult json = run({"identities", "hyperbolic_ps", "--suite", "ricci", "--json"});
    CHECK(json.rc == 0);
    CHECK(json.out.front() == '{');
    const CliResult bad = run({"identities", "hyperbolic_ps", "--suite", "everything"});
    CHECK(bad.rc == 2);
}

TEST_CASE("curvature prints the expected values for the warped chart at the origin") {
    const CliResult r = run({"curvature", "ex5_1_spacelike", "--at", "0,0,0"});
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "Gamma^1_13 = 1"));
    CHECK(contains(r.out, "Gamma^2_23 = -1"));
    CHECK(contains(r.out, "Gamma^3_11 = -1"));
    CHECK(contains(r.out, "Gamma^3_22 = 1"));
    CHECK(contains(r.out, "scalar curvature r = -2"));
    CHECK(contains(r.out, "S(xi,xi) = -2"));
    CHECK(contains(r.out, "K(d1,d2) = 1"));
    CHECK(contains(r.out, "K(d1,d3) = -1"));
    CHECK(contains(r.out, "K(d2,d3) = -1"));
}

TEST_CASE("curvature --json carries the same numbers as the text rendering") {
    const CliResult r = run({"curvature", "ex5_1_timelike", "--at", "0,0,0", "--json"});
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "\"chart\": \"ex5_1_timelike\""));
    CHECK(contains(r.out, "\"scalar\": 2"));
    CHECK(contains(r.out, "\"ricci_xi_xi\": -2"));
    CHECK(contains(r.out, "{\"plane\": [0, 1], \"value\": -1}"));
    const CliResult again = run({"curvature", "ex5_1_timelike", "--at", "0,0,0", "--json"});
    CHECK(r.out == again.out);
}

TEST_CASE("curvature validates the point dimension") {
    const CliResult r = run({"curvature", "ex5_1_spacelike", "--at", "0,0"});
    CHECK(r.rc == 2);
    CHECK(contains(r.err, "--at expects 3"));
    const CliResult missing = run({"curvature", "ex5_1_spacelike"});
    CHECK(missing.rc == 2);
}

TEST_CASE("a degenerate metric point exits with code 3") {
    const char* collapsing = R"json({
      "version": 1, "name": "collapsing", "epsilon": 1, "coordinates": ["x", "y"],
      "metric": [["x*x", 0], [0, 1]],
      "phi": [[0, 0], [0, 0]],
      "xi": [0, 1], "eta": [0, 1]
    })json";
    const TempFile f("paralab_cli_degenerate", collapsing);
    const CliResult r = run({"curvature", f.str(), "--at", "0,0"});
    CHECK(r.rc == 3);
    CHECK(contains(r.err, "error:"));
    // Away from the collapse the same chart works fine.
    const CliResult ok = run({"curvature", f.str(), "--at", "0.5,0"});
    CHECK(ok.rc == 0);
}

TEST_CASE("usage errors and help behave like a conventional tool") {
    CHECK(run({}).rc == 2);
    CHECK(run({"frobnicate"}).rc == 2);
    const CliResult help = run({"--help"});
    CHECK(help.rc == 0);
    CHECK(contains(help.out, "classify"));
    CHECK(contains(help.out, "curvature"));
}

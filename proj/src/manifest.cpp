#include "paralab/manifest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paralab/expr_parse.hpp"
#include "paralab/field.hpp"

namespace paralab {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ManifestError(path + ": " + what);
}

std::string index_path(const std::string& base, size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

std::string index_path(const std::string& base, size_t i, size_t j) {
    return base + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool is_function_name(const std::string& s) {
    for (int f = static_cast<int>(FieldFunc::Exp); f <= static_cast<int>(FieldFunc::Sqrt); ++f) {
        if (s == field_func_name(static_cast<FieldFunc>(f))) return true;
    }
    return false;
}

// One manifest entry: an expression string or a bare number.
ScalarField entry_field(const json& v, std::span<const std::string> coords,
                        const std::string& path) {
    if (v.is_number()) return ScalarField(raw_constant(v.get<double>()));
    if (v.is_string()) {
        try {
            return parse_expression(v.get<std::string>(), coords);
        } catch (const ParseError& e) {
            fail(path, e.what());
        }
    }
    fail(path, std::string("expected an expression string or number, got ") + v.type_name());
}

StructuredChart chart_from_doc(const json& doc) {
    if (!doc.is_object()) throw ManifestError("manifest: top-level value must be an object");

    static const std::array<std::string, 9> known = {
        "version", "name", "epsilon", "coordinates", "domain", "metric", "phi", "xi", "eta"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw ManifestError("manifest: unknown field '" + it.key() + "'");
        }
    }
    auto require = [&doc](const char* key) -> const json& {
        auto it = doc.find(key);
        if (it == doc.end()) fail(key, "missing");
        return *it;
    };

    const json& ver = require("version");
    if (!ver.is_number_integer() || ver.get<long long>() != 1) fail("version", "expected 1");

    std::string name = "chart";
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>().empty()) {
            fail("name", "expected a nonempty string");
        }
        name = it->get<std::string>();
    }

    const json& ej = require("epsilon");
    if (!ej.is_number() || std::abs(ej.get<double>()) != 1.0) fail("epsilon", "expected 1 or -1");
    const int epsilon = ej.get<double>() > 0 ? 1 : -1;

    const json& cj = require("coordinates");
    if (!cj.is_array() || cj.empty() || cj.size() > 8) {
        fail("coordinates", "expected an array of 1..8 names");
    }
    std::vector<std::string> coords;
    for (size_t i = 0; i < cj.size(); ++i) {
        const std::string path = index_path("coordinates", i);
        if (!cj[i].is_string()) fail(path, "expected an identifier string");
        const std::string nm = cj[i].get<std::string>();
        if (!is_identifier(nm)) fail(path, "'" + nm + "' is not a valid identifier");
        if (is_function_name(nm)) fail(path, "'" + nm + "' collides with a function name");
        if (std::find(coords.begin(), coords.end(), nm) != coords.end()) {
            fail(path, "duplicate name '" + nm + "'");
        }
        coords.push_back(nm);
    }
    const size_t n = coords.size();

    std::vector<std::array<double, 2>> domain(n, {-1.0, 1.0});
    if (auto it = doc.find("domain"); it != doc.end()) {
        if (!it->is_array() || it->size() != n) {
            fail("domain", "expected one [lo, hi] pair per coordinate");
        }
        for (size_t i = 0; i < n; ++i) {
            const std::string path = index_path("domain", i);
            const json& p = (*it)[i];
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                fail(path, "expected [lo, hi] with two numbers");
            }
            const double lo = p[0].get<double>();
            const double hi = p[1].get<double>();
            if (!(lo < hi)) fail(path, "expected lo < hi");
            domain[i] = {lo, hi};
        }
    }

    // Metric: either triangle may be left null/absent; mirrored entries that
    // are both written must agree as expression trees.
    const json& mj = require("metric");
    if (!mj.is_array() || mj.size() != n) {
        fail("metric", "expected " + std::to_string(n) + " rows");
    }
    std::vector<ScalarField> metric(n * n);
    std::vector<char> given(n * n, 0);
    for (size_t i = 0; i < n; ++i) {
        const json& row = mj[i];
        if (!row.is_array() || row.size() > n) {
            fail(index_path("metric", i),
                 "expected a row of at most " + std::to_string(n) + " entries");
        }
        for (size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_null()) continue;
            metric[i * n + j] = entry_field(row[j], coords, index_path("metric", i, j));
            given[i * n + j] = 1;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (!given[i * n + i]) fail(index_path("metric", i, i), "missing entry");
        for (size_t j = i + 1; j < n; ++j) {
            const bool up = given[i * n + j] != 0;
            const bool low = given[j * n + i] != 0;
            if (up && low) {
                if (!metric[i * n + j].same_structure(metric[j * n + i])) {
                    fail(index_path("metric", j, i),
                         "inconsistent symmetry with " + index_path("metric", i, j));
                }
                metric[j * n + i] = metric[i * n + j];  // share one node
            } else if (up) {
                metric[j * n + i] = metric[i * n + j];
            } else if (low) {
                metric[i * n + j] = metric[j * n + i];
            } else {
                fail(index_path("metric", i, j), "missing entry (give it in either triangle)");
            }
        }
    }

    const json& pj = require("phi");
    if (!pj.is_array() || pj.size() != n) {
        fail("phi", "expected " + std::to_string(n) + " rows");
    }
    std::vector<ScalarField> phi(n * n);
    for (size_t i = 0; i < n; ++i) {
        const json& row = pj[i];
        if (!row.is_array() || row.size() != n) {
            fail(index_path("phi", i), "expected " + std::to_string(n) + " entries");
        }
        for (size_t j = 0; j < n; ++j) {
            phi[i * n + j] = entry_field(row[j], coords, index_path("phi", i, j));
        }
    }

    auto component_array = [&](const char* key) {
        const json& a = require(key);
        if (!a.is_array() || a.size() != n) {
            fail(key, "expected " + std::to_string(n) + " components");
        }
        std::vector<ScalarField> out(n);
        for (size_t i = 0; i < n; ++i) {
            out[i] = entry_field(a[i], coords, index_path(key, i));
        }
        return out;
    };
    std::vector<ScalarField> xi = component_array("xi");
    std::vector<ScalarField> eta = component_array("eta");

    try {
        return make_chart(std::move(name), static_cast<int>(n), epsilon, std::move(coords),
                          std::move(domain), std::move(metric), std::move(phi), std::move(xi),
                          std::move(eta));
    } catch (const std::invalid_argument& e) {
        throw ManifestError(std::string("manifest: ") + e.what());
    }
}

}  // namespace

StructuredChart load_manifest_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ManifestError(std::string("manifest: invalid JSON: ") + e.what());
    }
    return chart_from_doc(doc);
}

StructuredChart load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ManifestError("manifest: cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_manifest_text(buf.str());
}

std::string save_manifest(const StructuredChart& chart) {
    const size_t n = static_cast<size_t>(chart.dim);
    ordered_json doc;
    doc["version"] = 1;
    doc["name"] = chart.name;
    doc["epsilon"] = chart.epsilon;
    doc["coordinates"] = chart.coords;
    ordered_json dom = ordered_json::array();
    for (const auto& box : chart.domain) dom.push_back({box[0], box[1]});
    doc["domain"] = dom;
    auto matrix = [&](const std::vector<ScalarField>& m) {
        ordered_json rows = ordered_json::array();
        for (size_t i = 0; i < n; ++i) {
            ordered_json row = ordered_json::array();
            for (size_t j = 0; j < n; ++j) row.push_back(m[i * n + j].to_string(chart.coords));
            rows.push_back(row);
        }
        return rows;
    };
    auto column = [&](const std::vector<ScalarField>& v) {
        ordered_json out = ordered_json::array();
        for (size_t i = 0; i < n; ++i) out.push_back(v[i].to_string(chart.coords));
        return out;
    };
    doc["metric"] = matrix(chart.metric);
    doc["phi"] = matrix(chart.phi);
    doc["xi"] = column(chart.xi);
    doc["eta"] = column(chart.eta);
    return doc.dump(2) + "\n";
}

}  // namespace paralab

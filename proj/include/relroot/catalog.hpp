#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "relroot/dynkin.hpp"
#include "relroot/rational.hpp"
#include "relroot/root_system.hpp"
#include "relroot/subsystem.hpp"

namespace relroot {

/// One group of the catalog: the combinatorial data the decay pipeline
/// consumes. Rationals are exact; levi_factor_bound uses the +infinity
/// sentinel (absent value) for groups where only property (T) is known.
struct GroupCatalogEntry {
    std::string name;
    std::vector<std::vector<Int>> cartan;
    int short_multiplicity = 1;
    std::vector<Weight> min_rep_exponents;  // may be empty; pipeline requires it
    std::vector<Root> h1_generators;
    std::vector<int> h2_generators;  // 1-based simple-root indices
    Rat h1_threshold{2};
    std::optional<Rat> levi_factor_bound;           // nullopt = +infinity
    int phi_short_multiplicity = 1;                 // echoed r of the Phi formula
    std::vector<std::vector<int>> candidate_words;  // empty = search the full Weyl group

    friend bool operator==(const GroupCatalogEntry&, const GroupCatalogEntry&) = default;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                           const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error("catalog: missing field '" + key + "' in " + where);
    return *it;
}

inline Rat rational_field(const nlohmann::json& j, const std::string& where) {
    if (!j.is_string())
        throw std::runtime_error("catalog: " + where + " must be a rational encoded as a "
                                 "\"num/den\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("catalog: " + where + ": " + e.what());
    }
}

inline GroupCatalogEntry parse_entry(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw std::runtime_error("catalog: " + where + " is not an object");
    GroupCatalogEntry e;
    e.name = require_field(j, "name", where).get<std::string>();
    const std::string ctx = "entry '" + e.name + "'";

    for (const auto& row : require_field(j, "cartan", ctx))
        e.cartan.push_back(row.get<std::vector<Int>>());
    e.short_multiplicity = require_field(j, "short_multiplicity", ctx).get<int>();

    if (auto it = j.find("min_rep_exponents"); it != j.end()) {
        for (const auto& vec : *it) {
            std::vector<Rat> coeffs;
            for (const auto& v : vec)
                coeffs.push_back(rational_field(v, ctx + " min_rep_exponents"));
            e.min_rep_exponents.emplace_back(std::move(coeffs));
        }
    }
    for (const auto& vec : require_field(j, "h1_generators", ctx))
        e.h1_generators.emplace_back(vec.get<std::vector<Int>>());
    e.h2_generators = require_field(j, "h2_generators", ctx).get<std::vector<int>>();
    e.h1_threshold = rational_field(require_field(j, "h1_threshold", ctx), ctx + " h1_threshold");

    const auto& levi = require_field(j, "levi_factor_bound", ctx);
    if (!(levi.is_string() && levi.get<std::string>() == "inf"))
        e.levi_factor_bound = rational_field(levi, ctx + " levi_factor_bound");

    const auto& phi = require_field(j, "phi_formula_params", ctx);
    e.phi_short_multiplicity =
        require_field(phi, "short_multiplicity", ctx + " phi_formula_params").get<int>();

    if (auto it = j.find("candidate_words"); it != j.end())
        for (const auto& w : *it) e.candidate_words.push_back(w.get<std::vector<int>>());
    return e;
}

inline std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace detail

/// Builds the root system an entry describes: short roots carry the
/// entry's short root-space dimension.
inline RootSystemSpec entry_root_system(const GroupCatalogEntry& e) {
    return with_short_root_multiplicity(e.cartan, e.short_multiplicity);
}

/// Checks every entry invariant, throwing std::runtime_error naming the
/// entry and the failed invariant. For entries of type F4 the labeling is
/// pinned by the highest-root display (2,3,4,2); exponent data is only
/// meaningful in that labeling.
inline void validate_entry(const GroupCatalogEntry& e) {
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("catalog entry '" + e.name + "': " + what);
    };
    if (e.name.empty()) fail("empty name");
    if (e.short_multiplicity < 1) fail("short_multiplicity must be positive");
    if (e.phi_short_multiplicity != e.short_multiplicity)
        fail("phi_formula_params.short_multiplicity must echo short_multiplicity");
    if (e.h1_threshold <= Rat(0)) fail("h1_threshold must be positive");
    if (e.levi_factor_bound && *e.levi_factor_bound <= Rat(0))
        fail("levi_factor_bound must be positive or \"inf\"");

    RootSystemSpec spec;
    try {
        spec = entry_root_system(e);
    } catch (const std::exception& ex) {
        fail(std::string("invalid Cartan matrix: ") + ex.what());
    }
    if (!spec.is_irreducible()) fail("Cartan matrix is reducible");

    Subsystem all;
    all.positive_part = spec.positive_roots();
    auto components = classify(spec, all);
    if (components.size() == 1 && components[0].type == DynkinType{'F', 4}) {
        Root beta = highest_root(spec);
        if (beta.coeffs != std::vector<Int>{2, 3, 4, 2})
            fail("F4 labeling must satisfy beta = (2,3,4,2); got " + to_string(beta));
    }

    for (const Weight& w : e.min_rep_exponents)
        if (w.rank() != spec.rank()) fail("min_rep_exponents entry of wrong rank");
    for (const Root& r : e.h1_generators) {
        if (r.rank() != spec.rank()) fail("h1_generators entry of wrong rank");
        if (!spec.is_root(r)) fail("h1 generator " + to_string(r) + " is not a root");
    }
    if (e.h1_generators.empty()) fail("h1_generators must be nonempty");
    std::vector<bool> seen(spec.rank(), false);
    for (int i : e.h2_generators) {
        if (i < 1 || static_cast<std::size_t>(i) > spec.rank())
            fail("h2 generator index " + std::to_string(i) + " out of range");
        if (seen[static_cast<std::size_t>(i) - 1])
            fail("h2 generator index " + std::to_string(i) + " repeated");
        seen[static_cast<std::size_t>(i) - 1] = true;
    }
    for (const auto& word : e.candidate_words)
        for (int i : word)
            if (i < 1 || static_cast<std::size_t>(i) > spec.rank())
                fail("candidate word index " + std::to_string(i) + " out of range");
}

/// Parses a catalog document. `source` names the input in error messages.
inline std::vector<GroupCatalogEntry> parse_catalog(const std::string& text,
                                                    const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("catalog: " + source + " line " +
                                 std::to_string(detail::line_of_offset(text, e.byte)) + ": " +
                                 e.what());
    }
    if (!doc.is_object() || !doc.contains("version") || !doc.contains("groups"))
        throw std::runtime_error("catalog: " + source +
                                 ": document must be an object with 'version' and 'groups'");
    if (doc["version"].get<int>() != 1)
        throw std::runtime_error("catalog: " + source + ": unsupported version");

    std::vector<GroupCatalogEntry> entries;
    std::size_t idx = 0;
    for (const auto& g : doc["groups"]) {
        ++idx;
        GroupCatalogEntry e;
        try {
            e = detail::parse_entry(g, "groups[" + std::to_string(idx - 1) + "]");
        } catch (const nlohmann::json::exception& ex) {
            throw std::runtime_error("catalog: " + source + " groups[" + std::to_string(idx - 1) +
                                     "]: " + ex.what());
        }
        validate_entry(e);
        for (const auto& prev : entries)
            if (prev.name == e.name)
                throw std::runtime_error("catalog: " + source + ": duplicate entry name '" +
                                         e.name + "'");
        entries.push_back(std::move(e));
    }
    return entries;
}

inline std::vector<GroupCatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path);
}

/// The catalog compiled into the binary: the two relative-F4 groups with
/// short root spaces of dimension 2 and 4. Exponents of the minimal
/// representations, restriction thresholds and the conjugating words are
/// catalog data.
inline const char* builtin_catalog_text() {
    return R"json({
  "version": 1,
  "groups": [
    {
      "name": "2E6_2",
      "cartan": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
      "short_multiplicity": 2,
      "min_rep_exponents": [
        ["-8", "-15", "-22", "-12"],
        ["-8", "-15", "-22", "-12"],
        ["-7", "-15", "-22", "-12"]
      ],
      "h1_generators": [[2, 3, 4, 2]],
      "h2_generators": [2, 3, 4],
      "h1_threshold": "2",
      "levi_factor_bound": "inf",
      "phi_formula_params": {"short_multiplicity": 2},
      "candidate_words": [[4, 2, 3, 2, 1]]
    },
    {
      "name": "E7_9",
      "cartan": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
      "short_multiplicity": 4,
      "min_rep_exponents": [
        ["-13", "-24", "-36", "-20"],
        ["-11", "-24", "-36", "-20"]
      ],
      "h1_generators": [[2, 3, 4, 2]],
      "h2_generators": [2, 3, 4],
      "h1_threshold": "2",
      "levi_factor_bound": "18",
      "phi_formula_params": {"short_multiplicity": 4},
      "candidate_words": [[4, 1, 2, 3, 2, 1]]
    }
  ]
})json";
}

inline std::vector<GroupCatalogEntry> builtin_catalog() {
    return parse_catalog(builtin_catalog_text(), "builtin catalog");
}

inline const GroupCatalogEntry& find_entry(const std::vector<GroupCatalogEntry>& entries,
                                           const std::string& name) {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::domain_error("unknown group '" + name + "' (catalog has " +
                            std::to_string(entries.size()) + " entries)");
}

}  // namespace relroot

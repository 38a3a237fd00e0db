#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relroot/catalog.hpp"
#include "relroot/decay.hpp"
#include "relroot/parabolic.hpp"
#include "relroot/rational.hpp"
#include "relroot/root_system.hpp"
#include "relroot/subsystem.hpp"
#include "relroot/weyl.hpp"

namespace relroot {

/// Everything the sharp-decay computation produces for one group, plus
/// provenance: which catalog fields and which Weyl word produced each
/// number. Serializes losslessly; rationals stay exact.
struct DecayReport {
    std::string group;
    int short_multiplicity = 1;
    Weight delta_g;
    DecayThreshold q_h2;
    DecayThreshold threshold_h2;
    DecayThreshold p_nonminimal;
    std::vector<int> nonminimal_witness_word;
    DecayThreshold p_min_sharp;
    DecayThreshold p_of_g;  // sharp flag set only when achieved by the minimal representation
    std::optional<Int> isolation_k;
    std::map<std::string, std::string> provenance;

    friend bool operator==(const DecayReport&, const DecayReport&) = default;
};

/// The two standard embedded subgroups of an entry with their restriction
/// thresholds: H1 from the catalog, H2 through the oscillator bound and
/// the tensor-product rule.
struct RestrictionData {
    Subsystem h1;
    Subsystem h2;
    DecayThreshold q_h2;
    DecayThreshold threshold_h2;
    std::vector<SubgroupBound> bounds;  // H1 then H2, with least admissible k
};

inline RestrictionData restriction_data(const RootSystemSpec& spec,
                                        const GroupCatalogEntry& entry) {
    RestrictionData data;
    data.h1 = make_subsystem(spec, entry.h1_generators, "H1");
    data.h2 = subsystem_from_simple_indices(spec, entry.h2_generators, "H2");

    // The oscillator bound lives on the torus of H2, where the center
    // character is trivial: eliminate the unique simple coordinate outside
    // H2 through |e^beta| = 1.
    Root beta = highest_root(spec);
    std::vector<bool> in_h2(spec.rank(), false);
    for (int i : entry.h2_generators) in_h2[static_cast<std::size_t>(i) - 1] = true;
    int eliminate = 0;
    std::size_t outside = 0;
    for (std::size_t i = 0; i < spec.rank(); ++i)
        if (!in_h2[i]) {
            ++outside;
            eliminate = static_cast<int>(i + 1);
        }
    if (outside != 1)
        throw std::domain_error("entry '" + entry.name +
                                "' is incomplete: h2_generators must omit exactly one simple "
                                "root");

    Weight delta_h2 = subsystem_delta(spec, data.h2);
    Weight restricted = restrict_weight(delta_h2, beta, eliminate);
    data.q_h2 = oscillator_sharp_q(oscillator_bound(entry.phi_short_multiplicity), restricted);

    DecayThreshold levi =
        entry.levi_factor_bound
            ? DecayThreshold::finite(*entry.levi_factor_bound, false, "levi_factor_bound")
            : DecayThreshold::infinite("levi_factor_bound (property T sentinel)");
    data.threshold_h2 = holder_combine(levi, data.q_h2);

    data.bounds.push_back(make_subgroup_bound(
        data.h1, DecayThreshold::finite(entry.h1_threshold, false, "h1_threshold")));
    data.bounds.push_back(make_subgroup_bound(data.h2, data.threshold_h2));
    return data;
}

/// The Weyl elements the non-minimal search runs over: the entry's
/// candidate words when given, otherwise the full Weyl group.
inline std::vector<WeylElement> search_set(const RootSystemSpec& spec,
                                           const GroupCatalogEntry& entry) {
    if (entry.candidate_words.empty()) return enumerate_weyl(spec);
    std::vector<WeylElement> set;
    set.reserve(entry.candidate_words.size());
    for (const auto& word : entry.candidate_words) set.push_back(weyl_from_word(spec, word));
    return set;
}

namespace detail {

inline void check_unitary_range(const DecayThreshold& t, const std::string& what,
                                const std::string& group) {
    if (t.is_finite() && *t.value < Rat(2))
        throw std::domain_error("pipeline: " + what + " of '" + group + "' came out " +
                                to_string(t) + " < 2, which no unitary representation on a "
                                "noncompact group attains; catalog data is inconsistent");
}

}  // namespace detail

/// Runs the whole sharp-decay computation for one catalog entry.
inline DecayReport pipeline(const GroupCatalogEntry& entry) {
    if (entry.min_rep_exponents.empty())
        throw std::domain_error("entry '" + entry.name +
                                "' is incomplete: min_rep_exponents is empty");

    RootSystemSpec spec = entry_root_system(entry);
    DecayReport report;
    report.group = entry.name;
    report.short_multiplicity = entry.short_multiplicity;

    std::vector<Root> all = spec.positive_roots();
    report.delta_g = modular_weight(spec, all);
    report.provenance["delta_g"] =
        "multiplicity-weighted sum of the " + std::to_string(all.size()) +
        " positive roots; short multiplicity " + std::to_string(entry.short_multiplicity);

    RestrictionData data = restriction_data(spec, entry);
    report.q_h2 = data.q_h2;
    report.provenance["q_h2"] = "oscillator bound at r=" +
                                std::to_string(entry.phi_short_multiplicity) +
                                " against delta_H2 restricted by |e^beta| = 1";
    report.threshold_h2 = data.threshold_h2;
    report.provenance["threshold_h2"] =
        "1/r = 1/p + 1/q with p = levi_factor_bound = " +
        (entry.levi_factor_bound ? to_string(*entry.levi_factor_bound) : std::string("inf")) +
        " and q = q_h2";

    std::vector<WeylElement> candidates = search_set(spec, entry);
    WeylSearchResult search = weyl_search(spec, report.delta_g, data.bounds, candidates);
    report.p_nonminimal = search.best;
    report.nonminimal_witness_word = search.witness.word;
    report.provenance["p_nonminimal"] =
        "least combined half-density bound over " +
        (entry.candidate_words.empty()
             ? std::to_string(candidates.size()) + " Weyl elements"
             : std::to_string(candidates.size()) + " candidate word(s)") +
        "; witness " + to_string(search.witness);

    std::vector<Exponent> exponents;
    for (const Weight& w : entry.min_rep_exponents) exponents.push_back({w});
    report.p_min_sharp = sharp_p_from_exponents(report.delta_g, exponents);
    report.provenance["p_min_sharp"] =
        "boundedness of the " + std::to_string(exponents.size()) +
        " minimal-representation exponents against delta_G^(1/2 - 1/p)";

    bool sharp = !threshold_less(report.p_min_sharp, report.p_nonminimal);
    DecayThreshold p_of_g =
        threshold_less(report.p_min_sharp, report.p_nonminimal) ? report.p_nonminimal
                                                                : report.p_min_sharp;
    report.p_of_g = DecayThreshold{p_of_g.value, sharp, "max(p_min_sharp, p_nonminimal)"};
    report.provenance["p_of_g"] =
        sharp ? "max(p_min_sharp, p_nonminimal), attained by the minimal representation"
              : "upper bound max(p_min_sharp, p_nonminimal); sharpness not certified";

    report.isolation_k = isolation_check(report.p_nonminimal, report.p_min_sharp);
    report.provenance["isolation"] =
        report.isolation_k
            ? "least k with p_nonminimal <= 2k < p_min_sharp: k = " +
                  std::to_string(*report.isolation_k)
            : "no integer k with p_nonminimal <= 2k < p_min_sharp";

    detail::check_unitary_range(report.q_h2, "q_h2", entry.name);
    detail::check_unitary_range(report.threshold_h2, "threshold_h2", entry.name);
    detail::check_unitary_range(report.p_nonminimal, "p_nonminimal", entry.name);
    detail::check_unitary_range(report.p_min_sharp, "p_min_sharp", entry.name);
    detail::check_unitary_range(report.p_of_g, "p_of_g", entry.name);
    return report;
}

// --- lossless JSON form -----------------------------------------------

inline nlohmann::json weight_to_json(const Weight& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Rat& c : w.coeffs) arr.push_back(to_string(c));
    return arr;
}

inline Weight weight_from_json(const nlohmann::json& j) {
    std::vector<Rat> coeffs;
    for (const auto& v : j) coeffs.push_back(parse_rational(v.get<std::string>()));
    return Weight(std::move(coeffs));
}

inline nlohmann::json threshold_to_json(const DecayThreshold& t) {
    return {{"value", t.is_finite() ? to_string(*t.value) : "inf"},
            {"sharp", t.sharp},
            {"evidence", t.evidence}};
}

inline DecayThreshold threshold_from_json(const nlohmann::json& j) {
    DecayThreshold t;
    std::string v = j.at("value").get<std::string>();
    if (v != "inf") t.value = parse_rational(v);
    t.sharp = j.at("sharp").get<bool>();
    t.evidence = j.at("evidence").get<std::string>();
    return t;
}

inline nlohmann::json report_to_json(const DecayReport& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["group"] = r.group;
    j["short_multiplicity"] = r.short_multiplicity;
    j["delta_g"] = weight_to_json(r.delta_g);
    j["q_h2"] = threshold_to_json(r.q_h2);
    j["threshold_h2"] = threshold_to_json(r.threshold_h2);
    j["p_nonminimal"] = threshold_to_json(r.p_nonminimal);
    j["nonminimal_witness_word"] = r.nonminimal_witness_word;
    j["p_min_sharp"] = threshold_to_json(r.p_min_sharp);
    j["p_of_g"] = threshold_to_json(r.p_of_g);
    if (r.isolation_k) j["isolation_k"] = *r.isolation_k;
    else j["isolation_k"] = nullptr;
    j["provenance"] = r.provenance;
    return j;
}

inline DecayReport report_from_json(const nlohmann::json& j) {
    DecayReport r;
    r.group = j.at("group").get<std::string>();
    r.short_multiplicity = j.at("short_multiplicity").get<int>();
    r.delta_g = weight_from_json(j.at("delta_g"));
    r.q_h2 = threshold_from_json(j.at("q_h2"));
    r.threshold_h2 = threshold_from_json(j.at("threshold_h2"));
    r.p_nonminimal = threshold_from_json(j.at("p_nonminimal"));
    r.nonminimal_witness_word = j.at("nonminimal_witness_word").get<std::vector<int>>();
    r.p_min_sharp = threshold_from_json(j.at("p_min_sharp"));
    r.p_of_g = threshold_from_json(j.at("p_of_g"));
    if (!j.at("isolation_k").is_null()) r.isolation_k = j.at("isolation_k").get<Int>();
    r.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
    return r;
}

/// Canonical bytes of a report: keys sorted, two-space indent, trailing
/// newline. Identical inputs produce identical bytes.
inline std::string render_report_json(const DecayReport& r) {
    return report_to_json(r).dump(2) + "\n";
}

}  // namespace relroot

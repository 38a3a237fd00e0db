#pragma once

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relroot/catalog.hpp"
#include "relroot/decay.hpp"
#include "relroot/dynkin.hpp"
#include "relroot/parabolic.hpp"
#include "relroot/pipeline.hpp"
#include "relroot/root_system.hpp"
#include "relroot/subsystem.hpp"
#include "relroot/weyl.hpp"

namespace relroot {
namespace cli {

namespace detail {

inline nlohmann::json root_to_json(const Root& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (Int c : r.coeffs) arr.push_back(c);
    return arr;
}

inline void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

inline void table_row(std::ostream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(22) << key << value << "\n";
}

inline std::string word_text(const std::vector<int>& word) {
    if (word.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) s += (i ? " s" : "s") + std::to_string(word[i]);
    return s;
}

inline std::string threshold_line(const DecayThreshold& t) {
    std::string s = to_string(t);
    if (t.sharp) s += "  [sharp]";
    return s;
}

struct Context {
    std::vector<GroupCatalogEntry> entries;
    std::string format;  // "table" or "json"
};

inline const GroupCatalogEntry& entry_for(const Context& ctx, const std::string& group) {
    return find_entry(ctx.entries, group);
}

inline int cmd_roots(const Context& ctx, const std::string& group, std::ostream& out) {
    const GroupCatalogEntry& entry = entry_for(ctx, group);
    RootSystemSpec spec = entry_root_system(entry);
    if (ctx.format == "json") {
        nlohmann::json j;
        j["group"] = entry.name;
        j["rank"] = spec.rank();
        j["count"] = spec.positive_roots().size();
        nlohmann::json list = nlohmann::json::array();
        for (const Root& r : spec.positive_roots())
            list.push_back({{"coeffs", root_to_json(r)},
                            {"height", r.height()},
                            {"length_sq", to_string(spec.length_sq(r))},
                            {"multiplicity", spec.multiplicity(r)}});
        j["positive_roots"] = list;
        emit(out, j);
        return 0;
    }
    out << "positive roots of " << entry.name << " (" << spec.positive_roots().size() << ")\n";
    out << std::left << std::setw(16) << "root" << std::setw(8) << "height" << std::setw(10)
        << "length^2" << "mult\n";
    for (const Root& r : spec.positive_roots())
        out << std::left << std::setw(16) << to_string(r) << std::setw(8) << r.height()
            << std::setw(10) << to_string(spec.length_sq(r)) << spec.multiplicity(r) << "\n";
    return 0;
}

inline int cmd_tower(const Context& ctx, const std::string& group, std::ostream& out) {
    const GroupCatalogEntry& entry = entry_for(ctx, group);
    RootSystemSpec spec = entry_root_system(entry);
    std::vector<TowerLevel> levels = heisenberg_tower(spec);
    std::vector<Root> all;
    for (const TowerLevel& l : levels)
        all.insert(all.end(), l.radical_roots.begin(), l.radical_roots.end());
    ParabolicShape shape = radical_to_parabolic(spec, all);

    if (ctx.format == "json") {
        nlohmann::json j;
        j["group"] = entry.name;
        nlohmann::json ls = nlohmann::json::array();
        for (const TowerLevel& l : levels)
            ls.push_back({{"index", l.level_index},
                          {"center", root_to_json(l.center_root)},
                          {"size", l.radical_roots.size()},
                          {"is_abelian", l.is_abelian}});
        j["levels"] = ls;
        j["parabolic"] = {{"levi_simple_indices", shape.levi_simple_indices},
                          {"radical_size", shape.radical_roots.size()}};
        emit(out, j);
        return 0;
    }
    out << "Heisenberg tower of " << entry.name << "\n";
    out << std::left << std::setw(8) << "level" << std::setw(16) << "center" << std::setw(8)
        << "size" << "abelian\n";
    for (const TowerLevel& l : levels)
        out << std::left << std::setw(8) << l.level_index << std::setw(16)
            << to_string(l.center_root) << std::setw(8) << l.radical_roots.size()
            << (l.is_abelian ? "yes" : "no") << "\n";
    std::string levi = "{";
    for (std::size_t i = 0; i < shape.levi_simple_indices.size(); ++i)
        levi += (i ? "," : "") + std::to_string(shape.levi_simple_indices[i]);
    levi += "}";
    out << "union: parabolic radical of " << shape.radical_roots.size()
        << " roots, Levi simple set " << levi << "\n";
    return 0;
}

inline int cmd_delta(const Context& ctx, const std::string& group, const std::string& which,
                     const std::vector<int>& word, std::ostream& out) {
    const GroupCatalogEntry& entry = entry_for(ctx, group);
    RootSystemSpec spec = entry_root_system(entry);
    RestrictionData data = restriction_data(spec, entry);
    WeylElement w = word.empty() ? weyl_identity(spec) : weyl_from_word(spec, word);

    Subsystem h1 = conjugate_subsystem(spec, data.h1, w);
    Subsystem h2 = conjugate_subsystem(spec, data.h2, w);
    Weight delta_g = modular_weight(spec, spec.positive_roots());
    Weight d1 = subsystem_delta(spec, h1);
    Weight d2 = subsystem_delta(spec, h2);
    Weight combined = d1 * Rat(1, 2 * data.bounds[0].k) + d2 * Rat(1, 2 * data.bounds[1].k);

    if (ctx.format == "json") {
        nlohmann::json j;
        j["group"] = entry.name;
        j["word"] = word;
        if (which == "all" || which == "h1")
            j["h1"] = {{"positive_size", h1.positive_part.size()},
                       {"delta", weight_to_json(d1)},
                       {"k", data.bounds[0].k}};
        if (which == "all" || which == "h2")
            j["h2"] = {{"positive_size", h2.positive_part.size()},
                       {"delta", weight_to_json(d2)},
                       {"k", data.bounds[1].k}};
        if (which == "all") {
            j["delta_g"] = weight_to_json(delta_g);
            j["combined_half_density"] = weight_to_json(combined);
        }
        emit(out, j);
        return 0;
    }
    table_row(out, "group", entry.name);
    table_row(out, "word", word_text(word));
    if (which == "all") table_row(out, "log delta_G", to_string(delta_g));
    if (which == "all" || which == "h1")
        table_row(out, "log delta_H1^w", to_string(d1) + "   (k=" +
                                             std::to_string(data.bounds[0].k) + ")");
    if (which == "all" || which == "h2")
        table_row(out, "log delta_H2^w", to_string(d2) + "   (k=" +
                                             std::to_string(data.bounds[1].k) + ")");
    if (which == "all") table_row(out, "combined 1/2k sum", to_string(combined));
    return 0;
}

inline int cmd_sharp_p(const Context& ctx, const std::string& group, std::ostream& out) {
    const GroupCatalogEntry& entry = entry_for(ctx, group);
    if (entry.min_rep_exponents.empty())
        throw std::domain_error("entry '" + entry.name +
                                "' is incomplete: min_rep_exponents is empty");
    RootSystemSpec spec = entry_root_system(entry);
    Weight delta_g = modular_weight(spec, spec.positive_roots());
    std::vector<Exponent> exponents;
    for (const Weight& w : entry.min_rep_exponents) exponents.push_back({w});
    DecayThreshold p = sharp_p_from_exponents(delta_g, exponents);

    if (ctx.format == "json") {
        nlohmann::json j;
        j["group"] = entry.name;
        j["delta_g"] = weight_to_json(delta_g);
        j["exponent_count"] = exponents.size();
        j["p_min_sharp"] = threshold_to_json(p);
        emit(out, j);
        return 0;
    }
    table_row(out, "group", entry.name);
    table_row(out, "log delta_G", to_string(delta_g));
    table_row(out, "exponents", std::to_string(exponents.size()));
    table_row(out, "p_min (sharp)", threshold_line(p));
    table_row(out, "evidence", p.evidence);
    return 0;
}

inline int cmd_nonminimal(const Context& ctx, const std::string& group, bool full_search,
                          const std::vector<int>& word, std::ostream& out) {
    const GroupCatalogEntry& entry = entry_for(ctx, group);
    RootSystemSpec spec = entry_root_system(entry);
    RestrictionData data = restriction_data(spec, entry);
    Weight delta_g = modular_weight(spec, spec.positive_roots());

    std::vector<WeylElement> candidates;
    std::string source;
    if (!word.empty()) {
        candidates.push_back(weyl_from_word(spec, word));
        source = "given word";
    } else if (full_search) {
        candidates = enumerate_weyl(spec);
        source = "full Weyl group";
    } else {
        candidates = search_set(spec, entry);
        source = entry.candidate_words.empty() ? "full Weyl group" : "catalog candidate words";
    }
    WeylSearchResult result = weyl_search(spec, delta_g, data.bounds, candidates);

    if (ctx.format == "json") {
        nlohmann::json j;
        j["group"] = entry.name;
        j["candidates"] = candidates.size();
        j["source"] = source;
        j["bound"] = threshold_to_json(result.best);
        j["witness_word"] = result.witness.word;
        emit(out, j);
        return 0;
    }
    table_row(out, "group", entry.name);
    table_row(out, "candidates", std::to_string(candidates.size()) + " (" + source + ")");
    table_row(out, "nonminimal bound", to_string(result.best));
    table_row(out, "witness", word_text(result.witness.word));
    return 0;
}

inline int cmd_pipeline(const Context& ctx, const std::string& group, std::ostream& out) {
    DecayReport report = pipeline(entry_for(ctx, group));
    if (ctx.format == "json") {
        out << render_report_json(report);
        return 0;
    }
    table_row(out, "group", report.group);
    table_row(out, "short multiplicity", std::to_string(report.short_multiplicity));
    table_row(out, "log delta_G", to_string(report.delta_g));
    table_row(out, "q(H2)", threshold_line(report.q_h2));
    table_row(out, "threshold(H2)", threshold_line(report.threshold_h2));
    table_row(out, "p_nonminimal", to_string(report.p_nonminimal) + "   (witness " +
                                       word_text(report.nonminimal_witness_word) + ")");
    table_row(out, "p_min (sharp)", threshold_line(report.p_min_sharp));
    table_row(out, "p(G)", threshold_line(report.p_of_g));
    table_row(out, "isolation",
              report.isolation_k ? "k = " + std::to_string(*report.isolation_k) : "none");
    return 0;
}

}  // namespace detail

/// Executes one CLI invocation. `args` excludes the program name. Returns
/// 0 on success, 1 on a domain error, 2 on a usage error; reports go to
/// `out`, errors to `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"exact sharp L^p decay computations for relative root systems"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);

    detail::Context ctx;
    ctx.format = "table";
    std::string catalog_path;
    app.add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    app.add_option("--catalog", catalog_path, "catalog JSON file overriding the built-in one");

    std::string group;
    std::string which = "all";
    std::vector<int> word;
    bool full_search = false;

    CLI::App* roots = app.add_subcommand("roots", "positive roots with multiplicities");
    roots->add_option("group", group, "catalog group name")->required();

    CLI::App* tower = app.add_subcommand("tower", "Heisenberg tower and parabolic shape");
    tower->add_option("group", group, "catalog group name")->required();

    CLI::App* delta = app.add_subcommand("delta", "modular characters, optionally conjugated");
    delta->add_option("group", group, "catalog group name")->required();
    delta->add_option("--subsystem", which, "which subgroup deltas to print")
        ->check(CLI::IsMember({"h1", "h2", "all"}))
        ->capture_default_str();
    delta->add_option("--word", word, "conjugating word of 1-based reflection indices")
        ->delimiter(',');

    CLI::App* sharp = app.add_subcommand("sharp-p", "sharp threshold from the minimal "
                                                    "representation's exponents");
    sharp->add_option("group", group, "catalog group name")->required();

    CLI::App* nonmin = app.add_subcommand("nonminimal", "decay bound for non-minimal "
                                                        "representations");
    nonmin->add_option("group", group, "catalog group name")->required();
    nonmin->add_flag("--search", full_search, "scan the full Weyl group");
    nonmin->add_option("--word", word, "evaluate one conjugating word")->delimiter(',');

    CLI::App* pipe = app.add_subcommand("pipeline", "full decay report for a group");
    pipe->add_option("group", group, "catalog group name")->required();

    CLI::App* search = app.add_subcommand("search", "exhaustive Weyl-conjugate scan with "
                                                    "witness");
    search->add_option("group", group, "catalog group name")->required();

    std::vector<std::string> argv_store{"relroot"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        ctx.entries = catalog_path.empty() ? builtin_catalog() : load_catalog(catalog_path);
        if (roots->parsed()) return detail::cmd_roots(ctx, group, out);
        if (tower->parsed()) return detail::cmd_tower(ctx, group, out);
        if (delta->parsed()) return detail::cmd_delta(ctx, group, which, word, out);
        if (sharp->parsed()) return detail::cmd_sharp_p(ctx, group, out);
        if (nonmin->parsed()) return detail::cmd_nonminimal(ctx, group, full_search, word, out);
        if (pipe->parsed()) return detail::cmd_pipeline(ctx, group, out);
        if (search->parsed()) return detail::cmd_nonminimal(ctx, group, true, {}, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace cli
}  // namespace relroot

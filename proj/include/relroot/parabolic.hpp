#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relroot/dynkin.hpp"
#include "relroot/root_system.hpp"
#include "relroot/subsystem.hpp"

namespace relroot {

/// One level of the Heisenberg tower. All roots are in the coordinates of
/// the original ambient system, whatever level the recursion has reached.
struct TowerLevel {
    int level_index = 0;
    Root center_root;
    std::vector<Root> radical_roots;  // sorted by (height, lex)
    bool is_abelian = false;
};

/// A parabolic subgroup presented combinatorially: the simple roots of its
/// Levi factor and the roots of its unipotent radical.
struct ParabolicShape {
    std::vector<int> levi_simple_indices;  // 1-based, sorted
    std::vector<Root> radical_roots;       // sorted by (height, lex)
};

/// log of the modular character attached to a set of radical roots: the
/// multiplicity-weighted sum sum_gamma m(gamma)*gamma.
inline Weight modular_weight(const RootSystemSpec& spec, const std::vector<Root>& roots) {
    Weight w = Weight::zero(spec.rank());
    for (const Root& r : roots) {
        if (!spec.is_positive_root(r))
            throw std::invalid_argument("modular_weight: " + to_string(r) +
                                        " is not a positive root");
        Rat m(spec.multiplicity(r));
        for (std::size_t i = 0; i < spec.rank(); ++i) w.coeffs[i] += m * Rat(r.coeffs[i]);
    }
    return w;
}

/// log delta of the minimal parabolic of the reductive group A*H attached
/// to a subsystem H, as a character of the full torus: the modular weight
/// of H's positive part.
inline Weight subsystem_delta(const RootSystemSpec& spec, const Subsystem& s) {
    return modular_weight(spec, s.positive_part);
}

/// Image subsystem {w*gamma}, with the positive part recomputed by
/// intersecting with the ambient positive system. Note that the resulting
/// delta is a sum over w*H intersected with Phi+, which differs in general
/// from applying w to subsystem_delta(H).
inline Subsystem conjugate_subsystem(const RootSystemSpec& spec, const Subsystem& s,
                                     const WeylElement& w) {
    std::set<Root> pos;
    for (const Root& r : s.positive_part) {
        Root img = apply_weyl(spec, w, r);
        if (img.is_nonpositive()) img = -img;
        if (!spec.is_positive_root(img))
            throw std::domain_error("conjugate_subsystem: image " + to_string(img) +
                                    " is not a root; element does not preserve the system");
        pos.insert(std::move(img));
    }
    Subsystem out;
    out.positive_part = detail::sort_by_height(std::move(pos));
    out.label = s.label.empty() ? std::string{} : s.label + "^(" + to_string(w) + ")";
    return out;
}

namespace detail {

inline TowerLevel radical_of_component(const RootSystemSpec& spec,
                                       const std::vector<Root>& component_positive,
                                       int level_index) {
    // The component's highest root is its unique member of maximal ambient
    // height.
    const Root* top = nullptr;
    for (const Root& r : component_positive)
        if (!top || std::pair(r.height(), r.coeffs) > std::pair(top->height(), top->coeffs))
            top = &r;
    TowerLevel level;
    level.level_index = level_index;
    level.center_root = *top;
    for (const Root& r : component_positive)
        if (pairing(spec, r, level.center_root) > Rat(0)) level.radical_roots.push_back(r);
    level.is_abelian =
        level.radical_roots.size() == 1 && level.radical_roots.front() == level.center_root;
    return level;
}

}  // namespace detail

/// The radical of the Heisenberg parabolic: center = highest root beta,
/// roots = every positive root pairing strictly positively with beta.
inline TowerLevel heisenberg_radical(const RootSystemSpec& spec) {
    if (!spec.is_irreducible())
        throw std::domain_error("heisenberg_radical: root system is reducible");
    return detail::radical_of_component(spec, spec.positive_roots(), 1);
}

/// Iterated Heisenberg levels: each level's ambient system is the
/// designated simple factor of the orthogonal subsystem of the previous
/// center. The factor is the whole subsystem when irreducible, and the
/// unique component that is not A1 otherwise; any other shape is rejected.
/// All roots are reported in the original system's coordinates.
inline std::vector<TowerLevel> heisenberg_tower(const RootSystemSpec& spec) {
    if (!spec.is_irreducible())
        throw std::domain_error("heisenberg_tower: root system is reducible");

    std::vector<TowerLevel> levels;
    std::vector<Root> component = spec.positive_roots();
    int index = 1;
    while (!component.empty()) {
        TowerLevel level = detail::radical_of_component(spec, component, index++);

        std::set<Root> perp_pos;
        for (const Root& r : component)
            if (pairing(spec, r, level.center_root) == Rat(0)) perp_pos.insert(r);
        levels.push_back(std::move(level));
        if (perp_pos.empty()) break;

        Subsystem perp;
        perp.positive_part = detail::sort_by_height(std::move(perp_pos));
        auto components = classify(spec, perp);
        std::size_t chosen = components.size();
        if (components.size() == 1) {
            chosen = 0;
        } else {
            for (std::size_t i = 0; i < components.size(); ++i) {
                if (components[i].type == DynkinType{'A', 1}) continue;
                if (chosen != components.size())
                    throw std::domain_error(
                        "heisenberg_tower: orthogonal subsystem has several non-A1 components");
                chosen = i;
            }
            if (chosen == components.size())
                throw std::domain_error(
                    "heisenberg_tower: orthogonal subsystem has no designated simple factor "
                    "(all components are A1)");
        }
        // Roots of the chosen component: members of perp spanned by its basis,
        // i.e. those not orthogonal to the basis... every perp root belongs to
        // exactly one component; pick the ones pairing nontrivially with the
        // chosen basis.
        std::vector<Root> next;
        const auto& basis = components[chosen].basis;
        for (const Root& r : perp.positive_part) {
            bool in_component = false;
            for (const Root& b : basis)
                if (pairing(spec, r, b) != Rat(0)) {
                    in_component = true;
                    break;
                }
            if (in_component) next.push_back(r);
        }
        component = std::move(next);
    }
    return levels;
}

/// Recognizes a root set as the unipotent radical of a standard parabolic:
/// finds the simple-root subset I such that the positive roots outside the
/// span of I are exactly the given set.
inline ParabolicShape radical_to_parabolic(const RootSystemSpec& spec,
                                           const std::vector<Root>& roots) {
    std::set<Root> given(roots.begin(), roots.end());
    for (const Root& r : given)
        if (!spec.is_positive_root(r))
            throw std::invalid_argument("radical_to_parabolic: " + to_string(r) +
                                        " is not a positive root");

    // Simple roots absent from the set must generate the Levi.
    std::vector<bool> levi(spec.rank(), false);
    for (std::size_t i = 0; i < spec.rank(); ++i) {
        std::vector<Int> c(spec.rank(), 0);
        c[i] = 1;
        if (!given.count(Root(std::move(c)))) levi[i] = true;
    }
    std::set<Root> expected;
    for (const Root& r : spec.positive_roots()) {
        bool in_levi_span = true;
        for (std::size_t i = 0; i < spec.rank(); ++i)
            if (r.coeffs[i] != 0 && !levi[i]) {
                in_levi_span = false;
                break;
            }
        if (!in_levi_span) expected.insert(r);
    }
    if (expected != given)
        throw std::domain_error("radical_to_parabolic: root set is not a parabolic radical");

    ParabolicShape shape;
    for (std::size_t i = 0; i < spec.rank(); ++i)
        if (levi[i]) shape.levi_simple_indices.push_back(static_cast<int>(i + 1));
    shape.radical_roots = detail::sort_by_height(std::move(given));
    return shape;
}

}  // namespace relroot

#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relroot/root_system.hpp"

namespace relroot {

/// A closed symmetric subset of the ambient root system (the root system
/// of an embedded reductive subgroup). Only the positive part is stored;
/// the full set is positive_part together with its negatives. The positive
/// part is always taken by intersecting with the ambient positive system,
/// which keeps every subsystem chamber-compatible with the ambient group.
struct Subsystem {
    std::vector<Root> positive_part;  // sorted by (height, lex)
    std::string label;

    bool empty() const { return positive_part.empty(); }
    std::size_t size() const { return 2 * positive_part.size(); }

    bool contains(const Root& r) const {
        if (std::binary_search(positive_part.begin(), positive_part.end(), r)) return true;
        return std::binary_search(positive_part.begin(), positive_part.end(), -r);
    }

    friend bool operator==(const Subsystem& a, const Subsystem& b) {
        return a.positive_part == b.positive_part;
    }
};

namespace detail {

inline std::vector<Root> sort_by_height(std::set<Root> roots) {
    std::vector<Root> out(roots.begin(), roots.end());
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        return std::pair(a.height(), a.coeffs) < std::pair(b.height(), b.coeffs);
    });
    return out;
}

}  // namespace detail

/// Positive representative of a set of roots closed under negation.
inline std::set<Root> positive_side(const RootSystemSpec& spec, const std::set<Root>& roots) {
    std::set<Root> pos;
    for (const Root& r : roots) {
        if (spec.is_positive_root(r)) pos.insert(r);
        else if (!spec.is_positive_root(-r))
            throw std::invalid_argument("subsystem member " + to_string(r) +
                                        " is not a root of the ambient system");
    }
    return pos;
}

/// Closure of the given generators (and their negatives) under
/// addition-within-Phi: the smallest closed symmetric subset containing
/// them.
inline Subsystem make_subsystem(const RootSystemSpec& spec, const std::vector<Root>& generators,
                                std::string label = {}) {
    std::set<Root> closed;
    for (const Root& g : generators) {
        if (!spec.is_root(g))
            throw std::invalid_argument("subsystem generator " + to_string(g) +
                                        " is not a root of the ambient system");
        closed.insert(g);
        closed.insert(-g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Root> members(closed.begin(), closed.end());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                Root sum = members[i] + members[j];
                if (spec.is_root(sum) && !closed.count(sum)) {
                    closed.insert(sum);
                    closed.insert(-sum);
                    grew = true;
                }
            }
    }
    Subsystem s;
    s.positive_part = detail::sort_by_height(positive_side(spec, closed));
    s.label = std::move(label);
    return s;
}

/// The parabolic subsystem spanned by the named simple roots (1-based).
inline Subsystem subsystem_from_simple_indices(const RootSystemSpec& spec,
                                               const std::vector<int>& indices,
                                               std::string label = {}) {
    std::vector<bool> allowed(spec.rank(), false);
    for (int i : indices) {
        if (i < 1 || static_cast<std::size_t>(i) > spec.rank())
            throw std::invalid_argument("simple root index out of range: " + std::to_string(i));
        allowed[static_cast<std::size_t>(i) - 1] = true;
    }
    std::set<Root> pos;
    for (const Root& r : spec.positive_roots()) {
        bool inside = true;
        for (std::size_t k = 0; k < spec.rank(); ++k)
            if (r.coeffs[k] != 0 && !allowed[k]) {
                inside = false;
                break;
            }
        if (inside) pos.insert(r);
    }
    Subsystem s;
    s.positive_part = detail::sort_by_height(std::move(pos));
    s.label = std::move(label);
    return s;
}

/// All roots perpendicular to x, with inherited positive part.
inline Subsystem orthogonal_subsystem(const RootSystemSpec& spec, const Root& x) {
    if (!spec.is_root(x))
        throw std::invalid_argument("orthogonal_subsystem: " + to_string(x) + " is not a root");
    std::set<Root> pos;
    for (const Root& r : spec.positive_roots())
        if (pairing(spec, r, x) == Rat(0)) pos.insert(r);
    Subsystem s;
    s.positive_part = detail::sort_by_height(std::move(pos));
    s.label = "perp" + to_string(x);
    return s;
}

/// Checks the closure invariants: members are ambient roots and the set
/// (with negatives) is closed under addition-within-Phi.
inline bool subsystem_is_closed(const RootSystemSpec& spec, const Subsystem& s) {
    std::set<Root> all;
    for (const Root& r : s.positive_part) {
        if (!spec.is_positive_root(r)) return false;
        all.insert(r);
        all.insert(-r);
    }
    std::vector<Root> members(all.begin(), all.end());
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            Root sum = members[i] + members[j];
            if (spec.is_root(sum) && !all.count(sum)) return false;
        }
    return true;
}

}  // namespace relroot

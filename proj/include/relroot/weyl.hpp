#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "relroot/root_system.hpp"

namespace relroot {

inline WeylElement weyl_identity(const RootSystemSpec& spec) {
    return WeylElement{{}, IntMat::identity(spec.rank())};
}

/// Builds the element named by a word of 1-based reflection indices; the
/// leftmost letter acts last, matching the usual composition order of a
/// product of reflections. The word is kept verbatim (it need not be
/// reduced).
inline WeylElement weyl_from_word(const RootSystemSpec& spec, const std::vector<int>& word) {
    IntMat m = IntMat::identity(spec.rank());
    for (int i : word) m = m * spec.simple_reflection(i);
    return WeylElement{word, m};
}

/// Coxeter length: the number of positive roots mapped to negative ones.
inline std::size_t weyl_length(const RootSystemSpec& spec, const IntMat& m) {
    std::size_t len = 0;
    for (const Root& r : spec.positive_roots())
        if (m.apply(r).is_nonpositive()) ++len;
    return len;
}

inline std::size_t weyl_length(const RootSystemSpec& spec, const WeylElement& w) {
    return weyl_length(spec, w.matrix);
}

/// The lexicographically least reduced word of the element, obtained by
/// repeatedly splitting off the smallest left descent.
inline std::vector<int> canonical_word(const RootSystemSpec& spec, const IntMat& matrix) {
    std::vector<int> word;
    IntMat m = matrix;
    std::size_t len = weyl_length(spec, m);
    while (len > 0) {
        bool found = false;
        for (std::size_t j = 1; j <= spec.rank(); ++j) {
            IntMat next = spec.simple_reflection(static_cast<int>(j)) * m;
            std::size_t nlen = weyl_length(spec, next);
            if (nlen < len) {
                word.push_back(static_cast<int>(j));
                m = std::move(next);
                len = nlen;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::domain_error("canonical_word: matrix is not a Weyl group element");
    }
    return word;
}

/// Shortlex order on canonical words; the deterministic tie-break used by
/// the conjugate search.
inline bool word_shortlex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::pair(a.size(), a) < std::pair(b.size(), b);
}

/// Enumerates the full Weyl group by orbit closure on lattice matrices.
/// Each element carries its lexicographically least reduced word; the
/// result is sorted by shortlex word, so the identity comes first.
inline std::vector<WeylElement> enumerate_weyl(const RootSystemSpec& spec,
                                               std::size_t order_cap = 1u << 20) {
    std::map<IntMat, std::vector<int>> seen;
    IntMat id = IntMat::identity(spec.rank());
    seen.emplace(id, std::vector<int>{});
    std::vector<IntMat> frontier{id};
    while (!frontier.empty()) {
        std::vector<IntMat> next;
        for (const IntMat& m : frontier) {
            for (std::size_t j = 1; j <= spec.rank(); ++j) {
                IntMat m2 = spec.simple_reflection(static_cast<int>(j)) * m;
                if (seen.count(m2)) continue;
                if (seen.size() + 1 > order_cap)
                    throw std::domain_error("enumerate_weyl: group order exceeds cap of " +
                                            std::to_string(order_cap));
                seen.emplace(m2, std::vector<int>{});
                next.push_back(std::move(m2));
            }
        }
        frontier = std::move(next);
    }

    std::vector<WeylElement> elements;
    elements.reserve(seen.size());
    for (auto& [m, word] : seen) {
        word = canonical_word(spec, m);
        elements.push_back(WeylElement{word, m});
    }
    std::sort(elements.begin(), elements.end(), [](const WeylElement& a, const WeylElement& b) {
        return word_shortlex_less(a.word, b.word);
    });
    return elements;
}

}  // namespace relroot

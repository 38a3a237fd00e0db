#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relroot/root_system.hpp"
#include "relroot/subsystem.hpp"

namespace relroot {

struct DynkinType {
    char series = '?';  // A B C D E F G
    int rank = 0;

    friend bool operator==(const DynkinType&, const DynkinType&) = default;
};

inline std::string to_string(const DynkinType& t) {
    return std::string(1, t.series) + std::to_string(t.rank);
}

/// One irreducible component of a classified subsystem: its type and a
/// simple-root basis (the indecomposable positive members), in ambient
/// coordinates.
struct ClassifiedComponent {
    DynkinType type;
    std::vector<Root> basis;
};

namespace detail {

/// Cartan integers of a basis: c_ij = 2(b_i,b_j)/(b_j,b_j). Entries must
/// come out as integers in {2,0,-1,-2,-3}; anything else means the input
/// was not a closed subsystem of a finite root system.
inline std::vector<std::vector<Int>> basis_cartan(const RootSystemSpec& spec,
                                                  const std::vector<Root>& basis) {
    std::size_t n = basis.size();
    std::vector<std::vector<Int>> c(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = Rat(2) * pairing(spec, basis[i], basis[j]) / spec.length_sq(basis[j]);
            if (v.denominator() != 1)
                throw std::domain_error("classify: non-integral Cartan pairing between " +
                                        to_string(basis[i]) + " and " + to_string(basis[j]));
            c[i][j] = v.numerator();
            if (i == j) {
                if (c[i][j] != 2) throw std::domain_error("classify: basis root of wrong norm");
            } else if (c[i][j] > 0 || c[i][j] < -3) {
                throw std::domain_error("classify: Cartan entry " + std::to_string(c[i][j]) +
                                        " outside finite type range");
            }
        }
    return c;
}

inline DynkinType identify_component(const RootSystemSpec& spec, const std::vector<Root>& basis,
                                     const std::vector<std::vector<Int>>& cartan) {
    std::size_t n = basis.size();
    auto fail = [&](const std::string& why) -> DynkinType {
        throw std::domain_error("classify: component of rank " + std::to_string(n) +
                                " does not match a finite type (" + why + ")");
    };
    if (n == 1) return {'A', 1};

    std::vector<std::vector<std::size_t>> adj(n);
    std::size_t double_edges = 0, triple_edges = 0;
    std::size_t dbl_a = 0, dbl_b = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int m = cartan[i][j] * cartan[j][i];
            if (m == 0) continue;
            adj[i].push_back(j);
            adj[j].push_back(i);
            if (m == 2) {
                ++double_edges;
                dbl_a = i;
                dbl_b = j;
            } else if (m == 3) {
                ++triple_edges;
            } else if (m != 1) {
                fail("edge weight " + std::to_string(m));
            }
        }

    if (triple_edges > 0) {
        if (n == 2 && triple_edges == 1) return {'G', 2};
        fail("triple edge in rank > 2");
    }
    if (double_edges > 1) fail("more than one double edge");

    std::vector<std::size_t> degree(n);
    std::size_t branch_nodes = 0, branch = 0;
    for (std::size_t i = 0; i < n; ++i) {
        degree[i] = adj[i].size();
        if (degree[i] > 3) fail("node of degree > 3");
        if (degree[i] == 3) {
            ++branch_nodes;
            branch = i;
        }
    }
    if (branch_nodes > 1) fail("more than one branch node");

    if (double_edges == 1) {
        if (branch_nodes > 0) fail("double edge together with a branch node");
        // A path with one double edge: C if the long root sits at the end
        // touched by the double bond, B if the short one does, F4 if the
        // double bond is interior.
        if (n == 2) return {'C', 2};
        bool a_terminal = degree[dbl_a] == 1;
        bool b_terminal = degree[dbl_b] == 1;
        if (!a_terminal && !b_terminal) {
            if (n == 4) return {'F', 4};
            fail("interior double edge in rank != 4");
        }
        std::size_t terminal = a_terminal ? dbl_a : dbl_b;
        Rat tlen = spec.length_sq(basis[terminal]);
        Rat olen = spec.length_sq(basis[a_terminal ? dbl_b : dbl_a]);
        return {tlen > olen ? 'C' : 'B', static_cast<int>(n)};
    }

    // Simply laced.
    if (branch_nodes == 0) return {'A', static_cast<int>(n)};
    std::vector<std::size_t> arms;
    for (std::size_t start : adj[branch]) {
        std::size_t len = 1, prev = branch, cur = start;
        for (;;) {
            std::size_t nxt = n;
            for (std::size_t v : adj[cur])
                if (v != prev) nxt = v;
            if (nxt == n) break;
            prev = cur;
            cur = nxt;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] != 1) fail("branch arms too long");
    if (arms[1] == 1) return {'D', static_cast<int>(n)};
    if (arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', static_cast<int>(n)};
    return fail("branch arm pattern");
}

}  // namespace detail

/// Decomposes a closed subsystem into irreducible components, returning
/// each component's Dynkin type and a simple-root basis for it. The basis
/// of a component is the set of indecomposable elements of its positive
/// part, sorted by height then lexicographically. Rank-2 systems with a
/// double bond are reported as C2.
inline std::vector<ClassifiedComponent> classify(const RootSystemSpec& spec, const Subsystem& s) {
    if (s.positive_part.empty()) return {};

    // Indecomposables: positive members that are not sums of two others.
    std::set<Root> pos(s.positive_part.begin(), s.positive_part.end());
    std::vector<Root> simple;
    for (const Root& r : s.positive_part) {
        bool decomposable = false;
        for (const Root& a : s.positive_part) {
            if (a == r) continue;
            Root diff = r + (-a);
            if (pos.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simple.push_back(r);
    }

    auto cartan = detail::basis_cartan(spec, simple);

    // Connected components of the basis diagram.
    std::size_t n = simple.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] != -1) continue;
        comp[i] = ncomp;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
                if (comp[v] == -1 && cartan[u][v] != 0) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }

    std::vector<ClassifiedComponent> out;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<Root> basis;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) {
                basis.push_back(simple[i]);
                idx.push_back(i);
            }
        std::vector<std::vector<Int>> sub(basis.size(), std::vector<Int>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) sub[i][j] = cartan[idx[i]][idx[j]];
        DynkinType type = detail::identify_component(spec, basis, sub);
        out.push_back({type, std::move(basis)});
    }
    std::sort(out.begin(), out.end(), [](const ClassifiedComponent& a,
                                         const ClassifiedComponent& b) {
        return std::pair(a.basis.front().height(), a.basis.front().coeffs) <
               std::pair(b.basis.front().height(), b.basis.front().coeffs);
    });
    return out;
}

}  // namespace relroot

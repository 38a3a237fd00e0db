#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relroot/parabolic.hpp"
#include "relroot/rational.hpp"
#include "relroot/root_system.hpp"
#include "relroot/subsystem.hpp"
#include "relroot/weyl.hpp"

namespace relroot {

/// The coefficient vector of log|chi| for an exponent chi of a
/// representation, in the simple-root basis.
struct Exponent {
    Weight weight;
};

/// A decay threshold: the representation is strongly L^{value+eps}, and
/// when `sharp` is set, not strongly L^q for any q < value. An absent
/// value is the +infinity sentinel ("some finite bound exists but none is
/// specified"). `evidence` records what produced the number.
struct DecayThreshold {
    std::optional<Rat> value;
    bool sharp = false;
    std::string evidence;

    bool is_finite() const { return value.has_value(); }

    static DecayThreshold finite(Rat v, bool is_sharp, std::string ev) {
        return {v, is_sharp, std::move(ev)};
    }
    static DecayThreshold infinite(std::string ev) { return {std::nullopt, false, std::move(ev)}; }

    friend bool operator==(const DecayThreshold&, const DecayThreshold&) = default;
};

/// Strict order with +infinity greater than every finite value.
inline bool threshold_less(const DecayThreshold& a, const DecayThreshold& b) {
    if (!a.is_finite()) return false;
    if (!b.is_finite()) return true;
    return *a.value < *b.value;
}

inline std::string to_string(const DecayThreshold& t) {
    return t.is_finite() ? to_string(*t.value) : std::string("inf");
}

/// An embedded subgroup together with a decay threshold for restrictions
/// to it and the integer k of the half-density calculus, 2k >= threshold.
struct SubgroupBound {
    Subsystem subsystem;
    DecayThreshold threshold;
    Int k = 0;
};

/// Builds a SubgroupBound with the least admissible k = ceil(threshold/2).
inline SubgroupBound make_subgroup_bound(Subsystem subsystem, DecayThreshold threshold) {
    if (!threshold.is_finite())
        throw std::invalid_argument("make_subgroup_bound: threshold must be finite to fix k");
    if (*threshold.value <= Rat(0))
        throw std::invalid_argument("make_subgroup_bound: threshold must be positive");
    Int k = rat_ceil(*threshold.value / 2);
    if (k < 1) k = 1;
    return {std::move(subsystem), std::move(threshold), k};
}

/// Upper bound on the matrix coefficients of the oscillator restriction,
/// as exponents over the reduced torus coordinates (y_2, y_3, y_4):
/// (-(3r+5)/4, -(r+2), -(r+3)/2) where r is the short root-space
/// dimension.
struct OscillatorBound {
    int short_mult = 0;
    Weight phi_exponents;
};

inline OscillatorBound oscillator_bound(int short_mult) {
    if (short_mult < 1)
        throw std::invalid_argument("oscillator_bound: short multiplicity must be positive");
    Int r = short_mult;
    Weight phi(std::vector<Rat>{Rat(-(3 * r + 5), 4), Rat(-(r + 2)), Rat(-(r + 3), 2)});
    return {short_mult, std::move(phi)};
}

/// Least p such that chi + (1/2 - 1/p) log delta_G has nonnegative
/// coordinates for every exponent chi; explicitly the max over exponents
/// and coordinates j of 2 d_j / (d_j + 2 c_j). A coordinate with
/// d_j + 2 c_j <= 0 admits no finite p. The result is sharp.
inline DecayThreshold sharp_p_from_exponents(const Weight& delta_g,
                                             const std::vector<Exponent>& exponents) {
    std::size_t n = delta_g.rank();
    for (const Rat& d : delta_g.coeffs)
        if (d <= Rat(0))
            throw std::invalid_argument("sharp_p_from_exponents: delta_G must be strictly "
                                        "positive in every coordinate");
    if (exponents.empty())
        throw std::invalid_argument("sharp_p_from_exponents: no exponents given");

    std::optional<Rat> best;
    std::size_t best_exp = 0, best_coord = 0;
    for (std::size_t e = 0; e < exponents.size(); ++e) {
        const Weight& c = exponents[e].weight;
        if (c.rank() != n)
            throw std::invalid_argument("sharp_p_from_exponents: exponent rank mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            Rat den = delta_g.coeffs[j] + Rat(2) * c.coeffs[j];
            if (den <= Rat(0))
                return DecayThreshold::infinite(
                    "exponent " + std::to_string(e + 1) + " at coordinate " +
                    std::to_string(j + 1) + " has d_j + 2c_j = " + to_string(den) +
                    " <= 0; no finite p exists");
            Rat p = Rat(2) * delta_g.coeffs[j] / den;
            if (!best || p > *best) {
                best = p;
                best_exp = e + 1;
                best_coord = j + 1;
            }
        }
    }
    return DecayThreshold::finite(*best, true,
                                  "binding exponent " + std::to_string(best_exp) +
                                      " at coordinate " + std::to_string(best_coord));
}

/// Half-density combination: with h = sum_i (1/2k_i) log delta_{H_i}, the
/// least p such that h_j >= d_j / p on the closed positive chamber, i.e.
/// p = max_j d_j / h_j. A coordinate with h_j = 0 < d_j makes the
/// inequality unsatisfiable for finite p.
inline DecayThreshold combine_subgroup_decay(const RootSystemSpec& spec, const Weight& delta_g,
                                             const std::vector<SubgroupBound>& bounds) {
    if (bounds.empty())
        throw std::invalid_argument("combine_subgroup_decay: no subgroup bounds given");
    std::size_t n = delta_g.rank();
    for (const Rat& d : delta_g.coeffs)
        if (d <= Rat(0))
            throw std::invalid_argument("combine_subgroup_decay: delta_G must be strictly "
                                        "positive in every coordinate");

    Weight h = Weight::zero(n);
    for (const SubgroupBound& b : bounds) {
        if (b.k < 1)
            throw std::invalid_argument("combine_subgroup_decay: each k must be a positive "
                                        "integer");
        h += subsystem_delta(spec, b.subsystem) * Rat(1, 2 * b.k);
    }

    std::optional<Rat> best;
    std::size_t best_coord = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (h.coeffs[j] == Rat(0))
            return DecayThreshold::infinite("combined half-density vanishes at coordinate " +
                                            std::to_string(j + 1) +
                                            " where delta_G does not; no finite p exists");
        Rat p = delta_g.coeffs[j] / h.coeffs[j];
        if (!best || p > *best) {
            best = p;
            best_coord = j + 1;
        }
    }
    return DecayThreshold::finite(*best, false,
                                  "combined half-density " + to_string(h) +
                                      ", binding coordinate " + std::to_string(best_coord));
}

/// Tensor-product decay: 1/r = 1/p + 1/q, with +infinity contributing 0.
inline DecayThreshold holder_combine(const DecayThreshold& p, const DecayThreshold& q) {
    if (!p.is_finite() && !q.is_finite())
        throw std::domain_error("holder_combine: both inputs are infinite");
    for (const DecayThreshold* t : {&p, &q})
        if (t->is_finite() && *t->value <= Rat(0))
            throw std::invalid_argument("holder_combine: thresholds must be positive");
    Rat inv(0);
    if (p.is_finite()) inv += Rat(1) / *p.value;
    if (q.is_finite()) inv += Rat(1) / *q.value;
    return DecayThreshold::finite(Rat(1) / inv, false,
                                  "1/r = 1/" + to_string(p) + " + 1/" + to_string(q));
}

/// Substitutes the relation prod_i y_i^{b_i} = 1 into a character,
/// eliminating coordinate j (1-based): the returned weight on the
/// remaining coordinates has c'_i = c_i - c_j b_i / b_j.
inline Weight restrict_weight(const Weight& weight, const Root& constraint, int eliminate_index) {
    std::size_t n = weight.rank();
    if (constraint.rank() != n)
        throw std::invalid_argument("restrict_weight: constraint rank mismatch");
    if (eliminate_index < 1 || static_cast<std::size_t>(eliminate_index) > n)
        throw std::invalid_argument("restrict_weight: eliminate index out of range");
    std::size_t j = static_cast<std::size_t>(eliminate_index) - 1;
    if (constraint.coeffs[j] == 0)
        throw std::invalid_argument("restrict_weight: constraint has zero coefficient at the "
                                    "eliminated coordinate");
    Rat ratio = weight.coeffs[j] / Rat(constraint.coeffs[j]);
    std::vector<Rat> out;
    out.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        out.push_back(weight.coeffs[i] - ratio * Rat(constraint.coeffs[i]));
    }
    return Weight(std::move(out));
}

/// Sharp threshold for the oscillator restriction: with Phi = prod
/// y_j^{-e_j} and delta = prod y_j^{f_j}, the least q making every
/// exponent of Phi^q * delta nonpositive, i.e. q = max_j f_j / e_j.
inline DecayThreshold oscillator_sharp_q(const OscillatorBound& phi,
                                         const Weight& delta_restricted) {
    std::size_t n = phi.phi_exponents.rank();
    if (delta_restricted.rank() != n)
        throw std::invalid_argument("oscillator_sharp_q: coordinate count mismatch");
    std::optional<Rat> best;
    std::size_t best_coord = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (phi.phi_exponents.coeffs[j] >= Rat(0))
            throw std::invalid_argument("oscillator_sharp_q: Phi exponents must be strictly "
                                        "negative");
        if (delta_restricted.coeffs[j] < Rat(0))
            throw std::invalid_argument("oscillator_sharp_q: delta exponents must be "
                                        "nonnegative");
        Rat q = delta_restricted.coeffs[j] / -phi.phi_exponents.coeffs[j];
        if (!best || q > *best) {
            best = q;
            best_coord = j + 1;
        }
    }
    if (!best) throw std::invalid_argument("oscillator_sharp_q: empty coordinate list");
    return DecayThreshold::finite(*best, true,
                                  "binding reduced coordinate " + std::to_string(best_coord) +
                                      " at short multiplicity " +
                                      std::to_string(phi.short_mult));
}

struct WeylSearchResult {
    DecayThreshold best;
    WeylElement witness;
};

/// Minimizes combine_subgroup_decay over conjugating every subsystem by
/// the same w. Deterministic: ties are broken by shortlex order on the
/// canonical reduced words, then by position in the candidate list.
inline WeylSearchResult weyl_search(const RootSystemSpec& spec, const Weight& delta_g,
                                    const std::vector<SubgroupBound>& bounds,
                                    const std::vector<WeylElement>& weyl_set) {
    if (weyl_set.empty()) throw std::invalid_argument("weyl_search: empty candidate set");

    std::optional<DecayThreshold> best;
    const WeylElement* witness = nullptr;
    std::vector<int> witness_canon;
    for (const WeylElement& w : weyl_set) {
        std::vector<SubgroupBound> conj;
        conj.reserve(bounds.size());
        for (const SubgroupBound& b : bounds)
            conj.push_back({conjugate_subsystem(spec, b.subsystem, w), b.threshold, b.k});
        DecayThreshold value = combine_subgroup_decay(spec, delta_g, conj);
        if (!value.is_finite()) continue;
        if (!best || threshold_less(value, *best)) {
            best = value;
            witness = &w;
            witness_canon.clear();
        } else if (!threshold_less(*best, value)) {  // tie
            if (witness_canon.empty()) witness_canon = canonical_word(spec, witness->matrix);
            std::vector<int> canon = canonical_word(spec, w.matrix);
            if (word_shortlex_less(canon, witness_canon)) {
                witness = &w;
                witness_canon = std::move(canon);
            }
        }
    }
    if (!best)
        throw std::domain_error("weyl_search: every candidate gives an infinite threshold");
    DecayThreshold result = *best;
    result.evidence += "; witness " + to_string(*witness);
    return {result, *witness};
}

/// Isolation certificate: the least integer k with
/// p_nonminimal <= 2k < p_min_sharp, if any.
inline std::optional<Int> isolation_check(const DecayThreshold& p_nonminimal,
                                          const DecayThreshold& p_min_sharp) {
    if (!p_nonminimal.is_finite())
        throw std::invalid_argument("isolation_check: non-minimal bound must be finite");
    Int k = rat_ceil(*p_nonminimal.value / 2);
    if (k < 1) k = 1;
    if (!p_min_sharp.is_finite() || Rat(2 * k) < *p_min_sharp.value) return k;
    return std::nullopt;
}

}  // namespace relroot

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relroot/rational.hpp"

namespace relroot {

/// A root, stored as integer coordinates in the simple-root basis of the
/// system that owns it.
struct Root {
    std::vector<Int> coeffs;

    Root() = default;
    explicit Root(std::vector<Int> c) : coeffs(std::move(c)) {}

    std::size_t rank() const { return coeffs.size(); }
    Int height() const { return std::accumulate(coeffs.begin(), coeffs.end(), Int{0}); }
    bool is_nonnegative() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](Int c) { return c >= 0; });
    }
    bool is_nonpositive() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](Int c) { return c <= 0; });
    }

    Root operator-() const {
        Root r = *this;
        for (auto& c : r.coeffs) c = -c;
        return r;
    }
    Root operator+(const Root& o) const {
        Root r = *this;
        for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
        return r;
    }
    friend bool operator==(const Root&, const Root&) = default;
    friend auto operator<=>(const Root&, const Root&) = default;
};

/// A rational coefficient vector over the simple-root basis. A Weight c
/// stands for the positive character whose value at a torus point is
/// prod_i y_i^{c_i} with y_i = |e^{alpha_i}(a)|; it houses log-modular
/// characters and exponents of representations.
struct Weight {
    std::vector<Rat> coeffs;

    Weight() = default;
    explicit Weight(std::vector<Rat> c) : coeffs(std::move(c)) {}
    static Weight zero(std::size_t rank) { return Weight(std::vector<Rat>(rank, Rat(0))); }

    std::size_t rank() const { return coeffs.size(); }

    Weight& operator+=(const Weight& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    Weight operator+(const Weight& o) const {
        Weight w = *this;
        w += o;
        return w;
    }
    Weight operator*(const Rat& s) const {
        Weight w = *this;
        for (auto& c : w.coeffs) c *= s;
        return w;
    }
    friend bool operator==(const Weight&, const Weight&) = default;
};

inline Weight to_weight(const Root& r) {
    std::vector<Rat> c;
    c.reserve(r.coeffs.size());
    for (Int v : r.coeffs) c.emplace_back(v);
    return Weight(std::move(c));
}

inline std::string to_string(const Root& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        s += (i ? "," : "") + std::to_string(r.coeffs[i]);
    return s + ")";
}

inline std::string to_string(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.coeffs.size(); ++i)
        s += (i ? ", " : "") + to_string(w.coeffs[i]);
    return s + ")";
}

/// Square integer matrix, row-major. Hand-rolled; rank stays <= 8 here.
struct IntMat {
    std::size_t n = 0;
    std::vector<Int> a;

    IntMat() = default;
    explicit IntMat(std::size_t dim) : n(dim), a(dim * dim, 0) {}

    static IntMat identity(std::size_t dim) {
        IntMat m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
        return m;
    }

    Int& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    Int at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    IntMat operator*(const IntMat& o) const {
        IntMat m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                Int v = at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < n; ++j) m.at(i, j) += v * o.at(k, j);
            }
        return m;
    }

    Root apply(const Root& r) const {
        Root out(std::vector<Int>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.coeffs[i] += at(i, j) * r.coeffs[j];
        return out;
    }

    Weight apply(const Weight& w) const {
        Weight out = Weight::zero(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.coeffs[i] += Rat(at(i, j)) * w.coeffs[j];
        return out;
    }

    friend bool operator==(const IntMat&, const IntMat&) = default;
    friend auto operator<=>(const IntMat&, const IntMat&) = default;
};

/// An element of the Weyl group: a word in simple reflections (1-based
/// indices, leftmost factor acting last) together with its action on the
/// root lattice.
struct WeylElement {
    std::vector<int> word;
    IntMat matrix;

    friend bool operator==(const WeylElement& x, const WeylElement& y) {
        return x.matrix == y.matrix;
    }
};

inline std::string to_string(const WeylElement& w) {
    if (w.word.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < w.word.size(); ++i)
        s += (i ? " s" : "s") + std::to_string(w.word[i]);
    return s;
}

namespace detail {

inline void validate_cartan(const std::vector<std::vector<Int>>& cartan) {
    std::size_t n = cartan.size();
    if (n == 0) throw std::invalid_argument("Cartan matrix is empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (cartan[i].size() != n) throw std::invalid_argument("Cartan matrix is not square");
        if (cartan[i][i] != 2)
            throw std::invalid_argument("Cartan diagonal entry (" + std::to_string(i + 1) + "," +
                                        std::to_string(i + 1) + ") is not 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (cartan[i][j] > 0)
                throw std::invalid_argument("Cartan matrix has positive off-diagonal entry at (" +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            ")");
            if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
                throw std::invalid_argument("Cartan matrix zero pattern is not symmetric at (" +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            ")");
        }
    }
}

/// Minimal positive half-integer scalars d with a_ij d_j = a_ji d_i, so
/// that (alpha_i, alpha_j) = a_ij d_j is a symmetric Weyl-invariant form.
inline std::vector<Rat> compute_symmetrizer(const std::vector<std::vector<Int>>& cartan) {
    std::size_t n = cartan.size();
    std::vector<Rat> d(n, Rat(0));
    std::vector<bool> known(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (known[start]) continue;
        d[start] = Rat(1);
        known[start] = true;
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || cartan[i][j] == 0) continue;
                Rat dj = d[i] * Rat(cartan[j][i], cartan[i][j]);
                if (!known[j]) {
                    d[j] = dj;
                    known[j] = true;
                    stack.push_back(j);
                } else if (d[j] != dj) {
                    throw std::invalid_argument("Cartan matrix is not symmetrizable");
                }
            }
        }
    }
    // Scale so the 2*d_i become positive integers with gcd 1.
    Int lcm = 1;
    for (const Rat& x : d) {
        Int den = (x * 2).denominator();
        lcm = lcm / std::gcd(lcm, den) * den;
    }
    Int g = 0;
    std::vector<Int> two_d(n);
    for (std::size_t i = 0; i < n; ++i) {
        two_d[i] = (d[i] * 2 * lcm).numerator();
        g = std::gcd(g, two_d[i]);
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = Rat(two_d[i] / g, 2);
    return d;
}

inline bool cartan_connected(const std::vector<std::vector<Int>>& cartan) {
    std::size_t n = cartan.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j)
            if (!seen[j] && cartan[i][j] != 0) {
                seen[j] = true;
                ++count;
                stack.push_back(j);
            }
    }
    return count == n;
}

/// Height-by-height generation of the positive system: gamma + alpha_j is
/// a root iff the alpha_j-string through gamma extends upward, i.e.
/// p - <gamma, alpha_j^vee> > 0 with p the depth of the string below gamma.
inline std::set<Root> generate_positive(const std::vector<std::vector<Int>>& cartan,
                                        std::size_t root_cap) {
    std::size_t n = cartan.size();
    std::set<Root> roots;
    std::vector<Root> frontier;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> c(n, 0);
        c[i] = 1;
        Root alpha(std::move(c));
        roots.insert(alpha);
        frontier.push_back(std::move(alpha));
    }
    while (!frontier.empty()) {
        std::vector<Root> next;
        for (const Root& gamma : frontier) {
            for (std::size_t j = 0; j < n; ++j) {
                Int p = 0;
                Root down = gamma;
                for (;;) {
                    --down.coeffs[j];
                    if (roots.count(down)) ++p;
                    else break;
                }
                Int pair_cov = 0;  // <gamma, alpha_j^vee> = sum_i gamma_i a_ij
                for (std::size_t i = 0; i < n; ++i) pair_cov += gamma.coeffs[i] * cartan[i][j];
                if (p - pair_cov > 0) {
                    Root up = gamma;
                    ++up.coeffs[j];
                    if (roots.insert(up).second) {
                        if (roots.size() > root_cap)
                            throw std::domain_error(
                                "root generation exceeded cap of " + std::to_string(root_cap) +
                                " positive roots; Cartan matrix is not of finite type");
                        next.push_back(std::move(up));
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return roots;
}

}  // namespace detail

inline constexpr std::size_t kDefaultRootCap = 256;

/// A finite reduced root system generated from a Cartan matrix, with a
/// root-space multiplicity attached to each root length. Immutable after
/// construction; all operations on it are pure, so values are safe to
/// share across threads.
class RootSystemSpec {
public:
    std::size_t rank() const { return rank_; }
    const IntMat& cartan() const { return cartan_; }
    /// Symmetrizer d: the pairing is (x,y) = sum_ij x_i a_ij d_j y_j.
    const std::vector<Rat>& symmetrizer() const { return symmetrizer_; }
    /// Sorted by height, then lexicographically. The last entry of an
    /// irreducible system is its highest root.
    const std::vector<Root>& positive_roots() const { return positive_; }
    const std::map<Rat, int>& multiplicity_by_length() const { return mult_; }

    bool is_positive_root(const Root& r) const { return positive_set_.count(r) > 0; }
    bool is_root(const Root& r) const { return is_positive_root(r) || is_positive_root(-r); }

    Rat length_sq(const Root& r) const {
        Rat s(0);
        for (std::size_t i = 0; i < rank_; ++i) {
            if (r.coeffs[i] == 0) continue;
            for (std::size_t j = 0; j < rank_; ++j)
                s += Rat(r.coeffs[i]) * form_[i * rank_ + j] * Rat(r.coeffs[j]);
        }
        return s;
    }

    int multiplicity(const Root& r) const {
        auto it = mult_.find(length_sq(r));
        if (it == mult_.end())
            throw std::domain_error("no multiplicity recorded for length " +
                                    relroot::to_string(length_sq(r)));
        return it->second;
    }

    bool is_irreducible() const { return irreducible_; }

    /// Matrix of the simple reflection s_i (1-based) on the root lattice.
    const IntMat& simple_reflection(int i) const {
        if (i < 1 || static_cast<std::size_t>(i) > rank_)
            throw std::invalid_argument("simple reflection index out of range: " +
                                        std::to_string(i));
        return reflections_[static_cast<std::size_t>(i) - 1];
    }

    friend RootSystemSpec build_root_system(const std::vector<std::vector<Int>>& cartan,
                                            const std::map<Rat, int>& multiplicity_by_length,
                                            std::size_t root_cap);
    friend Rat pairing(const RootSystemSpec& spec, const Weight& x, const Weight& y);

private:
    std::size_t rank_ = 0;
    IntMat cartan_;
    std::vector<Rat> symmetrizer_;
    std::vector<Rat> form_;  // form_[i*rank+j] = (alpha_i, alpha_j)
    std::map<Rat, int> mult_;
    std::vector<Root> positive_;
    std::set<Root> positive_set_;
    std::vector<IntMat> reflections_;
    bool irreducible_ = false;
};

inline RootSystemSpec build_root_system(const std::vector<std::vector<Int>>& cartan,
                                        const std::map<Rat, int>& multiplicity_by_length,
                                        std::size_t root_cap = kDefaultRootCap) {
    detail::validate_cartan(cartan);
    std::size_t n = cartan.size();

    RootSystemSpec spec;
    spec.rank_ = n;
    spec.cartan_ = IntMat(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) spec.cartan_.at(i, j) = cartan[i][j];
    spec.symmetrizer_ = detail::compute_symmetrizer(cartan);
    spec.form_.assign(n * n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            spec.form_[i * n + j] = Rat(cartan[i][j]) * spec.symmetrizer_[j];
    spec.irreducible_ = detail::cartan_connected(cartan);

    spec.positive_set_ = detail::generate_positive(cartan, root_cap);
    spec.positive_.assign(spec.positive_set_.begin(), spec.positive_set_.end());
    std::sort(spec.positive_.begin(), spec.positive_.end(), [](const Root& a, const Root& b) {
        return std::pair(a.height(), a.coeffs) < std::pair(b.height(), b.coeffs);
    });

    std::set<Rat> lengths;
    for (const Root& r : spec.positive_) lengths.insert(spec.length_sq(r));
    for (const Rat& l : lengths)
        if (!multiplicity_by_length.count(l))
            throw std::invalid_argument("multiplicity_by_length misses occurring length " +
                                        to_string(l));
    for (const auto& [l, m] : multiplicity_by_length) {
        if (!lengths.count(l))
            throw std::invalid_argument("multiplicity_by_length has key " + to_string(l) +
                                        " that is not a root length of the system");
        if (m < 1) throw std::invalid_argument("root multiplicities must be positive");
    }
    spec.mult_ = multiplicity_by_length;

    spec.reflections_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        IntMat m = IntMat::identity(n);
        for (std::size_t i = 0; i < n; ++i) m.at(j, i) -= cartan[i][j];
        spec.reflections_.push_back(std::move(m));
    }
    return spec;
}

namespace detail {

inline std::set<Rat> occurring_lengths(const std::vector<std::vector<Int>>& cartan,
                                       std::size_t root_cap) {
    validate_cartan(cartan);
    std::vector<Rat> d = compute_symmetrizer(cartan);
    std::size_t n = cartan.size();
    std::set<Rat> lengths;
    for (const Root& r : generate_positive(cartan, root_cap)) {
        Rat s(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s += Rat(r.coeffs[i]) * Rat(cartan[i][j]) * d[j] * Rat(r.coeffs[j]);
        lengths.insert(s);
    }
    return lengths;
}

}  // namespace detail

/// Split convention: every root length gets multiplicity 1.
inline RootSystemSpec build_root_system(const std::vector<std::vector<Int>>& cartan,
                                        std::size_t root_cap = kDefaultRootCap) {
    std::map<Rat, int> mult;
    for (const Rat& l : detail::occurring_lengths(cartan, root_cap)) mult[l] = 1;
    return build_root_system(cartan, mult, root_cap);
}

/// Relative (non-split) convention: roots of the shortest length get
/// root-space dimension `short_multiplicity`, every other length gets 1.
inline RootSystemSpec with_short_root_multiplicity(const std::vector<std::vector<Int>>& cartan,
                                                   int short_multiplicity,
                                                   std::size_t root_cap = kDefaultRootCap) {
    if (short_multiplicity < 1)
        throw std::invalid_argument("short root multiplicity must be positive");
    std::set<Rat> lengths = detail::occurring_lengths(cartan, root_cap);
    std::map<Rat, int> mult;
    for (const Rat& l : lengths) mult[l] = (l == *lengths.begin()) ? short_multiplicity : 1;
    return build_root_system(cartan, mult, root_cap);
}

/// The Weyl-invariant symmetric form fixed by the symmetrizer. It agrees
/// with the Killing form in signs, vanishing and ratios, which is all the
/// decay criteria consume.
inline Rat pairing(const RootSystemSpec& spec, const Weight& x, const Weight& y) {
    std::size_t n = spec.rank();
    if (x.rank() != n || y.rank() != n)
        throw std::invalid_argument("pairing: weight rank does not match root system rank");
    Rat s(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x.coeffs[i] == Rat(0)) continue;
        for (std::size_t j = 0; j < n; ++j) s += x.coeffs[i] * spec.form_[i * n + j] * y.coeffs[j];
    }
    return s;
}

inline Rat pairing(const RootSystemSpec& spec, const Root& x, const Root& y) {
    return pairing(spec, to_weight(x), to_weight(y));
}

inline Rat pairing(const RootSystemSpec& spec, const Root& x, const Weight& y) {
    return pairing(spec, to_weight(x), y);
}

/// The unique dominant positive root of an irreducible system.
inline Root highest_root(const RootSystemSpec& spec) {
    if (!spec.is_irreducible())
        throw std::domain_error("highest_root: root system is reducible");
    return spec.positive_roots().back();
}

inline Weight apply_weyl(const RootSystemSpec& spec, const WeylElement& w, const Weight& x) {
    if (w.matrix.n != spec.rank())
        throw std::invalid_argument("apply_weyl: element rank does not match system rank");
    return w.matrix.apply(x);
}

inline Root apply_weyl(const RootSystemSpec& spec, const WeylElement& w, const Root& x) {
    if (w.matrix.n != spec.rank())
        throw std::invalid_argument("apply_weyl: element rank does not match system rank");
    return w.matrix.apply(x);
}

}  // namespace relroot

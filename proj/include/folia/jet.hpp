// Commutator-constrained frame jets.
//
// A Jet holds the normally-ordered iterated frame derivatives of a scalar
// function at the anchor point, up to a truncation order.  Words are strings
// of symbol ids (0..n-1 horizontal, n..n+m-1 vertical), stored sorted
// non-decreasing; comps[w] is the value of E_{w0}(E_{w1}(...(f))) at the
// point, so appending a symbol applies it innermost.  Out-of-order words are
// rewritten through the structure relations, which is where the frame's
// commutators enter every derivative.
//
// Immutable values, pure operations.

#pragma once

#include "folia/rational.hpp"
#include "folia/exterior.hpp"

#include <map>
#include <string>
#include <vector>
#include <stdexcept>
#include <algorithm>

namespace folia {

struct order_exhausted : std::runtime_error {
    order_exhausted() : std::runtime_error("jet order exhausted") {}
};

using Word = std::string; // bytes are symbol ids; SSO keeps short words cheap

// Order of jets that are exact to all orders (constants, scalar literals).
inline constexpr int kExactOrder = 64;

struct Jet {
    int order = kExactOrder;
    std::map<Word, Q> comps;

    Jet() = default;
    explicit Jet(int v) { set(Word{}, Q(v)); }
    explicit Jet(const Q& v) { set(Word{}, v); }
    Jet(const Q& v, int ord) : order(ord) { set(Word{}, v); }

    static Jet constant(const Q& v) { return Jet(v); }
    static Jet zero(int ord = kExactOrder) {
        Jet j;
        j.order = ord;
        return j;
    }

    Q value() const { return at(Word{}); }
    Q at(const Word& w) const {
        auto it = comps.find(w);
        return it == comps.end() ? Q(0) : it->second;
    }
    void set(const Word& w, const Q& v) {
        if (v.is_zero()) comps.erase(w);
        else comps[w] = v;
    }
    bool is_zero() const { return comps.empty(); }
    bool is_constant() const {
        for (const auto& [w, c] : comps)
            if (!w.empty() && !c.is_zero()) return false;
        return true;
    }

    Jet operator+(const Jet& o) const {
        Jet r = *this;
        r.order = std::min(order, o.order);
        for (const auto& [w, c] : o.comps) r.set(w, r.at(w) + c);
        trim(r);
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r = *this;
        r.order = std::min(order, o.order);
        for (const auto& [w, c] : o.comps) r.set(w, r.at(w) - c);
        trim(r);
        return r;
    }
    Jet operator-() const {
        Jet r = *this;
        for (auto& [w, c] : r.comps) c = -c;
        return r;
    }
    Jet operator*(const Q& s) const {
        Jet r;
        r.order = order;
        if (s.is_zero()) return r;
        for (const auto& [w, c] : comps) r.set(w, c * s);
        return r;
    }

    // Leibniz product: (w)(fg) = sum over position subsets S of w of
    // (w_S f)(w_{S^c} g).  Truncates to the smaller order.
    Jet operator*(const Jet& o) const {
        Jet r;
        r.order = std::min(order, o.order);
        // enumerate target words up to r.order as merged supports is wasteful;
        // instead convolve stored components through subset expansion
        for (const auto& [w, c] : comps) {
            if (c.is_zero()) continue;
            for (const auto& [u, e] : o.comps) {
                if (e.is_zero()) continue;
                if (static_cast<int>(w.size() + u.size()) > r.order) continue;
                // all interleavings of w and u that keep each sorted produce
                // the same sorted word; the count is the number of ways to
                // choose positions, which subset expansion double counts.
                // Enumerate distinct merges with multiplicity instead.
                merge_into(r, w, u, c * e);
            }
        }
        trim(r);
        return r;
    }

private:
    static void trim(Jet& r) {
        for (auto it = r.comps.begin(); it != r.comps.end();) {
            if (static_cast<int>(it->first.size()) > r.order || it->second.is_zero())
                it = r.comps.erase(it);
            else
                ++it;
        }
    }

    // Add c * (number of interleavings of w and u giving v) to r[v] for every
    // merged word v.  Both w and u are sorted, so every interleaving is the
    // sorted merge; the multiplicity is the product of binomials over equal
    // symbol runs.
    static void merge_into(Jet& r, const Word& w, const Word& u, const Q& c) {
        Word v;
        v.reserve(w.size() + u.size());
        std::merge(w.begin(), w.end(), u.begin(), u.end(), std::back_inserter(v));
        long long mult = 1;
        size_t i = 0, j = 0;
        size_t k = 0;
        while (k < v.size()) {
            char sym = v[k];
            size_t run = 0, from_w = 0;
            while (k < v.size() && v[k] == sym) { ++run; ++k; }
            while (i < w.size() && w[i] == sym) { ++from_w; ++i; }
            while (j < u.size() && u[j] == sym) { ++j; }
            mult *= binom(run, from_w);
        }
        r.set(v, r.at(v) + c * Q(mult));
    }

    static long long binom(size_t n, size_t k) {
        if (k > n) return 0;
        long long r = 1;
        for (size_t t = 0; t < k; ++t) r = r * static_cast<long long>(n - t) / static_cast<long long>(t + 1);
        return r;
    }
};

template <>
inline bool Form<Jet>::coeff_prunable(const Jet& c) {
    return c.is_zero() && c.order >= kExactOrder;
}

// Structure functions of an adapted orthonormal frame, all jet-valued:
//   [X_i, X_j] = sum_k omega[i][j][k] X_k + sum_l gamma[i][j][l] Z_l
//   [X_i, Z_l] = sum_j sigma[i][l][j] X_j + sum_p beta[i][l][p] Z_p
//   [Z_k, Z_l] = 0 (the vertical frame is chosen commuting)
struct StructureFunctions {
    std::vector<std::vector<std::vector<Jet>>> omega; // [n][n][n]
    std::vector<std::vector<std::vector<Jet>>> gamma; // [n][n][m]
    std::vector<std::vector<std::vector<Jet>>> beta;  // [n][m][m]
    std::vector<std::vector<std::vector<Jet>>> sigma; // [n][m][n]

    static StructureFunctions zeros(int n, int m, int jet_order);
};

inline StructureFunctions StructureFunctions::zeros(int n, int m, int jet_order) {
    StructureFunctions s;
    auto box = [&](int a, int b, int c) {
        return std::vector<std::vector<std::vector<Jet>>>(
            a, std::vector<std::vector<Jet>>(b, std::vector<Jet>(c, Jet::zero(jet_order))));
    };
    s.omega = box(n, n, n);
    s.gamma = box(n, n, m);
    s.beta = box(n, m, m);
    s.sigma = box(n, m, n);
    return s;
}

// The rewrite engine: evaluates arbitrary (possibly unsorted) derivative words
// against a jet, consuming structure-function jets to restore normal order.
// Disabling constraints (the negative-control mode) treats symbols as
// commuting, which must break d^2 = 0 on curved frames.
class FrameAlgebra {
public:
    FrameAlgebra(Dims dims, StructureFunctions structure, bool constraints = true)
        : dims_(dims), sf_(std::move(structure)), constraints_(constraints) {}

    const Dims& dims() const { return dims_; }
    const StructureFunctions& structure() const { return sf_; }
    bool constraints_enabled() const { return constraints_; }

    FrameAlgebra without_constraints() const { return FrameAlgebra(dims_, sf_, false); }

    bool vertical(int s) const { return s >= dims_.n; }

    // Bracket coefficient jet: [E_a, E_b] = sum_e coeff(a,b,e) E_e.
    Jet bracket_coeff(int a, int b, int e) const {
        const int n = dims_.n;
        bool av = vertical(a), bv = vertical(b);
        if (av && bv) return Jet::zero(big_order());
        if (!av && !bv) {
            if (e < n) return sf_.omega[a][b][e];
            return sf_.gamma[a][b][e - n];
        }
        if (!av && bv) {
            if (e < n) return sf_.sigma[a][b - n][e];
            return sf_.beta[a][b - n][e - n];
        }
        // [Z, X] = -[X, Z]
        if (e < n) return -sf_.sigma[b][a - n][e];
        return -sf_.beta[b][a - n][e - n];
    }

    // Jet of the function E_s(f); order drops by one.  Jets of exact order are
    // constants by construction, so their derivative is exactly zero; finite
    // truncations enumerate every normally-ordered component.
    Jet frame_derivative(int s, const Jet& f) const {
        if (f.order < 1) throw order_exhausted();
        if (f.order >= kExactOrder) {
            if (!f.is_constant())
                throw std::logic_error("non-constant jet with exact order");
            return Jet::zero(kExactOrder);
        }
        Jet r;
        r.order = f.order - 1;
        if (f.comps.empty()) return r;
        for (const auto& w : sorted_words(r.order)) {
            Word ws = w;
            ws.push_back(static_cast<char>(s));
            Q v = eval_word(ws, f);
            if (!v.is_zero()) r.set(w, v);
        }
        return r;
    }

    // Value of an arbitrary word applied to f at the point.
    Q eval_word(const Word& u, const Jet& f) const {
        if (static_cast<int>(u.size()) > f.order) throw order_exhausted();
        if (!constraints_) {
            Word s = u;
            std::sort(s.begin(), s.end());
            return f.at(s);
        }
        if (std::is_sorted(u.begin(), u.end())) return f.at(u);
        // first adjacent descent keeps the prefix sorted
        size_t i = 0;
        while (!(u[i] > u[i + 1])) ++i;
        Word swapped = u;
        std::swap(swapped[i], swapped[i + 1]);
        Q acc = eval_word(swapped, f);
        int a = static_cast<unsigned char>(u[i]);
        int b = static_cast<unsigned char>(u[i + 1]);
        Word prefix = u.substr(0, i);
        Word suffix = u.substr(i + 2);
        for (int e = 0; e < dims_.total(); ++e) {
            Jet cj = bracket_coeff(a, b, e);
            if (cj.is_zero()) continue;
            Word tail;
            tail.push_back(static_cast<char>(e));
            tail += suffix;
            acc = acc + leibniz_prefix(prefix, cj, tail, f);
        }
        return acc;
    }

    int big_order() const { return 64; }

    std::vector<Word> sorted_words(int max_len) const {
        std::vector<Word> out{Word{}};
        size_t begin = 0;
        for (int len = 1; len <= max_len; ++len) {
            size_t end = out.size();
            for (size_t k = begin; k < end; ++k) {
                char last = out[k].empty() ? 0 : out[k].back();
                for (int s = last; s < dims_.total(); ++s) {
                    Word w = out[k];
                    w.push_back(static_cast<char>(s));
                    out.push_back(std::move(w));
                }
            }
            begin = end;
        }
        return out;
    }

private:
    // Value of prefix applied to (cjet * tail(f)): Leibniz over the sorted prefix.
    Q leibniz_prefix(const Word& prefix, const Jet& cjet, const Word& tail, const Jet& f) const {
        size_t p = prefix.size();
        Q acc(0);
        for (uint32_t sub = 0; sub < (1u << p); ++sub) {
            Word onto_c, onto_rest;
            for (size_t k = 0; k < p; ++k) {
                if (sub & (1u << k)) onto_c.push_back(prefix[k]);
                else onto_rest.push_back(prefix[k]);
            }
            if (static_cast<int>(onto_c.size()) > cjet.order) throw order_exhausted();
            Q cval = cjet.at(onto_c); // prefix subwords stay sorted
            if (cval.is_zero()) continue;
            Word rest = onto_rest + tail;
            acc = acc + cval * eval_word(rest, f);
        }
        return acc;
    }

    Dims dims_;
    StructureFunctions sf_;
    bool constraints_;
};

// Deterministic bounded random jets: components are num/den with num uniform
// on {-4..4}\{0} and den uniform on {1,2,3}.  Zero-free numerators keep the
// negative control (d^2 with constraints off) loud on every trial.
struct JetSampler {
    uint64_t state;

    explicit JetSampler(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        // splitmix64
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long long uniform(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    Q coeff() {
        long long n = uniform(-4, 3);
        if (n >= 0) ++n; // skip zero
        long long d = uniform(1, 3);
        return Q(n, d);
    }
};

inline Jet random_jet(const FrameAlgebra& fa, int order, uint64_t seed) {
    JetSampler rng(seed);
    Jet j;
    j.order = order;
    for (const auto& w : fa.sorted_words(order)) j.set(w, rng.coeff());
    return j;
}

} // namespace folia

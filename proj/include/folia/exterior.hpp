// Exterior algebra over an anchored orthonormal frame.
//
// Basis monomials are bitmasks over the frame symbols: bits 0..n-1 are the
// horizontal covectors theta_1..theta_n, bits n..n+m-1 the vertical ones
// nu_1..nu_m (same layout for multivectors over X_i / Z_l).  The index order
// inside a monomial is the bit order, horizontal before vertical, so the
// (i,j) bi-grade is a pair of popcounts.  Coefficients form a ring C: exact
// rationals, doubles, or jets.
//
// All values are immutable after construction; every operation is a pure
// function, safe to evaluate concurrently.

#pragma once

#include "folia/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>
#include <stdexcept>
#include <bit>

namespace folia {

// Frame dimensions; the one piece of context the algebra needs.
struct Dims {
    int n = 0; // horizontal rank
    int m = 0; // vertical rank
    int total() const { return n + m; }
    uint64_t h_mask() const { return (n == 64) ? ~0ull : ((1ull << n) - 1); }
    uint64_t v_mask() const { return ((1ull << total()) - 1) & ~h_mask(); }
};

using Mask = uint64_t;

template <class S>
S from_rational(const Rational& q) { return S(q); }
template <>
inline double from_rational<double>(const Rational& q) { return q.to_double(); }

inline int mono_degree(Mask w) { return std::popcount(w); }

inline int mono_hdeg(Mask w, const Dims& d) { return std::popcount(w & d.h_mask()); }
inline int mono_vdeg(Mask w, const Dims& d) { return std::popcount(w & d.v_mask()); }

// Parity of merging two sorted index sets: counts pairs (a in A, b in B) with a > b.
inline int merge_sign(Mask a, Mask b) {
    int inv = 0;
    Mask bb = b;
    while (bb) {
        int bit = std::countr_zero(bb);
        bb &= bb - 1;
        inv += std::popcount(a >> (bit + 1));
    }
    return (inv & 1) ? -1 : 1;
}

// Sign of removing index s from monomial w (s must be present).
inline int removal_sign(Mask w, int s) {
    int below = std::popcount(w & ((1ull << s) - 1));
    return (below & 1) ? -1 : 1;
}

template <class C>
struct Form {
    int degree = 0;
    std::map<Mask, C> coeffs; // absent key = zero coefficient

    Form() = default;
    explicit Form(int deg) : degree(deg) {}

    bool is_zero() const {
        for (const auto& [w, c] : coeffs)
            if (!coeff_is_zero(c)) return false;
        return true;
    }

    void add_term(Mask w, const C& c) {
        if (coeff_prunable(c)) return;
        auto it = coeffs.find(w);
        if (it == coeffs.end()) {
            coeffs.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (coeff_prunable(it->second)) coeffs.erase(it);
        }
    }

    static bool coeff_is_zero(const C& c) { return c.is_zero(); }
    // A zero coefficient may only be dropped when that loses no information.
    // Truncated jets know their own validity order, so a finite-order zero
    // must stay to keep later contributions honestly truncated.
    static bool coeff_prunable(const C& c);
};

template <>
inline bool Form<double>::coeff_is_zero(const double& c) { return c == 0.0; }

template <class C>
inline bool Form<C>::coeff_prunable(const C& c) { return coeff_is_zero(c); }

template <class C>
Form<C> operator+(const Form<C>& a, const Form<C>& b) {
    Form<C> r = a;
    for (const auto& [w, c] : b.coeffs) r.add_term(w, c);
    return r;
}

template <class C>
Form<C> operator-(const Form<C>& a, const Form<C>& b) {
    Form<C> r = a;
    for (const auto& [w, c] : b.coeffs) r.add_term(w, C(0) - c);
    return r;
}

template <class C, class S>
Form<C> scale(const Form<C>& a, const S& s) {
    Form<C> r(a.degree);
    for (const auto& [w, c] : a.coeffs) r.add_term(w, c * s);
    return r;
}

// Exterior product.  Bilinear; overlapping indices annihilate.
template <class C>
Form<C> wedge(const Form<C>& a, const Form<C>& b) {
    Form<C> r(a.degree + b.degree);
    for (const auto& [wa, ca] : a.coeffs) {
        for (const auto& [wb, cb] : b.coeffs) {
            if (wa & wb) continue;
            int sg = merge_sign(wa, wb);
            C c = ca * cb;
            if (sg < 0) c = C(0) - c;
            r.add_term(wa | wb, c);
        }
    }
    return r;
}

// Contraction by the frame vector with symbol index s (0-based over X then Z).
template <class C>
Form<C> contract(int s, const Form<C>& a) {
    Form<C> r(a.degree - 1 < 0 ? 0 : a.degree - 1);
    for (const auto& [w, c] : a.coeffs) {
        if (!(w & (1ull << s))) continue;
        int sg = removal_sign(w, s);
        r.add_term(w & ~(1ull << s), sg < 0 ? C(0) - c : c);
    }
    return r;
}

// Multivectors share the representation: same masks over X_1..X_n, Z_1..Z_m.
template <class C>
using MultiVector = Form<C>;

// One homogeneous term alpha (x) chi with a coefficient; a MixedTensor is a sum.
template <class C>
struct MixedTerm {
    Mask fmask = 0; // covector factor, grade i
    Mask vmask = 0; // multivector factor, grade j
    C weight = C(0);
};

template <class C>
struct MixedTensor {
    std::vector<MixedTerm<C>> terms;

    void add(Mask f, Mask v, const C& w) {
        if (Form<C>::coeff_is_zero(w)) return;
        terms.push_back(MixedTerm<C>{f, v, w});
    }
    void add(const MixedTensor& o) {
        for (const auto& t : o.terms) terms.push_back(t);
    }
    MixedTensor scaled(const C& s) const {
        MixedTensor r;
        for (const auto& t : terms) r.add(t.fmask, t.vmask, t.weight * s);
        return r;
    }
    MixedTensor operator-(const MixedTensor& o) const {
        MixedTensor r = *this;
        for (const auto& t : o.terms) r.add(t.fmask, t.vmask, C(0) - t.weight);
        return r;
    }
    // Collapse duplicate (fmask,vmask) pairs; drops exact zeros.
    MixedTensor normalized() const {
        std::map<std::pair<Mask, Mask>, C> acc;
        for (const auto& t : terms) {
            auto key = std::make_pair(t.fmask, t.vmask);
            auto it = acc.find(key);
            if (it == acc.end()) acc.emplace(key, t.weight);
            else it->second = it->second + t.weight;
        }
        MixedTensor r;
        for (const auto& [k, w] : acc) r.add(k.first, k.second, w);
        return r;
    }
};

// C_nu in expanded monomial form: for a term f * alpha (x) (Y_1 ^ ... ^ Y_j),
// apply the contractions iota_{Y_1} first (ascending symbol order), then wedge
// alpha on the left.
template <class C>
Form<C> apply_C(const MixedTensor<C>& nu, const Form<C>& a) {
    Form<C> out(a.degree);
    bool degree_set = false;
    for (const auto& t : nu.terms) {
        int deg = a.degree + mono_degree(t.fmask) - mono_degree(t.vmask);
        if (deg < 0) continue;
        Form<C> cur = a;
        Mask v = t.vmask;
        while (v && !cur.coeffs.empty()) {
            int s = std::countr_zero(v);
            v &= v - 1;
            cur = contract(s, cur);
        }
        if (v) cur.coeffs.clear();
        Form<C> alpha(mono_degree(t.fmask));
        alpha.add_term(t.fmask, t.weight);
        Form<C> piece = wedge(alpha, cur);
        if (!degree_set && !piece.coeffs.empty()) {
            out.degree = deg;
            degree_set = true;
        }
        for (const auto& [w, c] : piece.coeffs) out.add_term(w, c);
    }
    return out;
}

// iota_X on the covector factor of each term; used by the commutation rule
// C_X C_nu = C_{iota_X nu} + (-1)^{i-j} C_nu C_X.
template <class C>
MixedTensor<C> contract_mixed(int s, const MixedTensor<C>& nu) {
    MixedTensor<C> r;
    for (const auto& t : nu.terms) {
        if (!(t.fmask & (1ull << s))) continue;
        int sg = removal_sign(t.fmask, s);
        r.add(t.fmask & ~(1ull << s), t.vmask, sg < 0 ? C(0) - t.weight : t.weight);
    }
    return r;
}

// (alpha (x) chi)* = flat(chi) (x) sharp(alpha); orthonormal frame, so the
// musical maps are identity on index sets.
template <class C>
MixedTensor<C> star_involution(const MixedTensor<C>& nu) {
    MixedTensor<C> r;
    for (const auto& t : nu.terms) r.add(t.vmask, t.fmask, t.weight);
    return r;
}

// g_eps inner product: monomials orthogonal, each weighted eps^j by vertical grade.
template <class S>
S inner_eps(const Form<S>& a, const Form<S>& b, const Dims& d, const Epsilon& eps) {
    // the zero form belongs to every degree
    if (a.degree != b.degree && !a.coeffs.empty() && !b.coeffs.empty())
        throw std::invalid_argument("inner_eps: degree mismatch");
    S acc(0);
    for (const auto& [w, ca] : a.coeffs) {
        auto it = b.coeffs.find(w);
        if (it == b.coeffs.end()) continue;
        S term = ca * it->second;
        int j = mono_vdeg(w, d);
        if (!eps.infinite) {
            S wgt(1);
            for (int k = 0; k < j; ++k) wgt = wgt * from_rational<S>(eps.value);
            term = term * wgt;
        } else if (j > 0) {
            // adiabatic limit weights are only used with finite eps; callers
            // needing the plain g product pass eps = 1
            throw std::invalid_argument("inner_eps: infinite eps has no inner product");
        }
        acc = acc + term;
    }
    return acc;
}

template <class S>
S inner_g(const Form<S>& a, const Form<S>& b, const Dims& d) {
    return inner_eps(a, b, d, Epsilon::of(Rational(1)));
}

// Splits a form into its (i,j) bi-graded components, keyed by the pair.
template <class C>
std::map<std::pair<int, int>, Form<C>> bigrade_split(const Form<C>& a, const Dims& d) {
    std::map<std::pair<int, int>, Form<C>> out;
    for (const auto& [w, c] : a.coeffs) {
        auto key = std::make_pair(mono_hdeg(w, d), mono_vdeg(w, d));
        auto it = out.find(key);
        if (it == out.end()) {
            Form<C> f(a.degree);
            f.add_term(w, c);
            out.emplace(key, std::move(f));
        } else {
            it->second.add_term(w, c);
        }
    }
    return out;
}

// All degree-k basis monomials for the given dims, ascending mask order.
inline std::vector<Mask> basis_monomials(int k, const Dims& d) {
    std::vector<Mask> out;
    Mask top = 1ull << d.total();
    for (Mask w = 0; w < top; ++w)
        if (std::popcount(w) == k) out.push_back(w);
    return out;
}

} // namespace folia

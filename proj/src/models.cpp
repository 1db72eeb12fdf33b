#include "folia/models.hpp"

#include <array>
#include <map>

namespace folia {

namespace {

Jet cjet(long long v) { return Jet(Q(v)); }

FrameSpec heisenberg(int n, bool compact) {
    FrameSpec s;
    s.name = n == 2 ? "heisenberg3" : "heisenberg5";
    s.n = n;
    s.m = 1;
    s.structure = StructureFunctions::zeros(n, 1, kExactOrder);
    // [X_1,X_2] = Z (and [X_3,X_4] = Z for the five-dimensional group)
    for (int i = 0; i + 1 < n; i += 2) {
        s.structure.gamma[i][i + 1][0] = cjet(1);
        s.structure.gamma[i + 1][i][0] = cjet(-1);
    }
    s.homogeneous = true;
    s.compact_claim = compact;
    return s;
}

FrameSpec hopf_s3() {
    // su(2) frame: [e1,e2] = 2e3, [e2,e3] = 2e1, [e3,e1] = 2e2, e3 vertical.
    FrameSpec s;
    s.name = "hopf_s3";
    s.n = 2;
    s.m = 1;
    s.structure = StructureFunctions::zeros(2, 1, kExactOrder);
    s.structure.gamma[0][1][0] = cjet(2);
    s.structure.gamma[1][0][0] = cjet(-2);
    // [X_1, Z] = [e1,e3] = -2 e2, [X_2, Z] = [e2,e3] = 2 e1
    s.structure.sigma[0][0][1] = cjet(-2);
    s.structure.sigma[1][0][0] = cjet(2);
    s.homogeneous = true;
    s.compact_claim = true;
    return s;
}

// Multivariate polynomials over Q in x_1..x_4, exponent-vector keyed.  Only
// used here to turn the round-sphere conformal frame into exact jets.
struct Poly {
    std::map<std::array<int, 4>, Q> terms;

    static Poly constant(const Q& c) {
        Poly p;
        if (!c.is_zero()) p.terms[{0, 0, 0, 0}] = c;
        return p;
    }
    static Poly var(int i) {
        Poly p;
        std::array<int, 4> e{0, 0, 0, 0};
        e[i] = 1;
        p.terms[e] = Q(1);
        return p;
    }
    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [e, c] : o.terms) {
            auto it = r.terms.find(e);
            if (it == r.terms.end()) r.terms[e] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                std::array<int, 4> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
                auto it = r.terms.find(e);
                if (it == r.terms.end()) r.terms[e] = c1 * c2;
                else {
                    it->second += c1 * c2;
                    if (it->second.is_zero()) r.terms.erase(it);
                }
            }
        return r;
    }
    Poly d(int i) const {
        Poly r;
        for (const auto& [e, c] : terms) {
            if (e[i] == 0) continue;
            std::array<int, 4> f = e;
            f[i] -= 1;
            r.terms[f] = c * Q(e[i]);
        }
        return r;
    }
    Q at_zero() const {
        auto it = terms.find({0, 0, 0, 0});
        return it == terms.end() ? Q(0) : it->second;
    }
    bool zero() const { return terms.empty(); }
};

// Jet of a polynomial at the origin for the conformal frame F_i = mu d_i on a
// round-sphere patch: horizontal frame derivatives are mu * d/dx_i, vertical
// derivatives vanish (nothing depends on the fibre coordinate).  A stored word
// applies its last symbol innermost, so sorted words grow by prepending the
// outermost derivative.
Jet poly_jet(const Poly& p, const Poly& mu, int order, int n_sym_total, int n_hor) {
    Jet j;
    j.order = order;
    std::map<Word, Poly> level{{Word{}, p}};
    for (int len = 0; len <= order; ++len) {
        std::map<Word, Poly> next;
        for (const auto& [w, poly] : level) {
            Q v = poly.at_zero();
            if (!v.is_zero()) j.set(w, v);
            if (len == order) continue;
            char first = w.empty() ? static_cast<char>(n_sym_total - 1) : w.front();
            for (int s = 0; s <= static_cast<int>(first); ++s) {
                Word ws;
                ws.push_back(static_cast<char>(s));
                ws += w;
                if (s >= n_hor) {
                    // vertical symbol kills everything t-independent
                    next.emplace(std::move(ws), Poly{});
                } else {
                    next.emplace(std::move(ws), mu * poly.d(s));
                }
            }
        }
        level = std::move(next);
    }
    return j;
}

// A compact five-dimensional model with one-dimensional fibres and strictly
// positive transverse curvature operator: the transverse geometry is a round
// S^4 germ carried by the conformal frame F_i = mu d_i, mu = 1 + |x|^2/4, and
// the fibre twist comes from a potential with dA(0) nondegenerate.  The frame
// is basic, so [X_i, Z] = 0 and the structure functions are honest jets.
FrameSpec hopf_s5() {
    const int n = 4, m = 1, order = 4;
    FrameSpec s;
    s.name = "hopf_s5";
    s.n = n;
    s.m = m;
    s.structure = StructureFunctions::zeros(n, m, order);

    Poly mu = Poly::constant(Q(1)) +
              (Poly::var(0) * Poly::var(0) + Poly::var(1) * Poly::var(1) +
               Poly::var(2) * Poly::var(2) + Poly::var(3) * Poly::var(3)) *
                  Poly::constant(Q(1, 4));

    // [F_i, F_j] = (d_i mu) F_j - (d_j mu) F_i with d_i mu = x_i / 2
    auto dmu = [&](int i) { return Poly::var(i) * Poly::constant(Q(1, 2)); };

    // A = (s0/2)(x1 dx2 - x2 dx1 + x3 dx4 - x4 dx3) with s0 = -2, so that
    // gamma_12 = gamma_34 = 2 at the origin; dA = s0 (dx1^dx2 + dx3^dx4) and
    // gamma_ij = -dA(F_i,F_j) = -s0 mu^2 sym_ij.
    const Q s0 = Q(-2);
    std::array<std::array<Q, 4>, 4> sym{}; // coordinate symplectic pattern
    sym[0][1] = Q(1);
    sym[1][0] = Q(-1);
    sym[2][3] = Q(1);
    sym[3][2] = Q(-1);

    Poly mu2 = mu * mu;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int k = 0; k < n; ++k) {
                Poly c; // omega_ij^k
                if (k == j) c = c + dmu(i);
                if (k == i) c = c - dmu(j);
                if (!c.zero())
                    s.structure.omega[i][j][k] = poly_jet(c, mu, order, n + m, n);
            }
            if (!sym[i][j].is_zero()) {
                Poly g = mu2 * Poly::constant(-s0 * sym[i][j]);
                s.structure.gamma[i][j][0] = poly_jet(g, mu, order, n + m, n);
            }
        }

    s.homogeneous = false;
    s.compact_claim = true;
    return s;
}

} // namespace

std::vector<std::string> builtin_model_names() {
    return {"heisenberg3", "heisenberg5", "hopf_s3", "hopf_s5", "berger_s3",
            "heisenberg3_nilmanifold", "heisenberg5_nilmanifold"};
}

FrameSpec builtin_model(const std::string& name) {
    if (name == "heisenberg3") return heisenberg(2, false);
    if (name == "heisenberg5") return heisenberg(4, false);
    if (name == "heisenberg3_nilmanifold") {
        FrameSpec s = heisenberg(2, true);
        s.name = "heisenberg3_nilmanifold";
        return s;
    }
    if (name == "heisenberg5_nilmanifold") {
        FrameSpec s = heisenberg(4, true);
        s.name = "heisenberg5_nilmanifold";
        return s;
    }
    if (name == "hopf_s3") return hopf_s3();
    if (name == "berger_s3") {
        // the canonical variation lives in the operators, not the frame
        FrameSpec s = hopf_s3();
        s.name = "berger_s3";
        return s;
    }
    if (name == "hopf_s5") return hopf_s5();
    throw unknown_model(name);
}

namespace fixtures {

FrameSpec non_yang_mills() {
    FrameSpec s = builtin_model("heisenberg3");
    s.name = "non_yang_mills_fixture";
    s.homogeneous = false;
    s.compact_claim = false;
    const int ord = 5;
    // gamma_12 = 1 + x_1 as a jet: constant part 1, X_1-derivative 1.
    Jet g = Jet::zero(ord);
    g.set(Word{}, Q(1));
    g.set(Word(1, static_cast<char>(0)), Q(1));
    s.structure.gamma[0][1][0] = g;
    s.structure.gamma[1][0][0] = -g;
    return s;
}

FrameSpec m2_nonconstant() {
    // n = 3, m = 2 with a nonconstant vertical rotation rate: [X_1, Z_1] = b Z_2,
    // [X_1, Z_2] = -b Z_1 for b = x_2.  The Jacobi identity then forces linear
    // vertical jets on gamma, and the torsion is not vertically parallel.
    FrameSpec s;
    s.name = "m2_fixture";
    s.n = 3;
    s.m = 2;
    const int ord = 4;
    s.structure = StructureFunctions::zeros(3, 2, ord);

    Jet b = Jet::zero(ord);
    b.set(Word(1, static_cast<char>(1)), Q(1)); // b = x_2
    s.structure.beta[0][0][1] = b;
    s.structure.beta[0][1][0] = -b;

    // gamma_12^1 = 1 - t_2, gamma_12^2 = t_1, gamma_13^2 = 1 in fibre-linear jets
    Jet g11 = Jet::zero(ord);
    g11.set(Word{}, Q(1));
    g11.set(Word(1, static_cast<char>(4)), Q(-1)); // z_2 component
    Jet g12 = Jet::zero(ord);
    g12.set(Word(1, static_cast<char>(3)), Q(1)); // z_1 component
    s.structure.gamma[0][1][0] = g11;
    s.structure.gamma[1][0][0] = -g11;
    s.structure.gamma[0][1][1] = g12;
    s.structure.gamma[1][0][1] = -g12;
    Jet g2 = Jet::zero(ord);
    g2.set(Word{}, Q(1));
    s.structure.gamma[0][2][1] = g2;
    s.structure.gamma[2][0][1] = -g2;
    s.homogeneous = false;
    s.compact_claim = false;
    return s;
}

} // namespace fixtures

} // namespace folia

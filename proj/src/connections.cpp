#include "folia/connections.hpp"

namespace folia {

ConnectionCoeffs bott_connection(const FrameSpec& spec) {
    const int n = spec.n, m = spec.m, t = n + m;
    ConnectionCoeffs conn = ConnectionCoeffs::zeros(t);
    const Q half(1, 2);

    // H-H: Koszul of the Levi-Civita connection in the orthonormal frame,
    // then pi_H; only omega survives the projection.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Jet v = (spec.structure.omega[i][j][k] - spec.structure.omega[j][k][i] +
                         spec.structure.omega[k][i][j]) *
                        half;
                conn.coeff[i][j][k] = v;
            }

    // V input, H output: pi_H [Z_l, X_i] = -sigma[i][l][.]
    for (int l = 0; l < m; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                conn.coeff[n + l][i][j] = -spec.structure.sigma[i][l][j];

    // H input, V output: pi_V [X_i, Z_l] = beta[i][l][.]
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < m; ++l)
            for (int p = 0; p < m; ++p)
                conn.coeff[i][n + l][n + p] = spec.structure.beta[i][l][p];

    // V-V: Koszul then pi_V; vanishes because the vertical frame commutes and
    // mixed brackets have no [Z,Z'] pairing against verticals.
    return conn;
}

TorsionTensor torsion(const ConnectionCoeffs& conn, const FrameSpec& spec) {
    const int t = spec.n + spec.m;
    FrameAlgebra fa = spec.algebra();
    TorsionTensor tt = TorsionTensor::zeros(t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int c = 0; c < t; ++c)
                tt.comp[a][b][c] = conn.at(a, b, c) - conn.at(b, a, c) - fa.bracket_coeff(a, b, c);
    return tt;
}

JMap j_map(const FrameSpec& spec) {
    const int n = spec.n, m = spec.m;
    TorsionTensor t = torsion(bott_connection(spec), spec);
    JMap j;
    j.comp.assign(m, std::vector<std::vector<Jet>>(n, std::vector<Jet>(n, Jet::zero())));
    // <J_{Z_l} X_i, X_j> = <Z_l, T(X_i, X_j)>
    for (int l = 0; l < m; ++l)
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
                j.comp[l][i][jj] = t.at(i, jj, n + l);
    return j;
}

ConnectionCoeffs epsilon_connection(const FrameSpec& spec, const Epsilon& eps) {
    const int n = spec.n, m = spec.m, t = n + m;
    ConnectionCoeffs bott = bott_connection(spec);
    TorsionTensor tt = torsion(bott, spec);
    JMap j = j_map(spec);
    Q inv = eps.inv();
    ConnectionCoeffs out = ConnectionCoeffs::zeros(t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int c = 0; c < t; ++c) {
                Jet v = bott.at(a, b, c) - tt.at(a, b, c);
                // + (1/eps) J_{E_b} E_a: nonzero only for b vertical, a,c horizontal
                if (b >= n && a < n && c < n) v = v + j.comp[b - n][a][c] * inv;
                out.coeff[a][b][c] = v;
            }
    return out;
}

ConnectionCoeffs adjoint_connection(const FrameSpec& spec, const Epsilon& eps) {
    const int n = spec.n, m = spec.m, t = n + m;
    ConnectionCoeffs bott = bott_connection(spec);
    JMap j = j_map(spec);
    Q inv = eps.inv();
    ConnectionCoeffs out = ConnectionCoeffs::zeros(t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int c = 0; c < t; ++c) {
                Jet v = bott.at(a, b, c);
                // + (1/eps) J_{E_a} E_b: nonzero only for a vertical, b,c horizontal
                if (a >= n && b < n && c < n) v = v + j.comp[a - n][b][c] * inv;
                out.coeff[a][b][c] = v;
            }
    return out;
}

std::vector<Jet> nabla_tensor12(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                                const TorsionTensor& t, int a, int b, int c) {
    const int total = fa.dims().total();
    std::vector<Jet> out(total, Jet::zero());
    for (int d = 0; d < total; ++d) {
        Jet v = fa.frame_derivative(a, t.at(b, c, d));
        for (int e = 0; e < total; ++e) {
            v = v + conn.at(a, e, d) * t.at(b, c, e);
            v = v - conn.at(a, b, e) * t.at(e, c, d);
            v = v - conn.at(a, c, e) * t.at(b, e, d);
        }
        out[d] = v;
    }
    return out;
}

Tensor4 nabla_tensor12_table(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                             const TorsionTensor& t) {
    const int total = fa.dims().total();
    Tensor4 out(total, std::vector<std::vector<std::vector<Jet>>>(
                           total, std::vector<std::vector<Jet>>(
                                      total, std::vector<Jet>(total, Jet::zero()))));
    for (int a = 0; a < total; ++a)
        for (int b = 0; b < total; ++b)
            for (int c = 0; c < total; ++c) {
                std::vector<Jet> v = nabla_tensor12(fa, conn, t, a, b, c);
                for (int d = 0; d < total; ++d) out[a][b][c][d] = v[d];
            }
    return out;
}

DivTorsion horizontal_divergence_torsion(const FrameSpec& spec) {
    const int n = spec.n, t = n + spec.m;
    FrameAlgebra fa = spec.algebra();
    ConnectionCoeffs conn = bott_connection(spec);
    TorsionTensor tt = torsion(conn, spec);
    DivTorsion out;
    out.comp.assign(n, std::vector<Jet>(t, Jet::zero()));
    for (int i = 0; i < n; ++i) {
        for (int jj = 0; jj < n; ++jj) {
            std::vector<Jet> nt = nabla_tensor12(fa, conn, tt, jj, jj, i);
            for (int c = 0; c < t; ++c) out.comp[i][c] = out.comp[i][c] - nt[c];
        }
    }
    return out;
}

bool yang_mills(const FrameSpec& spec) {
    DivTorsion d = horizontal_divergence_torsion(spec);
    for (const auto& row : d.comp)
        for (const auto& j : row)
            if (!j.value().is_zero()) return false;
    return true;
}

BottPackage bott_package(const FrameSpec& spec) {
    BottPackage p{bott_connection(spec), TorsionTensor{}, j_map(spec), DivTorsion{}};
    p.tor = torsion(p.conn, spec);
    p.div_t = horizontal_divergence_torsion(spec);
    return p;
}

FormField covariant_derivative(const FrameAlgebra& fa, const ConnectionCoeffs& conn, int a,
                               const FormField& f) {
    const int total = fa.dims().total();
    FormField out(f.degree);
    for (const auto& [w, c] : f.coeffs) {
        out.add_term(w, fa.frame_derivative(a, c));
        // nabla_a theta^s = -sum_t Gamma_{a t}^{s} theta^t, applied per factor
        Mask bits = w;
        while (bits) {
            int s = std::countr_zero(bits);
            bits &= bits - 1;
            Mask rest = w & ~(1ull << s);
            int sg_rm = removal_sign(w, s);
            for (int tt = 0; tt < total; ++tt) {
                if (rest & (1ull << tt)) continue;
                const Jet& g = conn.at(a, tt, s);
                if (g.is_zero()) continue;
                int sg = sg_rm * merge_sign(1ull << tt, rest);
                Jet v = c * g;
                if (sg > 0) v = -v;
                out.add_term(rest | (1ull << tt), v);
            }
        }
    }
    return out;
}

FormField covariant_derivative(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                               const std::vector<Jet>& dir, const FormField& f) {
    FormField out(f.degree);
    for (int a = 0; a < fa.dims().total(); ++a) {
        if (dir[a].is_zero()) continue;
        FormField da = covariant_derivative(fa, conn, a, f);
        for (const auto& [w, c] : da.coeffs) out.add_term(w, dir[a] * c);
    }
    return out;
}

MultiVector<Jet> covariant_derivative_vecfield(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                                               int a, const MultiVector<Jet>& f) {
    const int total = fa.dims().total();
    MultiVector<Jet> out(f.degree);
    for (const auto& [w, c] : f.coeffs) {
        out.add_term(w, fa.frame_derivative(a, c));
        Mask bits = w;
        while (bits) {
            int s = std::countr_zero(bits);
            bits &= bits - 1;
            Mask rest = w & ~(1ull << s);
            int sg_rm = removal_sign(w, s);
            for (int tt = 0; tt < total; ++tt) {
                if (rest & (1ull << tt)) continue;
                const Jet& g = conn.at(a, s, tt); // nabla_a E_s = +Gamma_{a s}^t E_t
                if (g.is_zero()) continue;
                int sg = sg_rm * merge_sign(1ull << tt, rest);
                Jet v = c * g;
                if (sg < 0) v = -v;
                out.add_term(rest | (1ull << tt), v);
            }
        }
    }
    return out;
}

MixedJet covariant_derivative_mixed(const FrameAlgebra& fa, const ConnectionCoeffs& conn, int a,
                                    const MixedJet& nu) {
    MixedJet out;
    for (const auto& term : nu.terms) {
        FormField alpha(mono_degree(term.fmask));
        alpha.add_term(term.fmask, term.weight);
        FormField dalpha = covariant_derivative(fa, conn, a, alpha);
        for (const auto& [w, c] : dalpha.coeffs) out.add(w, term.vmask, c);

        // multivector factor with unit coefficient: only connection terms remain,
        // the weight's own derivative was taken with the form factor above
        MultiVector<Jet> chi(mono_degree(term.vmask));
        chi.add_term(term.vmask, Jet(1));
        MultiVector<Jet> dchi = covariant_derivative_vecfield(fa, conn, a, chi);
        for (const auto& [w, c] : dchi.coeffs) out.add(term.fmask, w, term.weight * c);
    }
    return out.normalized();
}

Jet metric_residual_g(const ConnectionCoeffs& conn, int a, int b, int c) {
    return conn.at(a, b, c) + conn.at(a, c, b);
}

Jet metric_residual_geps(const ConnectionCoeffs& conn, const Dims& d, const Epsilon& eps, int a,
                         int b, int c) {
    Q wb = (b >= d.n && !eps.infinite) ? Q(1) / eps.value : Q(1);
    Q wc = (c >= d.n && !eps.infinite) ? Q(1) / eps.value : Q(1);
    return conn.at(a, b, c) * wc + conn.at(a, c, b) * wb;
}

} // namespace folia

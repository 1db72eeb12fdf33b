#include "folia/laplacians.hpp"

namespace folia {

namespace {

// Psi_(1,1) element of a vector-bundle map given by M[in][out] on the frame,
// acting on covectors through the orthonormal duality.
MixedJet endo_element(const std::vector<std::vector<Jet>>& mat) {
    MixedJet nu;
    int rows = static_cast<int>(mat.size());
    for (int in = 0; in < rows; ++in)
        for (int out = 0; out < static_cast<int>(mat[in].size()); ++out) {
            if (mat[in][out].is_zero()) continue;
            nu.add(Mask(1) << out, Mask(1) << in, mat[in][out]);
        }
    return nu;
}

Q inner_h_values(const Form<Q>& a, const Form<Q>& b, const Dims& d) {
    Q acc(0);
    for (const auto& [w, c] : a.coeffs) {
        if (w & d.v_mask()) continue;
        auto it = b.coeffs.find(w);
        if (it != b.coeffs.end()) acc += c * it->second;
    }
    return acc;
}

Q inner_v_values(const Form<Q>& a, const Form<Q>& b, const Dims& d) {
    Q acc(0);
    for (const auto& [w, c] : a.coeffs) {
        if (w & d.h_mask()) continue;
        auto it = b.coeffs.find(w);
        if (it != b.coeffs.end()) acc += c * it->second;
    }
    return acc;
}

} // namespace

LaplacianContext::LaplacianContext(const FrameSpec& s, const Epsilon& e)
    : spec(s), eps(e), fa(s.algebra()), bott(bott_package(s)),
      eps_conn(epsilon_connection(s, e)), ric_eps(ric_terms(s, e)),
      ric_h(ric_terms(s, Epsilon::inf())) {
    const int t = spec.n + spec.m;
    for (int a = 0; a < t; ++a)
        for (int b = a + 1; b < t; ++b) {
            Mask fm = (Mask(1) << a) | (Mask(1) << b);
            for (int c = 0; c < t; ++c) {
                const Jet& v = bott.tor.at(a, b, c);
                if (!v.is_zero()) torsion_element.add(fm, Mask(1) << c, v);
            }
        }
    torsion_element = torsion_element.normalized();
}

FormField exterior_derivative(const LaplacianContext& ctx, const FormField& a) {
    FormField out = apply_C(ctx.torsion_element, a);
    out.degree = a.degree + 1;
    const int t = ctx.fa.dims().total();
    for (int s = 0; s < t; ++s) {
        FormField da = covariant_derivative(ctx.fa, ctx.bott.conn, s, a);
        for (const auto& [w, c] : da.coeffs) {
            if (w & (Mask(1) << s)) continue;
            int sg = merge_sign(Mask(1) << s, w);
            out.add_term(w | (Mask(1) << s), sg < 0 ? -c : c);
        }
    }
    return out;
}

FormField codifferential(const LaplacianContext& ctx, const FormField& a) {
    FormField out(a.degree > 0 ? a.degree - 1 : 0);
    for (int i = 0; i < ctx.spec.n; ++i) {
        FormField da = covariant_derivative(ctx.fa, ctx.eps_conn, i, a);
        FormField ia = contract(i, da);
        for (const auto& [w, c] : ia.coeffs) out.add_term(w, -c);
    }
    return out;
}

FormField hodge_laplacian(const LaplacianContext& ctx, const FormField& a) {
    FormField dd = codifferential(ctx, exterior_derivative(ctx, a));
    FormField sd = exterior_derivative(ctx, codifferential(ctx, a));
    FormField out(a.degree);
    for (const auto& [w, c] : dd.coeffs) out.add_term(w, -c);
    for (const auto& [w, c] : sd.coeffs) out.add_term(w, -c);
    return out;
}

FormField connection_laplacian(const LaplacianContext& ctx, const FormField& a) {
    const int t = ctx.fa.dims().total();
    FormField out(a.degree);
    for (int i = 0; i < ctx.spec.n; ++i) {
        FormField dd = covariant_derivative(ctx.fa, ctx.eps_conn, i,
                                            covariant_derivative(ctx.fa, ctx.eps_conn, i, a));
        for (const auto& [w, c] : dd.coeffs) out.add_term(w, c);
        std::vector<Jet> dir(t, Jet::zero());
        for (int c2 = 0; c2 < t; ++c2) dir[c2] = ctx.eps_conn.at(i, i, c2);
        FormField corr = covariant_derivative(ctx.fa, ctx.eps_conn, dir, a);
        for (const auto& [w, c] : corr.coeffs) out.add_term(w, -c);
    }
    return out;
}

FormField bochner_laplacian(const LaplacianContext& ctx, const FormField& a) {
    FormField out = connection_laplacian(ctx, a);
    FormField corr = apply_C(ctx.ric_eps.total, a);
    for (const auto& [w, c] : corr.coeffs) out.add_term(w, -c);
    return out;
}

FormField exterior_derivative(const FrameSpec& spec, const FormField& a) {
    LaplacianContext ctx(spec, Epsilon::of(Q(1)));
    return exterior_derivative(ctx, a);
}
FormField hodge_laplacian(const FrameSpec& spec, const Epsilon& eps, const FormField& a) {
    LaplacianContext ctx(spec, eps);
    return hodge_laplacian(ctx, a);
}
FormField bochner_laplacian(const FrameSpec& spec, const Epsilon& eps, const FormField& a) {
    LaplacianContext ctx(spec, eps);
    return bochner_laplacian(ctx, a);
}

FormField commutation_check(const LaplacianContext& ctx, const Jet& f) {
    if (f.order < 3) throw order_exhausted();
    FormField ff(0);
    ff.add_term(0, f);
    FormField lap_f = hodge_laplacian(ctx, ff);
    FormField lhs = exterior_derivative(ctx, lap_f);
    FormField rhs = hodge_laplacian(ctx, exterior_derivative(ctx, ff));
    FormField out(1);
    for (const auto& [w, c] : lhs.coeffs) out.add_term(w, c);
    for (const auto& [w, c] : rhs.coeffs) out.add_term(w, -c);
    return out;
}

FormField oneform_formula_residual(const LaplacianContext& ctx, const FormField& a) {
    const int n = ctx.spec.n, m = ctx.spec.m, t = n + m;
    Q inv = ctx.eps.inv();
    FormField rhs = connection_laplacian(ctx, a);

    std::vector<std::vector<Jet>> divmat(t, std::vector<Jet>(t, Jet::zero()));
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < t; ++c) divmat[b][c] = ctx.bott.div_t.comp[b][c];
    FormField dterm = apply_C(endo_element(divmat), a);
    for (const auto& [w, c] : dterm.coeffs) rhs.add_term(w, c * inv);

    std::vector<std::vector<Jet>> j2(t, std::vector<Jet>(t, Jet::zero()));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Jet acc = Jet::zero();
            for (int l = 0; l < m; ++l)
                for (int k = 0; k < n; ++k)
                    acc = acc + ctx.bott.j.comp[l][x][k] * ctx.bott.j.comp[l][k][y];
            j2[x][y] = acc;
        }
    FormField jterm = apply_C(endo_element(j2), a);
    for (const auto& [w, c] : jterm.coeffs) rhs.add_term(w, -(c * inv));

    FormField rterm = apply_C(ctx.ric_h.total, a);
    for (const auto& [w, c] : rterm.coeffs) rhs.add_term(w, -c);

    FormField lhs = hodge_laplacian(ctx, a);
    FormField out(a.degree);
    for (const auto& [w, c] : lhs.coeffs) out.add_term(w, c);
    for (const auto& [w, c] : rhs.coeffs) out.add_term(w, -c);
    return out;
}

Form<Q> value_form(const FormField& a) {
    Form<Q> out(a.degree);
    for (const auto& [w, c] : a.coeffs) out.add_term(w, c.value());
    return out;
}

BochnerReport bochner_inequality_check(const LaplacianContext& ctx, const FormField& a) {
    const Dims d = ctx.fa.dims();
    const int n = d.n, m = d.m;
    Q epsv = ctx.eps.infinite ? Q(1) : ctx.eps.value; // finite eps expected here
    if (ctx.eps.infinite)
        throw std::invalid_argument("bochner inequality check needs finite eps");

    // |a|^2_eps as a function jet
    Jet norm2 = Jet::zero(0);
    {
        Jet acc(0);
        for (const auto& [w, c] : a.coeffs) {
            Q wgt(1);
            int j = mono_vdeg(w, d);
            for (int k = 0; k < j; ++k) wgt *= epsv;
            acc = acc + c * c * wgt;
        }
        norm2 = acc;
    }
    FormField nf(0);
    nf.add_term(0, norm2);
    BochnerReport rep{};
    FormField lap_norm = hodge_laplacian(ctx, nf);
    auto it0 = lap_norm.coeffs.find(0);
    rep.lhs = it0 == lap_norm.coeffs.end() ? Q(0) : it0->second.value() * Q(1, 2);

    Form<Q> av = value_form(a);
    Form<Q> lap = value_form(hodge_laplacian(ctx, a));
    rep.lhs -= inner_eps(lap, av, d, ctx.eps);

    rep.grad_sq = Q(0);
    for (int i = 0; i < n; ++i) {
        Form<Q> g = value_form(covariant_derivative(ctx.fa, ctx.eps_conn, i, a));
        rep.grad_sq += inner_eps(g, g, d, ctx.eps);
    }

    rep.ric_term = inner_h_values(value_form(apply_C(ctx.ric_h.total, a)), av, d);

    std::vector<std::vector<Jet>> divmat(n + m, std::vector<Jet>(n + m, Jet::zero()));
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n + m; ++c) divmat[b][c] = ctx.bott.div_t.comp[b][c];
    rep.div_term = inner_v_values(value_form(apply_C(endo_element(divmat), a)), av, d);

    std::vector<std::vector<Jet>> j2(n + m, std::vector<Jet>(n + m, Jet::zero()));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Jet acc = Jet::zero();
            for (int l = 0; l < m; ++l)
                for (int k = 0; k < n; ++k)
                    acc = acc + ctx.bott.j.comp[l][x][k] * ctx.bott.j.comp[l][k][y];
            j2[x][y] = acc;
        }
    rep.j_term = inner_h_values(value_form(apply_C(endo_element(j2), a)), av, d) * ctx.eps.inv();

    rep.equality_residual = rep.lhs - (rep.grad_sq + rep.ric_term - rep.div_term + rep.j_term);

    // -1/4 Tr_H(J^2_alpha) from the vertical components of alpha
    {
        QMatrix ja = qmatrix(n, n);
        for (int l = 0; l < m; ++l) {
            auto it = a.coeffs.find(Mask(1) << (n + l));
            if (it == a.coeffs.end()) continue;
            Q v = it->second.value();
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) ja[x][y] += v * ctx.bott.j.comp[l][x][y].value();
        }
        Q tr(0);
        for (int x = 0; x < n; ++x)
            for (int k = 0; k < n; ++k) tr += ja[x][k] * ja[k][x];
        rep.quarter_tr_j2 = -tr * Q(1, 4);
    }

    rep.closed_at_point = value_form(exterior_derivative(ctx, a)).is_zero();
    return rep;
}

FormField random_form_field(const FrameAlgebra& fa, int degree, int order, uint64_t seed) {
    FormField out(degree);
    for (Mask w : basis_monomials(degree, fa.dims())) {
        uint64_t s = seed * 0x9e3779b97f4a7c15ull + w * 0xd1342543de82ef95ull + 11;
        out.add_term(w, random_jet(fa, order, s));
    }
    return out;
}

FormField random_closed_one_form(const LaplacianContext& ctx, int order, uint64_t seed) {
    const int t = ctx.fa.dims().total();
    FormField a = random_form_field(ctx.fa, 1, order, seed);
    // one corrective pass: the (u<v) component of the point value of da is
    // E_u(a_v) - E_v(a_u) + lower-order terms, so shifting the E_u-derivative
    // component of a_v kills it without touching the others
    Form<Q> dv = value_form(exterior_derivative(ctx, a));
    for (int u = 0; u < t; ++u)
        for (int v = u + 1; v < t; ++v) {
            Mask w = (Mask(1) << u) | (Mask(1) << v);
            auto it = dv.coeffs.find(w);
            if (it == dv.coeffs.end()) continue;
            Jet cv = a.coeffs.at(Mask(1) << v);
            Word wu(1, static_cast<char>(u));
            cv.set(wu, cv.at(wu) - it->second);
            a.coeffs[Mask(1) << v] = cv;
        }
    return a;
}

} // namespace folia

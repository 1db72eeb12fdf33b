#include "folia/curvature.hpp"

namespace folia {

namespace {

bool jets_agree(const Jet& a, const Jet& b) { return (a - b).is_zero(); }

// J as a (1,2) tensor on all of TM, zero outside V x H -> H.
TorsionTensor j_full_tensor(const FrameSpec& spec, const JMap& j) {
    const int n = spec.n, m = spec.m, t = n + m;
    TorsionTensor jt = TorsionTensor::zeros(t);
    for (int l = 0; l < m; ++l)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) jt.comp[n + l][x][y] = j.comp[l][x][y];
    return jt;
}

} // namespace

CurvatureTensor curvature(const ConnectionCoeffs& conn, const FrameSpec& spec) {
    const int t = spec.n + spec.m;
    FrameAlgebra fa = spec.algebra();
    CurvatureTensor r = CurvatureTensor::zeros(t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b) {
            if (a == b) continue;
            for (int c = 0; c < t; ++c)
                for (int d = 0; d < t; ++d) {
                    Jet v = fa.frame_derivative(a, conn.at(b, c, d)) -
                            fa.frame_derivative(b, conn.at(a, c, d));
                    for (int e = 0; e < t; ++e) {
                        v = v + conn.at(b, c, e) * conn.at(a, e, d);
                        v = v - conn.at(a, c, e) * conn.at(b, e, d);
                        Jet br = fa.bracket_coeff(a, b, e);
                        if (!br.is_zero()) v = v - br * conn.at(e, c, d);
                    }
                    r.comp[a][b][c][d] = v;
                }
        }
    return r;
}

Jet bianchi_residual(const CurvatureTensor& r, const TorsionTensor& t, const Tensor4& nabla_t,
                     int total, int a, int b, int c, int d) {
    Jet lhs = r.at(a, b, c, d) + r.at(b, c, a, d) + r.at(c, a, b, d);
    Jet rhs = Jet::zero();
    auto tt_term = [&](int x, int y, int z) {
        Jet acc = Jet::zero();
        for (int e = 0; e < total; ++e) acc = acc + t.at(x, y, e) * t.at(e, z, d);
        return acc;
    };
    rhs = rhs + tt_term(a, b, c) + tt_term(b, c, a) + tt_term(c, a, b);
    rhs = rhs + nabla_t[a][b][c][d] + nabla_t[b][c][a][d] + nabla_t[c][a][b][d];
    return lhs - rhs;
}

Jet bianchi_residual(const FrameSpec& spec, const ConnectionCoeffs& conn,
                     const CurvatureTensor& r, const TorsionTensor& t, int a, int b, int c,
                     int d) {
    const int total = spec.n + spec.m;
    FrameAlgebra fa = spec.algebra();
    Jet lhs = r.at(a, b, c, d) + r.at(b, c, a, d) + r.at(c, a, b, d);
    Jet rhs = Jet::zero();
    auto tt_term = [&](int x, int y, int z) {
        Jet acc = Jet::zero();
        for (int e = 0; e < total; ++e) acc = acc + t.at(x, y, e) * t.at(e, z, d);
        return acc;
    };
    rhs = rhs + tt_term(a, b, c) + tt_term(b, c, a) + tt_term(c, a, b);
    rhs = rhs + nabla_tensor12(fa, conn, t, a, b, c)[d] + nabla_tensor12(fa, conn, t, b, c, a)[d] +
          nabla_tensor12(fa, conn, t, c, a, b)[d];
    return lhs - rhs;
}

CurvatureTensor adjoint_curvature(const FrameSpec& spec, const Epsilon& eps) {
    const int n = spec.n, t = n + spec.m;
    FrameAlgebra fa = spec.algebra();

    CurvatureTensor direct = curvature(adjoint_connection(spec, eps), spec);

    // from the adjoint-curvature identity applied to nabla^eps
    ConnectionCoeffs ce = epsilon_connection(spec, eps);
    CurvatureTensor re = curvature(ce, spec);
    TorsionTensor te = torsion(ce, spec);
    Tensor4 nte = nabla_tensor12_table(fa, ce, te);
    CurvatureTensor via_identity = CurvatureTensor::zeros(t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int c = 0; c < t; ++c)
                for (int d = 0; d < t; ++d)
                    via_identity.comp[a][b][c][d] =
                        re.at(c, b, a, d) - re.at(c, a, b, d) + nte[c][a][b][d];

    // from the scaling expansion in Bott data
    BottPackage bott = bott_package(spec);
    CurvatureTensor rb = curvature(bott.conn, spec);
    ScalingExpansion se = scaling_expansion(spec);
    Q inv = eps.inv();
    CurvatureTensor via_expansion = rb;
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    Jet corr = (se.op1[a][b][x][y] + se.op2[a][b][x][y]) * inv +
                               se.op3[a][b][x][y] * (inv * inv);
                    via_expansion.comp[a][b][x][y] = via_expansion.comp[a][b][x][y] + corr;
                }

    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int c = 0; c < t; ++c)
                for (int d = 0; d < t; ++d) {
                    if (!jets_agree(direct.at(a, b, c, d), via_identity.at(a, b, c, d)) ||
                        !jets_agree(direct.at(a, b, c, d), via_expansion.at(a, b, c, d)))
                        throw consistency_error("adjoint curvature routes disagree");
                }
    return direct;
}

RicTerms ric_terms_from_curvature(const FrameSpec& spec, const CurvatureTensor& rhat) {
    const int n = spec.n, t = n + spec.m;
    RicTerms out;
    // Ric_{1,1}(v) = -sum_i Rhat(X_i, v) X_i
    for (int b = 0; b < t; ++b)
        for (int c = 0; c < t; ++c) {
            Jet w = Jet::zero();
            for (int i = 0; i < n; ++i) w = w - rhat.at(i, b, i, c);
            if (!w.is_zero()) out.ric11.add(Mask(1) << b, Mask(1) << c, w);
        }
    // Ric_{2,2}(v,w) = sum_i X_i ^ Rhat(v,w) X_i, summed over frame pairs v < w
    for (int a = 0; a < t; ++a)
        for (int b = a + 1; b < t; ++b) {
            Mask fm = (Mask(1) << a) | (Mask(1) << b);
            for (int i = 0; i < n; ++i)
                for (int c = 0; c < t; ++c) {
                    if (c == i) continue;
                    Jet w = rhat.at(a, b, i, c);
                    if (w.is_zero()) continue;
                    if (merge_sign(Mask(1) << i, Mask(1) << c) < 0) w = -w;
                    out.ric22.add(fm, (Mask(1) << i) | (Mask(1) << c), w);
                }
        }
    out.ric11 = out.ric11.normalized();
    out.ric22 = out.ric22.normalized();
    out.total = out.ric11;
    out.total.add(out.ric22);
    out.total = out.total.normalized();
    return out;
}

RicTerms ric_terms(const FrameSpec& spec, const Epsilon& eps) {
    return ric_terms_from_curvature(spec, adjoint_curvature(spec, eps));
}

QTensor q_tensor(const FrameSpec& spec) {
    const int n = spec.n, m = spec.m, t = n + m;
    BottPackage bott = bott_package(spec);
    RicTerms rh = ric_terms(spec, Epsilon::inf());
    QTensor out;
    out.op = qmatrix(t, t);
    // horizontal Ricci block, rows restricted to H by the <.,.>_H pairing
    for (const auto& term : rh.ric11.terms) {
        int col = std::countr_zero(term.fmask);
        int row = std::countr_zero(term.vmask);
        if (row < n) out.op[row][col] += term.weight.value();
    }
    // -<delta_H T(alpha), alpha>_V: rows vertical, cols horizontal
    for (int b = 0; b < n; ++b)
        for (int c = n; c < t; ++c) out.op[c][b] -= bott.div_t.comp[b][c].value();
    // -1/4 Tr_H(J^2_alpha) on the vertical block
    for (int l = 0; l < m; ++l)
        for (int p = 0; p < m; ++p) {
            Q tr(0);
            for (int x = 0; x < n; ++x)
                for (int k = 0; k < n; ++k)
                    tr += bott.j.comp[p][x][k].value() * bott.j.comp[l][k][x].value();
            out.op[n + l][n + p] -= tr * Q(1, 4);
        }
    out.symmetric = is_symmetric(out.op);
    out.min_eig_sym = min_eig_sym(out.op);
    return out;
}

HorizontalCurvatureOperator horizontal_curvature_operator(const FrameSpec& spec) {
    const int n = spec.n;
    CurvatureTensor r = curvature(bott_connection(spec), spec);
    HorizontalCurvatureOperator out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.basis.emplace_back(i, j);
    int dim = static_cast<int>(out.basis.size());
    out.op = qmatrix(dim, dim);
    for (int col = 0; col < dim; ++col) {
        auto [i, j] = out.basis[col];
        for (int row = 0; row < dim; ++row) {
            auto [k, l] = out.basis[row];
            // R_H(theta_i ^ theta_j)(X_k, X_l) = <R(X_i,X_j) X_l, X_k>
            out.op[row][col] = r.at(i, j, l, k).value();
        }
    }
    out.min_eig_sym = min_eig_sym(out.op);
    out.max_asym = Q(0);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            Q d = (out.op[a][b] - out.op[b][a]).abs();
            if (out.max_asym < d) out.max_asym = d;
        }
    return out;
}

VerticalParallelTorsion vertical_parallel_torsion(const FrameSpec& spec) {
    const int n = spec.n, t = n + spec.m;
    FrameAlgebra fa = spec.algebra();
    BottPackage bott = bott_package(spec);
    CurvatureTensor r = curvature(bott.conn, spec);
    VerticalParallelTorsion out{true, Q(0)};
    for (int z = n; z < t; ++z)
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b) {
                std::vector<Jet> nt = nabla_tensor12(fa, bott.conn, bott.tor, z, a, b);
                for (int d = 0; d < t; ++d) {
                    if (!nt[d].value().is_zero()) out.parallel = false;
                    if (a < n && b < n && d >= n) {
                        Q res = (nt[d].value() - r.at(a, b, z, d).value()).abs();
                        if (out.equivalence_residual < res) out.equivalence_residual = res;
                    }
                }
            }
    return out;
}

ScalingExpansion scaling_expansion(const FrameSpec& spec) {
    const int n = spec.n, t = n + spec.m;
    FrameAlgebra fa = spec.algebra();
    BottPackage bott = bott_package(spec);
    TorsionTensor jt = j_full_tensor(spec, bott.j);

    auto jbox = [&](int d1, int d2, int d3, int d4) {
        return OpBox(d1, std::vector<std::vector<std::vector<Jet>>>(
                             d2, std::vector<std::vector<Jet>>(d3, std::vector<Jet>(d4, Jet::zero()))));
    };
    OpBox b1 = jbox(t, t, n, n), b2 = jbox(t, t, n, n), b3 = jbox(t, t, n, n);

    // nabla J components (nabla_a J)(b, x)^y
    OpBox nj = jbox(t, t, n, t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int x = 0; x < n; ++x) {
                std::vector<Jet> v = nabla_tensor12(fa, bott.conn, jt, a, b, x);
                for (int y = 0; y < t; ++y) nj[a][b][x][y] = v[y];
            }

    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    b1[a][b][x][y] = nj[a][b][x][y] - nj[b][a][x][y];
                    Jet v2 = Jet::zero();
                    for (int e = n; e < t; ++e) v2 = v2 + bott.tor.at(a, b, e) * jt.at(e, x, y);
                    b2[a][b][x][y] = v2;
                    Jet v3 = Jet::zero();
                    for (int k = 0; k < n; ++k) {
                        v3 = v3 + jt.at(b, x, k) * jt.at(a, k, y);
                        v3 = v3 - jt.at(a, x, k) * jt.at(b, k, y);
                    }
                    b3[a][b][x][y] = v3;
                }

    ScalingExpansion out;
    auto to_element = [&](const OpBox& op, MixedJet& elem22, MixedJet& elem11) {
        for (int a = 0; a < t; ++a)
            for (int b = a + 1; b < t; ++b) {
                Mask fm = (Mask(1) << a) | (Mask(1) << b);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) {
                        if (x == y) continue;
                        Jet w = op[a][b][x][y];
                        if (w.is_zero()) continue;
                        if (merge_sign(Mask(1) << x, Mask(1) << y) < 0) w = -w;
                        elem22.add(fm, (Mask(1) << x) | (Mask(1) << y), w);
                    }
            }
        for (int b = 0; b < t; ++b)
            for (int y = 0; y < n; ++y) {
                Jet w = Jet::zero();
                for (int i = 0; i < n; ++i) w = w - op[i][b][i][y];
                if (!w.is_zero()) elem11.add(Mask(1) << b, Mask(1) << y, w);
            }
        elem22 = elem22.normalized();
        elem11 = elem11.normalized();
    };
    to_element(b1, out.b1, out.b1v);
    to_element(b2, out.b2, out.b2v);
    to_element(b3, out.b3, out.b3v);
    out.op1 = std::move(b1);
    out.op2 = std::move(b2);
    out.op3 = std::move(b3);
    return out;
}

QMatrix ricci_vertical(const FrameSpec& spec) {
    // leaves carry a commuting orthonormal frame, so the leaf Koszul oracle is flat
    return qmatrix(spec.m, spec.m);
}

QMatrix ricci_canonical_variation(const FrameSpec& spec, const Epsilon& eps) {
    if (!spec.homogeneous)
        throw std::invalid_argument("canonical-variation oracle needs a homogeneous spec");
    if (eps.infinite) throw std::invalid_argument("canonical-variation oracle needs finite eps");
    const int n = spec.n, t = n + spec.m;
    auto ct = bracket_table(spec);
    auto w = [&](int a) { return a < n ? Q(1) : Q(1) / eps.value; };
    // Levi-Civita Koszul in the g_eps-orthogonal frame
    std::vector<std::vector<std::vector<Q>>> g(
        t, std::vector<std::vector<Q>>(t, std::vector<Q>(t, Q(0))));
    const Q half(1, 2);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int c = 0; c < t; ++c)
                g[a][b][c] = half * (ct[a][b][c] * w(c) - ct[b][c][a] * w(a) + ct[c][a][b] * w(b)) / w(c);
    QMatrix ric = qmatrix(t, t);
    for (int v = 0; v < t; ++v)
        for (int u = 0; u < t; ++u) {
            Q acc(0);
            for (int a = 0; a < t; ++a) {
                // R(E_a, E_v) E_u component along E_a, constant-structure formula
                Q comp(0);
                for (int e = 0; e < t; ++e) {
                    comp += g[v][u][e] * g[a][e][a];
                    comp -= g[a][u][e] * g[v][e][a];
                    comp -= ct[a][v][e] * g[e][u][a];
                }
                acc += comp;
            }
            ric[v][u] = acc;
        }
    return ric;
}

QMatrix ricci_blocks_from_engine(const FrameSpec& spec, const Epsilon& eps) {
    if (eps.infinite) throw std::invalid_argument("block table needs finite eps");
    const int n = spec.n, m = spec.m, t = n + m;
    BottPackage bott = bott_package(spec);
    CurvatureTensor rb = curvature(bott.conn, spec);
    Q inv = eps.inv();
    const Q half(1, 2), quarter(1, 4);
    QMatrix ric = qmatrix(t, t);
    // Ric_H bilinear from the Bott adjoint curvature trace
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u) {
            Q acc(0);
            for (int i = 0; i < n; ++i) acc -= rb.at(i, v, i, u).value();
            // + (1/2 eps) <J^2 u, v>
            Q j2(0);
            for (int l = 0; l < m; ++l)
                for (int k = 0; k < n; ++k)
                    j2 += bott.j.comp[l][u][k].value() * bott.j.comp[l][k][v].value();
            ric[v][u] = acc + half * inv * j2;
        }
    for (int v = 0; v < n; ++v)
        for (int l = 0; l < m; ++l) {
            Q d = bott.div_t.comp[v][n + l].value();
            ric[v][n + l] = -half * inv * d;
            ric[n + l][v] = -half * inv * d;
        }
    QMatrix rv = ricci_vertical(spec);
    for (int l = 0; l < m; ++l)
        for (int p = 0; p < m; ++p) {
            Q tr(0);
            for (int x = 0; x < n; ++x)
                for (int k = 0; k < n; ++k)
                    tr += bott.j.comp[p][x][k].value() * bott.j.comp[l][k][x].value();
            ric[n + l][n + p] = rv[l][p] - quarter * inv * inv * tr;
        }
    return ric;
}

MetricCommutationData metric_commutation_data(const FrameSpec& spec,
                                              const ConnectionCoeffs& conn) {
    const int t = spec.n + spec.m;
    FrameAlgebra fa = spec.algebra();
    MetricCommutationData data;
    data.r = curvature(conn, spec);
    data.tt = torsion(conn, spec);
    // A(x,y)^e = T(x,y)^e - (J_x y)^e - (J_y x)^e with <J_v x, y> = <v, T(x,y)>
    data.a_map = TorsionTensor::zeros(t);
    for (int x = 0; x < t; ++x)
        for (int y = 0; y < t; ++y)
            for (int e = 0; e < t; ++e)
                data.a_map.comp[x][y][e] =
                    data.tt.at(x, y, e) - data.tt.at(y, e, x) - data.tt.at(x, e, y);
    data.nabla_a = nabla_tensor12_table(fa, conn, data.a_map);
    return data;
}

Jet metric_connection_commutation(const MetricCommutationData& data, int t, int a, int b, int c,
                                  int d) {
    const auto& r = data.r;
    const auto& tt = data.tt;
    const auto& A = data.a_map;
    const auto& nA = data.nabla_a;
    Jet lhs = r.at(a, b, c, d) - r.at(c, d, a, b);
    const Q half(1, 2), quarter(1, 4);
    Jet rhs = (nA[a][b][c][d] - nA[b][a][c][d] - nA[c][d][a][b] + nA[d][c][a][b]) * half;
    // + 1/2 <A(T(a,b), c), d> - 1/2 <A(T(c,d), a), b>
    Jet at1 = Jet::zero(), at2 = Jet::zero();
    for (int e = 0; e < t; ++e) {
        at1 = at1 + tt.at(a, b, e) * A.at(e, c, d);
        at2 = at2 + tt.at(c, d, e) * A.at(e, a, b);
    }
    rhs = rhs + (at1 - at2) * half;
    // quartic A-pairings
    auto dotA = [&](int x1, int y1, int x2, int y2) {
        Jet acc = Jet::zero();
        for (int e = 0; e < t; ++e) acc = acc + A.at(x1, y1, e) * A.at(x2, y2, e);
        return acc;
    };
    rhs = rhs + (dotA(b, c, a, d) - dotA(c, b, d, a) - dotA(a, c, b, d) + dotA(c, a, d, b)) * quarter;
    return lhs - rhs;
}

Jet metric_connection_commutation(const FrameSpec& spec, const ConnectionCoeffs& conn, int a,
                                  int b, int c, int d) {
    MetricCommutationData data = metric_commutation_data(spec, conn);
    return metric_connection_commutation(data, spec.n + spec.m, a, b, c, d);
}

FiberPositivity ric_fiber_positivity(const FrameSpec& spec) {
    const Dims d = spec.dims();
    RicTerms rh = ric_terms(spec, Epsilon::inf());
    FiberPositivity out;
    out.c1 = 0.0;
    bool first = true;
    for (int i = 1; i < d.n; ++i)
        for (int j = 0; j <= d.m; ++j) {
            // fiber basis: monomials with horizontal grade i, vertical grade j
            std::vector<Mask> basis;
            for (Mask w : basis_monomials(i + j, d))
                if (mono_hdeg(w, d) == i) basis.push_back(w);
            if (basis.empty()) continue;
            int dim = static_cast<int>(basis.size());
            QMatrix mat = qmatrix(dim, dim);
            for (int col = 0; col < dim; ++col) {
                Form<Jet> e(i + j);
                e.add_term(basis[col], Jet(1));
                Form<Jet> img = apply_C(rh.total, e);
                for (int row = 0; row < dim; ++row) {
                    auto it = img.coeffs.find(basis[row]);
                    mat[row][col] = it == img.coeffs.end() ? Q(0) : it->second.value();
                }
            }
            double me = min_eig_sym(mat);
            out.fiber_min[{i, j}] = me;
            if (first || me < out.c1) {
                out.c1 = me;
                first = false;
            }
        }
    return out;
}

MixedJet nu0_element(const FrameSpec& spec) {
    const int n = spec.n, t = n + spec.m;
    FrameAlgebra fa = spec.algebra();
    BottPackage bott = bott_package(spec);
    MixedJet out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (j == k) continue;
                std::vector<Jet> cyc(t, Jet::zero());
                auto add_nt = [&](int u, int v, int w2) {
                    std::vector<Jet> nt = nabla_tensor12(fa, bott.conn, bott.tor, u, v, w2);
                    for (int e = 0; e < t; ++e) cyc[e] = cyc[e] + nt[e];
                };
                add_nt(i, j, k);
                add_nt(j, k, i);
                add_nt(k, i, j);
                Mask fm = (Mask(1) << j) | (Mask(1) << k);
                int fsign = merge_sign(Mask(1) << j, Mask(1) << k);
                for (int e = 0; e < t; ++e) {
                    if (e == i) continue;
                    Jet w = cyc[e];
                    if (w.is_zero()) continue;
                    int vsign = merge_sign(Mask(1) << i, Mask(1) << e);
                    if (fsign * vsign < 0) w = -w;
                    out.add(fm, (Mask(1) << i) | (Mask(1) << e), w);
                }
            }
    return out.normalized();
}

QMatrix c_operator_matrix(const FrameSpec& spec, const MixedJet& nu) {
    const Dims d = spec.dims();
    int dim = 1 << d.total();
    QMatrix mat = qmatrix(dim, dim);
    for (int col = 0; col < dim; ++col) {
        Form<Jet> e(mono_degree(static_cast<Mask>(col)));
        e.add_term(static_cast<Mask>(col), Jet(1));
        Form<Jet> img = apply_C(nu, e);
        for (const auto& [w, c] : img.coeffs) mat[static_cast<int>(w)][col] = c.value();
    }
    return mat;
}

} // namespace folia

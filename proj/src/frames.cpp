#include "folia/frames.hpp"

#include <set>

namespace folia {

std::vector<std::vector<std::vector<Q>>> bracket_table(const FrameSpec& spec) {
    FrameAlgebra fa = spec.algebra();
    int t = spec.n + spec.m;
    std::vector<std::vector<std::vector<Q>>> c(
        t, std::vector<std::vector<Q>>(t, std::vector<Q>(t, Q(0))));
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            for (int e = 0; e < t; ++e)
                c[a][b][e] = fa.bracket_coeff(a, b, e).value();
    return c;
}

namespace {

bool jets_equal_neg(const Jet& a, const Jet& b) {
    Jet d = a + b;
    return d.is_zero();
}

// gamma value matrix over (pairs (i<j)) x l, rank over Q by Gaussian elimination
int gamma_rank(const FrameSpec& spec) {
    int n = spec.n, m = spec.m;
    std::vector<std::vector<Q>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<Q> row(m, Q(0));
            for (int l = 0; l < m; ++l) row[l] = spec.structure.gamma[i][j][l].value();
            rows.push_back(std::move(row));
        }
    int rank = 0;
    int cols = m;
    for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!rows[r][col].is_zero()) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            Q f = rows[r][col] / rows[rank][col];
            for (int cc = 0; cc < cols; ++cc) rows[r][cc] -= f * rows[rank][cc];
        }
        ++rank;
    }
    return rank;
}

} // namespace

ValidityReport validate(const FrameSpec& spec) {
    ValidityReport rep;
    const auto& sf = spec.structure;
    int n = spec.n, m = spec.m;

    {
        ValidityCheck c{"antisymmetry_omega_gamma", true, ""};
        for (int i = 0; i < n && c.passed; ++i)
            for (int j = 0; j < n && c.passed; ++j) {
                for (int k = 0; k < n; ++k)
                    if (!jets_equal_neg(sf.omega[i][j][k], sf.omega[j][i][k])) {
                        c.passed = false;
                        c.note = "omega not antisymmetric in (i,j)";
                        break;
                    }
                for (int l = 0; l < m && c.passed; ++l)
                    if (!jets_equal_neg(sf.gamma[i][j][l], sf.gamma[j][i][l])) {
                        c.passed = false;
                        c.note = "gamma not antisymmetric in (i,j)";
                    }
            }
        rep.checks.push_back(c);
    }

    {
        // (L_X g)(Z,Z) = 0: beta antisymmetric in its vertical index pair
        ValidityCheck c{"totally_geodesic", true, ""};
        for (int i = 0; i < n && c.passed; ++i)
            for (int l = 0; l < m && c.passed; ++l)
                for (int p = 0; p < m; ++p)
                    if (!jets_equal_neg(sf.beta[i][l][p], sf.beta[i][p][l])) {
                        c.passed = false;
                        c.note = "beta not antisymmetric in vertical pair";
                        break;
                    }
        rep.checks.push_back(c);
    }

    {
        // (L_Z g)(X,X) = 0: horizontal part of [.,Z_l] skew-symmetric
        ValidityCheck c{"bundle_like", true, ""};
        for (int l = 0; l < m && c.passed; ++l)
            for (int i = 0; i < n && c.passed; ++i)
                for (int j = 0; j < n; ++j)
                    if (!jets_equal_neg(sf.sigma[i][l][j], sf.sigma[j][l][i])) {
                        c.passed = false;
                        c.note = "sigma not skew in horizontal pair";
                        break;
                    }
        rep.checks.push_back(c);
    }

    {
        // vertical frame chosen commuting, so integrability holds by shape
        rep.checks.push_back(ValidityCheck{"vertical_integrability", true, "by structure shape"});
    }

    {
        ValidityCheck c{"homogeneous_flag", true, ""};
        if (spec.homogeneous) {
            auto walk = [&](const std::vector<std::vector<std::vector<Jet>>>& box) {
                for (const auto& a : box)
                    for (const auto& b : a)
                        for (const auto& j : b)
                            if (!j.is_constant()) return false;
                return true;
            };
            if (!(walk(sf.omega) && walk(sf.gamma) && walk(sf.beta) && walk(sf.sigma))) {
                c.passed = false;
                c.note = "declared homogeneous but structure jets are not constant";
            }
        }
        rep.checks.push_back(c);
    }

    {
        ValidityCheck c{"jacobi", true, ""};
        if (spec.homogeneous) {
            auto ct = bracket_table(spec);
            int t = n + m;
            for (int a = 0; a < t && c.passed; ++a)
                for (int b = a + 1; b < t && c.passed; ++b)
                    for (int d = b + 1; d < t && c.passed; ++d)
                        for (int e = 0; e < t; ++e) {
                            Q s(0);
                            for (int f = 0; f < t; ++f) {
                                s += ct[a][b][f] * ct[f][d][e];
                                s += ct[b][d][f] * ct[f][a][e];
                                s += ct[d][a][f] * ct[f][b][e];
                            }
                            if (!s.is_zero()) {
                                c.passed = false;
                                c.note = "Jacobi identity fails on constant structure";
                                break;
                            }
                        }
        } else {
            // confluence probe: rewrite a dense jet two ways on every
            // out-of-order triple; inconsistency is reported, not rejected
            FrameAlgebra fa = spec.algebra();
            int ord = 3;
            Jet f = random_jet(fa, ord, 0xf01d5u);
            int t = n + m;
            for (int a = 0; a < t && c.passed; ++a)
                for (int b = 0; b < a; ++b) {
                    for (int d = 0; d < t; ++d) {
                        Word w1, w2;
                        w1.push_back(static_cast<char>(a));
                        w1.push_back(static_cast<char>(b));
                        w1.push_back(static_cast<char>(d));
                        // same word evaluated after pre-swapping the tail pair
                        w2 = w1;
                        std::swap(w2[1], w2[2]);
                        Q lhs = fa.eval_word(w1, f);
                        Q rhs = fa.eval_word(w2, f);
                        // difference must match the bracket of the swapped pair
                        Q expect(0);
                        for (int e = 0; e < t; ++e) {
                            Jet cj = fa.bracket_coeff(static_cast<int>(w1[1]), static_cast<int>(w1[2]), e);
                            Word we;
                            we.push_back(w1[0]);
                            // prefix of length 1 acting on cj * E_e f
                            Word tail;
                            tail.push_back(static_cast<char>(e));
                            expect += cj.value() * fa.eval_word(we + tail, f) +
                                      fa.frame_derivative(static_cast<int>(w1[0]), cj).value() *
                                          fa.eval_word(tail, f);
                        }
                        if (!(lhs - rhs - expect).is_zero()) {
                            c.passed = false;
                            c.note = "rewrite not confluent at stored order";
                            break;
                        }
                    }
                }
        }
        rep.checks.push_back(c);
    }

    {
        ValidityCheck c{"step2_bracket_generating", true, ""};
        int r = gamma_rank(spec);
        if (r != m) {
            c.passed = false;
            c.note = "gamma rank " + std::to_string(r) + " < m = " + std::to_string(m);
        }
        rep.checks.push_back(c);
    }

    {
        // informational: rank-one vertical with J^2 = -c^2 Id marks the
        // contact-type models; recorded, never a failure
        ValidityCheck c{"k_contact_like", true, "no"};
        if (m == 1) {
            std::vector<std::vector<Q>> j(n, std::vector<Q>(n, Q(0)));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    j[i][k] = -spec.structure.gamma[i][k][0].value();
            bool isotropic = true;
            Q c2(0);
            for (int i = 0; i < n && isotropic; ++i)
                for (int k = 0; k < n && isotropic; ++k) {
                    Q acc(0);
                    for (int p = 0; p < n; ++p) acc += j[i][p] * j[p][k];
                    if (i == k) {
                        if (i == 0) c2 = -acc;
                        else if (-acc != c2) isotropic = false;
                    } else if (!acc.is_zero()) {
                        isotropic = false;
                    }
                }
            if (isotropic && c2 > Q(0)) c.note = "yes, J^2 = -" + c2.str() + " Id";
        }
        rep.checks.push_back(c);
    }

    return rep;
}

} // namespace folia

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folia/laplacians.hpp"
#include "folia/models.hpp"

using namespace folia;

namespace {

const std::vector<std::string> kModels{"heisenberg3", "heisenberg5", "hopf_s3", "hopf_s5"};

bool all_zero_values(const DivTorsion& d) {
    for (const auto& row : d.comp)
        for (const auto& j : row)
            if (!j.value().is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("heisenberg bott connection vanishes") {
    FrameSpec s = builtin_model("heisenberg3");
    ConnectionCoeffs c = bott_connection(s);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int d = 0; d < 3; ++d) CHECK(c.at(a, b, d).is_zero());
}

TEST_CASE("hopf bott coefficients from the bracket table") {
    FrameSpec s = builtin_model("hopf_s3");
    ConnectionCoeffs c = bott_connection(s);
    CHECK(c.at(2, 0, 1).value() == Q(2));  // nabla_Z X_1 = 2 X_2
    CHECK(c.at(2, 1, 0).value() == Q(-2)); // nabla_Z X_2 = -2 X_1
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) CHECK(c.at(i, j, k).is_zero());
}

TEST_CASE("bott connection is metric and splitting-preserving") {
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        int n = s.n, t = s.n + s.m;
        ConnectionCoeffs c = bott_connection(s);
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b)
                for (int d = 0; d < t; ++d) {
                    CHECK(metric_residual_g(c, a, b, d).is_zero());
                    bool mixes = (b < n) != (d < n);
                    if (mixes) CHECK(c.at(a, b, d).is_zero());
                }
    }
}

TEST_CASE("torsion is minus the vertical bracket part") {
    FrameSpec s = builtin_model("heisenberg3");
    TorsionTensor t = torsion(bott_connection(s), s);
    CHECK(t.at(0, 1, 2).value() == Q(-1)); // T(X_1,X_2) = -Z

    FrameSpec h = builtin_model("hopf_s3");
    TorsionTensor th = torsion(bott_connection(h), h);
    CHECK(th.at(0, 1, 2).value() == Q(-2)); // T(X_1,X_2) = -2Z
}

TEST_CASE("bott torsion kills mixed and vertical pairs") {
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        int n = s.n, t = s.n + s.m;
        TorsionTensor tt = torsion(bott_connection(s), s);
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b) {
                if (a < n && b < n) continue;
                for (int d = 0; d < t; ++d) CHECK(tt.at(a, b, d).is_zero());
            }
        // antisymmetry everywhere
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b)
                for (int d = 0; d < t; ++d)
                    CHECK((tt.at(a, b, d) + tt.at(b, a, d)).is_zero());
    }
}

TEST_CASE("j map examples") {
    FrameSpec s = builtin_model("heisenberg3");
    JMap j = j_map(s);
    CHECK(j.comp[0][0][1].value() == Q(-1)); // J_Z X_1 = -X_2
    CHECK(j.comp[0][1][0].value() == Q(1));  // J_Z X_2 = X_1
    // J^2 = -Id
    Q j2 = j.comp[0][0][1].value() * j.comp[0][1][0].value();
    CHECK(j2 == Q(-1));
}

TEST_CASE("j map skew and fixed by the defining identity") {
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        JMap j = j_map(s);
        TorsionTensor tt = torsion(bott_connection(s), s);
        for (int l = 0; l < s.m; ++l)
            for (int x = 0; x < s.n; ++x)
                for (int y = 0; y < s.n; ++y) {
                    CHECK((j.comp[l][x][y] + j.comp[l][y][x]).is_zero());
                    // <J_Z X, Y> = <Z, T(X,Y)>
                    CHECK((j.comp[l][x][y] - tt.at(x, y, s.n + l)).is_zero());
                }
    }
}

TEST_CASE("epsilon connection on heisenberg at eps = 1") {
    FrameSpec s = builtin_model("heisenberg3");
    Epsilon one = Epsilon::of(Q(1));
    ConnectionCoeffs ce = epsilon_connection(s, one);
    ConnectionCoeffs ca = adjoint_connection(s, one);
    // nabla^1_{X_1} X_2 = -T(X_1,X_2) = Z
    CHECK(ce.at(0, 1, 2).value() == Q(1));
    // hat nabla^1_{X_1} X_2 = 0 since J_{X_1} = 0
    CHECK(ca.at(0, 1, 2).is_zero());
    // hat nabla^1_Z X_1 = J_Z X_1 = -X_2
    CHECK(ca.at(2, 0, 1).value() == Q(-1));
}

TEST_CASE("adjoint at infinity is the bott connection") {
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        int t = s.n + s.m;
        ConnectionCoeffs ca = adjoint_connection(s, Epsilon::inf());
        ConnectionCoeffs cb = bott_connection(s);
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b)
                for (int d = 0; d < t; ++d) CHECK((ca.at(a, b, d) - cb.at(a, b, d)).is_zero());
    }
}

TEST_CASE("adjoint pair: opposite torsions, involutive, metric for g_eps") {
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        int t = s.n + s.m;
        for (const auto& eps : {Epsilon::of(Q(1, 4)), Epsilon::of(Q(1)), Epsilon::of(Q(4))}) {
            ConnectionCoeffs ce = epsilon_connection(s, eps);
            ConnectionCoeffs ca = adjoint_connection(s, eps);
            TorsionTensor te = torsion(ce, s);
            TorsionTensor ta = torsion(ca, s);
            for (int a = 0; a < t; ++a)
                for (int b = 0; b < t; ++b)
                    for (int d = 0; d < t; ++d) {
                        CHECK((te.at(a, b, d) + ta.at(a, b, d)).is_zero());
                        // adjoint of the adjoint: nabla - T recovers nabla^eps... the
                        // pair relation nabla^eps = hat nabla^eps - T(hat nabla^eps)
                        Jet back = ca.at(a, b, d) - ta.at(a, b, d);
                        CHECK((back - ce.at(a, b, d)).is_zero());
                        CHECK(metric_residual_geps(ce, s.dims(), eps, a, b, d).is_zero());
                        CHECK(metric_residual_geps(ca, s.dims(), eps, a, b, d).is_zero());
                        CHECK(metric_residual_g(ca, a, b, d).is_zero());
                    }
            // hat nabla preserves the splitting
            for (int a = 0; a < t; ++a)
                for (int b = 0; b < t; ++b)
                    for (int d = 0; d < t; ++d)
                        if ((b < s.n) != (d < s.n)) CHECK(ca.at(a, b, d).is_zero());
        }
    }
}

TEST_CASE("epsilon must be positive") {
    CHECK_THROWS_AS(Epsilon::of(Q(-1)), std::domain_error);
}

TEST_CASE("covariant derivative of a flat constant form is the frame derivative") {
    FrameSpec s = builtin_model("heisenberg3");
    FrameAlgebra fa = s.algebra();
    ConnectionCoeffs c = bott_connection(s);
    FormField f(1);
    Jet coeff = random_jet(fa, 2, 3);
    f.add_term(1, coeff); // theta_1 with a jet coefficient
    FormField df = covariant_derivative(fa, c, 0, f);
    REQUIRE(df.coeffs.count(1) == 1);
    CHECK((df.coeffs.at(1) - fa.frame_derivative(0, coeff)).is_zero());
    CHECK(df.coeffs.size() == 1);
}

TEST_CASE("metric is parallel as a two-tensor") {
    // nabla g = 0 expressed against the mixed tensor pairing: for every frame
    // direction, the derivative of sum theta^a (x) E_a vanishes
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        FrameAlgebra fa = s.algebra();
        ConnectionCoeffs c = bott_connection(s);
        int t = s.n + s.m;
        MixedJet gstar;
        for (int a = 0; a < t; ++a) gstar.add(Mask(1) << a, Mask(1) << a, Jet(1));
        for (int dir = 0; dir < t; ++dir) {
            MixedJet dg = covariant_derivative_mixed(fa, c, dir, gstar);
            CHECK(dg.normalized().terms.empty());
        }
    }
}

TEST_CASE("adjoint connection is compatible with the horizontal cometric") {
    // hat nabla g*_H = 0: derivative of sum_{i<n} theta^i (x) X_i vanishes
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        FrameAlgebra fa = s.algebra();
        for (const auto& eps : {Epsilon::of(Q(1)), Epsilon::of(Q(3)), Epsilon::inf()}) {
            ConnectionCoeffs ca = adjoint_connection(s, eps);
            MixedJet gh;
            for (int i = 0; i < s.n; ++i) gh.add(Mask(1) << i, Mask(1) << i, Jet(1));
            for (int dir = 0; dir < s.n + s.m; ++dir) {
                MixedJet dg = covariant_derivative_mixed(fa, ca, dir, gh);
                CHECK(dg.normalized().terms.empty());
            }
        }
    }
}

TEST_CASE("divergence of torsion and yang-mills flags") {
    CHECK(all_zero_values(horizontal_divergence_torsion(builtin_model("heisenberg3"))));
    CHECK(yang_mills(builtin_model("heisenberg3")));
    CHECK(yang_mills(builtin_model("hopf_s3")));
    CHECK(yang_mills(builtin_model("hopf_s5")));

    FrameSpec bad = fixtures::non_yang_mills();
    CHECK(!yang_mills(bad));
    // oracle: delta_H T(X_2) = (X_1 gamma) Z with the linear-jet perturbation
    DivTorsion d = horizontal_divergence_torsion(bad);
    CHECK(d.comp[1][2].value() == Q(1));
    CHECK(d.comp[0][2].value() == Q(0));
}

TEST_CASE("trace identity: -Tr J_Z^2 equals the squared torsion pairing") {
    for (const auto& name : kModels) {
        FrameSpec s = builtin_model(name);
        JMap j = j_map(s);
        TorsionTensor tt = torsion(bott_connection(s), s);
        for (int l = 0; l < s.m; ++l) {
            Q tr(0);
            for (int x = 0; x < s.n; ++x)
                for (int k = 0; k < s.n; ++k)
                    tr += j.comp[l][x][k].value() * j.comp[l][k][x].value();
            Q sum(0);
            for (int x = 0; x < s.n; ++x)
                for (int y = 0; y < s.n; ++y) {
                    Q p = tt.at(x, y, s.n + l).value();
                    sum += p * p;
                }
            CHECK(-tr == sum);
        }
    }
}

TEST_CASE("J trace form is negative definite on the rank-two vertical fixture") {
    FrameSpec s = fixtures::m2_nonconstant();
    CHECK(validate(s).find("step2_bracket_generating")->passed);
    JMap j = j_map(s);
    // K[l][p] = Tr(J_l J_p) must be negative definite on the vertical fibre
    Q k00(0), k01(0), k11(0);
    for (int x = 0; x < s.n; ++x)
        for (int c = 0; c < s.n; ++c) {
            k00 += j.comp[0][x][c].value() * j.comp[0][c][x].value();
            k01 += j.comp[0][x][c].value() * j.comp[1][c][x].value();
            k11 += j.comp[1][x][c].value() * j.comp[1][c][x].value();
        }
    CHECK(k00 < Q(0));
    CHECK(k11 < Q(0));
    CHECK(k00 * k11 - k01 * k01 > Q(0)); // determinant of -K positive
}

TEST_CASE("step-2 generation is negative-definiteness of the J trace form") {
    // Z |-> Tr(J_Z^2) negative definite iff the rank check passes
    FrameSpec good = builtin_model("heisenberg5");
    JMap j = j_map(good);
    Q tr(0);
    for (int x = 0; x < good.n; ++x)
        for (int k = 0; k < good.n; ++k)
            tr += j.comp[0][x][k].value() * j.comp[0][k][x].value();
    CHECK(tr < Q(0));
    CHECK(validate(good).find("step2_bracket_generating")->passed);

    FrameSpec bad = builtin_model("heisenberg3");
    bad.structure.gamma[0][1][0] = Jet(Q(0));
    bad.structure.gamma[1][0][0] = Jet(Q(0));
    JMap jb = j_map(bad);
    Q trb(0);
    for (int x = 0; x < 2; ++x)
        for (int k = 0; k < 2; ++k) trb += jb.comp[0][x][k].value() * jb.comp[0][k][x].value();
    CHECK(trb == Q(0));
    CHECK(!validate(bad).find("step2_bracket_generating")->passed);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folia/connections.hpp"
#include "folia/frames_io.hpp"
#include "folia/models.hpp"

using namespace folia;

TEST_CASE("heisenberg3 structure table") {
    FrameSpec s = builtin_model("heisenberg3");
    CHECK(s.n == 2);
    CHECK(s.m == 1);
    CHECK(s.homogeneous);
    CHECK(s.structure.gamma[0][1][0].value() == Q(1));
    CHECK(s.structure.gamma[1][0][0].value() == Q(-1));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) CHECK(s.structure.omega[i][j][k].is_zero());
    CHECK(validate(s).all_passed());
}

TEST_CASE("hopf_s3 is the su(2) frame") {
    FrameSpec s = builtin_model("hopf_s3");
    auto ct = bracket_table(s);
    // [e1,e2] = 2 e3, [e2,e3] = 2 e1, [e3,e1] = 2 e2 with e3 = Z
    CHECK(ct[0][1][2] == Q(2));
    CHECK(ct[1][2][0] == Q(2));
    CHECK(ct[2][0][1] == Q(2));
    CHECK(validate(s).all_passed());
}

TEST_CASE("hopf_s3 J map squares to -4") {
    FrameSpec s = builtin_model("hopf_s3");
    JMap j = j_map(s);
    CHECK(j.comp[0][0][1].value() == Q(-2)); // J_Z X_1 = -2 X_2
    CHECK(j.comp[0][1][0].value() == Q(2));
    // J^2 = -c^2 Id on H, the K-contact-like normalization
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Q acc(0);
            for (int k = 0; k < 2; ++k) acc += j.comp[0][x][k].value() * j.comp[0][k][y].value();
            CHECK(acc == (x == y ? Q(-4) : Q(0)));
        }
}

TEST_CASE("all builtin models validate") {
    for (const auto& name : builtin_model_names()) {
        FrameSpec s = builtin_model(name);
        ValidityReport r = validate(s);
        INFO(name);
        CHECK(r.all_passed());
    }
}

TEST_CASE("contact-type metadata flag") {
    ValidityReport hopf = validate(builtin_model("hopf_s3"));
    CHECK(hopf.find("k_contact_like")->note == "yes, J^2 = -4 Id");
    ValidityReport heis = validate(builtin_model("heisenberg3"));
    CHECK(heis.find("k_contact_like")->note == "yes, J^2 = -1 Id");
    ValidityReport h5 = validate(builtin_model("heisenberg5"));
    CHECK(h5.find("k_contact_like")->note == "yes, J^2 = -1 Id");
    ValidityReport s5 = validate(builtin_model("hopf_s5"));
    CHECK(s5.find("k_contact_like")->note == "yes, J^2 = -4 Id");
}

TEST_CASE("unknown model throws") { CHECK_THROWS_AS(builtin_model("nope"), unknown_model); }

TEST_CASE("berger_s3 shares the hopf frame") {
    FrameSpec a = builtin_model("hopf_s3");
    FrameSpec b = builtin_model("berger_s3");
    CHECK(b.n == a.n);
    CHECK((b.structure.gamma[0][1][0] - a.structure.gamma[0][1][0]).is_zero());
    CHECK((b.structure.sigma[0][0][1] - a.structure.sigma[0][0][1]).is_zero());
}

TEST_CASE("abelian frame fails bracket generation") {
    FrameSpec s = builtin_model("heisenberg3");
    s.structure.gamma[0][1][0] = Jet(Q(0));
    s.structure.gamma[1][0][0] = Jet(Q(0));
    ValidityReport r = validate(s);
    CHECK(!r.all_passed());
    CHECK(!r.find("step2_bracket_generating")->passed);
}

TEST_CASE("injected [X1,Z1] = X2 fails the taming checks") {
    FrameSpec s = builtin_model("heisenberg3");
    s.structure.sigma[0][0][1] = Jet(Q(1)); // not skew against sigma[1][0][0] = 0
    ValidityReport r = validate(s);
    CHECK(!r.all_passed());
    CHECK(!r.find("bundle_like")->passed);
}

TEST_CASE("broken gamma antisymmetry is caught") {
    FrameSpec s = builtin_model("heisenberg3");
    s.structure.gamma[1][0][0] = Jet(Q(1)); // should be -1
    ValidityReport r = validate(s);
    CHECK(!r.find("antisymmetry_omega_gamma")->passed);
}

TEST_CASE("broken beta antisymmetry fails the totally geodesic check") {
    FrameSpec s = fixtures::m2_nonconstant();
    s.structure.beta[0][0][0] = Jet(Q(1)); // beta_{11}^1 must vanish
    ValidityReport r = validate(s);
    CHECK(!r.find("totally_geodesic")->passed);
}

TEST_CASE("homogeneous flag cross-checked against jets") {
    FrameSpec s = builtin_model("heisenberg3");
    Jet g = Jet::zero(4);
    g.set(Word{}, Q(1));
    g.set(Word(1, 0), Q(1)); // linear term
    s.structure.gamma[0][1][0] = g;
    s.structure.gamma[1][0][0] = -g;
    ValidityReport r = validate(s);
    CHECK(!r.find("homogeneous_flag")->passed);
}

TEST_CASE("jacobi failure detected on constant structure") {
    // [X_1,X_2] = X_1 + Z together with a sigma rotation breaks the cyclic sum
    FrameSpec s = builtin_model("heisenberg3");
    s.structure.omega[0][1][0] = Jet(Q(1));
    s.structure.omega[1][0][0] = Jet(Q(-1));
    s.structure.sigma[0][0][1] = Jet(Q(3)); // [X_1, Z] = 3 X_2
    s.structure.sigma[1][0][0] = Jet(Q(-3));
    ValidityReport r = validate(s);
    CHECK(!r.find("jacobi")->passed);
}

TEST_CASE("validate is idempotent and total") {
    FrameSpec s = builtin_model("hopf_s3");
    ValidityReport a = validate(s);
    ValidityReport b = validate(s);
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].passed == b.checks[i].passed);
}

TEST_CASE("fixtures validate as intended") {
    CHECK(validate(fixtures::non_yang_mills()).all_passed());
    CHECK(validate(fixtures::m2_nonconstant()).all_passed());
}

TEST_CASE("json round trip preserves the spec") {
    for (const char* name : {"heisenberg3", "hopf_s3", "hopf_s5"}) {
        FrameSpec s = builtin_model(name);
        std::string text = frame_spec_to_json(s);
        FrameSpec back = frame_spec_from_json(text);
        CHECK(back.n == s.n);
        CHECK(back.m == s.m);
        CHECK(back.homogeneous == s.homogeneous);
        CHECK(back.compact_claim == s.compact_claim);
        for (int i = 0; i < s.n; ++i)
            for (int j = 0; j < s.n; ++j)
                for (int l = 0; l < s.m; ++l)
                    CHECK((back.structure.gamma[i][j][l] - s.structure.gamma[i][j][l]).is_zero());
        for (int i = 0; i < s.n; ++i)
            for (int l = 0; l < s.m; ++l)
                for (int j = 0; j < s.n; ++j)
                    CHECK((back.structure.sigma[i][l][j] - s.structure.sigma[i][l][j]).is_zero());
        CHECK(validate(back).all_passed());
    }
}

TEST_CASE("json parse errors carry locations") {
    CHECK_THROWS_AS(frame_spec_from_json("{"), parse_error);
    CHECK_THROWS_AS(frame_spec_from_json("{\"n\": 2}"), parse_error);
    CHECK_THROWS_WITH_AS(frame_spec_from_json(R"({"n":2,"m":1,"gamma":[[[1]],[[1]]]})"),
                         doctest::Contains("gamma"), parse_error);
}

TEST_CASE("sigma defaults to zero when absent") {
    FrameSpec s = frame_spec_from_json(R"({"n":2,"m":1,
        "gamma":[[[0],[1]],[[-1],[0]]]})");
    CHECK(s.structure.sigma[0][0][1].is_zero());
    CHECK(validate(s).all_passed());
}

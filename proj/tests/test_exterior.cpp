#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folia/exterior.hpp"
#include "folia/jet.hpp"

#include <random>

using namespace folia;

namespace {

const Dims dims{2, 2}; // theta_1, theta_2, nu_1, nu_2 over X_1, X_2, Z_1, Z_2

Form<Q> mono(Mask w, const Q& c = Q(1)) {
    Form<Q> f(mono_degree(w));
    f.add_term(w, c);
    return f;
}

Mask th(int i) { return Mask(1) << i; }            // theta_{i+1}
Mask nu(int l) { return Mask(1) << (dims.n + l); } // nu_{l+1}

Form<Q> random_form(int degree, std::mt19937_64& rng) {
    Form<Q> f(degree);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    for (Mask w : basis_monomials(degree, dims)) f.add_term(w, Q(num(rng), den(rng)));
    return f;
}

MixedTensor<Q> random_mixed(int i, int j, std::mt19937_64& rng) {
    MixedTensor<Q> nu_;
    std::uniform_int_distribution<int> num(-3, 3);
    for (Mask f : basis_monomials(i, dims))
        for (Mask v : basis_monomials(j, dims)) {
            int c = num(rng);
            if (c) nu_.add(f, v, Q(c));
        }
    return nu_;
}

bool forms_equal(const Form<Q>& a, const Form<Q>& b) {
    Form<Q> d = a - b;
    return d.is_zero();
}

} // namespace

TEST_CASE("wedge basis products") {
    CHECK(forms_equal(wedge(mono(th(0)), mono(th(1))), mono(th(0) | th(1))));
    CHECK(forms_equal(wedge(mono(th(1)), mono(th(0))), mono(th(0) | th(1), Q(-1))));
    // alpha ^ alpha = 0 for one-forms
    Form<Q> a = mono(th(0)) + mono(nu(0));
    CHECK(wedge(a, a).is_zero());
}

TEST_CASE("wedge bilinearity and degree") {
    std::mt19937_64 rng(5);
    Form<Q> a = random_form(1, rng), b = random_form(2, rng), c = random_form(2, rng);
    CHECK(forms_equal(wedge(a, b + c), wedge(a, b) + wedge(a, c)));
    CHECK(wedge(a, b).degree == 3);
    // degree overflow annihilates
    Form<Q> top = random_form(4, rng);
    CHECK(wedge(top, a).is_zero());
}

TEST_CASE("contraction examples") {
    Form<Q> t12 = mono(th(0) | th(1));
    CHECK(forms_equal(contract(0, t12), mono(th(1))));
    CHECK(contract(dims.n, t12).is_zero()); // vertical into horizontal form
    CHECK(forms_equal(contract(1, t12), mono(th(0), Q(-1))));
}

TEST_CASE("contraction is an antiderivation") {
    std::mt19937_64 rng(7);
    for (int da = 0; da <= 2; ++da)
        for (int db = 0; db <= 2; ++db) {
            Form<Q> a = random_form(da, rng), b = random_form(db, rng);
            for (int s = 0; s < dims.total(); ++s) {
                Form<Q> lhs = contract(s, wedge(a, b));
                Form<Q> rhs = wedge(contract(s, a), b);
                Form<Q> second = wedge(a, contract(s, b));
                if (da % 2 == 1) rhs = rhs - second;
                else rhs = rhs + second;
                CHECK(forms_equal(lhs, rhs));
            }
        }
}

TEST_CASE("apply_C basic rules") {
    // scalar tensor acts as the identity
    MixedTensor<Q> one;
    one.add(0, 0, Q(1));
    std::mt19937_64 rng(11);
    Form<Q> a = random_form(2, rng);
    CHECK(forms_equal(apply_C(one, a), a));

    // an endomorphism acts as a derivation on wedge factors
    MixedTensor<Q> s = random_mixed(1, 1, rng);
    Form<Q> a1 = random_form(1, rng), a2 = random_form(1, rng);
    Form<Q> lhs = apply_C(s, wedge(a1, a2));
    Form<Q> rhs = wedge(apply_C(s, a1), a2) + wedge(a1, apply_C(s, a2));
    CHECK(forms_equal(lhs, rhs));

    // grade (2,2) annihilates one-forms
    MixedTensor<Q> t22 = random_mixed(2, 2, rng);
    CHECK(apply_C(t22, random_form(1, rng)).is_zero());
}

TEST_CASE("apply_C grading") {
    std::mt19937_64 rng(13);
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) {
            MixedTensor<Q> nu_ = random_mixed(i, j, rng);
            for (int k = 0; k <= dims.total(); ++k) {
                Form<Q> a = random_form(k, rng);
                Form<Q> img = apply_C(nu_, a);
                if (k < j) CHECK(img.is_zero());
                if (!img.is_zero()) CHECK(img.degree == k + i - j);
            }
        }
}

TEST_CASE("commutation rule with contraction") {
    // C_X C_nu = C_{iota_X nu} + (-1)^{i-j} C_nu C_X on homogeneous nu
    std::mt19937_64 rng(17);
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) {
            MixedTensor<Q> nu_ = random_mixed(i, j, rng);
            for (int s = 0; s < dims.total(); ++s)
                for (int k = 0; k <= dims.total(); ++k) {
                    Form<Q> a = random_form(k, rng);
                    Form<Q> lhs = contract(s, apply_C(nu_, a));
                    Form<Q> rhs = apply_C(contract_mixed(s, nu_), a);
                    Form<Q> tail = apply_C(nu_, contract(s, a));
                    if ((i - j) % 2 != 0) rhs = rhs - tail;
                    else rhs = rhs + tail;
                    CHECK(forms_equal(lhs, rhs));
                }
        }
}

TEST_CASE("inner product weights") {
    Epsilon e = Epsilon::of(Q(5, 3));
    CHECK(inner_eps(mono(th(0)), mono(th(0)), dims, e) == Q(1));
    CHECK(inner_eps(mono(nu(0)), mono(nu(0)), dims, e) == Q(5, 3));
    CHECK(inner_eps(mono(th(0) | nu(0)), mono(th(0) | nu(0)), dims, e) == Q(5, 3));
    CHECK(inner_eps(mono(nu(0) | nu(1)), mono(nu(0) | nu(1)), dims, e) == Q(25, 9));
    CHECK_THROWS_AS(inner_eps(mono(th(0)), mono(th(0) | th(1)), dims, e), std::invalid_argument);
}

TEST_CASE("inner product positive definite, monomials orthogonal") {
    std::mt19937_64 rng(19);
    Epsilon e = Epsilon::of(Q(1, 7));
    for (int k = 0; k <= dims.total(); ++k) {
        Form<Q> a = random_form(k, rng);
        if (!a.is_zero()) CHECK(inner_eps(a, a, dims, e) > Q(0));
    }
    CHECK(inner_eps(mono(th(0)), mono(th(1)), dims, e) == Q(0));
}

TEST_CASE("bigrade split") {
    Form<Q> f = mono(th(0) | th(1));
    auto parts = bigrade_split(f, dims);
    CHECK(parts.size() == 1);
    CHECK(parts.count({2, 0}) == 1);

    Form<Q> g = mono(th(0) | nu(0)) + mono(nu(0) | nu(1));
    auto gp = bigrade_split(g, dims);
    CHECK(gp.size() == 2);
    CHECK(forms_equal(gp.at({1, 1}), mono(th(0) | nu(0))));
    CHECK(forms_equal(gp.at({0, 2}), mono(nu(0) | nu(1))));

    Form<Q> h(0);
    h.add_term(0, Q(3));
    auto hp = bigrade_split(h, dims);
    CHECK(hp.size() == 1);
    CHECK(forms_equal(hp.at({0, 0}), h));

    // components sum back
    std::mt19937_64 rng(23);
    Form<Q> r = random_form(2, rng);
    Form<Q> sum(2);
    for (const auto& [ij, part] : bigrade_split(r, dims))
        for (const auto& [w, c] : part.coeffs) sum.add_term(w, c);
    CHECK(forms_equal(sum, r));
}

TEST_CASE("star involution examples") {
    MixedTensor<Q> nu_;
    nu_.add(th(0), Mask(1) << 1, Q(1)); // theta_1 (x) X_2
    MixedTensor<Q> st = star_involution(nu_);
    REQUIRE(st.terms.size() == 1);
    CHECK(st.terms[0].fmask == (Mask(1) << 1));
    CHECK(st.terms[0].vmask == th(0));

    std::mt19937_64 rng(29);
    MixedTensor<Q> r = random_mixed(2, 1, rng);
    MixedTensor<Q> twice = star_involution(star_involution(r)).normalized();
    MixedTensor<Q> d = twice - r.normalized();
    CHECK(d.normalized().terms.empty());
}

TEST_CASE("star involution is the g-adjoint, brute force over all basis forms") {
    std::mt19937_64 rng(31);
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) {
            MixedTensor<Q> nu_ = random_mixed(i, j, rng);
            MixedTensor<Q> st = star_involution(nu_);
            for (int ka = 0; ka <= dims.total(); ++ka) {
                int kb = ka + i - j;
                if (kb < 0 || kb > dims.total()) continue;
                for (Mask wa : basis_monomials(ka, dims))
                    for (Mask wb : basis_monomials(kb, dims)) {
                        Q lhs = inner_g(apply_C(nu_, mono(wa)), mono(wb), dims);
                        Q rhs = inner_g(mono(wa), apply_C(st, mono(wb)), dims);
                        CHECK(lhs == rhs);
                    }
            }
        }
}

TEST_CASE("double coefficients instantiate the same algebra") {
    Form<double> a(1), b(1);
    a.add_term(th(0), 1.5);
    a.add_term(nu(0), -2.0);
    b.add_term(th(1), 0.5);
    Form<double> w = wedge(a, b);
    CHECK(w.coeffs.at(th(0) | th(1)) == doctest::Approx(0.75));
    CHECK(inner_eps(a, a, dims, Epsilon::of(Q(2))) == doctest::Approx(1.5 * 1.5 + 2.0 * 2.0 * 2.0));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folia/rational.hpp"

using folia::Epsilon;
using folia::Q;

TEST_CASE("construction normalizes") {
    CHECK(Q(2, 4) == Q(1, 2));
    CHECK(Q(-2, -4) == Q(1, 2));
    CHECK(Q(2, -4) == Q(-1, 2));
    CHECK(Q(0, 7) == Q(0));
    CHECK(Q(0).den() == 1);
}

TEST_CASE("field operations") {
    Q a(3, 4), b(-2, 5);
    CHECK(a + b == Q(7, 20));
    CHECK(a - b == Q(23, 20));
    CHECK(a * b == Q(-3, 10));
    CHECK(a / b == Q(-15, 8));
    CHECK(-a == Q(-3, 4));
    CHECK(a.abs() == a);
    CHECK(b.abs() == Q(2, 5));
}

TEST_CASE("ordering") {
    CHECK(Q(1, 3) < Q(1, 2));
    CHECK(Q(-1, 2) < Q(-1, 3));
    CHECK(Q(7, 3) > Q(2));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Q(1) / Q(0), std::domain_error);
    CHECK_THROWS_AS(Q(1, 0), std::domain_error);
}

TEST_CASE("overflow is loud, not silent") {
    Q big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, folia::overflow_error);
}

TEST_CASE("string round trip") {
    CHECK(Q::from_string("-7/3") == Q(-7, 3));
    CHECK(Q::from_string("12") == Q(12));
    CHECK(Q(-7, 3).str() == "-7/3");
    CHECK(Q(5).str() == "5");
}

TEST_CASE("epsilon") {
    Epsilon e = Epsilon::of(Q(1, 4));
    CHECK(e.inv() == Q(4));
    CHECK(Epsilon::inf().inv() == Q(0));
    CHECK(Epsilon::inf().str() == "inf");
    CHECK_THROWS_AS(Epsilon::of(Q(0)), std::domain_error);
    CHECK_THROWS_AS(Epsilon::of(Q(-2)), std::domain_error);
}

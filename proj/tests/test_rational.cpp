#include <catch2/catch_amalgamated.hpp>

#include "mpsched/rational.hpp"

using namespace mpsched;

TEST_CASE("rational parsing accepts a, a/b and decimals") {
    CHECK(*rat_parse("7") == make_rational(7));
    CHECK(*rat_parse("3/2") == make_rational(3, 2));
    CHECK(*rat_parse("4/6") == make_rational(2, 3));
    CHECK(*rat_parse("0.25") == make_rational(1, 4));
    CHECK(*rat_parse("-5/10") == make_rational(-1, 2));
    CHECK_FALSE(rat_parse(""));
    CHECK_FALSE(rat_parse("x"));
    CHECK_FALSE(rat_parse("1/"));
    CHECK_FALSE(rat_parse("1/0"));
    CHECK_FALSE(rat_parse("1.2.3"));
}

TEST_CASE("formatting is lowest-terms a/b") {
    CHECK(rat_str(make_rational(15, 2)) == "15/2");
    CHECK(rat_str(make_rational(6, 3)) == "2");
    CHECK(rat_decimal(make_rational(15, 2)) == "7.500000");
    CHECK(rat_decimal(make_rational(1, 3)) == "0.333333");
    CHECK(rat_decimal(make_rational(2, 3)) == "0.666667");
    CHECK(rat_decimal(make_rational(-1, 2)) == "-0.500000");
}

TEST_CASE("floor and ceiling") {
    CHECK(rat_floor_ll(make_rational(7, 2)) == 3);
    CHECK(rat_ceil_ll(make_rational(7, 2)) == 4);
    CHECK(rat_floor_ll(make_rational(-7, 2)) == -4);
    CHECK(rat_floor_ll(make_rational(6)) == 6);
}

TEST_CASE("powers of two") {
    CHECK(pow2_rational(3) == make_rational(8));
    CHECK(pow2_rational(-2) == make_rational(1, 4));
    CHECK(rat_is_pow2(make_rational(8)));
    CHECK(rat_is_pow2(make_rational(1, 4)));
    CHECK_FALSE(rat_is_pow2(make_rational(3)));
    CHECK_FALSE(rat_is_pow2(make_rational(3, 2)));
    CHECK_FALSE(rat_is_pow2(make_rational(0)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capq/quadfield.hpp"

#include <optional>

using namespace capq;

// Independent oracle: the fundamental unit is the unit > 1 with smallest y.
// Scan Y = 2y upward and look for X with X^2 - d Y^2 = -4 or +4 (elements
// (X + Y sqrt(d))/2; X, Y must be even when d != 1 mod 4).
static std::optional<QuadUnit> brute_unit(long d, long y_limit) {
    for (long Y = 1; Y <= 2 * y_limit; ++Y) {
        if (d % 4 != 1 && Y % 2 != 0) continue;
        BigInt dy2 = BigInt(d) * Y * Y;
        for (int norm : {-1, +1}) {
            BigInt x2 = dy2 + 4 * norm;
            if (x2 < 0) continue;
            auto X = perfect_square(x2);
            if (!X) continue;
            if (d % 4 != 1 && *X % 2 != 0) continue;
            if (d % 4 == 1 && (*X - Y) % 2 != 0) continue;
            QuadUnit u;
            u.d = d;
            u.x = ratio(*X, BigInt(2));
            u.y = ratio(BigInt(Y), BigInt(2));
            u.norm = norm;
            return u;
        }
    }
    return std::nullopt;
}

TEST_CASE("fundamental_unit matches the brute-force oracle for small d") {
    for (long d = 2; d <= 120; ++d) {
        if (!is_squarefree(d)) continue;
        auto expect = brute_unit(d, 300000);
        REQUIRE(expect.has_value());
        QuadUnit got = fundamental_unit(d);
        CAPTURE(d);
        REQUIRE(got.x == expect->x);
        REQUIRE(got.y == expect->y);
        REQUIRE(got.norm == expect->norm);
    }
}

TEST_CASE("fundamental_unit pinned values") {
    QuadUnit u2 = fundamental_unit(2);
    CHECK(u2.x == 1);
    CHECK(u2.y == 1);
    CHECK(u2.norm == -1);

    QuadUnit u238 = fundamental_unit(238);
    CHECK(u238.x == 11663);
    CHECK(u238.y == 756);  // (11664 * 11662) / 238 = 756^2
    CHECK(u238.norm == 1);

    QuadUnit u34 = fundamental_unit(34);
    CHECK(u34.x == 35);
    CHECK(u34.y == 6);
    CHECK(u34.norm == 1);

    QuadUnit u5 = fundamental_unit(5);  // (1 + sqrt 5)/2
    CHECK(u5.x == BigRat(1, 2));
    CHECK(u5.y == BigRat(1, 2));
    CHECK(u5.norm == -1);
}

TEST_CASE("fundamental_unit rejects bad d") {
    CHECK_THROWS_AS(fundamental_unit(1), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_unit(0), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_unit(12), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_unit(-7), std::invalid_argument);
}

TEST_CASE("unit identity and norm +1 square exclusions over a sweep") {
    for (long d = 2; d < 2000; ++d) {
        if (!is_squarefree(d)) continue;
        QuadUnit u = fundamental_unit(d);
        CAPTURE(d);
        REQUIRE(u.x * u.x - BigRat(d) * u.y * u.y == u.norm);
        REQUIRE(u.x.get_den() == u.y.get_den());
        REQUIRE(u.x.get_den() <= 2);
        if (u.x.get_den() == 2) REQUIRE(d % 4 == 1);
        if (u.norm == 1 && u.integral()) {
            // for a norm +1 unit none of 2(x+-1), 2d(x+-1) is a square
            BigInt x = u.xi();
            for (int sign : {+1, -1}) {
                REQUIRE(!perfect_square(2 * (x + sign)).has_value());
                REQUIRE(!perfect_square(2 * BigInt(d) * (x + sign)).has_value());
            }
        }
    }
}

TEST_CASE("square_class_case pinned examples") {
    SquareClassCase c238 = square_class_case(fundamental_unit(238), 17);
    CHECK(c238.kind == SquareCase::XPlus);
    CHECK(c238.root == 108);

    SquareClassCase c582 = square_class_case(fundamental_unit(582), 97);
    CHECK(c582.kind == SquareCase::TwoPxPlus);
    CHECK(c582.root == 194);  // 193^2 - 1 = 582 * 8^2

    SquareClassCase c374 = square_class_case(fundamental_unit(374), 17);
    CHECK(c374.kind == SquareCase::XMinus);
    CHECK(c374.root == 58);
}

TEST_CASE("square_class_case rejects norm -1 and bad p") {
    CHECK_THROWS_AS(square_class_case(fundamental_unit(10), 5), std::invalid_argument);
    CHECK_THROWS_AS(square_class_case(fundamental_unit(238), 5), std::invalid_argument);
}

TEST_CASE("trichotomy: exactly one case fires across a pair sweep") {
    for (long p : {5L, 13L, 17L, 29L, 37L, 41L, 53L, 61L, 73L, 89L, 97L}) {
        for (long q : {3L, 7L, 11L, 19L, 23L, 31L, 43L, 47L}) {
            CAPTURE(p);
            CAPTURE(q);
            // square_class_case throws if zero or two cases verify
            SquareClassCase cx = square_class_case(fundamental_unit(2 * p * q), p);
            SquareClassCase ca = square_class_case(fundamental_unit(p * q), p);
            BigInt x = fundamental_unit(2 * p * q).xi();
            REQUIRE(cx.c1 * cx.y1 * cx.y1 * cx.c2 * cx.y2 * cx.y2 == x * x - 1);
            BigInt a = fundamental_unit(p * q).xi();
            REQUIRE(ca.c1 * ca.y1 * ca.y1 * ca.c2 * ca.y2 * ca.y2 == a * a - 1);
        }
    }
}

TEST_CASE("two_eps_square") {
    QuadUnit u7 = fundamental_unit(7);  // 8 + 3 sqrt 7
    auto r7 = two_eps_square(u7);
    REQUIRE(r7.root.has_value());
    CHECK(r7.root->first == 3);
    CHECK(r7.root->second == 1);  // (3 + sqrt 7)^2 = 2 eps_7

    auto r34 = two_eps_square(fundamental_unit(34));
    REQUIRE(r34.root.has_value());

    auto r10 = two_eps_square(fundamental_unit(10));
    CHECK(!r10.root.has_value());
    CHECK(r10.reason == "norm -1");

    auto r30 = two_eps_square(fundamental_unit(30));  // 2p(x-1) case for p = 5
    CHECK(!r30.root.has_value());
    CHECK(r30.reason == "x+-1 not a square");
}

TEST_CASE("check_q3_unit small primes") {
    Q3UnitReport r3 = check_q3_unit(3);
    CHECK(r3.unit.x == 2);
    CHECK(!r3.x_plus_side);
    CHECK(r3.root == 1);

    Q3UnitReport r7 = check_q3_unit(7);
    CHECK(r7.x_plus_side);
    CHECK(r7.root == 3);

    Q3UnitReport r11 = check_q3_unit(11);
    CHECK(r11.unit.x == 10);
    CHECK(!r11.x_plus_side);
    CHECK(r11.root == 3);

    CHECK_THROWS_AS(check_q3_unit(5), std::invalid_argument);
    CHECK_THROWS_AS(check_q3_unit(9), std::invalid_argument);
}

TEST_CASE("q = 3 mod 4 sweep under 200") {
    for (long q = 3; q < 200; q += 4)
        if (is_prime(BigInt(q))) check_q3_unit(q);  // throws on any violated assertion
}

TEST_CASE("norm +1 for eps_2p forces p = 1 mod 8 when p = 1 mod 4 (p < 2000)") {
    for (long p = 5; p < 2000; p += 4) {
        if (!is_prime(BigInt(p))) continue;
        if (fundamental_unit(2 * p).norm == 1) REQUIRE(p % 8 == 1);
    }
}

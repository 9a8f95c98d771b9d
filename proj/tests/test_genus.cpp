#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capq/genus.hpp"

using namespace capq;

TEST_CASE("ideal label algebra") {
    IdealLabel h0 = IdealLabel::H0(), h1 = IdealLabel::H1();
    CHECK(h0.str() == "H0");
    CHECK((h0 * h1).str() == "H0*H1");
    CHECK((h0 * h0).str() == "1");
    CHECK(parse_ideal_label("H0H1I") == IdealLabel(1u | 2u | 8u));
    CHECK(parse_ideal_label("H1*H2") == IdealLabel(2u | 4u));
    CHECK(parse_ideal_label("1") == IdealLabel());
    CHECK_THROWS_AS(parse_ideal_label("H7"), std::invalid_argument);
}

TEST_CASE("ramified_count is 4") {
    CHECK(ramified_count(17, 7) == 4);
    CHECK(ramified_count(5, 3) == 4);
    CHECK(ramified_count(97, 3) == 4);
}

TEST_CASE("i_is_norm") {
    CHECK(i_is_norm(17, 7));
    CHECK(!i_is_norm(5, 3));
    CHECK(i_is_norm(97, 3));
    CHECK(i_is_norm(73, 3));
    CHECK(!i_is_norm(13, 7));
}

TEST_CASE("ambiguous_sizes representative branches") {
    AmbiguousReport a = ambiguous_sizes(17, 7);
    CHECK(a.am_order == 8);
    CHECK(a.am_s_order == 8);
    CHECK(a.e == 0);
    CHECK(a.rank == 3);
    CHECK(!a.h1_equals_h2);

    AmbiguousReport b = ambiguous_sizes(97, 3);
    CHECK(b.am_order == 8);
    CHECK(b.am_s_order == 4);
    CHECK(b.e == 0);
    CHECK(b.rank == 3);
    CHECK(b.h1_equals_h2);
    REQUIRE(b.aux.has_value());  // Am = <[H0], [H1], [I]>
    CHECK(b.aux->l == 17);
    CHECK(!a.aux.has_value());

    AmbiguousReport c = ambiguous_sizes(5, 3);
    CHECK(c.am_order == 4);
    CHECK(c.am_s_order == 4);
    CHECK(c.e == 1);
    CHECK(c.rank == 2);
}

TEST_CASE("strong_generators") {
    auto g1 = strong_generators(17, 7);
    REQUIRE(g1.size() == 3);
    CHECK(g1[0].str() == "H0");
    CHECK(g1[1].str() == "H1");
    CHECK(g1[2].str() == "H2");
    CHECK(strong_generators(97, 3).size() == 2);
    CHECK(strong_generators(5, 3).size() == 2);
}

TEST_CASE("ambiguous sweep p, q < 500: am = 2^rank and rank 3 iff p = 1 mod 8") {
    for (long p = 5; p < 500; p += 4) {
        if (!is_prime(BigInt(p))) continue;
        for (long q = 3; q < 500; q += 4) {
            if (!is_prime(BigInt(q))) continue;
            AmbiguousReport r = ambiguous_sizes(p, q);
            CAPTURE(p);
            CAPTURE(q);
            REQUIRE(r.am_order == (1L << r.rank));
            REQUIRE((r.rank == 3) == (p % 8 == 1));
            long quot = r.am_order / r.am_s_order;
            REQUIRE((quot == 1 || quot == 2));
            if (quot == 2) {
                // the quotient is 2 exactly when i is a norm but x+-1 is not square
                REQUIRE(r.e == 0);
                REQUIRE(r.h1_equals_h2);
            }
            if (p % 8 == 5) {
                SquareClassCase tri = square_class_case(fundamental_unit(2 * p * q), p);
                REQUIRE(!case_xpm1(tri.kind));
            }
        }
    }
}

TEST_CASE("find_auxiliary_prime for (97, 3)") {
    auto ev = find_auxiliary_prime(97, 3, 1000);
    REQUIRE(ev.has_value());
    CHECK(ev->l % 4 == 1);
    CHECK(kronecker(BigInt(582), BigInt(ev->l)) == 1);
    CHECK(kronecker(BigInt(3), BigInt(ev->l)) == -1);
    CHECK(kronecker(BigInt(194), BigInt(ev->l)) == -1);  // (2p | l) = -1
    CHECK(!ev->cert_I.empty());
    CHECK(!ev->cert_H0I.empty());
    CHECK(ev->cert_I == "K2");
    // smallest such prime: l = 5, 13 fail the symbol conditions, l = 17 works
    CHECK(ev->l == 17);
}

TEST_CASE("find_auxiliary_prime postconditions across applicable pairs") {
    for (auto [p, q] : {std::pair<long, long>{97, 3}, {17, 19}, {73, 3}, {17, 83}, {97, 31}}) {
        auto ev = find_auxiliary_prime(p, q, 100000);
        CAPTURE(p);
        CAPTURE(q);
        REQUIRE(ev.has_value());
        REQUIRE(ev->l % 4 == 1);
        REQUIRE(kronecker(BigInt(2 * p * q), BigInt(ev->l)) == 1);
        REQUIRE(kronecker(BigInt(q), BigInt(ev->l)) == -1);
        REQUIRE(kronecker(BigInt(2 * p), BigInt(ev->l)) == -1);
        REQUIRE(!ev->cert_H1I.empty());
        REQUIRE(!ev->cert_H0H1I.empty());
    }
}

TEST_CASE("find_auxiliary_prime reaches the residue-symbol evidence") {
    // (17, 19): l = 13 has (2|13) = -1 and (2|19) = -1, so certifying H0*I
    // falls to the k(sqrt(pi1)) / k(sqrt(2*pi1)) pair via (1+i | pi1)
    auto ev = find_auxiliary_prime(17, 19, 1000);
    REQUIRE(ev.has_value());
    CHECK(ev->l == 13);
    REQUIRE(ev->residue_sym_1pi.has_value());
    CHECK((ev->cert_H0I == "K4" || ev->cert_H0I == "K5"));
    CHECK(ev->cert_H0I == (ev->residue_sym_1pi == -1 ? "K4" : "K5"));
}

TEST_CASE("find_auxiliary_prime respects the bound without fabricating") {
    CHECK(!find_auxiliary_prime(97, 3, 3).has_value());
}

TEST_CASE("find_auxiliary_prime preconditions") {
    CHECK_THROWS_AS(find_auxiliary_prime(5, 3, 1000), std::invalid_argument);   // p = 5 mod 8
    CHECK_THROWS_AS(find_auxiliary_prime(17, 7, 1000), std::invalid_argument);  // x+1 square
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capq/units.hpp"

#include <set>

using namespace capq;

static std::vector<std::string> gen_texts(const FsuReport& r) {
    std::vector<std::string> v;
    for (const auto& g : r.generators) v.push_back(g.text);
    return v;
}

static void require_certificates(const FsuReport& r) {
    for (const auto& c : r.certificates) {
        CAPTURE(c.claim);
        REQUIRE(c.root * c.root == c.square);
    }
    for (const auto& g : r.generators) REQUIRE(unit_check(g.value));
}

TEST_CASE("n0_of") {
    CyclotomicData k3 = n0_of(field_K3(17, 7));
    CHECK(k3.n0 == 3);
    CHECK(k3.mu == sqrt_radicand(field_K3(17, 7), 2));
    CyclotomicData k1 = n0_of(field_K1(17, 7));
    CHECK(k1.n0 == 2);
    CHECK(k1.mu.is_zero());
    CHECK(k1.lambda == MQElem(field_K1(17, 7), BigRat(2)));
    CHECK(n0_of(field_k(17, 7)).n0 == 2);
    CHECK_THROWS_AS(n0_of(MQField({2, 119})), std::invalid_argument);
}

TEST_CASE("fsu_k branches") {
    FsuReport a = fsu_k(17, 7);
    CHECK(gen_texts(a) == std::vector<std::string>{"sqrt(i*eps_238)"});
    CHECK(a.half_ladder);
    require_certificates(a);

    FsuReport b = fsu_k(97, 3);
    CHECK(gen_texts(b) == std::vector<std::string>{"eps_582"});
    CHECK(!b.half_ladder);

    FsuReport c = fsu_k(17, 11);
    CHECK(gen_texts(c) == std::vector<std::string>{"sqrt(i*eps_374)"});
    CHECK(c.half_ladder);
    require_certificates(c);

    CHECK_THROWS_AS(fsu_k(7, 17), std::invalid_argument);
    CHECK_THROWS_AS(fsu_k(15, 7), std::invalid_argument);
}

TEST_CASE("fsu_K1 branches") {
    FsuReport a = fsu_K1(17, 7);
    CHECK(gen_texts(a) == std::vector<std::string>{"eps_17", "sqrt(i*eps_14)", "sqrt(eps_14*eps_238)"});
    CHECK(a.hasse_q == 2);
    require_certificates(a);

    FsuReport b = fsu_K1(97, 3);  // 2p(x+1) = 194^2
    CHECK(gen_texts(b) == std::vector<std::string>{"eps_97", "sqrt(i*eps_6)", "sqrt(eps_582)"});
    CHECK(b.hasse_q == 2);
    require_certificates(b);
}

TEST_CASE("fsu_K2 branches") {
    FsuReport a = fsu_K2(17, 7);  // N(eps_34) = +1, x+1 square
    CHECK(gen_texts(a) == std::vector<std::string>{"sqrt(i*eps_7)", "sqrt(i*eps_34)", "sqrt(i*eps_238)"});
    CHECK(a.hasse_q == 2);
    require_certificates(a);

    FsuReport b = fsu_K2(5, 3);  // N(eps_10) = -1, 2p(x-1) = 100
    CHECK(gen_texts(b) == std::vector<std::string>{"sqrt(i*eps_3)", "eps_10", "sqrt(eps_3*eps_30)"});
    require_certificates(b);

    FsuReport c = fsu_K2(5, 11);  // N(eps_10) = -1, p(x-1) = 100
    CHECK(gen_texts(c) == std::vector<std::string>{"sqrt(i*eps_11)", "eps_10", "sqrt(eps_110)"});
    require_certificates(c);

    FsuReport d = fsu_K2(73, 3);  // N(eps_146) = +1, p(x-1) = 146^2
    CHECK(gen_texts(d) == std::vector<std::string>{"sqrt(i*eps_3)", "sqrt(i*eps_146)", "sqrt(eps_438)"});
    require_certificates(d);
}

TEST_CASE("fsu_K3 branches") {
    FsuReport c1q2 = fsu_K3(17, 7);  // both squares, Q = 2
    CHECK(c1q2.hasse_q == 2);
    REQUIRE(c1q2.generators.size() == 3);
    CHECK(c1q2.generators[0].text == "eps_2");
    CHECK(c1q2.generators[1].text == "sqrt(eps_119)");
    CHECK(c1q2.generators[2].text.substr(0, 9) == "sqrt(xi8^");
    require_certificates(c1q2);

    FsuReport c1q1 = fsu_K3(17, 11);  // both squares, Q = 1
    CHECK(c1q1.hasse_q == 1);
    CHECK(gen_texts(c1q1) == std::vector<std::string>{"eps_2", "sqrt(eps_187)", "sqrt(eps_374)"});
    require_certificates(c1q1);

    FsuReport c2 = fsu_K3(41, 23);  // x+1 square, a+-1 not
    CHECK(c2.hasse_q == 1);
    CHECK(gen_texts(c2) == std::vector<std::string>{"eps_2", "eps_943", "sqrt(eps_1886)"});
    require_certificates(c2);

    FsuReport c3 = fsu_K3(97, 3);  // a+-1 square, x+-1 not
    CHECK(c3.hasse_q == 1);
    CHECK(gen_texts(c3) == std::vector<std::string>{"eps_2", "eps_582", "sqrt(eps_291)"});
    require_certificates(c3);

    FsuReport c4 = fsu_K3(5, 3);  // neither square
    CHECK(c4.hasse_q == 1);
    CHECK(gen_texts(c4) == std::vector<std::string>{"eps_2", "eps_15", "sqrt(eps_15*eps_30)"});
    require_certificates(c4);
}

TEST_CASE("hasse_Q_K3") {
    CHECK(hasse_Q_K3(17, 7) == 2);
    CHECK(hasse_Q_K3(17, 11) == 1);
    CHECK_THROWS_AS(hasse_Q_K3(5, 3), std::invalid_argument);
}

TEST_CASE("(2+sqrt2) times unit combinations are never squares in K3+") {
    for (auto [p, q] : {std::pair<long, long>{17, 7}, {5, 3}}) {
        MQField f = field_K3_plus(p, q);
        MQElem e2 = embed_unit(f, fundamental_unit(2));
        MQElem epq = embed_unit(f, fundamental_unit(p * q));
        MQElem e2pq = embed_unit(f, fundamental_unit(2 * p * q));
        MQElem base = MQElem(f, BigRat(2)) + sqrt_radicand(f, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    MQElem t = base * e2.pow(i) * epq.pow(j) * e2pq.pow(k);
                    CAPTURE(i);
                    CAPTURE(j);
                    CAPTURE(k);
                    REQUIRE(!mq_is_square(t).has_value());
                    REQUIRE(!mq_is_square(-t).has_value());
                }
    }
}

TEST_CASE("norm_unit_group descriptions") {
    NormUnitGroup n1 = norm_unit_group(1, fsu_K1(17, 7), 17, 7);
    CHECK(n1.description == "<i, eps_238>");
    CHECK(n1.eps_level == 2);
    NormUnitGroup n2 = norm_unit_group(2, fsu_K2(17, 7), 17, 7);
    CHECK(n2.description == "<i, eps_238>");
    NormUnitGroup n3 = norm_unit_group(3, fsu_K3(17, 7), 17, 7);  // Q = 2
    CHECK(n3.description == "<i, sqrt(i*eps_238)>");
    CHECK(n3.eps_level == 1);
    NormUnitGroup n3b = norm_unit_group(3, fsu_K3(97, 3), 97, 3);  // a-only branch
    CHECK(n3b.description == "<i, eps_582^2>");
    CHECK(n3b.eps_level == 4);
}

TEST_CASE("unit_index") {
    CHECK(unit_index(17, 7, 1) == 2);
    CHECK(unit_index(97, 3, 1) == 1);
    CHECK(unit_index(17, 7, 3) == 1);   // Q_K3 = 2
    CHECK(unit_index(17, 11, 3) == 2);  // Q_K3 = 1
    CHECK(unit_index(41, 23, 3) == 2);  // x-only branch
    CHECK(unit_index(97, 3, 3) == 2);   // a-only branch
    CHECK(unit_index(5, 3, 3) == 1);    // neither
}

TEST_CASE("hasse index is 2 for K1 and K2 across a small sweep") {
    for (long p : {5L, 13L, 17L, 29L}) {
        for (long q : {3L, 7L, 11L}) {
            CHECK(fsu_K1(p, q).hasse_q == 2);
            CHECK(fsu_K2(p, q).hasse_q == 2);
            int q3 = fsu_K3(p, q).hasse_q;
            CHECK((q3 == 1 || q3 == 2));
        }
    }
}

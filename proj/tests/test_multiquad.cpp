#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capq/multiquad.hpp"

#include <random>

using namespace capq;

TEST_CASE("field construction and basis") {
    MQField f({-1, 2, 119});
    CHECK(f.rank() == 3);
    CHECK(f.dim() == 8);
    CHECK(f.contains_i());
    CHECK(f.basis_radicand(0) == 1);
    CHECK(f.mask_of(238).has_value());   // sqrt(2)*sqrt(119)
    CHECK(f.mask_of(-238).has_value());  // i*sqrt(238)
    CHECK(!f.mask_of(5).has_value());

    CHECK_THROWS_AS(MQField({4}), std::invalid_argument);        // not squarefree
    CHECK_THROWS_AS(MQField({2, 6}), std::invalid_argument);     // not coprime
    CHECK_THROWS_AS(MQField({-1, 1}), std::invalid_argument);
}

TEST_CASE("(1+sqrt2)(1-sqrt2) = -1") {
    MQField f({2});
    MQElem one(f, BigRat(1));
    MQElem s2 = sqrt_radicand(f, 2);
    CHECK((one + s2) * (one - s2) == MQElem(f, BigRat(-1)));
}

TEST_CASE("(2 + (1+i) sqrt 2)/2 squares to (1+i)(1+sqrt2)") {
    MQField f({-1, 2});
    MQElem half(f, BigRat(1, 2));
    MQElem alpha = half * (MQElem(f, BigRat(2)) + embed_gauss(f, GaussInt{BigInt(1), BigInt(1)}) * sqrt_radicand(f, 2));
    MQElem target = embed_gauss(f, GaussInt{BigInt(1), BigInt(1)}) * (MQElem(f, BigRat(1)) + sqrt_radicand(f, 2));
    CHECK(alpha * alpha == target);
}

TEST_CASE("relative norm of 1+sqrt2 over Q(i) is -1") {
    MQField f({-1, 2});
    MQElem x = MQElem(f, BigRat(1)) + sqrt_radicand(f, 2);
    MQElem n = x.relative_norm(*f.mask_of(2));  // Galois element flipping sqrt 2
    CHECK(n == MQElem(f, BigRat(-1)));
}

TEST_CASE("is_square examples") {
    MQField q2({2});
    auto r = mq_is_square(MQElem(q2, BigRat(2)));
    REQUIRE(r.has_value());
    CHECK(*r == sqrt_radicand(q2, 2));

    MQField q7({7});
    QuadUnit e7 = fundamental_unit(7);
    auto r7 = mq_is_square(BigRat(2) * embed_unit(q7, e7));
    REQUIRE(r7.has_value());
    CHECK(*r7 == MQElem(q7, BigRat(3)) + sqrt_radicand(q7, 7));  // 3 + sqrt 7

    MQField f({-1, 2});
    MQElem target = embed_gauss(f, GaussInt{BigInt(1), BigInt(1)}) * (MQElem(f, BigRat(1)) + sqrt_radicand(f, 2));
    auto ri = mq_is_square(target);
    REQUIRE(ri.has_value());
    MQElem expected = BigRat(1, 2) * (MQElem(f, BigRat(2)) +
                                      embed_gauss(f, GaussInt{BigInt(1), BigInt(1)}) * sqrt_radicand(f, 2));
    CHECK(*ri == expected);
}

TEST_CASE("is_square rejects non-squares") {
    MQField q2({2});
    CHECK(!mq_is_square(MQElem(q2, BigRat(3))).has_value());
    CHECK(!mq_is_square(MQElem(q2, BigRat(-1))).has_value());
    CHECK(!mq_is_square(MQElem(q2, BigRat(-2))).has_value());
    MQField qi({-1});
    auto mi = mq_is_square(MQElem(qi, BigRat(-1)));
    REQUIRE(mi.has_value());  // -1 = i^2
    CHECK(*mi == sqrt_radicand(qi, -1));
    // 2 in Q(sqrt 2) appeared above; 2 is not a square in Q(i)
    CHECK(!mq_is_square(MQElem(qi, BigRat(2))).has_value());
}

static MQElem random_elem(const MQField& f, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 2);
    MQElem x(f);
    for (unsigned m = 0; m < f.dim(); ++m) x.set_coeff(m, ratio(BigInt(num(rng)), BigInt(den(rng))));
    return x;
}

TEST_CASE("is_square(y^2) returns +-y across fields up to degree 16") {
    std::vector<MQField> fields = {MQField({2}),          MQField({-1}),         MQField({-1, 2}),
                                   MQField({3, 5}),       MQField({-1, 2, 7}),   MQField({2, 3, 35}),
                                   MQField({-1, 2, 3, 5}), MQField({-1, 3, 7, 10})};
    std::mt19937 rng(424242u);
    int done = 0;
    while (done < 500) {
        for (const auto& f : fields) {
            MQElem y = random_elem(f, rng);
            if (y.is_zero()) continue;
            auto r = mq_is_square(y * y);
            REQUIRE(r.has_value());
            REQUIRE((*r == y || *r == -y));
            ++done;
        }
    }
}

TEST_CASE("inverse round-trip and conj is a ring automorphism") {
    std::vector<MQField> fields = {MQField({-1, 2}), MQField({-1, 3, 10}), MQField({2, 119})};
    std::mt19937 rng(99u);
    for (const auto& f : fields) {
        for (int trial = 0; trial < 40; ++trial) {
            MQElem x = random_elem(f, rng);
            MQElem y = random_elem(f, rng);
            if (!x.is_zero()) REQUIRE(x * x.inv() == MQElem(f, BigRat(1)));
            for (unsigned sigma = 0; sigma < f.dim(); ++sigma) {
                REQUIRE(x.conj(sigma).conj(sigma) == x);
                REQUIRE((x * y).conj(sigma) == x.conj(sigma) * y.conj(sigma));
                REQUIRE((x + y).conj(sigma) == x.conj(sigma) + y.conj(sigma));
            }
        }
    }
}

TEST_CASE("unit_check") {
    MQField q2({2});
    CHECK(unit_check(MQElem(q2, BigRat(1)) + sqrt_radicand(q2, 2)));  // 1 + sqrt 2
    CHECK(!unit_check(MQElem(q2, BigRat(3))));
    MQField q5({5});
    MQElem half_golden = BigRat(1, 2) * (MQElem(q5, BigRat(1)) + sqrt_radicand(q5, 5));
    CHECK(unit_check(half_golden));  // (1+sqrt5)/2, norm -1
    MQField q3({3});
    MQElem not_integral = BigRat(1, 2) * (MQElem(q3, BigRat(1)) + sqrt_radicand(q3, 3));
    CHECK(!not_integral.is_algebraic_integer());
    MQField qi({-1});
    CHECK(unit_check(sqrt_radicand(qi, -1)));  // i
    CHECK(!unit_check(MQElem(qi)));            // zero
}

TEST_CASE("division by zero and field mismatch raise") {
    MQField a({2}), b({3});
    CHECK_THROWS_AS(MQElem(a).inv(), std::invalid_argument);
    CHECK_THROWS_AS(MQElem(a, BigRat(1)) + MQElem(b, BigRat(1)), std::invalid_argument);
    CHECK_THROWS_AS(MQElem(a, BigRat(1)) * MQElem(b, BigRat(1)), std::invalid_argument);
}

TEST_CASE("embed_in rewrites subfield elements") {
    MQField k({-1, 238});
    MQField K3({-1, 2, 119});
    QuadUnit e = fundamental_unit(238);
    MQElem big = embed_unit(k, e).embed_in(K3);
    // x^2 - 238 y^2 = 1 must survive the embedding
    MQElem xpart(K3, e.x);
    MQElem s238 = sqrt_radicand(K3, 2) * sqrt_radicand(K3, 119);
    CHECK(big == xpart + MQElem(K3, e.y) * s238);
    CHECK(big.relative_norm(*K3.mask_of(2)) == MQElem(K3, BigRat(1)));  // flips sqrt(238)
}

TEST_CASE("canonical serialization") {
    MQField f({-1, 5});
    MQElem x = MQElem(f, BigRat(1, 2)) + sqrt_radicand(f, -1) + MQElem::basis(f, *f.mask_of(5), BigRat(1, 2));
    CHECK(x.str() == "1/2 + i + 1/2*sqrt(5)");
    CHECK(MQElem(f).str() == "0");
}

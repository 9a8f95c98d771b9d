#pragma once

#include "capq/arith.hpp"

#include <optional>
#include <string>

namespace capq {

// Fundamental unit eps_d = x + y*sqrt(d) of the ring of integers of Q(sqrt(d)),
// minimal > 1. x, y share a denominator of 1 or 2 (2 only when d = 1 mod 4).
struct QuadUnit {
    long d = 0;
    BigRat x, y;
    int norm = 0;  // x^2 - d y^2 = +-1

    bool integral() const { return rat_is_integer(x) && rat_is_integer(y); }
    BigInt xi() const;  // x as an integer; throws when half-integral
    BigInt yi() const;
    std::string str() const;  // "11663 + 756*sqrt(238)"
};

// Continued-fraction expansion of sqrt(d) (resp. (1+sqrt(d))/2 for d = 1 mod 4)
// with exact integer recurrences; the unit is the product of the complete
// quotients over one period, and its norm is (-1)^period.
// max_steps = 0 uses the CAPQ_CF_MAX_STEPS environment variable or 1<<20.
QuadUnit fundamental_unit(long d, long max_steps = 0);

// For a norm +1 unit x + y*sqrt(d) with p | d, exactly one of
//   x+-1, p(x+-1), 2p(x+-1)
// is a perfect square; the case fixes the exact cofactor factorization
//   x+-1 = c1*y1^2,  x-+1 = c2*y2^2   (c1*c2 = d or 4d).
enum class SquareCase { XPlus, XMinus, PxPlus, PxMinus, TwoPxPlus, TwoPxMinus };

const char* square_case_label(SquareCase k);  // "x+1", "p(x-1)", ...
bool case_xpm1(SquareCase k);
bool case_pxpm1(SquareCase k);
bool case_2pxpm1(SquareCase k);

struct SquareClassCase {
    SquareCase kind;
    BigInt root;    // root^2 equals the labeled quantity, e.g. 2p(x+1)
    BigInt y1, y2;  // cofactor witnesses
    BigInt c1, c2;  // x+-1 = c1*y1^2, x-+1 = c2*y2^2, verified exactly
};

SquareClassCase square_class_case(const QuadUnit& u, long p);

// sqrt(2*eps_d) = b1 + b2*sqrt(d) when it exists (norm +1 and x+-1 square);
// otherwise empty with the reason ("norm -1" or "x+-1 not a square").
struct TwoEpsSquare {
    std::optional<std::pair<BigInt, BigInt>> root;
    std::string reason;
};

TwoEpsSquare two_eps_square(const QuadUnit& u);

// For prime q = 3 (mod 4): N(eps_q) = +1, x is even, exactly one of x+-1 is a
// square, and sqrt(2*eps_q) exists — all verified exactly (a failure would be
// a genuine inconsistency and throws).
struct Q3UnitReport {
    long q;
    QuadUnit unit;
    bool x_plus_side;  // true: x+1 is the square
    BigInt root;
    std::pair<BigInt, BigInt> two_eps_root;
};

Q3UnitReport check_q3_unit(long q);

}  // namespace capq

#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace capq {

// All arithmetic in this library is exact. BigInt/BigRat are GMP-backed;
// there is no floating point anywhere in the computation paths.
using BigInt = mpz_class;
using BigRat = mpq_class;

// Thrown when an exactly re-verified identity fails to hold. Every radical,
// witness and norm relation computed here is multiplied back and checked;
// a verification_error signals a genuine inconsistency, not bad user input.
struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a configurable search bound (continued-fraction steps,
// auxiliary-prime bound) is exhausted; a configuration problem, not a bug.
struct limit_exceeded : std::runtime_error {
    explicit limit_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// num/den as a canonical rational (den > 0, gcd = 1).
BigRat ratio(const BigInt& num, const BigInt& den);

bool rat_is_integer(const BigRat& q);

// floor(sqrt(n)); rejects n < 0.
BigInt isqrt(const BigInt& n);

// r with r*r == n when n is a perfect square >= 0, else empty.
std::optional<BigInt> perfect_square(const BigInt& n);

// Kronecker symbol (a|n): the full extension of the Legendre/Jacobi symbol,
// multiplicative in both arguments, defined for every pair of integers.
int kronecker(const BigInt& a, const BigInt& n);

bool is_prime(const BigInt& n);
bool is_squarefree(long n);

// e + f*i in Z[i]
struct GaussInt {
    BigInt re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

    BigInt norm() const { return re * re + im * im; }
    GaussInt conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return norm() == 1; }

    GaussInt operator-() const { return {-re, -im}; }
    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }

    std::string str() const;  // "3-2i"
};

// a/b when b divides a exactly in Z[i], else empty.
std::optional<GaussInt> gauss_div_exact(const GaussInt& a, const GaussInt& b);

// remainder of a modulo m under nearest-rounding division; |r| < |m|.
GaussInt gauss_mod(const GaussInt& a, const GaussInt& m);

// t with t*t == g, if g is a square in Z[i].
std::optional<GaussInt> gauss_sqrt(const GaussInt& g);

// Split of p = 1 (mod 4) over Z[i]: p = e^2 + 4f^2 = pi1 * pi2 with
// pi1 = e + 2if, e, f > 0 (the representation is unique, so pi1 is canonical).
// When p = 1 (mod 8), f is even and the same pi1 also reads p = e^2 + 16*f8^2
// with pi1 = e + 4i*f8; f8 = f/2 is reported for callers that need that form.
struct GaussianSplit {
    long p = 0;
    long e = 0, f = 0;        // p = e^2 + 4 f^2
    std::optional<long> f8;   // p = e^2 + 16 f8^2, present iff p = 1 (mod 8)
    GaussInt pi1, pi2;
};

GaussianSplit gaussian_split(long p);

// Quadratic residue symbol (alpha | pi) = alpha^((N(pi)-1)/2) mod pi in {+1,-1}.
// pi must be a Gaussian prime not above 2 and must not divide alpha.
int gauss_qr_symbol(const GaussInt& alpha, const GaussInt& pi);

}  // namespace capq

#include "capq/arith.hpp"

#include <sstream>

namespace capq {

BigRat ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("ratio: zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

bool rat_is_integer(const BigRat& q) { return q.get_den() == 1; }

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<BigInt> perfect_square(const BigInt& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    return isqrt(n);
}

int kronecker(const BigInt& a, const BigInt& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

bool is_squarefree(long n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

std::string GaussInt::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re;
    } else if (re == 0) {
        if (im == 1) os << "i";
        else if (im == -1) os << "-i";
        else os << im << "i";
    } else {
        os << re;
        if (im > 0) os << "+";
        if (im == 1) os << "i";
        else if (im == -1) os << "-i";
        else os << im << "i";
    }
    return os.str();
}

std::optional<GaussInt> gauss_div_exact(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) return std::nullopt;
    const BigInt n = b.norm();
    GaussInt t = a * b.conj();
    if (t.re % n != 0 || t.im % n != 0) return std::nullopt;
    return GaussInt{t.re / n, t.im / n};
}

GaussInt gauss_mod(const GaussInt& a, const GaussInt& m) {
    if (m.is_zero()) throw std::invalid_argument("gauss_mod: zero modulus");
    const BigInt n = m.norm();
    GaussInt t = a * m.conj();
    // nearest integer of t.re/n, t.im/n
    auto round_div = [&n](const BigInt& v) {
        BigInt twice = 2 * v + n;  // floor((v + n/2)/n) == floor((2v + n)/(2n))
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * n).get_mpz_t());
        return q;
    };
    GaussInt q{round_div(t.re), round_div(t.im)};
    return a - q * m;
}

std::optional<GaussInt> gauss_sqrt(const GaussInt& g) {
    if (g.is_zero()) return GaussInt{0, 0};
    // t = x+yi with t^2 = a+bi forces x^2 = (n+a)/2, y^2 = (n-a)/2, n = |t|^2.
    auto n2 = perfect_square(g.norm());
    if (!n2) return std::nullopt;
    const BigInt n = *n2;
    if ((n + g.re) % 2 != 0) return std::nullopt;
    auto x2 = perfect_square((n + g.re) / 2);
    auto y2 = perfect_square((n - g.re) / 2);
    if (!x2 || !y2) return std::nullopt;
    BigInt x = *x2, y = *y2;
    if (2 * x * y != g.im) y = -y;
    GaussInt t{x, y};
    if (!(t * t == g)) return std::nullopt;
    return t;
}

GaussianSplit gaussian_split(long p) {
    if (!is_prime(BigInt(p))) throw std::invalid_argument("gaussian_split: p is not prime");
    if (p % 4 != 1) throw std::invalid_argument("gaussian_split: p is not 1 mod 4");
    GaussianSplit s;
    s.p = p;
    for (long e = 1; e * e < p; e += 2) {
        auto f2 = perfect_square(BigInt((p - e * e) / 4));
        if ((p - e * e) % 4 == 0 && f2) {
            s.e = e;
            s.f = static_cast<long>(f2->get_si());
            break;
        }
    }
    if (s.e == 0) throw verification_error("gaussian_split: no representation p = e^2 + 4f^2 found");
    s.pi1 = GaussInt{BigInt(s.e), BigInt(2 * s.f)};
    s.pi2 = s.pi1.conj();
    if (p % 8 == 1) {
        if (s.f % 2 != 0) throw verification_error("gaussian_split: f odd although p = 1 (mod 8)");
        s.f8 = s.f / 2;
    }
    if (s.pi1.norm() != p) throw verification_error("gaussian_split: N(pi1) != p");
    return s;
}

int gauss_qr_symbol(const GaussInt& alpha, const GaussInt& pi) {
    const BigInt npi = pi.norm();
    if (npi % 2 == 0) throw std::invalid_argument("gauss_qr_symbol: pi lies above 2");
    BigInt expo;
    if (is_prime(npi)) {
        expo = (npi - 1) / 2;  // degree-one prime
    } else {
        auto q = perfect_square(npi);
        if (!q || !is_prime(*q)) throw std::invalid_argument("gauss_qr_symbol: pi is not a Gaussian prime");
        expo = (npi - 1) / 2;  // inert rational prime, residue field of size q^2
    }
    if (gauss_mod(alpha, pi).is_zero()) throw std::invalid_argument("gauss_qr_symbol: pi divides alpha");

    GaussInt result{1, 0};
    GaussInt base = gauss_mod(alpha, pi);
    BigInt e = expo;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = gauss_mod(result * base, pi);
        base = gauss_mod(base * base, pi);
        e /= 2;
    }
    if (gauss_mod(result - GaussInt{1, 0}, pi).is_zero()) return 1;
    if (gauss_mod(result + GaussInt{1, 0}, pi).is_zero()) return -1;
    throw verification_error("gauss_qr_symbol: alpha^((N(pi)-1)/2) is not +-1 mod pi");
}

}  // namespace capq

#include "capq/quadfield.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace capq {

BigInt QuadUnit::xi() const {
    if (!rat_is_integer(x)) throw std::invalid_argument("QuadUnit: x is not an integer");
    return x.get_num();
}

BigInt QuadUnit::yi() const {
    if (!rat_is_integer(y)) throw std::invalid_argument("QuadUnit: y is not an integer");
    return y.get_num();
}

std::string QuadUnit::str() const {
    std::ostringstream os;
    os << x << " + " << y << "*sqrt(" << d << ")";
    return os.str();
}

static long cf_step_limit(long max_steps) {
    if (max_steps > 0) return max_steps;
    if (const char* env = std::getenv("CAPQ_CF_MAX_STEPS")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 1L << 20;
}

QuadUnit fundamental_unit(long d, long max_steps) {
    if (d <= 1) throw std::invalid_argument("fundamental_unit: d <= 1");
    if (!is_squarefree(d)) throw std::invalid_argument("fundamental_unit: d is not squarefree");

    const long limit = cf_step_limit(max_steps);
    const BigInt D(d);
    const BigInt sq = isqrt(D);

    // Complete quotients x_i = (P_i + sqrt(d))/Q_i; the (P,Q) state eventually
    // cycles, and the product of the x_i over one cycle is the fundamental
    // unit of the maximal order (start at (1+sqrt(d))/2 when d = 1 mod 4).
    BigInt P = (d % 4 == 1) ? 1 : 0;
    BigInt Q = (d % 4 == 1) ? 2 : 1;

    std::map<std::pair<BigInt, BigInt>, long> seen;
    std::vector<std::pair<BigInt, BigInt>> states;

    long start = -1;
    for (long i = 0;; ++i) {
        if (i > limit) throw limit_exceeded("fundamental_unit: continued-fraction step limit exceeded");
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            start = it->second;
            break;
        }
        seen.emplace(key, i);
        states.push_back(key);
        BigInt a = (P + sq) / Q;  // floor, Q > 0 throughout
        BigInt Pn = a * Q - P;
        BigInt Qn = (D - Pn * Pn) / Q;
        if (Qn <= 0) throw verification_error("fundamental_unit: nonpositive Q in expansion");
        P = Pn;
        Q = Qn;
    }

    // unit = prod_{i in cycle} (P_i + sqrt(d)) / prod Q_i
    BigInt U(1), V(0), Qprod(1);
    long period = static_cast<long>(states.size()) - start;
    for (long i = start; i < static_cast<long>(states.size()); ++i) {
        const BigInt& Pi = states[i].first;
        const BigInt& Qi = states[i].second;
        BigInt U2 = U * Pi + V * D;
        BigInt V2 = U + V * Pi;
        U = U2;
        V = V2;
        Qprod *= Qi;
    }

    QuadUnit u;
    u.d = d;
    u.x = ratio(U, Qprod);
    u.y = ratio(V, Qprod);
    u.norm = (period % 2 == 0) ? 1 : -1;

    if (u.x.get_den() > 2 || u.y.get_den() > 2 || u.x.get_den() != u.y.get_den())
        throw verification_error("fundamental_unit: coordinates not in (1/2)Z with common denominator");
    BigRat check = u.x * u.x - BigRat(d) * u.y * u.y;
    if (check != u.norm) throw verification_error("fundamental_unit: norm identity failed");
    if (u.x <= 0 || u.y <= 0) throw verification_error("fundamental_unit: unit not > 1");
    return u;
}

const char* square_case_label(SquareCase k) {
    switch (k) {
        case SquareCase::XPlus: return "x+1";
        case SquareCase::XMinus: return "x-1";
        case SquareCase::PxPlus: return "p(x+1)";
        case SquareCase::PxMinus: return "p(x-1)";
        case SquareCase::TwoPxPlus: return "2p(x+1)";
        case SquareCase::TwoPxMinus: return "2p(x-1)";
    }
    return "?";
}

bool case_xpm1(SquareCase k) { return k == SquareCase::XPlus || k == SquareCase::XMinus; }
bool case_pxpm1(SquareCase k) { return k == SquareCase::PxPlus || k == SquareCase::PxMinus; }
bool case_2pxpm1(SquareCase k) { return k == SquareCase::TwoPxPlus || k == SquareCase::TwoPxMinus; }

SquareClassCase square_class_case(const QuadUnit& u, long p) {
    if (u.norm != 1) throw std::invalid_argument("square_class_case: unit has norm -1, no trichotomy");
    if (u.d % p != 0) throw std::invalid_argument("square_class_case: p does not divide d");
    if (!u.integral()) throw std::invalid_argument("square_class_case: unit has half-integer coordinates");

    const BigInt x = u.xi(), y = u.yi();
    const long d = u.d;

    struct Cand {
        SquareCase kind;
        long c1;
        int sign;  // +1: x+1 = c1*y1^2, -1: x-1 = c1*y1^2
    };
    const Cand cands[6] = {
        {SquareCase::XPlus, 1, +1},      {SquareCase::XMinus, 1, -1},
        {SquareCase::PxPlus, p, +1},     {SquareCase::PxMinus, p, -1},
        {SquareCase::TwoPxPlus, 2 * p, +1}, {SquareCase::TwoPxMinus, 2 * p, -1},
    };

    std::optional<SquareClassCase> hit;
    for (const auto& c : cands) {
        BigInt main = x + c.sign;
        BigInt other = x - c.sign;
        auto r = perfect_square(BigInt(c.c1) * main);
        if (!r) continue;
        if (main % c.c1 != 0) continue;
        auto y1 = perfect_square(main / c.c1);
        if (!y1) continue;
        long c2 = (d % c.c1 == 0) ? d / c.c1 : (4 * d) / c.c1;
        if (other % c2 != 0) continue;
        auto y2 = perfect_square(other / c2);
        if (!y2) continue;
        if (hit) throw verification_error("square_class_case: two cases verified simultaneously");
        SquareClassCase s;
        s.kind = c.kind;
        s.root = *r;
        s.y1 = *y1;
        s.y2 = *y2;
        s.c1 = c.c1;
        s.c2 = c2;
        // cofactor identities multiply back to x^2 - 1 = d*y^2
        if (s.c1 * s.y1 * s.y1 * s.c2 * s.y2 * s.y2 != x * x - 1)
            throw verification_error("square_class_case: cofactor product mismatch");
        hit = s;
    }
    if (!hit) throw verification_error("square_class_case: no case of the trichotomy verified");
    return *hit;
}

TwoEpsSquare two_eps_square(const QuadUnit& u) {
    TwoEpsSquare res;
    if (u.norm != 1) {
        res.reason = "norm -1";
        return res;
    }
    if (!u.integral()) {
        res.reason = "half-integer coordinates";
        return res;
    }
    const BigInt x = u.xi(), y = u.yi();
    for (int sign : {+1, -1}) {
        BigInt main = x + sign;
        BigInt other = x - sign;
        auto b1 = perfect_square(main);
        if (!b1) continue;
        if (other % u.d != 0) continue;
        auto b2 = perfect_square(other / u.d);
        if (!b2) continue;
        // (b1 + b2 sqrt d)^2 = (x+-1) + (x-+1) + 2 b1 b2 sqrt d = 2x + 2y sqrt d
        if (*b1 * *b2 != y) throw verification_error("two_eps_square: b1*b2 != y");
        res.root = std::make_pair(*b1, *b2);
        return res;
    }
    res.reason = "x+-1 not a square";
    return res;
}

Q3UnitReport check_q3_unit(long q) {
    if (!is_prime(BigInt(q)) || q % 4 != 3) throw std::invalid_argument("check_q3_unit: q is not a prime = 3 mod 4");
    Q3UnitReport r;
    r.q = q;
    r.unit = fundamental_unit(q);
    if (r.unit.norm != 1) throw verification_error("check_q3_unit: N(eps_q) != 1");
    if (!r.unit.integral()) throw verification_error("check_q3_unit: eps_q not integral");
    BigInt x = r.unit.xi();
    if (x % 2 != 0) throw verification_error("check_q3_unit: x is odd");
    auto plus = perfect_square(x + 1);
    auto minus = perfect_square(x - 1);
    if (plus.has_value() == minus.has_value())
        throw verification_error("check_q3_unit: expected exactly one of x+-1 square");
    r.x_plus_side = plus.has_value();
    r.root = plus ? *plus : *minus;
    auto te = two_eps_square(r.unit);
    if (!te.root) throw verification_error("check_q3_unit: sqrt(2*eps_q) missing");
    r.two_eps_root = *te.root;
    return r;
}

}  // namespace capq

#include "capq/units.hpp"

#include <sstream>

namespace capq {

void require_valid_pair(long p, long q) {
    if (!is_prime(BigInt(p))) throw std::invalid_argument("p is not prime");
    if (!is_prime(BigInt(q))) throw std::invalid_argument("q is not prime");
    if (p % 4 != 1) throw std::invalid_argument("p is not 1 mod 4");
    if (q % 4 != 3) throw std::invalid_argument("q is not 3 mod 4");
}

MQField field_k(long p, long q) { return MQField({-1, 2 * p * q}); }
MQField field_K1(long p, long q) { return MQField({-1, p, 2 * q}); }
MQField field_K2(long p, long q) { return MQField({-1, q, 2 * p}); }
MQField field_K3(long p, long q) { return MQField({-1, 2, p * q}); }
MQField field_K3_plus(long p, long q) { return MQField({2, p * q}); }

namespace {

std::string eps_name(long d) {
    std::ostringstream os;
    os << "eps_" << d;
    return os.str();
}

std::string sqrt_name(const std::string& inner) { return "sqrt(" + inner + ")"; }

Certificate certify(const std::string& claim, const MQElem& target) {
    auto root = mq_is_square(target);
    if (!root) throw verification_error("certificate failed: " + claim + " is not a square in " + target.field().str());
    return Certificate{claim, *root, target};
}

MQElem i_of(const MQField& f) { return sqrt_radicand(f, -1); }

// generator realized as the canonical square root of `target`, certificate recorded
UnitSymbol radical_symbol(const std::string& inner, const MQElem& target, std::vector<Certificate>& certs) {
    Certificate c = certify(sqrt_name(inner) + "^2 = " + inner, target);
    certs.push_back(c);
    return UnitSymbol{sqrt_name(inner), c.root};
}

}  // namespace

CyclotomicData n0_of(const MQField& f) {
    if (!f.contains_i()) throw std::invalid_argument("n0_of: field does not contain i");
    CyclotomicData c;
    if (f.mask_of(2)) {
        c.n0 = 3;
        c.mu = sqrt_radicand(f, 2);
        c.lambda = sqrt_radicand(f, 2);
    } else {
        c.n0 = 2;
        c.mu = MQElem(f, BigRat(0));
        c.lambda = MQElem(f, BigRat(2));
    }
    c.xi = BigRat(1, 2) * (c.mu + c.lambda * i_of(f));
    // xi must be a primitive 2^n0-th root of unity
    MQElem pw = c.xi.pow(1L << (c.n0 - 1));
    if (!(pw == MQElem(f, BigRat(-1)))) throw verification_error("n0_of: xi^(2^(n0-1)) != -1");
    return c;
}

FsuReport fsu_k(long p, long q) {
    require_valid_pair(p, q);
    const long d = 2 * p * q;
    QuadUnit e = fundamental_unit(d);
    if (e.norm != 1) throw verification_error("fsu_k: N(eps_2pq) != 1");
    SquareClassCase tri = square_class_case(e, p);

    FsuReport r;
    r.field_id = "k";
    r.field = field_k(p, q);
    MQElem eps = embed_unit(r.field, e);
    if (case_xpm1(tri.kind)) {
        r.generators.push_back(radical_symbol("i*" + eps_name(d), i_of(r.field) * eps, r.certificates));
        r.half_ladder = true;
        r.hasse_q = 2;
        r.branch = std::string(square_case_label(tri.kind)) + " square: E_k = <i, sqrt(i*eps_" + std::to_string(d) + ")>";
    } else {
        r.generators.push_back(UnitSymbol{eps_name(d), eps});
        r.half_ladder = false;
        r.hasse_q = 1;
        r.branch = std::string(square_case_label(tri.kind)) + " square: E_k = <i, eps_" + std::to_string(d) + ">";
    }
    for (const auto& g : r.generators)
        if (!unit_check(g.value)) throw verification_error("fsu_k: generator fails unit check");
    return r;
}

FsuReport fsu_K1(long p, long q) {
    require_valid_pair(p, q);
    const long d = 2 * p * q;
    QuadUnit e2pq = fundamental_unit(d);
    SquareClassCase tri = square_class_case(e2pq, p);

    FsuReport r;
    r.field_id = "K1";
    r.field = field_K1(p, q);
    MQElem eps_p = embed_unit(r.field, fundamental_unit(p));
    MQElem eps_2q = embed_unit(r.field, fundamental_unit(2 * q));
    MQElem eps_d = embed_unit(r.field, e2pq);

    r.generators.push_back(UnitSymbol{eps_name(p), eps_p});
    r.generators.push_back(radical_symbol("i*" + eps_name(2 * q), i_of(r.field) * eps_2q, r.certificates));
    if (!case_2pxpm1(tri.kind)) {
        r.generators.push_back(
            radical_symbol(eps_name(2 * q) + "*" + eps_name(d), eps_2q * eps_d, r.certificates));
        r.branch = std::string(square_case_label(tri.kind)) + " square: case x+-1 or p(x+-1)";
    } else {
        r.generators.push_back(radical_symbol(eps_name(d), eps_d, r.certificates));
        r.branch = std::string(square_case_label(tri.kind)) + " square: case 2p(x+-1)";
    }
    r.hasse_q = 2;
    for (const auto& g : r.generators)
        if (!unit_check(g.value)) throw verification_error("fsu_K1: generator fails unit check");
    return r;
}

FsuReport fsu_K2(long p, long q) {
    require_valid_pair(p, q);
    const long d = 2 * p * q;
    QuadUnit e2pq = fundamental_unit(d);
    QuadUnit e2p = fundamental_unit(2 * p);
    SquareClassCase tri = square_class_case(e2pq, p);

    FsuReport r;
    r.field_id = "K2";
    r.field = field_K2(p, q);
    MQElem eps_q = embed_unit(r.field, fundamental_unit(q));
    MQElem eps_2p = embed_unit(r.field, e2p);
    MQElem eps_d = embed_unit(r.field, e2pq);

    r.generators.push_back(radical_symbol("i*" + eps_name(q), i_of(r.field) * eps_q, r.certificates));
    std::ostringstream branch;
    if (e2p.norm == 1) {
        branch << "N(eps_" << 2 * p << ") = +1, ";
        r.generators.push_back(radical_symbol("i*" + eps_name(2 * p), i_of(r.field) * eps_2p, r.certificates));
        if (!case_pxpm1(tri.kind)) {
            branch << square_case_label(tri.kind) << " square (x+-1 or 2p(x+-1))";
            r.generators.push_back(radical_symbol("i*" + eps_name(d), i_of(r.field) * eps_d, r.certificates));
        } else {
            branch << square_case_label(tri.kind) << " square (p(x+-1))";
            r.generators.push_back(radical_symbol(eps_name(d), eps_d, r.certificates));
        }
    } else {
        branch << "N(eps_" << 2 * p << ") = -1, ";
        r.generators.push_back(UnitSymbol{eps_name(2 * p), eps_2p});
        if (!case_pxpm1(tri.kind)) {
            branch << square_case_label(tri.kind) << " square (x+-1 or 2p(x+-1))";
            r.generators.push_back(
                radical_symbol(eps_name(q) + "*" + eps_name(d), eps_q * eps_d, r.certificates));
        } else {
            branch << square_case_label(tri.kind) << " square (p(x+-1))";
            r.generators.push_back(radical_symbol(eps_name(d), eps_d, r.certificates));
        }
    }
    r.branch = branch.str();
    r.hasse_q = 2;
    for (const auto& g : r.generators)
        if (!unit_check(g.value)) throw verification_error("fsu_K2: generator fails unit check");
    return r;
}

int hasse_Q_K3(long p, long q) {
    require_valid_pair(p, q);
    QuadUnit e2pq = fundamental_unit(2 * p * q);
    QuadUnit epq = fundamental_unit(p * q);
    if (!case_xpm1(square_class_case(e2pq, p).kind) || !case_xpm1(square_class_case(epq, p).kind))
        throw std::invalid_argument("hasse_Q_K3: only defined when x+-1 and a+-1 are both squares");

    MQField f = field_K3_plus(p, q);
    MQElem prod = embed_unit(f, epq) * embed_unit(f, e2pq);
    auto eta = mq_is_square(prod);
    if (!eta) throw verification_error("hasse_Q_K3: eps_pq*eps_2pq is not a square in K3+");
    MQElem two_plus_sqrt2 = MQElem(f, BigRat(2)) + sqrt_radicand(f, 2);
    if (mq_is_square(two_plus_sqrt2 * *eta)) return 2;
    if (mq_is_square(two_plus_sqrt2 * -*eta)) return 2;
    return 1;
}

FsuReport fsu_K3(long p, long q) {
    require_valid_pair(p, q);
    const long d = 2 * p * q;
    QuadUnit e2pq = fundamental_unit(d);
    QuadUnit epq = fundamental_unit(p * q);
    SquareClassCase tri_x = square_class_case(e2pq, p);
    SquareClassCase tri_a = square_class_case(epq, p);
    const bool xs = case_xpm1(tri_x.kind);
    const bool as = case_xpm1(tri_a.kind);

    FsuReport r;
    r.field_id = "K3";
    r.field = field_K3(p, q);
    MQElem eps_2 = embed_unit(r.field, fundamental_unit(2));
    MQElem eps_pq = embed_unit(r.field, epq);
    MQElem eps_d = embed_unit(r.field, e2pq);

    r.generators.push_back(UnitSymbol{"eps_2", eps_2});
    std::ostringstream branch;
    if (xs && as) {
        int Q = hasse_Q_K3(p, q);
        r.hasse_q = Q;
        r.generators.push_back(radical_symbol(eps_name(p * q), eps_pq, r.certificates));
        if (Q == 1) {
            r.generators.push_back(radical_symbol(eps_name(d), eps_d, r.certificates));
            branch << "x+-1 and a+-1 square, Q_K3 = 1";
        } else {
            // xi * sqrt(eps_pq*eps_2pq) is a square in K3 for an 8th root of
            // unity xi; pick the power of xi_8 whose certificate verifies.
            Certificate ceta = certify(sqrt_name(eps_name(p * q) + "*" + eps_name(d)) + "^2", eps_pq * eps_d);
            r.certificates.push_back(ceta);
            MQElem xi8 = BigRat(1, 2) * (sqrt_radicand(r.field, 2) + sqrt_radicand(r.field, 2) * i_of(r.field));
            bool found = false;
            for (long j : {1L, 3L, 5L, 7L}) {
                MQElem target = xi8.pow(j) * ceta.root;
                if (auto root = mq_is_square(target)) {
                    std::string inner = "xi8^" + std::to_string(j) + "*sqrt(" + eps_name(p * q) + "*" + eps_name(d) + ")";
                    r.certificates.push_back(Certificate{sqrt_name(inner) + "^2 = " + inner, *root, target});
                    r.generators.push_back(UnitSymbol{sqrt_name(inner), *root});
                    branch << "x+-1 and a+-1 square, Q_K3 = 2 (xi = xi8^" << j << ")";
                    found = true;
                    break;
                }
            }
            if (!found) throw verification_error("fsu_K3: Q=2 but no xi8-power certificate verified");
        }
    } else if (xs && !as) {
        r.hasse_q = 1;
        r.generators.push_back(UnitSymbol{eps_name(p * q), eps_pq});
        r.generators.push_back(radical_symbol(eps_name(d), eps_d, r.certificates));
        branch << "x+-1 square, a+1 and a-1 not (" << square_case_label(tri_a.kind) << ")";
    } else if (!xs && as) {
        r.hasse_q = 1;
        r.generators.push_back(UnitSymbol{eps_name(d), eps_d});
        r.generators.push_back(radical_symbol(eps_name(p * q), eps_pq, r.certificates));
        branch << "a+-1 square, x+1 and x-1 not (" << square_case_label(tri_x.kind) << ")";
    } else {
        r.hasse_q = 1;
        r.generators.push_back(UnitSymbol{eps_name(p * q), eps_pq});
        r.generators.push_back(
            radical_symbol(eps_name(p * q) + "*" + eps_name(d), eps_pq * eps_d, r.certificates));
        branch << "neither x+-1 nor a+-1 square (" << square_case_label(tri_x.kind) << ", "
               << square_case_label(tri_a.kind) << ")";
    }
    r.branch = branch.str();
    for (const auto& g : r.generators)
        if (!unit_check(g.value)) throw verification_error("fsu_K3: generator fails unit check");
    return r;
}

namespace {

// identify n as i^a * base^(+-m); returns the ladder exponent m (>= 0)
std::optional<int> ladder_exponent(const MQElem& n, const MQElem& base, const MQElem& i_elem) {
    for (int m = 0; m <= 4; ++m) {
        for (int sgn : {+1, -1}) {
            if (m == 0 && sgn < 0) continue;
            MQElem cand = base.pow(sgn * m);
            MQElem ip(n.field(), BigRat(1));
            for (int a = 0; a < 4; ++a) {
                if (n == ip * cand) return m;
                ip *= i_elem;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

NormUnitGroup norm_unit_group(int j, const FsuReport& fsu, long p, long q) {
    if (j < 1 || j > 3) throw std::invalid_argument("norm_unit_group: j must be 1, 2 or 3");
    const long d = 2 * p * q;
    const MQField& F = fsu.field;

    long A = 0, B = 0;  // the two radicands interchanged over k
    if (j == 1) { A = p; B = 2 * q; }
    if (j == 2) { A = q; B = 2 * p; }
    if (j == 3) { A = 2; B = p * q; }
    unsigned flip = *F.mask_of(A) | *F.mask_of(B);

    QuadUnit e2pq = fundamental_unit(d);
    MQElem eps = embed_unit(F, e2pq);
    MQElem i_elem = i_of(F);

    // ladder base: sqrt(i*eps_2pq) when it exists in k, else eps_2pq itself
    int base_level = 2;
    MQElem base = eps;
    if (case_xpm1(square_class_case(e2pq, p).kind)) {
        auto half = mq_is_square(i_elem * eps);
        if (!half) throw verification_error("norm_unit_group: sqrt(i*eps_2pq) missing although x+-1 square");
        base = *half;
        base_level = 1;
    }

    NormUnitGroup g;
    g.eps_level = 0;
    int min_level = 0;
    for (const auto& gen : fsu.generators) {
        MQElem n = gen.value.relative_norm(flip);
        auto m = ladder_exponent(n, base, i_elem);
        if (!m) throw verification_error("norm_unit_group: norm of " + gen.text + " not on the eps ladder");
        int level = *m * base_level;
        g.generator_norms.emplace_back(gen.text, "level " + std::to_string(level));
        if (level > 0 && (min_level == 0 || level < min_level)) min_level = level;
    }
    if (min_level == 0) throw verification_error("norm_unit_group: all generator norms are roots of unity");
    g.eps_level = min_level;

    std::string eps_sym = eps_name(d);
    if (min_level == 1) g.description = "<i, sqrt(i*" + eps_sym + ")>";
    else if (min_level == 2) g.description = "<i, " + eps_sym + ">";
    else if (min_level == 4) g.description = "<i, " + eps_sym + "^2>";
    else throw verification_error("norm_unit_group: unexpected ladder level");

    if ((j == 1 || j == 2) && min_level != 2)
        throw verification_error("norm_unit_group: N(E_K" + std::to_string(j) + ") != <i, eps_2pq>");
    return g;
}

int unit_index(long p, long q, int j) {
    FsuReport ek = fsu_k(p, q);
    FsuReport fj = (j == 1) ? fsu_K1(p, q) : (j == 2) ? fsu_K2(p, q) : fsu_K3(p, q);
    NormUnitGroup ng = norm_unit_group(j, fj, p, q);
    int ek_level = ek.half_ladder ? 1 : 2;
    if (ng.eps_level % ek_level != 0)
        throw verification_error("unit_index: norm group not contained in E_k");
    int idx = ng.eps_level / ek_level;
    if (idx != 1 && idx != 2) throw verification_error("unit_index: index not 1 or 2");
    return idx;
}

}  // namespace capq

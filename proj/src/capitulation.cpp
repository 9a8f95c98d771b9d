#include "capq/capitulation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace capq {

int kernel_size(long p, long q, int j) { return 2 * unit_index(p, q, j); }

namespace {

Witness make_witness(std::string ideal, MQElem alpha, std::string identity, MQElem expected_square,
                     std::string note) {
    if (!(alpha * alpha == expected_square))
        throw verification_error("witness: alpha^2 != " + identity);
    return Witness{std::move(ideal), std::move(alpha), std::move(identity), std::move(expected_square),
                   std::move(note)};
}

long subgroup_order(const std::vector<IdealLabel>& gens) {
    std::set<unsigned> span{0u};
    for (const auto& g : gens) {
        std::set<unsigned> next = span;
        for (unsigned m : span) next.insert(m ^ g.mask);
        span = std::move(next);
    }
    return static_cast<long>(span.size());
}

bool in_span(const std::vector<IdealLabel>& gens, IdealLabel x) {
    std::set<unsigned> span{0u};
    for (const auto& g : gens) {
        std::set<unsigned> next = span;
        for (unsigned m : span) next.insert(m ^ g.mask);
        span = std::move(next);
    }
    return span.count(x.mask) > 0;
}

std::string gens_str(const std::vector<IdealLabel>& gens) {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) os << ", ";
        os << gens[i].str();
    }
    os << ">";
    return os.str();
}

// the embedded fixtures resolve which candidate kernel occurs for tabulated d
std::optional<std::string> fixture_kernel(long d, const std::string& ext,
                                          const std::vector<std::vector<IdealLabel>>& candidates,
                                          std::vector<IdealLabel>* resolved) {
    for (const FixtureRow* row : fixtures_for(d)) {
        if (row->ext != ext) continue;
        // a candidate is selected when every capitulation bit recorded for
        // this extension agrees with membership in its span
        for (const auto& cand : candidates) {
            bool consistent = true;
            bool informative = false;
            for (const auto& [key, principal] : row->bits) {
                auto dot = key.find('.');
                if (key.substr(0, dot) != ext) continue;
                IdealLabel lab = parse_ideal_label(key.substr(dot + 1));
                bool member = in_span(cand, lab);
                informative = true;
                if (member != principal) {
                    consistent = false;
                    break;
                }
            }
            if (consistent && informative) {
                *resolved = cand;
                std::ostringstream os;
                os << "d=" << d << " fixture: kernel " << gens_str(cand);
                return os.str();
            }
        }
    }
    return std::nullopt;
}

}  // namespace

CapReport kappa_K1(long p, long q) {
    require_valid_pair(p, q);
    QuadUnit ep = fundamental_unit(p);
    if (ep.norm != -1) throw verification_error("kappa_K1: N(eps_p) != -1");
    QuadUnit e2pq = fundamental_unit(2 * p * q);
    const bool xs = case_xpm1(square_class_case(e2pq, p).kind);

    // eps_p = (s + t sqrt(p))/2, s^2 + 4 = t^2 p, and (s-2i)(s+2i) factors
    // over Z[i] as t1^2 pi1 * t2^2 pi2 (system 1) or with an extra unit i
    // (system 2); which one holds is detected by exact Gaussian square roots.
    BigInt s = BigInt(2) * ep.x.get_num() / ep.x.get_den();
    BigInt t = BigInt(2) * ep.y.get_num() / ep.y.get_den();
    if (s * s + 4 != t * t * p) throw verification_error("kappa_K1: s^2 + 4 != t^2 p");

    GaussianSplit split = gaussian_split(p);
    const GaussInt I{BigInt(0), BigInt(1)};

    GaussInt delta{s, BigInt(2)};
    std::optional<GaussInt> quot = gauss_div_exact(delta, split.pi1);
    if (!quot) {
        delta = GaussInt{s, BigInt(-2)};
        quot = gauss_div_exact(delta, split.pi1);
    }
    if (!quot) throw verification_error("kappa_K1: pi1 divides neither s+2i nor s-2i");

    int system = 0;
    GaussInt t1;
    if (auto r = gauss_sqrt(*quot)) {
        system = 1;
        t1 = *r;
    } else if (auto r2 = gauss_sqrt(*gauss_div_exact(*quot, I))) {
        system = 2;
        t1 = *r2;
    } else {
        throw verification_error("kappa_K1: neither quotient is a Gaussian square");
    }
    GaussInt t2 = t1.conj();
    if (t1.norm() != t) throw verification_error("kappa_K1: N(t1) != t");

    CapReport r;
    r.extension = "K1";
    MQField F = field_K1(p, q);
    MQElem sqrt_p = sqrt_radicand(F, p);
    MQElem eps_p = embed_unit(F, ep);
    const BigRat half(1, 2);

    if (system == 1) {
        MQElem alpha = half * (embed_gauss(F, t1 * split.pi1) + embed_gauss(F, t2) * sqrt_p);
        MQElem beta = half * (embed_gauss(F, t2 * split.pi2) + embed_gauss(F, t1) * sqrt_p);
        r.witnesses.push_back(make_witness("H1", alpha, "alpha^2 = (" + split.pi1.str() + ")*eps_" + std::to_string(p),
                                           embed_gauss(F, split.pi1) * eps_p, "H1 = (alpha)"));
        r.witnesses.push_back(make_witness("H2", beta, "alpha^2 = (" + split.pi2.str() + ")*eps_" + std::to_string(p),
                                           embed_gauss(F, split.pi2) * eps_p, "H2 = (alpha)"));
        r.branch = "system 1: s+-2i = t1^2*pi1";
    } else {
        GaussInt opi{BigInt(1), BigInt(1)};   // 1+i
        GaussInt omi{BigInt(1), BigInt(-1)};  // 1-i
        MQElem alpha = half * (embed_gauss(F, t1 * opi * split.pi1) + embed_gauss(F, t2 * omi) * sqrt_p);
        MQElem beta = half * (embed_gauss(F, t1 * opi) * sqrt_p + embed_gauss(F, t2 * omi * split.pi2));
        MQElem two(F, BigRat(2));
        r.witnesses.push_back(make_witness("H1", alpha,
                                           "alpha^2 = 2*(" + split.pi1.str() + ")*eps_" + std::to_string(p),
                                           two * embed_gauss(F, split.pi1) * eps_p, "H1 = (alpha/(1+i))"));
        r.witnesses.push_back(make_witness("H2", beta,
                                           "alpha^2 = 2*(" + split.pi2.str() + ")*eps_" + std::to_string(p),
                                           two * embed_gauss(F, split.pi2) * eps_p, "H2 = (alpha/(1+i))"));
        r.branch = "system 2: s+-2i = i*t1^2*pi1";
    }

    if (xs) {
        r.generators = {IdealLabel::H1(), IdealLabel::H2()};
        r.branch += "; x+-1 square, [H1*H2] != 1";
    } else {
        r.generators = {IdealLabel::H1()};
        r.notes.push_back("[H1] = [H2] in Cl(k)");
        r.branch += "; x+-1 not square, [H1] = [H2]";
    }
    r.kernel_size = kernel_size(p, q, 1);
    if (subgroup_order(r.generators) != r.kernel_size)
        throw verification_error("kappa_K1: kernel size mismatch");
    return r;
}

CapReport kappa_K2(long p, long q, long aux_bound) {
    require_valid_pair(p, q);
    const long d = 2 * p * q;
    QuadUnit e2p = fundamental_unit(2 * p);
    QuadUnit e2pq = fundamental_unit(d);
    const bool xs = case_xpm1(square_class_case(e2pq, p).kind);

    CapReport r;
    r.extension = "K2";
    MQField F = field_K2(p, q);
    const BigRat half(1, 2);

    // (2p) = ((1+i) H1 H2)^2 and sqrt(2p) lies in K2, so H1*H2 always
    // capitulates: H1*H2 = (sqrt(2p)/(1+i)).
    {
        MQElem alpha = sqrt_radicand(F, 2 * p) * (half * embed_gauss(F, GaussInt{BigInt(1), BigInt(-1)}));
        MQElem target = embed_gauss(F, GaussInt{BigInt(0), BigInt(-p)});  // -ip
        r.witnesses.push_back(
            make_witness("H1*H2", alpha, "alpha^2 = -" + std::to_string(p) + "*i", target, "H1*H2 = (alpha), alpha = sqrt(2p)/(1+i)"));
    }

    if (e2p.norm == -1) {
        // a^2 + 1 = 2 b^2 p: (1+-i) pi1 eps_2p and (1-+i) pi2 eps_2p are
        // squares in Q(sqrt(2p), i), giving H0*H1 and H0*H2 constructively.
        GaussianSplit split = gaussian_split(p);
        MQElem eps2p = embed_unit(F, e2p);
        bool found = false;
        for (int sgn : {+1, -1}) {
            GaussInt w1 = GaussInt{BigInt(1), BigInt(sgn)} * split.pi1;
            MQElem target1 = embed_gauss(F, w1) * eps2p;
            auto a1 = mq_is_square(target1);
            if (!a1) continue;
            GaussInt w2 = GaussInt{BigInt(1), BigInt(-sgn)} * split.pi2;
            MQElem target2 = embed_gauss(F, w2) * eps2p;
            auto a2 = mq_is_square(target2);
            if (!a2) throw verification_error("kappa_K2: conjugate witness missing");
            r.witnesses.push_back(make_witness("H0*H1", *a1,
                                               "alpha^2 = (" + w1.str() + ")*eps_" + std::to_string(2 * p),
                                               target1, "H0*H1 = (alpha)"));
            r.witnesses.push_back(make_witness("H0*H2", *a2,
                                               "alpha^2 = (" + w2.str() + ")*eps_" + std::to_string(2 * p),
                                               target2, "H0*H2 = (alpha)"));
            found = true;
            break;
        }
        if (!found) throw verification_error("kappa_K2: no (1+-i)*pi1*eps_2p square found");
        if (xs) {
            r.generators = {IdealLabel::H0() * IdealLabel::H1(), IdealLabel::H0() * IdealLabel::H2()};
            r.branch = "N(eps_2p) = -1, x+-1 square";
        } else {
            r.generators = {IdealLabel::H0() * IdealLabel::H1()};
            r.notes.push_back("[H0*H1] = [H0*H2] in Cl(k)");
            r.branch = "N(eps_2p) = -1, x+-1 not square";
        }
    } else if (xs) {
        r.candidates = {{IdealLabel::H0(), IdealLabel::H1() * IdealLabel::H2()},
                        {IdealLabel::H1(), IdealLabel::H2()}};
        r.branch = "N(eps_2p) = +1, x+-1 square";
        std::vector<IdealLabel> resolved;
        if (auto fx = fixture_kernel(d, "K2", r.candidates, &resolved)) {
            r.fixture_resolution = fx;
            r.generators = resolved;
        }
    } else {
        if (p % 8 != 1) throw verification_error("kappa_K2: N(eps_2p)=+1 with p != 1 mod 8");
        auto aux = find_auxiliary_prime(p, q, aux_bound);
        IdealLabel I = IdealLabel::I();
        r.candidates = {{I},
                        {IdealLabel::H0() * I},
                        {IdealLabel::H1() * I},
                        {IdealLabel::H0() * IdealLabel::H1() * I}};
        r.branch = "N(eps_2p) = +1, x+-1 not square (auxiliary ideal I)";
        if (aux) {
            r.notes.push_back("I = prime above l = " + std::to_string(aux->l));
        } else {
            r.notes.push_back("no auxiliary prime below bound");
        }
        std::vector<IdealLabel> resolved;
        if (auto fx = fixture_kernel(d, "K2", r.candidates, &resolved)) {
            r.fixture_resolution = fx;
            r.generators = resolved;
        }
    }

    r.kernel_size = kernel_size(p, q, 2);
    if (!r.generators.empty() && subgroup_order(r.generators) != r.kernel_size)
        throw verification_error("kappa_K2: kernel size mismatch");
    for (const auto& cand : r.candidates)
        if (subgroup_order(cand) != r.kernel_size)
            throw verification_error("kappa_K2: candidate size mismatch");
    return r;
}

CapReport kappa_K3(long p, long q, long aux_bound) {
    require_valid_pair(p, q);
    const long d = 2 * p * q;
    QuadUnit e2pq = fundamental_unit(d);
    QuadUnit epq = fundamental_unit(p * q);
    const bool xs = case_xpm1(square_class_case(e2pq, p).kind);
    const bool as = case_xpm1(square_class_case(epq, p).kind);

    CapReport r;
    r.extension = "K3";
    MQField F = field_K3(p, q);
    const BigRat half(1, 2);

    // sqrt((1+i) eps_2) = (2 + (1+i) sqrt(2))/2, so H0 = (alpha) always
    {
        MQElem alpha = half * (MQElem(F, BigRat(2)) + embed_gauss(F, GaussInt{BigInt(1), BigInt(1)}) * sqrt_radicand(F, 2));
        MQElem target = embed_gauss(F, GaussInt{BigInt(1), BigInt(1)}) * embed_unit(F, fundamental_unit(2));
        r.witnesses.push_back(make_witness("H0", alpha, "alpha^2 = (1+i)*eps_2", target, "H0 = (alpha)"));
    }

    if (xs && as) {
        int Q = hasse_Q_K3(p, q);
        if (Q == 2) {
            r.generators = {IdealLabel::H0()};
            r.branch = "x+-1 and a+-1 square, Q_K3 = 2";
        } else {
            r.generators = {IdealLabel::H0(), IdealLabel::H1() * IdealLabel::H2()};
            r.branch = "x+-1 and a+-1 square, Q_K3 = 1";
            r.notes.push_back("[H1*H2] capitulates by kernel size; no constructive witness in this branch");
        }
    } else if (xs && !as) {
        MQElem target = BigRat(p) * embed_unit(F, epq);
        auto alpha = mq_is_square(target);
        if (!alpha) throw verification_error("kappa_K3: p*eps_pq not a square in K3");
        r.witnesses.push_back(make_witness("H1*H2", *alpha, "alpha^2 = p*eps_" + std::to_string(p * q),
                                           target, "H1*H2 = (alpha)"));
        r.generators = {IdealLabel::H0(), IdealLabel::H1() * IdealLabel::H2()};
        r.branch = "x+-1 square, a+-1 not";
    } else if (!xs && as) {
        if (p % 8 != 1) throw verification_error("kappa_K3: a+-1 square with p != 1 mod 8");
        auto aux = find_auxiliary_prime(p, q, aux_bound);
        IdealLabel I = IdealLabel::I();
        r.candidates = {{IdealLabel::H0(), I}, {IdealLabel::H0(), IdealLabel::H1() * I}};
        r.branch = "a+-1 square, x+-1 not (auxiliary ideal I)";
        if (aux) r.notes.push_back("I = prime above l = " + std::to_string(aux->l));
        std::vector<IdealLabel> resolved;
        if (auto fx = fixture_kernel(d, "K3", r.candidates, &resolved)) {
            r.fixture_resolution = fx;
            r.generators = resolved;
        }
    } else {
        r.generators = {IdealLabel::H0()};
        r.branch = "neither x+-1 nor a+-1 square";
    }

    r.kernel_size = kernel_size(p, q, 3);
    if (!r.generators.empty() && subgroup_order(r.generators) != r.kernel_size)
        throw verification_error("kappa_K3: kernel size mismatch");
    for (const auto& cand : r.candidates)
        if (subgroup_order(cand) != r.kernel_size)
            throw verification_error("kappa_K3: candidate size mismatch");
    return r;
}

CapReport genus_kernel(long p, long q, long aux_bound) {
    require_valid_pair(p, q);
    QuadUnit e2pq = fundamental_unit(2 * p * q);
    QuadUnit epq = fundamental_unit(p * q);
    QuadUnit e2p = fundamental_unit(2 * p);
    const bool xs = case_xpm1(square_class_case(e2pq, p).kind);
    const bool as = case_xpm1(square_class_case(epq, p).kind);

    CapReport r;
    r.extension = "genus";
    r.lower_bound_only = true;

    if (xs) {
        r.generators = {IdealLabel::H0(), IdealLabel::H1(), IdealLabel::H2()};
        r.branch = "x+-1 square";
        r.notes.push_back("H0 capitulates in K3, H1 and H2 in K1");
    } else if (e2p.norm == 1 || as) {
        r.generators = {IdealLabel::H0(), IdealLabel::H1(), IdealLabel::I()};
        r.branch = (e2p.norm == 1) ? "x+-1 not square, N(eps_2p) = +1" : "x+-1 not square, a+-1 square";
        auto aux = find_auxiliary_prime(p, q, aux_bound);
        if (aux) r.notes.push_back("I = prime above l = " + std::to_string(aux->l));
        r.notes.push_back("H0 capitulates in K3, H1 in K1; I-combination from the K2/K3 candidate kernels");
    } else {
        r.generators = {IdealLabel::H0(), IdealLabel::H1()};
        r.branch = "x+-1 not square, N(eps_2p) = -1, a+-1 not square";
        r.notes.push_back("H0 capitulates in K3, H1 in K1");
    }
    r.kernel_size = static_cast<int>(subgroup_order(r.generators));

    // Am_s is always contained in the guaranteed subgroup
    for (const auto& g : strong_generators(p, q))
        if (!in_span(r.generators, g))
            throw verification_error("genus_kernel: Am_s not contained in the guaranteed subgroup");
    return r;
}

ApplicationProfile application_profile(long p, long q, long aux_bound) {
    require_valid_pair(p, q);
    if (p % 8 != 1) throw std::invalid_argument("application_profile: p mod 8 != 1");
    if (q % 8 != 3) throw std::invalid_argument("application_profile: q mod 8 != 3");
    if (kronecker(BigInt(p), BigInt(q)) != -1) throw std::invalid_argument("application_profile: (p/q) != -1");

    ApplicationProfile prof;
    prof.p = p;
    prof.q = q;

    QuadUnit e2pq = fundamental_unit(2 * p * q);
    SquareClassCase tx = square_class_case(e2pq, p);
    if (tx.kind != SquareCase::XMinus)
        throw verification_error("application_profile: x-1 is not the square case");
    prof.x_minus_1_root = tx.root;

    QuadUnit epq = fundamental_unit(p * q);
    SquareClassCase ta = square_class_case(epq, p);
    if (ta.kind != SquareCase::XMinus)
        throw verification_error("application_profile: a-1 is not the square case");
    prof.a_minus_1_root = ta.root;

    AmbiguousReport amb = ambiguous_sizes(p, q);
    if (amb.am_order != 8 || amb.am_s_order != 8)
        throw verification_error("application_profile: |Am| != 8");

    prof.k1 = kappa_K1(p, q);
    std::vector<IdealLabel> expect{IdealLabel::H1(), IdealLabel::H2()};
    if (!(prof.k1.generators == expect))
        throw verification_error("application_profile: kappa_K1 != <H1, H2>");
    prof.k2 = kappa_K2(p, q, aux_bound);
    prof.k3 = kappa_K3(p, q, aux_bound);
    prof.genus = genus_kernel(p, q, aux_bound);
    prof.genus_kernel_order = subgroup_order(prof.genus.generators);
    if (prof.genus_kernel_order != 8)
        throw verification_error("application_profile: genus kernel order != 8");
    return prof;
}

}  // namespace capq

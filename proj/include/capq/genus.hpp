#pragma once

#include "capq/arith.hpp"
#include "capq/units.hpp"

#include <optional>
#include <string>
#include <vector>

namespace capq {

// Formal product over the ideal generators of Am_s(k/Q(i)) plus the auxiliary
// ideal: bit 0 = H0 (above 1+i), bit 1 = H1 (above pi1), bit 2 = H2 (above
// pi2), bit 3 = I (above the auxiliary split prime l). Exponents are in
// {0,1}: squares of the H-ideals are principal.
struct IdealLabel {
    unsigned mask = 0;

    IdealLabel() = default;
    explicit IdealLabel(unsigned m) : mask(m) {}

    static IdealLabel H0() { return IdealLabel(1u); }
    static IdealLabel H1() { return IdealLabel(2u); }
    static IdealLabel H2() { return IdealLabel(4u); }
    static IdealLabel I() { return IdealLabel(8u); }

    friend IdealLabel operator*(IdealLabel a, IdealLabel b) { return IdealLabel(a.mask ^ b.mask); }
    friend bool operator==(IdealLabel a, IdealLabel b) { return a.mask == b.mask; }
    std::string str() const;  // "H0*H1", "I", "1"
};

IdealLabel parse_ideal_label(const std::string& s);

// number of primes of Q(i) that ramify in k = Q(i)(sqrt(2pq)): the prime
// above 2, the two split primes above p, the inert prime above q. The
// infinite place of Q(i) is complex, so t = 4 for every admissible pair
// (asserted, not assumed).
int ramified_count(long p, long q);

// i is a norm in k/Q(i) iff p = 1 (mod 8). The closed form is cross-checked
// against the local symbol ledger: at primes above p the symbol is (2|p) and
// it is recomputed as the residue symbol (i|pi1); everywhere else it is +1.
bool i_is_norm(long p, long q);

// Smallest prime l <= bound with l = 1 (mod 4), (2pq|l) = +1, (q|l) = -1,
// together with the facts certifying that I, H0*I, H1*I and H0*H1*I are
// non-principal in k (which unramified extension detects each class, using
// the residue symbol (1+i | pi1) for the k(sqrt(pi1)) / k(sqrt(2*pi1)) pair
// when needed). Empty when no such prime lies below the bound.
struct AuxPrimeEvidence {
    long l = 0;
    int sym_2pq = 0, sym_q = 0, sym_2p = 0;  // Kronecker symbols mod l
    int sym_2_l = 0, sym_p_l = 0, sym_2_q = 0;
    std::optional<int> residue_sym_1pi;  // (1+i | pi1), 8-form split
    std::string cert_I, cert_H1I, cert_H0I, cert_H0H1I;
};

std::optional<AuxPrimeEvidence> find_auxiliary_prime(long p, long q, long bound);

struct AmbiguousReport {
    int t = 0;     // ramified primes of Q(i) in k
    int e = 0;     // 2^e = [E_F : E_F cap N(k^x)]
    int rank = 0;  // rank Cl_2(k) = t - e - 1
    long am_order = 0;
    long am_s_order = 0;
    std::vector<IdealLabel> strong_gens;
    bool h1_equals_h2 = false;  // recorded relation in the x+-1-nonsquare case
    // the unambiguous ideal extending Am_s to Am (present exactly when
    // |Am| = 2|Am_s|, i.e. i is a norm but x+-1 is not square)
    std::optional<AuxPrimeEvidence> aux;
};

AmbiguousReport ambiguous_sizes(long p, long q, long aux_bound = 0);
std::vector<IdealLabel> strong_generators(long p, long q);

long default_aux_bound();  // CAPQ_AUX_BOUND or 10^6

}  // namespace capq

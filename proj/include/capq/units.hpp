#pragma once

#include "capq/multiquad.hpp"

#include <optional>
#include <string>
#include <vector>

namespace capq {

// the ambient fields for a pair (p, q):
//   k  = Q(sqrt(2pq), i) and its three unramified quadratic extensions
//   K1 = Q(sqrt(p), sqrt(2q), i), K2 = Q(sqrt(q), sqrt(2p), i), K3 = Q(sqrt(2), sqrt(pq), i)
MQField field_k(long p, long q);
MQField field_K1(long p, long q);
MQField field_K2(long p, long q);
MQField field_K3(long p, long q);
MQField field_K3_plus(long p, long q);

void require_valid_pair(long p, long q);  // p = 1 (4), q = 3 (4), distinct primes

// formal generator name together with its exact realization
struct UnitSymbol {
    std::string text;  // "eps_17", "sqrt(i*eps_14)", ...
    MQElem value;
};

// an exactly verified square-root claim: root*root == square
struct Certificate {
    std::string claim;
    MQElem root;
    MQElem square;
};

struct FsuReport {
    std::string field_id;  // "k" | "K1" | "K2" | "K3"
    MQField field;
    std::vector<UnitSymbol> generators;  // free generators modulo roots of unity
    int hasse_q = 0;                     // [E_K : W_K E_{K+}]
    std::string branch;
    std::vector<Certificate> certificates;
    bool half_ladder = false;  // fsu_k: sqrt(i*eps_2pq) generates (x+-1 square)
};

// largest n0 with a primitive 2^n0-th root of unity in the field, together
// with mu, lambda realizing xi_{n0} = (mu + lambda*i)/2; mu2 = 0, lambda2 = 2
// and mu3 = lambda3 = sqrt(2).
struct CyclotomicData {
    int n0;
    MQElem mu, lambda, xi;
};

CyclotomicData n0_of(const MQField& f);

FsuReport fsu_k(long p, long q);
FsuReport fsu_K1(long p, long q);
FsuReport fsu_K2(long p, long q);
FsuReport fsu_K3(long p, long q);

// Unit index of K3 when both eps_2pq and eps_pq fall in the x+-1 / a+-1
// branch: 2 iff (2+sqrt(2))*sqrt(eps_pq*eps_2pq) is a square in K3+
// (either sign of the root). Throws when called outside that branch.
int hasse_Q_K3(long p, long q);

// N_{Kj/k}(E_{Kj}) as a subgroup of E_k = <i, g>, described on the half-power
// ladder of eps_2pq: level 1 = sqrt(i*eps_2pq), 2 = eps_2pq, 4 = eps_2pq^2.
struct NormUnitGroup {
    std::string description;  // "<i, eps_2pq>", ...
    int eps_level;
    std::vector<std::pair<std::string, std::string>> generator_norms;  // symbol -> normed value
};

NormUnitGroup norm_unit_group(int j, const FsuReport& fsu, long p, long q);

// [E_k : N_{Kj/k}(E_{Kj})], always 1 or 2
int unit_index(long p, long q, int j);

}  // namespace capq

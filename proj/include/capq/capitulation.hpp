#pragma once

#include "capq/genus.hpp"
#include "capq/multiquad.hpp"
#include "capq/oracle.hpp"
#include "capq/units.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace capq {

// A constructive capitulation witness: alpha in the extension with
// alpha^2 = (stated generator) * (unit), verified exactly; the labeled
// ideal is then generated by alpha (possibly divided by 1+i).
struct Witness {
    std::string ideal;     // "H1", "H0*H1", ...
    MQElem alpha;
    std::string identity;  // "alpha^2 = (1+2i)*eps_5"
    MQElem square;         // alpha^2, equal to the stated product
    std::string note;      // "H1 = (alpha)" or "H1 = (alpha/(1+i))"
};

struct CapReport {
    std::string extension;  // "K1" | "K2" | "K3" | "genus"
    int kernel_size = 0;
    std::vector<IdealLabel> generators;               // resolved kernel generators
    std::vector<std::vector<IdealLabel>> candidates;  // when the kernel is only pinned to a set
    std::optional<std::string> fixture_resolution;
    std::vector<Witness> witnesses;
    std::string branch;
    std::vector<std::string> notes;
    bool lower_bound_only = false;  // genus kernel: guaranteed subgroup, not necessarily all of it
};

// |kappa_{Kj}| = 2 * [E_k : N_{Kj/k}(E_{Kj})]
int kernel_size(long p, long q, int j);

CapReport kappa_K1(long p, long q);
CapReport kappa_K2(long p, long q, long aux_bound = 0);
CapReport kappa_K3(long p, long q, long aux_bound = 0);

// the subgroup of the genus-field capitulation kernel guaranteed by the
// three quadratic kernels; always contains Am_s(k/Q(i)) (asserted)
CapReport genus_kernel(long p, long q, long aux_bound = 0);

// profile for pairs with p = 1 (8), q = 3 (8), (p|q) = -1, where Cl_2(k) is
// of type (2,2,2): both x-1 and a-1 are squares, every strongly ambiguous
// class capitulates in the genus field
struct ApplicationProfile {
    long p = 0, q = 0;
    BigInt x_minus_1_root, a_minus_1_root;
    std::array<long, 3> cl2_type{2, 2, 2};  // cited input to this regime
    CapReport k1, k2, k3, genus;
    long genus_kernel_order = 0;
};

ApplicationProfile application_profile(long p, long q, long aux_bound = 0);

}  // namespace capq

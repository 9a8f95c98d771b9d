#pragma once

#include "capq/arith.hpp"

#include <map>
#include <string>
#include <vector>

namespace capq {

struct QForm {
    BigInt a, b, c;
    friend bool operator==(const QForm& f, const QForm& g) { return f.a == g.a && f.b == g.b && f.c == g.c; }
    friend bool operator<(const QForm& f, const QForm& g) {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    }
    std::string str() const;
};

// class group of primitive positive forms of a negative discriminant,
// computed by enumeration of reduced forms plus Dirichlet composition
struct FormClassGroup {
    BigInt disc;
    std::vector<QForm> forms;       // the reduced forms = group elements
    std::vector<long> invariants;   // invariant factors, descending (d_{i+1} | d_i)
    long order() const { return static_cast<long>(forms.size()); }
};

FormClassGroup imag_class_group(const BigInt& D);

QForm reduce_form(QForm f, const BigInt& D);
QForm compose_forms(const QForm& f, const QForm& g, const BigInt& D);

// class number h of Q(sqrt(m)) for squarefree m < 0 (discriminant handled internally)
long imag_class_number(long m);

// wide class number of Q(sqrt(d)), d > 1 squarefree, via cycles of reduced
// indefinite forms: the cycle count is the narrow class number, halved
// exactly when N(eps_d) = +1
long real_class_number(long d);

// h(k) for k = Q(sqrt(2pq), i) by the bicyclic class number relation
//   h(k) = (q_unit/2) * h(2pq) * h(-2pq),  q_unit = 2 iff sqrt(i*eps_2pq) generates E_k
long kuroda_h_k(long p, long q);

// ---------------------------------------------------------------------------
// embedded regression fixtures (data/fixtures.csv)
// ---------------------------------------------------------------------------

// one row per tabulated case; verdict bits are keyed "scope.ideal" with
// scope in {k, K2, K3} and value true = principal there (capitulates for the
// extension scopes)
struct FixtureRow {
    long d = 0, p = 0, q = 0;
    std::string case_label;          // "x+1", "2p(x+1)", ..., or "K3(3)"
    BigInt root;                     // 0 when the table states no square
    std::vector<long> cl_k;          // printed invariants of Cl(k)
    std::vector<long> cl_ext;        // printed invariants of Cl(K2) resp. Cl(K3)
    std::string ext;                 // "K2" | "K3": which extension the row tabulates
    std::map<std::string, bool> bits;
};

// loads (and caches) the fixture file; validates the row/d counts
const std::vector<FixtureRow>& fixtures();
std::string fixtures_path();        // CAPQ_FIXTURES env or the shipped default
void set_fixtures_path(const std::string& path);  // for tests / --fixtures flag

// rows for a given d (one or two: d = 582 appears in a K2 and a K3 table)
std::vector<const FixtureRow*> fixtures_for(long d);

}  // namespace capq

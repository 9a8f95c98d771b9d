#pragma once

#include "capq/arith.hpp"
#include "capq/quadfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace capq {

// Q(sqrt(m_1), ..., sqrt(m_r)) for pairwise coprime squarefree radicands,
// at most one of them negative, sorted ascending with -1 first. Degree 2^r.
// Basis elements are the subset products e_S = prod_{i in S} sqrt(m_i),
// indexed by bitmask; with coprime radicands every subset product is itself
// squarefree, so the basis is already in canonical reduced form.
class MQField {
public:
    MQField() = default;  // the rationals (rank 0)
    explicit MQField(std::vector<long> radicands);

    int rank() const { return static_cast<int>(rads_.size()); }
    std::size_t dim() const { return std::size_t{1} << rads_.size(); }
    long radicand(int i) const { return rads_.at(static_cast<std::size_t>(i)); }
    const std::vector<long>& radicands() const { return rads_; }

    // prod_{i in mask} m_i
    long basis_radicand(unsigned mask) const;
    // the subset whose basis product equals m, if any
    std::optional<unsigned> mask_of(long m) const;
    bool contains_i() const { return !rads_.empty() && rads_[0] == -1; }

    // the field generated by all radicands except the last
    MQField subfield_below() const;

    bool operator==(const MQField& o) const { return rads_ == o.rads_; }
    bool operator!=(const MQField& o) const { return rads_ != o.rads_; }
    std::string str() const;  // "Q(sqrt(-1), sqrt(2), sqrt(119))"

private:
    std::vector<long> rads_;
};

// Element sum_S c_S * e_S with exact rational coefficients.
class MQElem {
public:
    MQElem() : MQElem(MQField{}) {}
    explicit MQElem(MQField f);
    MQElem(MQField f, const BigRat& constant);

    static MQElem basis(const MQField& f, unsigned mask, const BigRat& coeff = BigRat(1));

    const MQField& field() const { return field_; }
    const BigRat& coeff(unsigned mask) const { return c_.at(mask); }
    void set_coeff(unsigned mask, const BigRat& v) { c_.at(mask) = v; }

    bool is_zero() const;
    bool is_rational() const;
    BigRat rational_value() const;  // requires is_rational

    MQElem operator-() const;
    friend MQElem operator+(const MQElem& a, const MQElem& b);
    friend MQElem operator-(const MQElem& a, const MQElem& b);
    friend MQElem operator*(const MQElem& a, const MQElem& b);
    MQElem& operator+=(const MQElem& b) { return *this = *this + b; }
    MQElem& operator*=(const MQElem& b) { return *this = *this * b; }
    friend MQElem operator*(const BigRat& s, const MQElem& a);
    bool operator==(const MQElem& o) const;
    bool operator!=(const MQElem& o) const { return !(*this == o); }

    // Galois action: sends sqrt(m_i) -> -sqrt(m_i) for each i in flip_mask.
    MQElem conj(unsigned flip_mask) const;
    // x * conj(x, flip_mask)
    MQElem relative_norm(unsigned flip_mask) const;
    // product over all 2^r conjugates (a rational)
    BigRat galois_norm() const;

    MQElem inv() const;  // throws on zero
    MQElem pow(long e) const;

    // ring-of-integers membership: the characteristic polynomial
    // prod_sigma (T - sigma(x)) has integer coefficients (exact test)
    bool is_algebraic_integer() const;

    // tower decomposition x = u + v*sqrt(m_top) over the subfield below
    MQElem low_part() const;
    MQElem high_part() const;
    static MQElem from_parts(const MQField& f, const MQElem& u, const MQElem& v);

    // rewrite in a larger field whose basis can express every radicand
    MQElem embed_in(const MQField& bigger) const;

    // canonical text: "1/2 + i + 1/2*sqrt(5)" (masks ascending, num/den coefficients)
    std::string str() const;

private:
    MQField field_;
    std::vector<BigRat> c_;
};

// Exact recursive square test over the tower. Returns the root with positive
// leading (lowest-mask nonzero) coefficient, or empty when x is not a square.
std::optional<MQElem> mq_is_square(const MQElem& x);

// true iff x is an algebraic integer whose absolute norm is +-1
bool unit_check(const MQElem& x);

// x + y*sqrt(d) as an element of f (d must be a basis product of f)
MQElem embed_unit(const MQField& f, const QuadUnit& u);
MQElem embed_gauss(const MQField& f, const GaussInt& g);
MQElem sqrt_radicand(const MQField& f, long m);

}  // namespace capq

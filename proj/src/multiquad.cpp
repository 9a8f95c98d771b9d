#include "capq/multiquad.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace capq {

MQField::MQField(std::vector<long> radicands) : rads_(std::move(radicands)) {
    std::sort(rads_.begin(), rads_.end());
    for (std::size_t i = 0; i < rads_.size(); ++i) {
        long m = rads_[i];
        if (m == 0 || m == 1) throw std::invalid_argument("MQField: radicand 0 or 1");
        if (m < -1) throw std::invalid_argument("MQField: negative radicands other than -1 unsupported");
        if (!is_squarefree(m)) throw std::invalid_argument("MQField: radicand not squarefree");
        for (std::size_t j = i + 1; j < rads_.size(); ++j) {
            if (std::gcd(std::abs(m), std::abs(rads_[j])) != 1 || m == rads_[j])
                throw std::invalid_argument("MQField: radicands not pairwise coprime");
        }
    }
}

long MQField::basis_radicand(unsigned mask) const {
    long prod = 1;
    for (int i = 0; i < rank(); ++i)
        if (mask & (1u << i)) prod *= rads_[static_cast<std::size_t>(i)];
    return prod;
}

std::optional<unsigned> MQField::mask_of(long m) const {
    for (unsigned mask = 0; mask < dim(); ++mask)
        if (basis_radicand(mask) == m) return mask;
    return std::nullopt;
}

MQField MQField::subfield_below() const {
    if (rads_.empty()) throw std::invalid_argument("MQField: no subfield below Q");
    std::vector<long> r(rads_.begin(), rads_.end() - 1);
    MQField f;
    f.rads_ = std::move(r);
    return f;
}

std::string MQField::str() const {
    std::ostringstream os;
    os << "Q(";
    for (std::size_t i = 0; i < rads_.size(); ++i) {
        if (i) os << ", ";
        if (rads_[i] == -1) os << "i";
        else os << "sqrt(" << rads_[i] << ")";
    }
    os << ")";
    return os.str();
}

MQElem::MQElem(MQField f) : field_(std::move(f)), c_(field_.dim(), BigRat(0)) {}

MQElem::MQElem(MQField f, const BigRat& constant) : MQElem(std::move(f)) { c_[0] = constant; }

MQElem MQElem::basis(const MQField& f, unsigned mask, const BigRat& coeff) {
    MQElem e(f);
    e.c_.at(mask) = coeff;
    return e;
}

bool MQElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigRat& v) { return v == 0; });
}

bool MQElem::is_rational() const {
    for (std::size_t m = 1; m < c_.size(); ++m)
        if (c_[m] != 0) return false;
    return true;
}

BigRat MQElem::rational_value() const {
    if (!is_rational()) throw std::invalid_argument("MQElem: not rational");
    return c_[0];
}

MQElem MQElem::operator-() const {
    MQElem r(field_);
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] = -c_[m];
    return r;
}

static void require_same_field(const MQElem& a, const MQElem& b) {
    if (a.field() != b.field()) throw std::invalid_argument("MQElem: field mismatch");
}

MQElem operator+(const MQElem& a, const MQElem& b) {
    require_same_field(a, b);
    MQElem r(a.field_);
    for (std::size_t m = 0; m < r.c_.size(); ++m) r.c_[m] = a.c_[m] + b.c_[m];
    return r;
}

MQElem operator-(const MQElem& a, const MQElem& b) {
    require_same_field(a, b);
    MQElem r(a.field_);
    for (std::size_t m = 0; m < r.c_.size(); ++m) r.c_[m] = a.c_[m] - b.c_[m];
    return r;
}

// e_S * e_T = (prod_{i in S cap T} m_i) * e_{S xor T}
MQElem operator*(const MQElem& a, const MQElem& b) {
    require_same_field(a, b);
    MQElem r(a.field_);
    const std::size_t n = r.c_.size();
    for (std::size_t s = 0; s < n; ++s) {
        if (a.c_[s] == 0) continue;
        for (std::size_t t = 0; t < n; ++t) {
            if (b.c_[t] == 0) continue;
            long shared = a.field_.basis_radicand(static_cast<unsigned>(s & t));
            r.c_[s ^ t] += a.c_[s] * b.c_[t] * BigRat(shared);
        }
    }
    return r;
}

MQElem operator*(const BigRat& s, const MQElem& a) {
    MQElem r(a.field_);
    for (std::size_t m = 0; m < r.c_.size(); ++m) r.c_[m] = s * a.c_[m];
    return r;
}

bool MQElem::operator==(const MQElem& o) const { return field_ == o.field_ && c_ == o.c_; }

MQElem MQElem::conj(unsigned flip_mask) const {
    MQElem r(field_);
    for (std::size_t m = 0; m < c_.size(); ++m) {
        int bits = __builtin_popcount(static_cast<unsigned>(m) & flip_mask);
        r.c_[m] = (bits % 2 == 0) ? c_[m] : -c_[m];
    }
    return r;
}

MQElem MQElem::relative_norm(unsigned flip_mask) const { return *this * conj(flip_mask); }

BigRat MQElem::galois_norm() const {
    MQElem prod(field_, BigRat(1));
    for (unsigned sigma = 0; sigma < field_.dim(); ++sigma) prod *= conj(sigma);
    if (!prod.is_rational()) throw verification_error("galois_norm: product of conjugates not rational");
    return prod.rational_value();
}

MQElem MQElem::inv() const {
    if (is_zero()) throw std::invalid_argument("MQElem: division by zero");
    MQElem prod(field_, BigRat(1));
    for (unsigned sigma = 1; sigma < field_.dim(); ++sigma) prod *= conj(sigma);
    MQElem full = *this * prod;
    if (!full.is_rational() || full.rational_value() == 0)
        throw verification_error("MQElem::inv: norm not a nonzero rational");
    BigRat n = full.rational_value();
    return BigRat(BigRat(1) / n) * prod;
}

MQElem MQElem::pow(long e) const {
    MQElem base = (e < 0) ? inv() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    MQElem r(field_, BigRat(1));
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

bool MQElem::is_algebraic_integer() const {
    // expand prod_sigma (T - sigma(x)) and check all coefficients land in Z
    std::vector<MQElem> poly{MQElem(field_, BigRat(1))};  // leading coefficient
    for (unsigned sigma = 0; sigma < field_.dim(); ++sigma) {
        MQElem root = conj(sigma);
        std::vector<MQElem> next(poly.size() + 1, MQElem(field_));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];                 // T * poly[i]
            next[i + 1] += -(root * poly[i]);   // -sigma(x) * poly[i]
        }
        poly = std::move(next);
    }
    for (const auto& coef : poly) {
        if (!coef.is_rational()) throw verification_error("is_algebraic_integer: char poly not rational");
        if (!rat_is_integer(coef.rational_value())) return false;
    }
    return true;
}

MQElem MQElem::low_part() const {
    MQField sub = field_.subfield_below();
    MQElem u(sub);
    for (unsigned m = 0; m < sub.dim(); ++m) u.set_coeff(m, c_[m]);
    return u;
}

MQElem MQElem::high_part() const {
    MQField sub = field_.subfield_below();
    MQElem v(sub);
    unsigned top = 1u << (field_.rank() - 1);
    for (unsigned m = 0; m < sub.dim(); ++m) v.set_coeff(m, c_[top | m]);
    return v;
}

MQElem MQElem::from_parts(const MQField& f, const MQElem& u, const MQElem& v) {
    if (u.field() != f.subfield_below() || v.field() != f.subfield_below())
        throw std::invalid_argument("MQElem::from_parts: parts not in the subfield below");
    MQElem r(f);
    unsigned top = 1u << (f.rank() - 1);
    for (unsigned m = 0; m < u.field().dim(); ++m) {
        r.set_coeff(m, u.coeff(m));
        r.set_coeff(top | m, v.coeff(m));
    }
    return r;
}

MQElem MQElem::embed_in(const MQField& bigger) const {
    MQElem r(bigger);
    for (unsigned m = 0; m < field_.dim(); ++m) {
        if (c_[m] == 0) continue;
        MQElem term(bigger, c_[m]);
        for (int i = 0; i < field_.rank(); ++i) {
            if (!(m & (1u << i))) continue;
            auto mk = bigger.mask_of(field_.radicand(i));
            if (!mk) throw std::invalid_argument("MQElem::embed_in: radicand not expressible in target field");
            term *= MQElem::basis(bigger, *mk);
        }
        r += term;
    }
    return r;
}

std::string MQElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned m = 0; m < field_.dim(); ++m) {
        if (c_[m] == 0) continue;
        if (!first) os << " + ";
        first = false;
        long rad = field_.basis_radicand(m);
        if (m == 0) {
            os << c_[m];
        } else if (rad == -1) {
            if (c_[m] == 1) os << "i";
            else os << c_[m] << "*i";
        } else {
            if (c_[m] != 1) os << c_[m] << "*";
            os << "sqrt(" << rad << ")";
        }
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// Square test over the tower F(sqrt(m))/F.
//
// For x = u + v*sqrt(m), v != 0: x = (w + z*sqrt(m))^2 forces
//   u = w^2 + z^2 m,  v = 2wz,  u^2 - m v^2 = (w^2 - z^2 m)^2,
// so the relative norm must be a square n^2 in F and w^2 = (u+n)/2 or
// (u-n)/2 (both signs of n are covered by trying both halves).
// For v = 0: u is a square in F, or u*m is (root z*sqrt(m) with z = t/m).
// Base case Q: numerator and denominator must both be squares.
// ---------------------------------------------------------------------------
static std::optional<BigRat> rat_sqrt(const BigRat& q) {
    if (q < 0) return std::nullopt;
    auto n = perfect_square(BigInt(q.get_num()));
    auto d = perfect_square(BigInt(q.get_den()));
    if (!n || !d) return std::nullopt;
    return ratio(*n, *d);
}

static std::optional<MQElem> is_square_rec(const MQElem& x) {
    const MQField& f = x.field();
    if (f.rank() == 0) {
        auto r = rat_sqrt(x.coeff(0));
        if (!r) return std::nullopt;
        return MQElem(f, *r);
    }
    const long m = f.radicand(f.rank() - 1);
    MQElem u = x.low_part();
    MQElem v = x.high_part();
    if (v.is_zero()) {
        if (auto w = is_square_rec(u)) return MQElem::from_parts(f, *w, MQElem(u.field()));
        MQElem um = BigRat(m) * u;
        if (auto t = is_square_rec(um)) {
            MQElem z = ratio(BigInt(1), BigInt(m)) * *t;
            return MQElem::from_parts(f, MQElem(u.field()), z);
        }
        return std::nullopt;
    }
    MQElem nrm = u * u - BigRat(m) * (v * v);
    auto n = is_square_rec(nrm);
    if (!n) return std::nullopt;
    const BigRat half(1, 2);
    for (int sign : {+1, -1}) {
        MQElem cand = half * (sign > 0 ? u + *n : u - *n);
        auto w = is_square_rec(cand);
        if (!w || w->is_zero()) continue;
        MQElem z = half * (v * w->inv());
        MQElem root = MQElem::from_parts(f, *w, z);
        if (root * root == x) return root;
    }
    return std::nullopt;
}

std::optional<MQElem> mq_is_square(const MQElem& x) {
    if (x.is_zero()) return MQElem(x.field());
    auto r = is_square_rec(x);
    if (!r) return std::nullopt;
    if (!(*r * *r == x)) throw verification_error("mq_is_square: root failed to square back");
    // canonical sign: lowest-mask nonzero coefficient positive
    for (unsigned m = 0; m < x.field().dim(); ++m) {
        if (r->coeff(m) == 0) continue;
        if (r->coeff(m) < 0) return -*r;
        break;
    }
    return r;
}

bool unit_check(const MQElem& x) {
    if (x.is_zero()) return false;
    BigRat n = x.galois_norm();
    if (n != 1 && n != -1) return false;
    return x.is_algebraic_integer();
}

MQElem embed_unit(const MQField& f, const QuadUnit& u) {
    auto mk = f.mask_of(u.d);
    if (!mk) throw std::invalid_argument("embed_unit: sqrt(d) not in field");
    MQElem r(f, u.x);
    r += MQElem::basis(f, *mk, u.y);
    return r;
}

MQElem embed_gauss(const MQField& f, const GaussInt& g) {
    auto mk = f.mask_of(-1);
    if (!mk) throw std::invalid_argument("embed_gauss: field does not contain i");
    MQElem r(f, BigRat(g.re));
    r += MQElem::basis(f, *mk, BigRat(g.im));
    return r;
}

MQElem sqrt_radicand(const MQField& f, long m) {
    auto mk = f.mask_of(m);
    if (!mk) throw std::invalid_argument("sqrt_radicand: radicand not a basis product of field");
    return MQElem::basis(f, *mk);
}

}  // namespace capq

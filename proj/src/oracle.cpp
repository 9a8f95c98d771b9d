#include "capq/oracle.hpp"

#include "capq/quadfield.hpp"
#include "capq/units.hpp"

#include <algorithm>
#include <numeric>
#include <array>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

namespace capq {

std::string QForm::str() const {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

static BigInt form_disc(const QForm& f) { return f.b * f.b - 4 * f.a * f.c; }

static bool is_primitive(const QForm& f) {
    BigInt g = gcd(gcd(f.a, f.b), f.c);
    return g == 1;
}

QForm reduce_form(QForm f, const BigInt& D) {
    if (form_disc(f) != D) throw std::invalid_argument("reduce_form: wrong discriminant");
    for (;;) {
        if (f.c < f.a) {
            f = QForm{f.c, -f.b, f.a};
            continue;
        }
        if (f.b > f.a || f.b <= -f.a) {
            BigInt twoa = 2 * f.a, r;
            mpz_fdiv_r(r.get_mpz_t(), f.b.get_mpz_t(), twoa.get_mpz_t());
            if (r > f.a) r -= twoa;
            f = QForm{f.a, r, (r * r - D) / (4 * f.a)};
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f = QForm{f.a, -f.b, f.c};
            continue;
        }
        return f;
    }
}

// Dirichlet composition: move g to an equivalent form whose leading
// coefficient is coprime to f's, align middle coefficients by CRT, multiply.
QForm compose_forms(const QForm& f, const QForm& g, const BigInt& D) {
    QForm g2 = g;
    if (gcd(f.a, g.a) != 1) {
        bool found = false;
        for (long box = 1; box <= 64 && !found; box *= 4) {
            for (long x = 0; x <= box && !found; ++x) {
                for (long y = -box; y <= box && !found; ++y) {
                    if (std::gcd(x, std::abs(y)) != 1) continue;
                    BigInt val = g.a * x * x + g.b * x * y + g.c * y * y;
                    if (val == 0 || gcd(val, f.a) != 1) continue;
                    BigInt gg, s, r;
                    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), BigInt(x).get_mpz_t(),
                               BigInt(y).get_mpz_t());
                    r = -r;  // det (x r; y s) = x*s - y*r = 1
                    if (BigInt(x) * s - BigInt(y) * r != 1) continue;
                    BigInt A = val;
                    BigInt B = 2 * (g.a * x * r + g.c * y * s) + g.b * (x * s + y * r);
                    BigInt C = g.a * r * r + g.b * r * s + g.c * s * s;
                    g2 = QForm{A, B, C};
                    if (form_disc(g2) != D) throw verification_error("compose_forms: transform broke disc");
                    found = true;
                }
            }
        }
        if (!found) throw verification_error("compose_forms: no representative coprime to a1");
    }
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), f.a.get_mpz_t(), g2.a.get_mpz_t()) == 0)
        throw verification_error("compose_forms: leading coefficients not coprime");
    BigInt t;
    mpz_fdiv_r(t.get_mpz_t(), BigInt(((g2.b - f.b) / 2) * inv).get_mpz_t(), g2.a.get_mpz_t());
    BigInt B = f.b + 2 * f.a * t;
    BigInt A = f.a * g2.a;
    BigInt C = (B * B - D) / (4 * A);
    return reduce_form(QForm{A, B, C}, D);
}

static std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> fs;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        fs.emplace_back(p, e);
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

FormClassGroup imag_class_group(const BigInt& D) {
    if (D >= 0) throw std::invalid_argument("imag_class_group: discriminant must be negative");
    BigInt m4;
    mpz_fdiv_r(m4.get_mpz_t(), D.get_mpz_t(), BigInt(4).get_mpz_t());
    if (m4 != 0 && m4 != 1) throw std::invalid_argument("imag_class_group: D != 0,1 mod 4");

    FormClassGroup G;
    G.disc = D;
    BigInt amax = isqrt(-D / 3);
    for (BigInt a = 1; a <= amax; ++a) {
        for (BigInt b = -a + 1; b <= a; ++b) {
            BigInt num = b * b - D;
            if (num % (4 * a) != 0) continue;
            BigInt c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            QForm f{a, b, c};
            if (!is_primitive(f)) continue;
            G.forms.push_back(f);
        }
    }
    std::sort(G.forms.begin(), G.forms.end());

    const long h = G.order();
    const BigInt b0 = mpz_odd_p(D.get_mpz_t()) ? BigInt(1) : BigInt(0);
    const QForm one = reduce_form(QForm{BigInt(1), b0, (b0 * b0 - D) / 4}, D);
    auto power = [&](const QForm& f, long e) {
        QForm r = one, base = f;
        while (e > 0) {
            if (e & 1) r = compose_forms(r, base, D);
            base = compose_forms(base, base, D);
            e >>= 1;
        }
        return r;
    };

    // Invariant factors from kernel sizes: for each prime l with l^vmax || h,
    // #{g : g^(l^k) = 1} = l^(sum_i min(k, a_i)) pins down the l-part (a_i).
    std::map<long, std::vector<long>> parts;
    for (auto [l, vmax] : factorize(h)) {
        std::vector<int> logN(static_cast<std::size_t>(vmax) + 1, 0);
        for (int k = 1; k <= vmax; ++k) {
            long e = 1;
            for (int t = 0; t < k; ++t) e *= l;
            long cnt = 0;
            for (const auto& g : G.forms)
                if (power(g, e) == one) ++cnt;
            int lg = 0;
            while (cnt > 1) {
                if (cnt % l != 0) throw verification_error("imag_class_group: kernel size not a power of l");
                cnt /= l;
                ++lg;
            }
            logN[static_cast<std::size_t>(k)] = lg;
        }
        std::vector<long> exps;  // a_1 >= a_2 >= ...
        for (int k = 1; k <= vmax; ++k) {
            int ge_k = logN[static_cast<std::size_t>(k)] - logN[static_cast<std::size_t>(k) - 1];
            while (static_cast<int>(exps.size()) < ge_k) exps.push_back(0);
            for (int i = 0; i < ge_k; ++i) exps[static_cast<std::size_t>(i)] = k;
        }
        std::vector<long> powers;
        for (long a : exps) {
            long pk = 1;
            for (long t = 0; t < a; ++t) pk *= l;
            powers.push_back(pk);
        }
        parts[l] = powers;
    }

    std::size_t rank = 0;
    for (auto& [l, v] : parts) rank = std::max(rank, v.size());
    std::vector<long> invf(rank, 1);
    for (auto& [l, v] : parts)
        for (std::size_t i = 0; i < v.size(); ++i) invf[i] *= v[i];
    if (invf.empty()) invf = {1};
    long prod = 1;
    for (long v : invf) prod *= v;
    if (prod != h) throw verification_error("imag_class_group: invariants do not multiply to h");
    G.invariants = invf;
    return G;
}

long imag_class_number(long m) {
    if (m >= 0) throw std::invalid_argument("imag_class_number: m must be negative");
    if (!is_squarefree(m)) throw std::invalid_argument("imag_class_number: m not squarefree");
    BigInt D = (((m % 4) + 4) % 4 == 1) ? BigInt(m) : BigInt(4 * m);
    return imag_class_group(D).order();
}

long real_class_number(long d) {
    if (d <= 1 || !is_squarefree(d)) throw std::invalid_argument("real_class_number: bad d");
    const BigInt D = (d % 4 == 1) ? BigInt(d) : BigInt(4 * d);
    const BigInt s = isqrt(D);

    // reduced indefinite: 0 < b < sqrt(D) and |sqrt(D) - 2|a|| < b (so ac < 0)
    auto reduced_ok = [&](const BigInt& a, const BigInt& b) {
        BigInt twoa = 2 * abs(a);
        BigInt hi = b + twoa;
        if (hi * hi <= D) return false;  // need b > sqrt(D) - 2|a|
        BigInt lo = twoa - b;
        if (lo > 0 && lo * lo >= D) return false;  // need b > 2|a| - sqrt(D)
        return b * b < D;
    };

    std::set<std::array<long, 3>> forms;
    for (BigInt b = (mpz_odd_p(D.get_mpz_t()) ? 1 : 2); b <= s; b += 2) {
        BigInt M = (b * b - D) / 4;  // a*c, negative
        BigInt absM = -M;
        for (BigInt a = 1; a * a <= absM; ++a) {
            if (absM % a != 0) continue;
            BigInt a2 = absM / a;
            for (const BigInt& aa : {a, a2}) {
                for (int sign : {+1, -1}) {
                    BigInt A = sign * aa;
                    BigInt C = M / A;
                    if (!reduced_ok(A, b)) continue;
                    QForm f{A, b, C};
                    if (!is_primitive(f)) continue;
                    forms.insert({A.get_si(), b.get_si(), C.get_si()});
                }
                if (a == a2) break;
            }
        }
    }

    // rho walks each cycle; cycle count = narrow class number
    auto rho = [&](const std::array<long, 3>& f) {
        BigInt c(f[2]), b(f[1]);
        BigInt m = 2 * abs(c);
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), BigInt(s + b).get_mpz_t(), m.get_mpz_t());
        BigInt bp = s - r;  // unique b' = -b mod 2|c| in (sqrt(D) - 2|c|, sqrt(D))
        BigInt cp = (bp * bp - D) / (4 * c);
        return std::array<long, 3>{f[2], bp.get_si(), cp.get_si()};
    };

    long cycles = 0;
    std::set<std::array<long, 3>> visited;
    for (const auto& f : forms) {
        if (visited.count(f)) continue;
        ++cycles;
        auto g = f;
        do {
            visited.insert(g);
            g = rho(g);
            if (!forms.count(g)) throw verification_error("real_class_number: rho left the reduced set");
        } while (g != f);
    }

    QuadUnit u = fundamental_unit(d);
    if (u.norm == 1) {
        if (cycles % 2 != 0) throw verification_error("real_class_number: odd cycle count with norm +1");
        return cycles / 2;
    }
    return cycles;
}

long kuroda_h_k(long p, long q) {
    require_valid_pair(p, q);
    const long d = 2 * p * q;
    FsuReport ek = fsu_k(p, q);
    long q_unit = ek.half_ladder ? 2 : 1;
    long prod = q_unit * real_class_number(d) * imag_class_number(-d);
    if (prod % 2 != 0) throw verification_error("kuroda_h_k: class number relation not integral");
    return prod / 2;
}

// ---------------------------------------------------------------------------
// fixtures
// ---------------------------------------------------------------------------

static std::string g_fixtures_path;

void set_fixtures_path(const std::string& path) { g_fixtures_path = path; }

std::string fixtures_path() {
    if (!g_fixtures_path.empty()) return g_fixtures_path;
    if (const char* env = std::getenv("CAPQ_FIXTURES")) return env;
#ifdef CAPQ_DEFAULT_FIXTURES
    return CAPQ_DEFAULT_FIXTURES;
#else
    return "data/fixtures.csv";
#endif
}

static std::vector<long> parse_dotted(const std::string& s) {
    std::vector<long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '.'))
        if (!tok.empty()) v.push_back(std::stol(tok));
    return v;
}

static std::vector<FixtureRow> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fixtures: cannot open " + path);
    std::vector<FixtureRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            if (line != "d,p,q,case_label,root,cl_k,cl_k2,verdict_bits")
                throw std::runtime_error("fixtures: unexpected header: " + line);
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (cols.size() != 8) throw std::runtime_error("fixtures: bad column count in: " + line);
        FixtureRow r;
        r.d = std::stol(cols[0]);
        r.p = std::stol(cols[1]);
        r.q = std::stol(cols[2]);
        r.case_label = cols[3];
        r.root = BigInt(cols[4]);
        r.cl_k = parse_dotted(cols[5]);
        auto colon = cols[6].find(':');
        if (colon == std::string::npos) throw std::runtime_error("fixtures: cl_k2 cell missing scope: " + cols[6]);
        r.ext = cols[6].substr(0, colon);
        r.cl_ext = parse_dotted(cols[6].substr(colon + 1));
        std::stringstream bs(cols[7]);
        std::string bit;
        while (std::getline(bs, bit, ';')) {
            auto eq = bit.find('=');
            if (eq == std::string::npos) throw std::runtime_error("fixtures: bad verdict bit: " + bit);
            r.bits[bit.substr(0, eq)] = (bit.substr(eq + 1) == "1");
        }
        if (r.d != 2 * r.p * r.q) throw std::runtime_error("fixtures: d != 2pq in row d=" + cols[0]);
        rows.push_back(std::move(r));
    }
    if (rows.size() != 28) throw std::runtime_error("fixtures: expected 28 rows, got " + std::to_string(rows.size()));
    std::set<long> ds;
    for (const auto& r : rows) ds.insert(r.d);
    if (ds.size() != 27) throw std::runtime_error("fixtures: expected 27 distinct d");
    return rows;
}

const std::vector<FixtureRow>& fixtures() {
    static std::mutex mu;
    static std::string loaded_from;
    static std::vector<FixtureRow> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::string path = fixtures_path();
    if (loaded_from != path) {
        cache = load_fixtures(path);
        loaded_from = path;
    }
    return cache;
}

std::vector<const FixtureRow*> fixtures_for(long d) {
    std::vector<const FixtureRow*> out;
    for (const auto& r : fixtures())
        if (r.d == d) out.push_back(&r);
    return out;
}

}  // namespace capq

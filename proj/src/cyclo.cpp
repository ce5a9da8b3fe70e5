#include "cremona/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cremona {

uint32_t euler_phi(uint32_t n) {
    uint32_t result = n;
    for (uint32_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

using Poly = std::vector<Rat>;  // dense, index = degree

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division, remainder must vanish
Poly poly_div_exact(Poly num, const Poly& den) {
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rat f = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = f;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
        trim(num);
    }
    if (!num.empty()) throw internal_error("cyclotomic polynomial division left a remainder");
    return q;
}

const Poly& cyclotomic_poly(uint32_t n) {
    static std::map<uint32_t, Poly> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::function<const Poly&(uint32_t)> build = [&](uint32_t m) -> const Poly& {
        auto jt = memo.find(m);
        if (jt != memo.end()) return jt->second;
        Poly xm1(m + 1, Rat(0));
        xm1[0] = -1;
        xm1[m] = 1;
        for (uint32_t d = 1; d < m; ++d)
            if (m % d == 0) xm1 = poly_div_exact(std::move(xm1), build(d));
        return memo.emplace(m, std::move(xm1)).first->second;
    };
    return build(n);
}

}  // namespace

CycloField::CycloField(uint32_t N) : N_(N), phi_(euler_phi(N)) {
    if (N == 0) throw invalid_input("conductor must be positive");
    phi_poly_ = cyclotomic_poly(N);
    if (phi_poly_.size() != phi_ + 1) throw internal_error("cyclotomic degree mismatch");

    // x^phi == -(c_0 + ... + c_{phi-1} x^{phi-1}), then shift-and-reduce
    red_rows_.resize(phi_ > 1 ? phi_ - 1 : 1);
    std::vector<Rat> row(phi_);
    for (uint32_t i = 0; i < phi_; ++i) row[i] = -phi_poly_[i];
    red_rows_[0] = row;
    for (uint32_t j = 1; j + 1 < phi_; ++j) {
        std::vector<Rat> next(phi_, Rat(0));
        for (uint32_t i = 0; i + 1 < phi_; ++i) next[i + 1] = row[i];
        Rat top = row[phi_ - 1];
        if (top != 0)
            for (uint32_t i = 0; i < phi_; ++i) next[i] += top * red_rows_[0][i];
        red_rows_[j] = next;
        row = std::move(next);
    }

    root_powers_.resize(N_);
    std::vector<Rat> cur(phi_, Rat(0));
    cur[0] = 1;
    root_powers_[0] = cur;
    for (uint32_t k = 1; k < N_; ++k) {
        std::vector<Rat> next(phi_, Rat(0));
        for (uint32_t i = 0; i + 1 < phi_; ++i) next[i + 1] = cur[i];
        Rat top = cur[phi_ - 1];
        if (top != 0)
            for (uint32_t i = 0; i < phi_; ++i) next[i] += top * red_rows_[0][i];
        root_powers_[k] = next;
        cur = std::move(next);
    }

    if (N_ == 1) {
        units_ = {0};
    } else {
        for (uint32_t a = 1; a < N_; ++a)
            if (std::gcd(a, N_) == 1) units_.push_back(a);
    }
    for (uint32_t a : units_)
        if (a <= N_ - a || N_ == 1) emb_reps_.push_back(a);
}

const std::vector<Rat>& CycloField::reduction_row(uint32_t j) const {
    if (j < phi_ || j > 2 * phi_ - 2) throw internal_error("reduction row out of range");
    return red_rows_[j - phi_];
}

const CycloField& CycloField::get(uint32_t N) {
    static std::map<uint32_t, std::unique_ptr<CycloField>> registry;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(N);
    if (it == registry.end())
        it = registry.emplace(N, std::unique_ptr<CycloField>(new CycloField(N))).first;
    return *it->second;
}

void CycNum::check_same(const CycNum& a, const CycNum& b) {
    if (a.N_ != b.N_)
        throw invalid_input("conductor mismatch: " + std::to_string(a.N_) + " vs " +
                            std::to_string(b.N_));
}

CycNum CycNum::zero(uint32_t N) {
    const auto& F = CycloField::get(N);
    return CycNum(N, std::vector<Rat>(F.degree(), Rat(0)));
}

CycNum CycNum::one(uint32_t N) { return rational(N, Rat(1)); }

CycNum CycNum::rational(uint32_t N, const Rat& r) {
    CycNum x = zero(N);
    x.c_[0] = r;
    return x;
}

CycNum CycNum::rational(uint32_t N, long p, long q) {
    if (q == 0) throw invalid_input("zero denominator in rational literal");
    Rat r(p, q);
    r.canonicalize();
    return rational(N, r);
}

CycNum CycNum::root(uint32_t N, long k) {
    const auto& F = CycloField::get(N);
    long m = k % (long)N;
    if (m < 0) m += N;
    return CycNum(N, F.root_power((uint32_t)m));
}

CycNum CycNum::from_terms(uint32_t N, const std::vector<std::tuple<long, long, long>>& terms) {
    CycNum acc = zero(N);
    for (auto& [p, q, e] : terms) {
        if (q == 0) throw invalid_input("zero denominator in cyclotomic literal");
        Rat r(p, q);
        r.canonicalize();
        CycNum t = root(N, e);
        for (auto& cc : t.c_) cc *= r;
        acc = acc + t;
    }
    return acc;
}

bool CycNum::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool CycNum::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& r) { return r == 0; });
}

bool CycNum::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& r) { return r == 0; });
}

Rat CycNum::rational_part() const {
    if (!is_rational()) throw internal_error("rational_part of a non-rational value");
    return c_[0];
}

CycNum CycNum::operator+(const CycNum& o) const {
    check_same(*this, o);
    CycNum r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CycNum CycNum::operator-(const CycNum& o) const {
    check_same(*this, o);
    CycNum r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycNum CycNum::operator*(const CycNum& o) const {
    check_same(*this, o);
    const auto& F = CycloField::get(N_);
    uint32_t phi = F.degree();
    if (phi == 1) {
        CycNum r = zero(N_);
        r.c_[0] = c_[0] * o.c_[0];
        return r;
    }
    std::vector<Rat> prod(2 * phi - 1, Rat(0));
    for (uint32_t i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (uint32_t j = 0; j < phi; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    std::vector<Rat> out(prod.begin(), prod.begin() + phi);
    for (uint32_t j = phi; j <= 2 * phi - 2; ++j) {
        if (prod[j] == 0) continue;
        const auto& row = F.reduction_row(j);
        for (uint32_t i = 0; i < phi; ++i)
            if (row[i] != 0) out[i] += prod[j] * row[i];
    }
    return CycNum(N_, std::move(out));
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw invalid_input("division by zero in Q(w_" + std::to_string(N_) + ")");
    if (is_rational()) return rational(N_, Rat(1) / c_[0]);
    // monomial c*w^k inverts to (1/c)*w^(N-k)
    {
        int nz = -1;
        bool monomial = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != 0) {
                if (nz >= 0) { monomial = false; break; }
                nz = (int)i;
            }
        }
        if (monomial && nz > 0) {
            CycNum r = root(N_, (long)N_ - nz);
            for (auto& x : r.c_) x /= c_[nz];
            return r;
        }
    }
    // extended euclid against Phi_N in Q[x]
    const auto& F = CycloField::get(N_);
    Poly r0 = F.phi_poly();
    Poly r1(c_.begin(), c_.end());
    trim(r1);
    Poly s0{}, s1{Rat(1)};
    while (true) {
        if (r1.empty()) throw internal_error("unit gcd expected against irreducible modulus");
        if (r1.size() == 1) {
            for (auto& x : s1) x /= r1[0];
            std::vector<Rat> out(F.degree(), Rat(0));
            for (size_t i = 0; i < s1.size() && i < out.size(); ++i) out[i] = s1[i];
            return CycNum(N_, std::move(out));
        }
        // one division step: r0 = q r1 + r2, s2 = s0 - q s1
        Poly rem = r0;
        Poly q(rem.size() - r1.size() + 1, Rat(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rat f = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] = f;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= f * r1[i];
            trim(rem);
        }
        Poly s2 = s0;
        s2.resize(std::max(s2.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
}

CycNum CycNum::operator/(const CycNum& o) const {
    check_same(*this, o);
    if (o.is_rational()) {
        if (o.c_[0] == 0) throw invalid_input("division by zero");
        CycNum r = *this;
        for (auto& x : r.c_) x /= o.c_[0];
        return r;
    }
    return *this * o.inverse();
}

CycNum CycNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum base = *this, acc = one(N_);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

CycNum CycNum::conj() const {
    const auto& F = CycloField::get(N_);
    CycNum acc = zero(N_);
    for (uint32_t i = 0; i < F.degree(); ++i) {
        if (c_[i] == 0) continue;
        const auto& pw = F.root_power((N_ - i) % N_);
        for (uint32_t j = 0; j < F.degree(); ++j) acc.c_[j] += c_[i] * pw[j];
    }
    return acc;
}

bool CycNum::operator==(const CycNum& o) const {
    check_same(*this, o);
    return c_ == o.c_;
}

std::complex<double> CycNum::embed() const { return embed_at(1); }

std::complex<double> CycNum::embed_at(uint32_t a) const {
    std::complex<double> acc(0, 0);
    const double tau = 6.283185307179586476925286766559;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        double arg = tau * double((unsigned long long)a * j % N_) / double(N_);
        acc += c_[j].get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc;
}

std::optional<long> CycNum::root_of_unity_order() const {
    if (is_zero()) return std::nullopt;
    long M = (N_ % 2 == 0) ? (long)N_ : 2L * N_;
    if (!pow(M).is_one()) return std::nullopt;
    long ord = M;
    for (long p = 2; p * p <= M; ++p) {
        if (M % p) continue;
        while (ord % p == 0 && pow(ord / p).is_one()) ord /= p;
    }
    long pm = M;
    for (long p = 2; p * p <= pm; ++p)
        while (pm % p == 0) pm /= p;
    if (pm > 1 && ord % pm == 0 && pow(ord / pm).is_one()) ord /= pm;
    return ord;
}

std::optional<long> CycNum::as_root_power() const {
    const auto& F = CycloField::get(N_);
    for (uint32_t k = 0; k < N_; ++k)
        if (c_ == F.root_power(k)) return (long)k;
    return std::nullopt;
}

std::string CycNum::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t j = c_.size(); j-- > 0;) {
        if (c_[j] == 0) continue;
        Rat v = c_[j];
        if (first) {
            if (v < 0) { os << "-"; v = -v; }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        if (j == 0) {
            os << v.get_str();
        } else {
            if (v != 1) os << v.get_str() << "*";
            os << "w";
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

size_t hash_rat(const Rat& r) {
    auto hash_z = [](mpz_srcptr z) {
        size_t h = (size_t)mpz_sgn(z) + 0x9e3779b97f4a7c15ULL;
        size_t n = mpz_size(z);
        for (size_t i = 0; i < n; ++i)
            h = h * 1099511628211ULL ^ (size_t)mpz_getlimbn(z, i);
        return h;
    };
    return hash_z(r.get_num_mpz_t()) * 31 + hash_z(r.get_den_mpz_t());
}

size_t CycNum::hash() const {
    size_t h = N_;
    for (const auto& r : c_) h = h * 1000003ULL ^ hash_rat(r);
    return h;
}

namespace {

// Gauss-sum square roots available inside Q(w_N): value g with g^2 = d.
// For odd prime p | N the quadratic Gauss sum squares to +p or -p; for
// 8 | N, w_8 + w_8^-1 squares to 2.
std::vector<std::pair<CycNum, long>> square_root_stock(uint32_t N) {
    std::vector<std::pair<CycNum, long>> out;
    uint32_t n = N;
    for (uint32_t p = 3; p <= n; p += 2) {
        if (N % p != 0 || euler_phi(p) != p - 1) continue;  // p prime
        bool prime = true;
        for (uint32_t q = 2; q * q <= p; ++q)
            if (p % q == 0) { prime = false; break; }
        if (!prime) continue;
        CycNum g = CycNum::zero(N);
        for (uint32_t a = 1; a < p; ++a) {
            // Legendre symbol by Euler's criterion
            uint32_t e = (p - 1) / 2, base = a % p, val = 1;
            while (e) {
                if (e & 1) val = (uint64_t)val * base % p;
                base = (uint64_t)base * base % p;
                e >>= 1;
            }
            CycNum term = CycNum::root(N, (long)(N / p) * a);
            g = (val == 1) ? g + term : g - term;
        }
        out.emplace_back(g, (p % 4 == 1) ? (long)p : -(long)p);
    }
    if (N % 8 == 0) {
        CycNum g = CycNum::root(N, N / 8) + CycNum::root(N, N - N / 8);
        out.emplace_back(g, 2);
    }
    return out;
}

std::optional<Rat> rational_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return Rat(sn, sd);
}

std::optional<Rat> rat_from_double(double x, long max_den) {
    // continued fractions, verify at the end
    double a = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(a);
        if (fl > 9e17 || fl < -9e17) return std::nullopt;
        long ai = (long)fl;
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = a - fl;
        if (std::abs((double)p1 / (double)q1 - x) < 1e-12 * std::max(1.0, std::abs(x))) break;
        if (frac < 1e-15) break;
        a = 1.0 / frac;
    }
    if (q1 == 0) return std::nullopt;
    if (std::abs((double)p1 / (double)q1 - x) > 1e-7 * std::max(1.0, std::abs(x)))
        return std::nullopt;
    Rat r((long)p1, (long)q1);
    r.canonicalize();
    return r;
}

}  // namespace

std::optional<CycNum> sqrt_in_field(const CycNum& x) {
    uint32_t N = x.conductor();
    if (x.is_zero()) return CycNum::zero(N);

    if (x.is_rational()) {
        if (auto r = rational_sqrt(x.rational_part())) return CycNum::rational(N, *r);
    }

    // shape scan: u * w^k * g, with g from the Gauss-sum stock
    std::vector<std::pair<CycNum, long>> stock{{CycNum::one(N), 1}};
    for (auto& gs : square_root_stock(N)) {
        size_t sz = stock.size();
        for (size_t i = 0; i < sz; ++i)
            stock.emplace_back(stock[i].first * gs.first, stock[i].second * gs.second);
    }
    for (uint32_t k = 0; k < N; ++k) {
        CycNum wk2 = CycNum::root(N, 2L * k);
        for (auto& [g, d] : stock) {
            CycNum y = x / (wk2 * CycNum::rational(N, d, 1));
            if (!y.is_rational()) continue;
            if (auto r = rational_sqrt(y.rational_part())) {
                CycNum s = g * CycNum::root(N, k);
                CycNum rr = CycNum::rational(N, *r);
                return s * rr;
            }
        }
    }

    // locate through the complex embeddings, then confirm exactly
    const auto& F = CycloField::get(N);
    uint32_t phi = F.degree();
    const auto& units = F.units();
    const auto& reps = F.embedding_reps();
    if (reps.size() > 22) return std::nullopt;  // sign scan would be too wide

    // solve V c = t for each sign assignment on conjugate-pair representatives
    std::vector<std::vector<std::complex<double>>> V(phi, std::vector<std::complex<double>>(phi));
    const double tau = 6.283185307179586476925286766559;
    for (uint32_t r = 0; r < phi; ++r)
        for (uint32_t j = 0; j < phi; ++j) {
            double arg = tau * double((unsigned long long)units[r] * j % N) / double(N);
            V[r][j] = {std::cos(arg), std::sin(arg)};
        }
    // LU with partial pivoting
    std::vector<uint32_t> piv(phi);
    for (uint32_t i = 0; i < phi; ++i) piv[i] = i;
    for (uint32_t col = 0; col < phi; ++col) {
        uint32_t best = col;
        for (uint32_t r = col + 1; r < phi; ++r)
            if (std::abs(V[r][col]) > std::abs(V[best][col])) best = r;
        std::swap(V[col], V[best]);
        std::swap(piv[col], piv[best]);
        if (std::abs(V[col][col]) < 1e-12) return std::nullopt;
        for (uint32_t r = col + 1; r < phi; ++r) {
            auto f = V[r][col] / V[col][col];
            V[r][col] = f;
            for (uint32_t j = col + 1; j < phi; ++j) V[r][j] -= f * V[col][j];
        }
    }

    std::vector<std::complex<double>> base(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) base[i] = std::sqrt(x.embed_at(reps[i]));

    size_t combos = size_t(1) << (reps.size() - 1);
    std::vector<std::complex<double>> t(phi), y(phi);
    for (size_t mask = 0; mask < combos; ++mask) {
        // assemble the value at every embedding; conjugate pairs stay conjugate
        for (uint32_t r = 0; r < phi; ++r) {
            uint32_t a = units[r];
            uint32_t rep = std::min(a, N - a);
            if (N <= 2) rep = a;
            size_t idx = std::distance(reps.begin(), std::find(reps.begin(), reps.end(), rep));
            double sign = (idx == 0 || !(mask >> (idx - 1) & 1)) ? 1.0 : -1.0;
            std::complex<double> v = base[idx] * sign;
            t[r] = (a == rep) ? v : std::conj(v);
        }
        for (uint32_t r = 0; r < phi; ++r) y[r] = t[piv[r]];
        for (uint32_t r = 0; r < phi; ++r)
            for (uint32_t j = 0; j < r; ++j) y[r] -= V[r][j] * y[j];
        bool ok = true;
        for (uint32_t r = phi; r-- > 0;) {
            for (uint32_t j = r + 1; j < phi; ++j) y[r] -= V[r][j] * y[j];
            y[r] /= V[r][r];
        }
        std::vector<std::tuple<long, long, long>> terms;
        for (uint32_t j = 0; j < phi && ok; ++j) {
            if (std::abs(y[j].imag()) > 1e-6 * std::max(1.0, std::abs(y[j].real()))) {
                ok = false;
                break;
            }
            auto r = rat_from_double(y[j].real(), 100000000L);
            if (!r) { ok = false; break; }
            if (*r != 0)
                terms.emplace_back(mpz_get_si(r->get_num_mpz_t()),
                                   mpz_get_si(r->get_den_mpz_t()), (long)j);
        }
        if (!ok) continue;
        CycNum cand = CycNum::from_terms(N, terms);
        if (cand * cand == x) return cand;
    }
    return std::nullopt;
}

}  // namespace cremona

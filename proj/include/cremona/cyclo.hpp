#pragma once
// Exact arithmetic in cyclotomic fields Q(w), w = exp(2*pi*i/N).
//
// Elements are stored on the power basis 1, w, ..., w^(phi(N)-1) with
// rational coefficients, reduced mod the N-th cyclotomic polynomial.
// Equality of canonical forms is exact field equality.  The conductor N is
// fixed per value; mixing conductors throws.

#include <gmpxx.h>

#include <complex>
#include <tuple>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cremona/errors.hpp"

namespace cremona {

using Rat = mpq_class;

// Shared per-conductor data: Phi_N, reduction rows for w^k, embeddings.
class CycloField {
public:
    static const CycloField& get(uint32_t N);

    uint32_t conductor() const { return N_; }
    uint32_t degree() const { return phi_; }  // phi(N)
    // w^k expanded on the power basis, 0 <= k < N
    const std::vector<Rat>& root_power(uint32_t k) const { return root_powers_[k % N_]; }
    // x^j mod Phi_N for phi <= j <= 2*phi-2
    const std::vector<Rat>& reduction_row(uint32_t j) const;
    const std::vector<Rat>& phi_poly() const { return phi_poly_; }
    // residues a coprime to N, one per conjugate pair {a, N-a}, a=1 first
    const std::vector<uint32_t>& embedding_reps() const { return emb_reps_; }
    const std::vector<uint32_t>& units() const { return units_; }

private:
    explicit CycloField(uint32_t N);
    uint32_t N_, phi_;
    std::vector<Rat> phi_poly_;                 // monic, degree phi
    std::vector<std::vector<Rat>> red_rows_;    // index j-phi
    std::vector<std::vector<Rat>> root_powers_; // index k
    std::vector<uint32_t> units_, emb_reps_;
};

class CycNum {
public:
    CycNum() : N_(1), c_(1, Rat(0)) {}  // zero of Q = Q(w_1)
    static CycNum zero(uint32_t N);
    static CycNum one(uint32_t N);
    static CycNum rational(uint32_t N, const Rat& r);
    static CycNum rational(uint32_t N, long p, long q);
    static CycNum root(uint32_t N, long k);  // w_N^k
    // sum of terms (p/q) * w^e; rejects q = 0
    static CycNum from_terms(uint32_t N, const std::vector<std::tuple<long, long, long>>& terms);

    uint32_t conductor() const { return N_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rat rational_part() const;  // requires is_rational()

    CycNum operator+(const CycNum& o) const;
    CycNum operator-(const CycNum& o) const;
    CycNum operator*(const CycNum& o) const;
    CycNum operator/(const CycNum& o) const;
    CycNum operator-() const;
    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    CycNum inverse() const;       // throws invalid_input on zero
    CycNum pow(long e) const;
    CycNum conj() const;          // complex conjugation w -> w^(N-1)

    std::complex<double> embed() const;            // w -> exp(2 pi i/N)
    std::complex<double> embed_at(uint32_t a) const;  // w -> exp(2 pi i a/N)

    // multiplicative order as a root of unity, nullopt if not one
    std::optional<long> root_of_unity_order() const;
    // k with *this == w_N^k (times nothing), nullopt otherwise
    std::optional<long> as_root_power() const;

    std::string str() const;  // "1/2*w^3 - 2" style, w = w_N
    size_t hash() const;

private:
    CycNum(uint32_t N, std::vector<Rat> c) : N_(N), c_(std::move(c)) {}
    static void check_same(const CycNum& a, const CycNum& b);
    uint32_t N_;
    std::vector<Rat> c_;  // size phi(N)
};

struct CycNumHash {
    size_t operator()(const CycNum& x) const { return x.hash(); }
};

// Exact square root in Q(w_N) if one exists.  Tries rational and
// u*w^k*(Gauss sum) shapes first, then locates a candidate through the
// complex embeddings and confirms it by exact back-substitution.
std::optional<CycNum> sqrt_in_field(const CycNum& x);

size_t hash_rat(const Rat& r);
uint32_t euler_phi(uint32_t n);

}  // namespace cremona

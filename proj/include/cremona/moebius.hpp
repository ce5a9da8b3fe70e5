#pragma once
// PGL2 over a cyclotomic field: canonical projective matrices and points,
// group closure, Klein-type recognition, orbits and fixed points on P1.

#include <array>
#include <vector>

#include "cremona/cyclo.hpp"
#include "cremona/groups.hpp"

namespace cremona {

// [x : y], first nonzero coordinate scaled to 1
struct ProjPoint {
    CycNum x, y;

    static ProjPoint make(const CycNum& x, const CycNum& y);
    static ProjPoint zero(uint32_t n) { return make(CycNum::one(n), CycNum::zero(n)); }
    static ProjPoint infinity(uint32_t n) { return make(CycNum::zero(n), CycNum::one(n)); }

    uint32_t conductor() const { return x.conductor(); }
    bool operator==(const ProjPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    std::string str() const;
    size_t hash() const;
};

struct ProjPointHash {
    size_t operator()(const ProjPoint& p) const { return p.hash(); }
};

// 2x2 projective matrix, first nonzero entry in row-major order scaled to 1
struct MoebiusMap {
    std::array<std::array<CycNum, 2>, 2> m;

    static MoebiusMap make(const CycNum& a, const CycNum& b, const CycNum& c, const CycNum& d);
    static MoebiusMap identity(uint32_t n);

    uint32_t conductor() const { return m[0][0].conductor(); }
    bool is_identity() const;
    CycNum det() const;

    MoebiusMap compose(const MoebiusMap& o) const;  // this after o
    MoebiusMap inverse() const;
    MoebiusMap pow(long k) const;
    ProjPoint apply(const ProjPoint& p) const;
    long order(size_t cap = kDefaultClosureCap) const;

    bool operator==(const MoebiusMap& o) const { return m == o.m; }
    bool operator!=(const MoebiusMap& o) const { return !(*this == o); }
    std::string str() const;
    size_t hash() const;
};

struct MoebiusHash {
    size_t operator()(const MoebiusMap& g) const { return g.hash(); }
};

// standard generators; conductor n must make the needed roots available
MoebiusMap std_R(uint32_t n, long order, long power = 1);  // diag(1, w_order^power)
MoebiusMap std_A(uint32_t n);                              // diag(1, -1)
MoebiusMap std_B(uint32_t n);                              // antidiagonal swap
MoebiusMap std_C(uint32_t n);                              // order 3, needs 4 | n
MoebiusMap std_D(uint32_t n);                              // involution, needs 4 | n
MoebiusMap std_E(uint32_t n);                              // diag(w5, 1), needs 5 | n
MoebiusMap std_F(uint32_t n);                              // involution, needs 5 | n

using MoebiusGroup = Closed<MoebiusMap, MoebiusHash>;
MoebiusGroup moebius_closure(const std::vector<MoebiusMap>& gens,
                             size_t cap = kDefaultClosureCap);

// Klein classification: Cyclic(n), Dihedral(n), A4, S4, A5.  Order-2 groups
// are Cyclic(2) when diagonal (fixing [1:0] and [0:1]) and Dihedral(1)
// otherwise, matching the standard forms of the generator sets.
using KleinClass = FamilyTag;
KleinClass klein_classify(const MoebiusGroup& g);

// lengths of the non-generic orbits on P1 for each Klein class
std::vector<long> special_orbit_spectrum(const KleinClass& c);

std::vector<ProjPoint> orbit(const MoebiusGroup& g, const ProjPoint& p);

// solutions of m21 x^2 + (m22 - m11) xy - m12 y^2 = 0; throws needs_extension
// with suggested conductor multiplier 2*ord(g) when the discriminant has no
// square root in the working field
std::vector<ProjPoint> fixed_points(const MoebiusMap& g);

}  // namespace cremona

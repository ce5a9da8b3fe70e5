#pragma once
// Degree 6 and degree 5 del Pezzo surfaces: the torus-by-hexagon
// automorphism group of x0*y0 = x1*y1 = x2*y2, its minimality and
// fixed-point criteria, and the S5 story of the quintic surface.

#include <array>

#include "cremona/cyclo.hpp"
#include "cremona/groups.hpp"

namespace cremona {

// D6 = <r, s | r^6 = s^2 = id, s r s = r^-1>; normal forms r^k s^e
struct HexEl {
    int k = 0;
    bool s = false;

    static HexEl rot(int k) { return {((k % 6) + 6) % 6, false}; }
    static HexEl refl(int k) { return {((k % 6) + 6) % 6, true}; }  // r^k s

    HexEl mul(const HexEl& o) const {
        return {((k + (s ? -o.k : o.k)) % 6 + 6) % 6, s != o.s};
    }
    HexEl inverse() const { return s ? *this : rot(-k); }
    bool is_id() const { return k == 0 && !s; }
    int order() const;
    uint8_t code() const { return (uint8_t)(k + (s ? 6 : 0)); }
    bool operator==(const HexEl& o) const { return k == o.k && s == o.s; }
    bool operator!=(const HexEl& o) const { return !(*this == o); }
    std::string str() const;
};

HexEl hex_parse(const std::string& word);  // left-to-right product of r, s

// point of the surface x0*y0 = x1*y1 = x2*y2 in P2 x P2
struct DP6Point {
    std::array<CycNum, 3> x, y;

    static DP6Point make(std::array<CycNum, 3> x, std::array<CycNum, 3> y);
    static DP6Point base(uint32_t conductor);  // ([1:1:1],[1:1:1])

    uint32_t conductor() const { return x[0].conductor(); }
    bool operator==(const DP6Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const DP6Point& o) const { return !(*this == o); }
    std::string str() const;
    size_t hash() const;
};

// torus element (1, t1, t2) composed with a hexagon word; the hexagon part
// acts through the standard rotation rho and reflection sigma
struct DP6Aut {
    std::array<CycNum, 3> torus;  // first coordinate 1, all nonzero
    HexEl hex;

    static DP6Aut make(std::array<CycNum, 3> torus, HexEl hex);
    static DP6Aut make_torus(const CycNum& t1, const CycNum& t2);
    static DP6Aut make_hex(uint32_t conductor, HexEl hex);
    static DP6Aut identity(uint32_t conductor);

    uint32_t conductor() const { return torus[0].conductor(); }
    bool is_identity() const;

    DP6Aut compose(const DP6Aut& o) const;  // this after o
    DP6Aut inverse() const;
    DP6Point act(const DP6Point& p) const;

    bool operator==(const DP6Aut& o) const { return hex == o.hex && torus == o.torus; }
    bool operator!=(const DP6Aut& o) const { return !(*this == o); }
    std::string str() const;
    size_t hash() const;
};

struct DP6AutHash {
    size_t operator()(const DP6Aut& g) const { return g.hash(); }
};

DP6Aut dp6_rho(uint32_t conductor);    // ([x],[y]) -> ([y1:y2:y0],[x1:x2:x0])
DP6Aut dp6_sigma(uint32_t conductor);  // ([x],[y]) -> ([y0:y2:y1],[x0:x2:x1])
DP6Aut dp6_iota(uint32_t conductor);   // the factor swap, = rho^3
DP6Aut dp6_theta(uint32_t conductor);  // coordinate rotation, = rho^4

using DP6Group = Closed<DP6Aut, DP6AutHash>;
DP6Group dp6_closure(const std::vector<DP6Aut>& gens, size_t cap = kDefaultClosureCap);

struct DP6Analysis {
    DP6Group full;
    std::vector<HexEl> hex_image;     // image in D6, sorted by code
    std::string hex_label;            // one of the 16 subgroup names
    std::vector<int> torus_indices;   // elements acting trivially on the hexagon
    SubTable torus_part;
    bool minimal = false;             // image is <r>, <r^2, s> or <r, s>
    bool fixes_point = false;         // torus part trivial
};

DP6Analysis dp6_analyze(const std::vector<DP6Aut>& gens, size_t cap = kDefaultClosureCap);

// ---- degree 5 ----------------------------------------------------------

struct DP5Group {
    std::vector<Perm> gens;  // degree 5
    PermGroup group;
};
DP5Group dp5_group(const std::vector<Perm>& gens);

struct DP5Analysis {
    long order = 0;
    FamilyTag family;
    bool minimal = false;  // order is one of 5, 10, 20, 60, 120
};
DP5Analysis dp5_analyze(const DP5Group& g);

using Mat3 = std::array<std::array<CycNum, 3>, 3>;
using P2Triple = std::array<CycNum, 3>;

Mat3 dp5_std_r(uint32_t conductor);  // [x:y:z] -> [x : w5 y : w5^-1 z], needs 5 | conductor
Mat3 dp5_std_s(uint32_t conductor);  // [x:y:z] -> [x:z:y]

// orbit of the start point has length 5, no three points collinear, and all
// five lie on one smooth conic
bool dp5_orbit_general_position(const std::vector<Mat3>& gens, const P2Triple& start,
                                size_t cap = kDefaultClosureCap);

}  // namespace cremona

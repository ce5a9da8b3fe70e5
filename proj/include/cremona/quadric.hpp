#pragma once
// Automorphisms of P1 x P1 as (PGL2 x PGL2) x| C2: element algebra, ruling
// analysis with Goursat data of the kernel, fixed loci, orbits, and the
// named generator sets of the classification tables.

#include <optional>

#include "cremona/moebius.hpp"

namespace cremona {

struct QuadricPoint {
    ProjPoint x, y;

    uint32_t conductor() const { return x.conductor(); }
    bool operator==(const QuadricPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const QuadricPoint& o) const { return !(*this == o); }
    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
    size_t hash() const { return x.hash() * 2654435761u ^ y.hash(); }
};

struct QuadricPointHash {
    size_t operator()(const QuadricPoint& p) const { return p.hash(); }
};

// (M, N, id): (x, y) -> (Mx, Ny);  (M, N, swap): (x, y) -> (My, Nx)
struct QuadricAut {
    MoebiusMap m, n;
    bool swaps = false;

    static QuadricAut make(MoebiusMap m, MoebiusMap n, bool swaps);
    static QuadricAut identity(uint32_t conductor);

    uint32_t conductor() const { return m.conductor(); }
    bool is_identity() const { return !swaps && m.is_identity() && n.is_identity(); }

    QuadricAut compose(const QuadricAut& o) const;  // this after o
    QuadricAut inverse() const;
    QuadricPoint act(const QuadricPoint& p) const;

    bool operator==(const QuadricAut& o) const {
        return swaps == o.swaps && m == o.m && n == o.n;
    }
    bool operator!=(const QuadricAut& o) const { return !(*this == o); }
    std::string str() const;
    size_t hash() const;
};

struct QuadricAutHash {
    size_t operator()(const QuadricAut& g) const { return g.hash(); }
};

using QuadricGroup = Closed<QuadricAut, QuadricAutHash>;
QuadricGroup quadric_closure(const std::vector<QuadricAut>& gens,
                             size_t cap = kDefaultClosureCap);

// invariant Picard rank of P1 x P1: 1 when some generator swaps the rulings
struct RulingAnalysis {
    int rank = 2;
    QuadricGroup full;
    std::vector<int> kernel_indices;     // into full: ruling-preserving part
    SubTable kernel;                     // that part as its own table
    std::optional<QuadricAut> swap_rep;  // first swapping generator (rank 1)
    MoebiusGroup proj1, proj2;           // factor images H1, H2 of the kernel
    GoursatData goursat;                 // kernel as a subgroup of H1 x H2
    KleinClass h1_class, h2_class;       // equal tags in rank 1
};

RulingAnalysis analyze_rulings(const std::vector<QuadricAut>& gens,
                               size_t cap = kDefaultClosureCap);

// common fixed locus; complete=false means a positive-dimensional family
// exists and points holds canonical samples on it
struct FixedLocus {
    std::vector<QuadricPoint> points;
    bool complete = true;
};

FixedLocus common_fixed_points(const QuadricGroup& g);

std::vector<QuadricPoint> orbit_on_quadric(const QuadricGroup& g, const QuadricPoint& p);

// the outer twist of the A5 closure: image of g under an outer automorphism,
// realized inside the same matrix group via the conjugation action on the
// five Klein four-subgroups
MoebiusMap a5_outer_twist(const MoebiusGroup& a5, const MoebiusMap& g);

// named generator sets of the classification tables; rows parameterized by a
// dihedral order take n
std::vector<std::string> quadric_table_row_names();
std::vector<QuadricAut> quadric_table_row(const std::string& name, long n = 0);

struct RowCheck {
    long order = 0;
    FamilyTag family;
};
RowCheck verify_table_row(const std::string& name, long n = 0,
                          size_t cap = kDefaultClosureCap);

}  // namespace cremona

#include "cremona/moebius.hpp"

#include <algorithm>
#include <unordered_set>

namespace cremona {

ProjPoint ProjPoint::make(const CycNum& x, const CycNum& y) {
    if (x.conductor() != y.conductor()) throw invalid_input("conductor mismatch in point");
    ProjPoint p{x, y};
    if (!x.is_zero()) {
        CycNum xi = x.inverse();
        p.x = CycNum::one(x.conductor());
        p.y = y * xi;
    } else if (!y.is_zero()) {
        p.y = CycNum::one(y.conductor());
    } else {
        throw invalid_input("point [0:0] is not projective");
    }
    return p;
}

std::string ProjPoint::str() const { return "[" + x.str() + " : " + y.str() + "]"; }

size_t ProjPoint::hash() const {
    return x.hash() * 1000003u ^ y.hash();
}

MoebiusMap MoebiusMap::make(const CycNum& a, const CycNum& b, const CycNum& c, const CycNum& d) {
    uint32_t n = a.conductor();
    if (b.conductor() != n || c.conductor() != n || d.conductor() != n)
        throw invalid_input("conductor mismatch in matrix");
    MoebiusMap g{{{{a, b}, {c, d}}}};
    if ((a * d - b * c).is_zero()) throw invalid_input("matrix is singular");
    const CycNum* lead = nullptr;
    for (int i = 0; i < 2 && !lead; ++i)
        for (int j = 0; j < 2 && !lead; ++j)
            if (!g.m[i][j].is_zero()) lead = &g.m[i][j];
    CycNum s = lead->inverse();
    for (auto& row : g.m)
        for (auto& e : row) e = e * s;
    return g;
}

MoebiusMap MoebiusMap::identity(uint32_t n) {
    return make(CycNum::one(n), CycNum::zero(n), CycNum::zero(n), CycNum::one(n));
}

bool MoebiusMap::is_identity() const {
    return m[0][0].is_one() && m[0][1].is_zero() && m[1][0].is_zero() && m[1][1].is_one();
}

CycNum MoebiusMap::det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
    if (conductor() != o.conductor()) throw invalid_input("conductor mismatch in composition");
    return make(m[0][0] * o.m[0][0] + m[0][1] * o.m[1][0],
                m[0][0] * o.m[0][1] + m[0][1] * o.m[1][1],
                m[1][0] * o.m[0][0] + m[1][1] * o.m[1][0],
                m[1][0] * o.m[0][1] + m[1][1] * o.m[1][1]);
}

MoebiusMap MoebiusMap::inverse() const {
    return make(m[1][1], -m[0][1], -m[1][0], m[0][0]);
}

MoebiusMap MoebiusMap::pow(long k) const {
    MoebiusMap base = *this;
    if (k < 0) {
        base = inverse();
        k = -k;
    }
    MoebiusMap acc = identity(conductor());
    while (k) {
        if (k & 1) acc = acc.compose(base);
        base = base.compose(base);
        k >>= 1;
    }
    return acc;
}

ProjPoint MoebiusMap::apply(const ProjPoint& p) const {
    if (conductor() != p.conductor()) throw invalid_input("conductor mismatch in application");
    return ProjPoint::make(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y);
}

long MoebiusMap::order(size_t cap) const {
    long ord = 1;
    MoebiusMap g = *this;
    while (!g.is_identity()) {
        g = g.compose(*this);
        ++ord;
        if ((size_t)ord > cap)
            throw invalid_input("map has infinite order (or order above cap " +
                                std::to_string(cap) + ")");
    }
    return ord;
}

std::string MoebiusMap::str() const {
    return "[[" + m[0][0].str() + ", " + m[0][1].str() + "], [" + m[1][0].str() + ", " +
           m[1][1].str() + "]]";
}

size_t MoebiusMap::hash() const {
    size_t h = 1469598103934665603ULL;
    for (auto& row : m)
        for (auto& e : row) h = (h ^ e.hash()) * 1099511628211ULL;
    return h;
}

MoebiusMap std_R(uint32_t n, long order, long power) {
    if (order <= 0 || n % order != 0)
        throw invalid_input("rotation order must divide the conductor");
    long k = ((power % order) + order) % order;
    return MoebiusMap::make(CycNum::one(n), CycNum::zero(n), CycNum::zero(n),
                            CycNum::root(n, (long)(n / order) * k));
}

MoebiusMap std_A(uint32_t n) {
    return MoebiusMap::make(CycNum::one(n), CycNum::zero(n), CycNum::zero(n),
                            CycNum::rational(n, -1));
}

MoebiusMap std_B(uint32_t n) {
    return MoebiusMap::make(CycNum::zero(n), CycNum::one(n), CycNum::one(n), CycNum::zero(n));
}

namespace {
CycNum imag_unit(uint32_t n) {
    if (n % 4 != 0) throw invalid_input("conductor must be divisible by 4");
    return CycNum::root(n, n / 4);
}
}  // namespace

MoebiusMap std_C(uint32_t n) {
    CycNum i = imag_unit(n);
    return MoebiusMap::make(i, -i, CycNum::one(n), CycNum::one(n));
}

MoebiusMap std_D(uint32_t n) {
    CycNum i = imag_unit(n);
    return MoebiusMap::make(CycNum::one(n), -i, i, CycNum::rational(n, -1));
}

MoebiusMap std_E(uint32_t n) {
    if (n % 5 != 0) throw invalid_input("conductor must be divisible by 5");
    return MoebiusMap::make(CycNum::root(n, n / 5), CycNum::zero(n), CycNum::zero(n),
                            CycNum::one(n));
}

MoebiusMap std_F(uint32_t n) {
    if (n % 5 != 0) throw invalid_input("conductor must be divisible by 5");
    CycNum w = CycNum::root(n, n / 5);
    CycNum t = CycNum::one(n) - w - w.inverse();
    return MoebiusMap::make(CycNum::one(n), t, CycNum::one(n), CycNum::rational(n, -1));
}

MoebiusGroup moebius_closure(const std::vector<MoebiusMap>& gens, size_t cap) {
    if (gens.empty()) throw invalid_input("closure requires at least one generator");
    uint32_t n = gens[0].conductor();
    for (auto& g : gens)
        if (g.conductor() != n) throw invalid_input("conductor mismatch among generators");
    return close_group<MoebiusMap, MoebiusHash>(
        MoebiusMap::identity(n), gens,
        [](const MoebiusMap& a, const MoebiusMap& b) { return a.compose(b); }, cap,
        "subgroup of PGL2");
}

KleinClass klein_classify(const MoebiusGroup& g) {
    long n = g.table.size();
    if (n == 1) return FamilyTag::cyclic(1);
    if (n == 2) {
        const MoebiusMap& t = g.elems()[1];
        bool diagonal = t.m[0][1].is_zero() && t.m[1][0].is_zero();
        return diagonal ? FamilyTag::cyclic(2) : FamilyTag::dihedral(1);
    }
    auto counts = g.table.order_counts();
    long max_order = counts.rbegin()->first;
    if (max_order == n) return FamilyTag::cyclic(n);
    if (n % 2 == 0 && max_order == n / 2 && is_dihedral(g.table).is_dihedral)
        return FamilyTag::dihedral(n / 2);
    auto expect = [&](std::map<long, long> want, FamilyTag::K k) {
        if (counts != want) throw internal_error("element orders inconsistent for PGL2 subgroup");
        return FamilyTag::named(k);
    };
    if (n == 12 && max_order == 3)
        return expect({{1, 1}, {2, 3}, {3, 8}}, FamilyTag::K::A4);
    if (n == 24 && max_order == 4)
        return expect({{1, 1}, {2, 9}, {3, 8}, {4, 6}}, FamilyTag::K::S4);
    if (n == 60 && max_order == 5)
        return expect({{1, 1}, {2, 15}, {3, 20}, {5, 24}}, FamilyTag::K::A5);
    throw internal_error("group of order " + std::to_string(n) +
                         " does not match any finite subgroup of PGL2");
}

std::vector<long> special_orbit_spectrum(const KleinClass& c) {
    switch (c.kind) {
        case FamilyTag::K::Trivial:
        case FamilyTag::K::Cyclic: return {1, 1};
        case FamilyTag::K::Dihedral: return {2, c.n};
        case FamilyTag::K::A4: return {4, 4, 6};
        case FamilyTag::K::S4: return {6, 8, 12};
        case FamilyTag::K::A5: return {12, 20, 30};
        default: throw internal_error("not a Klein class: " + c.str());
    }
}

std::vector<ProjPoint> orbit(const MoebiusGroup& g, const ProjPoint& p) {
    std::vector<ProjPoint> out;
    std::unordered_set<ProjPoint, ProjPointHash> seen;
    for (const auto& e : g.elems()) {
        ProjPoint q = e.apply(p);
        if (seen.insert(q).second) out.push_back(q);
    }
    return out;
}

std::vector<ProjPoint> fixed_points(const MoebiusMap& g) {
    if (g.is_identity()) throw invalid_input("every point is fixed by the identity");
    uint32_t n = g.conductor();
    CycNum a = g.m[1][0];
    CycNum b = g.m[1][1] - g.m[0][0];
    CycNum c = -g.m[0][1];
    if (a.is_zero()) {
        std::vector<ProjPoint> out{ProjPoint::zero(n)};
        if (!b.is_zero()) {
            ProjPoint q = ProjPoint::make(-c, b);
            if (!(q == out[0])) out.push_back(q);
        }
        return out;
    }
    CycNum disc = b * b - CycNum::rational(n, 4) * a * c;
    auto s = sqrt_in_field(disc);
    if (!s) {
        long ord = g.order();
        throw needs_extension(
            2 * ord, "fixed points lie in a quadratic extension; retry with the conductor "
                     "multiplied by " + std::to_string(2 * ord));
    }
    CycNum two_a = CycNum::rational(n, 2) * a;
    ProjPoint p1 = ProjPoint::make(-b + *s, two_a);
    ProjPoint p2 = ProjPoint::make(-b - *s, two_a);
    std::vector<ProjPoint> out{p1};
    if (p2 != p1) out.push_back(p2);
    return out;
}

}  // namespace cremona

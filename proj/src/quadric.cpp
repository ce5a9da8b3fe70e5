#include "cremona/quadric.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <unordered_set>

namespace cremona {

QuadricAut QuadricAut::make(MoebiusMap m, MoebiusMap n, bool swaps) {
    if (m.conductor() != n.conductor())
        throw invalid_input("quadric automorphism: factor conductors differ");
    return {std::move(m), std::move(n), swaps};
}

QuadricAut QuadricAut::identity(uint32_t conductor) {
    return {MoebiusMap::identity(conductor), MoebiusMap::identity(conductor), false};
}

QuadricAut QuadricAut::compose(const QuadricAut& o) const {
    return {m.compose(swaps ? o.n : o.m), n.compose(swaps ? o.m : o.n), swaps != o.swaps};
}

QuadricAut QuadricAut::inverse() const {
    if (swaps) return {n.inverse(), m.inverse(), true};
    return {m.inverse(), n.inverse(), false};
}

QuadricPoint QuadricAut::act(const QuadricPoint& p) const {
    if (swaps) return {m.apply(p.y), n.apply(p.x)};
    return {m.apply(p.x), n.apply(p.y)};
}

std::string QuadricAut::str() const {
    return "(" + m.str() + ", " + n.str() + (swaps ? ", swap)" : ", id)");
}

size_t QuadricAut::hash() const {
    size_t h = m.hash() * 1000003u ^ n.hash();
    return swaps ? ~h : h;
}

QuadricGroup quadric_closure(const std::vector<QuadricAut>& gens, size_t cap) {
    if (gens.empty()) throw invalid_input("quadric closure needs at least one generator");
    auto mul = [](const QuadricAut& a, const QuadricAut& b) { return a.compose(b); };
    return close_group<QuadricAut, QuadricAutHash>(QuadricAut::identity(gens[0].conductor()),
                                                   gens, mul, cap, "quadric closure");
}

RulingAnalysis analyze_rulings(const std::vector<QuadricAut>& gens, size_t cap) {
    RulingAnalysis an;
    for (const auto& g : gens) {
        if (!g.swaps) continue;
        an.rank = 1;
        an.swap_rep = g;
        break;
    }
    an.full = quadric_closure(gens, cap);

    const auto& els = an.full.elems();
    for (size_t i = 0; i < els.size(); ++i)
        if (!els[i].swaps) an.kernel_indices.push_back((int)i);
    an.kernel = subgroup_table(an.full.table, an.kernel_indices);

    std::vector<MoebiusMap> f1, f2;
    std::unordered_set<MoebiusMap, MoebiusHash> seen1, seen2;
    for (int i : an.kernel_indices) {
        if (seen1.insert(els[i].m).second) f1.push_back(els[i].m);
        if (seen2.insert(els[i].n).second) f2.push_back(els[i].n);
    }
    an.proj1 = moebius_closure(f1, cap);
    an.proj2 = moebius_closure(f2, cap);

    PairGroup pg;
    pg.a = &an.proj1.table;
    pg.b = &an.proj2.table;
    pg.closed_by_construction = true;
    for (int i : an.kernel_indices)
        pg.elems.emplace_back(an.proj1.index_of(els[i].m), an.proj2.index_of(els[i].n));
    an.goursat = goursat_decompose(pg);

    an.h1_class = klein_classify(an.proj1);
    an.h2_class = klein_classify(an.proj2);
    return an;
}

FixedLocus common_fixed_points(const QuadricGroup& g) {
    const auto& els = g.elems();
    if (els.size() <= 1)
        throw invalid_input("fixed locus of the trivial group is the whole surface");
    uint32_t N = els[0].conductor();

    std::vector<MoebiusMap> xmaps, ymaps;
    std::optional<QuadricAut> sw;
    for (const auto& e : els) {
        if (e.swaps) {
            if (!sw) sw = e;
            continue;
        }
        if (!e.m.is_identity()) xmaps.push_back(e.m);
        if (!e.n.is_identity()) ymaps.push_back(e.n);
    }

    auto fixes_all = [](const std::vector<MoebiusMap>& maps, const ProjPoint& p) {
        for (const auto& h : maps)
            if (h.apply(p) != p) return false;
        return true;
    };
    // seed candidates from the first factor map with in-field fixed points,
    // then cut down by membership checks, which never need a square root
    auto seed = [&fixes_all](const std::vector<MoebiusMap>& maps, std::exception_ptr& blocked)
        -> std::optional<std::vector<ProjPoint>> {
        for (const auto& h : maps) {
            std::vector<ProjPoint> pts;
            try {
                pts = fixed_points(h);
            } catch (const needs_extension&) {
                if (!blocked) blocked = std::current_exception();
                continue;
            }
            std::vector<ProjPoint> kept;
            for (const auto& p : pts)
                if (fixes_all(maps, p)) kept.push_back(p);
            return kept;
        }
        return std::nullopt;
    };

    std::exception_ptr bx = nullptr, by = nullptr;
    auto cx = seed(xmaps, bx);
    auto cy = seed(ymaps, by);

    const std::vector<ProjPoint> canon = {
        ProjPoint::zero(N), ProjPoint::infinity(N),
        ProjPoint::make(CycNum::one(N), CycNum::one(N))};

    FixedLocus out;
    if (!sw) {
        if (cx && cy) {
            for (const auto& px : *cx)
                for (const auto& py : *cy) out.points.push_back({px, py});
            return out;
        }
        if (cx && cx->empty()) return out;
        if (cy && cy->empty()) return out;
        if (bx) std::rethrow_exception(bx);
        if (by) std::rethrow_exception(by);
        if (cx) {
            out.complete = false;  // lines {px} x P1
            for (const auto& px : *cx)
                for (const auto& c : canon) out.points.push_back({px, c});
            return out;
        }
        if (cy) {
            out.complete = false;
            for (const auto& py : *cy)
                for (const auto& c : canon) out.points.push_back({c, py});
            return out;
        }
        throw internal_error("nontrivial ruling-preserving group without factor constraints");
    }

    // a point fixed by (M, N, swap) has x fixed by MN and y = Nx; together
    // with the kernel constraints this pins down the whole locus
    const MoebiusMap& M = sw->m;
    const MoebiusMap& Nm = sw->n;
    MoebiusMap MN = M.compose(Nm);

    auto emit = [&](const ProjPoint& px) {
        if (!fixes_all(xmaps, px)) return;
        if (MN.apply(px) != px) return;
        ProjPoint py = Nm.apply(px);
        if (!fixes_all(ymaps, py)) return;
        out.points.push_back({px, py});
    };

    if (cx) {
        for (const auto& px : *cx) emit(px);
        return out;
    }
    if (cy) {
        for (const auto& py : *cy) {
            ProjPoint px = M.apply(py);
            if (Nm.apply(px) != py) continue;
            if (!fixes_all(xmaps, px)) continue;
            out.points.push_back({px, py});
        }
        return out;
    }
    if (!MN.is_identity()) {
        std::vector<ProjPoint> pts;
        try {
            pts = fixed_points(MN);
        } catch (const needs_extension&) {
            if (bx) std::rethrow_exception(bx);
            if (by) std::rethrow_exception(by);
            throw;
        }
        for (const auto& px : pts) emit(px);
        return out;
    }
    if (bx) std::rethrow_exception(bx);
    if (by) std::rethrow_exception(by);
    out.complete = false;  // the graph y = Nx
    for (const auto& c : canon) out.points.push_back({c, Nm.apply(c)});
    return out;
}

std::vector<QuadricPoint> orbit_on_quadric(const QuadricGroup& g, const QuadricPoint& p) {
    std::vector<QuadricPoint> out;
    std::unordered_set<QuadricPoint, QuadricPointHash> seen;
    for (const auto& e : g.elems()) {
        QuadricPoint q = e.act(p);
        if (seen.insert(q).second) out.push_back(std::move(q));
    }
    return out;
}

MoebiusMap a5_outer_twist(const MoebiusGroup& a5, const MoebiusMap& g) {
    const GroupTable& t = a5.table;
    if (t.size() != 60) throw invalid_input("outer twist needs a group of order 60");
    int gi = a5.index_of(g);
    if (gi < 0) throw invalid_input("outer twist argument lies outside the group");

    std::vector<std::vector<int>> v4s;
    for (auto& s : all_subgroups(t))
        if (s.size() == 4) v4s.push_back(s);
    if (v4s.size() != 5) throw internal_error("expected five Klein four-subgroups");
    std::map<std::vector<int>, int> which;
    for (int j = 0; j < 5; ++j) which[v4s[j]] = j;

    auto perm_of = [&](int a) {
        Perm p(5);
        for (int j = 0; j < 5; ++j) p[j] = (uint8_t)which.at(t.conjugate_set(v4s[j], a));
        return p;
    };
    Perm tr = {1, 0, 2, 3, 4};
    Perm target = perm_mul(perm_mul(tr, perm_of(gi)), tr);
    for (int h = 0; h < 60; ++h)
        if (perm_of(h) == target) return a5.elems()[h];
    throw internal_error("outer twist image not found");
}

namespace {

struct RowNeeds {
    bool cd = false;  // matrices C or D, so 4 | conductor
    bool ef = false;  // matrices E or F, so 5 | conductor
    bool dn = false;  // R_n, so n | conductor
};

RowNeeds row_needs(const std::string& name) {
    if (name == "DnxS4") return {true, false, true};
    if (name == "DnxA5") return {false, true, true};
    if (name == "S4xA5") return {true, true, false};
    if (name == "DnwrC2") return {false, false, true};
    if (name == "S4wrC2") return {true, false, false};
    if (name == "A5wrC2") return {false, true, false};
    if (name == "A4xC2" || name == "A4_S4_twist" || name == "C2^4:C6_a" ||
        name == "C2^4:C6_b" || name == "C2^2:S4" || name == "A4wrC2_a" ||
        name == "A4wrC2_b" || name == "S4xC2" || name == "C2^4:D6" ||
        name == "A4^2:C2^2" || name == "A4^2:C4")
        return {true, false, false};
    if (name == "A5xC2" || name == "S5_twist") return {false, true, false};
    throw invalid_input("unknown table row: " + name);
}

}  // namespace

std::vector<std::string> quadric_table_row_names() {
    return {"DnxS4",  "DnxA5",  "S4xA5",     "DnwrC2",    "S4wrC2",   "A5wrC2",
            "A4xC2",  "A4_S4_twist", "C2^4:C6_a", "C2^4:C6_b", "C2^2:S4",
            "A4wrC2_a", "A4wrC2_b", "S4xC2",  "C2^4:D6",   "A4^2:C2^2",
            "A4^2:C4", "A5xC2",  "S5_twist"};
}

std::vector<QuadricAut> quadric_table_row(const std::string& name, long n) {
    RowNeeds needs = row_needs(name);
    if (needs.dn && n < 1)
        throw invalid_input("row " + name + " needs a dihedral parameter n >= 1");

    long N = 1;
    if (needs.cd) N = std::lcm(N, 4L);
    if (needs.ef) N = std::lcm(N, 5L);
    if (needs.dn) N = std::lcm(N, n);
    uint32_t c = (uint32_t)N;

    MoebiusMap I = MoebiusMap::identity(c);
    auto id = [](MoebiusMap a, MoebiusMap b) { return QuadricAut::make(std::move(a), std::move(b), false); };
    auto sw = [](MoebiusMap a, MoebiusMap b) { return QuadricAut::make(std::move(a), std::move(b), true); };

    if (name == "DnxS4")
        return {id(std_R(c, n), I), id(std_B(c), I), id(I, std_A(c)),
                id(I, std_B(c)), id(I, std_C(c)), id(I, std_D(c))};
    if (name == "DnxA5")
        return {id(std_R(c, n), I), id(std_B(c), I), id(I, std_E(c)), id(I, std_F(c))};
    if (name == "S4xA5")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), I), id(std_D(c), I),
                id(I, std_E(c)), id(I, std_F(c))};
    if (name == "DnwrC2")
        return {id(std_R(c, n), I), id(std_B(c), I), sw(I, I)};
    if (name == "S4wrC2")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), I), id(std_D(c), I), sw(I, I)};
    if (name == "A5wrC2")
        return {id(std_E(c), I), id(std_F(c), I), sw(I, I)};

    if (name == "A4xC2")
        return {id(std_A(c), std_A(c)), id(std_B(c), std_B(c)), id(std_C(c), std_C(c)), sw(I, I)};
    if (name == "A4_S4_twist")
        return {id(std_A(c), std_A(c)), id(std_B(c), std_B(c)), id(std_C(c), std_C(c)),
                sw(std_D(c), std_D(c))};
    if (name == "C2^4:C6_a")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), std_C(c)), sw(I, I)};
    if (name == "C2^4:C6_b")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), std_C(c)), sw(I, std_C(c))};
    if (name == "C2^2:S4")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), std_C(c)), sw(std_D(c), std_D(c))};
    if (name == "A4wrC2_a")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), I), sw(I, I)};
    if (name == "A4wrC2_b")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), I), sw(std_D(c), std_D(c))};

    if (name == "S4xC2")
        return {id(std_A(c), std_A(c)), id(std_B(c), std_B(c)), id(std_C(c), std_C(c)),
                id(std_D(c), std_D(c)), sw(I, I)};
    if (name == "C2^4:D6")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), std_C(c)),
                id(std_D(c), std_D(c)), sw(I, I)};
    if (name == "A4^2:C2^2")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), I),
                id(std_D(c), std_D(c)), sw(I, I)};
    if (name == "A4^2:C4")
        return {id(std_A(c), I), id(std_B(c), I), id(std_C(c), I),
                id(std_D(c), std_D(c)), sw(I, std_D(c))};

    if (name == "A5xC2")
        return {id(std_E(c), std_E(c)), id(std_F(c), std_F(c)), sw(I, I)};
    if (name == "S5_twist") {
        MoebiusGroup a5 = moebius_closure({std_E(c), std_F(c)});
        return {id(std_E(c), a5_outer_twist(a5, std_E(c))), sw(I, I)};
    }
    throw invalid_input("unknown table row: " + name);
}

RowCheck verify_table_row(const std::string& name, long n, size_t cap) {
    QuadricGroup g = quadric_closure(quadric_table_row(name, n), cap);
    RowCheck rc;
    rc.order = (long)g.elems().size();
    rc.family = recognize_family(g.table);
    return rc;
}

}  // namespace cremona

#include "cremona/decider.hpp"

#include "cremona/errors.hpp"

namespace cremona {

std::string surface_kind_name(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::P2: return "P2";
        case SurfaceKind::Quadric: return "Quadric";
        case SurfaceKind::Hirzebruch: return "Hirzebruch";
        case SurfaceKind::DP5: return "DP5";
        case SurfaceKind::DP6: return "DP6";
        case SurfaceKind::ConicBundle: return "ConicBundle";
        case SurfaceKind::DelPezzoLow: return "DelPezzoLow";
    }
    throw internal_error("unhandled surface kind");
}

SurfaceDescriptor SurfaceDescriptor::p2() { return {SurfaceKind::P2, 0, 9}; }
SurfaceDescriptor SurfaceDescriptor::quadric() { return {SurfaceKind::Quadric, 0, 8}; }

SurfaceDescriptor SurfaceDescriptor::hirzebruch(long n) {
    if (n < 1) throw invalid_input("Hirzebruch index must be at least 1; F0 is the quadric");
    return {SurfaceKind::Hirzebruch, n, 8};
}

SurfaceDescriptor SurfaceDescriptor::dp5() { return {SurfaceKind::DP5, 0, 5}; }
SurfaceDescriptor SurfaceDescriptor::dp6() { return {SurfaceKind::DP6, 0, 6}; }

SurfaceDescriptor SurfaceDescriptor::conic_bundle(long k2) {
    if (k2 > 8) throw invalid_input("a conic bundle has K^2 = 8 - (number of singular fibres) <= 8");
    return {SurfaceKind::ConicBundle, 0, k2};
}

SurfaceDescriptor SurfaceDescriptor::del_pezzo_low(long k2) {
    if (k2 < 1 || k2 > 4)
        throw invalid_input("the low-degree del Pezzo kinds cover K^2 in 1..4");
    return {SurfaceKind::DelPezzoLow, 0, k2};
}

std::string SurfaceDescriptor::str() const {
    switch (kind) {
        case SurfaceKind::Hirzebruch: return "F" + std::to_string(n);
        case SurfaceKind::ConicBundle:
            return "ConicBundle(K^2=" + std::to_string(k2) + ")";
        case SurfaceKind::DelPezzoLow:
            return "DelPezzo(K^2=" + std::to_string(k2) + ")";
        default: return surface_kind_name(kind);
    }
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Linearizable: return "Linearizable";
        case Verdict::NotLinearizable: return "NotLinearizable";
        case Verdict::InvalidInput: return "InvalidInput";
    }
    throw internal_error("unhandled verdict");
}

namespace {

struct RuleEntry {
    const char* key;
    const char* citation;
};

const RuleEntry kRules[] = {
    {"p2-linear",
     "The group acts by projective linear transformations of the plane, so the "
     "identity map is a linearization."},
    {"dp-low-rigid",
     "A del Pezzo surface of degree at most 3 carrying a minimal action of a finite "
     "group is birationally rigid for that group: every equivariant birational map "
     "to a Mori fibre space lands on an isomorphic surface, never on the plane."},
    {"dp4-obstruction",
     "Every equivariant birational map out of a quartic del Pezzo surface with a "
     "minimal action factors through elementary transformations of conic bundles "
     "on cubic surfaces and ends on another quartic del Pezzo surface, never on "
     "the plane."},
    {"conic-bundle-obstruction",
     "A minimal conic bundle with K^2 equal to 1, 2 or 4 admits no equivariant "
     "birational map to the plane."},
    {"conic-bundle-superrigid",
     "A conic bundle with eight or more singular fibres, that is with K^2 at most "
     "0, is birationally superrigid for the acting group: every equivariant "
     "birational map to a Mori fibre space is an isomorphism."},
    {"conic-bundle-not-minimal",
     "A conic bundle with K^2 between 1 and 8 is minimal for the acting group only "
     "when K^2 is 1, 2, 4 or 8, so this fibration is not a Mori fibre space."},
    {"conic-bundle-not-mori",
     "A rational surface with K^2 = 7 is neither a del Pezzo surface nor a conic "
     "bundle for any group action, so it is not a Mori fibre space."},
    {"conic-bundle-is-hirzebruch",
     "A conic bundle with K^2 = 8 has no singular fibres and is a Hirzebruch "
     "surface; decide it as one, with its index supplied."},
    {"hirzebruch-descent",
     "A finite group acting on the Hirzebruch surface F_n with n >= 1 is "
     "linearizable exactly when n is odd, or its image on the base is cyclic, or "
     "that image is dihedral of order twice an odd number; in each of these cases "
     "elementary transformations centred on base orbits reach F_1, whose unique "
     "(-1)-curve contracts to the plane."},
    {"hirzebruch-even-parity",
     "When n is even and the base image is neither cyclic nor dihedral of "
     "twice-odd order, every orbit on the base has even length; an elementary "
     "transformation centred on an orbit of length l takes F_n to F_(n+l) or "
     "F_(n-l), so the index stays even and F_1 is never reached."},
    {"quadric-fixed-point",
     "A group preserving both rulings of the quadric with both factor images "
     "cyclic is conjugate into the diagonal torus and fixes the point "
     "([1:0],[1:0]); blowing up a fixed point gives a degree 7 del Pezzo surface "
     "on which the transforms of the two fibres through the point contract "
     "equivariantly to the plane."},
    {"quadric-odd-dihedral-descent",
     "If one factor image is cyclic and the other is dihedral of order twice an "
     "odd n, the cyclic factor fixes a point of its line and the fibre over it is "
     "a section of the other ruling carrying an orbit of length n; the elementary "
     "transformation centred on that orbit lands on F_n with n odd, which "
     "descends to the plane."},
    {"quadric-euclid",
     "A dihedral group preserving both rulings with both factor images dihedral "
     "of twice-odd orders acts, after conjugation, through diagonal coordinates "
     "(w^a, w^b) together with the simultaneous inversion of both; interchanges "
     "of the rulings and elementary transformations realize the Euclidean "
     "algorithm on the exponent pair, reducing the action to one factor, which "
     "descends to the plane."},
    {"quadric-even-parity",
     "If a factor image is dihedral of order divisible by 4, tetrahedral, "
     "octahedral or icosahedral, every orbit of the group on the quadric has even "
     "length, so elementary transformations reach only Hirzebruch surfaces of "
     "even index and the plane is never reached."},
    {"quadric-not-dihedral",
     "A linearizable group would end its chain of links by contracting the unique "
     "(-1)-curve of F_1 to a fixed point of the plane and so act faithfully on "
     "the tangent plane there; a fibred product of two twice-odd dihedral groups "
     "that is not itself dihedral is generalized dihedral over a non-cyclic "
     "abelian group and has no faithful two-dimensional linear representation."},
    {"quadric-swap-cyclic",
     "When an element exchanges the rulings and the ruling-preserving kernel has "
     "cyclic factor image H, the kernel fixes exactly the four points paired from "
     "the two fixed points of H on its line; the exchanging element permutes "
     "these four fixing at least one of them, and blowing up a fixed point gives "
     "a degree 7 del Pezzo surface whose two other exceptional curves contract "
     "equivariantly to the plane."},
    {"quadric-swap-exceptional",
     "When the ruling-exchanging group has tetrahedral, octahedral or icosahedral "
     "kernel factor image, every orbit on the quadric has even length at least 4, "
     "so the only available links are birational involutions and links centred at "
     "length 4 orbits, all returning an isomorphic surface: the quadric is "
     "birationally rigid for the group."},
    {"quadric-swap-dihedral",
     "When the ruling-exchanging group has dihedral kernel factor image, the only "
     "links leading to a non-isomorphic surface are centred at orbits of length "
     "2, 3 or 5; they land on a degree 6 conic bundle whose fibrations keep no "
     "fixed point, on the sextic del Pezzo surface with an order 12 action, or on "
     "the quintic del Pezzo surface with the order 20 Frobenius action, and none "
     "of those is linearizable."},
    {"dp6-fixed-point",
     "A minimal action on the sextic del Pezzo surface meeting the torus "
     "trivially, with hexagon image the rotation group or the subgroup generated "
     "by the square rotation and a reflection, fixes the point "
     "([1:1:1],[1:1:1]); the link centred there lands on the quadric, where "
     "the image group fixes a point and the stereographic projection from it "
     "linearizes."},
    {"dp6-obstruction",
     "Among the minimal actions on the sextic del Pezzo surface only the standard "
     "order 6 cyclic group and the standard order 6 symmetric group linearize: a "
     "group meeting the torus nontrivially fixes no point and no chain of links "
     "can create one, while the full order 12 hexagon symmetry is the classical "
     "example of a non-linearizable action."},
    {"dp6-not-minimal",
     "The action on the sextic del Pezzo surface is not minimal: its hexagon "
     "image leaves a set of pairwise disjoint (-1)-curves invariant, so they "
     "contract equivariantly and the surface is not a Mori fibre space for this "
     "group."},
    {"dp5-five-points",
     "The cyclic group of order 5 and the dihedral group of order 10 act linearly "
     "on the plane with an orbit of five points in general position lying on a "
     "smooth invariant conic; blowing up the orbit and contracting the strict "
     "transform of the conic maps the plane equivariantly onto the quintic del "
     "Pezzo surface."},
    {"dp5-obstruction",
     "Of the minimal groups on the quintic del Pezzo surface, the alternating and "
     "symmetric groups of degree 5 are birationally superrigid there, and the "
     "order 20 Frobenius group has no faithful action on the plane; only the "
     "order 5 and order 10 subgroups linearize."},
    {"dp5-not-minimal",
     "Only the subgroups of order 5, 10, 20, 60 or 120 of the degree 5 symmetric "
     "group act minimally on the quintic del Pezzo surface; any other action "
     "leaves a contractible orbit of disjoint (-1)-curves invariant, so the "
     "surface is not a Mori fibre space for this group."},
};

Decision make_decision(Verdict v, const std::string& rule, GroupSummary g) {
    Decision d;
    d.verdict = v;
    d.rule = rule;
    d.citation = rule_citation(rule);
    d.group = std::move(g);
    return d;
}

bool family_cyclic_like(const FamilyTag& t) {
    using K = FamilyTag::K;
    return t.kind == K::Trivial || t.kind == K::Cyclic ||
           (t.kind == K::Dihedral && t.n == 1);
}

bool family_odd_dihedral(const FamilyTag& t) {
    return t.kind == FamilyTag::K::Dihedral && t.n >= 3 && t.n % 2 == 1;
}

bool family_even_obstruction(const FamilyTag& t) {
    using K = FamilyTag::K;
    if (t.kind == K::A4 || t.kind == K::S4 || t.kind == K::A5) return true;
    return t.kind == K::Dihedral && t.n >= 2 && t.n % 2 == 0;
}

bool moebius_diagonal(const MoebiusMap& g) {
    return g.m[0][1].is_zero() && g.m[1][0].is_zero();
}

bool moebius_antidiagonal(const MoebiusMap& g) {
    return g.m[0][0].is_zero() && g.m[1][1].is_zero();
}

// exponent of the multiplier of a canonical diagonal map, rescaled from the
// working conductor to the modulus M
long diagonal_exponent(const MoebiusMap& g, long M) {
    auto k = g.m[1][1].as_root_power();
    if (!k) throw internal_error("diagonal map with non-root multiplier in a finite group");
    long N = (long)g.conductor();
    return (long)(((*k) * M / N) % M);
}

std::vector<LinkStep> descent_to_plane(long n, const std::vector<long>& spectrum) {
    BezoutPlan plan = bezout_plan(n, spectrum);
    if (!plan.reachable)
        throw internal_error("descent claimed by the criterion is blocked: gcd " +
                             std::to_string(plan.obstruction));
    std::vector<LinkStep> steps = std::move(plan.steps);
    steps.push_back(LinkStep::contract());
    return steps;
}

// fixed point of the full group, when the working field sees one
std::string fixed_point_note(const QuadricGroup& g, const std::string& fallback) {
    try {
        FixedLocus fl = common_fixed_points(g);
        if (!fl.points.empty())
            return "centred at the fixed point " + fl.points.front().str();
    } catch (const needs_extension&) {
    }
    return fallback;
}

// exponents (a, b) with the rotation part generated by (w_M^a x, w_M^b y)
struct DiagonalForm {
    long a = 0, b = 0, M = 0;
};

std::optional<DiagonalForm> standard_diagonal_form(const QuadricGroup& g) {
    std::vector<int> diag;
    for (int i = 0; i < (int)g.elems().size(); ++i) {
        const QuadricAut& q = g.elems()[i];
        if (q.swaps) return std::nullopt;
        if (moebius_diagonal(q.m) && moebius_diagonal(q.n)) diag.push_back(i);
        else if (!(moebius_antidiagonal(q.m) && moebius_antidiagonal(q.n)))
            return std::nullopt;
    }
    uint32_t N = g.elems().front().conductor();
    if (g.index_of(QuadricAut::make(std_B(N), std_B(N), false)) < 0) return std::nullopt;
    if (2 * diag.size() != g.elems().size()) return std::nullopt;
    long M = (long)diag.size();
    for (int i : diag) {
        if (g.table.order_of(i) != M) continue;
        DiagonalForm f;
        f.M = M;
        f.a = diagonal_exponent(g.elems()[i].m, M);
        f.b = diagonal_exponent(g.elems()[i].n, M);
        return f;
    }
    return std::nullopt;
}

Decision decide_quadric_rank2(const RulingAnalysis& ra) {
    GroupSummary gs{(long)ra.full.elems().size(), recognize_family(ra.full.table)};
    const FamilyTag& h1 = ra.h1_class;
    const FamilyTag& h2 = ra.h2_class;

    if (family_even_obstruction(h1) || family_even_obstruction(h2))
        return make_decision(Verdict::NotLinearizable, "quadric-even-parity", gs);

    if (family_cyclic_like(h1) && family_cyclic_like(h2)) {
        Decision d = make_decision(Verdict::Linearizable, "quadric-fixed-point", gs);
        d.witness.push_back(LinkStep::blow_up_fixed_point(fixed_point_note(
            ra.full, "centred at a point fixed by the whole group")));
        d.witness.push_back(LinkStep::stereographic(
            "on the degree 7 surface the transforms of the two fibres through the "
            "point contract to a pair of plane points"));
        return d;
    }

    bool d1 = family_odd_dihedral(h1), d2 = family_odd_dihedral(h2);
    if ((family_cyclic_like(h1) && d2) || (family_cyclic_like(h2) && d1)) {
        long n = d1 ? h1.n : h2.n;
        Decision d = make_decision(Verdict::Linearizable, "quadric-odd-dihedral-descent", gs);
        LinkStep first = LinkStep::elementary_sigma(0, n);
        first.note = "centred at the orbit of length " + std::to_string(n) +
                     " on an invariant fibre, a section of this ruling";
        d.witness.push_back(std::move(first));
        for (LinkStep& s : descent_to_plane(n, base_spectrum(FamilyTag::dihedral(n))))
            d.witness.push_back(std::move(s));
        return d;
    }

    if (d1 && d2) {
        DihedralWitness dw = is_dihedral(ra.full.table);
        if (!dw.is_dihedral)
            return make_decision(Verdict::NotLinearizable, "quadric-not-dihedral", gs);
        Decision d = make_decision(Verdict::Linearizable, "quadric-euclid", gs);
        if (auto form = standard_diagonal_form(ra.full)) {
            EuclidWitness ew = euclid_witness(form->a, form->b, form->M);
            d.witness = ew.steps;
            d.euclid = std::move(ew);
        } else {
            d.witness_note = "requires standard form";
        }
        return d;
    }
    throw internal_error("uncovered factor image combination on the quadric");
}

Decision decide_quadric_rank1(const RulingAnalysis& ra) {
    GroupSummary gs{(long)ra.full.elems().size(), recognize_family(ra.full.table)};
    const FamilyTag& h = ra.h1_class;
    using K = FamilyTag::K;

    if (h.kind == K::A4 || h.kind == K::S4 || h.kind == K::A5)
        return make_decision(Verdict::NotLinearizable, "quadric-swap-exceptional", gs);
    if (h.kind == K::Dihedral && h.n >= 2)
        return make_decision(Verdict::NotLinearizable, "quadric-swap-dihedral", gs);
    if (!family_cyclic_like(h))
        throw internal_error("kernel factor image is not a Klein class");

    Decision d = make_decision(Verdict::Linearizable, "quadric-swap-cyclic", gs);
    d.witness.push_back(LinkStep::blow_up_fixed_point(fixed_point_note(
        ra.full,
        "centred at a fixed point among the four points paired from the fixed "
        "points of the kernel factor")));
    d.witness.push_back(LinkStep::stereographic(
        "on the degree 7 surface the transforms of the two fibres through the "
        "point contract to a pair of plane points"));
    return d;
}

}  // namespace

const std::vector<std::string>& rule_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> v;
        for (const RuleEntry& r : kRules) v.push_back(r.key);
        return v;
    }();
    return keys;
}

std::string rule_citation(const std::string& key) {
    for (const RuleEntry& r : kRules)
        if (key == r.key) return r.citation;
    throw invalid_input("unknown rule key: " + key);
}

Decision decide_p2() {
    Decision d = make_decision(Verdict::Linearizable, "p2-linear", {});
    d.witness.push_back(LinkStep::conjugate(MonomialMap::identity(1),
                                            "the action is already linear"));
    return d;
}

Decision decide_del_pezzo_low(long k2) {
    SurfaceDescriptor::del_pezzo_low(k2);
    return make_decision(Verdict::NotLinearizable,
                         k2 == 4 ? "dp4-obstruction" : "dp-low-rigid", {});
}

Decision decide_conic_bundle(long k2) {
    SurfaceDescriptor::conic_bundle(k2);
    if (k2 <= 0) return make_decision(Verdict::NotLinearizable, "conic-bundle-superrigid", {});
    if (k2 == 1 || k2 == 2 || k2 == 4)
        return make_decision(Verdict::NotLinearizable, "conic-bundle-obstruction", {});
    if (k2 == 7) return make_decision(Verdict::InvalidInput, "conic-bundle-not-mori", {});
    if (k2 == 8) return make_decision(Verdict::InvalidInput, "conic-bundle-is-hirzebruch", {});
    return make_decision(Verdict::InvalidInput, "conic-bundle-not-minimal", {});
}

Decision decide_hirzebruch(long n, const std::vector<MoebiusMap>& base_gens, size_t cap) {
    SurfaceDescriptor::hirzebruch(n);
    if (base_gens.empty()) throw invalid_input("no generators for the base action");
    MoebiusGroup base = moebius_closure(base_gens, cap);
    KleinClass ghat = klein_classify(base);
    GroupSummary gs{(long)base.elems().size(), ghat};

    bool odd_dihedral = ghat.kind == FamilyTag::K::Dihedral && ghat.n % 2 == 1;
    if (n % 2 == 0 && !family_cyclic_like(ghat) && !odd_dihedral)
        return make_decision(Verdict::NotLinearizable, "hirzebruch-even-parity", gs);

    Decision d = make_decision(Verdict::Linearizable, "hirzebruch-descent", gs);
    d.witness = descent_to_plane(n, base_spectrum(ghat));
    return d;
}

Decision decide_quadric(const std::vector<QuadricAut>& gens, size_t cap) {
    if (gens.empty()) throw invalid_input("no generators for the quadric action");
    RulingAnalysis ra = analyze_rulings(gens, cap);
    return ra.rank == 2 ? decide_quadric_rank2(ra) : decide_quadric_rank1(ra);
}

Decision decide_dp6(const std::vector<DP6Aut>& gens, size_t cap) {
    if (gens.empty()) throw invalid_input("no generators for the sextic surface action");
    DP6Analysis an = dp6_analyze(gens, cap);
    GroupSummary gs{(long)an.full.elems().size(), recognize_family(an.full.table)};
    if (!an.minimal) return make_decision(Verdict::InvalidInput, "dp6-not-minimal", gs);
    if (!an.fixes_point || an.hex_label == "<r,s>")
        return make_decision(Verdict::NotLinearizable, "dp6-obstruction", gs);

    Decision d = make_decision(Verdict::Linearizable, "dp6-fixed-point", gs);
    d.witness.push_back(LinkStep::blow_up_fixed_point(
        "centred at the fixed point ([1:1:1],[1:1:1]); the link lands on the quadric"));
    d.witness.push_back(LinkStep::stereographic(
        "the image group on the quadric fixes a point; the projection from it linearizes"));
    return d;
}

Decision decide_dp5(const std::vector<Perm>& gens, size_t) {
    if (gens.empty()) throw invalid_input("no generators for the quintic surface action");
    DP5Analysis an = dp5_analyze(dp5_group(gens));
    GroupSummary gs{an.order, an.family};
    if (!an.minimal) return make_decision(Verdict::InvalidInput, "dp5-not-minimal", gs);
    if (an.order > 10) return make_decision(Verdict::NotLinearizable, "dp5-obstruction", gs);

    Decision d = make_decision(Verdict::Linearizable, "dp5-five-points", gs);
    d.witness_note =
        "plane-side construction: the orbit of [1:1:1] under [x:y:z] -> "
        "[x:w5*y:w5^4*z] and [x:y:z] -> [x:z:y] is five points in general "
        "position on a smooth invariant conic; blow them up and contract the "
        "strict transform of the conic";
    return d;
}

Decision decide(const SurfaceDescriptor& s, const GeneratorInput& gens, size_t cap) {
    auto expect_none = [&] {
        if (!std::holds_alternative<std::monostate>(gens))
            throw invalid_input("the kind " + surface_kind_name(s.kind) +
                                " takes no generator list");
    };
    switch (s.kind) {
        case SurfaceKind::P2:
            expect_none();
            return decide_p2();
        case SurfaceKind::DelPezzoLow:
            expect_none();
            return decide_del_pezzo_low(s.k2);
        case SurfaceKind::ConicBundle:
            expect_none();
            return decide_conic_bundle(s.k2);
        case SurfaceKind::Hirzebruch:
            if (auto* g = std::get_if<std::vector<MoebiusMap>>(&gens))
                return decide_hirzebruch(s.n, *g, cap);
            throw invalid_input("Hirzebruch input takes Moebius generators for the base");
        case SurfaceKind::Quadric:
            if (auto* g = std::get_if<std::vector<QuadricAut>>(&gens))
                return decide_quadric(*g, cap);
            throw invalid_input("Quadric input takes (M, N, swap) generators");
        case SurfaceKind::DP6:
            if (auto* g = std::get_if<std::vector<DP6Aut>>(&gens))
                return decide_dp6(*g, cap);
            throw invalid_input("DP6 input takes torus-and-hexagon generators");
        case SurfaceKind::DP5:
            if (auto* g = std::get_if<std::vector<Perm>>(&gens))
                return decide_dp5(*g, cap);
            throw invalid_input("DP5 input takes permutations of five letters");
    }
    throw internal_error("unhandled surface kind");
}

std::vector<std::string> render_witness(const Decision& d) {
    if (d.verdict != Verdict::Linearizable)
        throw invalid_input("no witness: the verdict is " + verdict_name(d.verdict));
    if (d.witness.empty() && d.witness_note.empty())
        throw invalid_input("no witness attached to the decision");
    std::vector<std::string> lines;
    for (size_t i = 0; i < d.witness.size(); ++i)
        lines.push_back("step " + std::to_string(i + 1) + ": " + d.witness[i].str());
    if (lines.empty()) lines.push_back(d.witness_note);
    return lines;
}

}  // namespace cremona

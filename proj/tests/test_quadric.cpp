#include <doctest.h>

#include <random>

#include "cremona/quadric.hpp"

using namespace cremona;

TEST_CASE("automorphism algebra") {
    const uint32_t N = 4;
    MoebiusMap I = MoebiusMap::identity(N);
    auto A = std_A(N), B = std_B(N), C = std_C(N), D = std_D(N);

    QuadricAut s = QuadricAut::make(I, I, true);
    CHECK(s.compose(s).is_identity());
    QuadricAut dds = QuadricAut::make(D, D, true);
    CHECK(dds.compose(dds).is_identity());

    // (B,B,swap) on ([1:2],[1:3]) -> ([1:1/3],[1:1/2])
    QuadricAut bbs = QuadricAut::make(B, B, true);
    QuadricPoint p{ProjPoint::make(CycNum::one(N), CycNum::rational(N, 2, 1)),
                   ProjPoint::make(CycNum::one(N), CycNum::rational(N, 3, 1))};
    QuadricPoint q = bbs.act(p);
    CHECK(q.x == ProjPoint::make(CycNum::one(N), CycNum::rational(N, 1, 3)));
    CHECK(q.y == ProjPoint::make(CycNum::one(N), CycNum::rational(N, 1, 2)));

    std::mt19937 rng(7);
    std::vector<QuadricAut> pool = {QuadricAut::make(A, I, false), QuadricAut::make(B, I, false),
                                    QuadricAut::make(C, I, false), QuadricAut::make(I, D, false),
                                    QuadricAut::make(D, C, true),  QuadricAut::make(I, I, true)};
    auto rand_aut = [&] {
        QuadricAut g = QuadricAut::identity(N);
        for (int i = 0; i < 4; ++i) g = g.compose(pool[rng() % pool.size()]);
        return g;
    };
    auto rand_pt = [&] {
        auto r = [&] { return CycNum::rational(N, (long)(rng() % 7) - 3, 1 + (long)(rng() % 4)); };
        CycNum x0 = r(), x1 = r(), y0 = r(), y1 = r();
        if (x0.is_zero() && x1.is_zero()) x0 = CycNum::one(N);
        if (y0.is_zero() && y1.is_zero()) y1 = CycNum::one(N);
        return QuadricPoint{ProjPoint::make(x0, x1), ProjPoint::make(y0, y1)};
    };
    for (int i = 0; i < 100; ++i) {
        QuadricAut a = rand_aut(), b = rand_aut();
        QuadricPoint pt = rand_pt();
        CHECK(a.compose(b).act(pt) == a.act(b.act(pt)));
        CHECK(a.compose(a.inverse()).is_identity());
        QuadricAut m = rand_aut();
        if (!m.swaps) {
            QuadricAut conj = s.compose(m).compose(s);
            CHECK(conj.m == m.n);
            CHECK(conj.n == m.m);
            CHECK_FALSE(conj.swaps);
        }
    }
}

TEST_CASE("ruling analysis") {
    SUBCASE("rank 2 fibre product D3 x_C2 D5") {
        uint32_t c = 60;
        auto gens = std::vector<QuadricAut>{QuadricAut::make(std_R(c, 3), std_R(c, 5), false),
                                            QuadricAut::make(std_B(c), std_B(c), false)};
        RulingAnalysis an = analyze_rulings(gens);
        CHECK(an.rank == 2);
        CHECK(an.full.elems().size() == 30);
        CHECK_FALSE(an.swap_rep.has_value());
        CHECK(an.h1_class == FamilyTag::dihedral(3));
        CHECK(an.h2_class == FamilyTag::dihedral(5));
        CHECK(an.goursat.q.size() == 2);
        CHECK(an.kernel.table.size() == 30);
    }
    SUBCASE("rank 1: diagonal C2 extended by the swap") {
        uint32_t c = 2;
        auto gens = std::vector<QuadricAut>{
            QuadricAut::make(std_R(c, 2), std_R(c, 2), false),
            QuadricAut::make(MoebiusMap::identity(c), MoebiusMap::identity(c), true)};
        RulingAnalysis an = analyze_rulings(gens);
        CHECK(an.rank == 1);
        CHECK(an.full.elems().size() == 4);
        CHECK(an.kernel.table.size() == 2);
        REQUIRE(an.swap_rep.has_value());
        CHECK(an.h1_class == FamilyTag::cyclic(2));
        CHECK(an.h2_class == FamilyTag::cyclic(2));
    }
    SUBCASE("rank 1 with A4 factor classes") {
        auto gens = quadric_table_row("C2^2:S4");
        RulingAnalysis an = analyze_rulings(gens);
        CHECK(an.rank == 1);
        CHECK(an.full.elems().size() == 96);
        CHECK(an.h1_class == FamilyTag::named(FamilyTag::K::A4));
        CHECK(an.h2_class == an.h1_class);
        CHECK(an.proj1.elems().size() == an.proj2.elems().size());
    }
}

TEST_CASE("common fixed loci") {
    SUBCASE("diagonal C2 with swap fixes two diagonal points") {
        uint32_t c = 2;
        auto g = quadric_closure(
            {QuadricAut::make(std_R(c, 2), std_R(c, 2), false),
             QuadricAut::make(MoebiusMap::identity(c), MoebiusMap::identity(c), true)});
        FixedLocus fl = common_fixed_points(g);
        CHECK(fl.complete);
        CHECK(fl.points.size() == 2);
        for (const auto& p : fl.points) CHECK(p.x == p.y);
    }
    SUBCASE("C15 torus fixes the four torus-fixed points") {
        uint32_t c = 15;
        auto g = quadric_closure({QuadricAut::make(std_R(c, 3), std_R(c, 5), false)});
        CHECK(g.elems().size() == 15);
        FixedLocus fl = common_fixed_points(g);
        CHECK(fl.complete);
        CHECK(fl.points.size() == 4);
    }
    SUBCASE("diagonal S4 fixes nothing") {
        uint32_t c = 24;
        auto s4 = std::vector<QuadricAut>{
            QuadricAut::make(std_A(c), std_A(c), false), QuadricAut::make(std_B(c), std_B(c), false),
            QuadricAut::make(std_C(c), std_C(c), false), QuadricAut::make(std_D(c), std_D(c), false)};
        FixedLocus fl = common_fixed_points(quadric_closure(s4));
        CHECK(fl.complete);
        CHECK(fl.points.empty());
    }
    SUBCASE("the lone swap fixes a curve: flagged incomplete") {
        uint32_t c = 4;
        auto g = quadric_closure(
            {QuadricAut::make(MoebiusMap::identity(c), MoebiusMap::identity(c), true)});
        FixedLocus fl = common_fixed_points(g);
        CHECK_FALSE(fl.complete);
        CHECK(fl.points.size() == 3);
        for (const auto& p : fl.points) CHECK(p.x == p.y);
    }
    SUBCASE("a factor acting freely on one side fixes lines") {
        uint32_t c = 4;
        auto g = quadric_closure({QuadricAut::make(MoebiusMap::identity(c), std_R(c, 2), false)});
        FixedLocus fl = common_fixed_points(g);
        CHECK_FALSE(fl.complete);
        CHECK(fl.points.size() == 6);
    }
}

TEST_CASE("orbits on the surface") {
    uint32_t c = 4;
    auto a4 = quadric_closure({QuadricAut::make(std_A(c), std_A(c), false),
                               QuadricAut::make(std_B(c), std_B(c), false),
                               QuadricAut::make(std_C(c), std_C(c), false)});
    CHECK(a4.elems().size() == 12);
    QuadricPoint p{ProjPoint::make(CycNum::one(c), CycNum::rational(c, 5, 1)),
                   ProjPoint::make(CycNum::one(c), CycNum::rational(c, 7, 1))};
    CHECK(orbit_on_quadric(a4, p).size() == 12);

    uint32_t c2 = 60;
    auto g = quadric_closure({QuadricAut::make(std_R(c2, 3), MoebiusMap::identity(c2), false),
                              QuadricAut::make(std_B(c2), MoebiusMap::identity(c2), false),
                              QuadricAut::make(MoebiusMap::identity(c2), std_R(c2, 5), false),
                              QuadricAut::make(MoebiusMap::identity(c2), std_B(c2), false)});
    CHECK(g.elems().size() == 60);
    QuadricPoint q{ProjPoint::make(CycNum::one(c2), CycNum::one(c2)), ProjPoint::zero(c2)};
    CHECK(orbit_on_quadric(g, q).size() == 6);
}

TEST_CASE("outer twist by the normalizer") {
    uint32_t c = 5;
    MoebiusGroup a5 = moebius_closure({std_E(c), std_F(c)});
    CHECK(a5.elems().size() == 60);
    MoebiusMap xe = a5_outer_twist(a5, std_E(c));
    CHECK(xe.order() == 5);
    CHECK(moebius_closure({std_E(c), xe}).elems().size() == 60);
    CHECK(a5_outer_twist(a5, xe) == std_E(c));
}

TEST_CASE("classification table rows close to their listed orders") {
    struct RowCase {
        const char* name;
        long n;
        long order;
        const char* family;
    };
    // the 7200 and 1440 rows run in the acceptance suite
    std::vector<RowCase> cases = {
        {"DnxS4", 3, 144, "DirectProduct(Dihedral(3),S4)"},
        {"DnxA5", 4, 480, "DirectProduct(A5,Dihedral(4))"},
        {"DnwrC2", 3, 72, "Wreath(Dihedral(3))"},
        {"S4wrC2", 0, 1152, "Wreath(S4)"},
        {"A4xC2", 0, 24, "DirectProduct(A4,Cyclic(2))"},
        {"A4_S4_twist", 0, 24, "S4"},
        {"C2^4:C6_a", 0, 96, ""},
        {"C2^4:C6_b", 0, 96, ""},
        {"C2^2:S4", 0, 96, ""},
        {"A4wrC2_a", 0, 288, "Wreath(A4)"},
        {"A4wrC2_b", 0, 288, ""},
        {"S4xC2", 0, 48, "DirectProduct(Cyclic(2),S4)"},
        {"C2^4:D6", 0, 192, ""},
        {"A4^2:C2^2", 0, 576, ""},
        {"A4^2:C4", 0, 576, ""},
        {"A5xC2", 0, 120, "DirectProduct(A5,Cyclic(2))"},
        {"S5_twist", 0, 120, "S5"},
    };
    for (const auto& rc : cases) {
        CAPTURE(rc.name);
        RowCheck res = verify_table_row(rc.name, rc.n);
        CHECK(res.order == rc.order);
        if (rc.family[0]) CHECK(res.family.str() == rc.family);
    }
    CHECK_THROWS_AS(quadric_table_row("NoSuchRow"), invalid_input);
    CHECK(quadric_table_row_names().size() == 19);
}

#include <doctest.h>

#include <random>

#include "cremona/decider.hpp"
#include "cremona/errors.hpp"

using namespace cremona;

namespace {

bool chain_ok(const Decision& d, const std::vector<long>& spec, long start) {
    return validate_chain({}, d.witness, {}, spec, start).ok;
}

QuadricAut qid(MoebiusMap a, MoebiusMap b) {
    return QuadricAut::make(std::move(a), std::move(b), false);
}
QuadricAut qsw(MoebiusMap a, MoebiusMap b) {
    return QuadricAut::make(std::move(a), std::move(b), true);
}

}  // namespace

TEST_CASE("closed-form surface kinds") {
    Decision d = decide_p2();
    CHECK(d.verdict == Verdict::Linearizable);
    CHECK(d.rule == "p2-linear");
    REQUIRE(d.witness.size() == 1);
    CHECK(d.witness[0].kind == LinkKind::Conjugate);
    CHECK(render_witness(d).size() == 1);
    CHECK(chain_ok(d, {}, 0));
    CHECK_FALSE(d.citation.empty());

    for (long k2 : {1, 2, 3}) {
        CHECK(decide_del_pezzo_low(k2).rule == "dp-low-rigid");
        CHECK(decide_del_pezzo_low(k2).verdict == Verdict::NotLinearizable);
    }
    CHECK(decide_del_pezzo_low(4).rule == "dp4-obstruction");
    for (long k2 : {0, -3}) {
        CHECK(decide_conic_bundle(k2).rule == "conic-bundle-superrigid");
        CHECK(decide_conic_bundle(k2).verdict == Verdict::NotLinearizable);
    }
    for (long k2 : {1, 2, 4}) CHECK(decide_conic_bundle(k2).rule == "conic-bundle-obstruction");
    for (long k2 : {3, 5, 6}) {
        CHECK(decide_conic_bundle(k2).verdict == Verdict::InvalidInput);
        CHECK(decide_conic_bundle(k2).rule == "conic-bundle-not-minimal");
    }
    CHECK(decide_conic_bundle(7).rule == "conic-bundle-not-mori");
    CHECK(decide_conic_bundle(8).rule == "conic-bundle-is-hirzebruch");
    CHECK_THROWS_AS(decide_conic_bundle(9), invalid_input);
    CHECK_THROWS_AS(decide_del_pezzo_low(5), invalid_input);
    CHECK_THROWS_AS(SurfaceDescriptor::hirzebruch(0), invalid_input);
}

TEST_CASE("every rule carries a citation") {
    CHECK(rule_keys().size() == 24);
    for (const std::string& k : rule_keys()) CHECK_FALSE(rule_citation(k).empty());
    CHECK_THROWS_AS(rule_citation("nope"), invalid_input);
}

TEST_CASE("hirzebruch decisions") {
    SUBCASE("even index with even dihedral base") {
        std::vector<MoebiusMap> g{std_R(4, 4), std_B(4)};
        Decision d = decide_hirzebruch(2, g);
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "hirzebruch-even-parity");
        CHECK(d.group.order == 8);
        CHECK(d.group.family == FamilyTag::dihedral(4));
        CHECK_THROWS_AS(render_witness(d), invalid_input);
    }
    SUBCASE("odd index with S4 base descends in three steps") {
        std::vector<MoebiusMap> g{std_A(24), std_B(24), std_C(24), std_D(24)};
        Decision d = decide_hirzebruch(3, g);
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "hirzebruch-descent");
        CHECK(d.group.family == FamilyTag::named(FamilyTag::K::S4));
        CHECK(d.witness.size() == 3);
        CHECK(d.witness.back().kind == LinkKind::Contract);
        CHECK(chain_ok(d, base_spectrum(FamilyTag::named(FamilyTag::K::S4)), 3));
    }
    SUBCASE("even index with cyclic base") {
        Decision d = decide_hirzebruch(2, {std_R(4, 4)});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.group.family == FamilyTag::cyclic(4));
        CHECK(d.witness.size() == 2);
        CHECK(chain_ok(d, base_spectrum(FamilyTag::cyclic(4)), 2));
    }
    SUBCASE("even index with odd dihedral base") {
        std::vector<MoebiusMap> g{std_R(3, 3), std_B(3)};
        Decision d = decide_hirzebruch(4, g);
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.witness.size() == 2);
        CHECK(chain_ok(d, base_spectrum(FamilyTag::dihedral(3)), 4));
    }
    SUBCASE("even index with A5 base") {
        std::vector<MoebiusMap> g{std_E(5), std_F(5)};
        Decision d = decide_hirzebruch(2, g);
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "hirzebruch-even-parity");
        CHECK(d.group.family == FamilyTag::named(FamilyTag::K::A5));
    }
}

TEST_CASE("quadric rank-2 decisions") {
    SUBCASE("D15 in standard position gets a Euclid witness") {
        uint32_t N = 15;
        std::vector<QuadricAut> g{qid(std_R(N, 3), std_R(N, 5)), qid(std_B(N), std_B(N))};
        Decision d = decide_quadric(g);
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "quadric-euclid");
        CHECK(d.group.order == 30);
        CHECK(d.group.family == FamilyTag::dihedral(15));
        REQUIRE(d.euclid.has_value());
        CHECK_FALSE(d.witness.empty());
        CHECK(d.witness_note.empty());
        CHECK(d.euclid->big_n == 15);
        ChainCheck c = validate_chain(d.euclid->initial_gens, d.witness, d.euclid->final_gens,
                                      d.euclid->spectrum, 0);
        CHECK(c.ok);
        bool has_phi = false;
        for (const std::string& line : render_witness(d))
            if (line.find("(x, y) -> (x, x^-1*y)") != std::string::npos) has_phi = true;
        CHECK(has_phi);
    }
    SUBCASE("bicyclic groups fix a point") {
        uint32_t N = 12;
        Decision d = decide_quadric({qid(std_R(N, 4), std_R(N, 6))});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "quadric-fixed-point");
        REQUIRE(d.witness.size() == 2);
        CHECK(d.witness[0].kind == LinkKind::BlowUpFixedPoint);
        CHECK(d.witness[0].note.find("fixed point") != std::string::npos);
        CHECK(chain_ok(d, {}, 0));
    }
    SUBCASE("cyclic times odd dihedral descends through F5") {
        uint32_t N = 15;
        std::vector<QuadricAut> g{qid(std_R(N, 3), std_R(N, 5)),
                                  qid(MoebiusMap::identity(N), std_B(N))};
        Decision d = decide_quadric(g);
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "quadric-odd-dihedral-descent");
        CHECK(d.group.order == 30);
        CHECK(d.witness.front().kind == LinkKind::ElementaryOnSigma);
        CHECK(d.witness.front().length == 5);
        CHECK(d.witness.front().to_n == 5);
        CHECK(d.witness.back().kind == LinkKind::Contract);
        CHECK(chain_ok(d, base_spectrum(FamilyTag::dihedral(5)), 0));
    }
    SUBCASE("full product D3 x D3 is not dihedral") {
        uint32_t N = 3;
        MoebiusMap I = MoebiusMap::identity(N);
        std::vector<QuadricAut> g{qid(std_R(N, 3), I), qid(I, std_R(N, 3)), qid(std_B(N), I),
                                  qid(I, std_B(N))};
        Decision d = decide_quadric(g);
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "quadric-not-dihedral");
        CHECK(d.group.order == 36);
    }
    SUBCASE("diagonal D4 hits the even parity wall") {
        uint32_t N = 4;
        std::vector<QuadricAut> g{qid(std_R(N, 4), std_R(N, 4)), qid(std_B(N), std_B(N))};
        CHECK(decide_quadric(g).verdict == Verdict::NotLinearizable);
        CHECK(decide_quadric(g).rule == "quadric-even-parity");
    }
    SUBCASE("A4 on one factor only") {
        uint32_t N = 12;
        MoebiusMap I = MoebiusMap::identity(N);
        std::vector<QuadricAut> g{qid(std_A(N), I), qid(std_B(N), I), qid(std_C(N), I)};
        Decision d = decide_quadric(g);
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "quadric-even-parity");
    }
    SUBCASE("conjugated out of standard position the witness is deferred") {
        uint32_t N = 15;
        MoebiusMap c =
            MoebiusMap::make(CycNum::one(N), CycNum::one(N), CycNum::zero(N), CycNum::one(N));
        auto conj = [&](const MoebiusMap& m) { return c.compose(m).compose(c.inverse()); };
        std::vector<QuadricAut> g{qid(conj(std_R(N, 3)), std_R(N, 5)),
                                  qid(conj(std_B(N)), std_B(N))};
        Decision d = decide_quadric(g);
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "quadric-euclid");
        CHECK(d.witness.empty());
        CHECK(d.witness_note == "requires standard form");
        CHECK_FALSE(d.euclid.has_value());
        CHECK(render_witness(d) == std::vector<std::string>{d.witness_note});
    }
}

TEST_CASE("quadric rank-1 decisions") {
    SUBCASE("C2 diagonal kernel plus pure swap") {
        uint32_t N = 4;
        MoebiusMap I = MoebiusMap::identity(N);
        std::vector<QuadricAut> g{qid(std_R(N, 2), std_R(N, 2)), qsw(I, I)};
        Decision d = decide_quadric(g);
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "quadric-swap-cyclic");
        CHECK(d.group.order == 4);
        REQUIRE(d.witness.size() == 2);
        CHECK(d.witness[0].note.find("fixed point") != std::string::npos);
        CHECK(chain_ok(d, {}, 0));
    }
    SUBCASE("cyclic kernel C6 with swap") {
        uint32_t N = 6;
        MoebiusMap I = MoebiusMap::identity(N);
        Decision d = decide_quadric({qid(std_R(N, 6), std_R(N, 6)), qsw(I, I)});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "quadric-swap-cyclic");
    }
    SUBCASE("dihedral kernel D3 with swap") {
        uint32_t N = 3;
        MoebiusMap I = MoebiusMap::identity(N);
        std::vector<QuadricAut> g{qid(std_R(N, 3), std_R(N, 3)), qid(std_B(N), std_B(N)),
                                  qsw(I, I)};
        Decision d = decide_quadric(g);
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "quadric-swap-dihedral");
    }
    SUBCASE("a pure swap has trivial kernel") {
        uint32_t N = 1;
        MoebiusMap I = MoebiusMap::identity(N);
        Decision d = decide_quadric({qsw(I, I)});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "quadric-swap-cyclic");
        CHECK(d.group.order == 2);
    }
    SUBCASE("exceptional kernels from the classification tables") {
        for (const char* row : {"A4_S4_twist", "S4wrC2", "A4wrC2_a", "A4wrC2_b", "S5_twist"}) {
            CAPTURE(row);
            Decision d = decide_quadric(quadric_table_row(row));
            CHECK(d.verdict == Verdict::NotLinearizable);
            CHECK(d.rule == "quadric-swap-exceptional");
        }
        for (const char* row : {"C2^2:S4", "C2^4:C6_a", "C2^4:D6", "A4^2:C2^2", "A4^2:C4"}) {
            CAPTURE(row);
            Decision d = decide_quadric(quadric_table_row(row));
            CHECK(d.verdict == Verdict::NotLinearizable);
            CHECK((d.rule == "quadric-swap-dihedral" || d.rule == "quadric-swap-exceptional"));
        }
    }
    SUBCASE("product rows are rank 2 with an exceptional factor") {
        Decision d = decide_quadric(quadric_table_row("DnxS4", 3));
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "quadric-even-parity");
    }
}

TEST_CASE("dp6 decisions") {
    SUBCASE("full hexagon group has no fixed point") {
        Decision d = decide_dp6({dp6_rho(1), dp6_sigma(1)});
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "dp6-obstruction");
        CHECK(d.group.order == 12);
        CHECK(d.group.family == FamilyTag::dihedral(6));
    }
    SUBCASE("rotation subgroup fixes the base point") {
        Decision d = decide_dp6({dp6_rho(1)});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "dp6-fixed-point");
        CHECK(d.group.order == 6);
        CHECK(d.group.family == FamilyTag::cyclic(6));
        REQUIRE(d.witness.size() == 2);
        CHECK(d.witness[0].note.find("[1:1:1]") != std::string::npos);
        CHECK(chain_ok(d, {}, 0));
    }
    SUBCASE("<r2, s> fixes the base point as D3") {
        DP6Aut r2 = dp6_rho(1).compose(dp6_rho(1));
        Decision d = decide_dp6({r2, dp6_sigma(1)});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "dp6-fixed-point");
        CHECK(d.group.order == 6);
        CHECK(d.group.family == FamilyTag::dihedral(3));
    }
    SUBCASE("<r2, rs> is not minimal") {
        DP6Aut r2 = dp6_rho(1).compose(dp6_rho(1));
        DP6Aut rs = dp6_rho(1).compose(dp6_sigma(1));
        Decision d = decide_dp6({r2, rs});
        CHECK(d.verdict == Verdict::InvalidInput);
        CHECK(d.rule == "dp6-not-minimal");
    }
    SUBCASE("minimal with nontrivial torus part has no fixed point") {
        uint32_t N = 3;
        CycNum w = CycNum::root(N, 1);
        DP6Aut t = DP6Aut::make_torus(w, w.pow(2));
        Decision d = decide_dp6({dp6_rho(N), t});
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "dp6-obstruction");
        CHECK(d.group.order == 18);
    }
    SUBCASE("a pure torus element is not minimal") {
        uint32_t N = 3;
        CycNum w = CycNum::root(N, 1);
        Decision d = decide_dp6({DP6Aut::make_torus(w, w.pow(2))});
        CHECK(d.verdict == Verdict::InvalidInput);
        CHECK(d.rule == "dp6-not-minimal");
    }
}

TEST_CASE("dp5 decisions") {
    SUBCASE("F5 of order 20") {
        Decision d = decide_dp5({{1, 2, 3, 4, 0}, {0, 2, 4, 1, 3}});
        CHECK(d.verdict == Verdict::NotLinearizable);
        CHECK(d.rule == "dp5-obstruction");
        CHECK(d.group.order == 20);
        CHECK(d.group.family == FamilyTag::named(FamilyTag::K::F5));
    }
    SUBCASE("C5 moves five points to general position") {
        Decision d = decide_dp5({{1, 2, 3, 4, 0}});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "dp5-five-points");
        CHECK(d.witness.empty());
        CHECK_FALSE(d.witness_note.empty());
        CHECK(render_witness(d).size() == 1);
    }
    SUBCASE("D5") {
        Decision d = decide_dp5({{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}});
        CHECK(d.verdict == Verdict::Linearizable);
        CHECK(d.rule == "dp5-five-points");
        CHECK(d.group.order == 10);
    }
    SUBCASE("A5 and S5 are minimal but obstructed") {
        Decision a5 = decide_dp5({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}});
        CHECK(a5.verdict == Verdict::NotLinearizable);
        CHECK(a5.group.order == 60);
        Decision s5 = decide_dp5({{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}});
        CHECK(s5.verdict == Verdict::NotLinearizable);
        CHECK(s5.group.order == 120);
    }
    SUBCASE("a transposition alone is not minimal") {
        Decision d = decide_dp5({{1, 0, 2, 3, 4}});
        CHECK(d.verdict == Verdict::InvalidInput);
        CHECK(d.rule == "dp5-not-minimal");
    }
}

TEST_CASE("dispatch checks generator kinds against the surface") {
    std::vector<MoebiusMap> base{std_R(4, 4), std_B(4)};
    Decision d = decide(SurfaceDescriptor::hirzebruch(2), GeneratorInput{base});
    CHECK(d.rule == "hirzebruch-even-parity");
    CHECK_THROWS_AS(decide(SurfaceDescriptor::quadric(), GeneratorInput{base}), invalid_input);
    CHECK_THROWS_AS(decide(SurfaceDescriptor::p2(), GeneratorInput{base}), invalid_input);
    CHECK(decide(SurfaceDescriptor::p2(), GeneratorInput{}).rule == "p2-linear");
    CHECK(decide(SurfaceDescriptor::del_pezzo_low(3), GeneratorInput{}).verdict ==
          Verdict::NotLinearizable);
    CHECK(SurfaceDescriptor::hirzebruch(2).str() == "F2");
    CHECK(SurfaceDescriptor::del_pezzo_low(3).str() == "DelPezzo(K^2=3)");
}

TEST_CASE("verdicts are conjugation invariant") {
    std::mt19937 rng(0);
    SUBCASE("quadric D15") {
        uint32_t N = 15;
        std::vector<QuadricAut> gens{qid(std_R(N, 3), std_R(N, 5)), qid(std_B(N), std_B(N))};
        QuadricGroup G = quadric_closure(gens);
        for (int t = 0; t < 25; ++t) {
            const QuadricAut& c = G.elems()[rng() % G.elems().size()];
            std::vector<QuadricAut> moved;
            for (const QuadricAut& h : gens) moved.push_back(c.compose(h).compose(c.inverse()));
            if (t % 2) std::swap(moved[0], moved[1]);
            Decision d = decide_quadric(moved);
            CHECK(d.verdict == Verdict::Linearizable);
            CHECK(d.rule == "quadric-euclid");
        }
        for (int t = 0; t < 25; ++t) {
            QuadricAut c = qid(std_R(N, 15, (long)(rng() % 15)), std_R(N, 15, (long)(rng() % 15)));
            std::vector<QuadricAut> moved;
            for (const QuadricAut& h : gens) moved.push_back(c.compose(h).compose(c.inverse()));
            Decision d = decide_quadric(moved);
            CHECK(d.verdict == Verdict::Linearizable);
            CHECK(d.rule == "quadric-euclid");
        }
    }
    SUBCASE("dp6 hexagon group") {
        std::vector<DP6Aut> gens{dp6_rho(1), dp6_sigma(1)};
        DP6Group G = dp6_closure(gens);
        for (int t = 0; t < 25; ++t) {
            const DP6Aut& c = G.elems()[rng() % G.elems().size()];
            std::vector<DP6Aut> moved;
            for (const DP6Aut& h : gens) moved.push_back(c.compose(h).compose(c.inverse()));
            Decision d = decide_dp6(moved);
            CHECK(d.verdict == Verdict::NotLinearizable);
            CHECK(d.rule == "dp6-obstruction");
        }
    }
    SUBCASE("hirzebruch D4") {
        std::vector<MoebiusMap> gens{std_R(4, 4), std_B(4)};
        MoebiusGroup G = moebius_closure(gens);
        for (int t = 0; t < 25; ++t) {
            const MoebiusMap& c = G.elems()[rng() % G.elems().size()];
            std::vector<MoebiusMap> moved;
            for (const MoebiusMap& h : gens) moved.push_back(c.compose(h).compose(c.inverse()));
            Decision d = decide_hirzebruch(2, moved);
            CHECK(d.verdict == Verdict::NotLinearizable);
            CHECK(d.rule == "hirzebruch-even-parity");
        }
    }
}

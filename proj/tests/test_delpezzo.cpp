#include <doctest.h>

#include <random>

#include "cremona/delpezzo.hpp"
#include "cremona/errors.hpp"

using namespace cremona;

TEST_CASE("hexagon group algebra") {
    CHECK(hex_parse("").is_id());
    CHECK(hex_parse("id").is_id());
    CHECK(hex_parse("rrs") == HexEl::refl(2));
    CHECK(hex_parse("r r s").k == 2);
    CHECK(hex_parse("srr") == HexEl::refl(4));  // s r^2 = r^-2 s
    CHECK(HexEl::rot(1).order() == 6);
    CHECK(HexEl::rot(2).order() == 3);
    CHECK(HexEl::rot(3).order() == 2);
    CHECK(HexEl::rot(0).order() == 1);
    CHECK(HexEl::refl(3).order() == 2);
    CHECK(HexEl::rot(5).inverse() == HexEl::rot(1));
    CHECK(HexEl::refl(4).inverse() == HexEl::refl(4));
    CHECK_THROWS_AS(hex_parse("rxs"), invalid_input);
}

TEST_CASE("standard automorphisms and relations") {
    const uint32_t N = 12;
    DP6Aut rho = dp6_rho(N), sigma = dp6_sigma(N), iota = dp6_iota(N), theta = dp6_theta(N);
    DP6Aut id = DP6Aut::identity(N);

    DP6Aut p6 = id;
    for (int i = 0; i < 6; ++i) p6 = p6.compose(rho);
    CHECK(p6.is_identity());
    CHECK(sigma.compose(sigma).is_identity());
    CHECK(iota.compose(iota).is_identity());
    CHECK(sigma.compose(rho).compose(sigma) == rho.inverse());
    CHECK(rho.compose(rho).compose(rho) == iota);
    CHECK(theta == rho.compose(rho).compose(rho).compose(rho));
    CHECK(theta.compose(iota) == rho);

    DP6Point base = DP6Point::base(N);
    CHECK(rho.act(base) == base);
    CHECK(sigma.act(base) == base);

    auto c = [&](long k) { return CycNum::rational(N, k, 1); };
    DP6Point p = DP6Point::make({c(1), c(2), c(3)}, {c(6), c(3), c(2)});
    CHECK(iota.act(p) == DP6Point::make({c(6), c(3), c(2)}, {c(1), c(2), c(3)}));
    CHECK(theta.act(p) == DP6Point::make({c(2), c(3), c(1)}, {c(3), c(2), c(6)}));
    CHECK(sigma.act(p) == DP6Point::make({c(6), c(2), c(3)}, {c(1), c(3), c(2)}));

    CycNum w = CycNum::root(N, 1);
    DP6Aut t = DP6Aut::make_torus(w, w.inverse());
    DP6Point tb = t.act(base);
    CHECK(tb.x[1] == w);
    CHECK(tb.x[2] == w.inverse());
    CHECK(tb.y[1] == w.inverse());
    CHECK(tb.y[2] == w);

    CHECK_THROWS_WITH_AS(DP6Point::make({c(1), c(1), c(1)}, {c(1), c(1), c(2)}),
                         doctest::Contains("off the surface"), invalid_input);
    CHECK_THROWS_AS(dp6_rho(3).compose(dp6_rho(4)), invalid_input);

    DP6Point edge = DP6Point::make({c(1), c(0), c(0)}, {c(0), c(5), c(7)});
    DP6Point re = rho.act(edge);
    CHECK(re.x[0] * re.y[0] == re.x[1] * re.y[1]);
}

TEST_CASE("hexagon vertices are torus-fixed and rho-cyclic") {
    const uint32_t N = 12;
    auto c = [&](long k) { return CycNum::rational(N, k, 1); };
    std::vector<DP6Point> verts;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            std::array<CycNum, 3> vx = {c(0), c(0), c(0)}, vy = {c(0), c(0), c(0)};
            vx[i] = c(1);
            vy[j] = c(1);
            verts.push_back(DP6Point::make(vx, vy));
        }
    CHECK(verts.size() == 6);
    DP6Aut t2 = DP6Aut::make_torus(c(7), c(-3));
    for (const auto& v : verts) CHECK(t2.act(v) == v);
    DP6Aut rho = dp6_rho(N);
    DP6Point cur = verts[0];
    int steps = 0;
    do {
        cur = rho.act(cur);
        ++steps;
    } while (cur != verts[0] && steps < 10);
    CHECK(steps == 6);
}

TEST_CASE("compose agrees with act on random data") {
    const uint32_t N = 12;
    std::mt19937 rng(7);
    auto c = [&](long k) { return CycNum::rational(N, k, 1); };
    auto rand_aut = [&]() {
        auto ru = [&]() { return CycNum::root(N, (long)(rng() % N)); };
        HexEl h = (rng() % 2) ? HexEl::refl((int)(rng() % 6)) : HexEl::rot((int)(rng() % 6));
        return DP6Aut::make({CycNum::one(N), ru(), ru()}, h);
    };
    auto rand_point = [&]() {
        auto nz = [&]() {
            long a = (long)(rng() % 9) - 4;
            if (a == 0) a = 5;
            return CycNum::rational(N, a, 1 + (long)(rng() % 3));
        };
        CycNum x1 = nz(), x2 = nz();
        return DP6Point::make({c(1), x1, x2}, {x1 * x2, x2, x1});
    };
    for (int i = 0; i < 100; ++i) {
        DP6Aut a = rand_aut(), b = rand_aut();
        DP6Point q = rand_point();
        CHECK(a.compose(b).act(q) == a.act(b.act(q)));
        CHECK(a.compose(a.inverse()).is_identity());
        CHECK(a.inverse().act(a.act(q)) == q);
    }
}

TEST_CASE("hexagon-image analysis") {
    DP6Aut rho = dp6_rho(1), sigma = dp6_sigma(1);
    auto r2 = rho.compose(rho);

    auto an1 = dp6_analyze({rho});
    CHECK(an1.full.table.size() == 6);
    CHECK(an1.hex_label == "<r>");
    CHECK(an1.minimal);
    CHECK(an1.fixes_point);
    CHECK(an1.torus_part.table.size() == 1);

    auto an2 = dp6_analyze({rho, sigma});
    CHECK(an2.full.table.size() == 12);
    CHECK(an2.hex_label == "<r,s>");
    CHECK(an2.minimal);
    CHECK(an2.fixes_point);

    auto an3 = dp6_analyze({r2, rho.compose(sigma)});
    CHECK(an3.full.table.size() == 6);
    CHECK(an3.hex_label == "<r2,rs>");
    CHECK_FALSE(an3.minimal);

    auto an4 = dp6_analyze({r2, sigma});
    CHECK(an4.hex_label == "<r2,s>");
    CHECK(an4.minimal);
    CHECK(an4.fixes_point);

    const uint32_t N = 12;
    CycNum w3 = CycNum::root(N, N / 3);
    DP6Aut t3 = DP6Aut::make_torus(w3, w3 * w3);
    auto an5 = dp6_analyze({dp6_rho(N), t3});
    CHECK(an5.full.table.size() == 18);
    CHECK(an5.hex_label == "<r>");
    CHECK(an5.minimal);
    CHECK_FALSE(an5.fixes_point);
    CHECK(an5.torus_part.table.size() == 3);

    auto an6 = dp6_analyze({t3});
    CHECK(an6.hex_label == "1");
    CHECK_FALSE(an6.minimal);
    CHECK_FALSE(an6.fixes_point);
}

TEST_CASE("fixed-point dichotomy against brute force") {
    const uint32_t N = 12;
    auto c = [&](long k) { return CycNum::rational(N, k, 1); };
    DP6Aut rho = dp6_rho(N), sigma = dp6_sigma(N);
    auto r2 = rho.compose(rho);
    CycNum w3 = CycNum::root(N, N / 3);
    CycNum i4 = CycNum::root(N, N / 4);
    DP6Aut t3 = DP6Aut::make_torus(w3, w3 * w3);
    DP6Aut t4 = DP6Aut::make_torus(i4, i4.inverse());
    DP6Aut tm = DP6Aut::make_torus(c(-1), c(-1));

    std::vector<DP6Point> verts;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            std::array<CycNum, 3> vx = {c(0), c(0), c(0)}, vy = {c(0), c(0), c(0)};
            vx[i] = c(1);
            vy[j] = c(1);
            verts.push_back(DP6Point::make(vx, vy));
        }
    DP6Point base = DP6Point::base(N);

    std::vector<std::vector<DP6Aut>> samples = {
        {rho},          {rho, sigma},     {r2, sigma},      {rho, t3},     {rho, sigma, t3},
        {r2, sigma, t3}, {rho, t4},       {rho, sigma, tm}, {r2, sigma, tm}, {rho, t3, tm},
    };
    for (const auto& gens : samples) {
        auto an = dp6_analyze(gens);
        CHECK(an.minimal);
        // candidate locus: hexagon vertices plus the orbit of the base point
        std::vector<DP6Point> locus = verts;
        for (const auto& g : an.full.elems()) locus.push_back(g.act(base));
        bool found = false;
        for (const auto& q : locus) {
            bool all = true;
            for (const auto& g : an.full.elems())
                if (g.act(q) != q) {
                    all = false;
                    break;
                }
            if (all) {
                found = true;
                break;
            }
        }
        CHECK(found == an.fixes_point);
    }
}

TEST_CASE("degree 5 groups") {
    Perm c5 = {1, 2, 3, 4, 0};
    Perm flip = {0, 4, 3, 2, 1};
    Perm f4 = {0, 2, 4, 1, 3};
    Perm c3 = {1, 2, 0, 3, 4};
    Perm tr = {1, 0, 2, 3, 4};

    auto d1 = dp5_analyze(dp5_group({c5}));
    CHECK(d1.order == 5);
    CHECK(d1.minimal);
    CHECK(d1.family.str() == "Cyclic(5)");
    auto d2 = dp5_analyze(dp5_group({c5, flip}));
    CHECK(d2.order == 10);
    CHECK(d2.minimal);
    CHECK(d2.family.str() == "Dihedral(5)");
    auto d3 = dp5_analyze(dp5_group({c5, f4}));
    CHECK(d3.order == 20);
    CHECK(d3.minimal);
    CHECK(d3.family.str() == "F5");
    auto d4 = dp5_analyze(dp5_group({c5, c3}));
    CHECK(d4.order == 60);
    CHECK(d4.minimal);
    CHECK(d4.family.str() == "A5");
    auto d5 = dp5_analyze(dp5_group({c5, tr}));
    CHECK(d5.order == 120);
    CHECK(d5.minimal);
    CHECK(d5.family.str() == "S5");
    auto d6 = dp5_analyze(dp5_group({c3}));
    CHECK(d6.order == 3);
    CHECK_FALSE(d6.minimal);
    auto d7 = dp5_analyze(dp5_group({tr, Perm{0, 1, 3, 2, 4}}));
    CHECK(d7.order == 4);
    CHECK_FALSE(d7.minimal);
    CHECK_THROWS_AS(dp5_group({Perm{0, 1, 2, 3, 3}}), invalid_input);
}

TEST_CASE("five-point orbits in general position") {
    const uint32_t M = 5;
    Mat3 r = dp5_std_r(M), s = dp5_std_s(M);
    auto one3 = P2Triple{CycNum::one(M), CycNum::one(M), CycNum::one(M)};
    CHECK(dp5_orbit_general_position({r}, one3));
    CHECK(dp5_orbit_general_position({r, s}, one3));
    CHECK_FALSE(dp5_orbit_general_position({r}, {CycNum::one(M), CycNum::zero(M), CycNum::zero(M)}));
    CHECK_FALSE(dp5_orbit_general_position({s}, one3));
    CHECK_THROWS_AS(dp5_std_r(4), invalid_input);
}

#include <doctest.h>

#include <deque>
#include <numeric>
#include <random>

#include "cremona/errors.hpp"
#include "cremona/sarkisov.hpp"

using namespace cremona;

namespace {

// forward BFS over Hirzebruch indices bounded by 40; -1 when F1 is unreachable
int bfs_oracle(long start, const std::vector<long>& sp) {
    std::vector<int> dist(41, -1);
    if (start > 40) return -2;
    std::deque<long> q = {start};
    dist[start] = 0;
    while (!q.empty()) {
        long m = q.front();
        q.pop_front();
        for (long l : sp) {
            long up = m + l;
            if (up <= 40 && dist[up] < 0) {
                dist[up] = dist[m] + 1;
                q.push_back(up);
            }
            if (m >= 1) {
                long dn = std::labs(m - l);
                if (dn <= 40 && dist[dn] < 0) {
                    dist[dn] = dist[m] + 1;
                    q.push_back(dn);
                }
            }
        }
    }
    return dist[1];
}

}  // namespace

TEST_CASE("base spectra") {
    CHECK(klein_order(FamilyTag::dihedral(5)) == 10);
    CHECK(base_spectrum(FamilyTag::dihedral(3)) == (std::vector<long>{2, 3, 6}));
    CHECK(base_spectrum(FamilyTag::cyclic(5)) == (std::vector<long>{1, 5}));
    CHECK(base_spectrum(FamilyTag::named(FamilyTag::K::A5)) == (std::vector<long>{12, 20, 30, 60}));
    CHECK(base_spectrum(FamilyTag::trivial()) == (std::vector<long>{1}));
}

TEST_CASE("monomial map algebra") {
    const uint32_t N = 15;
    MonomialMap id = MonomialMap::identity(N), phi = MonomialMap::phi(N);
    MonomialMap sg = MonomialMap::swap_xy(N), bb = MonomialMap::bb(N);
    CycNum w = CycNum::root(N, 1);
    CHECK(phi.compose(phi.inverse()) == id);
    CHECK(phi.inverse().compose(phi) == id);
    MonomialMap g = MonomialMap::diag(w.pow(3), w.pow(5));
    CHECK(phi.conjugate(g) == MonomialMap::diag(w.pow(3), w.pow(2)));
    CHECK(phi.conjugate(bb) == bb);
    CHECK(sg.conjugate(g) == MonomialMap::diag(w.pow(5), w.pow(3)));
    CHECK(sg.conjugate(bb) == bb);
    CHECK(phi.str() == "(x, y) -> (x, x^-1*y)");
    CHECK(bb.str() == "(x, y) -> (x^-1, y^-1)");
    CHECK(MonomialMap::phi_pow(N, 2) == phi.compose(phi));
    CHECK_THROWS_AS(MonomialMap::make({{{1, 1}, {1, 1}}}, CycNum::one(N), CycNum::one(N)),
                    invalid_input);
    CHECK_THROWS_AS(phi.compose(MonomialMap::identity(7)), invalid_input);

    std::mt19937 rng(3);
    auto rand_map = [&]() {
        MonomialMap m = MonomialMap::diag(w.pow((long)(rng() % 15)), w.pow((long)(rng() % 15)));
        for (int i = 0; i < 3; ++i) {
            switch (rng() % 3) {
                case 0: m = m.compose(MonomialMap::phi_pow(N, (long)(rng() % 5) - 2)); break;
                case 1: m = m.compose(sg); break;
                case 2: m = m.compose(bb); break;
            }
        }
        return m;
    };
    for (int i = 0; i < 50; ++i) {
        MonomialMap a = rand_map(), b = rand_map(), c = rand_map();
        CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
        CHECK(std::labs(a.compose(b).det()) == 1);
        CHECK(a.compose(a.inverse()) == id);
    }
}

TEST_CASE("elementary transformations track the index") {
    HirzebruchState f2 = HirzebruchState::make(2, FamilyTag::dihedral(5));
    CHECK(elementary_transform(f2, 5, Side::Sigma).n == 7);
    CHECK(elementary_transform(f2, 5, Side::C).n == 3);
    HirzebruchState f4 = HirzebruchState::make(4, FamilyTag::dihedral(4));
    CHECK(elementary_transform(f4, 4, Side::C).n == 0);
    CHECK_THROWS_AS(elementary_transform(f2, 7, Side::Sigma), invalid_input);
    CHECK_THROWS_AS(elementary_transform(HirzebruchState::make(0, FamilyTag::dihedral(5)), 5, Side::C),
                    invalid_input);
}

TEST_CASE("bezout planning") {
    auto p1 = bezout_plan(4, {2, 5});
    CHECK(p1.reachable);
    REQUIRE(p1.steps.size() == 1);
    CHECK(p1.steps[0].kind == LinkKind::ElementaryOnC);
    CHECK(p1.steps[0].length == 5);
    CHECK(p1.steps[0].from_n == 4);
    CHECK(p1.steps[0].to_n == 1);

    auto p2 = bezout_plan(2, {2, 4, 6});
    CHECK_FALSE(p2.reachable);
    CHECK(p2.obstruction == 2);

    auto p3 = bezout_plan(6, {1});
    CHECK(p3.reachable);
    CHECK(p3.steps.size() == 5);
    for (const auto& s : p3.steps) {
        CHECK(s.kind == LinkKind::ElementaryOnC);
        CHECK(s.length == 1);
    }

    CHECK(bezout_plan(1, {7}).reachable);
    CHECK(bezout_plan(1, {7}).steps.empty());

    // shortest plans prefer the smaller intermediate index
    auto p4 = bezout_plan(3, {6, 8, 12, 24});
    CHECK(p4.reachable);
    REQUIRE(p4.steps.size() == 2);
    CHECK(p4.steps[0].to_n == 5);
    CHECK(p4.steps[0].length == 8);
    CHECK(p4.steps[1].length == 6);
    CHECK(p4.steps[1].to_n == 1);
}

TEST_CASE("planner agrees with the bounded BFS oracle") {
    std::vector<KleinClass> classes = {FamilyTag::cyclic(7),
                                       FamilyTag::dihedral(3),
                                       FamilyTag::named(FamilyTag::K::A4),
                                       FamilyTag::named(FamilyTag::K::S4),
                                       FamilyTag::named(FamilyTag::K::A5),
                                       FamilyTag::dihedral(4)};
    for (const auto& cls : classes) {
        auto sp = base_spectrum(cls);
        for (long n = 1; n <= 12; ++n) {
            CAPTURE(cls.str());
            CAPTURE(n);
            auto plan = bezout_plan(n, sp);
            int oracle = bfs_oracle(n, sp);
            CHECK(plan.reachable == (oracle >= 0));
            if (!plan.reachable) continue;
            CHECK((int)plan.steps.size() == oracle);
            HirzebruchState st = HirzebruchState::make(n, cls);
            for (const auto& s : plan.steps) {
                st = elementary_transform(st, s.length,
                                          s.kind == LinkKind::ElementaryOnSigma ? Side::Sigma
                                                                                : Side::C);
                CHECK(st.n == s.to_n);
            }
            CHECK(st.n == 1);
        }
    }
}

TEST_CASE("all-even spectra conserve parity") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long> sp = {2, 4, 6};
        long n = 3 + 2 * (long)(rng() % 5);
        HirzebruchState st = HirzebruchState::make(n, FamilyTag::dihedral(2));
        st.spectrum = sp;
        for (int k = 0; k < 8; ++k) {
            long l = sp[rng() % sp.size()];
            bool down = st.n >= 1 && (rng() % 2);
            st = elementary_transform(st, l, down ? Side::C : Side::Sigma);
            CHECK(st.n % 2 == n % 2);
        }
    }
}

TEST_CASE("euclid witness for (3, 5, 15)") {
    auto ew = euclid_witness(3, 5, 15);
    std::vector<std::pair<long, long>> want = {{3, 5}, {3, 2}, {2, 3}, {2, 1}, {1, 2}, {1, 0}};
    CHECK(ew.trace == want);
    CHECK(ew.final_exponents == std::make_pair(1L, 0L));
    CHECK(ew.big_n == 15);
    CHECK(ew.spectrum == (std::vector<long>{2, 15, 30}));
    size_t conj = 0, contracts = 0;
    for (const auto& s : ew.steps) {
        conj += s.kind == LinkKind::Conjugate;
        contracts += s.kind == LinkKind::Contract;
    }
    CHECK(conj == 5);
    CHECK(contracts == 1);
    CHECK(ew.steps.back().kind == LinkKind::Contract);
    CHECK(validate_chain(ew.initial_gens, ew.steps, ew.final_gens, ew.spectrum, 0).ok);
}

TEST_CASE("validation localizes corruption") {
    auto ew = euclid_witness(3, 5, 15);
    SUBCASE("wrong conjugating map fails the final comparison") {
        auto bad = ew;
        bad.steps[0].map = MonomialMap::phi_pow(15, 3);
        CHECK_FALSE(validate_chain(bad.initial_gens, bad.steps, bad.final_gens, bad.spectrum, 0).ok);
    }
    SUBCASE("wrong index arithmetic fails at the step") {
        auto bad = ew;
        for (size_t i = 0; i < bad.steps.size(); ++i)
            if (bad.steps[i].kind == LinkKind::ElementaryOnSigma) {
                bad.steps[i].to_n += 1;
                auto c = validate_chain(bad.initial_gens, bad.steps, bad.final_gens, bad.spectrum, 0);
                CHECK_FALSE(c.ok);
                CHECK(c.failing_step == (int)i);
                break;
            }
    }
    SUBCASE("missing map fails at the step") {
        auto bad = ew;
        bad.steps[1].map.reset();
        auto c = validate_chain(bad.initial_gens, bad.steps, bad.final_gens, bad.spectrum, 0);
        CHECK_FALSE(c.ok);
        CHECK(c.failing_step == 1);
    }
    SUBCASE("empty chain with identical generators passes") {
        CHECK(validate_chain(ew.initial_gens, {}, ew.initial_gens, ew.spectrum, 0).ok);
    }
}

TEST_CASE("euclid corner cases") {
    auto ew2 = euclid_witness(0, 1, 7);
    CHECK(ew2.final_exponents == std::make_pair(1L, 0L));
    for (const auto& s : ew2.steps)
        if (s.kind == LinkKind::Conjugate) CHECK(*s.map == MonomialMap::swap_xy(7));
    CHECK(validate_chain(ew2.initial_gens, ew2.steps, ew2.final_gens, ew2.spectrum, 0).ok);
    CHECK(ew2.final_gens[0] == MonomialMap::diag(CycNum::root(7, 1), CycNum::one(7)));

    auto ew3 = euclid_witness(2, 4, 8);
    CHECK(ew3.final_exponents == std::make_pair(2L, 0L));
    CHECK(validate_chain(ew3.initial_gens, ew3.steps, ew3.final_gens, ew3.spectrum, 0).ok);

    CHECK_THROWS_AS(euclid_witness(0, 0, 9), invalid_input);
}

TEST_CASE("100 random euclid witnesses validate") {
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
        long M = 3 + 2 * (long)(rng() % 30);
        long a = (long)(rng() % M), b = (long)(rng() % M);
        if (a == 0 && b == 0) a = 1 + (long)(rng() % (M - 1));
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(M);
        auto e = euclid_witness(a, b, M);
        CHECK(e.final_exponents.first == std::gcd(a, b));
        CHECK(e.final_exponents.second == 0);
        CHECK(validate_chain(e.initial_gens, e.steps, e.final_gens, e.spectrum, 0).ok);
        CHECK(e.steps.back().kind == LinkKind::Contract);
    }
}

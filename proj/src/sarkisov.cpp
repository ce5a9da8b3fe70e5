#include "cremona/sarkisov.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "cremona/errors.hpp"

namespace cremona {

long klein_order(const KleinClass& c) {
    switch (c.kind) {
        case FamilyTag::K::Trivial: return 1;
        case FamilyTag::K::Cyclic: return c.n;
        case FamilyTag::K::Dihedral: return 2 * c.n;
        case FamilyTag::K::A4: return 12;
        case FamilyTag::K::S4: return 24;
        case FamilyTag::K::A5: return 60;
        default: throw internal_error("not a Klein class: " + c.str());
    }
}

std::vector<long> base_spectrum(const KleinClass& c) {
    std::vector<long> out = special_orbit_spectrum(c);
    out.push_back(klein_order(c));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

HirzebruchState HirzebruchState::make(long n, KleinClass base_class) {
    if (n < 0) throw invalid_input("Hirzebruch index must be nonnegative");
    std::vector<long> sp = base_spectrum(base_class);
    return HirzebruchState{n, std::move(base_class), std::move(sp)};
}

std::string HirzebruchState::str() const {
    std::ostringstream os;
    os << "F" << n << " over " << base_class.str() << " base, lengths {";
    for (size_t i = 0; i < spectrum.size(); ++i) os << (i ? "," : "") << spectrum[i];
    os << "}";
    return os.str();
}

MonomialMap MonomialMap::make(std::array<std::array<long, 2>, 2> mat, CycNum c1, CycNum c2) {
    if (c1.conductor() != c2.conductor())
        throw invalid_input("monomial map coefficients over different conductors");
    if (c1.is_zero() || c2.is_zero()) throw invalid_input("monomial map coefficient is zero");
    long d = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0];
    if (d != 1 && d != -1) throw invalid_input("monomial exponent matrix must have det +-1");
    return MonomialMap{mat, std::move(c1), std::move(c2)};
}

MonomialMap MonomialMap::identity(uint32_t n) {
    return {{{{1, 0}, {0, 1}}}, CycNum::one(n), CycNum::one(n)};
}

MonomialMap MonomialMap::diag(const CycNum& c1, const CycNum& c2) {
    return make({{{1, 0}, {0, 1}}}, c1, c2);
}

MonomialMap MonomialMap::phi(uint32_t n) {
    return {{{{1, 0}, {-1, 1}}}, CycNum::one(n), CycNum::one(n)};
}

MonomialMap MonomialMap::phi_pow(uint32_t n, long q) {
    return {{{{1, 0}, {-q, 1}}}, CycNum::one(n), CycNum::one(n)};
}

MonomialMap MonomialMap::swap_xy(uint32_t n) {
    return {{{{0, 1}, {1, 0}}}, CycNum::one(n), CycNum::one(n)};
}

MonomialMap MonomialMap::bb(uint32_t n) {
    return {{{{-1, 0}, {0, -1}}}, CycNum::one(n), CycNum::one(n)};
}

bool MonomialMap::is_identity() const {
    return mat[0][0] == 1 && mat[0][1] == 0 && mat[1][0] == 0 && mat[1][1] == 1 && c1.is_one() &&
           c2.is_one();
}

namespace {

// the GL2(Z) part acting on a torus pair: b -> (b1^a00 b2^a01, b1^a10 b2^a11)
std::pair<CycNum, CycNum> exp_action(const std::array<std::array<long, 2>, 2>& a, const CycNum& b1,
                                     const CycNum& b2) {
    return {b1.pow(a[0][0]) * b2.pow(a[0][1]), b1.pow(a[1][0]) * b2.pow(a[1][1])};
}

}  // namespace

MonomialMap MonomialMap::compose(const MonomialMap& o) const {
    if (conductor() != o.conductor())
        throw invalid_input("composing monomial maps over different conductors");
    std::array<std::array<long, 2>, 2> m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = mat[i][0] * o.mat[0][j] + mat[i][1] * o.mat[1][j];
    auto [d1, d2] = exp_action(mat, o.c1, o.c2);
    return {m, c1 * d1, c2 * d2};
}

MonomialMap MonomialMap::inverse() const {
    long d = det();
    std::array<std::array<long, 2>, 2> inv = {
        {{d * mat[1][1], -d * mat[0][1]}, {-d * mat[1][0], d * mat[0][0]}}};
    auto [d1, d2] = exp_action(inv, c1.inverse(), c2.inverse());
    return {inv, std::move(d1), std::move(d2)};
}

MonomialMap MonomialMap::conjugate(const MonomialMap& g) const {
    return compose(g).compose(inverse());
}

bool MonomialMap::operator==(const MonomialMap& o) const {
    return mat == o.mat && c1 == o.c1 && c2 == o.c2;
}

namespace {

std::string monomial_str(const CycNum& c, long ex, long ey) {
    std::string out;
    std::string cs = c.str();
    bool unit = c.is_one();
    if (unit && ex == 0 && ey == 0) return "1";
    if (!unit) out = (cs.find_first_of("+- ") == std::string::npos) ? cs : "(" + cs + ")";
    auto var = [&](const char* v, long e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += v;
        if (e != 1) out += "^" + std::to_string(e);
    };
    var("x", ex);
    var("y", ey);
    return out;
}

}  // namespace

std::string MonomialMap::str() const {
    return "(x, y) -> (" + monomial_str(c1, mat[0][0], mat[0][1]) + ", " +
           monomial_str(c2, mat[1][0], mat[1][1]) + ")";
}

std::string link_kind_name(LinkKind k) {
    switch (k) {
        case LinkKind::ElementaryOnSigma: return "elementary-on-sigma";
        case LinkKind::ElementaryOnC: return "elementary-on-invariant-curve";
        case LinkKind::TypeIV: return "type-iv";
        case LinkKind::Contract: return "contract";
        case LinkKind::Conjugate: return "conjugate";
        case LinkKind::StereographicProjection: return "stereographic-projection";
        case LinkKind::BlowUpFixedPoint: return "blow-up-fixed-point";
    }
    throw internal_error("unknown link kind");
}

LinkStep LinkStep::elementary_sigma(long from_n, long ell) {
    return {LinkKind::ElementaryOnSigma, ell, from_n, from_n + ell, std::nullopt, ""};
}

LinkStep LinkStep::elementary_c(long from_n, long ell) {
    return {LinkKind::ElementaryOnC, ell, from_n, std::labs(from_n - ell), std::nullopt, ""};
}

LinkStep LinkStep::type_iv() { return {LinkKind::TypeIV, 0, 0, 0, std::nullopt, "exchange rulings"}; }

LinkStep LinkStep::contract() {
    return {LinkKind::Contract, 0, 1, 0, std::nullopt, "blow down the (-1)-curve to P2"};
}

LinkStep LinkStep::conjugate(MonomialMap f, std::string note) {
    return {LinkKind::Conjugate, 0, 0, 0, std::move(f), std::move(note)};
}

LinkStep LinkStep::stereographic(std::string note) {
    return {LinkKind::StereographicProjection, 0, 0, 0, std::nullopt, std::move(note)};
}

LinkStep LinkStep::blow_up_fixed_point(std::string note) {
    return {LinkKind::BlowUpFixedPoint, 0, 0, 0, std::nullopt, std::move(note)};
}

std::string LinkStep::str() const {
    std::ostringstream os;
    os << link_kind_name(kind);
    switch (kind) {
        case LinkKind::ElementaryOnSigma:
        case LinkKind::ElementaryOnC:
            os << " (l=" << length << "): F" << from_n << " -> F" << to_n;
            break;
        case LinkKind::Contract: os << ": F1 -> P2"; break;
        case LinkKind::Conjugate:
            if (map) os << ": " << map->str();
            break;
        default: break;
    }
    if (!note.empty()) os << " [" << note << "]";
    return os.str();
}

HirzebruchState elementary_transform(const HirzebruchState& s, long ell, Side side) {
    if (std::find(s.spectrum.begin(), s.spectrum.end(), ell) == s.spectrum.end())
        throw invalid_input("no orbit of length " + std::to_string(ell) + " on the base");
    if (side == Side::C && s.n < 1)
        throw invalid_input("no invariant curve of positive self-intersection on F0");
    long m = side == Side::Sigma ? s.n + ell : std::labs(s.n - ell);
    return HirzebruchState{m, s.base_class, s.spectrum};
}

BezoutPlan bezout_plan(long n, const std::vector<long>& spectrum) {
    if (n < 1) throw invalid_input("planning starts from F_n with n >= 1");
    if (spectrum.empty()) throw invalid_input("empty orbit length spectrum");
    long d = 0, max_ell = 0;
    for (long ell : spectrum) {
        if (ell < 1) throw invalid_input("orbit lengths must be positive");
        d = std::gcd(d, ell);
        max_ell = std::max(max_ell, ell);
    }
    if ((n - 1) % d != 0 && (n + 1) % d != 0) return {false, {}, d};

    BezoutPlan plan;
    plan.reachable = true;
    if (n == 1) return plan;

    long bound = std::max(n, 40L) + 4 * max_ell;
    std::vector<int> dist(bound + 1, -1);
    std::deque<long> queue = {1};
    dist[1] = 0;
    while (!queue.empty()) {
        long m = queue.front();
        queue.pop_front();
        for (long ell : spectrum) {
            long up = m + ell;
            if (up <= bound && dist[up] < 0) {
                dist[up] = dist[m] + 1;
                queue.push_back(up);
            }
            if (m >= 1) {
                long down = std::labs(m - ell);
                if (dist[down] < 0) {
                    dist[down] = dist[m] + 1;
                    queue.push_back(down);
                }
            }
        }
    }
    if (dist[n] < 0) throw internal_error("reachable state not found within the search bound");

    long cur = n;
    while (cur != 1) {
        long best_next = -1, best_ell = 0;
        Side best_side = Side::Sigma;
        auto offer = [&](long next, long ell, Side side) {
            if (next > bound || dist[next] != dist[cur] - 1) return;
            if (best_next < 0 || next < best_next || (next == best_next && ell < best_ell)) {
                best_next = next;
                best_ell = ell;
                best_side = side;
            }
        };
        for (long ell : spectrum) {
            offer(cur + ell, ell, Side::Sigma);
            if (cur >= 1) offer(std::labs(cur - ell), ell, Side::C);
        }
        if (best_next < 0) throw internal_error("no descending move in the planned chain");
        plan.steps.push_back(best_side == Side::Sigma ? LinkStep::elementary_sigma(cur, best_ell)
                                                      : LinkStep::elementary_c(cur, best_ell));
        cur = best_next;
    }
    return plan;
}

EuclidWitness euclid_witness(long a, long b, long M) {
    if (M < 1) throw invalid_input("conductor must be positive");
    a = ((a % M) + M) % M;
    b = ((b % M) + M) % M;
    if (a == 0 && b == 0)
        throw invalid_input("degenerate input: both rotation exponents vanish mod M");

    uint32_t N = (uint32_t)M;
    CycNum w = CycNum::root(N, 1);
    EuclidWitness out;
    out.initial_gens = {MonomialMap::diag(w.pow(a), w.pow(b)), MonomialMap::bb(N)};
    out.trace.push_back({a, b});

    auto push_swap = [&] {
        out.steps.push_back(LinkStep::conjugate(
            MonomialMap::swap_xy(N), "exchange the exponents (" + std::to_string(a) + "," +
                                         std::to_string(b) + ") -> (" + std::to_string(b) + "," +
                                         std::to_string(a) + ")"));
        std::swap(a, b);
        out.trace.push_back({a, b});
    };
    while (true) {
        if (b == 0) break;
        if (a == 0) {
            push_swap();
            break;
        }
        if (a > b) {
            push_swap();
            continue;
        }
        long q = b / a, r = b % a;
        out.steps.push_back(LinkStep::conjugate(
            MonomialMap::phi_pow(N, q), "divide: (" + std::to_string(a) + "," + std::to_string(b) +
                                            ") -> (" + std::to_string(a) + "," +
                                            std::to_string(r) + ")"));
        b = r;
        out.trace.push_back({a, b});
    }
    out.final_exponents = {a, 0};
    out.final_gens = {MonomialMap::diag(w.pow(a), CycNum::one(N)), MonomialMap::bb(N)};

    long base_order = M / std::gcd(M, a);
    out.big_n = base_order;
    out.spectrum = base_spectrum(FamilyTag::dihedral(base_order));

    // for odd M the descent always exists; otherwise stop after the reduction
    BezoutPlan down = bezout_plan(base_order, out.spectrum);
    if (down.reachable) {
        LinkStep first = LinkStep::elementary_sigma(0, base_order);
        first.note = "centred at the orbit of the section through (1,1)";
        out.steps.push_back(first);
        for (LinkStep& s : down.steps) out.steps.push_back(std::move(s));
        out.steps.push_back(LinkStep::contract());
    }
    return out;
}

ChainCheck validate_chain(const std::vector<MonomialMap>& initial_gens,
                          const std::vector<LinkStep>& steps,
                          const std::vector<MonomialMap>& final_gens,
                          const std::vector<long>& spectrum, long start_n) {
    std::vector<MonomialMap> gens = initial_gens;
    long n = start_n;
    bool on_p2 = false;
    auto fail = [](int i, std::string why) { return ChainCheck{false, i, std::move(why)}; };
    for (size_t i = 0; i < steps.size(); ++i) {
        const LinkStep& s = steps[i];
        int si = (int)i;
        if (on_p2 && s.kind != LinkKind::Conjugate)
            return fail(si, "chain continues past the contraction to P2");
        switch (s.kind) {
            case LinkKind::Conjugate: {
                if (!s.map) return fail(si, "conjugation step carries no map");
                try {
                    for (MonomialMap& g : gens) g = s.map->conjugate(g);
                } catch (const invalid_input& e) {
                    return fail(si, e.what());
                }
                break;
            }
            case LinkKind::ElementaryOnSigma:
            case LinkKind::ElementaryOnC: {
                if (std::find(spectrum.begin(), spectrum.end(), s.length) == spectrum.end())
                    return fail(si, "orbit length " + std::to_string(s.length) +
                                        " is not in the base spectrum");
                if (s.from_n != n)
                    return fail(si, "step starts on F" + std::to_string(s.from_n) +
                                        " but the chain is on F" + std::to_string(n));
                if (s.kind == LinkKind::ElementaryOnC) {
                    if (s.from_n < 1) return fail(si, "no invariant curve on F0");
                    if (s.to_n != std::labs(s.from_n - s.length))
                        return fail(si, "wrong target index for a descent");
                } else if (s.to_n != s.from_n + s.length) {
                    return fail(si, "wrong target index for an ascent");
                }
                n = s.to_n;
                break;
            }
            case LinkKind::TypeIV:
                if (n != 0) return fail(si, "ruling exchange is only defined on F0");
                break;
            case LinkKind::Contract:
                if (n != 1) return fail(si, "contraction requires F1");
                on_p2 = true;
                break;
            case LinkKind::StereographicProjection:
            case LinkKind::BlowUpFixedPoint: break;
        }
    }
    if (gens.size() != final_gens.size())
        return {false, -1, "generator counts differ after the chain"};
    for (size_t j = 0; j < gens.size(); ++j)
        if (gens[j] != final_gens[j])
            return {false, -1,
                    "generator " + std::to_string(j) + " ends as " + gens[j].str() + ", claimed " +
                        final_gens[j].str()};
    return {true, -1, ""};
}

}  // namespace cremona

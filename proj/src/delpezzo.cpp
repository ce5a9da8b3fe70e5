#include "cremona/delpezzo.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "cremona/errors.hpp"

namespace cremona {

int HexEl::order() const {
    if (s) return 2;
    return 6 / std::gcd(6, k == 0 ? 6 : k);
}

std::string HexEl::str() const {
    if (is_id()) return "id";
    std::string out(k, 'r');
    if (s) out += 's';
    return out;
}

HexEl hex_parse(const std::string& word) {
    std::string w;
    for (char c : word)
        if (!std::isspace((unsigned char)c)) w += c;
    if (w.empty() || w == "id" || w == "1") return HexEl{};
    HexEl acc;
    for (char c : w) {
        if (c == 'r')
            acc = acc.mul(HexEl::rot(1));
        else if (c == 's')
            acc = acc.mul(HexEl::refl(0));
        else
            throw invalid_input("hexagon word may only contain r and s: " + word);
    }
    return acc;
}

namespace {

std::array<CycNum, 3> normalize_triple(std::array<CycNum, 3> t, const char* what) {
    uint32_t N = t[0].conductor();
    if (t[1].conductor() != N || t[2].conductor() != N)
        throw invalid_input(std::string(what) + ": mixed conductors");
    int piv = -1;
    for (int i = 0; i < 3; ++i)
        if (!t[i].is_zero()) {
            piv = i;
            break;
        }
    if (piv < 0) throw invalid_input(std::string(what) + ": all coordinates vanish");
    CycNum scale = t[piv].inverse();
    for (auto& c : t) c = c * scale;
    return t;
}

// conjugation action of the hexagon on torus triples, written without
// inversions: r sends (a,b,c) to (ac, ab, bc) and s to (bc, ab, ac),
// both equal to the inverted-coordinate forms up to the common scalar abc
std::array<CycNum, 3> hex_on_torus(const HexEl& h, std::array<CycNum, 3> t) {
    if (h.s) t = {t[1] * t[2], t[0] * t[1], t[0] * t[2]};
    for (int i = 0; i < h.k; ++i) t = {t[0] * t[2], t[0] * t[1], t[1] * t[2]};
    return t;
}

std::array<CycNum, 3> hex_on_coords(const HexEl& h, std::array<CycNum, 3> x,
                                    std::array<CycNum, 3>& y) {
    if (h.s) {
        auto nx = std::array<CycNum, 3>{y[0], y[2], y[1]};
        auto ny = std::array<CycNum, 3>{x[0], x[2], x[1]};
        x = nx;
        y = ny;
    }
    for (int i = 0; i < h.k; ++i) {
        auto nx = std::array<CycNum, 3>{y[1], y[2], y[0]};
        auto ny = std::array<CycNum, 3>{x[1], x[2], x[0]};
        x = nx;
        y = ny;
    }
    return x;
}

}  // namespace

DP6Point DP6Point::make(std::array<CycNum, 3> x, std::array<CycNum, 3> y) {
    x = normalize_triple(std::move(x), "surface point x");
    y = normalize_triple(std::move(y), "surface point y");
    if (x[0].conductor() != y[0].conductor())
        throw invalid_input("surface point: x and y conductors differ");
    CycNum p0 = x[0] * y[0], p1 = x[1] * y[1];
    if (p0 != p1 || p1 != x[2] * y[2])
        throw invalid_input("point off the surface x0*y0 = x1*y1 = x2*y2");
    return DP6Point{std::move(x), std::move(y)};
}

DP6Point DP6Point::base(uint32_t conductor) {
    CycNum one = CycNum::one(conductor);
    return DP6Point{{one, one, one}, {one, one, one}};
}

std::string DP6Point::str() const {
    std::ostringstream os;
    os << "([" << x[0].str() << " : " << x[1].str() << " : " << x[2].str() << "], [" << y[0].str()
       << " : " << y[1].str() << " : " << y[2].str() << "])";
    return os.str();
}

size_t DP6Point::hash() const {
    size_t h = 0;
    for (const auto& c : x) h = h * 1000003u ^ c.hash();
    for (const auto& c : y) h = h * 1000003u ^ c.hash();
    return h;
}

DP6Aut DP6Aut::make(std::array<CycNum, 3> torus, HexEl hex) {
    for (const auto& c : torus)
        if (c.is_zero()) throw invalid_input("torus coordinates must be nonzero");
    return DP6Aut{normalize_triple(std::move(torus), "torus"), hex};
}

DP6Aut DP6Aut::make_torus(const CycNum& t1, const CycNum& t2) {
    return make({CycNum::one(t1.conductor()), t1, t2}, HexEl{});
}

DP6Aut DP6Aut::make_hex(uint32_t conductor, HexEl hex) {
    CycNum one = CycNum::one(conductor);
    return DP6Aut{{one, one, one}, hex};
}

DP6Aut DP6Aut::identity(uint32_t conductor) { return make_hex(conductor, HexEl{}); }

bool DP6Aut::is_identity() const {
    return hex.is_id() && torus[1].is_one() && torus[2].is_one();
}

DP6Aut DP6Aut::compose(const DP6Aut& o) const {
    if (conductor() != o.conductor())
        throw invalid_input("composing del Pezzo automorphisms over different conductors");
    std::array<CycNum, 3> moved = hex_on_torus(hex, o.torus);
    return make({torus[0] * moved[0], torus[1] * moved[1], torus[2] * moved[2]}, hex.mul(o.hex));
}

DP6Aut DP6Aut::inverse() const {
    std::array<CycNum, 3> tinv = {torus[1] * torus[2], torus[0] * torus[2], torus[0] * torus[1]};
    HexEl hinv = hex.inverse();
    return make(hex_on_torus(hinv, std::move(tinv)), hinv);
}

DP6Point DP6Aut::act(const DP6Point& p) const {
    if (conductor() != p.conductor())
        throw invalid_input("automorphism and point have different conductors");
    std::array<CycNum, 3> y = p.y;
    std::array<CycNum, 3> x = hex_on_coords(hex, p.x, y);
    x = {torus[0] * x[0], torus[1] * x[1], torus[2] * x[2]};
    y = {torus[1] * torus[2] * y[0], torus[0] * torus[2] * y[1], torus[0] * torus[1] * y[2]};
    return DP6Point::make(std::move(x), std::move(y));
}

std::string DP6Aut::str() const {
    std::ostringstream os;
    os << "{[" << torus[0].str() << ", " << torus[1].str() << ", " << torus[2].str() << "] "
       << hex.str() << "}";
    return os.str();
}

size_t DP6Aut::hash() const {
    size_t h = hex.code();
    for (const auto& c : torus) h = h * 1000003u ^ c.hash();
    return h;
}

DP6Aut dp6_rho(uint32_t conductor) { return DP6Aut::make_hex(conductor, HexEl::rot(1)); }
DP6Aut dp6_sigma(uint32_t conductor) { return DP6Aut::make_hex(conductor, HexEl::refl(0)); }
DP6Aut dp6_iota(uint32_t conductor) { return DP6Aut::make_hex(conductor, HexEl::rot(3)); }
DP6Aut dp6_theta(uint32_t conductor) { return DP6Aut::make_hex(conductor, HexEl::rot(4)); }

DP6Group dp6_closure(const std::vector<DP6Aut>& gens, size_t cap) {
    if (gens.empty()) throw invalid_input("del Pezzo 6 closure needs at least one generator");
    auto mul = [](const DP6Aut& a, const DP6Aut& b) { return a.compose(b); };
    return close_group<DP6Aut, DP6AutHash>(DP6Aut::identity(gens[0].conductor()), gens, mul, cap,
                                           "del Pezzo 6 closure");
}

namespace {

struct HexSubgroup {
    const char* label;
    std::vector<HexEl> gens;
};

std::vector<uint8_t> hex_span(const std::vector<HexEl>& gens) {
    std::vector<HexEl> elems = {HexEl{}};
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < elems.size(); ++i)
            for (const HexEl& g : gens) {
                HexEl e = elems[i].mul(g);
                if (std::find(elems.begin(), elems.end(), e) == elems.end()) {
                    elems.push_back(e);
                    grew = true;
                }
            }
    }
    std::vector<uint8_t> codes;
    for (const HexEl& e : elems) codes.push_back(e.code());
    std::sort(codes.begin(), codes.end());
    return codes;
}

const std::vector<HexSubgroup>& hex_subgroups() {
    static const std::vector<HexSubgroup> table = {
        {"1", {}},
        {"<r3>", {HexEl::rot(3)}},
        {"<s>", {HexEl::refl(0)}},
        {"<rs>", {HexEl::refl(1)}},
        {"<r2s>", {HexEl::refl(2)}},
        {"<r3s>", {HexEl::refl(3)}},
        {"<r4s>", {HexEl::refl(4)}},
        {"<r5s>", {HexEl::refl(5)}},
        {"<r2>", {HexEl::rot(2)}},
        {"<r3,s>", {HexEl::rot(3), HexEl::refl(0)}},
        {"<r3,rs>", {HexEl::rot(3), HexEl::refl(1)}},
        {"<r3,r2s>", {HexEl::rot(3), HexEl::refl(2)}},
        {"<r>", {HexEl::rot(1)}},
        {"<r2,s>", {HexEl::rot(2), HexEl::refl(0)}},
        {"<r2,rs>", {HexEl::rot(2), HexEl::refl(1)}},
        {"<r,s>", {HexEl::rot(1), HexEl::refl(0)}},
    };
    return table;
}

}  // namespace

DP6Analysis dp6_analyze(const std::vector<DP6Aut>& gens, size_t cap) {
    DP6Analysis out;
    out.full = dp6_closure(gens, cap);

    std::vector<uint8_t> codes;
    for (int i = 0; i < out.full.table.size(); ++i) {
        uint8_t c = out.full.elems()[i].hex.code();
        if (std::find(codes.begin(), codes.end(), c) == codes.end()) codes.push_back(c);
        if (out.full.elems()[i].hex.is_id()) out.torus_indices.push_back(i);
    }
    std::sort(codes.begin(), codes.end());
    for (uint8_t c : codes) out.hex_image.push_back(c >= 6 ? HexEl::refl(c - 6) : HexEl::rot(c));

    for (const HexSubgroup& h : hex_subgroups())
        if (hex_span(h.gens) == codes) {
            out.hex_label = h.label;
            break;
        }
    if (out.hex_label.empty()) throw internal_error("hexagon image is not a subgroup of D6");

    out.torus_part = subgroup_table(out.full.table, out.torus_indices);
    out.minimal = out.hex_label == "<r>" || out.hex_label == "<r2,s>" || out.hex_label == "<r,s>";
    out.fixes_point = out.torus_indices.size() == 1;
    return out;
}

DP5Group dp5_group(const std::vector<Perm>& gens) {
    for (const Perm& p : gens) {
        if (p.size() != 5) throw invalid_input("degree 5 permutation expected");
        std::array<bool, 5> seen{};
        for (uint8_t v : p) {
            if (v >= 5 || seen[v]) throw invalid_input("not a permutation of five symbols");
            seen[v] = true;
        }
    }
    return DP5Group{gens, perm_closure(5, gens)};
}

DP5Analysis dp5_analyze(const DP5Group& g) {
    DP5Analysis out;
    out.order = g.group.table.size();
    out.family = recognize_family(g.group.table);
    out.minimal = out.order == 5 || out.order == 10 || out.order == 20 || out.order == 60 ||
                  out.order == 120;
    return out;
}

Mat3 dp5_std_r(uint32_t conductor) {
    if (conductor % 5 != 0) throw invalid_input("fifth roots of unity need 5 | conductor");
    CycNum z = CycNum::zero(conductor), one = CycNum::one(conductor);
    CycNum w = CycNum::root(conductor, conductor / 5);
    return Mat3{{{one, z, z}, {z, w, z}, {z, z, w.inverse()}}};
}

Mat3 dp5_std_s(uint32_t conductor) {
    CycNum z = CycNum::zero(conductor), one = CycNum::one(conductor);
    return Mat3{{{one, z, z}, {z, z, one}, {z, one, z}}};
}

namespace {

P2Triple mat_apply(const Mat3& m, const P2Triple& v) {
    P2Triple out;
    for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out;
}

CycNum det3(const P2Triple& a, const P2Triple& b, const P2Triple& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

size_t triple_hash(const P2Triple& t) {
    size_t h = 0;
    for (const auto& c : t) h = h * 1000003u ^ c.hash();
    return h;
}

int exact_rank(std::vector<std::vector<CycNum>> rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    int rank = 0;
    size_t lead = 0;
    for (size_t col = 0; col < cols && lead < rows.size(); ++col) {
        size_t piv = lead;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[lead], rows[piv]);
        CycNum inv = rows[lead][col].inverse();
        for (size_t j = col; j < cols; ++j) rows[lead][j] = rows[lead][j] * inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == lead || rows[i][col].is_zero()) continue;
            CycNum f = rows[i][col];
            for (size_t j = col; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[lead][j];
        }
        ++lead;
        ++rank;
    }
    return rank;
}

}  // namespace

bool dp5_orbit_general_position(const std::vector<Mat3>& gens, const P2Triple& start, size_t cap) {
    struct Key {
        size_t operator()(const P2Triple& t) const { return triple_hash(t); }
    };
    P2Triple seed = normalize_triple(start, "orbit start");
    std::vector<P2Triple> orbit = {seed};
    std::unordered_set<P2Triple, Key> seen = {seed};
    for (size_t i = 0; i < orbit.size(); ++i) {
        for (const Mat3& g : gens) {
            P2Triple q = normalize_triple(mat_apply(g, orbit[i]), "orbit point");
            if (seen.insert(q).second) {
                orbit.push_back(q);
                if (orbit.size() > 5 || orbit.size() > cap) return false;
            }
        }
    }
    if (orbit.size() != 5) return false;

    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c)
                if (det3(orbit[a], orbit[b], orbit[c]).is_zero()) return false;

    std::vector<std::vector<CycNum>> veronese;
    for (const P2Triple& p : orbit)
        veronese.push_back({p[0] * p[0], p[0] * p[1], p[1] * p[1], p[0] * p[2], p[1] * p[2],
                            p[2] * p[2]});
    return exact_rank(std::move(veronese)) == 5;
}

}  // namespace cremona

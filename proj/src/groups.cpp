#include "cremona/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cremona/cyclo.hpp"  // euler_phi

namespace cremona {

namespace {
constexpr int kDenseCap = 2048;

bool sorted_contains(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
}
}  // namespace

GroupTable::GroupTable(int n, std::function<int(int, int)> mul, std::vector<int> gens,
                       std::vector<std::vector<int>> words)
    : n_(n), mul_(std::move(mul)), gens_(std::move(gens)), words_(std::move(words)) {
    if (n_ <= kDenseCap) {
        dense_.assign((size_t)n_ * n_, -1);
        for (int a = 0; a < n_; ++a) {
            dense_[a] = a;
            dense_[(size_t)a * n_] = a;
        }
    }
    inv_cache_.assign(n_, -1);
    ord_cache_.assign(n_, -1);
}

long GroupTable::order_of(int a) const {
    if (ord_cache_[a] >= 0) return ord_cache_[a];
    long ord = 1;
    int x = a;
    while (x != 0) {
        x = mult(x, a);
        ++ord;
        if (ord > n_) throw internal_error("element order exceeds group size");
    }
    ord_cache_[a] = (int32_t)ord;
    return ord;
}

int GroupTable::inv(int a) const {
    if (inv_cache_[a] >= 0) return inv_cache_[a];
    int x = a, prev = 0;
    while (x != 0) {
        prev = x;
        x = mult(x, a);
    }
    // prev = a^(ord-1)
    int r = (a == 0) ? 0 : prev;
    inv_cache_[a] = r;
    return r;
}

bool GroupTable::is_abelian() const {
    for (int g : gens_)
        for (int h : gens_)
            if (mult(g, h) != mult(h, g)) return false;
    return true;
}

std::vector<int> GroupTable::center() const {
    std::vector<int> out;
    for (int a = 0; a < n_; ++a) {
        bool central = true;
        for (int g : gens_)
            if (mult(a, g) != mult(g, a)) { central = false; break; }
        if (central) out.push_back(a);
    }
    return out;
}

std::vector<int> GroupTable::generated_subgroup(const std::vector<int>& seed) const {
    std::vector<bool> in(n_, false);
    std::vector<int> members{0};
    in[0] = true;
    std::queue<int> q;
    q.push(0);
    std::vector<int> gens;
    for (int s : seed)
        if (!in[s]) {
            in[s] = true;
            members.push_back(s);
            q.push(s);
            gens.push_back(s);
        } else if (s != 0) {
            gens.push_back(s);
        }
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        for (int g : gens) {
            int p = mult(a, g);
            if (!in[p]) {
                in[p] = true;
                members.push_back(p);
                q.push(p);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::vector<int> GroupTable::conjugate_set(const std::vector<int>& s, int g) const {
    std::vector<int> out;
    out.reserve(s.size());
    int gi = inv(g);
    for (int a : s) out.push_back(mult(mult(g, a), gi));
    std::sort(out.begin(), out.end());
    return out;
}

bool GroupTable::is_normal(const std::vector<int>& sub) const {
    for (int g : gens_) {
        int gi = inv(g);
        for (int a : sub)
            if (!sorted_contains(sub, mult(mult(g, a), gi))) return false;
    }
    return true;
}

std::vector<int> GroupTable::derived_subgroup() const {
    std::vector<int> seeds;
    for (int g : gens_)
        for (int h : gens_) {
            int c = mult(mult(g, h), mult(inv(g), inv(h)));
            if (c != 0) seeds.push_back(c);
        }
    std::vector<int> sub = generated_subgroup(seeds);
    // normal closure
    while (true) {
        std::vector<int> extra;
        for (int g : gens_) {
            int gi = inv(g);
            for (int a : sub) {
                int c = mult(mult(g, a), gi);
                if (!sorted_contains(sub, c)) extra.push_back(c);
            }
        }
        if (extra.empty()) break;
        std::vector<int> seed = sub;
        seed.insert(seed.end(), extra.begin(), extra.end());
        sub = generated_subgroup(seed);
    }
    return sub;
}

std::map<long, long> GroupTable::order_counts() const {
    std::map<long, long> out;
    for (int a = 0; a < n_; ++a) ++out[order_of(a)];
    return out;
}

namespace {

// small generating set by greedy extension
std::vector<int> greedy_generators(int n, const std::function<int(int, int)>& mul) {
    std::vector<int> gens;
    std::vector<bool> in(n, false);
    in[0] = true;
    int covered = 1;
    while (covered < n) {
        int pick = -1;
        for (int a = 0; a < n; ++a)
            if (!in[a]) { pick = a; break; }
        gens.push_back(pick);
        // re-close
        std::fill(in.begin(), in.end(), false);
        in[0] = true;
        covered = 1;
        std::queue<int> q;
        q.push(0);
        for (int g : gens)
            if (!in[g]) {
                in[g] = true;
                ++covered;
                q.push(g);
            }
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int g : gens) {
                int p = mul(a, g);
                if (!in[p]) {
                    in[p] = true;
                    ++covered;
                    q.push(p);
                }
            }
        }
    }
    return gens;
}

}  // namespace

SubTable subgroup_table(const GroupTable& g, std::vector<int> sorted_elements) {
    std::sort(sorted_elements.begin(), sorted_elements.end());
    if (sorted_elements.empty() || sorted_elements[0] != 0)
        throw internal_error("subgroup must contain the identity");
    auto parent = std::make_shared<std::vector<int>>(sorted_elements);
    auto local = std::make_shared<std::unordered_map<int, int>>();
    for (size_t i = 0; i < parent->size(); ++i) local->emplace((*parent)[i], (int)i);
    const GroupTable* gp = &g;
    auto mul = [parent, local, gp](int a, int b) {
        int p = gp->mult((*parent)[a], (*parent)[b]);
        auto it = local->find(p);
        if (it == local->end()) throw internal_error("set is not closed under multiplication");
        return it->second;
    };
    int n = (int)parent->size();
    auto gens = greedy_generators(n, mul);
    SubTable st;
    st.table = GroupTable(n, mul, gens, std::vector<std::vector<int>>(n));
    st.parent_index = *parent;
    st.local_index = *local;
    return st;
}

QuotientTable quotient_table(const GroupTable& g, const std::vector<int>& normal_sub) {
    std::vector<int> sub = normal_sub;
    std::sort(sub.begin(), sub.end());
    if (!g.is_normal(sub)) throw internal_error("quotient by a non-normal subgroup");
    int n = g.size();
    QuotientTable qt;
    qt.coset_of.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (qt.coset_of[a] >= 0) continue;
        int id = (int)qt.coset_rep.size();
        qt.coset_rep.push_back(a);
        for (int h : sub) qt.coset_of[g.mult(a, h)] = id;
    }
    int m = (int)qt.coset_rep.size();
    auto reps = std::make_shared<std::vector<int>>(qt.coset_rep);
    auto cof = std::make_shared<std::vector<int>>(qt.coset_of);
    const GroupTable* gp = &g;
    auto mul = [reps, cof, gp](int a, int b) {
        return (*cof)[gp->mult((*reps)[a], (*reps)[b])];
    };
    auto gens = greedy_generators(m, mul);
    qt.table = GroupTable(m, mul, gens, std::vector<std::vector<int>>(m));
    return qt;
}

std::vector<std::vector<int>> all_subgroups(const GroupTable& g) {
    int n = g.size();
    if (n > 64) throw invalid_input("subgroup enumeration supported only up to order 64");
    auto closure_mask = [&](uint64_t mask) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) members.push_back(i);
        size_t head = 0;
        while (head < members.size()) {
            int a = members[head++];
            for (size_t j = 0; j < members.size(); ++j) {
                int p = g.mult(a, members[j]);
                if (!(mask >> p & 1)) {
                    mask |= 1ULL << p;
                    members.push_back(p);
                }
                p = g.mult(members[j], a);
                if (!(mask >> p & 1)) {
                    mask |= 1ULL << p;
                    members.push_back(p);
                }
            }
        }
        return mask;
    };
    std::set<uint64_t> seen;
    std::queue<uint64_t> work;
    uint64_t triv = closure_mask(1ULL);
    seen.insert(triv);
    work.push(triv);
    while (!work.empty()) {
        uint64_t s = work.front();
        work.pop();
        for (int e = 0; e < n; ++e) {
            if (s >> e & 1) continue;
            uint64_t t = closure_mask(s | (1ULL << e));
            if (seen.insert(t).second) work.push(t);
        }
    }
    std::vector<std::vector<int>> out;
    for (uint64_t mask : seen) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) members.push_back(i);
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// ---- Goursat -----------------------------------------------------------

PairGroup pair_closure(const GroupTable& a, const GroupTable& b,
                       const std::vector<std::pair<int, int>>& gens, size_t cap) {
    struct PH {
        size_t operator()(const std::pair<int, int>& p) const {
            return (size_t)p.first * 1000003u + p.second;
        }
    };
    auto mul = [&a, &b](const std::pair<int, int>& x, const std::pair<int, int>& y) {
        return std::make_pair(a.mult(x.first, y.first), b.mult(x.second, y.second));
    };
    auto closed = close_group<std::pair<int, int>, PH>({0, 0}, gens, mul, cap, "pair group");
    PairGroup pg;
    pg.a = &a;
    pg.b = &b;
    pg.elems = closed.elems();
    pg.closed_by_construction = true;
    return pg;
}

GoursatData goursat_decompose(const PairGroup& g) {
    if (!g.a || !g.b) throw internal_error("pair group without ambient tables");
    std::set<std::pair<int, int>> eset(g.elems.begin(), g.elems.end());
    if (!eset.count({0, 0})) throw invalid_input("subgroup of a product must contain (id, id)");
    if (!g.closed_by_construction)
        for (auto& x : eset)
            for (auto& y : eset)
                if (!eset.count({g.a->mult(x.first, y.first), g.b->mult(x.second, y.second)}))
                    throw invalid_input("element set is not a subgroup of the direct product");

    GoursatData d;
    std::set<int> s1, s2;
    for (auto& [x, y] : eset) {
        s1.insert(x);
        s2.insert(y);
        if (y == 0) d.h1.push_back(x);
        if (x == 0) d.h2.push_back(y);
    }
    d.g1.assign(s1.begin(), s1.end());
    d.g2.assign(s2.begin(), s2.end());
    std::sort(d.h1.begin(), d.h1.end());
    std::sort(d.h2.begin(), d.h2.end());

    SubTable t1 = subgroup_table(*g.a, d.g1);
    SubTable t2 = subgroup_table(*g.b, d.g2);
    std::vector<int> h1_local, h2_local;
    for (int x : d.h1) h1_local.push_back(t1.local_index.at(x));
    for (int y : d.h2) h2_local.push_back(t2.local_index.at(y));
    QuotientTable q1 = quotient_table(t1.table, h1_local);
    QuotientTable q2 = quotient_table(t2.table, h2_local);
    if (q1.table.size() != q2.table.size())
        throw invalid_input("projections do not share a common quotient");

    d.phi.assign(q1.table.size(), -1);
    for (auto& [x, y] : eset) {
        int c1 = q1.coset_of[t1.local_index.at(x)];
        int c2 = q2.coset_of[t2.local_index.at(y)];
        if (d.phi[c1] == -1)
            d.phi[c1] = c2;
        else if (d.phi[c1] != c2)
            throw invalid_input("graph map of the subgroup is not single-valued");
    }
    std::vector<bool> hit(q2.table.size(), false);
    for (int v : d.phi) {
        if (v < 0) throw internal_error("coset not covered by the subgroup");
        if (hit[v]) throw invalid_input("graph map of the subgroup is not injective");
        hit[v] = true;
    }
    for (int c = 0; c < q1.table.size(); ++c)
        for (int e = 0; e < q1.table.size(); ++e)
            if (d.phi[q1.table.mult(c, e)] != q2.table.mult(d.phi[c], d.phi[e]))
                throw invalid_input("graph map is not a homomorphism");
    if ((long)eset.size() != (long)d.h1.size() * (long)d.h2.size() * q1.table.size())
        throw internal_error("Goursat order identity violated");

    d.q = q1.table;
    d.coset1_of_g1.clear();
    for (int x : d.g1) d.coset1_of_g1.push_back(q1.coset_of[t1.local_index.at(x)]);
    d.coset2_of_g2.clear();
    for (int y : d.g2) d.coset2_of_g2.push_back(q2.coset_of[t2.local_index.at(y)]);
    return d;
}

std::vector<std::pair<int, int>> goursat_reconstruct(const GroupTable&, const GroupTable&,
                                                     const GoursatData& d) {
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < d.g1.size(); ++i)
        for (size_t j = 0; j < d.g2.size(); ++j)
            if (d.phi[d.coset1_of_g1[i]] == d.coset2_of_g2[j])
                out.emplace_back(d.g1[i], d.g2[j]);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- family tags -------------------------------------------------------

std::string FamilyTag::str() const {
    switch (kind) {
        case K::Trivial: return "Trivial";
        case K::Cyclic: return "Cyclic(" + std::to_string(n) + ")";
        case K::Dihedral: return "Dihedral(" + std::to_string(n) + ")";
        case K::GenDihedral: {
            std::string s = "GenDihedral(";
            for (size_t i = 0; i < factors.size(); ++i)
                s += (i ? "x" : "") + std::to_string(factors[i]);
            return s + ")";
        }
        case K::A4: return "A4";
        case K::S4: return "S4";
        case K::A5: return "A5";
        case K::F5: return "F5";
        case K::S5: return "S5";
        case K::Product: return "DirectProduct(" + parts[0].str() + "," + parts[1].str() + ")";
        case K::Wreath: return "Wreath(" + parts[0].str() + ")";
        case K::Unrecognized: return "Unrecognized(" + std::to_string(n) + ")";
    }
    return "?";
}

bool FamilyTag::operator==(const FamilyTag& o) const {
    return kind == o.kind && n == o.n && factors == o.factors && parts == o.parts;
}

FamilyTag FamilyTag::product(FamilyTag x, FamilyTag y) {
    if (y.str() < x.str()) std::swap(x, y);
    FamilyTag t;
    t.kind = K::Product;
    t.parts = {std::move(x), std::move(y)};
    return t;
}

DihedralWitness is_dihedral(const GroupTable& g) {
    int n = g.size();
    DihedralWitness w;
    if (n == 2) {  // D1 = C2 convention
        w.is_dihedral = true;
        w.rotation_subgroup = {0};
        w.reflection = 1;
        return w;
    }
    if (n % 2) return w;
    for (int a = 0; a < n; ++a) {
        if (g.order_of(a) != n / 2) continue;
        std::vector<int> rot = g.generated_subgroup({a});
        int ainv = g.inv(a);
        for (int t = 0; t < n; ++t) {
            if (sorted_contains(rot, t)) continue;
            if (g.mult(t, t) != 0) continue;
            if (g.mult(g.mult(t, a), t) == ainv) {
                w.is_dihedral = true;
                w.rotation_subgroup = rot;
                w.reflection = t;
                return w;
            }
        }
        if (n > 4) break;  // all index-2 cyclic subgroups coincide for n'=n/2 > 2
    }
    return w;
}

Fingerprint fingerprint(const GroupTable& g) {
    Fingerprint f;
    f.order = g.size();
    f.abelian = g.is_abelian();
    f.order_counts = g.order_counts();
    f.center_order = (long)g.center().size();
    f.derived_order = (long)g.derived_subgroup().size();
    return f;
}

std::vector<long> abelian_invariant_factors(const GroupTable& g,
                                            const std::vector<int>& subset) {
    // order statistics determine a finite abelian group
    std::map<long, long> counts;
    for (int a : subset) ++counts[g.order_of(a)];
    long n = (long)subset.size();
    std::vector<std::vector<long>> partitions;  // one partition per prime
    std::vector<long> primes;
    long m = n;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) primes.push_back(m);
    for (long p : primes) {
        // s_j: p-adic valuation of #{x : x^(p^j) = 1}
        std::vector<long> s{0};
        long pj = 1;
        while (true) {
            pj *= p;
            long cnt = 0;
            for (auto& [o, c] : counts)
                if (pj % o == 0) cnt += c;
            long v = 0;
            long t = cnt;
            while (t % p == 0) { t /= p; ++v; }
            s.push_back(v);
            if (cnt == n || s.back() == s[s.size() - 2]) break;
        }
        std::vector<long> lambda;  // lambda_i = exponent of i-th largest factor
        for (size_t j = 1; j < s.size(); ++j) {
            long parts_ge_j = s[j] - s[j - 1];
            for (long i = 0; i < parts_ge_j; ++i) {
                if ((size_t)i >= lambda.size()) lambda.push_back(0);
                ++lambda[i];
            }
        }
        partitions.push_back(lambda);
    }
    size_t w = 0;
    for (auto& l : partitions) w = std::max(w, l.size());
    std::vector<long> factors;
    for (size_t i = 0; i < w; ++i) {
        long f = 1;
        for (size_t k = 0; k < primes.size(); ++k) {
            long e = (i < partitions[k].size()) ? partitions[k][i] : 0;
            for (long j = 0; j < e; ++j) f *= primes[k];
        }
        factors.push_back(f);
    }
    return factors;
}

// ---- permutation models ------------------------------------------------

Perm perm_identity(int deg) {
    Perm p(deg);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_mul(const Perm& f, const Perm& g) {
    Perm r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
    return r;
}

PermGroup perm_closure(int deg, const std::vector<Perm>& gens, size_t cap) {
    return close_group<Perm, PermHash>(perm_identity(deg), gens, perm_mul, cap,
                                       "permutation group");
}

namespace {
Perm cycle_perm(int deg, const std::vector<int>& cyc) {
    Perm p = perm_identity(deg);
    for (size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = (uint8_t)cyc[(i + 1) % cyc.size()];
    return p;
}

void check_degree(long deg) {
    if (deg > 255) throw group_too_large("permutation degree exceeds byte range");
}
}  // namespace

PermGroup model_cyclic(long n) {
    check_degree(n);
    if (n == 1) return perm_closure(1, {});
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 0);
    return perm_closure((int)n, {cycle_perm((int)n, c)});
}

PermGroup model_dihedral(long n) {
    check_degree(n);
    if (n == 1) return model_cyclic(2);
    if (n == 2) return perm_closure(4, {cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})});
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 0);
    Perm flip = perm_identity((int)n);
    for (long i = 0; i < n; ++i) flip[i] = (uint8_t)((n - i) % n);
    return perm_closure((int)n, {cycle_perm((int)n, c), flip});
}

PermGroup model_named(FamilyTag::K k) {
    switch (k) {
        case FamilyTag::K::A4:
            return perm_closure(4, {perm_mul(cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})),
                                    cycle_perm(4, {1, 2, 3})});
        case FamilyTag::K::S4:
            return perm_closure(4, {cycle_perm(4, {0, 1, 2, 3}), cycle_perm(4, {0, 1})});
        case FamilyTag::K::A5:
            return perm_closure(5, {cycle_perm(5, {0, 1, 2, 3, 4}), cycle_perm(5, {0, 1, 2})});
        case FamilyTag::K::S5:
            return perm_closure(5, {cycle_perm(5, {0, 1, 2, 3, 4}), cycle_perm(5, {0, 1})});
        case FamilyTag::K::F5:
            return perm_closure(5, {cycle_perm(5, {0, 1, 2, 3, 4}), cycle_perm(5, {1, 2, 4, 3})});
        default:
            throw internal_error("not a named family");
    }
}

PermGroup model_product(const PermGroup& x, const PermGroup& y) {
    int dx = (int)x.elems()[0].size(), dy = (int)y.elems()[0].size();
    check_degree((long)dx + dy);
    std::vector<Perm> gens;
    for (int gi : x.table.generators()) {
        Perm p = perm_identity(dx + dy);
        const Perm& g = x.elems()[gi];
        for (int i = 0; i < dx; ++i) p[i] = g[i];
        gens.push_back(p);
    }
    for (int gi : y.table.generators()) {
        Perm p = perm_identity(dx + dy);
        const Perm& g = y.elems()[gi];
        for (int i = 0; i < dy; ++i) p[dx + i] = (uint8_t)(dx + g[i]);
        gens.push_back(p);
    }
    return perm_closure(dx + dy, gens);
}

PermGroup model_wreath2(const PermGroup& base) {
    int d = (int)base.elems()[0].size();
    check_degree(2L * d);
    std::vector<Perm> gens;
    for (int gi : base.table.generators()) {
        Perm p = perm_identity(2 * d);
        const Perm& g = base.elems()[gi];
        for (int i = 0; i < d; ++i) p[i] = g[i];
        gens.push_back(p);
    }
    Perm sw(2 * d);
    for (int i = 0; i < d; ++i) {
        sw[i] = (uint8_t)(d + i);
        sw[d + i] = (uint8_t)i;
    }
    gens.push_back(sw);
    return perm_closure(2 * d, gens);
}

PermGroup model_for_tag(const FamilyTag& tag) {
    using K = FamilyTag::K;
    switch (tag.kind) {
        case K::Trivial: return model_cyclic(1);
        case K::Cyclic: return model_cyclic(tag.n);
        case K::Dihedral: return model_dihedral(tag.n);
        case K::A4: case K::S4: case K::A5: case K::F5: case K::S5:
            return model_named(tag.kind);
        case K::Product: {
            auto x = model_for_tag(tag.parts[0]);
            auto y = model_for_tag(tag.parts[1]);
            return model_product(x, y);
        }
        case K::Wreath: {
            auto b = model_for_tag(tag.parts[0]);
            return model_wreath2(b);
        }
        case K::GenDihedral: {
            int deg = 0;
            for (long f : tag.factors) deg += (int)f;
            check_degree(deg);
            std::vector<Perm> gens;
            int off = 0;
            for (long f : tag.factors) {
                std::vector<int> c(f);
                std::iota(c.begin(), c.end(), off);
                gens.push_back(cycle_perm(deg, c));
                off += (int)f;
            }
            Perm neg = perm_identity(deg);
            off = 0;
            for (long f : tag.factors) {
                for (long i = 0; i < f; ++i) neg[off + i] = (uint8_t)(off + (f - i) % f);
                off += (int)f;
            }
            gens.push_back(neg);
            return perm_closure(deg, gens);
        }
        default: throw internal_error("no model for tag " + tag.str());
    }
}

// ---- analytic fingerprints for candidate tags --------------------------

namespace {

struct AnalyticFp {
    long order = 0;
    bool abelian = false;
    std::map<long, long> counts;
    long center = 0;
    long derived = 0;
};

std::optional<AnalyticFp> analytic_fp(const FamilyTag& tag);

AnalyticFp fp_cyclic(long k) {
    AnalyticFp f;
    f.order = k;
    f.abelian = true;
    for (long d = 1; d <= k; ++d)
        if (k % d == 0) f.counts[d] = euler_phi((uint32_t)d);
    f.center = k;
    f.derived = 1;
    return f;
}

AnalyticFp fp_dihedral(long m) {
    AnalyticFp f = fp_cyclic(m);
    f.order = 2 * m;
    f.counts[2] += m;
    f.abelian = m <= 2;
    f.center = (m <= 2) ? 2 * m : (m % 2 == 0 ? 2 : 1);
    f.derived = (m % 2 == 0) ? m / 2 : m;
    return f;
}

AnalyticFp fp_named(FamilyTag::K k) {
    AnalyticFp f;
    f.abelian = false;
    f.center = 1;
    switch (k) {
        case FamilyTag::K::A4:
            f.order = 12; f.counts = {{1, 1}, {2, 3}, {3, 8}}; f.derived = 4; break;
        case FamilyTag::K::S4:
            f.order = 24; f.counts = {{1, 1}, {2, 9}, {3, 8}, {4, 6}}; f.derived = 12; break;
        case FamilyTag::K::A5:
            f.order = 60; f.counts = {{1, 1}, {2, 15}, {3, 20}, {5, 24}}; f.derived = 60; break;
        case FamilyTag::K::F5:
            f.order = 20; f.counts = {{1, 1}, {2, 5}, {4, 10}, {5, 4}}; f.derived = 5; break;
        case FamilyTag::K::S5:
            f.order = 120; f.counts = {{1, 1}, {2, 25}, {3, 20}, {4, 30}, {5, 24}, {6, 20}};
            f.derived = 60; break;
        default: throw internal_error("not a named family");
    }
    return f;
}

std::optional<AnalyticFp> analytic_fp(const FamilyTag& tag) {
    using K = FamilyTag::K;
    switch (tag.kind) {
        case K::Trivial: return fp_cyclic(1);
        case K::Cyclic: return fp_cyclic(tag.n);
        case K::Dihedral: return fp_dihedral(tag.n);
        case K::A4: case K::S4: case K::A5: case K::F5: case K::S5:
            return fp_named(tag.kind);
        case K::Product: {
            auto a = analytic_fp(tag.parts[0]);
            auto b = analytic_fp(tag.parts[1]);
            if (!a || !b) return std::nullopt;
            AnalyticFp f;
            f.order = a->order * b->order;
            f.abelian = a->abelian && b->abelian;
            f.center = a->center * b->center;
            f.derived = a->derived * b->derived;
            for (auto& [o1, c1] : a->counts)
                for (auto& [o2, c2] : b->counts) f.counts[std::lcm(o1, o2)] += c1 * c2;
            return f;
        }
        case K::Wreath: {
            auto k = analytic_fp(tag.parts[0]);
            if (!k) return std::nullopt;
            AnalyticFp f;
            f.order = 2 * k->order * k->order;
            f.abelian = false;
            f.center = k->center;
            f.derived = k->order * k->derived;
            for (auto& [o1, c1] : k->counts)
                for (auto& [o2, c2] : k->counts) f.counts[std::lcm(o1, o2)] += c1 * c2;
            for (auto& [o, c] : k->counts) f.counts[2 * o] += k->order * c;
            return f;
        }
        default: return std::nullopt;
    }
}

bool matches(const Fingerprint& in, const AnalyticFp& fp) {
    return in.order == fp.order && in.abelian == fp.abelian && in.order_counts == fp.counts &&
           in.center_order == fp.center && in.derived_order == fp.derived;
}

std::vector<FamilyTag> atoms_of_order(long m) {
    std::vector<FamilyTag> out;
    out.push_back(FamilyTag::cyclic(m));
    if (m % 2 == 0 && m >= 4) out.push_back(FamilyTag::dihedral(m / 2));
    if (m == 12) out.push_back(FamilyTag::named(FamilyTag::K::A4));
    if (m == 24) out.push_back(FamilyTag::named(FamilyTag::K::S4));
    if (m == 60) out.push_back(FamilyTag::named(FamilyTag::K::A5));
    if (m == 20) out.push_back(FamilyTag::named(FamilyTag::K::F5));
    if (m == 120) out.push_back(FamilyTag::named(FamilyTag::K::S5));
    return out;
}

}  // namespace

namespace {

// index-2 subgroups: preimages of hyperplanes in G / <squares, derived>
std::vector<std::vector<int>> index2_subgroups(const GroupTable& g) {
    int n = g.size();
    std::vector<int> seeds;
    for (int a = 0; a < n; ++a) seeds.push_back(g.mult(a, a));
    auto der = g.derived_subgroup();
    seeds.insert(seeds.end(), der.begin(), der.end());
    std::vector<int> k0 = g.generated_subgroup(seeds);
    std::vector<std::vector<int>> out;
    if ((long)k0.size() == (long)n) return out;
    QuotientTable q = quotient_table(g, k0);
    if (q.table.size() > 64) return out;
    for (auto& sub : all_subgroups(q.table)) {
        if ((int)sub.size() * 2 != q.table.size()) continue;
        std::vector<bool> keep(q.table.size(), false);
        for (int c : sub) keep[c] = true;
        std::vector<int> members;
        for (int a = 0; a < n; ++a)
            if (keep[q.coset_of[a]]) members.push_back(a);
        out.push_back(std::move(members));
    }
    return out;
}

std::optional<FamilyTag> gen_dihedral_tag(const GroupTable& g) {
    long n = g.size();
    if (n % 2 || n > 4096) return std::nullopt;
    for (auto& h : index2_subgroups(g)) {
        bool abelian = true;
        for (size_t i = 0; i < h.size() && abelian; ++i)
            for (size_t j = i + 1; j < h.size(); ++j)
                if (g.mult(h[i], h[j]) != g.mult(h[j], h[i])) { abelian = false; break; }
        if (!abelian) continue;
        std::vector<bool> in_h(g.size(), false);
        for (int a : h) in_h[a] = true;
        for (int t = 0; t < g.size(); ++t) {
            if (in_h[t] || g.mult(t, t) != 0) continue;
            bool inverts = true;
            for (int a : h)
                if (g.mult(g.mult(t, a), t) != g.inv(a)) { inverts = false; break; }
            if (!inverts) continue;
            FamilyTag tag;
            tag.kind = FamilyTag::K::GenDihedral;
            tag.factors = abelian_invariant_factors(g, h);
            return tag;
        }
    }
    return std::nullopt;
}

}  // namespace

FamilyTag recognize_family(const GroupTable& g) {
    long n = g.size();
    if (n == 1) return FamilyTag::trivial();
    Fingerprint in = fingerprint(g);
    long max_order = in.order_counts.rbegin()->first;
    if (max_order == n) return FamilyTag::cyclic(n);

    auto dw = is_dihedral(g);
    if (dw.is_dihedral) return FamilyTag::dihedral(n / 2);

    if (g.is_abelian()) {
        std::vector<int> all((size_t)n);
        std::iota(all.begin(), all.end(), 0);
        auto fac = abelian_invariant_factors(g, all);
        FamilyTag t = FamilyTag::cyclic(fac.back());
        for (size_t i = fac.size() - 1; i-- > 0;)
            t = FamilyTag::product(FamilyTag::cyclic(fac[i]), t);
        return t;
    }

    std::vector<FamilyTag> candidates;
    for (auto& t : atoms_of_order(n))
        if (t.kind != FamilyTag::K::Cyclic && t.kind != FamilyTag::K::Dihedral)
            candidates.push_back(t);
    long k2 = n / 2;
    long k = (long)std::llround(std::sqrt((double)k2));
    if (n % 2 == 0 && k * k == k2)
        for (auto& base : atoms_of_order(k)) candidates.push_back(FamilyTag::wreath(base));
    for (long d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        for (auto& x : atoms_of_order(d))
            for (auto& y : atoms_of_order(n / d)) candidates.push_back(FamilyTag::product(x, y));
    }

    std::vector<FamilyTag> matched;
    for (auto& t : candidates) {
        auto fp = analytic_fp(t);
        if (!fp || !matches(in, *fp)) continue;
        bool dup = false;
        for (auto& m : matched)
            if (m == t) { dup = true; break; }
        if (!dup) matched.push_back(t);
    }
    if (matched.size() == 1) return matched[0];
    if (matched.size() > 1) return FamilyTag::unrecognized(n);

    if (auto gd = gen_dihedral_tag(g)) return *gd;
    return FamilyTag::unrecognized(n);
}

OrbitCheckReport orbit_divisibility_check(const GroupTable& g,
                                          const std::vector<std::vector<int>>& act,
                                          const std::vector<int>& subgroup) {
    OrbitCheckReport rep;
    int n = g.size();
    if ((int)act.size() != n) {
        rep.detail = "action table has wrong number of rows";
        return rep;
    }
    size_t npts = act.empty() ? 0 : act[0].size();
    for (auto& row : act)
        if (row.size() != npts) {
            rep.detail = "ragged action table";
            return rep;
        }
    for (size_t x = 0; x < npts; ++x)
        if (act[0][x] != (int)x) {
            rep.detail = "identity row does not fix point " + std::to_string(x);
            return rep;
        }
    for (int a = 0; a < n; ++a)
        for (size_t x = 0; x < npts; ++x)
            if (act[a][x] < 0 || act[a][x] >= (int)npts) {
                rep.detail = "action value out of range";
                return rep;
            }
    long checks = (long)n * n * (long)npts;
    int stride = checks <= 2000000 ? 1 : (int)(checks / 2000000) + 1;
    for (int a = 0; a < n; ++a)
        for (int b = a % stride; b < n; b += stride)
            for (size_t x = 0; x < npts; ++x)
                if (act[g.mult(a, b)][x] != act[a][act[b][x]]) {
                    rep.detail = "not a group action: (ab)x != a(bx)";
                    return rep;
                }

    std::vector<int> sub = subgroup;
    std::sort(sub.begin(), sub.end());
    bool normal = g.is_normal(sub);
    std::vector<int> g_orbit(npts, -1), h_orbit(npts, -1);
    auto orbits_of = [&](const std::vector<int>& members, std::vector<int>& label) {
        int next = 0;
        for (size_t x = 0; x < npts; ++x) {
            if (label[x] >= 0) continue;
            int id = next++;
            std::queue<int> q;
            q.push((int)x);
            label[x] = id;
            while (!q.empty()) {
                int p = q.front();
                q.pop();
                for (int m : members)
                    if (label[act[m][p]] < 0) {
                        label[act[m][p]] = id;
                        q.push(act[m][p]);
                    }
            }
        }
        return next;
    };
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    int ng = orbits_of(all, g_orbit);
    orbits_of(sub, h_orbit);

    long index = (long)n / (long)sub.size();
    for (int o = 0; o < ng; ++o) {
        OrbitCheckReport::OrbitInfo info;
        std::map<int, long> h_sizes;
        for (size_t x = 0; x < npts; ++x)
            if (g_orbit[x] == o) {
                info.points.push_back((int)x);
                ++h_sizes[h_orbit[x]];
            }
        std::set<long> lens;
        for (auto& [id, len] : h_sizes) lens.insert(len);
        if (lens.size() != 1) {
            rep.detail = "sub-orbits inside one orbit have unequal lengths";
            rep.orbits.push_back(info);
            return rep;
        }
        info.sub_orbit_length = *lens.begin();
        info.sub_orbit_count = (long)h_sizes.size();
        if ((long)info.points.size() % info.sub_orbit_length != 0) {
            rep.detail = "sub-orbit length does not divide orbit length";
            rep.orbits.push_back(info);
            return rep;
        }
        if (normal && index % info.sub_orbit_count != 0) {
            rep.detail = "sub-orbit count does not divide the subgroup index";
            rep.orbits.push_back(info);
            return rep;
        }
        rep.orbits.push_back(info);
    }
    rep.ok = true;
    rep.detail = normal ? "subgroup is normal; all divisibility conclusions hold"
                        : "subgroup not normal; equal-length decomposition checked";
    return rep;
}

}  // namespace cremona

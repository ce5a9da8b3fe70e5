#pragma once
// Finite group machinery on index tables: closure of generator sets,
// subgroups and quotients, Goursat decomposition of subgroups of a direct
// product, dihedral detection, family recognition by invariant fingerprint.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "cremona/errors.hpp"

namespace cremona {

inline constexpr size_t kDefaultClosureCap = 20000;

// A finite group as indices 0..n-1 with 0 = identity.  Multiplication is
// either a cached dense table (small groups) or a callback into the carrier.
class GroupTable {
public:
    GroupTable() = default;
    GroupTable(int n, std::function<int(int, int)> mul, std::vector<int> gens,
               std::vector<std::vector<int>> words);

    int size() const { return n_; }
    int identity() const { return 0; }
    int mult(int a, int b) const {
        if (dense_.empty()) return mul_(a, b);
        int32_t& s = dense_[(size_t)a * n_ + b];
        if (s < 0) s = (int32_t)mul_(a, b);
        return s;
    }
    int inv(int a) const;
    long order_of(int a) const;
    const std::vector<int>& generators() const { return gens_; }
    const std::vector<std::vector<int>>& words() const { return words_; }

    bool is_abelian() const;
    std::vector<int> center() const;            // commutes with all generators
    std::vector<int> derived_subgroup() const;  // sorted element indices
    std::map<long, long> order_counts() const;
    bool has_dense_table() const { return !dense_.empty(); }

    // subgroup generated by the given elements, as sorted indices
    std::vector<int> generated_subgroup(const std::vector<int>& seed) const;
    std::vector<int> conjugate_set(const std::vector<int>& sorted_set, int g) const;
    bool is_normal(const std::vector<int>& sorted_subgroup) const;

private:
    int n_ = 0;
    std::function<int(int, int)> mul_;
    mutable std::vector<int32_t> dense_;  // memoized on first use, -1 = unknown
    std::vector<int> gens_;
    std::vector<std::vector<int>> words_;
    mutable std::vector<int32_t> inv_cache_, ord_cache_;
};

// Closure of a generator set under multiplication, breadth-first from the
// identity with generators applied in input order (deterministic labels).
template <class E, class Hash>
struct Closed {
    std::shared_ptr<std::vector<E>> elems_ptr;
    std::shared_ptr<std::unordered_map<E, int, Hash>> index_ptr;
    GroupTable table;
    const std::vector<E>& elems() const { return *elems_ptr; }
    int index_of(const E& e) const {
        auto it = index_ptr->find(e);
        return it == index_ptr->end() ? -1 : it->second;
    }
};

template <class E, class Hash, class Mul>
Closed<E, Hash> close_group(const E& id, const std::vector<E>& gens, Mul mul, size_t cap,
                            const std::string& what) {
    auto elems = std::make_shared<std::vector<E>>();
    auto index = std::make_shared<std::unordered_map<E, int, Hash>>();
    std::vector<std::vector<int>> words;
    elems->push_back(id);
    index->emplace(id, 0);
    words.push_back({});
    std::queue<int> bfs;
    bfs.push(0);
    while (!bfs.empty()) {
        int a = bfs.front();
        bfs.pop();
        for (size_t j = 0; j < gens.size(); ++j) {
            E p = mul((*elems)[a], gens[j]);
            if (index->count(p)) continue;
            if (elems->size() >= cap)
                throw group_too_large(what + ": closure exceeded cap " + std::to_string(cap));
            int idx = (int)elems->size();
            elems->push_back(p);
            index->emplace(std::move(p), idx);
            auto w = words[a];
            w.push_back((int)j);
            words.push_back(std::move(w));
            bfs.push(idx);
        }
    }
    std::vector<int> gen_idx;
    for (const auto& g : gens) gen_idx.push_back(index->at(g));
    auto table_mul = [elems, index, mul](int a, int b) {
        return index->at(mul((*elems)[a], (*elems)[b]));
    };
    GroupTable t((int)elems->size(), table_mul, std::move(gen_idx), std::move(words));
    return Closed<E, Hash>{elems, index, std::move(t)};
}

// subgroup as its own GroupTable; local index i <-> parent index set[i]
struct SubTable {
    GroupTable table;
    std::vector<int> parent_index;               // local -> parent
    std::unordered_map<int, int> local_index;    // parent -> local
};
SubTable subgroup_table(const GroupTable& g, std::vector<int> sorted_elements);

// quotient by a normal subgroup; coset_of maps parent elements to coset ids
struct QuotientTable {
    GroupTable table;
    std::vector<int> coset_of;
    std::vector<int> coset_rep;
};
QuotientTable quotient_table(const GroupTable& g, const std::vector<int>& normal_sub);

// all subgroups by closure-extension search; requires |G| <= 64
std::vector<std::vector<int>> all_subgroups(const GroupTable& g);

// ---- Goursat ----------------------------------------------------------

// A subgroup of A x B given by its element pairs (indices into A and B).
struct PairGroup {
    const GroupTable* a = nullptr;
    const GroupTable* b = nullptr;
    std::vector<std::pair<int, int>> elems;  // must contain (0,0), closed
    bool closed_by_construction = false;     // skip the quadratic closure audit
};

PairGroup pair_closure(const GroupTable& a, const GroupTable& b,
                       const std::vector<std::pair<int, int>>& gens,
                       size_t cap = kDefaultClosureCap);

struct GoursatData {
    std::vector<int> g1, g2;   // images of the projections (sorted, in A resp. B)
    std::vector<int> h1, h2;   // kernels of the cross projections
    GroupTable q;              // common quotient G1/H1 ~ G2/H2
    std::vector<int> coset1_of_g1;  // aligned with g1: coset id in q
    std::vector<int> coset2_of_g2;  // aligned with g2: image coset under phi
    std::vector<int> phi;           // coset id of G1/H1 -> coset id of G2/H2
};

GoursatData goursat_decompose(const PairGroup& g);
std::vector<std::pair<int, int>> goursat_reconstruct(const GroupTable& a, const GroupTable& b,
                                                     const GoursatData& d);

// ---- family recognition ------------------------------------------------

struct FamilyTag {
    enum class K {
        Trivial, Cyclic, Dihedral, GenDihedral, A4, S4, A5, F5, S5,
        Product, Wreath, Unrecognized
    };
    K kind = K::Unrecognized;
    long n = 0;                    // Cyclic(n)/Dihedral(n), order of Unrecognized
    std::vector<long> factors;     // GenDihedral invariant factors, descending
    std::vector<FamilyTag> parts;  // Product: two parts; Wreath: base

    std::string str() const;
    bool operator==(const FamilyTag& o) const;
    bool operator!=(const FamilyTag& o) const { return !(*this == o); }

    static FamilyTag trivial() { return {K::Trivial, 1, {}, {}}; }
    static FamilyTag cyclic(long n) { return n == 1 ? trivial() : FamilyTag{K::Cyclic, n, {}, {}}; }
    static FamilyTag dihedral(long n) { return {K::Dihedral, n, {}, {}}; }
    static FamilyTag named(K k) { return {k, 0, {}, {}}; }
    static FamilyTag wreath(FamilyTag base) { return {K::Wreath, 0, {}, {std::move(base)}}; }
    static FamilyTag product(FamilyTag x, FamilyTag y);
    static FamilyTag unrecognized(long order) { return {K::Unrecognized, order, {}, {}}; }
};

struct DihedralWitness {
    bool is_dihedral = false;
    std::vector<int> rotation_subgroup;  // cyclic of index 2
    int reflection = -1;                 // involution inverting it
};

DihedralWitness is_dihedral(const GroupTable& g);
FamilyTag recognize_family(const GroupTable& g);

struct Fingerprint {
    long order = 0;
    bool abelian = false;
    std::map<long, long> order_counts;
    long center_order = 0;
    long derived_order = 0;
    bool operator==(const Fingerprint&) const = default;
};
Fingerprint fingerprint(const GroupTable& g);

// ---- permutations (reference models, quintic del Pezzo actions) --------

using Perm = std::vector<uint8_t>;
Perm perm_identity(int deg);
Perm perm_mul(const Perm& f, const Perm& g);  // (f*g)(x) = f(g(x))
struct PermHash {
    size_t operator()(const Perm& p) const {
        size_t h = 1469598103934665603ULL;
        for (uint8_t v : p) h = (h ^ v) * 1099511628211ULL;
        return h;
    }
};
using PermGroup = Closed<Perm, PermHash>;
PermGroup perm_closure(int deg, const std::vector<Perm>& gens, size_t cap = kDefaultClosureCap);

// reference models used for fingerprint comparison
PermGroup model_cyclic(long n);
PermGroup model_dihedral(long n);      // order 2n; n=1 gives C2, n=2 gives V4
PermGroup model_named(FamilyTag::K k); // A4, S4, A5, F5, S5
PermGroup model_product(const PermGroup& x, const PermGroup& y);
PermGroup model_wreath2(const PermGroup& base);  // base wr C2
PermGroup model_for_tag(const FamilyTag& tag);

// orbit checks for a group action given as an explicit table act[g][x]
struct OrbitCheckReport {
    bool ok = false;
    std::string detail;
    struct OrbitInfo {
        std::vector<int> points;
        long sub_orbit_length = 0;
        long sub_orbit_count = 0;
    };
    std::vector<OrbitInfo> orbits;
};
OrbitCheckReport orbit_divisibility_check(const GroupTable& g,
                                          const std::vector<std::vector<int>>& act,
                                          const std::vector<int>& subgroup);

std::vector<long> abelian_invariant_factors(const GroupTable& g,
                                            const std::vector<int>& abelian_subset);

}  // namespace cremona

#pragma once
// Linearizability of a minimal finite group action on a rational Mori fibre
// space: one verdict per surface kind, a self-contained citation for the rule
// applied, and a Sarkisov witness chain where the criterion is constructive.

#include <variant>

#include "cremona/delpezzo.hpp"
#include "cremona/quadric.hpp"
#include "cremona/sarkisov.hpp"

namespace cremona {

enum class SurfaceKind { P2, Quadric, Hirzebruch, DP5, DP6, ConicBundle, DelPezzoLow };

std::string surface_kind_name(SurfaceKind k);

struct SurfaceDescriptor {
    SurfaceKind kind = SurfaceKind::P2;
    long n = 0;   // Hirzebruch index, n >= 1
    long k2 = 0;  // K^2 for ConicBundle (<= 8) and DelPezzoLow (1..4)

    static SurfaceDescriptor p2();
    static SurfaceDescriptor quadric();
    static SurfaceDescriptor hirzebruch(long n);
    static SurfaceDescriptor dp5();
    static SurfaceDescriptor dp6();
    static SurfaceDescriptor conic_bundle(long k2);
    static SurfaceDescriptor del_pezzo_low(long k2);

    std::string str() const;
};

enum class Verdict { Linearizable, NotLinearizable, InvalidInput };

std::string verdict_name(Verdict v);

// order 0 means no group was analyzed for this kind
struct GroupSummary {
    long order = 0;
    FamilyTag family = FamilyTag::trivial();
};

struct Decision {
    Verdict verdict = Verdict::InvalidInput;
    std::string rule;
    std::string citation;
    GroupSummary group;
    std::vector<LinkStep> witness;
    std::string witness_note;  // set instead of steps when the chain needs a
                               // conjugation into standard form first
    std::optional<EuclidWitness> euclid;  // full data behind a quadric-euclid witness
};

const std::vector<std::string>& rule_keys();
std::string rule_citation(const std::string& key);

// generators for the kind at hand: Moebius maps act on the Hirzebruch base,
// permutations of five letters act on the quintic del Pezzo surface
using GeneratorInput = std::variant<std::monostate,
                                    std::vector<MoebiusMap>,
                                    std::vector<QuadricAut>,
                                    std::vector<DP6Aut>,
                                    std::vector<Perm>>;

Decision decide(const SurfaceDescriptor& s, const GeneratorInput& gens,
                size_t cap = kDefaultClosureCap);

Decision decide_p2();
Decision decide_del_pezzo_low(long k2);
Decision decide_conic_bundle(long k2);
Decision decide_hirzebruch(long n, const std::vector<MoebiusMap>& base_gens,
                           size_t cap = kDefaultClosureCap);
Decision decide_quadric(const std::vector<QuadricAut>& gens,
                        size_t cap = kDefaultClosureCap);
Decision decide_dp6(const std::vector<DP6Aut>& gens, size_t cap = kDefaultClosureCap);
Decision decide_dp5(const std::vector<Perm>& gens, size_t cap = kDefaultClosureCap);

// one line per step; throws invalid_input when there is nothing to render
std::vector<std::string> render_witness(const Decision& d);

}  // namespace cremona

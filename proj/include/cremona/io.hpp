#pragma once
// JSON documents in and reports out, plus the exact plane-conjugation
// verifier used by the verify-map subcommand.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cremona/decider.hpp"

namespace cremona {

// carries the JSON path of the offending node, e.g. "generators[0].m"
struct schema_error : invalid_input {
    std::string path;
    schema_error(std::string p, const std::string& reason)
        : invalid_input(p + ": " + reason), path(std::move(p)) {}
};

struct conductor_invalid : invalid_input {
    explicit conductor_invalid(const std::string& what) : invalid_input(what) {}
};

// fewer than half of the sampled points survived every indeterminacy locus
struct too_many_indeterminacy_hits : invalid_input {
    explicit too_many_indeterminacy_hits(const std::string& what) : invalid_input(what) {}
};

struct Options {
    size_t cap = kDefaultClosureCap;
    uint64_t seed = 0;
    long trials = 50;
};

// ---- homogeneous polynomial maps of the plane --------------------------

struct P2Term {
    CycNum coeff;
    std::array<int, 3> exp;
};

struct P2Poly {
    std::vector<P2Term> terms;  // like terms combined, zero coefficients dropped
    int degree = -1;            // -1 for the zero polynomial

    static P2Poly make(uint32_t conductor, std::vector<P2Term> raw);

    uint32_t conductor() const { return conductor_; }
    bool is_zero() const { return terms.empty(); }
    CycNum eval(const P2Triple& p) const;
    std::string str() const;

    uint32_t conductor_ = 1;
};

struct P2RationalMap {
    std::array<P2Poly, 3> comp;
    int degree = 0;

    static P2RationalMap make(std::array<P2Poly, 3> comp);
    static P2RationalMap identity(uint32_t conductor);

    uint32_t conductor() const { return comp[0].conductor(); }
    P2Triple apply(const P2Triple& p) const;  // no projective reduction
    std::string str() const;
};

// c(f(c(p))) ~ target(p) on `trials` seeded integer points in [-20,20]^3;
// points where any stage of the chain vanishes identically are skipped, and
// fewer than trials/2 survivors is an error rather than a verdict
bool verify_p2_conjugation(const P2RationalMap& f, const P2RationalMap& c,
                           const P2RationalMap& target, long trials, uint64_t seed = 0);

// the same sampling for both ways the conjugation identity can be read;
// transported_form checks f(c(p)) ~ c(target(p)), the inverse-free reading
struct ConjugationCheck {
    bool involution_form = false;
    bool transported_form = false;
};
ConjugationCheck verify_p2_both_orderings(const P2RationalMap& f, const P2RationalMap& c,
                                          const P2RationalMap& target, long trials,
                                          uint64_t seed = 0);

// ---- input documents ----------------------------------------------------

struct VerifyMapData {
    P2RationalMap f;
    P2RationalMap conjugator;
    P2RationalMap target;
};

struct InputDocument {
    uint32_t conductor = 1;
    std::optional<SurfaceDescriptor> surface;
    GeneratorInput generators;  // monostate for kinds that take none
    Options options;
    std::optional<VerifyMapData> verify;
    std::vector<ProjPoint> orbit_points;  // attached from --points, not the file
};

InputDocument parse_input(const std::string& text);
nlohmann::ordered_json serialize_input(const InputDocument& doc);

// --points argument: JSON list of [x, y] cyclotomic literal pairs
std::vector<ProjPoint> parse_points(const std::string& text, uint32_t conductor);

// ---- subcommand dispatch -------------------------------------------------

struct RunResult {
    nlohmann::ordered_json report;
    int exit_code = 0;
};

// subcommand is one of decide, classify, goursat, orbits, witness, verify-map
RunResult run(const std::string& subcommand, const InputDocument& doc);

}  // namespace cremona

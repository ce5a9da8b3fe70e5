#pragma once
// Link calculus on Hirzebruch surfaces: orbit-length driven elementary
// transformations, reachability planning toward F_1, the Euclidean
// reduction witness for dihedral actions on P1 x P1, and exact validation
// of witness chains in the group of monomial maps.

#include <optional>
#include <utility>

#include "cremona/cyclo.hpp"
#include "cremona/moebius.hpp"

namespace cremona {

long klein_order(const KleinClass& c);
// special orbit lengths plus the generic length, sorted and deduplicated
std::vector<long> base_spectrum(const KleinClass& c);

struct HirzebruchState {
    long n = 0;
    KleinClass base_class;
    std::vector<long> spectrum;

    static HirzebruchState make(long n, KleinClass base_class);
    std::string str() const;
};

// (x, y) -> (c1 * x^m00 * y^m01, c2 * x^m10 * y^m11), det(m) = +-1
struct MonomialMap {
    std::array<std::array<long, 2>, 2> mat;
    CycNum c1, c2;

    static MonomialMap make(std::array<std::array<long, 2>, 2> mat, CycNum c1, CycNum c2);
    static MonomialMap identity(uint32_t conductor);
    static MonomialMap diag(const CycNum& c1, const CycNum& c2);
    static MonomialMap phi(uint32_t conductor);      // (x, y) -> (x, x^-1 y)
    static MonomialMap phi_pow(uint32_t conductor, long q);
    static MonomialMap swap_xy(uint32_t conductor);  // (x, y) -> (y, x)
    static MonomialMap bb(uint32_t conductor);       // (x, y) -> (1/x, 1/y)

    uint32_t conductor() const { return c1.conductor(); }
    long det() const { return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]; }
    bool is_identity() const;

    MonomialMap compose(const MonomialMap& o) const;  // this after o
    MonomialMap inverse() const;
    MonomialMap conjugate(const MonomialMap& g) const;  // this o g o this^-1

    bool operator==(const MonomialMap& o) const;
    bool operator!=(const MonomialMap& o) const { return !(*this == o); }
    std::string str() const;  // "(x, y) -> (..., ...)" in the variables x, y
};

enum class LinkKind {
    ElementaryOnSigma,
    ElementaryOnC,
    TypeIV,
    Contract,
    Conjugate,
    StereographicProjection,
    BlowUpFixedPoint,
};

std::string link_kind_name(LinkKind k);

struct LinkStep {
    LinkKind kind;
    long length = 0;  // orbit length when elementary
    long from_n = 0;
    long to_n = 0;
    std::optional<MonomialMap> map;
    std::string note;

    static LinkStep elementary_sigma(long from_n, long ell);
    static LinkStep elementary_c(long from_n, long ell);
    static LinkStep type_iv();
    static LinkStep contract();
    static LinkStep conjugate(MonomialMap f, std::string note = "");
    static LinkStep stereographic(std::string note);
    static LinkStep blow_up_fixed_point(std::string note);
    std::string str() const;
};

enum class Side { Sigma, C };

HirzebruchState elementary_transform(const HirzebruchState& s, long ell, Side side);

struct BezoutPlan {
    bool reachable = false;
    std::vector<LinkStep> steps;
    long obstruction = 0;  // gcd of the spectrum when unreachable
};
// fewest steps from F_n to F_1; ties prefer smaller intermediate n, then
// smaller length
BezoutPlan bezout_plan(long n, const std::vector<long>& spectrum);

struct EuclidWitness {
    std::vector<LinkStep> steps;
    std::pair<long, long> final_exponents;             // (gcd(a, b), 0)
    std::vector<std::pair<long, long>> trace;          // exponent pairs visited
    std::vector<MonomialMap> initial_gens, final_gens;
    std::vector<long> spectrum;                        // base lengths after reduction
    long big_n = 0;                                    // the F_N of the first link
};
// input generators (R_M^a, R_M^b) and (B, B) acting as (w^a x, w^b y) and
// (1/x, 1/y); exponents are taken mod M
EuclidWitness euclid_witness(long a, long b, long M);

struct ChainCheck {
    bool ok = false;
    int failing_step = -1;  // -1 when the failure is not tied to one step
    std::string reason;
};
ChainCheck validate_chain(const std::vector<MonomialMap>& initial_gens,
                          const std::vector<LinkStep>& steps,
                          const std::vector<MonomialMap>& final_gens,
                          const std::vector<long>& spectrum, long start_n = 0);

}  // namespace cremona

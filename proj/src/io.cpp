#include "cremona/io.hpp"

#include <map>
#include <random>
#include <utility>
#include <variant>

namespace cremona {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

constexpr uint32_t kMaxConductor = 3000;

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
    throw schema_error(path, reason);
}

std::string join(const std::string& path, const char* key) {
    return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const json& need(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "missing");
    return *it;
}

long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

Rat get_rat_part(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        try {
            Rat r(j.get<std::string>());
            r.canonicalize();
            return r;
        } catch (const std::exception&) {
            fail(path, "not an integer literal");
        }
    }
    fail(path, "expected an integer");
}

CycNum parse_cyclo(const json& j, uint32_t n, const std::string& path) {
    if (j.is_number_integer()) return CycNum::rational(n, Rat(j.get<long>()));
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "terms") fail(join(path, it.key().c_str()), "unknown key");
        const json& terms = need(j, path, "terms");
        if (!terms.is_array()) fail(join(path, "terms"), "expected an array of [p, q, e] terms");
        CycNum acc = CycNum::zero(n);
        for (size_t i = 0; i < terms.size(); ++i) {
            const json& t = terms[i];
            std::string tp = at(join(path, "terms"), i);
            if (!t.is_array() || t.size() != 3) fail(tp, "expected [p, q, e]");
            Rat p = get_rat_part(t[0], at(tp, 0));
            Rat q = get_rat_part(t[1], at(tp, 1));
            long e = get_int(t[2], at(tp, 2));
            if (q == 0) fail(at(tp, 1), "zero denominator");
            acc = acc + CycNum::rational(n, p / q) * CycNum::root(n, e);
        }
        return acc;
    }
    fail(path, "expected an integer or {\"terms\": [[p, q, e], ...]}");
}

json cyclo_json(const CycNum& v) {
    auto emit = [](const mpz_class& z) -> json {
        if (z.fits_slong_p()) return z.get_si();
        return z.get_str();
    };
    if (v.is_rational()) {
        Rat r = v.rational_part();
        if (r.get_den() == 1) return emit(r.get_num());
        return json{{"terms", json::array({json::array({emit(r.get_num()), emit(r.get_den()), 0})})}};
    }
    json terms = json::array();
    const auto& c = v.coeffs();
    for (size_t e = 0; e < c.size(); ++e) {
        if (c[e] == 0) continue;
        terms.push_back(json::array({emit(c[e].get_num()), emit(c[e].get_den()), (long)e}));
    }
    return json{{"terms", terms}};
}

MoebiusMap parse_mat2(const json& j, uint32_t n, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        fail(path, "expected a 2x2 matrix [[a, b], [c, d]]");
    CycNum a = parse_cyclo(j[0][0], n, at(at(path, 0), 0));
    CycNum b = parse_cyclo(j[0][1], n, at(at(path, 0), 1));
    CycNum c = parse_cyclo(j[1][0], n, at(at(path, 1), 0));
    CycNum d = parse_cyclo(j[1][1], n, at(at(path, 1), 1));
    try {
        return MoebiusMap::make(a, b, c, d);
    } catch (const invalid_input& e) {
        fail(path, e.what());
    }
}

json mat2_json(const MoebiusMap& m) {
    return json::array({json::array({cyclo_json(m.m[0][0]), cyclo_json(m.m[0][1])}),
                        json::array({cyclo_json(m.m[1][0]), cyclo_json(m.m[1][1])})});
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) fail(join(path, it.key().c_str()), "unknown key");
    }
}

QuadricAut parse_quadric_gen(const json& j, uint32_t n, const std::string& path) {
    if (!j.is_object()) fail(path, "expected {\"m\": matrix, \"n\": matrix, \"swap\": bool}");
    reject_unknown(j, path, {"m", "n", "swap"});
    MoebiusMap m = parse_mat2(need(j, path, "m"), n, join(path, "m"));
    MoebiusMap mn = parse_mat2(need(j, path, "n"), n, join(path, "n"));
    bool swaps = false;
    if (j.contains("swap")) {
        if (!j["swap"].is_boolean()) fail(join(path, "swap"), "expected a boolean");
        swaps = j["swap"].get<bool>();
    }
    return QuadricAut::make(m, mn, swaps);
}

DP6Aut parse_dp6_gen(const json& j, uint32_t n, const std::string& path) {
    if (!j.is_object()) fail(path, "expected {\"torus\": [c0, c1, c2], \"hex\": word}");
    reject_unknown(j, path, {"torus", "hex"});
    std::array<CycNum, 3> torus = {CycNum::one(n), CycNum::one(n), CycNum::one(n)};
    if (j.contains("torus")) {
        const json& t = j["torus"];
        std::string tp = join(path, "torus");
        if (!t.is_array() || t.size() != 3) fail(tp, "expected three coordinates");
        for (size_t i = 0; i < 3; ++i) torus[i] = parse_cyclo(t[i], n, at(tp, i));
    }
    HexEl hex;
    if (j.contains("hex")) {
        if (!j["hex"].is_string()) fail(join(path, "hex"), "expected a word over r, s");
        try {
            hex = hex_parse(j["hex"].get<std::string>());
        } catch (const invalid_input& e) {
            fail(join(path, "hex"), e.what());
        }
    }
    try {
        return DP6Aut::make(torus, hex);
    } catch (const invalid_input& e) {
        fail(path, e.what());
    }
}

Perm parse_dp5_gen(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected {\"perm\": [i1, ..., i5]}");
    reject_unknown(j, path, {"perm"});
    const json& p = need(j, path, "perm");
    std::string pp = join(path, "perm");
    if (!p.is_array() || p.size() != 5) fail(pp, "expected five images");
    Perm out(5);
    std::array<bool, 5> seen = {};
    for (size_t i = 0; i < 5; ++i) {
        long v = get_int(p[i], at(pp, i));
        if (v < 1 || v > 5) fail(at(pp, i), "image out of range 1..5");
        if (seen[v - 1]) fail(pp, "not a permutation: image " + std::to_string(v) + " repeats");
        seen[v - 1] = true;
        out[i] = (uint8_t)(v - 1);
    }
    return out;
}

SurfaceDescriptor parse_surface(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected {\"kind\": ..., ...}");
    const json& kj = need(j, path, "kind");
    if (!kj.is_string()) fail(join(path, "kind"), "expected a string");
    std::string kind = kj.get<std::string>();
    try {
        if (kind == "p2") {
            reject_unknown(j, path, {"kind"});
            return SurfaceDescriptor::p2();
        }
        if (kind == "quadric") {
            reject_unknown(j, path, {"kind"});
            return SurfaceDescriptor::quadric();
        }
        if (kind == "hirzebruch") {
            reject_unknown(j, path, {"kind", "n"});
            return SurfaceDescriptor::hirzebruch(get_int(need(j, path, "n"), join(path, "n")));
        }
        if (kind == "dp6") {
            reject_unknown(j, path, {"kind"});
            return SurfaceDescriptor::dp6();
        }
        if (kind == "dp5") {
            reject_unknown(j, path, {"kind"});
            return SurfaceDescriptor::dp5();
        }
        if (kind == "conic-bundle") {
            reject_unknown(j, path, {"kind", "k2"});
            return SurfaceDescriptor::conic_bundle(get_int(need(j, path, "k2"), join(path, "k2")));
        }
        if (kind == "del-pezzo") {
            reject_unknown(j, path, {"kind", "k2"});
            return SurfaceDescriptor::del_pezzo_low(get_int(need(j, path, "k2"), join(path, "k2")));
        }
    } catch (const schema_error&) {
        throw;
    } catch (const invalid_input& e) {
        fail(path, e.what());
    }
    fail(join(path, "kind"),
         "unknown kind; expected p2, quadric, hirzebruch, dp6, dp5, conic-bundle or del-pezzo");
}

GeneratorInput parse_generators(const json* j, const SurfaceDescriptor& s, uint32_t n) {
    const std::string path = "generators";
    bool empty = j == nullptr || (j->is_array() && j->empty());
    if (j != nullptr && !j->is_array()) fail(path, "expected an array");
    switch (s.kind) {
        case SurfaceKind::P2:
        case SurfaceKind::ConicBundle:
        case SurfaceKind::DelPezzoLow:
            if (!empty) fail(path, "this surface kind takes no generators");
            return std::monostate{};
        case SurfaceKind::Hirzebruch: {
            std::vector<MoebiusMap> gens;
            if (empty) gens.push_back(MoebiusMap::identity(n));
            else
                for (size_t i = 0; i < j->size(); ++i)
                    gens.push_back(parse_mat2((*j)[i], n, at(path, i)));
            return gens;
        }
        case SurfaceKind::Quadric: {
            std::vector<QuadricAut> gens;
            if (empty) gens.push_back(QuadricAut::identity(n));
            else
                for (size_t i = 0; i < j->size(); ++i)
                    gens.push_back(parse_quadric_gen((*j)[i], n, at(path, i)));
            return gens;
        }
        case SurfaceKind::DP6: {
            std::vector<DP6Aut> gens;
            if (empty) gens.push_back(DP6Aut::identity(n));
            else
                for (size_t i = 0; i < j->size(); ++i)
                    gens.push_back(parse_dp6_gen((*j)[i], n, at(path, i)));
            return gens;
        }
        case SurfaceKind::DP5: {
            std::vector<Perm> gens;
            if (empty) gens.push_back(Perm{0, 1, 2, 3, 4});
            else
                for (size_t i = 0; i < j->size(); ++i)
                    gens.push_back(parse_dp5_gen((*j)[i], at(path, i)));
            return gens;
        }
    }
    throw internal_error("unhandled surface kind in generator parsing");
}

P2Poly parse_poly(const json& j, uint32_t n, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of [coefficient, [ex, ey, ez]] terms");
    std::vector<P2Term> terms;
    for (size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        std::string tp = at(path, i);
        if (!t.is_array() || t.size() != 2) fail(tp, "expected [coefficient, [ex, ey, ez]]");
        CycNum c = parse_cyclo(t[0], n, at(tp, 0));
        const json& e = t[1];
        if (!e.is_array() || e.size() != 3) fail(at(tp, 1), "expected three exponents");
        std::array<int, 3> exp;
        for (size_t k = 0; k < 3; ++k) {
            long v = get_int(e[k], at(at(tp, 1), k));
            if (v < 0) fail(at(at(tp, 1), k), "negative exponent");
            exp[k] = (int)v;
        }
        terms.push_back({std::move(c), exp});
    }
    try {
        return P2Poly::make(n, std::move(terms));
    } catch (const invalid_input& e) {
        fail(path, e.what());
    }
}

P2RationalMap parse_p2_map(const json& j, uint32_t n, const std::string& path) {
    if (!j.is_array() || j.size() != 3) fail(path, "expected three polynomial components");
    std::array<P2Poly, 3> comp = {parse_poly(j[0], n, at(path, 0)),
                                  parse_poly(j[1], n, at(path, 1)),
                                  parse_poly(j[2], n, at(path, 2))};
    try {
        return P2RationalMap::make(std::move(comp));
    } catch (const invalid_input& e) {
        fail(path, e.what());
    }
}

json poly_json(const P2Poly& p) {
    json out = json::array();
    for (const auto& t : p.terms)
        out.push_back(json::array(
            {cyclo_json(t.coeff), json::array({t.exp[0], t.exp[1], t.exp[2]})}));
    return out;
}

json p2_map_json(const P2RationalMap& m) {
    return json::array({poly_json(m.comp[0]), poly_json(m.comp[1]), poly_json(m.comp[2])});
}

Options parse_options(const json* j) {
    Options o;
    if (j == nullptr) return o;
    const std::string path = "options";
    if (!j->is_object()) fail(path, "expected an object");
    reject_unknown(*j, path, {"cap", "seed", "trials"});
    if (j->contains("cap")) {
        long cap = get_int((*j)["cap"], join(path, "cap"));
        if (cap < 1) fail(join(path, "cap"), "must be positive");
        o.cap = (size_t)cap;
    }
    if (j->contains("seed")) {
        long seed = get_int((*j)["seed"], join(path, "seed"));
        if (seed < 0) fail(join(path, "seed"), "must be nonnegative");
        o.seed = (uint64_t)seed;
    }
    if (j->contains("trials")) {
        long trials = get_int((*j)["trials"], join(path, "trials"));
        if (trials < 1) fail(join(path, "trials"), "must be positive");
        o.trials = trials;
    }
    return o;
}

}  // namespace

// ---- documents -----------------------------------------------------------

InputDocument parse_input(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("document", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("document", "expected a JSON object");

    InputDocument doc;
    auto cit = j.find("conductor");
    if (cit == j.end()) throw conductor_invalid("conductor: missing");
    if (!cit->is_number_integer()) throw conductor_invalid("conductor: expected an integer");
    long n = cit->get<long>();
    if (n < 1) throw conductor_invalid("conductor: must be at least 1");
    if (n > (long)kMaxConductor)
        throw conductor_invalid("conductor: exceeds the supported bound " +
                                std::to_string(kMaxConductor));
    doc.conductor = (uint32_t)n;

    doc.options = parse_options(j.contains("options") ? &j["options"] : nullptr);

    if (j.contains("surface")) {
        doc.surface = parse_surface(j["surface"], "surface");
        doc.generators = parse_generators(j.contains("generators") ? &j["generators"] : nullptr,
                                          *doc.surface, doc.conductor);
    } else if (j.contains("generators")) {
        fail("generators", "no surface to attach generators to");
    }

    bool f = j.contains("f"), c = j.contains("conjugator"), t = j.contains("target");
    if (f || c || t) {
        if (!(f && c && t)) fail("document", "f, conjugator and target must appear together");
        VerifyMapData v = {parse_p2_map(j["f"], doc.conductor, "f"),
                           parse_p2_map(j["conjugator"], doc.conductor, "conjugator"),
                           parse_p2_map(j["target"], doc.conductor, "target")};
        doc.verify = std::move(v);
    }

    if (!doc.surface && !doc.verify) fail("surface", "missing");
    return doc;
}

nlohmann::ordered_json serialize_input(const InputDocument& doc) {
    ordered out;
    out["conductor"] = doc.conductor;
    if (doc.surface) {
        const SurfaceDescriptor& s = *doc.surface;
        ordered sj;
        switch (s.kind) {
            case SurfaceKind::P2: sj["kind"] = "p2"; break;
            case SurfaceKind::Quadric: sj["kind"] = "quadric"; break;
            case SurfaceKind::Hirzebruch:
                sj["kind"] = "hirzebruch";
                sj["n"] = s.n;
                break;
            case SurfaceKind::DP6: sj["kind"] = "dp6"; break;
            case SurfaceKind::DP5: sj["kind"] = "dp5"; break;
            case SurfaceKind::ConicBundle:
                sj["kind"] = "conic-bundle";
                sj["k2"] = s.k2;
                break;
            case SurfaceKind::DelPezzoLow:
                sj["kind"] = "del-pezzo";
                sj["k2"] = s.k2;
                break;
        }
        out["surface"] = sj;

        auto check_conductor = [&](uint32_t got) {
            if (got != doc.conductor)
                throw invalid_input("generator conductor " + std::to_string(got) +
                                    " does not match the document conductor " +
                                    std::to_string(doc.conductor));
        };
        json gens = json::array();
        if (const auto* mm = std::get_if<std::vector<MoebiusMap>>(&doc.generators)) {
            for (const auto& g : *mm) {
                check_conductor(g.conductor());
                gens.push_back(mat2_json(g));
            }
        } else if (const auto* qq = std::get_if<std::vector<QuadricAut>>(&doc.generators)) {
            for (const auto& g : *qq) {
                check_conductor(g.conductor());
                json gj{{"m", mat2_json(g.m)}, {"n", mat2_json(g.n)}};
                if (g.swaps) gj["swap"] = true;
                gens.push_back(std::move(gj));
            }
        } else if (const auto* dd = std::get_if<std::vector<DP6Aut>>(&doc.generators)) {
            for (const auto& g : *dd) {
                check_conductor(g.conductor());
                std::string word(g.hex.k, 'r');
                if (g.hex.s) word += 's';
                gens.push_back(json{{"torus", json::array({cyclo_json(g.torus[0]),
                                                           cyclo_json(g.torus[1]),
                                                           cyclo_json(g.torus[2])})},
                                    {"hex", word}});
            }
        } else if (const auto* pp = std::get_if<std::vector<Perm>>(&doc.generators)) {
            for (const auto& g : *pp) {
                json perm = json::array();
                for (uint8_t v : g) perm.push_back((int)v + 1);
                gens.push_back(json{{"perm", perm}});
            }
        }
        if (!gens.empty()) out["generators"] = gens;
    }
    Options dflt;
    if (doc.options.cap != dflt.cap || doc.options.seed != dflt.seed ||
        doc.options.trials != dflt.trials)
        out["options"] = ordered{{"cap", doc.options.cap},
                                 {"seed", doc.options.seed},
                                 {"trials", doc.options.trials}};
    if (doc.verify) {
        for (const P2RationalMap* m :
             {&doc.verify->f, &doc.verify->conjugator, &doc.verify->target})
            if (m->conductor() != doc.conductor)
                throw invalid_input("verify map conductor " + std::to_string(m->conductor()) +
                                    " does not match the document conductor " +
                                    std::to_string(doc.conductor));
        out["f"] = p2_map_json(doc.verify->f);
        out["conjugator"] = p2_map_json(doc.verify->conjugator);
        out["target"] = p2_map_json(doc.verify->target);
    }
    return out;
}

std::vector<ProjPoint> parse_points(const std::string& text, uint32_t conductor) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("points", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_array()) fail("points", "expected a list of [x, y] pairs");
    std::vector<ProjPoint> out;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string pp = at("points", i);
        if (!j[i].is_array() || j[i].size() != 2) fail(pp, "expected [x, y]");
        CycNum x = parse_cyclo(j[i][0], conductor, at(pp, 0));
        CycNum y = parse_cyclo(j[i][1], conductor, at(pp, 1));
        try {
            out.push_back(ProjPoint::make(x, y));
        } catch (const invalid_input& e) {
            fail(pp, e.what());
        }
    }
    return out;
}

// ---- plane polynomial maps -------------------------------------------------

P2Poly P2Poly::make(uint32_t conductor, std::vector<P2Term> raw) {
    std::map<std::array<int, 3>, CycNum> combined;
    for (auto& t : raw) {
        if (t.coeff.conductor() != conductor)
            throw invalid_input("coefficient conductor does not match the document");
        auto it = combined.find(t.exp);
        if (it == combined.end()) combined.emplace(t.exp, std::move(t.coeff));
        else it->second = it->second + t.coeff;
    }
    P2Poly p;
    p.conductor_ = conductor;
    for (auto& [exp, c] : combined) {
        if (c.is_zero()) continue;
        int deg = exp[0] + exp[1] + exp[2];
        if (p.degree >= 0 && deg != p.degree)
            throw invalid_input("not homogeneous: terms of degree " + std::to_string(p.degree) +
                                " and " + std::to_string(deg));
        p.degree = deg;
        p.terms.push_back({c, exp});
    }
    return p;
}

CycNum P2Poly::eval(const P2Triple& p) const {
    CycNum acc = CycNum::zero(conductor_);
    for (const auto& t : terms) {
        CycNum v = t.coeff;
        for (int i = 0; i < 3; ++i)
            if (t.exp[i] > 0) v = v * p[(size_t)i].pow(t.exp[i]);
        acc = acc + v;
    }
    return acc;
}

std::string P2Poly::str() const {
    if (terms.empty()) return "0";
    std::string out;
    const char* vars = "xyz";
    for (const auto& t : terms) {
        if (!out.empty()) out += " + ";
        std::string c = t.coeff.str();
        bool simple = c.find_first_of("+- *") == std::string::npos;
        std::string mono;
        for (int i = 0; i < 3; ++i) {
            if (t.exp[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
        }
        if (mono.empty()) out += simple ? c : "(" + c + ")";
        else if (t.coeff.is_one()) out += mono;
        else out += (simple ? c : "(" + c + ")") + "*" + mono;
    }
    return out;
}

P2RationalMap P2RationalMap::make(std::array<P2Poly, 3> comp) {
    int degree = -1;
    for (const auto& p : comp) {
        if (p.is_zero()) continue;
        if (degree >= 0 && p.degree != degree)
            throw invalid_input("components of degree " + std::to_string(degree) + " and " +
                                std::to_string(p.degree));
        degree = p.degree;
    }
    if (degree < 0) throw invalid_input("all three components are zero");
    for (const auto& p : comp)
        if (p.conductor() != comp[0].conductor())
            throw invalid_input("components live in different cyclotomic fields");
    P2RationalMap m;
    m.comp = std::move(comp);
    m.degree = degree;
    return m;
}

P2RationalMap P2RationalMap::identity(uint32_t conductor) {
    CycNum one = CycNum::one(conductor);
    return make({P2Poly::make(conductor, {{one, {1, 0, 0}}}),
                 P2Poly::make(conductor, {{one, {0, 1, 0}}}),
                 P2Poly::make(conductor, {{one, {0, 0, 1}}})});
}

P2Triple P2RationalMap::apply(const P2Triple& p) const {
    return {comp[0].eval(p), comp[1].eval(p), comp[2].eval(p)};
}

std::string P2RationalMap::str() const {
    return "[" + comp[0].str() + " : " + comp[1].str() + " : " + comp[2].str() + "]";
}

// ---- conjugation verifier --------------------------------------------------

namespace {

bool all_zero(const P2Triple& t) {
    return t[0].is_zero() && t[1].is_zero() && t[2].is_zero();
}

bool proj_eq(const P2Triple& a, const P2Triple& b) {
    return (a[0] * b[1] - a[1] * b[0]).is_zero() && (a[0] * b[2] - a[2] * b[0]).is_zero() &&
           (a[1] * b[2] - a[2] * b[1]).is_zero();
}

struct SampleCheck {
    bool involution_agreed = true;
    bool transported_agreed = true;
    long involution_checked = 0;
    long transported_checked = 0;
};

// one pass over the seeded points, feeding both readings of the identity
SampleCheck sample_points(const P2RationalMap& f, const P2RationalMap& c,
                          const P2RationalMap& target, long trials, uint64_t seed) {
    if (trials < 1) throw invalid_input("trials must be at least 1");
    uint32_t n = f.conductor();
    if (c.conductor() != n || target.conductor() != n)
        throw invalid_input("maps live in different cyclotomic fields");
    std::mt19937_64 rng(seed);
    auto draw = [&] { return CycNum::rational(n, (long)(rng() % 41) - 20, 1); };
    SampleCheck out;
    for (long t = 0; t < trials; ++t) {
        P2Triple p = {draw(), draw(), draw()};
        if (all_zero(p)) continue;
        P2Triple cp = c.apply(p);
        if (all_zero(cp)) continue;
        P2Triple fcp = f.apply(cp);
        if (all_zero(fcp)) continue;
        P2Triple tp = target.apply(p);

        P2Triple cfcp = c.apply(fcp);
        if (!all_zero(cfcp) && !all_zero(tp)) {
            ++out.involution_checked;
            if (!proj_eq(cfcp, tp)) out.involution_agreed = false;
        }
        P2Triple ctp = all_zero(tp) ? tp : c.apply(tp);
        if (!all_zero(ctp)) {
            ++out.transported_checked;
            if (!proj_eq(fcp, ctp)) out.transported_agreed = false;
        }
    }
    return out;
}

void require_enough(long checked, long trials) {
    if (2 * checked < trials)
        throw too_many_indeterminacy_hits(
            "only " + std::to_string(checked) + " of " + std::to_string(trials) +
            " sample points avoided every indeterminacy locus");
}

}  // namespace

bool verify_p2_conjugation(const P2RationalMap& f, const P2RationalMap& c,
                           const P2RationalMap& target, long trials, uint64_t seed) {
    SampleCheck s = sample_points(f, c, target, trials, seed);
    if (!s.involution_agreed) return false;
    require_enough(s.involution_checked, trials);
    return true;
}

ConjugationCheck verify_p2_both_orderings(const P2RationalMap& f, const P2RationalMap& c,
                                          const P2RationalMap& target, long trials,
                                          uint64_t seed) {
    SampleCheck s = sample_points(f, c, target, trials, seed);
    require_enough(std::max(s.involution_checked, s.transported_checked), trials);
    ConjugationCheck out;
    out.involution_form = s.involution_agreed && 2 * s.involution_checked >= trials;
    out.transported_form = s.transported_agreed && 2 * s.transported_checked >= trials;
    return out;
}

// ---- reports ---------------------------------------------------------------

namespace {

std::string decision_string(Verdict v) {
    switch (v) {
        case Verdict::Linearizable: return "linearizable";
        case Verdict::NotLinearizable: return "not-linearizable";
        case Verdict::InvalidInput: return "invalid-input";
    }
    throw internal_error("unhandled verdict");
}

ordered group_json(long order, const FamilyTag& family) {
    return ordered{{"order", order}, {"family", family.str()}};
}

ordered decide_report(const Decision& d) {
    ordered r;
    r["decision"] = decision_string(d.verdict);
    r["group"] = group_json(d.group.order, d.group.family);
    r["reason"] = ordered{{"rule", d.rule}, {"citation", d.citation}};
    ordered witness = ordered::array();
    if (d.verdict == Verdict::Linearizable)
        for (const auto& line : render_witness(d)) witness.push_back(line);
    r["witness"] = witness;
    return r;
}

const SurfaceDescriptor& need_surface(const InputDocument& doc) {
    if (!doc.surface) throw schema_error("surface", "missing");
    return *doc.surface;
}

RunResult run_decide(const InputDocument& doc, bool with_trace) {
    Decision d = decide(need_surface(doc), doc.generators, doc.options.cap);
    ordered r = decide_report(d);
    if (with_trace && d.euclid) {
        const EuclidWitness& e = *d.euclid;
        ordered trace = ordered::array();
        for (const auto& [a, b] : e.trace) trace.push_back(ordered::array({a, b}));
        r["euclid"] = ordered{{"big_n", e.big_n},
                              {"spectrum", e.spectrum},
                              {"trace", trace},
                              {"final_exponents",
                               ordered::array({e.final_exponents.first, e.final_exponents.second})}};
    }
    return {r, d.verdict == Verdict::InvalidInput ? 2 : 0};
}

RunResult run_classify(const InputDocument& doc) {
    const SurfaceDescriptor& s = need_surface(doc);
    long order = 0;
    FamilyTag family = FamilyTag::trivial();
    switch (s.kind) {
        case SurfaceKind::Hirzebruch: {
            auto g = moebius_closure(std::get<std::vector<MoebiusMap>>(doc.generators),
                                     doc.options.cap);
            order = (long)g.elems().size();
            family = klein_classify(g);
            break;
        }
        case SurfaceKind::Quadric: {
            auto ra = analyze_rulings(std::get<std::vector<QuadricAut>>(doc.generators),
                                      doc.options.cap);
            order = ra.full.table.size();
            family = recognize_family(ra.full.table);
            break;
        }
        case SurfaceKind::DP6: {
            auto an = dp6_analyze(std::get<std::vector<DP6Aut>>(doc.generators), doc.options.cap);
            order = an.full.table.size();
            family = recognize_family(an.full.table);
            break;
        }
        case SurfaceKind::DP5: {
            auto an = dp5_analyze(dp5_group(std::get<std::vector<Perm>>(doc.generators)));
            order = an.order;
            family = an.family;
            break;
        }
        default:
            throw invalid_input("this surface kind carries no generator data to classify");
    }
    ordered r;
    r["group"] = group_json(order, family);
    return {r, 0};
}

RunResult run_goursat(const InputDocument& doc) {
    const SurfaceDescriptor& s = need_surface(doc);
    if (s.kind != SurfaceKind::Quadric)
        throw invalid_input("goursat data requires a quadric document");
    auto ra = analyze_rulings(std::get<std::vector<QuadricAut>>(doc.generators), doc.options.cap);
    const GoursatData& gd = ra.goursat;
    ordered r;
    r["rank"] = ra.rank;
    r["order"] = ra.full.table.size();
    r["swap"] = ra.swap_rep.has_value();
    r["h1"] = group_json((long)ra.proj1.elems().size(), ra.h1_class);
    r["h2"] = group_json((long)ra.proj2.elems().size(), ra.h2_class);
    r["kernel"] = ordered{{"order", (long)ra.kernel_indices.size()},
                          {"image1_order", (long)gd.g1.size()},
                          {"image2_order", (long)gd.g2.size()},
                          {"kernel1_order", (long)gd.h1.size()},
                          {"kernel2_order", (long)gd.h2.size()},
                          {"quotient_order", gd.q.size()}};
    return {r, 0};
}

RunResult run_orbits(const InputDocument& doc) {
    const SurfaceDescriptor& s = need_surface(doc);
    if (s.kind != SurfaceKind::Hirzebruch)
        throw invalid_input("orbit lengths are computed for the base action of a "
                            "hirzebruch document");
    if (doc.orbit_points.empty())
        throw schema_error("points", "no points given; pass --points '[[x, y], ...]'");
    auto g = moebius_closure(std::get<std::vector<MoebiusMap>>(doc.generators), doc.options.cap);
    ordered r;
    r["group"] = group_json((long)g.elems().size(), klein_classify(g));
    ordered orbits = ordered::array();
    for (const auto& p : doc.orbit_points) {
        auto orb = orbit(g, p);
        orbits.push_back(ordered{{"point", p.str()}, {"length", (long)orb.size()}});
    }
    r["orbits"] = orbits;
    return {r, 0};
}

RunResult run_verify_map(const InputDocument& doc) {
    if (!doc.verify) throw schema_error("f", "verify-map needs f, conjugator and target");
    const VerifyMapData& v = *doc.verify;
    ConjugationCheck chk = verify_p2_both_orderings(v.f, v.conjugator, v.target,
                                                    doc.options.trials, doc.options.seed);
    ordered r;
    r["verified"] = chk.involution_form || chk.transported_form;
    r["orderings"] = ordered{{"involution-form", chk.involution_form},
                             {"transported-form", chk.transported_form}};
    r["trials"] = doc.options.trials;
    r["seed"] = doc.options.seed;
    r["degrees"] = ordered{{"f", v.f.degree},
                           {"conjugator", v.conjugator.degree},
                           {"target", v.target.degree}};
    return {r, 0};
}

}  // namespace

RunResult run(const std::string& subcommand, const InputDocument& doc) {
    if (subcommand == "decide") return run_decide(doc, false);
    if (subcommand == "witness") return run_decide(doc, true);
    if (subcommand == "classify") return run_classify(doc);
    if (subcommand == "goursat") return run_goursat(doc);
    if (subcommand == "orbits") return run_orbits(doc);
    if (subcommand == "verify-map") return run_verify_map(doc);
    throw invalid_input("unknown subcommand: " + subcommand);
}

}  // namespace cremona

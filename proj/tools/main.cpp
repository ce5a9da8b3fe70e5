#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cremona/io.hpp"

namespace {

using cremona::InputDocument;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cremona::invalid_input("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void emit_error(const std::string& type, const std::string& message, const std::string& path = "") {
    nlohmann::ordered_json e;
    e["error"] = nlohmann::ordered_json{{"type", type}, {"message", message}};
    if (!path.empty()) e["error"]["path"] = path;
    std::cout << e.dump(2) << "\n";
}

int execute(const std::string& subcommand, const std::string& file, const std::string& points) {
    try {
        InputDocument doc = cremona::parse_input(read_file(file));
        if (const char* cap = std::getenv("CREMONA_CAP")) {
            char* end = nullptr;
            long v = std::strtol(cap, &end, 10);
            if (end == cap || *end != '\0' || v < 1)
                throw cremona::invalid_input("CREMONA_CAP must be a positive integer");
            doc.options.cap = (size_t)v;
        }
        if (!points.empty()) doc.orbit_points = cremona::parse_points(points, doc.conductor);
        cremona::RunResult rr = cremona::run(subcommand, doc);
        std::cout << rr.report.dump(2) << "\n";
        return rr.exit_code;
    } catch (const cremona::schema_error& e) {
        emit_error("schema", e.what(), e.path);
        return 2;
    } catch (const cremona::conductor_invalid& e) {
        emit_error("conductor", e.what());
        return 2;
    } catch (const cremona::needs_extension& e) {
        emit_error("needs-extension", e.what());
        return 2;
    } catch (const cremona::group_too_large& e) {
        emit_error("group-too-large", e.what());
        return 2;
    } catch (const cremona::invalid_input& e) {
        emit_error("invalid-input", e.what());
        return 2;
    } catch (const cremona::internal_error& e) {
        emit_error("internal", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("unexpected", e.what());
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linearizability of finite group actions on rational surfaces, "
                 "decided in exact cyclotomic arithmetic"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"decide", "verdict, rule and citation for an input document"},
        {"classify", "group order and family for the document's generators"},
        {"goursat", "ruling analysis of a quadric document: rank, factor images, Goursat data"},
        {"orbits", "orbit lengths of given base points under a hirzebruch document"},
        {"witness", "decide plus the full witness chain and Euclid trace"},
        {"verify-map", "check a plane conjugation c o f o c = target on seeded sample points"},
    };

    std::string chosen, file, points;
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("file", file, "input document (JSON)")->required();
        if (std::string(s.name) == "orbits")
            sub->add_option("--points", points, "JSON list of [x, y] base points");
        sub->callback([&chosen, name = std::string(s.name)] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return execute(chosen, file, points);
}

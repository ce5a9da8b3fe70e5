#pragma once
#include <stdexcept>
#include <string>

namespace cremona {

// Input data fails validation (bad conductor, singular matrix, point off the
// surface, malformed schema, ...). Maps to CLI exit code 2.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A computation would leave the working field Q(w_N). Carries the suggested
// conductor multiplier; retrying at lcm(N, multiplier) makes the value exact.
struct needs_extension : std::runtime_error {
    long multiplier;
    explicit needs_extension(long m)
        : std::runtime_error("value lies outside the working cyclotomic field; "
                             "suggested conductor multiplier " + std::to_string(m)),
          multiplier(m) {}
    needs_extension(long m, const std::string& what) : std::runtime_error(what), multiplier(m) {}
};

// Closure or orbit enumeration exceeded the configured cap.
struct group_too_large : std::runtime_error {
    explicit group_too_large(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant broken. Maps to CLI exit code 1.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace cremona

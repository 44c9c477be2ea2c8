#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace tva {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar. boost keeps it reduced with positive denominator,
// which is exactly the Scalar invariant we need everywhere.
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int rat_sign(const Rat& r) { return r.sign(); }

/// Render as "p" or "p/q".
inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

/// Parse "p" or "p/q" (exact, no floating point). Returns nullopt on malformed input.
std::optional<Rat> rat_parse(const std::string& text);

struct TvaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat_pow(Rat base, unsigned e) {
    Rat acc = 1;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace tva

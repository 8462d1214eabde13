#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace coho {

// Exact arithmetic scalars. Integer lattice work uses Int (unbounded);
// element coordinates stay within int64 because moduli are capped at
// construction time.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using i64 = std::int64_t;

/// Base class for all toolkit errors carrying a short machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

/// Domain errors: invalid groups, broken cocycles, malformed inputs.
class ValidationError : public Error {
public:
    ValidationError(std::string kind, const std::string& msg)
        : Error(std::move(kind), msg) {}
};

/// Resource-cap refusals (the computation would exceed a configured bound).
class SizeError : public Error {
public:
    SizeError(const std::string& msg) : Error("size-cap", msg) {}
};

inline i64 to_i64(const Int& v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw Error("overflow", "integer does not fit in 64 bits");
    return static_cast<i64>(v);
}

/// Canonical residue of v modulo m (m >= 1), in [0, m).
inline i64 mod_reduce(i64 v, i64 m) {
    i64 r = v % m;
    return r < 0 ? r + m : r;
}

/// Parses "p", "-p" or "p/q" into an exact rational.
inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ValidationError("bad-rational", "zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const ValidationError&) {
        throw;
    } catch (const std::runtime_error&) {
        throw ValidationError("bad-rational", "cannot parse rational '" + s + "'");
    }
}

/// Canonical text form: lowest terms, "p" when the denominator is 1.
inline std::string format_rational(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Deterministic uniform draw in [0, n); mt19937_64 output is standardized,
/// std::uniform_int_distribution is not.
inline i64 rand_below(std::mt19937_64& rng, i64 n) {
    return n <= 1 ? 0 : static_cast<i64>(rng() % static_cast<std::uint64_t>(n));
}

} // namespace coho

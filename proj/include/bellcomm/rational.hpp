#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellcomm {

/// Exact rational number (GMP-backed). All probabilities and polytope data
/// are kept in this type end to end; doubles appear only in entropy values
/// and quantum expectation values.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Thrown when an enumeration or vertex computation would exceed the
/// configured budget. Carries a size estimate; callers never truncate.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Parses "3/4", "-1/2", "7". Throws std::invalid_argument on malformed input.
Rat parse_rational(const std::string& text);

/// Canonical text form, "n" or "n/d" with d > 1.
std::string rat_str(const Rat& r);

/// Best rational approximation of x with denominator <= max_denominator,
/// by continued fractions.
Rat rational_from_double(double x, std::uint64_t max_denominator);

}  // namespace bellcomm

// Exact rational arithmetic used throughout the library. Every probability
// share, consumption amount and LP coefficient is a Rational; no floating
// point ever enters a computation path. Decimal output is presentation only.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace prkit {

// Arbitrary-precision rational, kept in lowest terms with a positive
// denominator by the backend after every operation. Expression templates
// are disabled so arithmetic composes with std::min and friends.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

// Renders "p/q", or just "p" when q == 1.
std::string to_fraction_string(const Rational& r);

// Rounded decimal rendering with the given number of fractional digits.
// Marked lossy by design; never feed the result back into computations.
std::string to_decimal_string(const Rational& r, int digits = 6);

// Parses "p", "-p", or "p/q" (q > 0 after sign normalization).
// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace prkit

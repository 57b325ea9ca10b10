#ifndef ROBUSTMATCH_RATIONAL_HPP_
#define ROBUSTMATCH_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace robustmatch {

// All costs, probabilities and objective values are exact rationals.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& q);

// Decimal rendering for human-readable output only.
std::string to_decimal_string(const Rational& q, int digits = 6);

// Accepts "p/q", "p", or a finite decimal such as "0.25" (converted exactly).
// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_RATIONAL_HPP_

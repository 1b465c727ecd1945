#ifndef IPALG_RATIONAL_HPP
#define IPALG_RATIONAL_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace ipalg {

// Arbitrary-precision rational. GMP keeps values reduced with positive
// denominator as long as they are built through arithmetic or through
// parse_rational below (the raw string constructor does not canonicalize,
// so it is never used).
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rat>;

// Parses "p", "-p" or "p/q" (q > 0 after sign normalization). Anything
// else, in particular floating literals like "0.5", is rejected.
Rat parse_rational(const std::string& text);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string rat_to_string(const Rat& value);

bool is_zero_vec(const RatVec& v);

// v >= 0 componentwise and v != 0.
bool is_nonneg_nonzero(const RatVec& v);

// Lexicographic order on rational vectors of equal length.
bool lex_less(const RatVec& a, const RatVec& b);

}  // namespace ipalg

#endif

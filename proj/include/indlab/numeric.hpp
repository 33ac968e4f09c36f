#pragma once
// Exact arithmetic helpers shared by all modules: unbounded integers,
// rationals, certified rational brackets for e and e^x, and canonical
// string forms ("p/q", decimal big integers) used by the JSON emitters.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace indlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
BigInt multinomial(const std::vector<int>& parts);
BigInt ipow(const BigInt& base, unsigned e);
Rat rat_pow(const Rat& base, unsigned e);

// non-negative remainder of s mod m (m > 0)
BigInt mod_floor(const BigInt& s, const BigInt& m);

// certified brackets: lo < true value < hi, width below 10^-30
std::pair<Rat, Rat> e_bracket();
// bracket for e^x, x a positive rational (series with tail bound)
std::pair<Rat, Rat> exp_bracket(const Rat& x);

double to_double(const Rat& r);
Rat rat_from_double(double d);

// canonical encodings
std::string rat_str(const Rat& r);   // "p/q", or "p" when q == 1
std::string bigint_str(const BigInt& v);
Rat parse_rat(const std::string& s);

}  // namespace indlab

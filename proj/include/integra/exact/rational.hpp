#pragma once

#include <gmpxx.h>

#include <string>

namespace integra {

// GMP keeps mpq values canonical: den > 0, gcd(num, den) = 1.
using Rational = mpq_class;

inline std::string num_str(const Rational& r) { return r.get_num().get_str(); }
inline std::string den_str(const Rational& r) { return r.get_den().get_str(); }
Rational rational_from(const std::string& num, const std::string& den);

} // namespace integra

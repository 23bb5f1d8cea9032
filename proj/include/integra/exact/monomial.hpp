#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "integra/exact/registry.hpp"

namespace integra {

// Exponent vector over the registry; entries may be negative.
class Monomial {
public:
    using Exponent = std::int16_t;

    Monomial() { e_.fill(0); }
    static Monomial var(VarId v, int power = 1);

    int operator[](VarId v) const { return e_[v]; }
    void set(VarId v, int power);

    bool is_one() const;
    int degree() const;
    // Largest registry id with a nonzero exponent, plus one.
    std::size_t span() const;

    Monomial& operator*=(const Monomial& o);
    Monomial& operator/=(const Monomial& o);
    Monomial inverse() const;
    Monomial pow(int k) const;

    // Componentwise min / max.
    static Monomial gcd(const Monomial& a, const Monomial& b);
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool divides(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    std::size_t hash() const;

    std::string str() const;

private:
    std::array<Exponent, kMaxVariables> e_;
};

inline Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
inline Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }

// Graded lexicographic: total degree first, then lexicographic with the
// lowest registry id most significant.
std::strong_ordering grlex(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

} // namespace integra

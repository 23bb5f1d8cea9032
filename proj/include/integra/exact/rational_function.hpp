#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "integra/exact/laurent.hpp"

namespace integra {

using AtomId = std::uint32_t;

// Interned content-free polynomials with leading coefficient +1. Rational
// functions keep their denominators (and optionally parts of their
// numerators) as integer powers of atoms, so products never expand and
// common factors cancel by exponent arithmetic.
class AtomTable {
public:
    struct Split {
        Rational coeff;
        Monomial mono;
        bool has_atom = false;
        AtomId atom = 0;
    };
    // p = coeff * mono * atom (atom omitted when p is a monomial).
    static Split split(const LaurentPolynomial& p);
    static const LaurentPolynomial& get(AtomId id);
    static const LaurentPolynomial& power(AtomId id, int k);
    static Split substitute(AtomId id, const Substitution& s);
    static std::size_t size();
};

class RationalFunction {
public:
    using Factors = std::vector<std::pair<AtomId, int>>;

    RationalFunction() = default;
    RationalFunction(long c) : num_(c) {}
    RationalFunction(const Rational& c) : num_(c) {}
    RationalFunction(const Monomial& m, const Rational& c = 1) : num_(m, c) {}
    RationalFunction(LaurentPolynomial p) : num_(std::move(p)) {}

    static RationalFunction variable(VarId v, int power = 1);
    // Same value as the polynomial, but kept as an unexpanded factor.
    static RationalFunction factor(const LaurentPolynomial& p, int power = 1);
    static RationalFunction ratio(const LaurentPolynomial& n, const LaurentPolynomial& d);

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;
    bool is_polynomial() const;
    // Value as a rational constant; throws if not constant.
    Rational constant_value() const;
    bool involves(VarId v) const;

    // Expanded forms. The denominator is a product of atoms, so its grlex
    // leading coefficient is +1 and it carries no monomial content.
    LaurentPolynomial numerator() const;
    LaurentPolynomial denominator() const;
    LaurentPolynomial to_polynomial() const;

    const LaurentPolynomial& cofactor() const { return num_; }
    const Factors& factors() const { return factors_; }

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    RationalFunction operator-() const;

    RationalFunction inverse() const;
    RationalFunction pow(int k) const;
    RationalFunction substitute(const Substitution& s) const;

    bool operator==(const RationalFunction& o) const;
    std::string str() const;

private:
    LaurentPolynomial num_;
    Factors factors_;

    void reduce(const Factors* only = nullptr);
    void absorb_split(const AtomTable::Split& s, int power);
};

RationalFunction operator+(RationalFunction a, const RationalFunction& b);
RationalFunction operator-(RationalFunction a, const RationalFunction& b);
RationalFunction operator*(RationalFunction a, const RationalFunction& b);
RationalFunction operator/(RationalFunction a, const RationalFunction& b);

// f as a Laurent polynomial in vars with coefficients free of vars; throws
// DegenerateInput when a denominator factor involves vars.
std::map<std::vector<int>, RationalFunction> coefficients_in(const RationalFunction& f,
                                                             const std::vector<VarId>& vars);

} // namespace integra

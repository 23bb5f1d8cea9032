#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "integra/exact/monomial.hpp"
#include "integra/exact/rational.hpp"

namespace integra {

struct Term {
    Monomial mono;
    Rational coeff;
};

// Variable substitution x_v -> c * m, applied simultaneously.
class Substitution {
public:
    Substitution& set(VarId v, const Rational& c, const Monomial& m);
    Substitution& set(VarId v, const Monomial& m) { return set(v, Rational(1), m); }
    Substitution& set_value(VarId v, const Rational& c) { return set(v, c, Monomial()); }

    bool empty() const { return rules_.empty(); }
    const Rational* coeff(VarId v) const;
    const Monomial* image(VarId v) const;
    // Stable textual key; used for memoizing substitutions of shared factors.
    const std::string& key() const { return key_; }

    // c * m evaluated on a monomial: returns (coefficient, monomial).
    std::pair<Rational, Monomial> apply(const Monomial& m) const;

private:
    struct Rule {
        VarId v;
        Rational c;
        Monomial m;
    };
    std::vector<Rule> rules_;
    std::string key_;
    void rebuild_key();
};

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    LaurentPolynomial(const Rational& c);
    LaurentPolynomial(long c) : LaurentPolynomial(Rational(c)) {}
    LaurentPolynomial(const Monomial& m, const Rational& c = 1);

    static LaurentPolynomial variable(VarId v, int power = 1);
    static LaurentPolynomial from_terms(std::vector<Term> terms);

    // Terms sorted descending in grlex; no zero coefficients.
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    const Term& leading() const { return terms_.front(); }
    const Term& trailing() const { return terms_.back(); }
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    // Componentwise minimum / maximum exponent over the support.
    Monomial min_exponents() const;
    Monomial max_exponents() const;
    bool involves(VarId v) const;
    std::vector<VarId> variables() const;

    LaurentPolynomial& operator+=(const LaurentPolynomial& o);
    LaurentPolynomial& operator-=(const LaurentPolynomial& o);
    LaurentPolynomial& operator*=(const LaurentPolynomial& o);
    LaurentPolynomial& operator*=(const Rational& c);
    LaurentPolynomial& operator*=(const Monomial& m);
    LaurentPolynomial operator-() const;

    LaurentPolynomial pow(unsigned k) const;
    LaurentPolynomial substitute(const Substitution& s) const;

    // Exact quotient if o divides *this in the Laurent ring.
    std::optional<LaurentPolynomial> divide_exact(const LaurentPolynomial& o) const;

    template <class T>
    T evaluate(const std::vector<T>& values) const;

    bool operator==(const LaurentPolynomial& o) const;
    std::size_t hash() const;
    std::string str() const;

private:
    std::vector<Term> terms_;
    void canonicalize();
};

LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b);
LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b);
LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c);
LaurentPolynomial operator*(const Rational& c, LaurentPolynomial a);

struct LaurentHash {
    std::size_t operator()(const LaurentPolynomial& p) const { return p.hash(); }
};

// values indexed by VarId; unused entries are ignored.
template <class T>
T LaurentPolynomial::evaluate(const std::vector<T>& values) const {
    T acc(0);
    for (const auto& t : terms_) {
        T v(t.coeff.get_d());
        for (std::size_t i = 0; i < kMaxVariables; ++i) {
            int e = t.mono[static_cast<VarId>(i)];
            if (e == 0) continue;
            T x = values.at(i);
            if (e < 0) {
                x = T(1) / x;
                e = -e;
            }
            for (int k = 0; k < e; ++k) v *= x;
        }
        acc += v;
    }
    return acc;
}

} // namespace integra

#pragma once

#include "integra/exact/series.hpp"

namespace integra {

// (x; q)_d with x = c * m a monomial value. Negative d follows
// (x;q)_d = (1 - x q^{d-1}) (x;q)_{d-1}.
RationalFunction q_pochhammer(const RationalFunction& x, VarId q, int d);
RationalFunction q_pochhammer(const Monomial& x, VarId q, int d, const Rational& c = 1);

enum class ThetaForm {
    Full,        // prod_{k>=0} (1 - x p^k)(1 - p^{k+1}/x)
    DropInverse, // prod_{k>=0} (1 - x p^k) only; a deliberately wrong variant
};

// theta_p(c x) truncated at p^order. The p-exponent of x may be 0 or 1.
TruncatedSeries theta_expand(const Monomial& x, VarId p, int order, const Rational& c = 1,
                             ThetaForm form = ThetaForm::Full);

// 1 - c*m as a factored rational function.
RationalFunction one_minus(const Monomial& m, const Rational& c = 1);

} // namespace integra

#include "integra/exact/special.hpp"

#include "integra/errors.hpp"

namespace integra {

RationalFunction one_minus(const Monomial& m, const Rational& c) {
    LaurentPolynomial p(1);
    p -= LaurentPolynomial(m, c);
    return RationalFunction::factor(p);
}

RationalFunction q_pochhammer(const Monomial& x, VarId q, int d, const Rational& c) {
    RationalFunction r(1);
    if (d >= 0) {
        for (int k = 0; k < d; ++k) {
            r *= one_minus(x * Monomial::var(q, k), c);
            if (r.is_zero()) return r;
        }
        return r;
    }
    for (int j = 1; j <= -d; ++j) {
        auto f = one_minus(x * Monomial::var(q, -j), c);
        if (f.is_zero()) throw DivisionByZero("negative-index Pochhammer hits a zero factor");
        r /= f;
    }
    return r;
}

RationalFunction q_pochhammer(const RationalFunction& x, VarId q, int d) {
    LaurentPolynomial v = x.to_polynomial();
    if (v.is_zero()) return RationalFunction(1);
    if (!v.is_monomial()) throw std::invalid_argument("q_pochhammer expects a monomial argument");
    return q_pochhammer(v.leading().mono, q, d, v.leading().coeff);
}

TruncatedSeries theta_expand(const Monomial& x, VarId p, int order, const Rational& c, ThetaForm form) {
    if (order < 0) throw std::invalid_argument("theta order must be nonnegative");
    int e = x[p];
    if (e < 0 || e > 1) throw std::invalid_argument("theta argument must carry p^0 or p^1");
    Monomial y = x;
    y.set(p, 0);
    std::vector<VarId> vars{p};
    std::vector<int> caps{order};
    TruncatedSeries r = TruncatedSeries::constant(vars, caps, RationalFunction(1));

    // Factor 1 - c' m' p^k: constant part for k = 0, else a binomial series.
    auto times = [&](int k, const Monomial& m, const Rational& cc) {
        if (k > order) return;
        if (k == 0) {
            r *= one_minus(m, cc);
            return;
        }
        TruncatedSeries f = TruncatedSeries::constant(vars, caps, RationalFunction(1));
        f.add_term({k}, RationalFunction(m, -cc));
        r = r * f;
    };
    for (int k = 0; k + e <= order; ++k) times(k + e, y, c);
    if (form == ThetaForm::Full) {
        Monomial yi = y.inverse();
        Rational ci = 1 / c;
        for (int k = 0; k + 1 - e <= order; ++k) times(k + 1 - e, yi, ci);
    }
    return r;
}

} // namespace integra

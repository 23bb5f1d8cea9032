#include "integra/shift/operator.hpp"

namespace integra {

Substitution shift_substitution(const std::vector<VarId>& coords, const Monomial& base, const Shift& n) {
    Substitution s;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (n[i] != 0) s.set(coords[i], Monomial::var(coords[i]) * base.pow(n[i]));
    return s;
}

RationalFunction apply(const ShiftOperator<RationalFunction>& a, const RationalFunction& f) {
    RationalFunction r;
    for (const auto& [n, c] : a.terms()) r += c * f.substitute(shift_substitution(a.coords(), a.base(), n));
    return r;
}

TruncatedSeries apply(const ShiftOperator<RationalFunction>& a, const TruncatedSeries& f) {
    TruncatedSeries r(f.vars(), f.caps());
    for (const auto& [n, c] : a.terms()) r += f.substitute(shift_substitution(a.coords(), a.base(), n)) * c;
    return r;
}

TruncatedSeries apply(const ShiftOperator<TruncatedSeries>& a, const TruncatedSeries& f) {
    TruncatedSeries r(f.vars(), f.caps());
    for (const auto& [n, c] : a.terms()) r += c * f.substitute(shift_substitution(a.coords(), a.base(), n));
    return r;
}

namespace {

template <class C>
Json shift_json(const ShiftOperator<C>& a) {
    Json coords = Json::array(), terms = Json::array();
    for (VarId v : a.coords()) coords.push_back(Registry::name(v));
    for (const auto& [n, c] : a.terms()) terms.push_back(Json{{"shift", n}, {"coeff", to_json(c)}});
    return Json{{"coords", coords}, {"q", a.base().str()}, {"terms", terms}};
}

} // namespace

Json to_json(const ShiftOperator<RationalFunction>& a) { return shift_json(a); }
Json to_json(const ShiftOperator<TruncatedSeries>& a) { return shift_json(a); }

} // namespace integra

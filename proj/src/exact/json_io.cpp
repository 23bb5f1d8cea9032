#include "integra/exact/json_io.hpp"

#include <algorithm>

namespace integra {

Json to_json(const Rational& r) { return Json{{"num", num_str(r)}, {"den", den_str(r)}}; }

Rational rational_from_json(const Json& j) {
    return rational_from(j.at("num").get<std::string>(), j.at("den").get<std::string>());
}

Json to_json(const LaurentPolynomial& p) {
    std::vector<std::pair<std::string, VarId>> names;
    for (VarId v : p.variables()) names.emplace_back(Registry::name(v), v);
    std::sort(names.begin(), names.end());
    std::vector<std::pair<std::vector<int>, const Rational*>> rows;
    for (const auto& t : p.terms()) {
        std::vector<int> e;
        for (const auto& [n, v] : names) e.push_back(t.mono[v]);
        rows.emplace_back(std::move(e), &t.coeff);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    Json vars = Json::array();
    for (const auto& [n, v] : names) vars.push_back(n);
    Json terms = Json::array();
    for (const auto& [e, c] : rows)
        terms.push_back(Json{{"exp", e}, {"num", num_str(*c)}, {"den", den_str(*c)}});
    return Json{{"vars", vars}, {"terms", terms}};
}

LaurentPolynomial laurent_from_json(const Json& j) {
    std::vector<VarId> ids;
    for (const auto& n : j.at("vars")) ids.push_back(var(n.get<std::string>()));
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
        Monomial m;
        const auto& e = t.at("exp");
        if (e.size() != ids.size()) throw std::invalid_argument("exponent vector length mismatch");
        for (std::size_t i = 0; i < ids.size(); ++i) m.set(ids[i], e[i].get<int>());
        terms.push_back(Term{m, rational_from(t.at("num").get<std::string>(), t.at("den").get<std::string>())});
    }
    return LaurentPolynomial::from_terms(std::move(terms));
}

Json to_json(const RationalFunction& f) {
    return Json{{"num", to_json(f.numerator())}, {"den", to_json(f.denominator())}};
}

RationalFunction rational_function_from_json(const Json& j) {
    return RationalFunction::ratio(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

Json to_json(const TruncatedSeries& s) {
    Json vars = Json::array(), caps = Json::array(), terms = Json::array();
    for (VarId v : s.vars()) vars.push_back(Registry::name(v));
    for (int c : s.caps()) caps.push_back(c);
    for (const auto& [e, c] : s.terms()) terms.push_back(Json{{"exp", e}, {"coeff", to_json(c)}});
    return Json{{"small_vars", vars}, {"caps", caps}, {"terms", terms}};
}

} // namespace integra

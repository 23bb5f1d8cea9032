#pragma once

#include <json.hpp>

#include "integra/exact/series.hpp"

namespace integra {

using Json = nlohmann::ordered_json;

// Canonical forms: variables listed alphabetically, terms sorted by
// exponent vector (descending), integers as decimal strings.
Json to_json(const Rational& r);
Json to_json(const LaurentPolynomial& p);
Json to_json(const RationalFunction& f);
Json to_json(const TruncatedSeries& s);

Rational rational_from_json(const Json& j);
LaurentPolynomial laurent_from_json(const Json& j);
RationalFunction rational_function_from_json(const Json& j);

} // namespace integra

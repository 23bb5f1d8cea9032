#pragma once

#include <map>
#include <vector>

#include "integra/exact/rational_function.hpp"

namespace integra {

// Power series in a few designated small variables, truncated per variable
// (box truncation), with rational-function coefficients in the others.
class TruncatedSeries {
public:
    using Index = std::vector<int>;

    TruncatedSeries() = default;
    TruncatedSeries(std::vector<VarId> vars, std::vector<int> caps);
    static TruncatedSeries constant(std::vector<VarId> vars, std::vector<int> caps, const RationalFunction& c);

    const std::vector<VarId>& vars() const { return vars_; }
    const std::vector<int>& caps() const { return caps_; }
    const std::map<Index, RationalFunction>& terms() const { return terms_; }
    bool within_caps(const Index& e) const;
    RationalFunction coefficient(const Index& e) const;
    // Adds c * small^e; silently dropped beyond the caps.
    void add_term(const Index& e, const RationalFunction& c);

    bool is_zero() const { return terms_.empty(); }
    // Lowest index (lexicographic) with a nonzero coefficient.
    const Index* lowest() const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const RationalFunction& c);
    TruncatedSeries operator-() const;

    TruncatedSeries truncate(const std::vector<int>& caps) const;
    TruncatedSeries substitute(const Substitution& s) const;
    TruncatedSeries map_coefficients(RationalFunction (*f)(const RationalFunction&)) const;

    bool operator==(const TruncatedSeries& o) const;

private:
    std::vector<VarId> vars_;
    std::vector<int> caps_;
    std::map<Index, RationalFunction> terms_;

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    void check_compatible(const TruncatedSeries& o) const;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(TruncatedSeries a, const RationalFunction& c);

// s * series_invert(s) = 1 within the caps of s.
TruncatedSeries series_invert(const TruncatedSeries& s);

} // namespace integra

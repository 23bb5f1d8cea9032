#include "integra/exact/series.hpp"

#include "integra/errors.hpp"

namespace integra {

TruncatedSeries::TruncatedSeries(std::vector<VarId> vars, std::vector<int> caps)
    : vars_(std::move(vars)), caps_(std::move(caps)) {
    if (vars_.size() != caps_.size()) throw std::invalid_argument("series caps do not match variables");
    for (int c : caps_)
        if (c < 0) throw std::invalid_argument("series cap must be nonnegative");
}

TruncatedSeries TruncatedSeries::constant(std::vector<VarId> vars, std::vector<int> caps,
                                          const RationalFunction& c) {
    TruncatedSeries s(std::move(vars), std::move(caps));
    s.add_term(Index(s.vars_.size(), 0), c);
    return s;
}

bool TruncatedSeries::within_caps(const Index& e) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 || e[i] > caps_[i]) return false;
    return true;
}

RationalFunction TruncatedSeries::coefficient(const Index& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? RationalFunction() : it->second;
}

void TruncatedSeries::add_term(const Index& e, const RationalFunction& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("series index has wrong length");
    if (!within_caps(e) || c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const TruncatedSeries::Index* TruncatedSeries::lowest() const {
    return terms_.empty() ? nullptr : &terms_.begin()->first;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
    if (vars_ != o.vars_) throw CoordinateMismatch("series over different small variables");
}

namespace {

std::vector<int> min_caps(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::min(a[i], b[i]);
    return c;
}

} // namespace

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    if (vars_.empty() && terms_.empty() && caps_.empty()) return *this = o;
    check_compatible(o);
    auto caps = min_caps(caps_, o.caps_);
    if (caps != caps_) *this = truncate(caps);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) { return *this += -o; }

TruncatedSeries& TruncatedSeries::operator*=(const RationalFunction& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

TruncatedSeries TruncatedSeries::truncate(const std::vector<int>& caps) const {
    TruncatedSeries r(vars_, caps);
    for (const auto& [e, c] : terms_)
        if (r.within_caps(e)) r.terms_.emplace(e, c);
    return r;
}

TruncatedSeries TruncatedSeries::substitute(const Substitution& s) const {
    for (VarId v : vars_)
        if (s.image(v)) throw std::invalid_argument("substitution touches a series variable");
    TruncatedSeries r(vars_, caps_);
    for (const auto& [e, c] : terms_) {
        auto v = c.substitute(s);
        if (!v.is_zero()) r.terms_.emplace(e, std::move(v));
    }
    return r;
}

TruncatedSeries TruncatedSeries::map_coefficients(RationalFunction (*f)(const RationalFunction&)) const {
    TruncatedSeries r(vars_, caps_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    if (vars_ != o.vars_) return false;
    auto d = *this - o;
    return d.is_zero();
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator*(TruncatedSeries a, const RationalFunction& c) { return a *= c; }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries r(a.vars_, min_caps(a.caps_, b.caps_));
    TruncatedSeries::Index e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (!r.within_caps(e)) continue;
            r.add_term(e, ca * cb);
        }
    return r;
}

TruncatedSeries series_invert(const TruncatedSeries& s) {
    const std::size_t n = s.vars().size();
    TruncatedSeries::Index zero(n, 0);
    RationalFunction c0 = s.coefficient(zero);
    if (c0.is_zero()) throw NotInvertible("series has a vanishing constant coefficient");
    RationalFunction inv0 = c0.inverse();
    TruncatedSeries r(s.vars(), s.caps());
    std::map<TruncatedSeries::Index, RationalFunction> b;
    b.emplace(zero, inv0);
    // Lexicographic sweep of the box: every k - j with j > 0 precedes k.
    TruncatedSeries::Index k(n, 0);
    while (true) {
        std::size_t i = n;
        while (i > 0) {
            if (k[i - 1] < s.caps()[i - 1]) {
                ++k[i - 1];
                break;
            }
            k[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
        RationalFunction acc;
        for (const auto& [j, sj] : s.terms()) {
            if (j == zero) continue;
            TruncatedSeries::Index d(n);
            bool ok = true;
            for (std::size_t t = 0; t < n && ok; ++t) {
                d[t] = k[t] - j[t];
                ok = d[t] >= 0;
            }
            if (!ok) continue;
            auto it = b.find(d);
            if (it != b.end()) acc += sj * it->second;
        }
        if (!acc.is_zero()) b.emplace(k, -(inv0 * acc));
    }
    for (const auto& [e, c] : b) r.add_term(e, c);
    return r;
}

} // namespace integra

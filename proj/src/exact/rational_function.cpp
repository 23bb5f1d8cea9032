#include "integra/exact/rational_function.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "integra/errors.hpp"

namespace integra {

namespace {

struct Store {
    std::shared_mutex mu;
    std::deque<LaurentPolynomial> atoms;
    std::unordered_map<LaurentPolynomial, AtomId, LaurentHash> index;
    std::map<std::pair<AtomId, int>, LaurentPolynomial> powers;
    std::unordered_map<std::string, AtomTable::Split> substituted;
};

Store& store() {
    static Store s;
    return s;
}

AtomId intern(LaurentPolynomial p) {
    auto& s = store();
    {
        std::shared_lock lock(s.mu);
        auto it = s.index.find(p);
        if (it != s.index.end()) return it->second;
    }
    std::unique_lock lock(s.mu);
    auto it = s.index.find(p);
    if (it != s.index.end()) return it->second;
    auto id = static_cast<AtomId>(s.atoms.size());
    s.atoms.push_back(p);
    s.index.emplace(std::move(p), id);
    return id;
}

// Scale a Laurent polynomial by (c*m)^k.
void scale_by(LaurentPolynomial& p, const Rational& c, const Monomial& m, int k) {
    if (k == 0) return;
    p *= m.pow(k);
    Rational f = 1;
    for (int i = 0; i < std::abs(k); ++i) f *= c;
    p *= (k > 0 ? f : Rational(1 / f));
}

} // namespace

AtomTable::Split AtomTable::split(const LaurentPolynomial& p) {
    Split s;
    if (p.is_zero()) {
        s.coeff = 0;
        return s;
    }
    s.mono = p.min_exponents();
    if (p.is_monomial()) {
        s.coeff = p.leading().coeff;
        return s;
    }
    LaurentPolynomial a = p;
    a *= s.mono.inverse();
    s.coeff = a.leading().coeff;
    a *= Rational(1 / s.coeff);
    s.has_atom = true;
    s.atom = intern(std::move(a));
    return s;
}

const LaurentPolynomial& AtomTable::get(AtomId id) {
    auto& s = store();
    std::shared_lock lock(s.mu);
    return s.atoms.at(id);
}

const LaurentPolynomial& AtomTable::power(AtomId id, int k) {
    if (k == 1) return get(id);
    auto& s = store();
    {
        std::shared_lock lock(s.mu);
        auto it = s.powers.find({id, k});
        if (it != s.powers.end()) return it->second;
    }
    LaurentPolynomial p = get(id).pow(static_cast<unsigned>(k));
    std::unique_lock lock(s.mu);
    return s.powers.try_emplace({id, k}, std::move(p)).first->second;
}

AtomTable::Split AtomTable::substitute(AtomId id, const Substitution& sub) {
    auto& s = store();
    std::string key = std::to_string(id) + '|' + sub.key();
    {
        std::shared_lock lock(s.mu);
        auto it = s.substituted.find(key);
        if (it != s.substituted.end()) return it->second;
    }
    Split r = split(get(id).substitute(sub));
    std::unique_lock lock(s.mu);
    s.substituted.emplace(std::move(key), r);
    return r;
}

std::size_t AtomTable::size() {
    auto& s = store();
    std::shared_lock lock(s.mu);
    return s.atoms.size();
}

// ---- RationalFunction

namespace {

using Factors = RationalFunction::Factors;

void add_factor(Factors& f, AtomId id, int e) {
    if (e == 0) return;
    auto it = std::lower_bound(f.begin(), f.end(), id, [](const auto& x, AtomId v) { return x.first < v; });
    if (it != f.end() && it->first == id) {
        it->second += e;
        if (it->second == 0) f.erase(it);
    } else
        f.insert(it, {id, e});
}

Factors merge_factors(const Factors& a, const Factors& b, int sign) {
    Factors out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back({b[j].first, sign * b[j].second});
            ++j;
        } else {
            int e = a[i].second + sign * b[j].second;
            if (e != 0) out.push_back({a[i].first, e});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

RationalFunction RationalFunction::variable(VarId v, int power) {
    return RationalFunction(Monomial::var(v, power));
}

void RationalFunction::absorb_split(const AtomTable::Split& s, int power) {
    scale_by(num_, s.coeff, s.mono, power);
    if (s.has_atom) add_factor(factors_, s.atom, power);
}

RationalFunction RationalFunction::factor(const LaurentPolynomial& p, int power) {
    if (p.is_zero()) {
        if (power > 0) return RationalFunction();
        if (power == 0) return RationalFunction(1);
        throw DivisionByZero("inverse power of the zero polynomial");
    }
    RationalFunction r(1);
    r.absorb_split(AtomTable::split(p), power);
    return r;
}

RationalFunction RationalFunction::ratio(const LaurentPolynomial& n, const LaurentPolynomial& d) {
    RationalFunction r = factor(d, -1);
    r.num_ *= n;
    r.reduce();
    if (r.num_.is_zero()) r.factors_.clear();
    return r;
}

void RationalFunction::reduce(const Factors* only) {
    if (num_.is_zero()) {
        factors_.clear();
        return;
    }
    if (num_.is_monomial()) return;
    for (auto& [id, e] : factors_) {
        if (only && !std::binary_search(only->begin(), only->end(), std::pair<AtomId, int>{id, 0},
                                        [](const auto& x, const auto& y) { return x.first < y.first; }))
            continue;
        while (e < 0) {
            auto q = num_.divide_exact(AtomTable::get(id));
            if (!q) break;
            num_ = std::move(*q);
            ++e;
            if (num_.is_monomial()) break;
        }
        if (num_.is_monomial()) break;
    }
    std::erase_if(factors_, [](const auto& f) { return f.second == 0; });
}

bool RationalFunction::is_constant() const {
    if (factors_.empty()) return num_.is_constant();
    if (!is_polynomial()) return false;
    return to_polynomial().is_constant();
}

bool RationalFunction::is_polynomial() const {
    bool neg = std::any_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.second < 0; });
    if (!neg) return true;
    return numerator().divide_exact(denominator()).has_value();
}

Rational RationalFunction::constant_value() const {
    LaurentPolynomial p = to_polynomial();
    if (!p.is_constant()) throw std::domain_error("rational function is not constant");
    return p.constant_term();
}

bool RationalFunction::involves(VarId v) const {
    if (num_.involves(v)) return true;
    for (const auto& [id, e] : factors_)
        if (AtomTable::get(id).involves(v)) return true;
    return false;
}

LaurentPolynomial RationalFunction::numerator() const {
    LaurentPolynomial p = num_;
    for (const auto& [id, e] : factors_)
        if (e > 0) p *= AtomTable::power(id, e);
    return p;
}

LaurentPolynomial RationalFunction::denominator() const {
    LaurentPolynomial p(1);
    for (const auto& [id, e] : factors_)
        if (e < 0) p *= AtomTable::power(id, -e);
    return p;
}

LaurentPolynomial RationalFunction::to_polynomial() const {
    LaurentPolynomial d = denominator();
    if (d.is_constant()) return numerator();
    auto q = numerator().divide_exact(d);
    if (!q) throw NotDivisible("rational function is not a Laurent polynomial: " + str());
    return *q;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RationalFunction();
    // A monomial cofactor cannot create new divisibility by old atoms.
    bool mine = num_.is_monomial(), theirs = o.num_.is_monomial();
    Factors before = (mine && !theirs) ? factors_ : Factors();
    num_ *= o.num_;
    factors_ = merge_factors(factors_, o.factors_, 1);
    if (mine && theirs) return *this;
    if (theirs)
        reduce(&o.factors_);
    else if (mine)
        reduce(&before);
    else
        reduce();
    return *this;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    // Pull out the common part g = prod atom^min(e_a, e_b); the cofactors
    // only carry nonnegative atom powers and can be expanded.
    Factors g;
    LaurentPolynomial a = num_, b = o.num_;
    std::size_t i = 0, j = 0;
    const auto& fa = factors_;
    const auto& fb = o.factors_;
    while (i < fa.size() || j < fb.size()) {
        AtomId id;
        int ea = 0, eb = 0;
        if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
            id = fa[i].first;
            ea = fa[i++].second;
        } else if (i == fa.size() || fb[j].first < fa[i].first) {
            id = fb[j].first;
            eb = fb[j++].second;
        } else {
            id = fa[i].first;
            ea = fa[i++].second;
            eb = fb[j++].second;
        }
        int m = std::min(ea, eb);
        if (m != 0) g.push_back({id, m});
        if (ea > m) a *= AtomTable::power(id, ea - m);
        if (eb > m) b *= AtomTable::power(id, eb - m);
    }
    a += b;
    num_ = std::move(a);
    factors_ = std::move(g);
    reduce();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    RationalFunction r(1);
    for (const auto& [id, e] : factors_) r.factors_.push_back({id, -e});
    r.absorb_split(AtomTable::split(num_), -1);
    return r;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RationalFunction r(num_.pow(static_cast<unsigned>(k)));
    if (r.is_zero()) return r;
    for (const auto& [id, e] : factors_) r.factors_.push_back({id, e * k});
    if (k == 0) r.factors_.clear();
    return r;
}

RationalFunction RationalFunction::substitute(const Substitution& s) const {
    if (s.empty() || is_zero()) return *this;
    RationalFunction r(num_.substitute(s));
    if (r.is_zero()) return r;
    for (const auto& [id, e] : factors_) {
        auto sp = AtomTable::substitute(id, s);
        if (sp.coeff == 0) {
            if (e > 0) return RationalFunction();
            throw DivisionByZero("substitution annihilates a denominator factor");
        }
        r.absorb_split(sp, e);
    }
    r.reduce();
    return r;
}

bool RationalFunction::operator==(const RationalFunction& o) const { return (*this - o).is_zero(); }

std::string RationalFunction::str() const {
    LaurentPolynomial d = denominator();
    std::string n = "(" + numerator().str() + ")";
    if (d.is_constant()) return n;
    return n + "/(" + d.str() + ")";
}

RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

std::map<std::vector<int>, RationalFunction> coefficients_in(const RationalFunction& f,
                                                             const std::vector<VarId>& vars) {
    auto touches = [&](const LaurentPolynomial& p) {
        for (VarId v : vars)
            if (p.involves(v)) return true;
        return false;
    };
    LaurentPolynomial body = f.cofactor();
    RationalFunction rest(1);
    for (const auto& [id, e] : f.factors()) {
        const LaurentPolynomial& atom = AtomTable::get(id);
        if (!touches(atom))
            rest *= RationalFunction::factor(atom, e);
        else if (e < 0)
            throw DegenerateInput("denominator depends on the extraction variables");
        else
            body *= AtomTable::power(id, e);
    }
    std::map<std::vector<int>, LaurentPolynomial> grouped;
    for (const auto& t : body.terms()) {
        std::vector<int> key;
        Monomial m = t.mono;
        for (VarId v : vars) {
            key.push_back(m[v]);
            m.set(v, 0);
        }
        grouped[key] += LaurentPolynomial(m, t.coeff);
    }
    std::map<std::vector<int>, RationalFunction> out;
    for (auto& [k, p] : grouped)
        if (!p.is_zero()) out.emplace(k, RationalFunction(std::move(p)) * rest);
    return out;
}

} // namespace integra

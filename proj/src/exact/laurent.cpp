#include <map>
#include "integra/exact/laurent.hpp"

#include <algorithm>
#include <unordered_map>

namespace integra {

Rational rational_from(const std::string& num, const std::string& den) {
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

// ---- Substitution

Substitution& Substitution::set(VarId v, const Rational& c, const Monomial& m) {
    auto it = std::find_if(rules_.begin(), rules_.end(), [v](const Rule& r) { return r.v == v; });
    if (it != rules_.end())
        *it = Rule{v, c, m};
    else
        rules_.push_back(Rule{v, c, m});
    std::sort(rules_.begin(), rules_.end(), [](const Rule& a, const Rule& b) { return a.v < b.v; });
    rebuild_key();
    return *this;
}

const Rational* Substitution::coeff(VarId v) const {
    for (const auto& r : rules_)
        if (r.v == v) return &r.c;
    return nullptr;
}

const Monomial* Substitution::image(VarId v) const {
    for (const auto& r : rules_)
        if (r.v == v) return &r.m;
    return nullptr;
}

void Substitution::rebuild_key() {
    key_.clear();
    for (const auto& r : rules_) {
        key_ += std::to_string(r.v) + ':' + r.c.get_str() + ':';
        for (std::size_t i = 0; i < kMaxVariables; ++i) {
            int e = r.m[static_cast<VarId>(i)];
            if (e != 0) key_ += std::to_string(i) + '^' + std::to_string(e) + ',';
        }
        key_ += ';';
    }
}

std::pair<Rational, Monomial> Substitution::apply(const Monomial& m) const {
    Rational c(1);
    Monomial out = m;
    for (const auto& r : rules_) {
        int e = m[r.v];
        if (e == 0) continue;
        out.set(r.v, 0);
        out *= r.m.pow(e);
        if (r.c != 1) {
            Rational f;
            mpz_pow_ui(f.get_num_mpz_t(), r.c.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e)));
            mpz_pow_ui(f.get_den_mpz_t(), r.c.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e)));
            f.canonicalize();
            if (e < 0) {
                if (f == 0) throw std::domain_error("substituted zero into a negative power");
                f = 1 / f;
            }
            c *= f;
        }
    }
    return {c, out};
}

// ---- LaurentPolynomial

namespace {

bool term_greater(const Term& a, const Term& b) { return grlex(a.mono, b.mono) > 0; }

} // namespace

LaurentPolynomial::LaurentPolynomial(const Rational& c) {
    if (c != 0) terms_.push_back(Term{Monomial(), c});
}

LaurentPolynomial::LaurentPolynomial(const Monomial& m, const Rational& c) {
    if (c != 0) terms_.push_back(Term{m, c});
}

LaurentPolynomial LaurentPolynomial::variable(VarId v, int power) {
    return LaurentPolynomial(Monomial::var(v, power));
}

LaurentPolynomial LaurentPolynomial::from_terms(std::vector<Term> terms) {
    LaurentPolynomial p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
}

void LaurentPolynomial::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), term_greater);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coeff += t.coeff;
        else {
            if (!out.empty() && out.back().coeff == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    terms_ = std::move(out);
}

bool LaurentPolynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational LaurentPolynomial::constant_term() const { return coefficient(Monomial()); }

Rational LaurentPolynomial::coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return 0;
}

Monomial LaurentPolynomial::min_exponents() const {
    if (terms_.empty()) return Monomial();
    Monomial m = terms_[0].mono;
    for (const auto& t : terms_) m = Monomial::gcd(m, t.mono);
    return m;
}

Monomial LaurentPolynomial::max_exponents() const {
    if (terms_.empty()) return Monomial();
    Monomial m = terms_[0].mono;
    for (const auto& t : terms_) m = Monomial::lcm(m, t.mono);
    return m;
}

bool LaurentPolynomial::involves(VarId v) const {
    for (const auto& t : terms_)
        if (t.mono[v] != 0) return true;
    return false;
}

std::vector<VarId> LaurentPolynomial::variables() const {
    std::vector<VarId> out;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
        if (involves(static_cast<VarId>(i))) out.push_back(static_cast<VarId>(i));
    return out;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size())
            c = -1;
        else if (j == b.size())
            c = 1;
        else {
            auto o = grlex(a[i].mono, b[j].mono);
            c = o > 0 ? 1 : (o < 0 ? -1 : 0);
        }
        if (c > 0)
            out.push_back(a[i++]);
        else if (c < 0) {
            out.push_back(b[j++]);
            if (subtract) out.back().coeff = -out.back().coeff;
        } else {
            Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
            if (s != 0) out.push_back(Term{a[i].mono, s});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Monomial& m) {
    for (auto& t : terms_) t.mono *= m;
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& o) {
    if (terms_.empty() || o.terms_.empty()) {
        terms_.clear();
        return *this;
    }
    if (o.terms_.size() == 1) {
        *this *= o.terms_[0].mono;
        return *this *= o.terms_[0].coeff;
    }
    if (terms_.size() == 1) {
        LaurentPolynomial r = o;
        r *= terms_[0].mono;
        r *= terms_[0].coeff;
        return *this = std::move(r);
    }
    std::size_t n = terms_.size() * o.terms_.size();
    if (n <= 256) {
        std::vector<Term> prod;
        prod.reserve(n);
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) prod.push_back(Term{a.mono * b.mono, a.coeff * b.coeff});
        terms_ = std::move(prod);
        canonicalize();
        return *this;
    }
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(n);
    Rational tmp;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            tmp = a.coeff * b.coeff;
            auto [it, fresh] = acc.try_emplace(a.mono * b.mono, tmp);
            if (!fresh) it->second += tmp;
        }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.push_back(Term{m, std::move(c)});
    std::sort(out.begin(), out.end(), term_greater);
    terms_ = std::move(out);
    return *this;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
    LaurentPolynomial r(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

LaurentPolynomial LaurentPolynomial::substitute(const Substitution& s) const {
    if (s.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        auto [c, m] = s.apply(t.mono);
        out.push_back(Term{m, t.coeff * c});
    }
    return from_terms(std::move(out));
}

std::optional<LaurentPolynomial> LaurentPolynomial::divide_exact(const LaurentPolynomial& o) const {
    if (o.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (is_zero()) return LaurentPolynomial();
    if (o.is_monomial()) {
        LaurentPolynomial r = *this;
        r *= o.terms_[0].mono.inverse();
        r *= Rational(1 / o.terms_[0].coeff);
        return r;
    }
    // Work with content-free polynomial representatives; the quotient of
    // those is then a genuine polynomial.
    Monomial fm = min_exponents(), gm = o.min_exponents();
    LaurentPolynomial f = *this, g = o;
    f *= fm.inverse();
    g *= gm.inverse();
    if (f.size() < g.size() && f.size() < 2) return std::nullopt;
    if (!g.max_exponents().divides(f.max_exponents())) return std::nullopt;
    if (!g.leading().mono.divides(f.leading().mono)) return std::nullopt;
    if (!g.trailing().mono.divides(f.trailing().mono)) return std::nullopt;

    // Quotient terms of content-free operands stay inside the box
    // [0, max f - max g] and the degree band of the operands.
    Monomial cap = f.max_exponents() / g.max_exponents();
    int lo_deg = f.trailing().mono.degree() - g.trailing().mono.degree();
    const Term& lg = g.leading();
    Rational inv_lc = 1 / lg.coeff;
    auto cmp = [](const Monomial& a, const Monomial& b) { return grlex(a, b) > 0; };
    std::map<Monomial, Rational, decltype(cmp)> r(cmp);
    for (auto& t : f.terms_) r.emplace(t.mono, std::move(t.coeff));
    std::vector<Term> quot;
    while (!r.empty()) {
        auto it = r.begin();
        if (!lg.mono.divides(it->first)) return std::nullopt;
        Term t{it->first / lg.mono, it->second * inv_lc};
        if (t.mono.degree() < lo_deg || !t.mono.divides(cap)) return std::nullopt;
        r.erase(it);
        for (std::size_t k = 1; k < g.terms_.size(); ++k) {
            Monomial m = g.terms_[k].mono;
            m *= t.mono;
            Rational d = g.terms_[k].coeff * t.coeff;
            auto [pos, fresh] = r.try_emplace(m);
            if (fresh)
                pos->second = -d;
            else {
                pos->second -= d;
                if (pos->second == 0) r.erase(pos);
            }
        }
        quot.push_back(std::move(t));
    }
    LaurentPolynomial q = from_terms(std::move(quot));
    q *= fm / gm;
    return q;
}

bool LaurentPolynomial::operator==(const LaurentPolynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

std::size_t LaurentPolynomial::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        h = h * 1000003u ^ t.mono.hash();
        h = h * 1000003u ^ mpz_get_ui(t.coeff.get_num_mpz_t());
        h = h * 1000003u ^ mpz_get_ui(t.coeff.get_den_mpz_t());
        h = h * 1000003u ^ static_cast<std::size_t>(sgn(t.coeff) + 1);
    }
    return h;
}

std::string LaurentPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
        std::string c = t.coeff.get_str();
        bool neg = c[0] == '-';
        if (neg) c = c.substr(1);
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (t.mono.is_one())
            s += c;
        else if (c == "1")
            s += t.mono.str();
        else
            s += c + '*' + t.mono.str();
    }
    return s;
}

LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r = a;
    return r *= b;
}
LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a *= c; }
LaurentPolynomial operator*(const Rational& c, LaurentPolynomial a) { return a *= c; }

} // namespace integra

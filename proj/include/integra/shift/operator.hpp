#pragma once

#include <map>
#include <vector>

#include "integra/errors.hpp"
#include "integra/exact/json_io.hpp"

namespace integra {

using Shift = std::vector<int>;

// x_i -> base^{n_i} x_i on the listed coordinates.
Substitution shift_substitution(const std::vector<VarId>& coords, const Monomial& base, const Shift& n);

// Finite sum  sum_n c_n(x) P^n  with P_i x_j = base^{delta_ij} x_j P_i.
// C is RationalFunction or TruncatedSeries.
template <class C>
class ShiftOperator {
public:
    ShiftOperator() = default;
    ShiftOperator(std::vector<VarId> coords, Monomial base) : coords_(std::move(coords)), base_(base) {}

    static ShiftOperator monomial(std::vector<VarId> coords, Monomial base, Shift n, C c) {
        ShiftOperator op(std::move(coords), base);
        op.add_term(std::move(n), std::move(c));
        return op;
    }

    const std::vector<VarId>& coords() const { return coords_; }
    const Monomial& base() const { return base_; }
    std::size_t rank() const { return coords_.size(); }
    const std::map<Shift, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    C coefficient(const Shift& n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? C() : it->second;
    }

    void add_term(const Shift& n, const C& c) {
        if (n.size() != coords_.size()) throw CoordinateMismatch("shift vector has wrong length");
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(n, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void check_compatible(const ShiftOperator& o) const {
        if (coords_ != o.coords_ || !(base_ == o.base_))
            throw CoordinateMismatch("shift operators over different coordinate systems");
    }

    ShiftOperator& operator+=(const ShiftOperator& o) {
        check_compatible(o);
        for (const auto& [n, c] : o.terms_) add_term(n, c);
        return *this;
    }
    ShiftOperator& operator-=(const ShiftOperator& o) {
        check_compatible(o);
        for (const auto& [n, c] : o.terms_) add_term(n, -c);
        return *this;
    }
    ShiftOperator operator-() const {
        ShiftOperator r(coords_, base_);
        for (const auto& [n, c] : terms_) r.terms_.emplace(n, -c);
        return r;
    }

    // Left multiplication by a function of the coordinates.
    template <class F>
    ShiftOperator scaled(const F& f) const {
        ShiftOperator r(coords_, base_);
        for (const auto& [n, c] : terms_) r.add_term(n, c * f);
        return r;
    }

    ShiftOperator substitute(const Substitution& s) const {
        ShiftOperator r(coords_, base_);
        for (const auto& [n, c] : terms_) r.add_term(n, c.substitute(s));
        return r;
    }

    template <class F>
    ShiftOperator map_coefficients(F&& f) const {
        ShiftOperator r(coords_, base_);
        for (const auto& [n, c] : terms_) r.add_term(n, f(c));
        return r;
    }

    bool operator==(const ShiftOperator& o) const {
        if (coords_ != o.coords_ || !(base_ == o.base_)) return false;
        ShiftOperator d = *this;
        d -= o;
        return d.is_zero();
    }

private:
    std::vector<VarId> coords_;
    Monomial base_;
    std::map<Shift, C> terms_;
};

template <class C>
ShiftOperator<C> operator+(ShiftOperator<C> a, const ShiftOperator<C>& b) {
    return a += b;
}
template <class C>
ShiftOperator<C> operator-(ShiftOperator<C> a, const ShiftOperator<C>& b) {
    return a -= b;
}

// (A o B)_k = sum_{m+n=k} A_m(x) B_n(sigma_m x)
template <class C>
ShiftOperator<C> compose(const ShiftOperator<C>& a, const ShiftOperator<C>& b) {
    a.check_compatible(b);
    ShiftOperator<C> r(a.coords(), a.base());
    for (const auto& [m, am] : a.terms()) {
        Substitution s = shift_substitution(a.coords(), a.base(), m);
        for (const auto& [n, bn] : b.terms()) {
            Shift k(m.size());
            for (std::size_t i = 0; i < k.size(); ++i) k[i] = m[i] + n[i];
            r.add_term(k, am * bn.substitute(s));
        }
    }
    return r;
}

template <class C>
ShiftOperator<C> operator*(const ShiftOperator<C>& a, const ShiftOperator<C>& b) {
    return compose(a, b);
}

template <class C>
ShiftOperator<C> commutator(const ShiftOperator<C>& a, const ShiftOperator<C>& b) {
    return compose(a, b) - compose(b, a);
}

// (A f)(x) = sum_n A_n(x) f(sigma_n x)
RationalFunction apply(const ShiftOperator<RationalFunction>& a, const RationalFunction& f);
TruncatedSeries apply(const ShiftOperator<RationalFunction>& a, const TruncatedSeries& f);
TruncatedSeries apply(const ShiftOperator<TruncatedSeries>& a, const TruncatedSeries& f);

Json to_json(const ShiftOperator<RationalFunction>& a);
Json to_json(const ShiftOperator<TruncatedSeries>& a);

} // namespace integra

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "integra/exact/rational.hpp"

namespace integra {

// Scalar helpers shared by the exact and floating tiers.
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline bool exactly_zero(const std::complex<double>& x) { return x == 0.0; }
inline bool exactly_zero(const Rational& x) { return x == 0; }

// Dense univariate polynomial, coefficients low to high.
template <class S>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<S> c) : c_(std::move(c)) { trim(); }
    UPoly(const S& constant) : c_{constant} { trim(); }

    // z - root
    static UPoly linear(const S& root) { return UPoly(std::vector<S>{S(-root), S(1)}); }
    static UPoly from_roots(const std::vector<S>& roots) {
        UPoly r(S(1));
        for (const auto& x : roots) r *= linear(x);
        return r;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coeffs() const { return c_; }
    S operator[](int i) const { return i >= 0 && i <= degree() ? c_[i] : S(0); }
    S leading() const { return c_.empty() ? S(0) : c_.back(); }

    S operator()(const S& z) const {
        S r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + *it;
        return r;
    }

    // f(c z)
    UPoly dilate(const S& c) const {
        std::vector<S> out = c_;
        S pw(1);
        for (auto& x : out) {
            x *= pw;
            pw *= c;
        }
        return UPoly(std::move(out));
    }

    UPoly monic() const {
        if (c_.empty()) throw std::domain_error("monic of the zero polynomial");
        return *this * S(S(1) / c_.back());
    }

    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator*=(const UPoly& o) {
        if (c_.empty() || o.c_.empty()) {
            c_.clear();
            return *this;
        }
        std::vector<S> out(c_.size() + o.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
        c_ = std::move(out);
        trim();
        return *this;
    }
    UPoly& operator*=(const S& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
    friend UPoly operator*(UPoly a, const S& s) { return a *= s; }
    friend UPoly operator*(const S& s, UPoly a) { return a *= s; }
    UPoly operator-() const { return *this * S(-1); }

    // Quotient and remainder.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
        std::vector<S> r = c_;
        int dd = d.degree();
        if (degree() < dd) return {UPoly(), *this};
        std::vector<S> q(degree() - dd + 1, S(0));
        for (int i = degree() - dd; i >= 0; --i) {
            S f = r[i + dd] / d.c_.back();
            q[i] = f;
            for (int j = 0; j <= dd; ++j) r[i + j] -= f * d.c_[j];
            r[i + dd] = S(0);
        }
        r.resize(dd);
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }

    double max_abs() const {
        double m = 0;
        for (const auto& x : c_) m = std::max(m, magnitude(x));
        return m;
    }

private:
    void trim() {
        while (!c_.empty() && exactly_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

using CPoly = UPoly<std::complex<double>>;
using QPoly = UPoly<Rational>;

// Roots through the companion matrix.
inline std::vector<std::complex<double>> roots(const CPoly& f) {
    int n = f.degree();
    if (n < 1) return {};
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -f[i] / f.leading();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    std::vector<std::complex<double>> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    // Two Newton polishing steps.
    CPoly df;
    {
        std::vector<std::complex<double>> d;
        for (int i = 1; i <= n; ++i) d.push_back(double(i) * f[i]);
        df = CPoly(d);
    }
    for (auto& x : r)
        for (int it = 0; it < 2; ++it) {
            auto g = df(x);
            if (g != 0.0) x -= f(x) / g;
        }
    return r;
}

} // namespace integra

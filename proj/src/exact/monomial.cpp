#include "integra/exact/monomial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace integra {

namespace {

Monomial::Exponent narrow(int v) {
    if (v > std::numeric_limits<Monomial::Exponent>::max() ||
        v < std::numeric_limits<Monomial::Exponent>::min())
        throw std::overflow_error("exponent out of range");
    return static_cast<Monomial::Exponent>(v);
}

} // namespace

Monomial Monomial::var(VarId v, int power) {
    Monomial m;
    m.set(v, power);
    return m;
}

void Monomial::set(VarId v, int power) { e_.at(v) = narrow(power); }

bool Monomial::is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
}

int Monomial::degree() const {
    int d = 0;
    for (auto x : e_) d += x;
    return d;
}

std::size_t Monomial::span() const {
    for (std::size_t i = kMaxVariables; i > 0; --i)
        if (e_[i - 1] != 0) return i;
    return 0;
}

Monomial& Monomial::operator*=(const Monomial& o) {
    for (std::size_t i = 0; i < kMaxVariables; ++i) e_[i] = narrow(e_[i] + o.e_[i]);
    return *this;
}

Monomial& Monomial::operator/=(const Monomial& o) {
    for (std::size_t i = 0; i < kMaxVariables; ++i) e_[i] = narrow(e_[i] - o.e_[i]);
    return *this;
}

Monomial Monomial::inverse() const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = narrow(-e_[i]);
    return m;
}

Monomial Monomial::pow(int k) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = narrow(e_[i] * k);
    return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = std::min(a.e_[i], b.e_[i]);
    return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = std::max(a.e_[i], b.e_[i]);
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : e_) {
        h ^= static_cast<std::uint16_t>(x);
        h *= 1099511628211ull;
    }
    return h;
}

std::string Monomial::str() const {
    std::string s;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
        if (e_[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += Registry::name(static_cast<VarId>(i));
        if (e_[i] != 1) s += '^' + std::to_string(e_[i]);
    }
    return s.empty() ? "1" : s;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
        auto v = static_cast<VarId>(i);
        if (auto c = a[v] <=> b[v]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

} // namespace integra

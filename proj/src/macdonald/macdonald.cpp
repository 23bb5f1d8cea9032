#include "integra/macdonald/macdonald.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "integra/errors.hpp"
#include "integra/exact/registry.hpp"
#include "integra/trs/hamiltonian.hpp"

namespace integra {

bool is_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) return false;
        if (i && p[i] > p[i - 1]) return false;
    }
    return true;
}

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

int partition_length(const Partition& p) {
    return static_cast<int>(std::count_if(p.begin(), p.end(), [](int x) { return x > 0; }));
}

Partition pad(Partition p, int n) {
    if (partition_length(p) > n) throw std::invalid_argument("partition longer than the variable count");
    p.resize(n, 0);
    return p;
}

bool dominates(const Partition& a, const Partition& b) {
    if (partition_size(a) != partition_size(b)) return false;
    int sa = 0, sb = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return true;
}

std::vector<Partition> partitions(int k, int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rem, int cap) -> void {
        if (static_cast<int>(cur.size()) == n) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (int v = std::min(rem, cap); v >= 0; --v) {
            cur.push_back(v);
            self(self, rem - v, v);
            cur.pop_back();
        }
    };
    if (n == 0) {
        if (k == 0) out.push_back({});
        return out;
    }
    rec(rec, k, k);
    return out;
}

std::string partition_str(const Partition& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s;
}

Partition parse_partition(const std::string& s, int n) {
    Partition p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad partition entry: " + item);
        p.push_back(v);
    }
    if (!is_partition(p)) throw std::invalid_argument("not a partition: " + s);
    return pad(p, n);
}

LaurentPolynomial monomial_symmetric(const Partition& mu, const std::vector<VarId>& x) {
    Partition e = pad(mu, static_cast<int>(x.size()));
    std::sort(e.begin(), e.end());
    LaurentPolynomial out;
    do {
        Monomial m;
        for (std::size_t i = 0; i < x.size(); ++i) m.set(x[i], e[i]);
        out += LaurentPolynomial(m);
    } while (std::next_permutation(e.begin(), e.end()));
    return out;
}

std::vector<VarId> xi_vars(int n) { return vars("xi", n); }

RationalFunction SymmetricPolynomial::coefficient(const Partition& mu) const {
    auto it = coeffs.find(pad(mu, n));
    return it == coeffs.end() ? RationalFunction() : it->second;
}

RationalFunction SymmetricPolynomial::expand(const std::vector<VarId>& x) const {
    RationalFunction out;
    for (const auto& [mu, c] : coeffs) out += c * RationalFunction(monomial_symmetric(mu, x));
    return out;
}

SymmetricPolynomial SymmetricPolynomial::from_function(const RationalFunction& f, const std::vector<VarId>& x) {
    SymmetricPolynomial s;
    s.n = static_cast<int>(x.size());
    auto parts = coefficients_in(f, x);
    for (const auto& [e, c] : parts) {
        for (int v : e)
            if (v < 0) throw DegenerateInput("negative exponent in a symmetric polynomial");
        Partition mu = e;
        std::sort(mu.rbegin(), mu.rend());
        auto it = parts.find(mu);
        if (it == parts.end() || !(it->second == c)) throw DegenerateInput("function is not symmetric");
        if (mu == e) s.coeffs.emplace(mu, c);
    }
    return s;
}

SymmetricPolynomial SymmetricPolynomial::substitute(const Substitution& sub) const {
    SymmetricPolynomial out;
    out.n = n;
    for (const auto& [mu, c] : coeffs) {
        RationalFunction v = c.substitute(sub);
        if (!v.is_zero()) out.coeffs.emplace(mu, std::move(v));
    }
    return out;
}

SymmetricPolynomial SymmetricPolynomial::scaled(const RationalFunction& c) const {
    SymmetricPolynomial out;
    out.n = n;
    if (c.is_zero()) return out;
    for (const auto& [mu, x] : coeffs) out.coeffs.emplace(mu, x * c);
    return out;
}

bool SymmetricPolynomial::operator==(const SymmetricPolynomial& o) const {
    if (n != o.n) return false;
    for (const auto& [mu, c] : coeffs)
        if (!(o.coefficient(mu) == c)) return false;
    for (const auto& [mu, c] : o.coeffs)
        if (!(coefficient(mu) == c)) return false;
    return true;
}

namespace {

std::mutex oracle_mutex;
std::map<std::pair<Partition, int>, SymmetricPolynomial> oracle_cache;

} // namespace

SymmetricPolynomial macdonald_oracle(const Partition& lambda_in, int n) {
    Partition lambda = pad(lambda_in, n);
    if (!is_partition(lambda)) throw std::invalid_argument("not a partition");
    {
        std::lock_guard<std::mutex> lock(oracle_mutex);
        auto it = oracle_cache.find({lambda, n});
        if (it != oracle_cache.end()) return it->second;
    }
    auto x = xi_vars(n);
    auto h1 = trs_hamiltonian(magnetic_frame(n, "hbar"), 1);
    std::vector<Partition> below;
    for (const auto& mu : partitions(partition_size(lambda), n))
        if (dominates(lambda, mu)) below.push_back(mu); // descending lex, lambda first

    // column nu: H_1 m_nu in the monomial basis
    std::map<Partition, std::map<std::vector<int>, RationalFunction>> columns;
    for (const auto& nu : below) columns[nu] = coefficients_in(apply(h1, RationalFunction(monomial_symmetric(nu, x))), x);
    auto entry = [&](const Partition& mu, const Partition& nu) {
        auto& col = columns.at(nu);
        auto it = col.find(mu);
        return it == col.end() ? RationalFunction() : it->second;
    };
    RationalFunction eps = entry(lambda, lambda);

    SymmetricPolynomial p;
    p.n = n;
    p.coeffs.emplace(lambda, RationalFunction(1));
    for (std::size_t i = 1; i < below.size(); ++i) {
        const Partition& mu = below[i];
        RationalFunction acc;
        for (std::size_t j = 0; j < i; ++j) {
            auto it = p.coeffs.find(below[j]);
            if (it != p.coeffs.end()) acc += it->second * entry(mu, below[j]);
        }
        if (acc.is_zero()) continue;
        RationalFunction gap = eps - entry(mu, mu);
        if (gap.is_zero()) throw DegenerateInput("degenerate eigenvalues in the triangular solve");
        p.coeffs.emplace(mu, acc / gap);
    }
    std::lock_guard<std::mutex> lock(oracle_mutex);
    oracle_cache.emplace(std::make_pair(lambda, n), p);
    return p;
}

namespace {

// Dense inverse over the rationals by Gauss-Jordan.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw NotInvertible("singular transition matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rational f = 1 / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational g = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= g * a[c][j];
                inv[r][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

Rational z_factor(const Partition& rho) {
    std::map<int, int> mult;
    for (int v : rho)
        if (v > 0) ++mult[v];
    mpz_class z = 1;
    for (const auto& [part, m] : mult)
        for (int i = 1; i <= m; ++i) z *= part * i;
    return Rational(z);
}

} // namespace

SymmetricPolynomial macdonald_gram_schmidt(const Partition& lambda_in, int n) {
    Partition lambda = pad(lambda_in, n);
    const int k = partition_size(lambda);
    SymmetricPolynomial out;
    out.n = n;
    if (k == 0) {
        out.coeffs.emplace(lambda, RationalFunction(1));
        return out;
    }
    // Work with k variables so that every partition of k is visible.
    auto y = vars("y", k);
    std::vector<Partition> all = partitions(k, k);
    std::reverse(all.begin(), all.end()); // ascending lex, a linear extension of dominance
    const std::size_t m = all.size();
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < m; ++i) index[all[i]] = i;

    // p_rho = sum_nu L[rho][nu] m_nu
    std::vector<std::vector<Rational>> l(m, std::vector<Rational>(m, Rational(0)));
    for (std::size_t r = 0; r < m; ++r) {
        LaurentPolynomial pr(1);
        for (int part : all[r]) {
            if (part == 0) continue;
            LaurentPolynomial s;
            for (VarId v : y) s += LaurentPolynomial::variable(v, part);
            pr *= s;
        }
        for (std::size_t c = 0; c < m; ++c) {
            Monomial mono;
            for (int i = 0; i < k; ++i) mono.set(y[i], all[c][i]);
            l[r][c] = pr.coefficient(mono);
        }
    }
    // m_a = sum_rho inv[a][rho] p_rho
    auto linv = invert(l);
    VarId q = var("q"), h = var("hbar");
    std::vector<RationalFunction> norm(m);
    for (std::size_t r = 0; r < m; ++r) {
        RationalFunction w(z_factor(all[r]));
        for (int part : all[r]) {
            if (part == 0) continue;
            w *= RationalFunction::ratio(LaurentPolynomial(1) - LaurentPolynomial::variable(q, part),
                                         LaurentPolynomial(1) - LaurentPolynomial::variable(h, part));
        }
        norm[r] = w;
    }
    std::vector<std::vector<RationalFunction>> gram(m, std::vector<RationalFunction>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            RationalFunction g;
            for (std::size_t r = 0; r < m; ++r) {
                Rational c = linv[a][r] * linv[b][r];
                if (c != 0) g += norm[r] * RationalFunction(c);
            }
            gram[a][b] = gram[b][a] = g;
        }
    auto inner = [&](const std::vector<RationalFunction>& u, const std::vector<RationalFunction>& v) {
        RationalFunction s;
        for (std::size_t a = 0; a < m; ++a) {
            if (u[a].is_zero()) continue;
            for (std::size_t b = 0; b < m; ++b)
                if (!v[b].is_zero()) s += u[a] * v[b] * gram[a][b];
        }
        return s;
    };
    Partition target = pad(lambda, k);
    std::size_t t = index.at(target);
    std::vector<std::vector<RationalFunction>> basis;
    for (std::size_t i = 0; i <= t; ++i) {
        std::vector<RationalFunction> v(m);
        v[i] = 1;
        std::vector<RationalFunction> e = v;
        for (const auto& b : basis) {
            RationalFunction c = inner(v, b) / inner(b, b);
            for (std::size_t j = 0; j < m; ++j)
                if (!b[j].is_zero()) e[j] -= c * b[j];
        }
        basis.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (basis[t][j].is_zero() || partition_length(all[j]) > n) continue;
        out.coeffs.emplace(pad(Partition(all[j].begin(), all[j].begin() + std::min(k, n)), n), basis[t][j]);
    }
    return out;
}

SymmetricPolynomial schur_polynomial(const Partition& lambda_in, int n) {
    Partition lambda = pad(lambda_in, n);
    auto x = xi_vars(n);
    auto alternant = [&](const std::vector<int>& e) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        LaurentPolynomial out;
        do {
            int inv = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (perm[i] > perm[j]) ++inv;
            Monomial m;
            for (int i = 0; i < n; ++i) m.set(x[i], e[perm[i]]);
            out += LaurentPolynomial(m, inv % 2 ? -1 : 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    };
    std::vector<int> top(n), base(n);
    for (int j = 0; j < n; ++j) {
        top[j] = lambda[j] + n - 1 - j;
        base[j] = n - 1 - j;
    }
    auto quot = alternant(top).divide_exact(alternant(base));
    if (!quot) throw NotDivisible("alternant not divisible by the Vandermonde");
    return SymmetricPolynomial::from_function(RationalFunction(*quot), x);
}

std::vector<RationalFunction> truncation_locus(const Partition& lambda, LocusDirection dir) {
    VarId q = var("q"), h = var("hbar");
    std::vector<RationalFunction> out;
    for (std::size_t i = 0; i + 1 < lambda.size(); ++i) {
        Monomial m = Monomial::var(q, lambda[i + 1] - lambda[i]);
        m *= Monomial::var(h, dir == LocusDirection::AsPrinted ? 1 : -1);
        out.emplace_back(m);
    }
    return out;
}

std::vector<RationalFunction> locus_point(const Partition& lambda, LocusDirection dir) {
    VarId q = var("q"), h = var("hbar");
    std::vector<RationalFunction> out;
    int sign = dir == LocusDirection::AsPrinted ? 1 : -1;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        Monomial m = Monomial::var(q, lambda[i]);
        m *= Monomial::var(h, sign * static_cast<int>(i));
        out.emplace_back(m);
    }
    return out;
}

RationalFunction elementary(const std::vector<RationalFunction>& a, int k) {
    std::vector<RationalFunction> e(k + 1);
    e[0] = 1;
    for (const auto& x : a)
        for (int j = k; j >= 1; --j) e[j] += e[j - 1] * x;
    return e[k];
}

bool is_monomial(const RationalFunction& f) { return f.factors().empty() && f.cofactor().is_monomial(); }

bool EigenReport::all_exact() const {
    for (const auto& e : entries)
        if (!e.exact) return false;
    return true;
}

EigenReport eigencheck(const Partition& lambda_in, int n, LocusDirection dir) {
    Partition lambda = pad(lambda_in, n);
    EigenReport rep;
    rep.lambda = lambda;
    rep.n = n;
    rep.direction = dir;
    auto x = xi_vars(n);
    auto frame = magnetic_frame(n, "hbar");
    RationalFunction p = macdonald_oracle(lambda, n).expand(x);
    auto a = locus_point(lambda, dir);
    for (int k = 1; k <= n; ++k) {
        EigenEntry e;
        e.k = k;
        RationalFunction hp = apply(trs_hamiltonian(frame, k), p);
        auto parts = coefficients_in(hp, x);
        auto it = parts.find(lambda);
        e.eigenvalue = it == parts.end() ? RationalFunction() : it->second;
        e.residual = hp - e.eigenvalue * p;
        e.exact = e.residual.is_zero();
        if (k == 1) {
            rep.scale = e.eigenvalue / elementary(a, 1);
            rep.scale_is_monomial = is_monomial(rep.scale);
        }
        e.normalization = e.eigenvalue / (rep.scale.pow(k) * elementary(a, k));
        if (k == n)
            rep.top_is_q_power = e.eigenvalue == RationalFunction(Monomial::var(var("q"), partition_size(lambda)));
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

LocusDirection resolve_locus_direction() {
    for (auto dir : {LocusDirection::AsPrinted, LocusDirection::Flipped}) {
        bool ok = true;
        for (const Partition& lam : {Partition{1, 0}, Partition{2, 1, 0}, Partition{3, 1, 0}}) {
            auto rep = eigencheck(lam, static_cast<int>(lam.size()), dir);
            ok = ok && rep.scale_is_monomial;
        }
        if (ok) return dir;
    }
    throw DegenerateInput("no locus direction matches the eigenvalues");
}

} // namespace integra

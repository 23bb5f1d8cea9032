#include "integra/vertex/vertex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "integra/errors.hpp"
#include "integra/exact/registry.hpp"
#include "integra/exact/special.hpp"
#include "integra/trs/hamiltonian.hpp"

namespace integra {

FlagFixedPoint FlagFixedPoint::reversed(int n) {
    FlagFixedPoint f;
    for (int i = n; i >= 1; --i) f.order.push_back(i);
    return f;
}

FlagFixedPoint FlagFixedPoint::identity(int n) {
    FlagFixedPoint f;
    for (int i = 1; i <= n; ++i) f.order.push_back(i);
    return f;
}

std::vector<FlagFixedPoint> FlagFixedPoint::all(int n) {
    std::vector<FlagFixedPoint> out;
    FlagFixedPoint f = identity(n);
    do {
        out.push_back(f);
    } while (std::next_permutation(f.order.begin(), f.order.end()));
    return out;
}

std::string FlagFixedPoint::str() const {
    std::string s;
    for (int i = 1; i <= n(); ++i) {
        s += i > 1 ? " c {" : "{";
        auto sub = subset(i);
        std::sort(sub.begin(), sub.end());
        for (std::size_t j = 0; j < sub.size(); ++j) s += (j ? "," : "") + std::to_string(sub[j]);
        s += "}";
    }
    return s;
}

std::vector<VarId> z_vars(int n) { return vars("z", n - 1); }
std::vector<VarId> a_vars(int n) { return vars("a", n); }

namespace {

struct Factors {
    std::vector<Monomial> num, den; // factors (1 - m)
};

// (x;q)_d appended on the given side; negative d moves the factors across.
void pochhammer(Factors& f, const Monomial& x, const Monomial& q, int d, bool top) {
    auto& pos = top ? f.num : f.den;
    auto& neg = top ? f.den : f.num;
    if (d >= 0) {
        Monomial m = x;
        for (int k = 0; k < d; ++k) {
            pos.push_back(m);
            m *= q;
        }
    } else {
        Monomial qi = q.inverse(), m = x * qi;
        for (int j = 1; j <= -d; ++j) {
            neg.push_back(m);
            m *= qi;
        }
    }
}

void compositions(int total, int parts, std::vector<int>& cur, const std::function<void()>& visit) {
    if (parts == 1) {
        cur.push_back(total);
        visit();
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(total - v, parts - 1, cur, visit);
        cur.pop_back();
    }
}

} // namespace

TruncatedSeries vertex_coefficients(const VertexSpec& spec) {
    const int n = spec.fp.n();
    if (static_cast<int>(spec.caps.size()) != n - 1) throw std::invalid_argument("vertex caps must have n-1 entries");
    for (int c : spec.caps)
        if (c < 0) throw std::invalid_argument("vertex caps must be nonnegative");
    VarId qv = var("q"), hv = var("hbar");
    Monomial q = Monomial::var(qv), h = Monomial::var(hv);
    std::vector<Monomial> a = spec.a;
    if (a.empty())
        for (VarId v : a_vars(n)) a.push_back(Monomial::var(v));
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("vertex needs n equivariant values");

    // x[i][j], i = 1..n, j = 0..i-1
    std::vector<std::vector<Monomial>> x(n + 1);
    for (int i = 1; i < n; ++i)
        for (int idx : spec.fp.subset(i)) x[i].push_back(a.at(idx - 1));
    x[n] = a;

    Monomial s = q / h;
    auto zs = z_vars(n);
    TruncatedSeries out(zs, spec.caps);

    // d[i][j] for i = 1..n-1; d[n][k] = 0
    std::vector<std::vector<int>> d(n + 1);
    d[n].assign(n, 0);
    std::vector<int> node(n - 1, 0);
    std::function<void(int)> level = [&](int i) {
        if (i == n) {
            Factors f;
            for (int ii = 1; ii < n; ++ii) {
                for (int j = 0; j < ii; ++j)
                    for (int k = 0; k < ii; ++k) {
                        int m = d[ii][j] - d[ii][k];
                        Monomial r = x[ii][j] / x[ii][k];
                        pochhammer(f, q * r, q, m, true);
                        pochhammer(f, h * r, q, m, false);
                    }
                for (int j = 0; j < ii; ++j)
                    for (int k = 0; k <= ii; ++k) {
                        int m = d[ii][j] - d[ii + 1][k];
                        Monomial r = x[ii + 1][k] / x[ii][j];
                        if (spec.convention == VertexConvention::InvertedBlock2) r = r.inverse();
                        pochhammer(f, h * r, q, m, true);
                        pochhammer(f, q * r, q, m, false);
                    }
            }
            for (const auto& m : f.num)
                if (m.is_one()) return;
            for (const auto& m : f.den)
                if (m.is_one()) throw PoleError("vertex denominator vanishes at degree " + std::to_string(node[0]));
            RationalFunction c(1);
            for (const auto& m : f.num) c *= one_minus(m);
            for (const auto& m : f.den) c /= one_minus(m);
            Monomial pre;
            for (int ii = 0; ii < n - 1; ++ii) pre *= s.pow(node[ii]);
            c *= RationalFunction(pre);
            out.add_term(node, c);
            return;
        }
        for (int di = 0; di <= spec.caps[i - 1]; ++di) {
            node[i - 1] = di;
            std::vector<int> cur;
            compositions(di, i, cur, [&] {
                d[i] = cur;
                level(i + 1);
            });
        }
    };
    if (n == 1) {
        out.add_term({}, RationalFunction(1));
        return out;
    }
    level(1);
    return out;
}

namespace {

// V * prod_i xi_i^{e_i} with z_i = xi_i / xi_{i+1}.
RationalFunction series_to_function(const TruncatedSeries& v, const std::vector<int>& e) {
    const int n = static_cast<int>(e.size());
    auto xi = xi_vars(n);
    RationalFunction f;
    for (const auto& [idx, c] : v.terms()) {
        Monomial m;
        for (int i = 0; i < n; ++i) m.set(xi[i], e[i]);
        for (int i = 0; i + 1 < n; ++i) {
            m *= Monomial::var(xi[i], idx[i]);
            m *= Monomial::var(xi[i + 1], -idx[i]);
        }
        f += c * RationalFunction(m);
    }
    return f;
}

std::vector<Monomial> locus_monomials(const Partition& lambda, LocusDirection dir) {
    std::vector<Monomial> out;
    for (const auto& r : locus_point(lambda, dir)) out.push_back(r.cofactor().leading().mono);
    return out;
}

} // namespace

TruncationReport truncation_check(const Partition& lambda_in, int n, int cap, const TruncationOptions& opt) {
    Partition lambda = pad(lambda_in, n);
    const int size = partition_size(lambda);
    if (cap < size) throw std::invalid_argument("truncation cap must be at least |lambda|");
    TruncationReport rep;
    rep.lambda = lambda;
    VertexSpec spec;
    spec.fp = opt.fp ? *opt.fp : FlagFixedPoint::reversed(n);
    spec.caps.assign(n - 1, cap + 1);
    spec.convention = opt.convention;
    spec.a = locus_monomials(lambda, opt.direction);
    TruncatedSeries v;
    try {
        v = vertex_coefficients(spec);
    } catch (const PoleError& e) {
        rep.failure = e.what();
        return rep;
    }
    rep.terminated = true;
    for (const auto& [idx, c] : v.terms()) {
        rep.max_degree = std::max(rep.max_degree, std::accumulate(idx.begin(), idx.end(), 0));
        for (int di : idx)
            if (di > size) rep.terminated = false;
    }
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = lambda[n - 1 - i];
    RationalFunction f = series_to_function(v, e);
    auto xi = xi_vars(n);
    auto parts = coefficients_in(f, xi);
    rep.polynomial = true;
    for (const auto& [k, c] : parts)
        for (int x : k)
            if (x < 0) rep.polynomial = false;
    if (!rep.polynomial) {
        rep.failure = "negative powers of xi";
        return rep;
    }
    SymmetricPolynomial sym;
    try {
        sym = SymmetricPolynomial::from_function(f, xi);
        rep.symmetric = true;
    } catch (const DegenerateInput&) {
        rep.failure = "not symmetric";
        return rep;
    }
    rep.constant = sym.coefficient(lambda);
    if (rep.constant.is_zero()) {
        rep.failure = "no m_lambda term";
        return rep;
    }
    rep.matches_oracle = sym == macdonald_oracle(lambda, n).scaled(rep.constant);
    if (!rep.matches_oracle) rep.failure = "differs from the oracle";
    return rep;
}

std::vector<ConventionCandidate> resolve_vertex_convention(int n) {
    std::vector<ConventionCandidate> out;
    Partition lambda(n, 0);
    lambda[0] = 1;
    for (auto conv : {VertexConvention::AsPrinted, VertexConvention::InvertedBlock2})
        for (auto dir : {LocusDirection::AsPrinted, LocusDirection::Flipped})
            for (const auto& fp : FlagFixedPoint::all(n)) {
                TruncationOptions opt{conv, dir, fp};
                if (truncation_check(lambda, n, 2, opt).pass()) out.push_back({conv, dir, fp});
            }
    return out;
}

EigenResidualOptions EigenResidualOptions::electric_default() {
    EigenResidualOptions o;
    o.electric = true;
    o.shift_base = Monomial::var(var("q"));
    o.coupling = Monomial::var(var("hbar"));
    return o;
}

EigenResidualOptions EigenResidualOptions::magnetic_default() {
    EigenResidualOptions o;
    o.electric = false;
    o.shift_base = Monomial::var(var("q"));
    o.coupling = Monomial::var(var("hbar"));
    return o;
}

bool EigenResidualReport::pass() const {
    if (!cocycle) return false;
    for (const auto& c : constants)
        for (VarId v : a_vars(n))
            if (c.involves(v)) return false;
    for (const auto& r : residuals)
        if (!r.is_zero()) return false;
    return !residuals.empty();
}

namespace {

using Index = TruncatedSeries::Index;

TruncatedSeries shift_index(const TruncatedSeries& s, const Index& w) {
    TruncatedSeries out(s.vars(), s.caps());
    for (const auto& [idx, c] : s.terms()) {
        Index e = idx;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += w[i];
        out.add_term(e, c);
    }
    return out;
}

Index add(Index a, const Index& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

// z-exponent of xi_i / xi_n, i 1-based.
Index weight(int n, int i) {
    Index w(n - 1, 0);
    for (int k = i; k <= n - 1; ++k) w[k - 1] = 1;
    return w;
}

std::optional<Index> first_nonzero(const TruncatedSeries& s) {
    if (s.is_zero()) return std::nullopt;
    Index best;
    int deg = -1;
    for (const auto& [idx, c] : s.terms()) {
        int d = std::accumulate(idx.begin(), idx.end(), 0);
        if (deg < 0 || d < deg) {
            deg = d;
            best = idx;
        }
    }
    return best;
}

RationalFunction spec_rf(const RationalFunction& f, const Substitution& s) { return s.empty() ? f : f.substitute(s); }

// Electric frame: shifts act on a, the vertex depends on a through its coefficients.
EigenResidualReport electric_residual(int n, int cap, const std::vector<int>& sigma, const EigenResidualOptions& opt) {
    EigenResidualReport rep;
    rep.n = n;
    rep.cap = cap;
    rep.sigma = sigma;
    auto av = a_vars(n);
    VertexSpec spec;
    spec.fp = FlagFixedPoint::reversed(n);
    spec.caps.assign(n - 1, cap);
    TruncatedSeries v = vertex_coefficients(spec);
    if (!opt.specialize.empty()) v = v.substitute(opt.specialize);
    auto frame = electric_frame(n, LaurentPolynomial(opt.coupling));
    auto shifted = [&](const TruncatedSeries& s, const std::vector<int>& mask) {
        Substitution sub;
        for (int m = 0; m < n; ++m)
            if (mask[m]) sub.set(av[m], Monomial::var(av[m]) * opt.shift_base);
        return s.substitute(sub);
    };
    auto shift_rf = [&](const RationalFunction& f, const std::vector<int>& mask) {
        Substitution sub;
        for (int m = 0; m < n; ++m)
            if (mask[m]) sub.set(av[m], Monomial::var(av[m]) * opt.shift_base);
        return f.substitute(sub);
    };
    auto unit = [&](int m) {
        std::vector<int> mask(n, 0);
        mask[m] = 1;
        return mask;
    };

    // Single-shift responses, solved in the order sigma = n, n-1, ..., 1.
    rep.responses.assign(n, RationalFunction());
    std::vector<int> by_sigma(n);
    std::iota(by_sigma.begin(), by_sigma.end(), 0);
    std::sort(by_sigma.begin(), by_sigma.end(), [&](int x, int y) { return sigma[x] > sigma[y]; });
    std::vector<TruncatedSeries> vm(n);
    std::vector<RationalFunction> coeff1(n);
    for (int m = 0; m < n; ++m) {
        vm[m] = shifted(v, unit(m));
        coeff1[m] = spec_rf(trs_coefficient(frame, unit(m)), opt.specialize);
    }
    std::vector<bool> fitted(n, false);
    for (int m : by_sigma) {
        Index target = weight(n, sigma[m]);
        RationalFunction rhs;
        for (int i = 1; i <= n; ++i) {
            Index off = target;
            bool ok = true;
            Index w = weight(n, i);
            for (int k = 0; k < n - 1; ++k) {
                off[k] -= w[k];
                ok = ok && off[k] >= 0;
            }
            if (ok) rhs += v.coefficient(off);
        }
        for (int mp = 0; mp < n; ++mp) {
            if (!fitted[mp]) continue;
            Index off = target;
            bool ok = true;
            Index w = weight(n, sigma[mp]);
            for (int k = 0; k < n - 1; ++k) {
                off[k] -= w[k];
                ok = ok && off[k] >= 0;
            }
            if (ok) rhs -= coeff1[mp] * rep.responses[mp] * vm[mp].coefficient(off);
        }
        rep.responses[m] = rhs / coeff1[m];
        fitted[m] = true;
    }

    // Multi-shift responses by composing single shifts in increasing index order.
    auto response = [&](const std::vector<int>& order) {
        RationalFunction r(1);
        std::vector<int> done(n, 0);
        for (int m : order) {
            r *= shift_rf(rep.responses[m], done);
            done[m] = 1;
        }
        return r;
    };
    rep.cocycle = true;
    for (int i = 0; i < n && rep.cocycle; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(response({i, j}) == response({j, i}))) {
                rep.cocycle = false;
                break;
            }

    for (int r = 1; r <= n; ++r) {
        TruncatedSeries lhs(v.vars(), v.caps()), e(v.vars(), v.caps());
        for (const auto& mask : subsets(n, r)) {
            std::vector<int> order;
            Index w(n - 1, 0);
            for (int m = 0; m < n; ++m)
                if (mask[m]) {
                    order.push_back(m);
                    w = add(w, weight(n, sigma[m]));
                }
            RationalFunction c = spec_rf(trs_coefficient(frame, mask), opt.specialize) * response(order);
            lhs += shift_index(shifted(v, mask), w) * c;
        }
        Index wmin(n - 1, 0);
        for (const auto& mask : subsets(n, r)) {
            Index w(n - 1, 0);
            for (int i = 0; i < n; ++i)
                if (mask[i]) w = add(w, weight(n, i + 1));
            e += shift_index(v, w);
        }
        for (int i = n - r + 1; i <= n; ++i) wmin = add(wmin, weight(n, i));
        RationalFunction c = lhs.coefficient(wmin);
        rep.constants.push_back(c);
        TruncatedSeries res = lhs - e * c;
        rep.first_failure.push_back(first_nonzero(res));
        rep.residuals.push_back(std::move(res));
    }
    return rep;
}

// Expansion of (t u_i - u_j)/(u_i - u_j) in the small ratio, as a z-series.
TruncatedSeries coupling_series(int n, int i, int j, const Monomial& t, const std::vector<int>& caps) {
    auto zs = z_vars(n);
    TruncatedSeries s(zs, caps);
    RationalFunction tt(t);
    int lo = std::min(i, j), hi = std::max(i, j);
    Index w(n - 1, 0);
    for (int k = lo; k < hi; ++k) w[k - 1] = 1;
    int kmax = 0;
    for (int k = lo; k < hi; ++k) kmax = std::max(kmax, caps[k - 1]);
    // i < j: 1 + (1 - t) sum u^k ; i > j: t + (t - 1) sum u^k, u = xi_lo / xi_hi
    s.add_term(Index(n - 1, 0), i < j ? RationalFunction(1) : tt);
    RationalFunction tail = i < j ? RationalFunction(1) - tt : tt - RationalFunction(1);
    for (int k = 1; k <= kmax; ++k) {
        Index e(n - 1, 0);
        for (int x = 0; x < n - 1; ++x) e[x] = w[x] * k;
        s.add_term(e, tail);
    }
    return s;
}

// Magnetic frame: shifts act on xi, i.e. on z, and pair with a_{sigma m}.
EigenResidualReport magnetic_residual(int n, int cap, const std::vector<int>& sigma, const EigenResidualOptions& opt) {
    EigenResidualReport rep;
    rep.n = n;
    rep.cap = cap;
    rep.sigma = sigma;
    auto av = a_vars(n);
    VertexSpec spec;
    spec.fp = FlagFixedPoint::reversed(n);
    spec.caps.assign(n - 1, cap);
    TruncatedSeries v = vertex_coefficients(spec);
    if (!opt.specialize.empty()) v = v.substitute(opt.specialize);
    RationalFunction qb(opt.shift_base);
    auto shifted = [&](const std::vector<int>& mask) {
        TruncatedSeries out(v.vars(), v.caps());
        for (const auto& [idx, c] : v.terms()) {
            int e = 0;
            for (int m = 0; m < n; ++m) {
                if (!mask[m]) continue;
                if (m < n - 1) e += idx[m];
                if (m > 0) e -= idx[m - 1];
            }
            out.add_term(idx, c * qb.pow(e));
        }
        return out;
    };
    auto coeff = [&](const std::vector<int>& mask) {
        TruncatedSeries s = TruncatedSeries::constant(v.vars(), v.caps(), RationalFunction(1));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (mask[i] && !mask[j]) s = s * coupling_series(n, i + 1, j + 1, opt.coupling, v.caps());
        if (!opt.specialize.empty()) s = s.substitute(opt.specialize);
        return s;
    };
    // Responses kappa_m a_{sigma m}, kappa fixed by the z^0 order of r = 1.
    rep.responses.assign(n, RationalFunction());
    for (int m = 0; m < n; ++m) {
        std::vector<int> mask(n, 0);
        mask[m] = 1;
        RationalFunction lead = coeff(mask).coefficient(Index(n - 1, 0));
        rep.responses[m] = RationalFunction::variable(av[sigma[m] - 1]) / lead;
    }
    rep.cocycle = true;
    std::vector<RationalFunction> a;
    for (VarId x : av) a.push_back(RationalFunction::variable(x));
    for (int r = 1; r <= n; ++r) {
        TruncatedSeries lhs(v.vars(), v.caps());
        for (const auto& mask : subsets(n, r)) {
            RationalFunction resp(1);
            for (int m = 0; m < n; ++m)
                if (mask[m]) resp *= rep.responses[m];
            lhs += coeff(mask) * shifted(mask) * resp;
        }
        RationalFunction c = lhs.coefficient(Index(n - 1, 0)) / elementary(a, r);
        rep.constants.push_back(c);
        TruncatedSeries res = lhs - v * (c * elementary(a, r));
        rep.first_failure.push_back(first_nonzero(res));
        rep.residuals.push_back(std::move(res));
    }
    return rep;
}

} // namespace

EigenResidualReport eigen_residual(int n, int cap, const EigenResidualOptions& opt) {
    if (n < 2) throw std::invalid_argument("eigen residual needs n >= 2");
    if (cap < 1) throw std::invalid_argument("eigen residual needs cap >= 1");
    auto run = [&](const std::vector<int>& sigma) {
        return opt.electric ? electric_residual(n, cap, sigma, opt) : magnetic_residual(n, cap, sigma, opt);
    };
    if (opt.sigma) return run(*opt.sigma);
    std::vector<int> sigma(n);
    std::iota(sigma.rbegin(), sigma.rend(), 1);
    std::optional<EigenResidualReport> best;
    auto score = [](const EigenResidualReport& r) {
        int s = 0;
        for (const auto& f : r.first_failure)
            s += f ? std::accumulate(f->begin(), f->end(), 0) : 1000;
        return s + (r.cocycle ? 1 : 0);
    };
    do {
        auto rep = run(sigma);
        if (rep.pass()) return rep;
        if (!best || score(rep) > score(*best)) best = std::move(rep);
    } while (std::prev_permutation(sigma.begin(), sigma.end()));
    return *best;
}

} // namespace integra

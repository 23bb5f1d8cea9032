#include "integra/qoper/qoper.hpp"

#include <stdexcept>

namespace integra {

namespace {

template <class S>
S power(const S& x, int n) {
    S r(1);
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

template <class M, class T>
T laplace(const std::vector<std::vector<M>>& m, const T& one) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    if (n == 1) return T(m[0][0]);
    T total = one * M(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<M>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<M> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(std::move(row));
        }
        T t = laplace(minor, one) * T(m[0][j]);
        if (j % 2)
            total -= t;
        else
            total += t;
    }
    return total;
}

template <class S>
bool near_zero(const S& x, double scale) {
    if constexpr (std::is_same_v<S, Rational>)
        return x == 0;
    else
        return std::abs(x) <= 1e-14 * scale;
}

template <class S>
double relative_of(const UPoly<S>& r, double scale) {
    if (r.is_zero()) return 0;
    return scale > 0 ? r.max_abs() / scale : r.max_abs();
}

} // namespace

std::vector<int> plus_rows(int rank, int j) {
    std::vector<int> rows;
    for (int i = rank + 1 - j; i <= rank; ++i) rows.push_back(i);
    return rows;
}

std::vector<int> minus_rows(int rank, int j) {
    std::vector<int> rows{rank - j};
    for (int i = rank + 2 - j; i <= rank; ++i) rows.push_back(i);
    return rows;
}

template <class S>
UPoly<S> casoratian(const QOperData<S>& d, const std::vector<int>& rows) {
    std::vector<std::vector<UPoly<S>>> m;
    for (int i : rows) {
        std::vector<UPoly<S>> row;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            int jj = static_cast<int>(j);
            row.push_back(d.sections.at(i).dilate(power(d.q, jj)) * power(d.xi.at(i), jj));
        }
        m.push_back(std::move(row));
    }
    return laplace(m, UPoly<S>(S(1)));
}

template <class S>
S twist_vandermonde(const QOperData<S>& d, const std::vector<int>& rows) {
    std::vector<std::vector<S>> m;
    for (int i : rows) {
        std::vector<S> row;
        for (std::size_t j = 0; j < rows.size(); ++j) row.push_back(power(S(d.q * d.xi.at(i)), static_cast<int>(j)));
        m.push_back(std::move(row));
    }
    return laplace(m, S(1));
}

template <class S>
UPoly<S> flag_determinant(const QOperData<S>& d, int k) {
    if (k < 0 || k > d.size()) throw std::out_of_range("flag determinant index out of range");
    return casoratian(d, plus_rows(d.rank, k));
}

template <class S>
QPair<S> q_polynomials(const QOperData<S>& d, int j) {
    if (j < 1 || j > d.rank) throw std::out_of_range("Q-polynomial index out of range");
    auto rp = plus_rows(d.rank, j), rm = minus_rows(d.rank, j);
    S vp = twist_vandermonde(d, rp), vm = twist_vandermonde(d, rm);
    double scale = 0;
    for (const auto& x : d.xi) scale = std::max(scale, std::pow(magnitude(S(d.q * x)), j - 1));
    if (near_zero(vp, scale) || near_zero(vm, scale)) throw DegenerateInput("singular twist Vandermonde");
    return {casoratian(d, rp) * S(S(1) / vp), casoratian(d, rm) * S(S(1) / vm)};
}

template <class S>
std::pair<S, S> node_twists(const QOperData<S>& d, int k) {
    return {d.xi.at(d.rank - k), d.xi.at(d.rank + 1 - k)};
}

template <class S>
UPoly<S> wronskian(const QOperData<S>& d, int k) {
    UPoly<S> w(S(1));
    for (int j = 0; j < k; ++j) w *= d.gauge.dilate(power(d.q, j));
    if (k == d.size()) w *= d.lambda;
    return w;
}

template <class S>
std::vector<QQNode<S>> qq_residual(const QOperData<S>& d) {
    const int r = d.rank;
    auto monic_or_throw = [](const UPoly<S>& f) {
        if (f.is_zero()) throw DegenerateInput("vanishing Q-polynomial");
        return f.monic();
    };
    std::vector<UPoly<S>> qp(r + 2), qm(r + 1);
    qp[0] = qp[r + 1] = UPoly<S>(S(1));
    for (int k = 1; k <= r; ++k) {
        qp[k] = monic_or_throw(casoratian(d, plus_rows(r, k)));
        qm[k] = monic_or_throw(casoratian(d, minus_rows(r, k)));
    }
    std::vector<QQNode<S>> out;
    for (int k = 1; k <= r; ++k) {
        auto [ea, eb] = node_twists(d, k);
        UPoly<S> t1 = qp[k].dilate(d.q) * qm[k] * eb;
        UPoly<S> t2 = qp[k] * qm[k].dilate(d.q) * ea;
        UPoly<S> lhs = t1 - t2;
        UPoly<S> lam = k == r ? d.lambda : UPoly<S>(S(1));
        UPoly<S> rhs = lam * qp[k - 1].dilate(d.q) * qp[k + 1] * S(eb - ea);
        QQNode<S> node;
        node.degenerate_twist = near_zero(S(eb - ea), magnitude(ea) + magnitude(eb));
        if (node.degenerate_twist || rhs.is_zero()) {
            node.residual = lhs;
        } else {
            node.constant = lhs.leading() / rhs.leading();
            node.residual = lhs - rhs * node.constant;
        }
        node.relative = relative_of(node.residual, std::max(t1.max_abs(), t2.max_abs()));
        out.push_back(std::move(node));
    }
    return out;
}

template <class S>
WronskianReport<S> wronskian_factorization_check(const QOperData<S>& d, int k, double tol) {
    WronskianReport<S> rep;
    rep.k = k;
    UPoly<S> det = flag_determinant(d, k);
    UPoly<S> w = wronskian(d, k);
    auto [quot, rem] = det.divmod(w);
    rep.remainder = relative_of(rem, det.max_abs());
    if constexpr (std::is_same_v<S, Rational>)
        rep.divisible = rem.is_zero();
    else
        rep.divisible = rep.remainder <= tol;
    if (!rep.divisible || quot.is_zero()) throw NotDivisible("flag determinant is not divisible by W_" + std::to_string(k));
    rep.beta = quot.leading();
    rep.v = quot.monic();
    return rep;
}

#define INTEGRA_QOPER_INSTANTIATE(S)                                                           \
    template UPoly<S> casoratian(const QOperData<S>&, const std::vector<int>&);                \
    template S twist_vandermonde(const QOperData<S>&, const std::vector<int>&);                \
    template UPoly<S> flag_determinant(const QOperData<S>&, int);                              \
    template QPair<S> q_polynomials(const QOperData<S>&, int);                                 \
    template std::pair<S, S> node_twists(const QOperData<S>&, int);                            \
    template UPoly<S> wronskian(const QOperData<S>&, int);                                     \
    template std::vector<QQNode<S>> qq_residual(const QOperData<S>&);                          \
    template WronskianReport<S> wronskian_factorization_check(const QOperData<S>&, int, double);

INTEGRA_QOPER_INSTANTIATE(cplx)
INTEGRA_QOPER_INSTANTIATE(Rational)

std::vector<BetheRoot> bethe_residual(const BetheConfiguration& c, cplx q) {
    const int r = static_cast<int>(c.roots.size());
    std::vector<CPoly> qp(r + 2, CPoly(cplx(1)));
    for (int k = 1; k <= r; ++k) qp[k] = CPoly::from_roots(c.roots[k - 1]);
    auto guarded = [](const std::vector<cplx>& rs, cplx x) {
        cplx v = 1;
        double scale = 1;
        for (const auto& s : rs) {
            v *= x - s;
            scale *= std::abs(x) + std::abs(s);
        }
        if (std::abs(v) <= 1e-12 * scale) throw PoleError("Bethe root collides with a q-shifted root");
        return v;
    };
    std::vector<BetheRoot> out;
    for (int k = 1; k <= r; ++k) {
        cplx ea = c.xi.at(r - k), eb = c.xi.at(r + 1 - k);
        const CPoly& lam = c.lambda.at(k - 1);
        for (const auto& s : c.roots[k - 1]) {
            cplx up = guarded(c.roots[k - 1], q * s), down = guarded(c.roots[k - 1], s / q);
            cplx t1 = eb * up * lam(s / q) * qp[k - 1](s) * qp[k + 1](s / q);
            cplx t2 = ea * down * lam(s) * qp[k - 1](q * s) * qp[k + 1](s);
            double scale = std::abs(t1) + std::abs(t2);
            out.push_back({k, s, scale > 0 ? std::abs(t1 + t2) / scale : 0.0});
        }
    }
    return out;
}

BetheConfiguration bethe_configuration(const QOperData<cplx>& d) {
    BetheConfiguration c;
    c.xi = d.xi;
    for (int k = 1; k <= d.rank; ++k) {
        c.roots.push_back(roots(casoratian(d, plus_rows(d.rank, k))));
        c.lambda.push_back(k == d.rank ? d.lambda : CPoly(cplx(1)));
    }
    return c;
}

QOperData<cplx> oper_from_momenta(const std::vector<cplx>& xi, const std::vector<cplx>& a,
                                  const std::vector<cplx>& p, cplx q) {
    if (xi.size() != a.size() || xi.size() != p.size() || xi.empty())
        throw std::invalid_argument("oper data sizes disagree");
    QOperData<cplx> d;
    d.rank = static_cast<int>(xi.size()) - 1;
    d.xi = xi;
    d.q = q;
    for (const auto& x : p) d.sections.push_back(CPoly::linear(x));
    d.lambda = CPoly::from_roots(a);
    return d;
}

bool QOperReport::pass(double d_tol, double qq_tol, double bethe_tol) const {
    if (!(d_check < d_tol)) return false;
    for (double x : qq_residuals)
        if (!(x < qq_tol)) return false;
    for (double x : bethe_residuals)
        if (!(x < bethe_tol)) return false;
    return true;
}

QOperReport qoper_verify(const QOperData<cplx>& d) {
    QOperReport rep;
    CPoly dd = flag_determinant(d, d.size());
    CPoly w = wronskian(d, d.size());
    cplx num = 0;
    double den = 0, norm = 0;
    for (int i = 0; i <= std::max(dd.degree(), w.degree()); ++i) {
        num += std::conj(w[i]) * dd[i];
        den += std::norm(w[i]);
        norm += std::norm(dd[i]);
    }
    rep.d_constant = den > 0 ? num / den : cplx(0);
    CPoly diff = dd - w * rep.d_constant;
    double dn = 0;
    for (const auto& x : diff.coeffs()) dn += std::norm(x);
    rep.d_check = norm > 0 ? std::sqrt(dn / norm) : 0.0;
    for (const auto& node : qq_residual(d)) rep.qq_residuals.push_back(node.relative);
    for (const auto& b : bethe_residual(bethe_configuration(d), d.q)) rep.bethe_residuals.push_back(b.relative);
    for (int k = 1; k <= d.size(); ++k) {
        try {
            rep.beta.push_back(wronskian_factorization_check(d, k).beta);
        } catch (const NotDivisible&) {
            rep.beta.push_back(cplx(std::nan(""), 0));
        }
    }
    return rep;
}

} // namespace integra

#include "integra/dell/dell.hpp"

#include <functional>
#include <numeric>
#include <set>
#include <tuple>
#include <stdexcept>

#include "integra/exact/registry.hpp"
#include "integra/trs/hamiltonian.hpp"

namespace integra {

namespace {

Monomial qbase() { return Monomial::var(var("q")); }
Monomial hbar(int e = 1) { return Monomial::var(var("hbar"), e); }

int w_weight(const Shift& s) {
    int w = 0;
    for (int k : s) w += k * (k - 1) / 2;
    return w;
}

// Series in p alone, placed into the (p, w) ring.
TruncatedSeries lift(const TruncatedSeries& s, const std::vector<VarId>& vars, const std::vector<int>& caps) {
    TruncatedSeries out(vars, caps);
    for (const auto& [idx, c] : s.terms()) out.add_term({idx[0], 0}, c);
    return out;
}

std::string index_str(const std::vector<int>& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

} // namespace

std::pair<int, int> DELLModel::shift_window() const {
    if (w_order < 0 || p_order < 0) throw std::invalid_argument("elliptic caps must be nonnegative");
    int hi = 1;
    while ((hi + 1) * hi / 2 <= w_order) ++hi;
    return {1 - hi, hi};
}

int DELLModel::modes() const { return mode_range >= 0 ? mode_range : n * shift_window().second; }

std::vector<VarId> DELLModel::coords() const { return vars("x", n); }
std::vector<VarId> DELLModel::series_vars() const { return {var("p"), var("w")}; }
std::vector<int> DELLModel::series_caps() const { return {p_order, w_order}; }

const SeriesOperator& CurrentModes::mode(int k) const {
    auto it = modes.find(k);
    if (it == modes.end()) throw std::out_of_range("current mode " + std::to_string(k) + " outside the computed range");
    return it->second;
}

CurrentModes dell_current(const DELLModel& model) {
    if (model.n < 1) throw std::invalid_argument("DELL model needs at least one particle");
    CurrentModes out;
    out.model = model;
    auto [lo, hi] = model.shift_window();
    const int m = model.modes();
    auto x = model.coords();
    auto sv = model.series_vars();
    auto caps = model.series_caps();
    VarId p = sv[0];
    for (int k = -m; k <= m; ++k) out.modes.emplace(k, SeriesOperator(x, qbase()));

    std::map<std::tuple<int, int, int>, TruncatedSeries> theta_cache;
    auto theta = [&](int dh, int a, int b) -> const TruncatedSeries& {
        auto key = std::make_tuple(dh, a, b);
        auto it = theta_cache.find(key);
        if (it == theta_cache.end()) {
            Monomial r = hbar(dh) * Monomial::var(x[a]) / Monomial::var(x[b]);
            it = theta_cache.emplace(key, lift(theta_expand(r, p, model.p_order, 1, model.theta), sv, caps)).first;
        }
        return it->second;
    };

    Shift s(model.n, lo);
    std::function<void(int)> visit = [&](int i) {
        if (i == model.n) {
            int weight = w_weight(s);
            if (weight > model.w_order) return;
            int k = std::accumulate(s.begin(), s.end(), 0);
            if (k < -m || k > m) {
                out.clipped = true;
                return;
            }
            TruncatedSeries c = TruncatedSeries::constant(sv, caps, RationalFunction(k % 2 ? -1 : 1));
            for (int a = 0; a < model.n; ++a)
                for (int b = a + 1; b < model.n; ++b)
                    c = c * theta(s[a] - s[b], a, b);
            TruncatedSeries shifted(sv, caps);
            for (const auto& [idx, coef] : c.terms()) shifted.add_term({idx[0], idx[1] + weight}, coef);
            out.modes.at(k).add_term(s, shifted);
            return;
        }
        for (int v = lo; v <= hi; ++v) {
            s[i] = v;
            visit(i + 1);
        }
    };
    visit(0);
    return out;
}

SeriesOperator series_inverse(const SeriesOperator& op) {
    Shift zero(op.rank(), 0);
    TruncatedSeries c0 = op.coefficient(zero);
    if (c0.is_zero()) throw NotInvertible("operator has no identity component");
    const auto& caps = c0.caps();
    const auto& sv = c0.vars();
    RationalFunction d = c0.coefficient(std::vector<int>(sv.size(), 0));
    if (d.is_zero()) throw NotInvertible("leading scalar of the operator vanishes");
    RationalFunction dinv = d.inverse();
    SeriesOperator x = SeriesOperator::monomial(op.coords(), op.base(), zero, TruncatedSeries::constant(sv, caps, dinv));
    SeriesOperator rest = op;
    rest.add_term(zero, TruncatedSeries::constant(sv, caps, -d));
    SeriesOperator step = -compose(x, rest);
    int depth = std::accumulate(caps.begin(), caps.end(), 0);
    SeriesOperator sum = x, power = x;
    for (int k = 1; k <= depth; ++k) {
        power = compose(step, power);
        if (power.is_zero()) break;
        sum += power;
    }
    return sum;
}

SeriesOperator dell_hamiltonian(const CurrentModes& c, int a, InverseSide side) {
    if (a < 1 || a >= c.model.n) throw std::out_of_range("DELL Hamiltonian index must lie in 1..n-1");
    SeriesOperator inv = series_inverse(c.mode(0));
    return side == InverseSide::Left ? compose(inv, c.mode(a)) : compose(c.mode(a), inv);
}

CommutativityCertificate dell_commutativity_certificate(const DELLModel& model, InverseSide side) {
    CommutativityCertificate cert;
    cert.model = model;
    cert.side = side;
    CurrentModes cur = dell_current(model);
    cert.clipped = cur.clipped;
    std::vector<SeriesOperator> h;
    for (int a = 1; a < model.n; ++a) h.push_back(dell_hamiltonian(cur, a, side));
    auto better = [](const std::vector<int>& x, const std::vector<int>& y) {
        int sx = std::accumulate(x.begin(), x.end(), 0), sy = std::accumulate(y.begin(), y.end(), 0);
        return sx != sy ? sx < sy : x < y;
    };
    for (int a = 1; a < model.n; ++a)
        for (int b = a + 1; b < model.n; ++b) {
            CommutatorPair pr{a, b, {}};
            std::set<std::vector<int>> orders;
            SeriesOperator comm = commutator(h[a - 1], h[b - 1]);
            for (const auto& [s, coef] : comm.terms())
                for (const auto& [idx, v] : coef.terms()) orders.insert(idx);
            pr.failing_orders.assign(orders.begin(), orders.end());
            for (const auto& o : pr.failing_orders)
                if (!cert.first_failure || better(o, *cert.first_failure)) cert.first_failure = o;
            cert.pairs.push_back(std::move(pr));
        }
    return cert;
}

SeriesOperator ers_hamiltonian(int n, int r, int p_order, ThetaForm form) {
    if (r < 1 || r > n) throw std::out_of_range("eRS Hamiltonian index must lie in 1..n");
    auto x = vars("x", n);
    std::vector<VarId> sv{var("p"), var("w")};
    std::vector<int> caps{p_order, 0};
    VarId p = sv[0];
    SeriesOperator op(x, qbase());
    for (const auto& mask : subsets(n, r)) {
        TruncatedSeries num = TruncatedSeries::constant(sv, caps, RationalFunction(1));
        TruncatedSeries den = num;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (mask[i] && !mask[j]) {
                    Monomial ratio = Monomial::var(x[i]) / Monomial::var(x[j]);
                    num = num * lift(theta_expand(hbar() * ratio, p, p_order, 1, form), sv, caps);
                    den = den * lift(theta_expand(ratio, p, p_order, 1, form), sv, caps);
                }
        op.add_term(mask, num * series_invert(den));
    }
    return op;
}

bool DegenerationReport::pass() const {
    for (const auto& s : dell_to_ers)
        if (!s.pass) return false;
    for (const auto& s : ers_to_trs)
        if (!s.pass) return false;
    return !dell_to_ers.empty() || !ers_to_trs.empty();
}

namespace {

// lower == factor * u^I * upper termwise, with factor fitted from the first term.
DegenerationStep compare(int a, const SeriesOperator& lower, const SeriesOperator& upper, const std::vector<RationalFunction>& u) {
    DegenerationStep st;
    st.a = a;
    st.u = u;
    auto scale = [&](const Shift& s) {
        RationalFunction f(1);
        for (std::size_t j = 0; j < s.size(); ++j) f *= u[j].pow(s[j]);
        return f;
    };
    if (lower.terms().size() != upper.terms().size()) {
        st.failure = "different shift supports";
        return st;
    }
    for (const auto& [s, c] : upper.terms()) {
        TruncatedSeries l = lower.coefficient(s);
        if (l.is_zero()) {
            st.failure = "shift " + index_str(s) + " missing";
            return st;
        }
        if (st.factor.is_zero()) {
            const auto* lo = c.lowest();
            st.factor = l.coefficient(*lo) / (c.coefficient(*lo) * scale(s));
        }
        TruncatedSeries diff = l - c * (st.factor * scale(s));
        if (!diff.is_zero()) {
            const auto* o = diff.lowest();
            st.failure = "shift " + index_str(s) + " order " + index_str(*o) + ": " + diff.coefficient(*o).str();
            return st;
        }
    }
    for (VarId v : lower.coords())
        if (st.factor.involves(v)) {
            st.failure = "factor depends on coordinates: " + st.factor.str();
            return st;
        }
    st.pass = true;
    return st;
}

} // namespace

DegenerationReport degeneration_check(int n, int p_order, int w_order) {
    DegenerationReport rep;
    rep.n = n;
    rep.p_order = p_order;
    rep.w_order = w_order;
    std::vector<RationalFunction> u, ones(n, RationalFunction(1));
    for (int j = 0; j < n; ++j) u.emplace_back(hbar(-j));
    DELLModel model{n, p_order, w_order};
    CurrentModes cur = dell_current(model);
    std::vector<int> mod_w{p_order, 0};
    for (int a = 1; a < n; ++a) {
        SeriesOperator h = dell_hamiltonian(cur, a).map_coefficients([&](const TruncatedSeries& c) {
            TruncatedSeries t = c.truncate(mod_w);
            TruncatedSeries out({var("p"), var("w")}, mod_w);
            for (const auto& [idx, v] : t.terms()) out.add_term(idx, v);
            return out;
        });
        rep.dell_to_ers.push_back(compare(a, h, ers_hamiltonian(n, a, p_order), u));
    }
    auto x = vars("x", n);
    TRSFrame frame{FrameTag::Magnetic, x, LaurentPolynomial(hbar()), qbase()};
    std::vector<VarId> sv{var("p"), var("w")};
    std::vector<int> zero{0, 0};
    for (int r = 1; r <= n; ++r) {
        SeriesOperator e = ers_hamiltonian(n, r, p_order).map_coefficients([&](const TruncatedSeries& c) {
            TruncatedSeries out(sv, zero);
            out.add_term(zero, c.coefficient(zero));
            return out;
        });
        SeriesOperator t(x, qbase());
        auto trs = trs_hamiltonian(frame, r);
        for (const auto& [s, c] : trs.terms()) t.add_term(s, TruncatedSeries::constant(sv, zero, c));
        rep.ers_to_trs.push_back(compare(r, e, t, ones));
    }
    return rep;
}

} // namespace integra

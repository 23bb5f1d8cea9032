#include "integra/trs/hamiltonian.hpp"

namespace integra {

TRSFrame magnetic_frame(int n, const LaurentPolynomial& coupling) {
    TRSFrame f;
    f.tag = FrameTag::Magnetic;
    f.coords = vars("xi", n);
    f.coupling = coupling;
    f.base = Monomial::var(var("q"));
    return f;
}

TRSFrame electric_frame(int n, const LaurentPolynomial& coupling) {
    TRSFrame f;
    f.tag = FrameTag::Electric;
    f.coords = vars("a", n);
    f.coupling = coupling;
    f.base = Monomial::var(var("q"));
    return f;
}

TRSFrame magnetic_frame(int n, const std::string& coupling) {
    return magnetic_frame(n, LaurentPolynomial::variable(var(coupling)));
}

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> mask(n, 0);
    std::fill(mask.end() - k, mask.end(), 1);
    do out.push_back(mask);
    while (std::next_permutation(mask.begin(), mask.end()));
    std::reverse(out.begin(), out.end());
    return out;
}

RationalFunction trs_coefficient(const TRSFrame& frame, const std::vector<int>& mask) {
    RationalFunction c(1);
    const auto& x = frame.coords;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!mask[i]) continue;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (mask[j]) continue;
            auto xi = LaurentPolynomial::variable(x[i]), xj = LaurentPolynomial::variable(x[j]);
            c *= RationalFunction::factor(frame.coupling * xi - xj);
            c *= RationalFunction::factor(xi - xj, -1);
        }
    }
    return c;
}

ShiftOperator<RationalFunction> trs_hamiltonian(const TRSFrame& frame, int k) {
    int n = static_cast<int>(frame.rank());
    if (k < 1 || k > n) throw std::out_of_range("Hamiltonian index out of range");
    ShiftOperator<RationalFunction> h(frame.coords, frame.base);
    for (const auto& mask : subsets(n, k)) h.add_term(Shift(mask.begin(), mask.end()), trs_coefficient(frame, mask));
    return h;
}

namespace {

cplx subset_coefficient(const VectorC& c, const std::vector<int>& mask, cplx t) {
    cplx v = 1;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (!mask[i]) continue;
        for (Eigen::Index j = 0; j < c.size(); ++j)
            if (!mask[j]) v *= (t * c[i] - c[j]) / (c[i] - c[j]);
    }
    return v;
}

} // namespace

cplx trs_value(const VectorC& c, const VectorC& p, cplx t, int k) {
    cplx acc = 0;
    for (const auto& mask : subsets(static_cast<int>(c.size()), k)) {
        cplx term = subset_coefficient(c, mask, t);
        for (Eigen::Index m = 0; m < p.size(); ++m)
            if (mask[m]) term *= p[m];
        acc += term;
    }
    return acc;
}

VectorC trs_gradient(const VectorC& c, const VectorC& p, cplx t, int k) {
    VectorC g = VectorC::Zero(p.size());
    for (const auto& mask : subsets(static_cast<int>(c.size()), k)) {
        cplx coef = subset_coefficient(c, mask, t);
        for (Eigen::Index m = 0; m < p.size(); ++m) {
            if (!mask[m]) continue;
            cplx term = coef;
            for (Eigen::Index l = 0; l < p.size(); ++l)
                if (mask[l] && l != m) term *= p[l];
            g[m] += term;
        }
    }
    return g;
}

cplx elementary(const VectorC& a, int k) {
    std::vector<cplx> e(k + 1, 0.0);
    e[0] = 1;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (int j = k; j >= 1; --j) e[j] += e[j - 1] * a[i];
    return e[k];
}

} // namespace integra

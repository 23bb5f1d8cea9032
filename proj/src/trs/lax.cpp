#include "integra/trs/lax.hpp"

#include "integra/errors.hpp"

namespace integra {

MatrixC trs_lax(const VectorC& xi, const VectorC& p, cplx q, LaxReading reading) {
    const Eigen::Index n = xi.size();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(xi[i] - xi[j]) <= 1e-14 * (std::abs(xi[i]) + std::abs(xi[j])))
                throw DegenerateInput("coincident coordinates in Lax matrix");
    MatrixC t(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            cplx num = 1, den = 1;
            for (Eigen::Index m = 0; m < n; ++m) {
                if (m == j) continue;
                num *= xi[i] / q - xi[m];
                den *= xi[j] - xi[m];
            }
            t(i, j) = num / den * p[i];
        }
    if (reading == LaxReading::Transposed) return t.transpose();
    return t;
}

std::vector<cplx> principal_minor_sums(const MatrixC& t) {
    const int n = static_cast<int>(t.rows());
    std::vector<cplx> e(n + 1, 0.0);
    e[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (const auto& mask : subsets(n, k)) {
            std::vector<Eigen::Index> idx;
            for (int i = 0; i < n; ++i)
                if (mask[i]) idx.push_back(i);
            MatrixC m(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) m(a, b) = t(idx[a], idx[b]);
            e[k] += m.determinant();
        }
    return e;
}

std::vector<cplx> char_poly(const MatrixC& t) {
    auto e = principal_minor_sums(t);
    const int n = static_cast<int>(t.rows());
    std::vector<cplx> c(n + 1);
    for (int k = 0; k <= n; ++k) c[n - k] = (k % 2 ? -1.0 : 1.0) * e[k];
    return c;
}

cplx lax_normalization(cplx q, int k) {
    cplx r = 1;
    for (int i = 0; i < k * (k - 1) / 2; ++i) r /= q;
    return r;
}

cplx lax_hamiltonian(const VectorC& xi, const VectorC& p, cplx q, int k) {
    return lax_normalization(q, k) * trs_value(xi, p, 1.0 / q, k);
}

} // namespace integra

#include "integra/trs/duality.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "integra/errors.hpp"

namespace integra {

namespace {

struct System {
    const VectorC& xi;
    std::vector<cplx> target;

    VectorC value(const VectorC& p, cplx q) const {
        VectorC f(p.size());
        for (int k = 1; k <= p.size(); ++k) f[k - 1] = lax_hamiltonian(xi, p, q, k) - target[k - 1];
        return f;
    }

    MatrixC jacobian(const VectorC& p, cplx q) const {
        MatrixC j(p.size(), p.size());
        for (int k = 1; k <= p.size(); ++k)
            j.row(k - 1) = (lax_normalization(q, k) * trs_gradient(xi, p, 1.0 / q, k)).transpose();
        return j;
    }

    double residual(const VectorC& p, cplx q) const { return value(p, q).cwiseAbs().maxCoeff(); }

    // Plain Newton; returns false if it fails to contract.
    bool correct(VectorC& p, cplx q, int max_iter, double step_tol) const {
        for (int it = 0; it < max_iter; ++it) {
            VectorC dp = jacobian(p, q).partialPivLu().solve(-value(p, q));
            if (!dp.allFinite()) return false;
            p += dp;
            if (dp.norm() <= step_tol * std::max(1.0, p.norm())) return true;
        }
        return false;
    }

    // Backtracking Newton on |F|^2 from an arbitrary start.
    bool damped(VectorC& p, cplx q, int max_iter, double tol) const {
        double r = value(p, q).norm();
        for (int it = 0; it < max_iter; ++it) {
            if (r < tol) return true;
            VectorC dp = jacobian(p, q).partialPivLu().solve(-value(p, q));
            if (!dp.allFinite()) return false;
            double lambda = 1;
            bool moved = false;
            while (lambda > 1e-6) {
                VectorC trial = p + lambda * dp;
                double rt = value(trial, q).norm();
                if (std::isfinite(rt) && rt < r) {
                    p = trial;
                    r = rt;
                    moved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if (!moved) return false;
        }
        return r < tol;
    }
};

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

void check_distinct(const VectorC& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        for (Eigen::Index j = i + 1; j < v.size(); ++j)
            if (std::abs(v[i] - v[j]) <= 1e-12 * std::max(1.0, std::abs(v[i])))
                throw DegenerateInput(std::string("coincident ") + what);
}

bool is_new(const std::vector<DualitySolution>& sols, const VectorC& p, double dedup) {
    for (const auto& s : sols)
        if ((s.point.momenta - p).norm() <= dedup * std::max(1.0, p.norm())) return false;
    return true;
}

} // namespace

double DualityResult::max_residual() const {
    double r = 0;
    for (const auto& s : solutions) r = std::max(r, s.residual);
    return r;
}

double duality_residual(const VectorC& xi, const VectorC& a, cplx q, const VectorC& p) {
    double r = 0;
    for (int k = 1; k <= xi.size(); ++k) r = std::max(r, std::abs(lax_hamiltonian(xi, p, q, k) - elementary(a, k)));
    return r;
}

DualityResult duality_solve(const VectorC& xi, const VectorC& a, cplx q, const DualityOptions& opt) {
    const int n = static_cast<int>(xi.size());
    if (a.size() != n) throw std::invalid_argument("xi and a must have equal length");
    check_distinct(xi, "twist parameters");
    System sys{xi, {}};
    for (int k = 1; k <= n; ++k) sys.target.push_back(elementary(a, k));

    DualityResult out;
    out.expected = opt.max_solutions > 0 ? opt.max_solutions : factorial(n);
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;

    // At q = 1 every coefficient is 1 and H_k = e_k(p), so the roots are the
    // permutations of a. Follow them along q(s) = 1 + s(q-1) + g s(1-s);
    // the random complex g keeps the path off the discriminant.
    const cplx g(gauss(rng), gauss(rng));
    auto path = [&](double s) { return 1.0 + s * (q - 1.0) + g * s * (1.0 - s); };

    auto accept = [&](VectorC p) {
        sys.correct(p, q, 30, 1e-15);
        if (!p.allFinite()) return;
        double r = sys.residual(p, q);
        if (r < opt.tol && is_new(out.solutions, p, opt.dedup) &&
            static_cast<int>(out.solutions.size()) < out.expected)
            out.solutions.push_back(DualitySolution{ClassicalPoint{xi, p}, r});
    };

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        VectorC p(n);
        for (int i = 0; i < n; ++i) p[i] = a[perm[i]];
        double s = 0, h = 0.02;
        bool ok = true;
        while (s < 1 && ok) {
            double s1 = std::min(1.0, s + h);
            VectorC trial = p;
            if (sys.correct(trial, path(s1), 8, 1e-11)) {
                p = trial;
                s = s1;
                h = std::min(0.1, h * 1.5);
            } else {
                h *= 0.5;
                ok = h > 1e-9;
            }
        }
        if (ok) accept(p);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Fallback: random damped-Newton starts at the target q.
    double scale = a.cwiseAbs().maxCoeff();
    for (int i = 0; i < opt.random_starts && !out.complete(); ++i) {
        VectorC p(n);
        for (int k = 0; k < n; ++k) p[k] = scale * cplx(gauss(rng), gauss(rng));
        if (sys.damped(p, q, 200, opt.tol)) accept(p);
    }
    return out;
}

double solution_set_distance(const DualityResult& x, const DualityResult& y) {
    double worst = 0;
    for (const auto& s : x.solutions) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& t : y.solutions)
            best = std::min(best, (s.point.momenta - t.point.momenta).norm() / std::max(1.0, s.point.momenta.norm()));
        worst = std::max(worst, best);
    }
    return worst;
}

MirrorReport mirror_check(const DualityResult& magnetic, const VectorC& a, const VectorC& xi, cplx q,
                          const DualityOptions& opt) {
    MirrorReport r;
    r.electric = duality_solve(a, xi, 1.0 / q, opt);
    r.remirrored = duality_solve(xi, a, q, opt);
    r.counts_match = r.electric.solutions.size() == magnetic.solutions.size() &&
                     static_cast<int>(magnetic.solutions.size()) == magnetic.expected;
    r.involution_error = std::max(solution_set_distance(magnetic, r.remirrored),
                                  solution_set_distance(r.remirrored, magnetic));
    r.pass = r.counts_match && r.electric.max_residual() < opt.tol && magnetic.max_residual() < opt.tol &&
             r.remirrored.solutions.size() == magnetic.solutions.size() && r.involution_error < opt.dedup;
    return r;
}

} // namespace integra

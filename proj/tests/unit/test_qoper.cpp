#include <gtest/gtest.h>

#include <random>

#include "integra/qoper/qoper.hpp"
#include "integra/trs/duality.hpp"
#include "random_data.hpp"

using namespace integra;
using namespace integra::testing;

namespace {

QPoly lin(long a, long b) { return QPoly(std::vector<Rational>{Rational(a), Rational(b)}); }

QOperData<Rational> exact_rank1(QPoly s1, QPoly s2, Rational xi1, Rational xi2, Rational q) {
    QOperData<Rational> d;
    d.rank = 1;
    d.sections = {s1, s2};
    d.xi = {xi1, xi2};
    d.q = q;
    return d;
}

CPoly random_cpoly(std::mt19937_64& rng, int deg) {
    std::normal_distribution<double> g;
    std::vector<cplx> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(g(rng), g(rng));
    return CPoly(c);
}

double dist(const CPoly& a, const CPoly& b) { return (a - b).max_abs() / std::max(a.max_abs(), b.max_abs()); }

} // namespace

TEST(FlagDeterminant, RankOneFormulaExact) {
    QPoly s1 = QPoly(std::vector<Rational>{Rational(2), Rational(-3), Rational(1)}), s2 = lin(5, 7);
    Rational xi1(3, 2), xi2(-4, 5), q(2, 9);
    auto d = exact_rank1(s1, s2, xi1, xi2, q);
    QPoly expect = s1 * s2.dilate(q) * xi2 - s2 * s1.dilate(q) * xi1;
    EXPECT_EQ(flag_determinant(d, 2).coeffs(), expect.coeffs());
}

TEST(FlagDeterminant, CommonSection) {
    QPoly s = lin(-3, 2);
    Rational xi1(1, 3), xi2(7), q(5, 4);
    auto d = exact_rank1(s, s, xi1, xi2, q);
    QPoly expect = s * s.dilate(q) * Rational(xi2 - xi1);
    EXPECT_EQ(flag_determinant(d, 2).coeffs(), expect.coeffs());
}

TEST(FlagDeterminant, UnitShiftIsVandermondeTimesProduct) {
    QOperData<Rational> d;
    d.rank = 2;
    d.q = 1;
    std::vector<Rational> p{Rational(1, 2), Rational(-3), Rational(7, 5)};
    d.xi = {Rational(2), Rational(-1, 3), Rational(5)};
    for (const auto& x : p) d.sections.push_back(QPoly::linear(x));
    QPoly prod = QPoly::from_roots(p);
    Rational vdm = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) vdm *= d.xi[j] - d.xi[i];
    QPoly dd = flag_determinant(d, 3);
    bool plus = dd.coeffs() == (prod * vdm).coeffs();
    bool minus = dd.coeffs() == (prod * Rational(-vdm)).coeffs();
    EXPECT_TRUE(plus || minus);
    EXPECT_EQ(dd.degree(), 3);
}

TEST(FlagDeterminant, OutOfRange) {
    auto d = exact_rank1(lin(1, 1), lin(2, 1), 1, 2, 3);
    EXPECT_THROW(flag_determinant(d, 3), std::out_of_range);
}

TEST(QPolynomials, FirstIsLastSection) {
    auto d = exact_rank1(lin(1, 1), lin(-4, 3), Rational(2), Rational(5), Rational(1, 3));
    EXPECT_EQ(q_polynomials(d, 1).plus.coeffs(), lin(-4, 3).coeffs());
    EXPECT_EQ(q_polynomials(d, 1).minus.coeffs(), lin(1, 1).coeffs());
}

TEST(QPolynomials, PairedSwap) {
    auto d = exact_rank1(lin(1, 2), lin(-4, 3), Rational(2), Rational(5), Rational(1, 3));
    auto e = exact_rank1(lin(-4, 3), lin(1, 2), Rational(5), Rational(2), Rational(1, 3));
    EXPECT_EQ(flag_determinant(e, 2).coeffs(), (-flag_determinant(d, 2)).coeffs());
    EXPECT_EQ(q_polynomials(e, 1).plus.monic().coeffs(), q_polynomials(d, 1).minus.monic().coeffs());
}

TEST(QPolynomials, SingularVandermonde) {
    QOperData<Rational> d;
    d.rank = 2;
    d.q = Rational(1, 2);
    d.xi = {Rational(1), Rational(3), Rational(3)};
    d.sections = {lin(1, 1), lin(2, 1), lin(3, 1)};
    EXPECT_THROW(q_polynomials(d, 2), DegenerateInput);
}

TEST(QQ, DegenerateTwistFlagged) {
    auto d = exact_rank1(lin(1, 2), lin(-4, 3), Rational(2), Rational(2), Rational(1, 3));
    auto nodes = qq_residual(d);
    ASSERT_EQ(nodes.size(), 1u);
    EXPECT_TRUE(nodes[0].degenerate_twist);
    EXPECT_FALSE(nodes[0].residual.is_zero());
}

class Pipeline : public ::testing::TestWithParam<int> {};

TEST_P(Pipeline, DualitySolutionsAreOpers) {
    const int n = GetParam();
    std::mt19937_64 rng(101 + n);
    for (int trial = 0; trial < 3; ++trial) {
        VectorC xi = random_vec(rng, n), a = random_vec(rng, n);
        cplx q = random_q(rng);
        auto res = duality_solve(xi, a, q);
        ASSERT_TRUE(res.complete());
        for (const auto& s : res.solutions) {
            auto d = oper_from_momenta(to_std(xi), to_std(a), to_std(s.point.momenta), q);
            auto rep = qoper_verify(d);
            EXPECT_LT(rep.d_check, 1e-9);
            for (double x : rep.qq_residuals) EXPECT_LT(x, 1e-10);
            EXPECT_EQ(static_cast<int>(rep.bethe_residuals.size()), n * (n - 1) / 2);
            for (double x : rep.bethe_residuals) EXPECT_LT(x, 1e-9);
            EXPECT_TRUE(rep.pass(1e-9, 1e-10, 1e-9));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Ranks, Pipeline, ::testing::Values(2, 3));

TEST(QQ, RandomSectionsFail) {
    std::mt19937_64 rng(7);
    VectorC xi = random_vec(rng, 3), a = random_vec(rng, 3), p = random_vec(rng, 3);
    auto d = oper_from_momenta(to_std(xi), to_std(a), to_std(p), random_q(rng));
    auto rep = qoper_verify(d);
    EXPECT_GT(rep.d_check, 1e-3);
    EXPECT_GT(rep.qq_residuals.back(), 1e-3);
    EXPECT_FALSE(rep.pass(1e-9, 1e-10, 1e-9));
}

TEST(Bethe, PerturbedRootFails) {
    std::mt19937_64 rng(11);
    VectorC xi = random_vec(rng, 3), a = random_vec(rng, 3);
    cplx q = random_q(rng);
    auto res = duality_solve(xi, a, q);
    ASSERT_TRUE(res.complete());
    auto d = oper_from_momenta(to_std(xi), to_std(a), to_std(res.solutions[0].point.momenta), q);
    auto conf = bethe_configuration(d);
    for (double x : [&] {
             std::vector<double> v;
             for (const auto& b : bethe_residual(conf, q)) v.push_back(b.relative);
             return v;
         }())
        EXPECT_LT(x, 1e-9);
    conf.roots[1][0] *= 1.01;
    double worst = 0;
    for (const auto& b : bethe_residual(conf, q)) worst = std::max(worst, b.relative);
    EXPECT_GT(worst, 1e-4);
}

TEST(Bethe, TwoSiteToy) {
    cplx q(0.6, 0.2), xi2(1.3, -0.4), s(0.7, 0.9);
    BetheConfiguration c;
    c.roots = {{s}};
    c.lambda = {CPoly(cplx(1))};
    c.xi = {q * xi2, xi2};
    EXPECT_LT(bethe_residual(c, q)[0].relative, 1e-14);
    c.xi = {cplx(2.0, 0.5), xi2};
    cplx ea = c.xi[0], eb = c.xi[1];
    cplx t1 = eb * (q - 1.0) * s, t2 = ea * (1.0 / q - 1.0) * s;
    double expect = std::abs(t1 + t2) / (std::abs(t1) + std::abs(t2));
    EXPECT_NEAR(bethe_residual(c, q)[0].relative, expect, 1e-14);
}

TEST(Bethe, PoleCollision) {
    cplx q(0.5, 0.1), s(1.0, 0.3);
    BetheConfiguration c;
    c.roots = {{}, {s, q * s}};
    c.roots[0] = {cplx(2.0, 0)};
    c.lambda = {CPoly(cplx(1)), CPoly(cplx(1))};
    c.xi = {cplx(1), cplx(2), cplx(3)};
    EXPECT_THROW(bethe_residual(c, q), PoleError);
}

TEST(Wronskian, TopIsConstantAndBoundary) {
    std::mt19937_64 rng(13);
    VectorC xi = random_vec(rng, 3), a = random_vec(rng, 3);
    cplx q = random_q(rng);
    auto res = duality_solve(xi, a, q);
    auto d = oper_from_momenta(to_std(xi), to_std(a), to_std(res.solutions[0].point.momenta), q);
    auto top = wronskian_factorization_check(d, 3);
    EXPECT_EQ(top.v.degree(), 0);
    auto zero = wronskian_factorization_check(d, 0);
    EXPECT_EQ(zero.v.degree(), 0);
    EXPECT_NEAR(std::abs(zero.beta - 1.0), 0, 1e-15);
    for (int k = 1; k <= 2; ++k) {
        auto w = wronskian_factorization_check(d, k);
        EXPECT_LT(dist(w.v, q_polynomials(d, k).plus.monic()), 1e-12);
    }
}

TEST(Wronskian, RandomSectionsNotDivisible) {
    std::mt19937_64 rng(19);
    VectorC xi = random_vec(rng, 2), a = random_vec(rng, 2), p = random_vec(rng, 2);
    auto d = oper_from_momenta(to_std(xi), to_std(a), to_std(p), random_q(rng));
    EXPECT_THROW(wronskian_factorization_check(d, 2), NotDivisible);
}

TEST(Wronskian, GaugeCovariance) {
    std::mt19937_64 rng(23);
    VectorC xi = random_vec(rng, 3), a = random_vec(rng, 3);
    cplx q = random_q(rng);
    auto res = duality_solve(xi, a, q);
    auto d = oper_from_momenta(to_std(xi), to_std(a), to_std(res.solutions[1].point.momenta), q);
    auto g = d;
    g.gauge = random_cpoly(rng, 1);
    for (auto& s : g.sections) s *= g.gauge;
    for (int k = 1; k <= 3; ++k) {
        CPoly factor(cplx(1));
        for (int j = 0; j < k; ++j) factor *= g.gauge.dilate(std::pow(q, j));
        EXPECT_LT(dist(flag_determinant(g, k), flag_determinant(d, k) * factor), 1e-12);
        EXPECT_LT(dist(wronskian_factorization_check(g, k).v, wronskian_factorization_check(d, k).v), 1e-10);
    }
}

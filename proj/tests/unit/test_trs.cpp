#include <gtest/gtest.h>

#include <random>

#include "integra/trs/duality.hpp"
#include "random_data.hpp"

using namespace integra;

using namespace integra::testing;

TEST(TrsHamiltonian, Examples) {
    auto t = LaurentPolynomial::variable(var("t"));
    auto f1 = magnetic_frame(1, t);
    EXPECT_EQ(trs_hamiltonian(f1, 1), ShiftOperator<RationalFunction>::monomial(f1.coords, f1.base, {1}, 1));
    auto f2 = magnetic_frame(2, t);
    EXPECT_EQ(trs_hamiltonian(f2, 2), ShiftOperator<RationalFunction>::monomial(f2.coords, f2.base, {1, 1}, 1));
    auto x1 = LaurentPolynomial::variable(f2.coords[0]), x2 = LaurentPolynomial::variable(f2.coords[1]);
    auto h1 = trs_hamiltonian(f2, 1);
    EXPECT_EQ(h1.coefficient({1, 0}), RationalFunction::ratio(t * x1 - x2, x1 - x2));
    EXPECT_EQ(h1.coefficient({0, 1}), RationalFunction::ratio(t * x2 - x1, x2 - x1));
    EXPECT_THROW(trs_hamiltonian(f2, 3), std::out_of_range);
}

class TrsCommute : public ::testing::TestWithParam<int> {};

TEST_P(TrsCommute, GenericCouplingCommutes) {
    int n = GetParam();
    auto f = magnetic_frame(n, LaurentPolynomial::variable(var("t")));
    std::vector<ShiftOperator<RationalFunction>> h;
    for (int k = 1; k <= n; ++k) h.push_back(trs_hamiltonian(f, k));
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) EXPECT_TRUE(commutator(h[k], h[l]).is_zero()) << k + 1 << "," << l + 1;
}

INSTANTIATE_TEST_SUITE_P(Ranks, TrsCommute, ::testing::Values(2, 3, 4));

TEST(TrsCommute, NonCommutingControl) {
    // Different couplings in the two operators break commutativity.
    auto f = magnetic_frame(3, LaurentPolynomial::variable(var("t")));
    auto g = magnetic_frame(3, LaurentPolynomial::variable(var("hbar")));
    EXPECT_FALSE(commutator(trs_hamiltonian(f, 1), trs_hamiltonian(g, 2)).is_zero());
}

TEST(Lax, OneByOne) {
    VectorC xi(1), p(1);
    xi << 2.0;
    p << cplx(0.3, 1.0);
    auto t = trs_lax(xi, p, 0.7);
    EXPECT_NEAR(std::abs(t(0, 0) - p[0]), 0.0, 1e-15);
    auto c = char_poly(t);
    EXPECT_NEAR(std::abs(c[0] + p[0]), 0.0, 1e-15);
}

TEST(Lax, CharPolyMatchesHamiltoniansBothReadings) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial)
        for (int n = 1; n <= 4; ++n) {
            VectorC xi = random_vec(rng, n), p = random_vec(rng, n);
            cplx q = random_q(rng);
            for (auto reading : {LaxReading::AsPrinted, LaxReading::Transposed}) {
                auto e = principal_minor_sums(trs_lax(xi, p, q, reading));
                for (int k = 1; k <= n; ++k) {
                    cplx h = lax_hamiltonian(xi, p, q, k);
                    ASSERT_LT(std::abs(e[k] - h), 1e-12 * std::max(1.0, std::abs(h))) << n << " " << k;
                }
            }
        }
}

TEST(Lax, FirstCoefficientIsPlainHamiltonian) {
    // N = 2 by hand: trace T = c_1 p_1 + c_2 p_2 with t = 1/q; det T = p1 p2 / q.
    VectorC xi(2), p(2);
    xi << 1.3, cplx(0.4, 0.8);
    p << cplx(0.2, -0.5), 1.7;
    cplx q(0.6, 0.2), t = 1.0 / q;
    auto T = trs_lax(xi, p, q);
    cplx h1 = (t * xi[0] - xi[1]) / (xi[0] - xi[1]) * p[0] + (t * xi[1] - xi[0]) / (xi[1] - xi[0]) * p[1];
    EXPECT_LT(std::abs(T.trace() - h1), 1e-14);
    EXPECT_LT(std::abs(T.determinant() - p[0] * p[1] / q), 1e-14);
}

TEST(Lax, ClassicalLimit) {
    VectorC xi(3), p(3);
    xi << 1.0, 2.0, cplx(0.5, 1.0);
    p << 0.3, cplx(1.0, 1.0), -2.0;
    auto T = trs_lax(xi, p, 1.0);
    EXPECT_LT(std::abs(T.trace() - p.sum()), 1e-13);
}

TEST(Lax, CoincidentCoordinates) {
    VectorC xi(2), p(2);
    xi << 1.0, 1.0;
    p << 1.0, 2.0;
    EXPECT_THROW(trs_lax(xi, p, 0.5), DegenerateInput);
}

TEST(Duality, RankOne) {
    VectorC xi(1), a(1);
    xi << 0.7;
    a << cplx(1.2, 0.3);
    auto r = duality_solve(xi, a, 0.6);
    ASSERT_EQ(r.solutions.size(), 1u);
    EXPECT_LT(std::abs(r.solutions[0].point.momenta[0] - a[0]), 1e-14);
}

TEST(Duality, RankTwoClosedForm) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        VectorC xi = random_vec(rng, 2), a = random_vec(rng, 2);
        cplx q = random_q(rng), t = 1.0 / q;
        // c1 p1 + c2 p2 = e1, p1 p2 / q = e2: c1 p1^2 - e1 p1 + c2 q e2 = 0.
        cplx c1 = (t * xi[0] - xi[1]) / (xi[0] - xi[1]), c2 = (t * xi[1] - xi[0]) / (xi[1] - xi[0]);
        cplx e1 = a[0] + a[1], e2 = a[0] * a[1];
        cplx disc = std::sqrt(e1 * e1 - 4.0 * c1 * c2 * q * e2);
        std::vector<cplx> roots{(e1 + disc) / (2.0 * c1), (e1 - disc) / (2.0 * c1)};
        auto r = duality_solve(xi, a, q);
        ASSERT_EQ(r.solutions.size(), 2u);
        for (cplx p1 : roots) {
            double best = 1e9;
            for (const auto& s : r.solutions) best = std::min(best, std::abs(s.point.momenta[0] - p1));
            EXPECT_LT(best, 1e-10);
        }
    }
}

TEST(Duality, RankThreeCount) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        VectorC xi = random_vec(rng, 3), a = random_vec(rng, 3);
        auto r = duality_solve(xi, a, random_q(rng));
        EXPECT_EQ(r.solutions.size(), 6u);
        EXPECT_LT(r.max_residual(), 1e-10);
    }
}

TEST(Duality, ScalingCovariance) {
    std::mt19937_64 rng(31);
    VectorC xi = random_vec(rng, 3), a = random_vec(rng, 3);
    cplx q = random_q(rng), lambda(1.7, -0.4);
    auto r = duality_solve(xi, a, q);
    auto s = duality_solve(xi, lambda * a, q);
    ASSERT_EQ(r.solutions.size(), 6u);
    ASSERT_EQ(s.solutions.size(), 6u);
    for (const auto& sol : r.solutions) {
        VectorC scaled = lambda * sol.point.momenta;
        EXPECT_LT(duality_residual(xi, lambda * a, q, scaled), 1e-9);
        double best = 1e9;
        for (const auto& t : s.solutions) best = std::min(best, (t.point.momenta - scaled).norm());
        EXPECT_LT(best, 1e-8);
    }
}

TEST(Duality, DegenerateTwists) {
    VectorC xi(2), a(2);
    xi << 1.0, 1.0;
    a << 1.0, 2.0;
    EXPECT_THROW(duality_solve(xi, a, 0.5), DegenerateInput);
}

TEST(Mirror, RankOneAndTwo) {
    VectorC xi(1), a(1);
    xi << 0.7;
    a << 1.3;
    auto m = duality_solve(xi, a, 0.5);
    auto rep = mirror_check(m, a, xi, 0.5);
    ASSERT_EQ(rep.electric.solutions.size(), 1u);
    EXPECT_LT(std::abs(rep.electric.solutions[0].point.momenta[0] - xi[0]), 1e-14);
    EXPECT_TRUE(rep.pass);

    std::mt19937_64 rng(37);
    VectorC xi2 = random_vec(rng, 2), a2 = random_vec(rng, 2);
    cplx q = random_q(rng);
    auto m2 = duality_solve(xi2, a2, q);
    auto rep2 = mirror_check(m2, a2, xi2, q);
    EXPECT_EQ(rep2.electric.solutions.size(), 2u);
    EXPECT_TRUE(rep2.pass);
    EXPECT_LT(rep2.involution_error, 1e-9);
}

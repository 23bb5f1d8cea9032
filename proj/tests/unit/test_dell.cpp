#include <gtest/gtest.h>

#include <numeric>

#include "integra/dell/dell.hpp"
#include "integra/exact/registry.hpp"
#include "integra/trs/hamiltonian.hpp"

using namespace integra;

namespace {

RationalFunction x(int i) { return RationalFunction::variable(var("x" + std::to_string(i))); }
RationalFunction h() { return RationalFunction::variable(var("hbar")); }

RationalFunction leading(const SeriesOperator& op, const Shift& s) { return op.coefficient(s).coefficient({0, 0}); }

} // namespace

TEST(DellCurrent, TwoParticlesLeadingOrder) {
    auto c = dell_current(DELLModel{2, 1, 1});
    RationalFunction u = x(1) / x(2);
    EXPECT_TRUE(leading(c.mode(0), {0, 0}) == 1 - u);
    EXPECT_TRUE(leading(c.mode(1), {1, 0}) == -(1 - h() * u));
    EXPECT_TRUE(leading(c.mode(1), {0, 1}) == -(1 - u / h()));
    // n = (2,-1) and (-1,1) style vectors enter only from w^1 on.
    for (const auto& [k, op] : c.modes)
        for (const auto& [s, coef] : op.terms())
            for (int v : s)
                if (v < 0 || v > 1) EXPECT_TRUE(coef.coefficient({0, 0}).is_zero());
}

TEST(DellCurrent, GradingAndWeightBound) {
    DELLModel m{3, 1, 2};
    auto c = dell_current(m);
    EXPECT_FALSE(c.clipped);
    for (const auto& [k, op] : c.modes)
        for (const auto& [s, coef] : op.terms()) {
            EXPECT_EQ(std::accumulate(s.begin(), s.end(), 0), k);
            int w = 0;
            for (int v : s) w += v * (v - 1) / 2;
            EXPECT_LE(w, m.w_order);
            for (const auto& [idx, v] : coef.terms()) EXPECT_GE(idx[1], w);
        }
}

TEST(DellCurrent, ShiftWindow) {
    EXPECT_EQ((DELLModel{2, 0, 0}.shift_window()), std::make_pair(0, 1));
    EXPECT_EQ((DELLModel{2, 0, 1}.shift_window()), std::make_pair(-1, 2));
    EXPECT_EQ((DELLModel{2, 0, 3}.shift_window()), std::make_pair(-2, 3));
    EXPECT_EQ((DELLModel{3, 0, 1}.modes()), 6);
    DELLModel small{3, 0, 1, 1};
    EXPECT_TRUE(dell_current(small).clipped);
    EXPECT_THROW((DELLModel{2, -1, 0}.shift_window()), std::invalid_argument);
}

TEST(DellHamiltonian, TwoParticlesLeadingOrder) {
    auto c = dell_current(DELLModel{2, 0, 0});
    auto h1 = dell_hamiltonian(c, 1);
    RationalFunction u = x(1) / x(2);
    EXPECT_TRUE(leading(h1, {1, 0}) == -(1 - h() * u) / (1 - u));
    EXPECT_TRUE(leading(h1, {0, 1}) == -(1 - u / h()) / (1 - u));
    EXPECT_EQ(h1.terms().size(), 2u);
    EXPECT_TRUE(commutator(h1, h1).is_zero());
    EXPECT_THROW(dell_hamiltonian(c, 2), std::out_of_range);
}

TEST(DellHamiltonian, FreeLimit) {
    Substitution s;
    s.set(var("hbar"), Monomial());
    auto h1 = dell_hamiltonian(dell_current(DELLModel{2, 1, 0}), 1).substitute(s);
    EXPECT_EQ(h1.terms().size(), 2u);
    for (const auto& [sh, c] : h1.terms()) {
        EXPECT_EQ(c.terms().size(), 1u);
        EXPECT_TRUE(c.coefficient({0, 0}) == RationalFunction(-1));
    }
}

TEST(DellHamiltonian, InverseIsTwoSided) {
    auto c = dell_current(DELLModel{3, 1, 1});
    auto inv = series_inverse(c.mode(0));
    for (const auto& prod : {compose(inv, c.mode(0)), compose(c.mode(0), inv)}) {
        ASSERT_EQ(prod.terms().size(), 1u);
        const auto& [s, coef] = *prod.terms().begin();
        EXPECT_EQ(s, (Shift{0, 0, 0}));
        EXPECT_EQ(coef.terms().size(), 1u);
        EXPECT_TRUE(coef.coefficient({0, 0}) == RationalFunction(1));
    }
}

TEST(DellCertificate, TrigonometricLimit) {
    auto cert = dell_commutativity_certificate(DELLModel{3, 0, 0});
    EXPECT_TRUE(cert.pass());
    EXPECT_EQ(cert.pairs.size(), 1u);
    EXPECT_TRUE(dell_commutativity_certificate(DELLModel{2, 1, 1}).pairs.empty());
}

TEST(DellCertificate, ThreeParticlesFirstOrder) {
    for (auto side : {InverseSide::Left, InverseSide::Right}) {
        auto cert = dell_commutativity_certificate(DELLModel{3, 1, 1}, side);
        EXPECT_TRUE(cert.pass());
        EXPECT_FALSE(cert.clipped);
    }
}

TEST(DellCertificate, CorruptedThetaFails) {
    DELLModel m{3, 1, 1};
    m.theta = ThetaForm::DropInverse;
    auto cert = dell_commutativity_certificate(m);
    ASSERT_FALSE(cert.pass());
    EXPECT_EQ(*cert.first_failure, (std::vector<int>{1, 0}));
}

TEST(Ers, TrigonometricLimit) {
    auto x3 = vars("x", 3);
    TRSFrame frame{FrameTag::Magnetic, x3, LaurentPolynomial(Monomial::var(var("hbar"))), Monomial::var(var("q"))};
    for (int r = 1; r <= 3; ++r) {
        auto e = ers_hamiltonian(3, r, 0);
        auto t = trs_hamiltonian(frame, r);
        EXPECT_EQ(e.terms().size(), t.terms().size());
        for (const auto& [s, c] : t.terms()) EXPECT_TRUE(leading(e, s) == c);
    }
}

TEST(Ers, TopHamiltonianIsShift) {
    auto e = ers_hamiltonian(3, 3, 2);
    ASSERT_EQ(e.terms().size(), 1u);
    EXPECT_EQ(e.terms().begin()->first, (Shift{1, 1, 1}));
    EXPECT_EQ(e.terms().begin()->second.terms().size(), 1u);
    EXPECT_TRUE(leading(e, {1, 1, 1}) == RationalFunction(1));
}

TEST(Ers, FirstEllipticCorrection) {
    // theta(y) = (1-y)(1 - p(y + 1/y)) + O(p^2)
    auto e = ers_hamiltonian(2, 1, 1);
    RationalFunction u = x(1) / x(2);
    RationalFunction ratio = (1 - h() * u) / (1 - u);
    RationalFunction corr = ratio * (u + u.inverse() - h() * u - (h() * u).inverse());
    EXPECT_TRUE(e.coefficient({1, 0}).coefficient({1, 0}) == corr);
    EXPECT_TRUE(e.coefficient({1, 0}).coefficient({0, 0}) == ratio);
}

TEST(Degeneration, TwoParticles) {
    auto rep = degeneration_check(2, 1, 1);
    EXPECT_TRUE(rep.pass());
    ASSERT_EQ(rep.dell_to_ers.size(), 1u);
    EXPECT_TRUE(rep.dell_to_ers[0].factor == RationalFunction(-1));
    for (const auto& s : rep.ers_to_trs) EXPECT_TRUE(s.factor == RationalFunction(1));
}

TEST(Degeneration, ThreeParticles) {
    for (auto [p, w] : {std::pair{1, 0}, std::pair{0, 1}}) {
        auto rep = degeneration_check(3, p, w);
        EXPECT_TRUE(rep.pass()) << p << "," << w;
        // (-1)^a hbar^{a(a-1)/2}
        EXPECT_TRUE(rep.dell_to_ers[0].factor == RationalFunction(-1));
        EXPECT_TRUE(rep.dell_to_ers[1].factor == h());
    }
}

TEST(Degeneration, FreeLimitAcrossTiers) {
    Substitution s;
    s.set(var("hbar"), Monomial());
    auto d = dell_hamiltonian(dell_current(DELLModel{3, 1, 0}), 2).substitute(s);
    auto e = ers_hamiltonian(3, 2, 1).substitute(s);
    for (const auto& [sh, c] : e.terms()) {
        EXPECT_TRUE(c.coefficient({0, 0}) == RationalFunction(1));
        EXPECT_TRUE(c.coefficient({1, 0}).is_zero());
        EXPECT_TRUE(d.coefficient(sh).coefficient({0, 0}) == RationalFunction(1));
        EXPECT_TRUE(d.coefficient(sh).coefficient({1, 0}).is_zero());
    }
}

#include <gtest/gtest.h>

#include "integra/exact/registry.hpp"
#include "integra/macdonald/macdonald.hpp"

using namespace integra;

namespace {

RationalFunction q() { return RationalFunction::variable(var("q")); }
RationalFunction h() { return RationalFunction::variable(var("hbar")); }

std::vector<std::pair<Partition, int>> small_cases() {
    std::vector<std::pair<Partition, int>> out;
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= 4; ++k)
            for (const auto& p : partitions(k, n)) out.emplace_back(p, n);
    return out;
}

} // namespace

TEST(Partitions, EnumerationAndDominance) {
    EXPECT_EQ(partitions(4, 2), (std::vector<Partition>{{4, 0}, {3, 1}, {2, 2}}));
    EXPECT_EQ(partitions(3, 3).size(), 3u);
    EXPECT_TRUE(dominates({3, 1, 0}, {2, 1, 1}));
    EXPECT_FALSE(dominates({2, 2, 0, 0}, {3, 1, 0, 0}));
    EXPECT_FALSE(dominates({3, 0, 0, 0, 0, 0}, {2, 2, 2, 0, 0, 0})); // sizes differ
    EXPECT_FALSE(dominates({3, 1, 1, 1}, {2, 2, 2, 0}));
    EXPECT_FALSE(dominates({2, 2, 2, 0}, {3, 1, 1, 1}));
    EXPECT_EQ(parse_partition("2,1", 3), (Partition{2, 1, 0}));
    EXPECT_THROW(parse_partition("1,2", 3), std::invalid_argument);
}

TEST(MacdonaldOracle, Examples) {
    auto x = xi_vars(2);
    auto p1 = macdonald_oracle({1}, 2);
    EXPECT_EQ(p1.coeffs.size(), 1u);
    EXPECT_TRUE(p1.coefficient({1, 0}) == RationalFunction(1));
    auto p11 = macdonald_oracle({1, 1}, 2);
    EXPECT_EQ(p11.coeffs.size(), 1u);
    auto p2 = macdonald_oracle({2}, 2);
    RationalFunction expect = (1 + q()) * (1 - h()) / (1 - q() * h());
    EXPECT_TRUE(p2.coefficient({2, 0}) == RationalFunction(1));
    EXPECT_TRUE(p2.coefficient({1, 1}) == expect);
}

TEST(MacdonaldOracle, Triangular) {
    for (const auto& [lam, n] : small_cases())
        for (const auto& [mu, c] : macdonald_oracle(lam, n).coeffs) EXPECT_TRUE(dominates(lam, mu));
}

TEST(MacdonaldOracle, AgreesWithGramSchmidt) {
    for (const auto& [lam, n] : small_cases())
        EXPECT_TRUE(macdonald_oracle(lam, n) == macdonald_gram_schmidt(lam, n)) << partition_str(lam);
}

TEST(MacdonaldOracle, SchurAtEqualParameters) {
    Substitution s;
    s.set(var("hbar"), Monomial::var(var("q")));
    for (const auto& [lam, n] : small_cases())
        EXPECT_TRUE(macdonald_oracle(lam, n).substitute(s) == schur_polynomial(lam, n)) << partition_str(lam);
}

TEST(Schur, SmallExamples) {
    auto s21 = schur_polynomial({2, 1, 0}, 3);
    EXPECT_TRUE(s21.coefficient({2, 1, 0}) == RationalFunction(1));
    EXPECT_TRUE(s21.coefficient({1, 1, 1}) == RationalFunction(2));
    EXPECT_EQ(s21.coeffs.size(), 2u);
}

TEST(Locus, Examples) {
    for (const auto& r : truncation_locus({0, 0, 0})) EXPECT_TRUE(r == h());
    auto l10 = truncation_locus({1, 0});
    ASSERT_EQ(l10.size(), 1u);
    EXPECT_TRUE(l10[0] == h() / q());
    auto l210 = truncation_locus({2, 1, 0});
    ASSERT_EQ(l210.size(), 2u);
    EXPECT_TRUE(l210[0] == h() / q() && l210[1] == h() / q());
    EXPECT_TRUE(truncation_locus({1, 0}, LocusDirection::Flipped)[0] == (q() * h()).inverse());
}

TEST(Eigencheck, DirectionResolvesToFlipped) {
    EXPECT_EQ(resolve_locus_direction(), LocusDirection::Flipped);
    auto printed = eigencheck({1, 0}, 2, LocusDirection::AsPrinted);
    EXPECT_FALSE(printed.scale_is_monomial);
}

TEST(Eigencheck, SimultaneousEigenvectors) {
    for (const auto& [lam, n] : small_cases()) {
        auto rep = eigencheck(lam, n);
        EXPECT_TRUE(rep.all_exact()) << partition_str(lam);
        EXPECT_TRUE(rep.top_is_q_power) << partition_str(lam);
        EXPECT_TRUE(rep.scale == h().pow(n - 1)) << partition_str(lam);
        for (const auto& e : rep.entries) EXPECT_TRUE(e.normalization == h().pow(-e.k * (e.k - 1) / 2));
    }
}

TEST(Eigencheck, EmptyPartition) {
    auto rep = eigencheck({0, 0}, 2);
    auto a = locus_point({0, 0}, LocusDirection::Flipped);
    EXPECT_TRUE(rep.entries[0].eigenvalue == 1 + h());
    EXPECT_TRUE(rep.entries[0].eigenvalue == h() * elementary(a, 1));
    EXPECT_TRUE(rep.entries[1].eigenvalue == RationalFunction(1));
}

TEST(Eigencheck, FirstOrderTwoVariables) {
    auto rep = eigencheck({1, 0}, 2);
    EXPECT_TRUE(rep.entries[0].eigenvalue == q() * h() + 1);
    auto a = locus_point({1, 0}, LocusDirection::Flipped);
    EXPECT_TRUE(rep.entries[0].eigenvalue == h() * (a[0] + a[1]));
}

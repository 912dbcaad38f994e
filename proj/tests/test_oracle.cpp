#include <gtest/gtest.h>

#include "idealforge/constructions.hpp"
#include "idealforge/oracle.hpp"
#include "oracles.hpp"

using namespace idealforge;

TEST(Alpha, SmallExamples) {
    const AlphaRecord one = alpha_exhaustive(Nat(1));
    EXPECT_EQ(one.alpha, 1u);
    EXPECT_EQ(one.witness, (SetFamily{FiniteSet{}}));
    EXPECT_EQ(alpha_exhaustive(Nat(3)).alpha, 2u);
    EXPECT_EQ(alpha_exhaustive(Nat(7)).alpha, 2u);
    EXPECT_EQ(alpha_exhaustive(Nat(8)).alpha, 1u);
}

TEST(Alpha, WitnessesCountExactly) {
    for (std::uint64_t k = 1; k <= 64; ++k) {
        const AlphaRecord r = alpha_exhaustive(Nat(k));
        EXPECT_EQ(r.witness.size(), r.alpha);
        EXPECT_EQ(oracle::ideal_count_collect(r.witness), k);
        EXPECT_EQ(normalize(r.witness).size(), r.alpha) << "witness is not an antichain for k=" << k;
    }
}

TEST(Alpha, PowersOfTwoNeedOneMember) {
    for (std::uint64_t k = 1; k <= 64; k *= 2) EXPECT_EQ(alpha_exhaustive(Nat(k)).alpha, 1u);
}

TEST(Alpha, NotMonotoneInK) {
    EXPECT_GT(alpha_exhaustive(Nat(7)).alpha, alpha_exhaustive(Nat(8)).alpha);
}

// Every family of at most 3 subsets of a 5-element set, enumerated
// directly.
TEST(Alpha, MatchesDirectEnumerationOnFiveElements) {
    const auto table = oracle::alpha_table(5, 3, 32);
    for (std::uint64_t k = 1; k <= 32; ++k) {
        if (table[k] == 0) {
            EXPECT_THROW(alpha_exhaustive(Nat(k), 5, 3), BudgetExceeded) << k;
        } else {
            EXPECT_EQ(alpha_exhaustive(Nat(k), 5, 3).alpha, table[k]) << k;
        }
    }
}

TEST(Alpha, BracketedByTheBounds) {
    for (std::uint64_t k = 1; k <= 64; ++k) {
        const std::size_t a = alpha_exhaustive(Nat(k)).alpha;
        EXPECT_LE(lower_bound_terms(Nat(k)), a) << k;
        EXPECT_LE(a, build_best(Nat(k)).size()) << k;
        EXPECT_LE(a, block_count(Nat(k)) + 1) << k;
    }
}

TEST(Alpha, ReportsWhenNothingIsFound) {
    EXPECT_THROW(alpha_exhaustive(Nat(13), 12, 2), BudgetExceeded);
}

// 31 = 2^4 + 2^4 - 1 needs eight elements; smaller universes only admit
// larger families.
TEST(Alpha, DependsOnTheUniverseLimit) {
    EXPECT_THROW(alpha_exhaustive(Nat(31), 5, 4), BudgetExceeded);
    EXPECT_EQ(alpha_exhaustive(Nat(31), 6, 4).alpha, 3u);
    EXPECT_EQ(alpha_exhaustive(Nat(31), 8, 4).alpha, 2u);
}

TEST(Alpha, RejectsOutOfRangeArguments) {
    EXPECT_THROW(alpha_exhaustive(Nat(0)), DomainError);
    EXPECT_THROW(alpha_exhaustive(Nat(65)), DomainError);
    EXPECT_THROW(alpha_exhaustive(Nat(5), 30), DomainError);
    EXPECT_THROW(alpha_exhaustive(Nat(5), 6, 0), DomainError);
}

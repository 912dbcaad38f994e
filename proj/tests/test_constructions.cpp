#include <gtest/gtest.h>

#include <random>

#include "idealforge/constructions.hpp"
#include "idealforge/recount.hpp"
#include "oracles.hpp"

using namespace idealforge;

TEST(BuildBlock, FortyNineUsesThreeMembers) {
    const CertifiedFamily f = build_block(Nat(49));
    EXPECT_EQ(f.count, Nat(49));
    EXPECT_EQ(f.size(), 3u);
    EXPECT_EQ(ideal_count_ie(f.family), Nat(49));
}

TEST(BuildBlock, SingleBlockHasTwoMembersOrOne) {
    // 2^{q+l} - 2^l
    EXPECT_EQ(build_block(Nat(7)).size(), 2u);
    EXPECT_EQ(build_block(Nat(56)).size(), 2u);
    EXPECT_EQ(build_block(Nat(8)).size(), 1u);
    EXPECT_EQ(build_block(Nat(1)).size(), 1u);
}

TEST(BuildBlock, ZeroIsRejected) {
    EXPECT_THROW(build_block(Nat(0)), DomainError);
    EXPECT_THROW(build_best(Nat(0)), DomainError);
}

TEST(BuildBlock, SmallKAgainstBruteForce) {
    for (std::uint64_t k = 1; k <= 300; ++k) {
        const CertifiedFamily f = build_block(Nat(k));
        ASSERT_LE(f.size(), block_count(Nat(k)) + 1) << k;
        if (f.family.universe().size() <= 20) ASSERT_EQ(oracle::ideal_count_brute(f.family), k) << k;
        else ASSERT_EQ(oracle::ideal_count_collect(f.family), k) << k;
    }
}

TEST(BuildBlock, PowerOfTwoIsOneMember) {
    const CertifiedFamily f = build_best(Nat::pow2(64));
    EXPECT_EQ(f.size(), 1u);
    EXPECT_EQ(recount(*f.trace), Nat::pow2(64));
}

TEST(Decompose, SplitsIntoThreeParts) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        const Nat k = random_nat(4 + rng() % 400, rng);
        const SqrtDecomposition d = decompose_sqrt(k);
        const std::size_t qq = d.q * d.q;
        EXPECT_EQ(Nat::pow2(3 * qq) + (d.gamma << qq) + d.beta, k);
        EXPECT_LT(d.beta, Nat::pow2(qq));
        EXPECT_LE(Nat::pow2(3 * qq), k);
        EXPECT_LT(k, Nat::pow2(3 * (d.q + 1) * (d.q + 1)));
    }
    EXPECT_THROW(decompose_sqrt(Nat(7)), DomainError);
}

TEST(BaseCase, Q2ExampleFamilyCountsExactly) {
    const CertifiedFamily f = basecase_sqrt(2, Nat(5));
    EXPECT_EQ(f.count, Nat(4101));
    EXPECT_EQ(ideal_count_ie(f.family), Nat(4101));
    EXPECT_EQ(Nat(ideal_enumerate(f.family, 1 << 13).size()), Nat(4101));
    EXPECT_LE(f.size(), 17u);
    EXPECT_EQ(recount(*f.trace), Nat(4101));
}

TEST(BaseCase, MemberBoundFormula) {
    EXPECT_EQ(basecase_member_bound(2), 17u);
    EXPECT_EQ(basecase_member_bound(3), 26u);
    EXPECT_EQ(basecase_member_bound(4), 32u);
}

TEST(BaseCase, IntermediatesForAllQ2Betas) {
    for (std::uint64_t beta = 0; beta < 16; ++beta) {
        GroupAllocator alloc;
        const BaseCaseBuild b = basecase_sqrt_detailed(2, Nat(beta), alloc);
        EXPECT_EQ(ideal_count_ie(b.union_family.family), b.plan.union_count);
        EXPECT_EQ(ideal_count_ie(b.correction.family), b.plan.correction);
        EXPECT_EQ(ideal_count_ie(b.t1.family), b.plan.t1);
        EXPECT_EQ(ideal_count_ie(b.t2_plus_one.family), b.plan.t2 + Nat(1));
        EXPECT_EQ(ideal_count_ie(b.result.family), Nat(4096 + beta));
        EXPECT_LE(b.t1.size(), 4u * 2 + 3);
    }
}

TEST(BaseCase, PlanIdentities) {
    std::mt19937_64 rng(31);
    for (std::size_t q : {2, 3, 4, 5, 7}) {
        for (int trial = 0; trial < 10; ++trial) {
            const Nat beta = Nat::from_bigint(random_nat(q * q + 1, rng).big() & (Nat::pow2(q * q) - Nat(1)).big());
            std::vector<std::uint32_t> groups(q * q);
            for (std::size_t g = 0; g < groups.size(); ++g) groups[g] = static_cast<std::uint32_t>(g);
            const BaseCasePlan p = make_base_case_plan(q, beta, groups);
            EXPECT_EQ(p.t1 + p.t2, Nat::pow2(3 * q * q) + beta);
            EXPECT_LE(block_count(p.correction), 2 * q + 2);
            EXPECT_LE(block_count(p.t2 + Nat(1)), (q + 1) * ceil_log2(q) + 2);
            for (std::size_t j = 0; j < q; ++j) {
                EXPECT_GE(p.a[j], -1);
                EXPECT_LE(p.a[j], static_cast<long long>(q) - 1);
            }
        }
    }
}

TEST(BaseCase, RejectsOutOfRangeInputs) {
    EXPECT_THROW(basecase_sqrt(1, Nat(0)), DomainError);
    EXPECT_THROW(basecase_sqrt(2, Nat(16)), DomainError);
}

TEST(BuildSqrt, SmallInputsFallBack) {
    EXPECT_THROW(build_sqrt(Nat(2)), DomainError);
    EXPECT_EQ(build_sqrt(Nat(3)).count, Nat(3));
    EXPECT_EQ(build_sqrt(Nat(4096)).size(), 1u);
    EXPECT_EQ(build_sqrt(Nat(4095)).count, Nat(4095));
}

TEST(BuildSqrt, UsesBaseCaseAtFortyOneHundredOne) {
    const CertifiedFamily f = build_sqrt(Nat(4101));
    EXPECT_TRUE(std::holds_alternative<SqrtBaseNode>(f.trace->node));
    EXPECT_EQ(recount(*f.trace), Nat(4101));
}

TEST(BuildSqrt, RandomInputsRecount) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const Nat k = random_nat(13 + rng() % 200, rng);
        const CertifiedFamily f = build_sqrt(k);
        ASSERT_EQ(f.count, k);
        ASSERT_EQ(recount(*f.trace), k);
        ASSERT_EQ(replay(*f.trace), normalize(f.family));
    }
}

TEST(BuildBest, SqrtPathWinsOnLongAlternatingPatterns) {
    Nat k(0);
    for (std::size_t i = 0; i < 600; i += 2) k += Nat::pow2(i);
    const CertifiedFamily block = build_block(k);
    const CertifiedFamily best = build_best(k);
    EXPECT_LT(best.size(), block.size());
    EXPECT_EQ(recount(*best.trace), k);
}

TEST(BuildBest, IsDeterministic) {
    const Nat k = Nat::pow2(300) + Nat(12345);
    const CertifiedFamily a = build_best(k);
    const CertifiedFamily b = build_best(k);
    EXPECT_EQ(a.family, b.family);
}

TEST(BuildBest, Example2To300Plus17) {
    const Nat k = Nat::pow2(300) + Nat(17);
    const CertifiedFamily f = build_best(k);
    EXPECT_LE(f.size(), block_count(k) + 1);
    EXPECT_EQ(recount(*f.trace), k);
}

#include <gtest/gtest.h>

#include <random>

#include "idealforge/combinators.hpp"
#include "idealforge/constructions.hpp"
#include "idealforge/recount.hpp"
#include "oracles.hpp"

using namespace idealforge;

TEST(Split, CountsAddMinusOne) {
    GroupAllocator alloc;
    const CertifiedFamily a = build_power(3, alloc);
    const CertifiedFamily b = build_power(2, alloc);
    const CertifiedFamily s = split(a, b, alloc);
    EXPECT_EQ(s.count, Nat(8 + 4 - 1));
    EXPECT_EQ(ideal_count_ie(s.family), s.count);
    EXPECT_EQ(recount(*s.trace), s.count);
}

TEST(Split, RightSideNeedsCountTwo) {
    GroupAllocator alloc;
    const CertifiedFamily a = build_power(3, alloc);
    const CertifiedFamily one = build_power(0, alloc);
    EXPECT_THROW(split(a, one, alloc), DomainError);
}

TEST(Split, EmptySetOnTheLeftIsAbsorbed) {
    GroupAllocator alloc;
    const CertifiedFamily one = build_power(0, alloc);
    const CertifiedFamily s = split(one, build_power(4, alloc), alloc);
    EXPECT_EQ(s.count, Nat(16));
    EXPECT_EQ(s.size(), 1u);
}

TEST(Split, OverlappingGroupsAreRehomed) {
    GroupAllocator alloc;
    const CertifiedFamily a = build_block(Nat(11), alloc);
    const CertifiedFamily s = split(a, a, alloc);
    EXPECT_EQ(s.count, Nat(21));
    EXPECT_EQ(ideal_count_ie(s.family), Nat(21));
    EXPECT_EQ(recount(*s.trace), Nat(21));
}

TEST(Lift, MultipliesByPowerOfTwo) {
    GroupAllocator alloc;
    const CertifiedFamily a = build_block(Nat(7), alloc);
    const CertifiedFamily l = lift(a, 5, alloc);
    EXPECT_EQ(l.count, Nat(7 * 32));
    EXPECT_EQ(ideal_count_ie(l.family), l.count);
    EXPECT_EQ(l.size(), a.size());
}

TEST(Lift, RandomCompositionsMatchBruteForce) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        GroupAllocator alloc;
        CertifiedFamily f = build_power(rng() % 3, alloc);
        const int steps = 1 + static_cast<int>(rng() % 4);
        for (int s = 0; s < steps; ++s) {
            if (rng() % 2) f = lift(f, rng() % 3, alloc);
            else f = split(f, build_power(1 + rng() % 3, alloc), alloc);
        }
        if (f.family.universe().size() > 20) continue;
        ASSERT_EQ(Nat(oracle::ideal_count_brute(f.family)), f.count);
        ASSERT_EQ(recount(*f.trace), f.count);
        ASSERT_EQ(replay(*f.trace), normalize(f.family));
    }
}

TEST(CertifyLeaf, CountsByInclusionExclusion) {
    const SetFamily fam{FiniteSet::prefix(0, 2), FiniteSet::prefix(1, 2)};
    const CertifiedFamily c = certify_leaf(fam);
    EXPECT_EQ(c.count, Nat(7));
    EXPECT_EQ(recount(*c.trace), Nat(7));
    EXPECT_THROW(certify_leaf(SetFamily{}), DomainError);
}

TEST(Recount, RejectsTamperedCounts) {
    GroupAllocator alloc;
    const CertifiedFamily f = build_block(Nat(49), alloc);
    const TraceNode& root = *f.trace;
    const TraceNode bad{Nat(50), root.node};
    EXPECT_THROW(recount(bad), CertificateError);
}

TEST(Recount, RejectsClosedFormLeafOutsideBaseCase) {
    const SetFamily fam{FiniteSet::prefix(0, 3)};
    const CertifiedFamily c = assume_leaf(fam, Nat(8), LeafMethod::ClosedForm);
    EXPECT_THROW(recount(*c.trace), CertificateError);
}

TEST(Recount, RejectsLiftOntoAnExistingGroup) {
    GroupAllocator alloc;
    const CertifiedFamily c = build_power(2, alloc);
    const std::uint32_t used = c.family.groups().front();
    const auto bad = make_trace(Nat(16), LiftNode{c.trace, 2, used});
    EXPECT_THROW(recount(*bad), CertificateError);
}

TEST(Recount, RejectsSplitSidesSharingGroups) {
    GroupAllocator alloc;
    const CertifiedFamily a = build_power(2, alloc);
    const auto bad = make_trace(Nat(7), SplitNode{a.trace, a.trace});
    EXPECT_THROW(recount(*bad), CertificateError);
}

TEST(Recount, RejectsLeavesOverBudget) {
    SetFamily fam;
    for (std::uint32_t i = 1; i <= 12; ++i) fam.add(FiniteSet{Element{0, i}});
    const CertifiedFamily c = certify_leaf(fam, 30);
    EXPECT_EQ(recount(*c.trace), Nat(13));
    EXPECT_THROW(recount(*c.trace, RecountOptions{8}), CertificateError);
}

TEST(Recount, RejectsEditedBaseCaseParameters) {
    GroupAllocator alloc;
    const CertifiedFamily base = basecase_sqrt(2, Nat(5), alloc);
    const auto& node = std::get<SqrtBaseNode>(base.trace->node);
    SqrtBaseNode edited = node;
    edited.beta = Nat(6);
    const auto bad = make_trace(base.count + Nat(1), edited);
    EXPECT_THROW(recount(*bad), CertificateError);
}

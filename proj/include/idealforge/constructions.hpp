#pragma once

// Constructions of families with a prescribed ideal cardinality k.
//
//   build_block   at most bl(k) + 1 members
//   basecase_sqrt 2^{3q^2} + beta, beta < 2^{q^2}, in at most
//                 (q+1)ceil(log q) + 4q + 6 members
//   build_sqrt    k = 2^{3q^2} + gamma 2^{q^2} + beta: the base case split
//                 with (gamma lifted by q^2, plus one)
//   build_best    the smaller of the two

#include <cstddef>
#include <cstdint>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "idealforge/basecase_plan.hpp"
#include "idealforge/combinators.hpp"
#include "idealforge/error.hpp"
#include "idealforge/family.hpp"
#include "idealforge/numeric.hpp"

namespace idealforge {

// One member of size q; count 2^q.
inline CertifiedFamily build_power(std::size_t q, GroupAllocator& alloc) {
    SetFamily fam{FiniteSet::prefix(alloc.fresh(), q)};
    Nat count = Nat::pow2(q);
    return CertifiedFamily{fam, count, make_trace(count, LeafNode{fam, LeafMethod::PowerSet})};
}

namespace detail {

// k = 1_{ones} 0_{zeros}: S1 = [ones+zeros-1]_a, S2 = [ones-1]_b + [zeros]_a,
// |ID| = 2^{ones+zeros} - 2^{zeros}. The two sets coincide when ones = 1.
inline CertifiedFamily single_block(std::size_t ones, std::size_t zeros, GroupAllocator& alloc) {
    const std::uint32_t a = alloc.fresh();
    const std::uint32_t b = alloc.fresh();
    SetFamily raw{FiniteSet::prefix(a, ones + zeros - 1),
                  FiniteSet::prefix(b, ones - 1).disjoint_union(FiniteSet::prefix(a, zeros))};
    SetFamily norm = normalize(raw);
    Nat count = Nat::pow2(ones + zeros) - Nat::pow2(zeros);
    LeafMethod method = norm.size() == 1 ? LeafMethod::PowerSet : LeafMethod::InclusionExclusion;
    return CertifiedFamily{norm, count, make_trace(count, LeafNode{raw, method})};
}

}  // namespace detail

// Induction on the block count. With k = k' 2^{l_1} and k' = k'' + (2^{q_1} - 1),
// where k'' is k' with its lowest run of ones cleared:
//   family(k) = lift(split(family(k''), power(q_1)), l_1)
inline CertifiedFamily build_block(const Nat& k, GroupAllocator& alloc) {
    if (k.is_zero()) throw DomainError("build_block needs k >= 1");

    struct Step { std::size_t ones; std::size_t zeros; };
    std::vector<Step> steps;
    Nat cur = k;
    while (block_count(cur) > 1) {
        const std::size_t zeros = cur.trailing_zeros();
        Nat odd = cur >> zeros;
        std::size_t ones = 0;
        while (odd.bit(ones)) ++ones;
        steps.push_back({ones, zeros});
        cur = odd - (Nat::pow2(ones) - Nat(1));
    }
    const std::size_t base_zeros = cur.trailing_zeros();
    CertifiedFamily fam = detail::single_block((cur >> base_zeros).bit_length(), base_zeros, alloc);

    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        fam = split(fam, build_power(it->ones, alloc), alloc);
        if (it->zeros > 0) fam = lift(fam, it->zeros, alloc);
    }
    if (fam.count != k) throw InvariantViolation("build_block produced " + fam.count.str() + " for k = " + k.str());
    if (fam.size() > block_count(k) + 1)
        throw InvariantViolation("build_block used " + std::to_string(fam.size()) + " members for k = " + k.str());
    return fam;
}

struct SqrtDecomposition {
    std::size_t q = 0;
    Nat gamma;
    Nat beta;

    friend bool operator==(const SqrtDecomposition&, const SqrtDecomposition&) = default;
};

// k = 2^{3q^2} + gamma 2^{q^2} + beta with 2^{3q^2} <= k < 2^{3(q+1)^2}
// and beta < 2^{q^2}.
inline SqrtDecomposition decompose_sqrt(const Nat& k) {
    if (k < Nat(8)) throw DomainError("decompose_sqrt needs k >= 8, got " + k.str());
    const std::size_t floor_log = k.bit_length() - 1;
    std::size_t q = 1;
    while (3 * (q + 1) * (q + 1) <= floor_log) ++q;
    const std::size_t qq = q * q;
    const Nat rest = k - Nat::pow2(3 * qq);
    return SqrtDecomposition{q, rest >> qq, rest & (Nat::pow2(qq) - Nat(1))};
}

// Every intermediate family of the base case, kept for auditing.
struct BaseCaseBuild {
    BaseCasePlan plan;
    CertifiedFamily union_family;  // S u T, count by closed form
    CertifiedFamily correction;
    CertifiedFamily t1;
    CertifiedFamily t2_plus_one;
    CertifiedFamily result;
};

inline BaseCaseBuild basecase_sqrt_detailed(std::size_t q, const Nat& beta, GroupAllocator& alloc,
                                            std::size_t ie_budget = kDefaultIeBudget) {
    const std::size_t qq = q * q;
    if (q < 2) throw DomainError("basecase_sqrt needs q >= 2");
    const std::uint32_t first = alloc.fresh_block(static_cast<std::uint32_t>(qq));
    std::vector<std::uint32_t> groups(qq);
    for (std::size_t g = 0; g < qq; ++g) groups[g] = first + static_cast<std::uint32_t>(g);

    BaseCaseBuild out{make_base_case_plan(q, beta, groups), {}, {}, {}, {}, {}};
    const BaseCasePlan& plan = out.plan;

    out.union_family = assume_leaf(plan.family(), plan.union_count, LeafMethod::ClosedForm);
    if (out.union_family.size() <= ie_budget && ideal_count_ie(out.union_family.family, ie_budget) != plan.union_count)
        throw InvariantViolation("closed-form |ID(S u T)| disagrees with inclusion-exclusion for q=" +
                                 std::to_string(q) + ", beta=" + beta.str());

    out.correction = build_block(plan.correction, alloc);
    out.t1 = split(out.union_family, out.correction, alloc);
    out.t2_plus_one = build_block(plan.t2 + Nat(1), alloc);
    CertifiedFamily body = split(out.t1, out.t2_plus_one, alloc);
    if (out.t1.count != plan.t1 || body.count != plan.target())
        throw InvariantViolation("base case assembly miscounted for q=" + std::to_string(q) + ", beta=" + beta.str());
    if (out.t1.size() > 4 * q + 3)
        throw InvariantViolation("t1 family exceeds 4q+3 members");
    if (body.size() > basecase_member_bound(q))
        throw InvariantViolation("base case used " + std::to_string(body.size()) + " members, bound " +
                                 std::to_string(basecase_member_bound(q)));

    out.result = CertifiedFamily{body.family, body.count,
                                 make_trace(body.count, SqrtBaseNode{q, beta, groups, body.trace})};
    return out;
}

inline CertifiedFamily basecase_sqrt(std::size_t q, const Nat& beta, GroupAllocator& alloc) {
    return basecase_sqrt_detailed(q, beta, alloc).result;
}

// Below 2^12 the decomposition has q = 1 and no base case applies.
inline constexpr std::size_t kSqrtMinBits = 13;

inline CertifiedFamily build_best(const Nat& k, GroupAllocator& alloc);

inline CertifiedFamily build_sqrt(const Nat& k, GroupAllocator& alloc) {
    if (k < Nat(3)) throw DomainError("build_sqrt needs k >= 3, got " + k.str());
    if (k.is_power_of_two()) return build_power(k.bit_length() - 1, alloc);
    if (k.bit_length() < kSqrtMinBits) return build_block(k, alloc);

    const SqrtDecomposition d = decompose_sqrt(k);
    CertifiedFamily base = basecase_sqrt(d.q, d.beta, alloc);
    if (d.gamma.is_zero()) return base;

    // gamma 2^{q^2} + 1 from gamma by lifting and splitting with {{x}}.
    CertifiedFamily high = lift(build_best(d.gamma, alloc), d.q * d.q, alloc);
    high = split(high, build_power(1, alloc), alloc);
    CertifiedFamily fam = split(base, high, alloc);
    if (fam.count != k) throw InvariantViolation("build_sqrt produced " + fam.count.str() + " for k = " + k.str());
    return fam;
}

// Fewer members wins; ties go to the block construction.
inline CertifiedFamily build_best(const Nat& k, GroupAllocator& alloc) {
    CertifiedFamily block = build_block(k, alloc);
    if (k < Nat(3)) return block;
    CertifiedFamily sq = build_sqrt(k, alloc);
    return sq.size() < block.size() ? sq : block;
}

inline CertifiedFamily build_power(std::size_t q) { GroupAllocator a; return build_power(q, a); }
inline CertifiedFamily build_block(const Nat& k) { GroupAllocator a; return build_block(k, a); }
inline CertifiedFamily basecase_sqrt(std::size_t q, const Nat& beta) { GroupAllocator a; return basecase_sqrt(q, beta, a); }
inline CertifiedFamily build_sqrt(const Nat& k) { GroupAllocator a; return build_sqrt(k, a); }

// Runs both constructions concurrently, each with its own allocator so the
// output does not depend on scheduling.
inline CertifiedFamily build_best(const Nat& k) {
    if (k.is_zero()) throw DomainError("build_best needs k >= 1");
    if (k < Nat(3)) return build_block(k);
    auto sqrt_future = std::async(std::launch::async, [&k] { return build_sqrt(k); });
    CertifiedFamily block = build_block(k);
    CertifiedFamily sq = sqrt_future.get();
    return sq.size() < block.size() ? sq : block;
}

enum class Strategy { Block, Sqrt, Best };

inline CertifiedFamily build(const Nat& k, Strategy s) {
    switch (s) {
        case Strategy::Block: return build_block(k);
        case Strategy::Sqrt: return build_sqrt(k);
        case Strategy::Best: return build_best(k);
    }
    throw DomainError("unknown strategy");
}

}  // namespace idealforge

#pragma once

// Set system for m = 2^{3q^2} + beta with beta < 2^{q^2}.
//
// Grid sets, for i, j in [0, q-1] and bit positions counted from 1 at the
// least significant end:
//   F_ij = {}             if bit (jq + i + 1) of beta is 1   (family F0)
//   F_ij = [i]_{jq+i}     otherwise                         (family F1)
// Row and column sets:
//   S_i = (U_j F_ij) + [q^2]_0        T_j = (U_i F_ij) + [jq]_0
// so that S_i n T_j = [jq]_0 + F_ij.
//
// |ID(S u T)| has the closed form
//   sum 2^|S_i| + sum 2^|T_j| - sum_{i,j} 2^{jq + |F_ij|} + (q-1)(sum_j 2^{jq} - 2^{q^2})
// and m splits as t1 + t2 with
//   correction = 2^{3q^2-1} - sum 2^|S_i| - sum 2^|T_j| + 2^{q^2}
//   t1 = |ID(S u T)| + correction - 1
//   t2 = 2^{3q^2-1} + sum_{F0} 2^{jq} - (q-1)(sum_j 2^{jq} - 2^{q^2})
//      = 2^{3q^2-1} - sum_{j=0..q} a_j 2^{jq},  a_j = q-1-b_j, a_q = -(q-1)
// where b_j counts the F0 cells in column j.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "idealforge/error.hpp"
#include "idealforge/family.hpp"
#include "idealforge/numeric.hpp"

namespace idealforge {

inline std::size_t basecase_member_bound(std::size_t q) {
    return (q + 1) * ceil_log2(q) + 4 * q + 6;
}

struct BaseCasePlan {
    std::size_t q = 0;
    Nat beta;
    std::vector<std::uint32_t> groups;         // local group -> element group, size q^2
    std::vector<std::vector<FiniteSet>> f;     // f[i][j] = F_ij
    std::vector<FiniteSet> s_sets;             // S_0 .. S_{q-1}
    std::vector<FiniteSet> t_sets;             // T_0 .. T_{q-1}
    std::vector<long long> a;                  // a_0 .. a_q
    Nat union_count;                           // |ID(S u T)|
    Nat correction;
    Nat t1;
    Nat t2;
    std::vector<SignedPower> correction_terms; // correction as a signed power sum
    std::vector<SignedPower> t2_plus_one_terms;

    Nat target() const { return Nat::pow2(3 * q * q) + beta; }

    bool in_f0(std::size_t i, std::size_t j) const { return beta.bit(j * q + i); }

    SetFamily family() const {
        SetFamily fam;
        for (const auto& s : s_sets) fam.add(s);
        for (const auto& t : t_sets) fam.add(t);
        return fam;
    }
};

// Builds and self-checks the plan. Every identity listed above is verified
// exactly; a failure raises InvariantViolation.
inline BaseCasePlan make_base_case_plan(std::size_t q, const Nat& beta,
                                        std::vector<std::uint32_t> groups) {
    if (q < 2) throw DomainError("base case needs q >= 2, got q = " + std::to_string(q));
    const std::size_t qq = q * q;
    if (beta >= Nat::pow2(qq))
        throw DomainError("base case needs beta < 2^{q^2}, got beta = " + beta.str());
    if (groups.size() != qq)
        throw DomainError("base case plan needs q^2 = " + std::to_string(qq) + " groups");

    BaseCasePlan p;
    p.q = q;
    p.beta = beta;
    p.groups = std::move(groups);
    const auto group = [&](std::size_t local) { return p.groups[local]; };

    p.f.assign(q, std::vector<FiniteSet>(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            if (!p.in_f0(i, j)) p.f[i][j] = FiniteSet::prefix(group(j * q + i), i);

    const FiniteSet square = FiniteSet::prefix(group(0), qq);
    for (std::size_t i = 0; i < q; ++i) {
        FiniteSet s = square;
        for (std::size_t j = 0; j < q; ++j) s = s.disjoint_union(p.f[i][j]);
        p.s_sets.push_back(std::move(s));
    }
    for (std::size_t j = 0; j < q; ++j) {
        FiniteSet t = FiniteSet::prefix(group(0), j * q);
        for (std::size_t i = 0; i < q; ++i) t = t.disjoint_union(p.f[i][j]);
        p.t_sets.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            if (p.s_sets[i].intersected(p.t_sets[j]) !=
                FiniteSet::prefix(group(0), j * q).disjoint_union(p.f[i][j]))
                throw InvariantViolation("S_i n T_j != [jq] + F_ij at i=" + std::to_string(i) +
                                         ", j=" + std::to_string(j));

    auto pow2 = [](std::size_t e) { return BigInt(1) << static_cast<unsigned>(e); };
    BigInt sum_s, sum_t, sum_grid, sum_cols, sum_f0;
    for (const auto& s : p.s_sets) sum_s += pow2(s.size());
    for (const auto& t : p.t_sets) sum_t += pow2(t.size());
    for (std::size_t j = 0; j < q; ++j) {
        sum_cols += pow2(j * q);
        for (std::size_t i = 0; i < q; ++i) {
            sum_grid += pow2(j * q + p.f[i][j].size());
            if (p.in_f0(i, j)) sum_f0 += pow2(j * q);
        }
    }
    const BigInt qm1 = BigInt(static_cast<long long>(q) - 1);
    const BigInt tail = qm1 * (sum_cols - pow2(qq));  // negative
    const BigInt half = pow2(3 * qq - 1);

    p.union_count = Nat::from_bigint(sum_s + sum_t - sum_grid + tail);
    p.correction = Nat::from_bigint(half - sum_s - sum_t + pow2(qq));
    p.t1 = p.union_count + p.correction - Nat(1);
    p.t2 = Nat::from_bigint(half + sum_f0 - tail);

    const Nat t1_direct = Nat::from_bigint(half + pow2(qq) - 1 - sum_grid + tail);
    if (p.t1 != t1_direct) throw InvariantViolation("t1 routes disagree: " + p.t1.str() + " vs " + t1_direct.str());
    if (p.t1 + p.t2 != p.target())
        throw InvariantViolation("t1 + t2 != 2^{3q^2} + beta for beta = " + beta.str());

    // a_j form of t2.
    p.a.resize(q + 1);
    BigInt a_sum;
    for (std::size_t j = 0; j < q; ++j) {
        long long b = 0;
        for (std::size_t i = 0; i < q; ++i) b += p.in_f0(i, j) ? 1 : 0;
        p.a[j] = static_cast<long long>(q) - 1 - b;
        if (p.a[j] < -1 || p.a[j] > static_cast<long long>(q) - 1)
            throw InvariantViolation("a_" + std::to_string(j) + " out of range");
    }
    p.a[q] = -(static_cast<long long>(q) - 1);
    for (std::size_t j = 0; j <= q; ++j) a_sum += BigInt(p.a[j]) * pow2(j * q);
    if (Nat::from_bigint(half - a_sum) != p.t2) throw InvariantViolation("t2 != 2^{3q^2-1} - sum a_j 2^{jq}");

    // Block-count certificates for the two pieces realized by the block
    // construction.
    p.correction_terms.push_back({Sign::Plus, 3 * qq - 1});
    for (const auto& s : p.s_sets) p.correction_terms.push_back({Sign::Minus, s.size()});
    for (const auto& t : p.t_sets) p.correction_terms.push_back({Sign::Minus, t.size()});
    p.correction_terms.push_back({Sign::Plus, qq});
    const auto corr = bl_of_signed_sum(p.correction_terms);
    if (corr.value != p.correction || corr.blocks > 2 * q + 2)
        throw InvariantViolation("bl(correction) = " + std::to_string(corr.blocks) + " exceeds 2q+2");

    p.t2_plus_one_terms.push_back({Sign::Plus, 3 * qq - 1});
    for (std::size_t j = 0; j <= q; ++j) {
        const long long aj = p.a[j];
        const auto mag = static_cast<unsigned long long>(aj < 0 ? -aj : aj);
        for (std::size_t b = 0; b < 64; ++b)
            if (mag >> b & 1ULL)
                p.t2_plus_one_terms.push_back({aj > 0 ? Sign::Minus : Sign::Plus, j * q + b});
    }
    p.t2_plus_one_terms.push_back({Sign::Plus, 0});
    const auto t2p1 = bl_of_signed_sum(p.t2_plus_one_terms);
    const std::size_t t2_limit = (q + 1) * ceil_log2(q) + 2;
    if (t2p1.value != p.t2 + Nat(1) || p.t2_plus_one_terms.size() > t2_limit || t2p1.blocks > t2_limit)
        throw InvariantViolation("bl(t2 + 1) = " + std::to_string(t2p1.blocks) + " exceeds (q+1)ceil(log q)+2");

    return p;
}

}  // namespace idealforge

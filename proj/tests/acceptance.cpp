// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails. All comparisons are exact.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "idealforge/idealforge.hpp"
#include "oracles.hpp"

using namespace idealforge;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome fail(const std::string& why) { return Outcome{false, why}; }

// 1. build_block(k) counts exactly and uses at most bl(k)+1 members.
Outcome exactness_sweep() {
    for (std::uint64_t k = 1; k <= 5000; ++k) {
        const CertifiedFamily f = build_block(Nat(k));
        if (ideal_count_ie(f.family) != Nat(k)) return fail("count mismatch at k=" + std::to_string(k));
        if (f.size() > block_count(Nat(k)) + 1) return fail("member bound exceeded at k=" + std::to_string(k));
    }
    return {true, "k in [1, 5000]"};
}

// 2. The DNF of build_block(k) has exactly k models.
Outcome dnf_equivalence() {
    std::size_t brute = 0, ie = 0;
    for (std::uint64_t k = 1; k <= 512; ++k) {
        const Dnf d = family_to_dnf(build_block(Nat(k)).family);
        Nat count;
        if (d.num_vars() <= 20) {
            count = dnf_brute_count(d, 20);
            ++brute;
        } else {
            count = dnf_count(d);
            ++ie;
        }
        if (count != Nat(k)) return fail("k=" + std::to_string(k) + " counted " + count.str());
    }
    return {true, std::to_string(brute) + " by enumeration, " + std::to_string(ie) + " by inclusion-exclusion"};
}

// 3. All q = 2 base cases, with every intermediate family recounted.
Outcome base_case_q2() {
    for (std::uint64_t beta = 0; beta < 16; ++beta) {
        GroupAllocator alloc;
        const BaseCaseBuild b = basecase_sqrt_detailed(2, Nat(beta), alloc);
        const Nat target = Nat(4096 + beta);
        const std::string at = " at beta=" + std::to_string(beta);
        if (b.result.count != target || recount(*b.result.trace) != target) return fail("certified count" + at);
        for (const CertifiedFamily* part : {&b.union_family, &b.correction, &b.t1, &b.t2_plus_one, &b.result})
            if (ideal_count_ie(part->family) != part->count) return fail("intermediate miscounted" + at);
        if (b.result.size() > 17) return fail(std::to_string(b.result.size()) + " members" + at);
    }
    return {true, "16 betas, 5 families each"};
}

// 4. All q = 3 base cases by recount; 32 random betas also by direct
// inclusion-exclusion on every intermediate and on the final family.
Outcome base_case_q3() {
    std::mt19937_64 rng(2024);
    std::vector<bool> deep(512, false);
    for (int picked = 0; picked < 32;) {
        const auto b = rng() % 512;
        if (!deep[b]) { deep[b] = true; ++picked; }
    }
    const std::size_t bound = basecase_member_bound(3);
    for (std::uint64_t beta = 0; beta < 512; ++beta) {
        GroupAllocator alloc;
        const BaseCaseBuild b = basecase_sqrt_detailed(3, Nat(beta), alloc);
        const Nat target = Nat::pow2(27) + Nat(beta);
        const std::string at = " at beta=" + std::to_string(beta);
        if (recount(*b.result.trace) != target) return fail("recount" + at);
        if (b.result.size() > bound) return fail("member bound" + at);
        if (deep[beta])
            for (const CertifiedFamily* part : {&b.union_family, &b.correction, &b.t1, &b.t2_plus_one, &b.result})
                if (ideal_count_ie(part->family) != part->count) return fail("inclusion-exclusion" + at);
    }
    return {true, "512 recounts, 32 inclusion-exclusion cross-checks"};
}

// 5. Random 256-bit k through build_best.
Outcome large_k() {
    std::mt19937_64 rng(256);
    std::size_t worst_gap = 0;
    for (int i = 0; i < 100; ++i) {
        const Nat k = random_nat(256, rng);
        const CertifiedFamily f = build_best(k);
        if (recount(*f.trace) != k) return fail("recount mismatch for k=" + k.str());
        const auto sb = sqrt_bound(k);
        const std::size_t limit = std::min(block_count(k) + 1, *sb);
        if (f.size() > limit) return fail(std::to_string(f.size()) + " members > " + std::to_string(limit));
        worst_gap = std::max(worst_gap, f.size());
    }
    return {true, "100 values, largest family " + std::to_string(worst_gap) + " members"};
}

// 6. lower bound <= alpha <= constructed size on [1, 32].
Outcome lower_bound_vs_truth() {
    for (std::uint64_t k = 1; k <= 32; ++k) {
        const std::size_t a = alpha_exhaustive(Nat(k)).alpha;
        if (lower_bound_terms(Nat(k)) > a) return fail("lower bound above alpha at k=" + std::to_string(k));
        if (a > build_best(Nat(k)).size()) return fail("alpha above construction at k=" + std::to_string(k));
    }
    const std::size_t a3 = alpha_exhaustive(Nat(3)).alpha;
    const std::size_t a7 = alpha_exhaustive(Nat(7)).alpha;
    const std::size_t a8 = alpha_exhaustive(Nat(8)).alpha;
    if (a3 != 2 || a8 != 1 || a7 != 2)
        return fail("alpha(3,7,8) = " + std::to_string(a3) + "," + std::to_string(a7) + "," + std::to_string(a8));
    return {true, "k in [1, 32]; alpha(3)=2 alpha(7)=2 alpha(8)=1"};
}

// 7. bl(value) <= number of terms for random signed power sums.
Outcome signed_sum_bound() {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 10000) {
        std::vector<SignedPower> terms(1 + rng() % 16);
        for (auto& t : terms) t = SignedPower{rng() % 2 ? Sign::Plus : Sign::Minus, rng() % 128};
        if (evaluate(terms) <= 0) continue;
        const Nat v = Nat::from_bigint(evaluate(terms));
        if (oracle::block_count_scan(v) > terms.size()) return fail("bl(" + v.str() + ") too large");
        if (bl_of_signed_sum(terms).blocks != oracle::block_count_scan(v)) return fail("block count disagrees");
        ++done;
    }
    return {true, "10000 sums"};
}

// 8. ceil(0.5x + 1) < 20 sqrt(x) log2(x) for x = log2 k, k from 3 to
// 2^30000. x is evaluated in 100-digit arithmetic; the left side is
// rounded up and the right side down by a guard far above the working
// error.
Outcome log_bound_inequality() {
    using F = boost::multiprecision::cpp_bin_float_100;
    const F guard("1e-60");
    const F ln2 = boost::multiprecision::log(F(2));
    const double lo = std::log2(3.0), hi = 30000.0;
    F min_margin = F(1e9);
    for (int i = 0; i < 1000; ++i) {
        // Geometric grid in x; k is the integer nearest 2^x.
        const double target = lo * std::pow(hi / lo, i / 999.0);
        Nat k;
        if (i == 0) k = Nat(3);
        else if (i == 999) k = Nat::pow2(30000);
        else {
            const auto e = static_cast<std::size_t>(std::floor(target));
            const double frac = target - static_cast<double>(e);
            const auto mantissa = static_cast<std::uint64_t>(std::llround(std::exp2(frac + 40.0)));
            k = e >= 40 ? (Nat(mantissa) << (e - 40)) : Nat(static_cast<std::uint64_t>(std::llround(std::exp2(target))));
            if (k < Nat(3)) k = Nat(3);
        }
        const F x = boost::multiprecision::log(F(k.big())) / ln2;
        const F lhs = boost::multiprecision::ceil(F(0.5) * x + 1 + guard);
        const F rhs = 20 * boost::multiprecision::sqrt(x) * (boost::multiprecision::log(x) / ln2) - guard;
        if (!(lhs < rhs)) return fail("fails at x=" + x.str(20));
        min_margin = std::min(min_margin, rhs - lhs);
    }
    return {true, "1000 points, smallest margin " + min_margin.str(6)};
}

// 9. Inclusion-exclusion DNF counter against enumeration.
Outcome counter_agreement() {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const std::size_t t = rng() % 9;
        std::vector<std::vector<Literal>> items(t);
        for (auto& item : items)
            for (std::uint32_t v = 1; v <= n; ++v)
                if (const auto r = rng() % 4; r < 2) item.push_back(Literal{v, r == 0});
        const Dnf d(n, items);
        if (dnf_count(d) != dnf_brute_count(d)) return fail("disagreement at trial " + std::to_string(trial));
    }
    return {true, "10000 formulas"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"1 exactness sweep", exactness_sweep},
        {"2 dnf equivalence", dnf_equivalence},
        {"3 base case q=2", base_case_q2},
        {"4 base case q=3", base_case_q3},
        {"5 large k", large_k},
        {"6 lower bound vs alpha", lower_bound_vs_truth},
        {"7 signed-sum block bound", signed_sum_bound},
        {"8 log-bound inequality", log_bound_inequality},
        {"9 counter agreement", counter_agreement},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.name << ": " << o.detail << " ("
             << std::fixed << std::setprecision(2) << s << "s)";
        std::cout << line.str() << std::endl;
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

#pragma once

// Exhaustive alpha(k) for small k.
//
// A family of a sets is determined up to renaming of elements by how many
// elements lie in each of the 2^a - 1 Venn regions (each region being a
// nonempty set of members containing the element). The ideal cardinality
// depends only on intersection sizes, so searching region-size vectors
// covers every family over a universe of at most max_universe elements.
// Member counts are tried in increasing order; the first hit is minimal
// and is automatically an antichain.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "idealforge/error.hpp"
#include "idealforge/family.hpp"
#include "idealforge/numeric.hpp"

namespace idealforge {

inline constexpr std::size_t kOracleMaxK = 64;
inline constexpr std::size_t kDefaultOracleUniverse = 12;
inline constexpr std::size_t kDefaultOracleMembers = 4;

struct AlphaRecord {
    Nat k;
    std::size_t alpha = 0;
    SetFamily witness;
    std::size_t universe_size = 0;
};

namespace detail {

class AlphaSearch {
public:
    AlphaSearch(std::int64_t k, std::size_t members, std::size_t universe)
        : k_(k), members_(members), universe_(universe),
          regions_((std::size_t{1} << members) - 1), region_size_(regions_ + 1, 0),
          member_size_(members, 0) {
        max_member_ = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(k)) - 1);
    }

    bool run() { return visit(1, universe_); }

    SetFamily witness() const {
        std::vector<std::vector<Element>> sets(members_);
        std::uint32_t next = 1;
        for (std::size_t r = 1; r <= regions_; ++r)
            for (std::size_t c = 0; c < region_size_[r]; ++c, ++next)
                for (std::size_t m = 0; m < members_; ++m)
                    if (r >> m & 1) sets[m].push_back(Element{0, next});
        SetFamily fam;
        for (auto& s : sets) fam.add(FiniteSet(std::move(s)));
        return fam;
    }

    std::size_t universe_used() const {
        std::size_t n = 0;
        for (std::size_t r = 1; r <= regions_; ++r) n += region_size_[r];
        return n;
    }

private:
    bool visit(std::size_t region, std::size_t remaining) {
        if (region > regions_) return accept();
        for (std::size_t c = 0; c <= remaining; ++c) {
            bool fits = true;
            for (std::size_t m = 0; m < members_; ++m)
                if ((region >> m & 1) && member_size_[m] + c > max_member_) fits = false;
            // Every member's power set lies inside the ideal.
            if (!fits) break;
            region_size_[region] = c;
            for (std::size_t m = 0; m < members_; ++m)
                if (region >> m & 1) member_size_[m] += c;
            const bool found = visit(region + 1, remaining - c);
            for (std::size_t m = 0; m < members_; ++m)
                if (region >> m & 1) member_size_[m] -= c;
            if (found) return true;
        }
        region_size_[region] = 0;
        return false;
    }

    bool accept() const {
        // Members ordered by non-increasing size; other orders are relabelings.
        for (std::size_t m = 1; m < members_; ++m)
            if (member_size_[m] > member_size_[m - 1]) return false;
        std::int64_t total = 0;
        for (std::size_t j = 1; j <= regions_; ++j) {
            std::size_t inter = 0;
            for (std::size_t r = j; r <= regions_; ++r)
                if ((r & j) == j) inter += region_size_[r];
            const std::int64_t term = std::int64_t{1} << inter;
            total += (std::popcount(j) % 2 == 1) ? term : -term;
        }
        return total == k_;
    }

    std::int64_t k_;
    std::size_t members_;
    std::size_t universe_;
    std::size_t regions_;
    std::size_t max_member_ = 0;
    std::vector<std::size_t> region_size_;
    std::vector<std::size_t> member_size_;
};

}  // namespace detail

// Minimum member count over all families on at most max_universe elements
// whose ideal has exactly k sets. Throws BudgetExceeded when no family
// with at most max_members members exists within the universe limit.
inline AlphaRecord alpha_exhaustive(const Nat& k, std::size_t max_universe = kDefaultOracleUniverse,
                                    std::size_t max_members = kDefaultOracleMembers) {
    if (k.is_zero() || k > Nat(kOracleMaxK))
        throw DomainError("alpha_exhaustive supports 1 <= k <= " + std::to_string(kOracleMaxK) + ", got " + k.str());
    if (max_members == 0 || max_members > 6) throw DomainError("alpha_exhaustive supports 1..6 members");
    if (max_universe > 24) throw DomainError("alpha_exhaustive supports universes of at most 24 elements");
    const auto target = static_cast<std::int64_t>(k.to_u64());
    for (std::size_t a = 1; a <= max_members; ++a) {
        detail::AlphaSearch search(target, a, max_universe);
        if (search.run()) {
            AlphaRecord rec{k, a, search.witness(), search.universe_used()};
            if (ideal_count_ie(rec.witness) != k) throw InvariantViolation("oracle witness miscounted");
            return rec;
        }
    }
    throw BudgetExceeded("alpha search for k = " + k.str() + " found no witness with at most " +
                             std::to_string(max_members) + " members",
                         max_universe, max_universe);
}

}  // namespace idealforge

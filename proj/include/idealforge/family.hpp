#pragma once

// Set systems over structured elements and the ideals they generate.
//
// An element is a pair (group, index) written index_group; the prefix set
// [w]_g = {1_g, ..., w_g}. Distinct groups never share elements, which is
// how constructions keep their pieces disjoint.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idealforge/error.hpp"
#include "idealforge/numeric.hpp"

namespace idealforge {

struct Element {
    std::uint32_t group = 0;
    std::uint32_t index = 1;  // positive

    friend auto operator<=>(const Element&, const Element&) = default;
};

class FiniteSet {
public:
    FiniteSet() = default;
    FiniteSet(std::initializer_list<Element> elems) : FiniteSet(std::vector<Element>(elems)) {}

    explicit FiniteSet(std::vector<Element> elems) : elems_(std::move(elems)) {
        for (const auto& e : elems_)
            if (e.index == 0) throw DomainError("element index must be positive");
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    // [w]_group
    static FiniteSet prefix(std::uint32_t group, std::size_t w) {
        FiniteSet s;
        s.elems_.reserve(w);
        for (std::size_t i = 1; i <= w; ++i)
            s.elems_.push_back(Element{group, static_cast<std::uint32_t>(i)});
        return s;
    }

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    const std::vector<Element>& elements() const noexcept { return elems_; }

    bool contains(const Element& e) const {
        return std::binary_search(elems_.begin(), elems_.end(), e);
    }

    bool is_subset_of(const FiniteSet& other) const {
        return size() <= other.size() &&
               std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
    }

    std::size_t intersection_size(const FiniteSet& other) const {
        std::size_t n = 0;
        auto a = elems_.begin();
        auto b = other.elems_.begin();
        while (a != elems_.end() && b != other.elems_.end()) {
            if (*a < *b) ++a;
            else if (*b < *a) ++b;
            else { ++n; ++a; ++b; }
        }
        return n;
    }

    FiniteSet united(const FiniteSet& other) const {
        FiniteSet r;
        r.elems_.reserve(size() + other.size());
        std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                       std::back_inserter(r.elems_));
        return r;
    }

    FiniteSet intersected(const FiniteSet& other) const {
        FiniteSet r;
        std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(),
                              other.elems_.end(), std::back_inserter(r.elems_));
        return r;
    }

    // Union of sets known to be disjoint; overlap is a caller bug.
    FiniteSet disjoint_union(const FiniteSet& other) const {
        if (intersection_size(other) != 0)
            throw InvariantViolation("disjoint_union of overlapping sets");
        return united(other);
    }

    template <typename F>
    FiniteSet with_groups_mapped(F&& map_group) const {
        std::vector<Element> out;
        out.reserve(size());
        for (const auto& e : elems_) out.push_back(Element{map_group(e.group), e.index});
        return FiniteSet(std::move(out));
    }

    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

    // Canonical order: by size, then lexicographically by element.
    friend bool canonical_less(const FiniteSet& a, const FiniteSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elems_ < b.elems_;
    }

private:
    std::vector<Element> elems_;
};

class SetFamily {
public:
    SetFamily() = default;
    SetFamily(std::initializer_list<FiniteSet> members) : members_(members) {}
    explicit SetFamily(std::vector<FiniteSet> members) : members_(std::move(members)) {}

    const std::vector<FiniteSet>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    void add(FiniteSet s) { members_.push_back(std::move(s)); }

    FiniteSet universe() const {
        std::vector<Element> all;
        for (const auto& m : members_) all.insert(all.end(), m.begin(), m.end());
        return FiniteSet(std::move(all));
    }

    // Sorted, distinct groups that occur in some member.
    std::vector<std::uint32_t> groups() const {
        std::vector<std::uint32_t> g;
        for (const auto& m : members_)
            for (const auto& e : m) g.push_back(e.group);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        return g;
    }

    SetFamily canonical() const {
        SetFamily c = *this;
        std::sort(c.members_.begin(), c.members_.end(),
                  [](const FiniteSet& a, const FiniteSet& b) { return canonical_less(a, b); });
        return c;
    }

    // S + X: X adjoined to every member.
    SetFamily plus(const FiniteSet& x) const {
        SetFamily r;
        r.members_.reserve(size());
        for (const auto& m : members_) r.members_.push_back(m.disjoint_union(x));
        return r;
    }

    template <typename F>
    SetFamily with_groups_mapped(F&& map_group) const {
        SetFamily r;
        r.members_.reserve(size());
        for (const auto& m : members_) r.members_.push_back(m.with_groups_mapped(map_group));
        return r;
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    std::vector<FiniteSet> members_;
};

// Drops duplicates and every member contained in another member; the
// result is an antichain in canonical order generating the same ideal.
inline SetFamily normalize(const SetFamily& fam) {
    std::vector<FiniteSet> sorted = fam.canonical().members();
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<FiniteSet> kept;
    // Larger members cannot be contained in smaller ones, so each member only
    // needs checking against the ones after it.
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        bool absorbed = false;
        for (std::size_t j = i + 1; j < sorted.size() && !absorbed; ++j)
            absorbed = sorted[j].size() > sorted[i].size() && sorted[i].is_subset_of(sorted[j]);
        if (!absorbed) kept.push_back(std::move(sorted[i]));
    }
    return SetFamily(std::move(kept));
}

inline constexpr std::size_t kDefaultIeBudget = 30;

namespace detail {

// Fixed-width bitsets over a family's universe.
class UniverseBits {
public:
    explicit UniverseBits(const SetFamily& fam) : universe_(fam.universe()) {
        words_ = std::max<std::size_t>(1, (universe_.size() + 63) / 64);
        for (std::size_t i = 0; i < universe_.size(); ++i) position_.emplace(key(universe_.elements()[i]), i);
        bits_.assign(fam.size() * words_, 0);
        for (std::size_t m = 0; m < fam.size(); ++m)
            for (const auto& e : fam.members()[m]) {
                std::size_t p = position_.at(key(e));
                bits_[m * words_ + p / 64] |= std::uint64_t{1} << (p % 64);
            }
    }

    std::size_t words() const noexcept { return words_; }
    const std::uint64_t* member(std::size_t m) const { return bits_.data() + m * words_; }
    const FiniteSet& universe() const noexcept { return universe_; }

private:
    static std::uint64_t key(const Element& e) {
        return (std::uint64_t{e.group} << 32) | e.index;
    }

    FiniteSet universe_;
    std::size_t words_ = 1;
    std::unordered_map<std::uint64_t, std::size_t> position_;
    std::vector<std::uint64_t> bits_;
};

// Sum over exponents e of weight[e] * 2^e.
inline Nat weighted_power_sum(const std::vector<std::int64_t>& weight) {
    BigInt total;
    for (std::size_t e = 0; e < weight.size(); ++e)
        if (weight[e] != 0) total += BigInt(weight[e]) << static_cast<unsigned>(e);
    return Nat::from_bigint(std::move(total));
}

}  // namespace detail

// |ID(fam)| = sum over nonempty sub-collections J of (-1)^{|J|+1} 2^{|cap J|}.
// Sub-collections extending one with an empty intersection are skipped.
inline Nat ideal_count_ie(const SetFamily& fam, std::size_t budget = kDefaultIeBudget) {
    const std::size_t t = fam.size();
    if (t > budget || t >= 63)
        throw BudgetExceeded("inclusion-exclusion over " + std::to_string(t) + " members",
                             t, std::min<std::size_t>(budget, 62));
    if (t == 0) return Nat(0);

    detail::UniverseBits bits(fam);
    const std::size_t w = bits.words();
    // weight[e] accumulates the signed number of sub-collections whose
    // intersection has e elements.
    std::vector<std::int64_t> weight(bits.universe().size() + 1, 0);
    std::vector<std::uint64_t> stack((t + 1) * w, 0);

    auto visit = [&](auto& self, std::size_t start, std::size_t depth) -> void {
        const std::uint64_t* cur = stack.data() + depth * w;
        std::uint64_t* next = stack.data() + (depth + 1) * w;
        const std::int64_t sign = (depth % 2 == 0) ? 1 : -1;  // |J| = depth + 1
        for (std::size_t i = start; i < t; ++i) {
            const std::uint64_t* m = bits.member(i);
            std::size_t pop = 0;
            for (std::size_t k = 0; k < w; ++k) {
                next[k] = (depth == 0 ? m[k] : (cur[k] & m[k]));
                pop += static_cast<std::size_t>(std::popcount(next[k]));
            }
            if (pop == 0) {
                // Extensions of J keep the empty intersection; with r > 0
                // members left, the subtree's signs sum to (1 - 1)^r = 0.
                if (i + 1 == t) weight[0] += sign;
                continue;
            }
            weight[pop] += sign;
            if (i + 1 < t) self(self, i + 1, depth + 1);
        }
    };
    visit(visit, 0, 0);
    return detail::weighted_power_sum(weight);
}

// Lists every set of ID(fam) in canonical order. Throws once more than cap
// distinct sets are produced.
inline std::vector<FiniteSet> ideal_enumerate(const SetFamily& fam, std::size_t cap) {
    detail::UniverseBits bits(fam);
    const std::size_t w = bits.words();
    std::set<std::vector<std::uint64_t>> seen;
    for (std::size_t m = 0; m < fam.size(); ++m) {
        const std::size_t sz = fam.members()[m].size();
        if (sz >= 63 || (std::uint64_t{1} << sz) > cap)
            throw BudgetExceeded("ideal enumeration", sz >= 63 ? SIZE_MAX : (std::size_t{1} << sz), cap);
        std::vector<std::size_t> positions;
        for (std::size_t p = 0; p < bits.universe().size(); ++p)
            if (bits.member(m)[p / 64] >> (p % 64) & 1) positions.push_back(p);
        for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << sz); ++sub) {
            std::vector<std::uint64_t> s(w, 0);
            for (std::size_t b = 0; b < sz; ++b)
                if (sub >> b & 1) s[positions[b] / 64] |= std::uint64_t{1} << (positions[b] % 64);
            seen.insert(std::move(s));
            if (seen.size() > cap) throw BudgetExceeded("ideal enumeration", seen.size(), cap);
        }
    }
    std::vector<FiniteSet> out;
    out.reserve(seen.size());
    const auto& uni = bits.universe().elements();
    for (const auto& s : seen) {
        std::vector<Element> elems;
        for (std::size_t p = 0; p < uni.size(); ++p)
            if (s[p / 64] >> (p % 64) & 1) elems.push_back(uni[p]);
        out.emplace_back(std::move(elems));
    }
    std::sort(out.begin(), out.end(), [](const FiniteSet& a, const FiniteSet& b) { return canonical_less(a, b); });
    return out;
}

}  // namespace idealforge

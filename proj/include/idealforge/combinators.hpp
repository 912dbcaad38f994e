#pragma once

// Certified families and the two ways of composing them.
//
//   split(S, T): members of S and T share no element, so their ideals meet
//                only in the empty set and |ID(S u T)| = |ID(S)| + |ID(T)| - 1.
//   lift(S, t):  t fresh elements X are adjoined to every member, and
//                |ID(S + X)| = 2^t |ID(S)|.
//
// Each result carries a BuildTrace from which the count can be re-derived
// (see recount.hpp).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "idealforge/error.hpp"
#include "idealforge/family.hpp"
#include "idealforge/numeric.hpp"

namespace idealforge {

// Hands out element groups that no earlier caller received. Shared builders
// may call it concurrently.
class GroupAllocator {
public:
    explicit GroupAllocator(std::uint32_t first = 0) : next_(first) {}

    std::uint32_t fresh() { return fresh_block(1); }

    // First of n consecutive fresh groups.
    std::uint32_t fresh_block(std::uint32_t n) {
        return next_.fetch_add(n, std::memory_order_relaxed);
    }

    std::uint32_t peek() const { return next_.load(std::memory_order_relaxed); }

private:
    std::atomic<std::uint32_t> next_;
};

enum class LeafMethod {
    InclusionExclusion,  // count re-derived by ideal_count_ie
    PowerSet,            // a single member S, count 2^|S|
    ClosedForm,          // only valid as the union leaf of a SqrtBase node
};

struct TraceNode;
using TracePtr = std::shared_ptr<const TraceNode>;

struct LeafNode {
    SetFamily family;
    LeafMethod method = LeafMethod::InclusionExclusion;
};

struct SplitNode {
    TracePtr left;
    TracePtr right;  // the "k + 1" side
};

struct LiftNode {
    TracePtr child;
    std::size_t t = 0;
    std::uint32_t group = 0;  // X = [t]_group
};

// 2^{3q^2} + beta realized as split(split(union leaf, correction), t2 + 1).
// plan_groups[g] is the element group used for the plan's local group g.
struct SqrtBaseNode {
    std::size_t q = 0;
    Nat beta;
    std::vector<std::uint32_t> plan_groups;
    TracePtr body;
};

struct TraceNode {
    Nat count;  // claimed
    std::variant<LeafNode, SplitNode, LiftNode, SqrtBaseNode> node;
};

struct CertifiedFamily {
    SetFamily family;  // normalized, canonical order
    Nat count;
    TracePtr trace;

    std::size_t size() const noexcept { return family.size(); }
};

namespace detail {

inline void collect_groups(const TraceNode& n, std::vector<std::uint32_t>& out) {
    std::visit([&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafNode>) {
            auto g = node.family.groups();
            out.insert(out.end(), g.begin(), g.end());
        } else if constexpr (std::is_same_v<T, SplitNode>) {
            collect_groups(*node.left, out);
            collect_groups(*node.right, out);
        } else if constexpr (std::is_same_v<T, LiftNode>) {
            out.push_back(node.group);
            collect_groups(*node.child, out);
        } else {
            out.insert(out.end(), node.plan_groups.begin(), node.plan_groups.end());
            collect_groups(*node.body, out);
        }
    }, n.node);
}

inline std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool intersects(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return true;
    }
    return false;
}

inline SetFamily merge_canonical(const SetFamily& a, const SetFamily& b) {
    std::vector<FiniteSet> out;
    out.reserve(a.size() + b.size());
    std::merge(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
               std::back_inserter(out),
               [](const FiniteSet& x, const FiniteSet& y) { return canonical_less(x, y); });
    return SetFamily(std::move(out));
}

}  // namespace detail

// Every group referenced anywhere in the trace, sorted.
inline std::vector<std::uint32_t> trace_groups(const TraceNode& n) {
    std::vector<std::uint32_t> out;
    detail::collect_groups(n, out);
    return detail::sorted_unique(std::move(out));
}

inline TracePtr make_trace(Nat count, decltype(TraceNode::node) node) {
    return std::make_shared<const TraceNode>(TraceNode{std::move(count), std::move(node)});
}

using GroupMap = std::unordered_map<std::uint32_t, std::uint32_t>;

// Renames groups throughout a trace; groups absent from the map are kept.
inline TracePtr remap_groups(const TracePtr& n, const GroupMap& map) {
    auto f = [&](std::uint32_t g) {
        auto it = map.find(g);
        return it == map.end() ? g : it->second;
    };
    return std::visit([&](const auto& node) -> TracePtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafNode>) {
            return make_trace(n->count, LeafNode{node.family.with_groups_mapped(f), node.method});
        } else if constexpr (std::is_same_v<T, SplitNode>) {
            return make_trace(n->count, SplitNode{remap_groups(node.left, map), remap_groups(node.right, map)});
        } else if constexpr (std::is_same_v<T, LiftNode>) {
            return make_trace(n->count, LiftNode{remap_groups(node.child, map), node.t, f(node.group)});
        } else {
            std::vector<std::uint32_t> groups;
            for (auto g : node.plan_groups) groups.push_back(f(g));
            return make_trace(n->count, SqrtBaseNode{node.q, node.beta, std::move(groups),
                                                     remap_groups(node.body, map)});
        }
    }, n->node);
}

// Moves every group of `fam` onto fresh groups from `alloc`.
inline CertifiedFamily rehome(const CertifiedFamily& fam, GroupAllocator& alloc) {
    GroupMap map;
    for (auto g : trace_groups(*fam.trace)) map.emplace(g, alloc.fresh());
    auto f = [&](std::uint32_t g) { return map.at(g); };
    return CertifiedFamily{fam.family.with_groups_mapped(f).canonical(), fam.count,
                           remap_groups(fam.trace, map)};
}

// A leaf whose count is computed here by inclusion-exclusion.
inline CertifiedFamily certify_leaf(const SetFamily& fam, std::size_t ie_budget = kDefaultIeBudget) {
    SetFamily norm = normalize(fam);
    if (norm.empty()) throw DomainError("a certified family needs at least one member");
    Nat count = ideal_count_ie(norm, ie_budget);
    LeafMethod method = norm.size() == 1 ? LeafMethod::PowerSet : LeafMethod::InclusionExclusion;
    return CertifiedFamily{norm, count, make_trace(count, LeafNode{fam, method})};
}

// A leaf whose count the caller vouches for; recount decides whether to
// accept it.
inline CertifiedFamily assume_leaf(const SetFamily& fam, Nat count, LeafMethod method) {
    SetFamily norm = normalize(fam);
    return CertifiedFamily{norm, count, make_trace(count, LeafNode{fam, method})};
}

// |ID| of the result is a.count + b_plus_1.count - 1. If the two sides
// share a group, b_plus_1 is rehomed onto fresh groups first.
inline CertifiedFamily split(const CertifiedFamily& a, const CertifiedFamily& b_plus_1,
                             GroupAllocator& alloc) {
    if (b_plus_1.count < Nat(2))
        throw DomainError("split: right-hand family must have count >= 2, got " + b_plus_1.count.str());
    if (a.count.is_zero()) throw DomainError("split: left-hand family is empty");

    const CertifiedFamily* right = &b_plus_1;
    CertifiedFamily moved;
    if (detail::intersects(trace_groups(*a.trace), trace_groups(*b_plus_1.trace))) {
        moved = rehome(b_plus_1, alloc);
        right = &moved;
    }

    // Both sides are antichains on disjoint universes, so the only member
    // that can be absorbed is a lone empty set on the left ({∅}, count 1).
    SetFamily members = a.count == Nat(1) ? right->family : detail::merge_canonical(a.family, right->family);
    Nat count = a.count + right->count - Nat(1);
    return CertifiedFamily{std::move(members), count,
                           make_trace(count, SplitNode{a.trace, right->trace})};
}

inline CertifiedFamily lift(const CertifiedFamily& child, std::size_t t, GroupAllocator& alloc) {
    const std::uint32_t group = alloc.fresh();
    SetFamily members = child.family.plus(FiniteSet::prefix(group, t)).canonical();
    Nat count = Nat::pow2(t) * child.count;
    return CertifiedFamily{std::move(members), count,
                           make_trace(count, LiftNode{child.trace, t, group})};
}

}  // namespace idealforge

#pragma once

// Certificate checking for BuildTrace trees.
//
// recount() re-derives the count bottom-up using only the composition
// identities, and checks each node's side condition:
//   leaf      count re-derived by inclusion-exclusion (or 2^|S| for a
//             single member); closed-form leaves are only accepted as the
//             union leaf of a sqrt base node, against a regenerated plan
//   split     left and right use disjoint groups, right count >= 2
//   lift      the lifted group does not occur below
//   sqrt base body has the fixed split(split(union, correction), t2 + 1)
//             shape and every piece matches the plan for (q, beta)

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "idealforge/basecase_plan.hpp"
#include "idealforge/combinators.hpp"
#include "idealforge/error.hpp"
#include "idealforge/family.hpp"

namespace idealforge {

struct RecountOptions {
    std::size_t ie_budget = kDefaultIeBudget;
};

namespace detail {

struct Recounted {
    Nat count;
    std::vector<std::uint32_t> groups;
};

class Recounter {
public:
    explicit Recounter(RecountOptions opts) : opts_(opts) {}

    Recounted check(const TraceNode& n, const std::string& path) {
        Recounted r = std::visit([&](const auto& node) { return check_node(node, path); }, n.node);
        if (r.count != n.count)
            throw CertificateError(path, "claimed count " + n.count.str() + " but derived " + r.count.str());
        return r;
    }

private:
    Recounted check_node(const LeafNode& leaf, const std::string& path) {
        if (leaf.family.empty()) throw CertificateError(path, "leaf family has no members");
        Recounted r{Nat(0), leaf.family.groups()};
        if (leaf.method == LeafMethod::ClosedForm)
            throw CertificateError(path, "closed-form leaf outside a sqrt base node");
        const SetFamily norm = normalize(leaf.family);
        if (norm.size() <= opts_.ie_budget) {
            r.count = ideal_count_ie(norm, opts_.ie_budget);
        } else {
            throw CertificateError(path, "leaf with " + std::to_string(norm.size()) +
                                             " members exceeds the inclusion-exclusion budget");
        }
        return r;
    }

    Recounted check_node(const SplitNode& s, const std::string& path) {
        Recounted left = check(*s.left, path + "/split.left");
        Recounted right = check(*s.right, path + "/split.right");
        return combine_split(std::move(left), std::move(right), path);
    }

    Recounted check_node(const LiftNode& l, const std::string& path) {
        Recounted child = check(*l.child, path + "/lift.child");
        if (std::binary_search(child.groups.begin(), child.groups.end(), l.group))
            throw CertificateError(path, "lift group " + std::to_string(l.group) + " already occurs in the child");
        child.count = Nat::pow2(l.t) * child.count;
        child.groups.insert(std::lower_bound(child.groups.begin(), child.groups.end(), l.group), l.group);
        return child;
    }

    Recounted check_node(const SqrtBaseNode& b, const std::string& path) {
        BaseCasePlan plan;
        try {
            plan = make_base_case_plan(b.q, b.beta, b.plan_groups);
        } catch (const std::exception& e) {
            throw CertificateError(path, std::string("cannot rebuild base-case plan: ") + e.what());
        }

        const auto* outer = std::get_if<SplitNode>(&b.body->node);
        const auto* inner = outer ? std::get_if<SplitNode>(&outer->left->node) : nullptr;
        const auto* leaf = inner ? std::get_if<LeafNode>(&inner->left->node) : nullptr;
        if (!leaf || leaf->method != LeafMethod::ClosedForm)
            throw CertificateError(path, "sqrt base body is not split(split(closed-form leaf, _), _)");

        const std::string leaf_path = path + "/sqrt.union";
        if (normalize(leaf->family) != normalize(plan.family()))
            throw CertificateError(leaf_path, "union leaf differs from the plan for q=" + std::to_string(b.q) +
                                                  ", beta=" + b.beta.str());
        if (inner->left->count != plan.union_count)
            throw CertificateError(leaf_path, "union count " + inner->left->count.str() +
                                                  " differs from closed form " + plan.union_count.str());
        const SetFamily norm = normalize(leaf->family);
        if (norm.size() <= opts_.ie_budget && ideal_count_ie(norm, opts_.ie_budget) != plan.union_count)
            throw CertificateError(leaf_path, "closed form disagrees with inclusion-exclusion");
        Recounted uni{plan.union_count, leaf->family.groups()};
        for (auto g : b.plan_groups)
            uni.groups.push_back(g);
        uni.groups = sorted_unique(std::move(uni.groups));

        Recounted corr = check(*inner->right, path + "/sqrt.correction");
        if (corr.count != plan.correction)
            throw CertificateError(path, "correction " + corr.count.str() + " != " + plan.correction.str());
        Recounted t1 = combine_split(std::move(uni), std::move(corr), path + "/sqrt.t1");
        if (t1.count != plan.t1 || outer->left->count != t1.count)
            throw CertificateError(path, "t1 " + t1.count.str() + " != " + plan.t1.str());

        Recounted t2p1 = check(*outer->right, path + "/sqrt.t2_plus_one");
        if (t2p1.count != plan.t2 + Nat(1))
            throw CertificateError(path, "t2 + 1 piece " + t2p1.count.str() + " != " + (plan.t2 + Nat(1)).str());
        Recounted m = combine_split(std::move(t1), std::move(t2p1), path + "/sqrt.m");
        if (m.count != plan.target() || b.body->count != m.count)
            throw CertificateError(path, "base case count " + m.count.str() + " != 2^{3q^2} + beta");
        return m;
    }

    static Recounted combine_split(Recounted left, Recounted right, const std::string& path) {
        if (right.count < Nat(2))
            throw CertificateError(path, "split right side has count " + right.count.str() + " < 2");
        auto i = left.groups.begin();
        auto j = right.groups.begin();
        while (i != left.groups.end() && j != right.groups.end()) {
            if (*i < *j) ++i;
            else if (*j < *i) ++j;
            else throw CertificateError(path, "split sides share group " + std::to_string(*i));
        }
        Recounted out;
        out.count = left.count + right.count - Nat(1);
        out.groups.reserve(left.groups.size() + right.groups.size());
        std::merge(left.groups.begin(), left.groups.end(), right.groups.begin(), right.groups.end(),
                   std::back_inserter(out.groups));
        return out;
    }

    RecountOptions opts_;
};

}  // namespace detail

// Re-derives the certified count of a trace, or throws CertificateError
// naming the failing node.
inline Nat recount(const TraceNode& trace, RecountOptions opts = {}) {
    return detail::Recounter(opts).check(trace, "").count;
}

// The normalized family a trace describes.
inline SetFamily replay(const TraceNode& n) {
    return std::visit([&](const auto& node) -> SetFamily {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafNode>) {
            return normalize(node.family);
        } else if constexpr (std::is_same_v<T, SplitNode>) {
            SetFamily all = replay(*node.left);
            const SetFamily right = replay(*node.right);
            for (const auto& m : right.members()) all.add(m);
            return normalize(all);
        } else if constexpr (std::is_same_v<T, LiftNode>) {
            return replay(*node.child).plus(FiniteSet::prefix(node.group, node.t)).canonical();
        } else {
            return replay(*node.body);
        }
    }, n.node);
}

}  // namespace idealforge

#pragma once

// Monotone DNF/CNF views of set families, and exact DNF model counters.
//
// Variables are the universe elements in canonical (group, index) order,
// numbered from 1. A member S becomes the DNF term over U \ S: an
// assignment satisfies that term exactly when its false variables form a
// subset of S, so satisfying assignments correspond to sets in ID(fam).
// The same literal sets read as CNF clauses are falsified exactly when the
// true variables form a subset of S.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "idealforge/error.hpp"
#include "idealforge/family.hpp"
#include "idealforge/numeric.hpp"

namespace idealforge {

struct Literal {
    std::uint32_t var = 1;  // 1-based
    bool positive = true;

    int dimacs() const { return positive ? static_cast<int>(var) : -static_cast<int>(var); }

    static Literal from_dimacs(int v) {
        if (v == 0) throw DomainError("literal 0 is the DIMACS terminator");
        return Literal{static_cast<std::uint32_t>(std::abs(v)), v > 0};
    }

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

enum class FormKind { Dnf, Cnf };

// A DNF (terms) or CNF (clauses) over variables 1..num_vars. Each item is a
// sorted, duplicate-free literal list; items with both polarities of one
// variable are rejected.
template <FormKind Kind>
class NormalForm {
public:
    static constexpr FormKind kind = Kind;

    NormalForm() = default;

    NormalForm(std::size_t num_vars, std::vector<std::vector<Literal>> items)
        : num_vars_(num_vars), items_(std::move(items)) {
        for (auto& item : items_) {
            std::sort(item.begin(), item.end());
            item.erase(std::unique(item.begin(), item.end()), item.end());
            for (std::size_t i = 0; i < item.size(); ++i) {
                if (item[i].var == 0 || item[i].var > num_vars_)
                    throw DomainError("variable " + std::to_string(item[i].var) + " outside [1, " +
                                      std::to_string(num_vars_) + "]");
                if (i > 0 && item[i - 1].var == item[i].var)
                    throw DomainError("item contains both polarities of variable " + std::to_string(item[i].var));
            }
        }
    }

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::vector<std::vector<Literal>>& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }

    bool monotone() const {
        for (const auto& item : items_)
            for (const auto& l : item)
                if (!l.positive) return false;
        return true;
    }

    bool has_empty_item() const {
        return std::any_of(items_.begin(), items_.end(), [](const auto& i) { return i.empty(); });
    }

    // Items sorted lexicographically by DIMACS value.
    NormalForm canonical() const {
        NormalForm c = *this;
        std::sort(c.items_.begin(), c.items_.end(), [](const auto& a, const auto& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                [](Literal x, Literal y) { return x.dimacs() < y.dimacs(); });
        });
        return c;
    }

    friend bool operator==(const NormalForm&, const NormalForm&) = default;

private:
    std::size_t num_vars_ = 0;
    std::vector<std::vector<Literal>> items_;
};

using Dnf = NormalForm<FormKind::Dnf>;
using Cnf = NormalForm<FormKind::Cnf>;

// Variable i (1-based) is variable_order(fam)[i - 1].
inline std::vector<Element> variable_order(const SetFamily& fam) {
    return fam.universe().elements();
}

namespace detail {

inline std::vector<std::vector<Literal>> complement_items(const SetFamily& fam) {
    const auto order = variable_order(fam);
    std::vector<std::vector<Literal>> items;
    items.reserve(fam.size());
    for (const auto& s : fam.members()) {
        std::vector<Literal> item;
        for (std::size_t v = 0; v < order.size(); ++v)
            if (!s.contains(order[v])) item.push_back(Literal{static_cast<std::uint32_t>(v + 1), true});
        items.push_back(std::move(item));
    }
    return items;
}

}  // namespace detail

inline Dnf family_to_dnf(const SetFamily& fam) {
    return Dnf(fam.universe().size(), detail::complement_items(fam)).canonical();
}

inline Cnf family_to_cnf(const SetFamily& fam) {
    return Cnf(fam.universe().size(), detail::complement_items(fam)).canonical();
}

// Adds variable num_vars+1 positively to every item. For a DNF this
// conjoins the new variable, for a CNF it disjoins it into every clause;
// either way the DNF's satisfying count and the CNF's falsifying count are
// unchanged.
template <FormKind K>
NormalForm<K> pad(const NormalForm<K>& f) {
    const auto extra = static_cast<std::uint32_t>(f.num_vars() + 1);
    auto items = f.items();
    for (auto& item : items) item.push_back(Literal{extra, true});
    return NormalForm<K>(f.num_vars() + 1, std::move(items));
}

// DNF whose models are exactly the CNF's falsifying assignments.
inline Dnf negate(const Cnf& f) {
    auto items = f.items();
    for (auto& item : items)
        for (auto& l : item) l.positive = !l.positive;
    return Dnf(f.num_vars(), std::move(items));
}

// Inclusion-exclusion over terms: a conjunction of terms either contradicts
// itself (no models) or fixes some set of variables and leaves
// 2^{free} models.
inline Nat dnf_count(const Dnf& f, std::size_t budget = kDefaultIeBudget) {
    const std::size_t t = f.size();
    if (t > budget || t >= 63)
        throw BudgetExceeded("inclusion-exclusion over " + std::to_string(t) + " terms", t, std::min<std::size_t>(budget, 62));
    const std::size_t n = f.num_vars();
    std::vector<std::int64_t> weight(n + 1, 0);
    std::vector<int> value(n + 1, 0);  // 0 free, +1 true, -1 false
    std::vector<std::uint32_t> touched;
    touched.reserve(n);
    std::size_t fixed = 0;

    auto visit = [&](auto& self, std::size_t start, std::size_t depth) -> void {
        const std::int64_t sign = (depth % 2 == 0) ? 1 : -1;
        for (std::size_t i = start; i < t; ++i) {
            const std::size_t mark = touched.size();
            bool consistent = true;
            for (const auto& l : f.items()[i]) {
                const int want = l.positive ? 1 : -1;
                if (value[l.var] == 0) {
                    value[l.var] = want;
                    touched.push_back(l.var);
                    ++fixed;
                } else if (value[l.var] != want) {
                    consistent = false;
                    break;
                }
            }
            // A contradictory conjunction stays contradictory under every
            // extension, so its whole subtree contributes nothing.
            if (consistent) {
                weight[n - fixed] += sign;
                if (i + 1 < t) self(self, i + 1, depth + 1);
            }
            while (touched.size() > mark) {
                value[touched.back()] = 0;
                touched.pop_back();
                --fixed;
            }
        }
    };
    visit(visit, 0, 0);
    return detail::weighted_power_sum(weight);
}

inline constexpr std::size_t kDefaultBruteVars = 24;

namespace detail {

struct MaskItem {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
};

template <FormKind K>
std::vector<MaskItem> masks(const NormalForm<K>& f, std::size_t max_vars) {
    if (f.num_vars() > max_vars || f.num_vars() > 40)
        throw BudgetExceeded("brute-force enumeration over " + std::to_string(f.num_vars()) + " variables",
                             f.num_vars(), std::min<std::size_t>(max_vars, 40));
    std::vector<MaskItem> out;
    for (const auto& item : f.items()) {
        MaskItem m;
        for (const auto& l : item) (l.positive ? m.pos : m.neg) |= std::uint64_t{1} << (l.var - 1);
        out.push_back(m);
    }
    return out;
}

}  // namespace detail

// Satisfying assignments by enumerating all 2^num_vars of them.
inline Nat dnf_brute_count(const Dnf& f, std::size_t max_vars = kDefaultBruteVars) {
    const auto terms = detail::masks(f, max_vars);
    const std::uint64_t total = std::uint64_t{1} << f.num_vars();
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < total; ++a) {
        for (const auto& m : terms)
            if ((a & m.pos) == m.pos && (a & m.neg) == 0) { ++count; break; }
    }
    return Nat(count);
}

// Satisfying assignments of a CNF by enumeration.
inline Nat cnf_brute_count(const Cnf& f, std::size_t max_vars = kDefaultBruteVars) {
    const auto clauses = detail::masks(f, max_vars);
    const std::uint64_t total = std::uint64_t{1} << f.num_vars();
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < total; ++a) {
        bool sat = true;
        for (const auto& m : clauses)
            if ((a & m.pos) == 0 && (~a & m.neg) == 0) { sat = false; break; }
        count += sat ? 1 : 0;
    }
    return Nat(count);
}

inline Nat cnf_falsifying_count(const Cnf& f, std::size_t budget = kDefaultIeBudget) {
    return dnf_count(negate(f), budget);
}

}  // namespace idealforge

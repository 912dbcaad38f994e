#pragma once

// Serialization: family and trace JSON, formula exports (native JSON,
// DIMACS-style text, plain text) and the alpha table CSV.
//
// Family JSON:   {"members":[[[group,index],...],...]}
//                members in canonical order (size, then lexicographic),
//                elements sorted by (group, index); compact dump.
// Trace JSON:    node-tagged tree, keys in the order written below; counts
//                are decimal strings.
//   {"node":"leaf","count":"6","method":"inclusion-exclusion","family":{...}}
//   {"node":"split","count":"7","left":{...},"right":{...}}
//   {"node":"lift","count":"12","t":2,"group":4,"child":{...}}
//   {"node":"sqrt-base","count":"4101","q":2,"beta":"5","plan_groups":[...],"body":{...}}
// Formula JSON:  {"kind":"dnf","vars":n,"monotone":true,"terms":[[1,2],...],"exact_count":"k"}
//                (CNF uses "kind":"cnf" and "clauses").
// DIMACS:        "p dnf <vars> <terms>" (nonstandard) or "p cnf <vars> <clauses>",
//                0-terminated items, final line "c exact-count <k>".

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "idealforge/combinators.hpp"
#include "idealforge/error.hpp"
#include "idealforge/family.hpp"
#include "idealforge/formula.hpp"
#include "idealforge/numeric.hpp"
#include "idealforge/oracle.hpp"

namespace idealforge {

using Json = nlohmann::ordered_json;

inline Json to_json(const SetFamily& fam) {
    Json members = Json::array();
    const SetFamily sorted = fam.canonical();
    for (const auto& s : sorted.members()) {
        Json set = Json::array();
        for (const auto& e : s) set.push_back(Json::array({e.group, e.index}));
        members.push_back(std::move(set));
    }
    Json out;
    out["members"] = std::move(members);
    return out;
}

inline SetFamily family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("members") || !j["members"].is_array())
        throw DomainError("family JSON needs a \"members\" array");
    SetFamily fam;
    for (const auto& set : j["members"]) {
        std::vector<Element> elems;
        for (const auto& e : set) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
                throw DomainError("family JSON element must be [group, index] with non-negative integers");
            elems.push_back(Element{e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>()});
        }
        fam.add(FiniteSet(std::move(elems)));
    }
    return fam;
}

inline std::string dump_family(const SetFamily& fam) { return to_json(fam).dump(); }

namespace detail {

inline const char* method_name(LeafMethod m) {
    switch (m) {
        case LeafMethod::InclusionExclusion: return "inclusion-exclusion";
        case LeafMethod::PowerSet: return "power-set";
        case LeafMethod::ClosedForm: return "closed-form";
    }
    return "?";
}

inline LeafMethod method_from_name(const std::string& s) {
    if (s == "inclusion-exclusion") return LeafMethod::InclusionExclusion;
    if (s == "power-set") return LeafMethod::PowerSet;
    if (s == "closed-form") return LeafMethod::ClosedForm;
    throw DomainError("unknown leaf method '" + s + "'");
}

inline Nat nat_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw DomainError(std::string("trace JSON: missing decimal string \"") + key + "\"");
    return Nat::parse_decimal(j[key].get<std::string>());
}

}  // namespace detail

inline Json to_json(const TraceNode& n) {
    Json out;
    std::visit([&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafNode>) {
            out["node"] = "leaf";
            out["count"] = n.count.str();
            out["method"] = detail::method_name(node.method);
            out["family"] = to_json(node.family);
        } else if constexpr (std::is_same_v<T, SplitNode>) {
            out["node"] = "split";
            out["count"] = n.count.str();
            out["left"] = to_json(*node.left);
            out["right"] = to_json(*node.right);
        } else if constexpr (std::is_same_v<T, LiftNode>) {
            out["node"] = "lift";
            out["count"] = n.count.str();
            out["t"] = node.t;
            out["group"] = node.group;
            out["child"] = to_json(*node.child);
        } else {
            out["node"] = "sqrt-base";
            out["count"] = n.count.str();
            out["q"] = node.q;
            out["beta"] = node.beta.str();
            out["plan_groups"] = node.plan_groups;
            out["body"] = to_json(*node.body);
        }
    }, n.node);
    return out;
}

inline TracePtr trace_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("node")) throw DomainError("trace JSON node needs a \"node\" tag");
    const std::string tag = j["node"].get<std::string>();
    Nat count = detail::nat_field(j, "count");
    if (tag == "leaf")
        return make_trace(count, LeafNode{family_from_json(j.at("family")),
                                          detail::method_from_name(j.at("method").get<std::string>())});
    if (tag == "split")
        return make_trace(count, SplitNode{trace_from_json(j.at("left")), trace_from_json(j.at("right"))});
    if (tag == "lift")
        return make_trace(count, LiftNode{trace_from_json(j.at("child")), j.at("t").get<std::size_t>(),
                                          j.at("group").get<std::uint32_t>()});
    if (tag == "sqrt-base")
        return make_trace(count, SqrtBaseNode{j.at("q").get<std::size_t>(), detail::nat_field(j, "beta"),
                                              j.at("plan_groups").get<std::vector<std::uint32_t>>(),
                                              trace_from_json(j.at("body"))});
    throw DomainError("unknown trace node '" + tag + "'");
}

// ---------------------------------------------------------------- formulas

template <FormKind K>
constexpr const char* kind_name() { return K == FormKind::Dnf ? "dnf" : "cnf"; }

template <FormKind K>
constexpr const char* items_key() { return K == FormKind::Dnf ? "terms" : "clauses"; }

template <FormKind K>
Json to_json(const NormalForm<K>& f, const Nat& exact_count) {
    Json items = Json::array();
    const auto sorted = f.canonical();
    for (const auto& item : sorted.items()) {
        Json lits = Json::array();
        for (const auto& l : item) lits.push_back(l.dimacs());
        items.push_back(std::move(lits));
    }
    Json out;
    out["kind"] = kind_name<K>();
    out["vars"] = f.num_vars();
    out["monotone"] = f.monotone();
    out[items_key<K>()] = std::move(items);
    out["exact_count"] = exact_count.str();
    return out;
}

// Rejects empty terms/clauses: pad() first.
template <FormKind K>
std::string to_dimacs(const NormalForm<K>& f, const Nat& exact_count,
                      const std::vector<Element>* order = nullptr) {
    if (f.has_empty_item())
        throw DomainError(std::string("DIMACS export cannot express an empty ") +
                          (K == FormKind::Dnf ? "term" : "clause") + "; pad the formula");
    std::ostringstream os;
    os << "c idealforge monotone " << (K == FormKind::Dnf ? "DNF, count = satisfying" : "CNF, count = falsifying")
       << " assignments\n";
    if (order)
        for (std::size_t v = 0; v < order->size(); ++v)
            os << "c var " << v + 1 << " " << (*order)[v].index << "_" << (*order)[v].group << "\n";
    os << "p " << kind_name<K>() << " " << f.num_vars() << " " << f.size() << "\n";
    const auto sorted = f.canonical();
    for (const auto& item : sorted.items()) {
        for (const auto& l : item) os << l.dimacs() << " ";
        os << "0\n";
    }
    os << "c exact-count " << exact_count.str() << "\n";
    return os.str();
}

template <FormKind K>
std::string to_text(const NormalForm<K>& f, const Nat& exact_count) {
    const bool dnf = K == FormKind::Dnf;
    const char* inner = dnf ? " & " : " | ";
    const char* outer = dnf ? " | " : " & ";
    std::ostringstream os;
    if (f.size() == 0) os << (dnf ? "F" : "T");
    bool first_item = true;
    const auto sorted = f.canonical();
    for (const auto& item : sorted.items()) {
        if (!first_item) os << outer;
        first_item = false;
        if (item.empty()) { os << (dnf ? "T" : "F"); continue; }
        os << "(";
        for (std::size_t i = 0; i < item.size(); ++i) {
            if (i) os << inner;
            os << (item[i].positive ? "" : "!") << "x" << item[i].var;
        }
        os << ")";
    }
    os << "\nc exact-count " << exact_count.str() << "\n";
    return os.str();
}

// A parsed formula file: DNF or CNF plus the count it claims, if any.
struct FormulaFile {
    std::variant<Dnf, Cnf> formula;
    std::optional<Nat> claimed_count;
};

inline FormulaFile formula_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    std::optional<Nat> claimed;
    if (j.contains("exact_count")) claimed = Nat::parse_decimal(j["exact_count"].get<std::string>());
    auto read_items = [&](const char* key) {
        std::vector<std::vector<Literal>> items;
        for (const auto& item : j.at(key)) {
            std::vector<Literal> lits;
            for (const auto& v : item) lits.push_back(Literal::from_dimacs(v.get<int>()));
            items.push_back(std::move(lits));
        }
        return items;
    };
    const auto vars = j.at("vars").get<std::size_t>();
    if (kind == "dnf") return FormulaFile{Dnf(vars, read_items("terms")), claimed};
    if (kind == "cnf") return FormulaFile{Cnf(vars, read_items("clauses")), claimed};
    throw DomainError("formula JSON kind must be dnf or cnf");
}

inline FormulaFile formula_from_dimacs(std::istream& in) {
    std::optional<Nat> claimed;
    std::string kind;
    std::size_t vars = 0, declared = 0;
    std::vector<std::vector<Literal>> items;
    std::vector<Literal> current;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") {
            std::string key;
            if (ls >> key && key == "exact-count") {
                std::string value;
                ls >> value;
                claimed = Nat::parse_decimal(value);
            }
            continue;
        }
        if (first == "p") {
            if (header) throw DomainError("DIMACS: duplicate problem line");
            if (!(ls >> kind >> vars >> declared) || (kind != "dnf" && kind != "cnf"))
                throw DomainError("DIMACS: bad problem line '" + line + "'");
            header = true;
            continue;
        }
        if (!header) throw DomainError("DIMACS: literal before problem line");
        std::istringstream nums(line);
        long long v;
        while (nums >> v) {
            if (v == 0) { items.push_back(std::move(current)); current.clear(); }
            else current.push_back(Literal::from_dimacs(static_cast<int>(v)));
        }
        if (!nums.eof()) throw DomainError("DIMACS: bad token in '" + line + "'");
    }
    if (!header) throw DomainError("DIMACS: missing problem line");
    if (!current.empty()) throw DomainError("DIMACS: last item is not 0-terminated");
    if (items.size() != declared)
        throw DomainError("DIMACS: problem line declares " + std::to_string(declared) + " items, found " +
                          std::to_string(items.size()));
    if (kind == "dnf") return FormulaFile{Dnf(vars, std::move(items)), claimed};
    return FormulaFile{Cnf(vars, std::move(items)), claimed};
}

// ------------------------------------------------------------ alpha table

inline std::string alpha_csv_header() { return "k,alpha,lower_bound,block_bound,witness"; }

inline std::string alpha_csv_row(const AlphaRecord& r) {
    std::string witness = dump_family(r.witness);
    std::string quoted = "\"";
    for (char c : witness) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return r.k.str() + "," + std::to_string(r.alpha) + "," + std::to_string(lower_bound_terms(r.k)) + "," +
           std::to_string(block_count(r.k) + 1) + "," + quoted;
}

}  // namespace idealforge

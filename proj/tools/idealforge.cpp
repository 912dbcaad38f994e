// idealforge command-line tool. Every command prints one space-separated
// key=value summary line on stdout; artifacts go to files.
//
// Exit codes: 0 ok, 1 usage error, 2 certificate failure or count mismatch,
// 3 no verifier applicable within budgets.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idealforge/idealforge.hpp"

namespace fs = std::filesystem;
using namespace idealforge;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kMismatch = 2, kNoVerifier = 3 };

struct UsageError : Error {
    using Error::Error;
};

struct Config {
    std::string k_text;
    std::string strategy = "best";
    std::string format = "json";
    std::string kind = "dnf";
    std::optional<std::size_t> ie_budget;
    std::size_t brute_vars = kDefaultBruteVars;
    std::string out;
    std::string trace;
    std::string path;
    bool pad = false;
    std::size_t max_k = 0;
    std::size_t universe = kDefaultOracleUniverse;
    std::size_t members = kDefaultOracleMembers;
    std::vector<std::size_t> bits{64, 256, 1024};
    std::size_t samples = 5;
    std::uint64_t seed = 1;
};

// --ie-budget wins; otherwise IDEALFORGE_IE_BUDGET; otherwise the default.
std::size_t effective_ie_budget(const Config& cfg) {
    std::size_t b = kDefaultIeBudget;
    if (cfg.ie_budget) {
        b = *cfg.ie_budget;
    } else if (const char* env = std::getenv("IDEALFORGE_IE_BUDGET"); env && *env) {
        try {
            std::size_t used = 0;
            b = std::stoul(env, &used);
            if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("IDEALFORGE_IE_BUDGET is not a number: '") + env + "'");
        }
    }
    if (b == 0 || b > 62) throw UsageError("ie budget must be in [1, 62], got " + std::to_string(b));
    return b;
}

Nat parse_k(const Config& cfg) {
    if (cfg.k_text.empty()) throw UsageError("--k is required");
    Nat k = parse_nat_expression(cfg.k_text);
    if (k.is_zero())
        throw UsageError("k must be at least 1: no family of sets has an ideal with 0 members");
    return k;
}

Strategy parse_strategy(const std::string& s) {
    if (s == "block") return Strategy::Block;
    if (s == "sqrt") return Strategy::Sqrt;
    return Strategy::Best;
}

std::string bounds_fields(const Nat& k) {
    const UpperBounds ub = upper_bound_terms(k);
    std::ostringstream os;
    os << "bl=" << block_count(k) << " lower=" << lower_bound_terms(k) << " block_bound=" << ub.block_bound
       << " sqrt_bound=" << (ub.sqrt_bound ? std::to_string(*ub.sqrt_bound) : "na")
       << " active=" << (ub.sqrt_is_active() ? "sqrt" : "block");
    return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw UsageError("cannot write " + p.string());
    f << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw UsageError("cannot read " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_build(const Config& cfg) {
    const Nat k = parse_k(cfg);
    const std::size_t budget = effective_ie_budget(cfg);
    if (cfg.strategy == "sqrt" && k < Nat(3)) throw UsageError("the sqrt strategy needs k >= 3");
    const CertifiedFamily fam = build(k, parse_strategy(cfg.strategy));

    Json fj = to_json(fam.family);
    fj["count"] = fam.count.str();
    const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    write_file(dir / "family.json", fj.dump() + "\n");
    write_file(dir / "trace.json", to_json(*fam.trace).dump() + "\n");

    std::string status = "ok";
    int code = kOk;
    try {
        const Nat re = recount(*fam.trace, RecountOptions{budget});
        if (re != k) throw CertificateError("", "recount gave " + re.str());
    } catch (const CertificateError& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        status = "certificate-failure";
        code = kMismatch;
    }
    std::cout << "k=" << k << " strategy=" << cfg.strategy << " members=" << fam.size() << " "
              << bounds_fields(k) << " out=" << dir.string() << " status=" << status << "\n";
    return code;
}

struct Verdict {
    std::string name;
    Nat count;
};

// Counts a formula's models (DNF) or falsifying assignments (CNF).
std::vector<Verdict> verify_formula(const FormulaFile& ff, std::size_t budget, std::size_t brute_vars) {
    std::vector<Verdict> out;
    std::visit([&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        const bool ie_ok = f.size() <= budget;
        const bool brute_ok = f.num_vars() <= brute_vars && f.num_vars() <= 40;
        if constexpr (std::is_same_v<F, Dnf>) {
            if (ie_ok) out.push_back({"ie", dnf_count(f, budget)});
            if (brute_ok) out.push_back({"brute", dnf_brute_count(f, brute_vars)});
        } else {
            if (ie_ok) out.push_back({"ie", cnf_falsifying_count(f, budget)});
            if (brute_ok) out.push_back({"brute", Nat::pow2(f.num_vars()) - cnf_brute_count(f, brute_vars)});
        }
    }, ff.formula);
    return out;
}

int cmd_verify(const Config& cfg) {
    const std::size_t budget = effective_ie_budget(cfg);
    fs::path path(cfg.path);
    fs::path trace_path = cfg.trace;
    if (fs::is_directory(path)) {
        if (trace_path.empty() && fs::exists(path / "trace.json")) trace_path = path / "trace.json";
        path = path / "family.json";
    }
    const std::string text = read_file(path);

    std::optional<Nat> claimed;
    std::optional<SetFamily> family;
    std::optional<FormulaFile> formula;
    TracePtr trace;

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const Json j = Json::parse(text);
        if (j.contains("members")) {
            family = family_from_json(j);
            if (j.contains("count")) claimed = Nat::parse_decimal(j["count"].get<std::string>());
        } else if (j.contains("node")) {
            trace = trace_from_json(j);
        } else if (j.contains("kind")) {
            formula = formula_from_json(j);
            claimed = formula->claimed_count;
        } else {
            throw UsageError(path.string() + ": unrecognized JSON document");
        }
    } else {
        std::istringstream in(text);
        formula = formula_from_dimacs(in);
        claimed = formula->claimed_count;
    }
    if (!trace_path.empty()) trace = trace_from_json(Json::parse(read_file(trace_path)));
    if (trace && !claimed) claimed = trace->count;

    std::vector<Verdict> verdicts;
    try {
        if (trace) {
            verdicts.push_back({"recount", recount(*trace, RecountOptions{budget})});
            const SetFamily replayed = replay(*trace);
            if (family && normalize(*family) != replayed)
                throw CertificateError("", "family does not match the family the trace describes");
            if (!family) family = replayed;
        }
    } catch (const CertificateError& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        std::cout << "verify path=" << path.string() << " status=certificate-failure\n";
        return kMismatch;
    }
    if (family) {
        const SetFamily norm = normalize(*family);
        if (norm.size() <= budget) verdicts.push_back({"ie", ideal_count_ie(norm, budget)});
        const Dnf dnf = family_to_dnf(norm);
        if (dnf.num_vars() <= cfg.brute_vars && dnf.num_vars() <= 40)
            verdicts.push_back({"brute", dnf_brute_count(dnf, cfg.brute_vars)});
    }
    if (formula) {
        auto more = verify_formula(*formula, budget, cfg.brute_vars);
        verdicts.insert(verdicts.end(), more.begin(), more.end());
    }

    std::string names, counts;
    bool agree = true;
    const Nat reference = claimed ? *claimed : (verdicts.empty() ? Nat(0) : verdicts.front().count);
    for (const auto& v : verdicts) {
        names += (names.empty() ? "" : ",") + v.name;
        counts += (counts.empty() ? "" : ",") + v.count.str();
        if (v.count != reference) agree = false;
    }
    std::cout << "verify path=" << path.string() << " claimed=" << (claimed ? claimed->str() : "none")
              << " verifiers=" << (names.empty() ? "none" : names) << " counts=" << (counts.empty() ? "none" : counts);
    if (verdicts.empty()) {
        std::cout << " status=no-verifier\n";
        return kNoVerifier;
    }
    if (!agree) {
        std::cout << " status=mismatch\n";
        return kMismatch;
    }
    std::cout << " status=ok\n";
    return kOk;
}

int cmd_bounds(const Config& cfg) {
    const Nat k = parse_k(cfg);
    std::string alpha = "na";
    if (k <= Nat(kOracleMaxK)) {
        try {
            alpha = std::to_string(alpha_exhaustive(k, cfg.universe, cfg.members).alpha);
        } catch (const BudgetExceeded&) {
            alpha = "unknown";
        }
    }
    std::cout << "k=" << k << " " << bounds_fields(k) << " alpha=" << alpha << "\n";
    return kOk;
}

int cmd_emit(const Config& cfg) {
    const Nat k = parse_k(cfg);
    if (cfg.strategy == "sqrt" && k < Nat(3)) throw UsageError("the sqrt strategy needs k >= 3");
    const CertifiedFamily fam = build(k, parse_strategy(cfg.strategy));
    const auto order = variable_order(fam.family);

    auto render = [&](auto formula) -> std::string {
        if (cfg.pad) formula = pad(formula);
        if (cfg.format == "json") return to_json(formula, fam.count).dump() + "\n";
        if (cfg.format == "text") return to_text(formula, fam.count);
        if (formula.has_empty_item())
            throw UsageError("DIMACS cannot express the empty term of this formula; rerun with --pad");
        return to_dimacs(formula, fam.count, &order);
    };
    const std::string body = cfg.kind == "cnf" ? render(family_to_cnf(fam.family)) : render(family_to_dnf(fam.family));
    const std::size_t vars = order.size() + (cfg.pad ? 1 : 0);

    std::ostream& summary = cfg.out.empty() || cfg.out == "-" ? std::cerr : std::cout;
    if (cfg.out.empty() || cfg.out == "-") std::cout << body;
    else write_file(cfg.out, body);
    summary << "k=" << k << " kind=" << cfg.kind << " format=" << cfg.format << " vars=" << vars
            << " items=" << fam.size() << " exact_count=" << fam.count << " status=ok\n";
    return kOk;
}

int cmd_oracle(const Config& cfg) {
    std::vector<Nat> ks;
    if (!cfg.k_text.empty()) ks.push_back(parse_k(cfg));
    for (std::size_t k = 1; k <= cfg.max_k; ++k) ks.emplace_back(k);
    if (ks.empty()) throw UsageError("oracle needs --k or --max-k");

    std::ostringstream csv;
    csv << alpha_csv_header() << "\n";
    std::size_t found = 0, missing = 0;
    for (const auto& k : ks) {
        try {
            csv << alpha_csv_row(alpha_exhaustive(k, cfg.universe, cfg.members)) << "\n";
            ++found;
        } catch (const BudgetExceeded& e) {
            std::cerr << e.what() << "\n";
            ++missing;
        }
    }
    if (cfg.out.empty() || cfg.out == "-") std::cout << csv.str();
    else write_file(cfg.out, csv.str());
    std::ostream& summary = cfg.out.empty() || cfg.out == "-" ? std::cerr : std::cout;
    summary << "oracle rows=" << found << " not_found=" << missing << " universe=" << cfg.universe
            << " members=" << cfg.members << " status=ok\n";
    return kOk;
}

int cmd_bench(const Config& cfg) {
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t bits : cfg.bits) {
        if (bits == 0) throw UsageError("--bits must be positive");
        std::vector<Nat> ks;
        for (std::size_t i = 0; i < cfg.samples; ++i) ks.push_back(random_nat(bits, rng));
        for (const char* name : {"block", "sqrt", "best"}) {
            std::size_t members = 0;
            const auto t0 = std::chrono::steady_clock::now();
            for (const auto& k : ks) {
                if (k < Nat(3) && std::string(name) == "sqrt") continue;
                members += build(k, parse_strategy(name)).size();
            }
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            std::cout << "bench bits=" << bits << " strategy=" << name << " samples=" << ks.size()
                      << " mean_members=" << static_cast<double>(members) / static_cast<double>(ks.size())
                      << " ms=" << ms << "\n";
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"idealforge: set families, monotone DNF/CNF with exactly k models"};
    app.require_subcommand(1);
    Config cfg;

    const std::vector<std::string> strategies{"block", "sqrt", "best"};
    auto add_k = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--k", cfg.k_text, "target count: decimal, 0xHEX, 2^a, 2^a+b or 2^a-b");
        if (required) opt->required();
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--ie-budget", cfg.ie_budget,
                        "max members/terms for inclusion-exclusion (env IDEALFORGE_IE_BUDGET)");
    };

    auto* build_cmd = app.add_subcommand("build", "construct a certified family; writes family.json and trace.json");
    add_k(build_cmd, true);
    build_cmd->add_option("--strategy", cfg.strategy)->check(CLI::IsMember(strategies));
    build_cmd->add_option("--out", cfg.out, "output directory (default .)");
    add_budget(build_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "re-check a family, trace, formula JSON or DIMACS file");
    verify_cmd->add_option("path", cfg.path, "file, or a build output directory")->required();
    verify_cmd->add_option("--trace", cfg.trace, "trace JSON for the family");
    verify_cmd->add_option("--brute-vars", cfg.brute_vars, "max variables for brute-force enumeration");
    add_budget(verify_cmd);

    auto* bounds_cmd = app.add_subcommand("bounds", "report bl(k), the lower bound, both upper bounds and alpha");
    add_k(bounds_cmd, true);
    bounds_cmd->add_option("--universe", cfg.universe, "oracle universe size");
    bounds_cmd->add_option("--members", cfg.members, "oracle member limit");

    auto* emit_cmd = app.add_subcommand("emit", "write the monotone DNF or CNF for k");
    add_k(emit_cmd, true);
    emit_cmd->add_option("--strategy", cfg.strategy)->check(CLI::IsMember(strategies));
    emit_cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "dimacs", "text"}));
    emit_cmd->add_option("--kind", cfg.kind, "dnf: k satisfying; cnf: k falsifying")->check(CLI::IsMember({"dnf", "cnf"}));
    emit_cmd->add_flag("--pad", cfg.pad, "add one variable to every item (count unchanged)");
    emit_cmd->add_option("--out", cfg.out, "output file (default stdout; summary then goes to stderr)");

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive alpha(k) table as CSV");
    add_k(oracle_cmd, false);
    oracle_cmd->add_option("--max-k", cfg.max_k, "tabulate k = 1..max-k")->check(CLI::Range(std::size_t{1}, kOracleMaxK));
    oracle_cmd->add_option("--universe", cfg.universe);
    oracle_cmd->add_option("--members", cfg.members);
    oracle_cmd->add_option("--out", cfg.out, "CSV file (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "time the constructions on random k");
    bench_cmd->add_option("--bits", cfg.bits, "bit lengths of k");
    bench_cmd->add_option("--samples", cfg.samples);
    bench_cmd->add_option("--seed", cfg.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*build_cmd) return cmd_build(cfg);
        if (*verify_cmd) return cmd_verify(cfg);
        if (*bounds_cmd) return cmd_bounds(cfg);
        if (*emit_cmd) return cmd_emit(cfg);
        if (*oracle_cmd) return cmd_oracle(cfg);
        if (*bench_cmd) return cmd_bench(cfg);
    } catch (const CertificateError& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return kMismatch;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoVerifier;
    }
    return kUsage;
}

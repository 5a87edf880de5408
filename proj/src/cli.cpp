#include "propel/cli.hpp"

#include "propel/affinegroups.hpp"
#include "propel/hammingkit.hpp"
#include "propel/mollard.hpp"
#include "propel/textio.hpp"
#include "propel/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace propel::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

/// Usage-level failure: bad parameters, unreadable or malformed inputs.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kCheckOrder = {"group-premises", "distension", "perfect",    "rank-equivalence",
                                              "basis-audit",    "additivity", "certificate"};

struct RunConfig {
    unsigned q = 0;
    unsigned r = 0;
    std::optional<unsigned> i;
    std::string tau = "builtin:identity";
    std::string group_path;
    std::string cert_path;
    std::string out_dir = ".";
    std::string checks;
    std::uint64_t max_space_cells = kMaxSpaceCells;
    std::uint64_t max_codewords = kMaxCodewords;
};

struct ResolvedTau {
    PermTable tau;
    std::string label;
    std::optional<RegularSubgroup> group;
};

FieldContext checked_field(unsigned q) {
    if (!is_prime(q)) throw UsageError("q must be prime (got " + std::to_string(q) + ")");
    if (q >= 256) throw UsageError("q must be below 256");
    return FieldContext(q);
}

template <typename T, typename Read>
T load_file(const std::string& path, Read read) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    std::istringstream in(text);
    try {
        return read(in);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

ResolvedTau resolve_tau(const RunConfig& cfg) {
    const FieldContext field = checked_field(cfg.q);
    if (cfg.r == 0) throw UsageError("r must be at least 1");

    if (cfg.tau == "builtin:identity") {
        return {PermTable::identity(field, cfg.r), cfg.tau, translation_group(cfg.q, cfg.r)};
    }
    if (cfg.tau == "builtin:example1") {
        if (cfg.q < 3) throw UsageError("builtin:example1 requires q >= 3");
        if (cfg.r != 2) throw UsageError("builtin:example1 acts on F_q^2; use --r 2 or builtin:series");
        return {example1_tau(cfg.q), cfg.tau, example1_group(cfg.q)};
    }
    if (cfg.tau == "builtin:series") {
        if (!cfg.i) throw UsageError("builtin:series needs --i");
        if (cfg.q < 3) throw UsageError("series requires q >= 3");
        if (cfg.r < 2 || 2 * *cfg.i > cfg.r) throw UsageError("series needs r >= 2 and 0 <= i <= floor(r/2)");
        const unsigned i = *cfg.i;
        std::optional<RegularSubgroup> group;
        for (unsigned k = 0; k < i; ++k) {
            group = group ? direct_product(*group, example1_group(cfg.q)) : example1_group(cfg.q);
        }
        if (cfg.r > 2 * i) {
            const RegularSubgroup rest = translation_group(cfg.q, cfg.r - 2 * i);
            group = group ? direct_product(*group, rest) : rest;
        }
        return {series_tau(cfg.q, cfg.r, i), cfg.tau + ":i=" + std::to_string(i), std::move(group)};
    }
    if (cfg.tau.rfind("builtin:", 0) == 0) throw UsageError("unknown builtin permutation '" + cfg.tau + "'");

    PermTable tau = load_file<PermTable>(cfg.tau, [](std::istream& in) { return read_perm(in); });
    if (tau.q() != cfg.q || tau.r() != cfg.r) {
        throw UsageError(cfg.tau + ": permutation is over F_" + std::to_string(tau.q()) + "^" + std::to_string(tau.r()) +
                         ", expected F_" + std::to_string(cfg.q) + "^" + std::to_string(cfg.r));
    }
    std::optional<RegularSubgroup> group;
    if (!cfg.group_path.empty()) {
        group = load_file<RegularSubgroup>(cfg.group_path, [](std::istream& in) { return read_subgroup(in); });
        if (group->q() != cfg.q || group->r() != cfg.r) throw UsageError(cfg.group_path + ": subgroup dimensions differ");
    }
    return {std::move(tau), cfg.tau, std::move(group)};
}

void write_text_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    body(out);
    out.flush();
    if (!out) throw UsageError("write failed for '" + path.string() + "'");
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create directory '" + dir + "': " + ec.message());
}

// ---------------------------------------------------------------------------

int cmd_matrices(const RunConfig& cfg, std::ostream& out) {
    checked_field(cfg.q);
    HammingPair hp = [&] {
        try {
            return build_hamming_pair(cfg.q, cfg.r);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    ensure_dir(cfg.out_dir);
    const std::vector<std::pair<std::string, FqMatrix>> files = {
        {"H_C.txt", hp.h_c}, {"H_prime.txt", hp.h_prime}, {"H_D.txt", hp.h_d}, {"stacked.txt", build_stacked_parity(hp)}};
    for (const auto& [name, m] : files) {
        const fs::path path = fs::path(cfg.out_dir) / name;
        write_text_file(path, [&](std::ostream& f) { write_matrix(f, m); });
        out << path.string() << ' ' << m.rows() << 'x' << m.cols() << '\n';
    }
    return kExitPass;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
    ResolvedTau rt = resolve_tau(cfg);
    const CodeHandle code(build_hamming_pair(cfg.q, cfg.r), rt.tau);
    ensure_dir(cfg.out_dir);

    ordered_json summary;
    summary["q"] = cfg.q;
    summary["r"] = cfg.r;
    summary["tau"] = rt.label;
    summary["N"] = code.length();
    summary["codewords"] = power_count(cfg.q, static_cast<unsigned>(code.length()) - cfg.r - 1);
    summary["distension"] = distension(code.hamming(), code.tau());
    summary["rank_closed_form"] = rank_closed_form(code);

    const fs::path words_path = fs::path(cfg.out_dir) / "codewords.txt";
    if (code.size() > cfg.max_codewords) {
        summary["codewords_written"] = false;
        summary["reason"] = "infeasible: codeword count exceeds --max-codewords " + std::to_string(cfg.max_codewords);
    } else if (cfg.q > 9) {
        summary["codewords_written"] = false;
        summary["reason"] = "codeword file format needs q <= 9";
    } else {
        write_text_file(words_path, [&](std::ostream& f) { write_codewords(f, code, rt.label, cfg.max_codewords); });
        summary["codewords_written"] = true;
        summary["codeword_file"] = words_path.string();
    }

    const std::string text = summary.dump();
    write_text_file(fs::path(cfg.out_dir) / "summary.json", [&](std::ostream& f) { f << text << '\n'; });
    out << text << '\n';
    return kExitPass;
}

std::vector<std::string> requested_checks(const std::string& list) {
    if (list.empty() || list == "all") return kCheckOrder;
    std::vector<std::string> wanted;
    std::istringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (std::find(kCheckOrder.begin(), kCheckOrder.end(), name) == kCheckOrder.end()) {
            throw UsageError("unknown check '" + name + "'");
        }
        wanted.push_back(name);
    }
    std::vector<std::string> ordered;
    for (const auto& c : kCheckOrder) {
        if (std::find(wanted.begin(), wanted.end(), c) != wanted.end()) ordered.push_back(c);
    }
    return ordered;
}

Report skipped(const std::string& check, const std::string& reason) {
    Report rep{check, Outcome::skipped, {}};
    rep.details["reason"] = reason;
    return rep;
}

Report run_group_premises(const ResolvedTau& rt) {
    if (!rt.group) return skipped("group-premises", "no regular subgroup supplied (use --group)");
    if (rt.group->order() > kMaxVerifiedOrder) return skipped("group-premises", "budget: q^r exceeds 2^10");
    Report rep{"group-premises", Outcome::pass, {}};
    const VerifyResult regular = verify_regular_subgroup(*rt.group);
    rep.details["regular_subgroup"] = regular.ok;
    if (!regular) rep.details["regular_diagnostic"] = regular.diagnostic;
    const VerifyResult automorphism = verify_automorphism(*rt.group, rt.tau);
    rep.details["automorphism"] = automorphism.ok;
    if (!automorphism) rep.details["automorphism_diagnostic"] = automorphism.diagnostic;
    rep.details["order"] = rt.group->order();
    if (!regular || !automorphism) rep.result = Outcome::fail;
    return rep;
}

Report run_distension(const CodeHandle& code) {
    const std::size_t stacked = distension(code.hamming(), code.tau());
    const std::size_t oracle = distension_oracle(code.hamming(), code.tau());
    Report rep{"distension", stacked == oracle ? Outcome::pass : Outcome::fail, {}};
    rep.details["via_stacked_rank"] = stacked;
    rep.details["via_intersection"] = oracle;
    return rep;
}

Report run_rank_equivalence(const CodeHandle& code, std::uint64_t max_codewords) {
    if (code.size() > max_codewords) return skipped("rank-equivalence", "budget: enumeration exceeds --max-codewords");
    const std::size_t eliminated = rank_by_elimination(code, max_codewords);
    const std::size_t closed = rank_closed_form(code);
    Report rep{"rank-equivalence", eliminated == closed ? Outcome::pass : Outcome::fail, {}};
    rep.details["rank_by_elimination"] = eliminated;
    rep.details["rank_closed_form"] = closed;
    rep.details["codewords"] = code.size();
    return rep;
}

Report run_additivity(const PermTable& tau) {
    for (unsigned r1 = 1; r1 < tau.r(); ++r1) {
        if (auto parts = split_perm(tau, r1)) {
            Report rep = check_additivity(parts->first, parts->second);
            rep.details["split_at"] = r1;
            return rep;
        }
    }
    return skipped("additivity", "permutation does not split into blocks");
}

Report run_certificate(const CodeHandle& code, const RunConfig& cfg, const ResolvedTau& rt) {
    if (!cfg.cert_path.empty()) {
        if (code.size() > cfg.max_codewords) return skipped("certificate", "budget: enumeration exceeds --max-codewords");
        const PropelinearCertificate cert = load_file<PropelinearCertificate>(
            cfg.cert_path, [&](std::istream& in) { return read_certificate(in, cfg.q); });
        Report rep = check_propelinear_certificate(code, cert);
        rep.details["source"] = cfg.cert_path;
        return rep;
    }
    if (rt.tau.size() > kMaxVerifiedOrder) return skipped("certificate", "budget: q^r exceeds 2^10");
    if (!verify_automorphism(translation_group(cfg.q, cfg.r), rt.tau)) {
        return skipped("certificate", "no certificate supplied and the code is not linear (use --cert)");
    }
    if (code.size() > (std::uint64_t{1} << 16) || code.size() > cfg.max_codewords) {
        return skipped("certificate", "budget: translation certificate too large to materialize");
    }
    Report rep = check_propelinear_certificate(code, translation_certificate(code));
    rep.details["source"] = "translation";
    return rep;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const std::vector<std::string> checks = requested_checks(cfg.checks);
    ResolvedTau rt = resolve_tau(cfg);
    const CodeHandle code(build_hamming_pair(cfg.q, cfg.r), rt.tau);

    ordered_json params;
    params["q"] = cfg.q;
    params["r"] = cfg.r;
    params["tau"] = rt.label;

    bool any_failed = false;
    for (const std::string& check : checks) {
        Report rep;
        if (check == "group-premises") rep = run_group_premises(rt);
        else if (check == "distension") rep = run_distension(code);
        else if (check == "perfect") rep = check_perfect(code, cfg.max_space_cells);
        else if (check == "rank-equivalence") rep = run_rank_equivalence(code, cfg.max_codewords);
        else if (check == "basis-audit") rep = audit_rank_basis(code, cfg.max_codewords);
        else if (check == "additivity") rep = run_additivity(rt.tau);
        else rep = run_certificate(code, cfg, rt);

        ordered_json line;
        line["check"] = check;
        line["params"] = params;
        line["result"] = to_string(rep.result);
        line["details"] = rep.details;
        out << line.dump() << '\n';
        any_failed = any_failed || rep.failed();
    }
    return any_failed ? kExitCheckFailed : kExitPass;
}

int cmd_series(const RunConfig& cfg, std::ostream& out) {
    checked_field(cfg.q);
    if (cfg.q < 3) throw UsageError("series requires q >= 3");
    if (cfg.r < 2) throw UsageError("series requires r >= 2");
    const HammingPair hp = [&] {
        try {
            return build_hamming_pair(cfg.q, cfg.r);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    const std::size_t n_total = static_cast<std::size_t>(hp.full_length());
    const std::size_t base = n_total - cfg.r - 1;

    out << "# q=" << cfg.q << " r=" << cfg.r << " N=" << n_total << '\n';
    out << std::left << std::setw(4) << "i" << std::setw(12) << "distension" << std::setw(10) << "expected"
        << std::setw(8) << "rank" << std::setw(10) << "expected" << "status\n";
    bool all_agree = true;
    for (unsigned i = 0; 2 * i <= cfg.r; ++i) {
        const std::size_t l = distension(hp, series_tau(cfg.q, cfg.r, i));
        const std::size_t rank = base + l;
        const bool agrees = l == 2 * i;
        all_agree = all_agree && agrees;
        out << std::setw(4) << i << std::setw(12) << l << std::setw(10) << 2 * i << std::setw(8) << rank
            << std::setw(10) << base + 2 * i << (agrees ? "agrees" : "DISAGREES") << '\n';
    }
    return all_agree ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perfect codes from permutations of F_q^r: construction and verification"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_qr = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "prime field size")->required();
        sub->add_option("--r", cfg.r, "dimension r of F_q^r")->required();
    };
    auto add_tau = [&](CLI::App* sub) {
        sub->add_option("--tau", cfg.tau, "builtin:identity | builtin:example1 | builtin:series | <file>");
        sub->add_option("--i", cfg.i, "series index for builtin:series");
        sub->add_option("--group", cfg.group_path, "regular subgroup file for the group-premises check");
    };
    auto add_budgets = [&](CLI::App* sub) {
        sub->add_option("--max-space-cells", cfg.max_space_cells, "occupancy budget for the perfection check");
        sub->add_option("--max-codewords", cfg.max_codewords, "enumeration budget");
    };

    CLI::App* matrices = app.add_subcommand("matrices", "write H_C, H', H_D and the stacked parity matrix");
    add_qr(matrices);
    matrices->add_option("--out", cfg.out_dir, "output directory");

    CLI::App* build = app.add_subcommand("build", "enumerate S_tau and write a summary");
    add_qr(build);
    add_tau(build);
    add_budgets(build);
    build->add_option("--out", cfg.out_dir, "output directory");

    CLI::App* verify = app.add_subcommand("verify", "run verification checks, one JSON report per line");
    add_qr(verify);
    add_tau(verify);
    add_budgets(verify);
    verify->add_option("--checks", cfg.checks, "comma-separated subset of checks (default: all)");
    verify->add_option("--cert", cfg.cert_path, "propelinear certificate (JSON)");

    CLI::App* series = app.add_subcommand("series", "distension and rank for every series index i");
    add_qr(series);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*matrices) return cmd_matrices(cfg, out);
        if (*build) return cmd_build(cfg, out);
        if (*verify) return cmd_verify(cfg, out);
        return cmd_series(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace propel::cli

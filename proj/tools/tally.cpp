// Command-line front end: winner computation, axiom checks, counterexample
// search, refinement verification, reference reproductions, and witness
// replay.

#include <iostream>

#include <CLI11.hpp>

#include "tally/fixtures.hpp"
#include "tally/io.hpp"

namespace {

using namespace tally;

constexpr int kExitPass = 0;
constexpr int kExitWitness = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

const Method& method_by_flag(const std::string& name) {
    const Method* m = find_method(name);
    if (!m) throw ParseError("unknown method: " + name);
    return *m;
}

AxiomId axiom_by_flag(const std::string& name) {
    const auto id = axiom_from_name(name);
    if (!id) throw ParseError("unknown axiom: " + name);
    return *id;
}

void print_scores(const Profile& p, const Method& f) {
    std::vector<std::pair<std::string, int>> scores;
    const int m = p.num_alternatives();
    switch (f.id) {
    case MethodId::minimax:
    case MethodId::homogeneity_violator:
    case MethodId::block_violator:
    case MethodId::dictator_pair:
        for (int a = 0; a < m; ++a) scores.emplace_back(p.labels[a], minimax_score(p, a));
        break;
    case MethodId::minimax_support:
        for (int a = 0; a < m; ++a) scores.emplace_back(p.labels[a], minimax_support_score(p, a));
        break;
    case MethodId::minimax_mb:
    case MethodId::borda_marginal:
        for (int a = 0; a < m; ++a) scores.emplace_back(p.labels[a], marginal_borda_score(p, a));
        break;
    case MethodId::condorcet_plurality:
        for (int a = 0; a < m; ++a) scores.emplace_back(p.labels[a], plurality_score(p, a));
        break;
    default: return;
    }
    std::sort(scores.begin(), scores.end());
    std::cout << "scores:";
    for (const auto& [label, s] : scores) std::cout << ' ' << label << ':' << s;
    std::cout << '\n';
}

int cmd_winners(const std::string& path, const std::string& method_name) {
    Profile p;
    try {
        p = load_profile(path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        const Method& f = method_by_flag(method_name);
        const BallotKind kind = validate(p);
        if (!f.in_domain(p, kind)) {
            std::cerr << "error: " << f.name << " does not cover this profile ("
                      << p.num_alternatives() << " alternatives, " << ballot_kind_name(kind)
                      << " ballots)\n";
            return kExitDomain;
        }
        const WinnerSet w = f(p);
        std::cout << "winners:";
        for (const std::string& label : winner_labels(p, w)) std::cout << ' ' << label;
        std::cout << '\n';
        print_scores(p, f);
        return kExitPass;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

int replay_witness_file(const std::string& path) {
    AxiomWitness w;
    try {
        w = load_witness(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const bool ok = verify_witness(w);
    std::cout << "witness: method=" << method(w.method).name << " target="
              << (w.axiom ? std::string(axiom_name(*w.axiom)) : std::string("refines-minimax"))
              << '\n';
    std::cout << (ok ? "replay: confirmed\n" : "replay: MISMATCH\n");
    return ok ? kExitPass : kExitWitness;
}

int cmd_check(const std::string& path, const std::string& method_name,
              const std::string& axiom_name_, const std::string& ballots,
              const std::string& out, const std::string& replay) {
    if (!replay.empty()) return replay_witness_file(replay);
    try {
        const Profile p = load_profile(path);
        const Method& f = method_by_flag(method_name);
        const AxiomId axiom = axiom_by_flag(axiom_name_);
        CheckOptions opt;
        opt.pi_added_kind = ballot_kind_from_name(ballots);
        const CheckResult result = check_axiom(f, p, axiom, opt);
        if (!result) {
            std::cout << "pass: " << f.name << " satisfies " << axiom_name(axiom)
                      << " on this profile\n";
            return kExitPass;
        }
        std::cout << "witness: " << result->note << '\n';
        std::cout << "winners before:";
        for (const auto& l : winner_labels(result->base, result->winners_before))
            std::cout << ' ' << l;
        std::cout << '\n';
        if (!out.empty()) save_text(out, witness_file_json(*result).dump(2) + "\n");
        return kExitWitness;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int report_out(const SearchReport& report, const json& spec_echo, const std::string& out) {
    std::cout << "examined " << report.profiles_examined << " profiles, "
              << report.witnesses.size() << " witnesses, exhausted="
              << (report.exhausted ? "true" : "false") << '\n';
    if (!out.empty()) save_text(out, report_to_json(report, spec_echo).dump(2) + "\n");
    return report.witnesses.empty() ? kExitPass : kExitWitness;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"social choice engine: margin graphs, voting methods, axiom checks"};
    app.require_subcommand(1);

    std::string profile_path, method_name, axiom_name_, out_path, replay_path;
    std::string ballots = "linear", mode = "exhaustive";
    int alternatives = 3, max_voters = 5, workers = 1;
    std::uint64_t seed = 0, budget = 0;

    auto* winners = app.add_subcommand("winners", "winner set and scores for a profile file");
    winners->add_option("profile", profile_path, "profile file (JSON or text)")->required();
    winners->add_option("--method", method_name, "method id")->required();

    auto* check = app.add_subcommand("check", "check one axiom for one method on one profile");
    check->add_option("profile", profile_path, "profile file");
    check->add_option("--method", method_name, "method id");
    check->add_option("--axiom", axiom_name_, "axiom id");
    check->add_option("--ballots", ballots, "added-ballot kind for positive involvement");
    check->add_option("--out", out_path, "write the witness file here");
    check->add_option("--replay", replay_path, "re-verify a stored witness file");

    auto* search = app.add_subcommand("search", "search profile space for axiom violations");
    search->add_option("--method", method_name, "method id")->required();
    search->add_option("--axiom", axiom_name_, "axiom id")->required();
    search->add_option("--alternatives", alternatives, "alternative count");
    search->add_option("--max-voters", max_voters, "largest voter total");
    search->add_option("--ballots", ballots, "ballot kind: linear|swo|relation");
    search->add_option("--mode", mode, "exhaustive|random");
    search->add_option("--seed", seed, "random-mode seed");
    search->add_option("--budget", budget, "profile budget (random mode requires one)");
    search->add_option("--workers", workers, "parallel workers");
    search->add_option("--out", out_path, "write the report file here");

    auto* refine = app.add_subcommand("verify-refinement",
                                      "report profiles where a method is not a Minimax refinement");
    refine->add_option("--method", method_name, "method id")->required();
    refine->add_option("--alternatives", alternatives, "alternative count");
    refine->add_option("--max-voters", max_voters, "largest voter total");
    refine->add_option("--ballots", ballots, "ballot kind");
    refine->add_option("--workers", workers, "parallel workers");
    refine->add_option("--out", out_path, "write the report file here");

    auto* examples = app.add_subcommand("paper-examples",
                                        "reproduce the built-in reference examples");

    auto* replay = app.add_subcommand("replay", "re-verify a stored witness file");
    replay->add_option("witness", replay_path, "witness file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (winners->parsed()) return cmd_winners(profile_path, method_name);

        if (check->parsed()) {
            if (replay_path.empty() && (profile_path.empty() || method_name.empty() ||
                                        axiom_name_.empty())) {
                std::cerr << "error: check needs a profile, --method and --axiom "
                             "(or --replay)\n";
                return kExitUsage;
            }
            return cmd_check(profile_path, method_name, axiom_name_, ballots, out_path,
                             replay_path);
        }

        if (search->parsed()) {
            const Method& f = method_by_flag(method_name);
            const AxiomId axiom = axiom_by_flag(axiom_name_);
            if (axiom == AxiomId::ordinal_margin_invariance && mode == "random") {
                PairSearchSpec spec;
                spec.method = f.id;
                spec.alternatives = alternatives;
                spec.pairs = budget ? budget : 100000;
                spec.seed = seed;
                spec.stop_after = 1;
                const SearchReport report = search_ordinal_invariance(spec);
                json echo = json::object();
                echo["method"] = std::string(f.name);
                echo["target"] = "ordinal-margin-invariance";
                echo["mode"] = "random-pairs";
                echo["pairs"] = spec.pairs;
                echo["seed"] = seed;
                return report_out(report, echo, out_path);
            }
            SearchSpec spec;
            spec.method = f.id;
            spec.axiom = axiom;
            spec.alternatives = alternatives;
            spec.max_voters = max_voters;
            spec.kind = ballot_kind_from_name(ballots);
            spec.pi_added_kind = spec.kind == BallotKind::relation ? BallotKind::linear : spec.kind;
            if (search->count("--mode") == 0 && alternatives >= 4) {
                // four-alternative spaces are too large to exhaust
                mode = "random";
                if (budget == 0) budget = 100000;
            }
            if (mode == "exhaustive") {
                spec.mode = SearchMode::exhaustive;
            } else if (mode == "random") {
                spec.mode = SearchMode::random;
                if (budget == 0) {
                    std::cerr << "error: random mode requires --budget\n";
                    return kExitUsage;
                }
            } else {
                std::cerr << "error: unknown mode " << mode << '\n';
                return kExitUsage;
            }
            spec.seed = seed;
            spec.budget = budget;
            const SearchReport report = run_search(spec, workers);
            return report_out(report, spec_to_json(spec), out_path);
        }

        if (refine->parsed()) {
            const Method& f = method_by_flag(method_name);
            const SearchReport report = verify_refines_minimax(
                f.id, alternatives, max_voters, ballot_kind_from_name(ballots), workers);
            SearchSpec spec;
            spec.method = f.id;
            spec.alternatives = alternatives;
            spec.max_voters = max_voters;
            spec.kind = ballot_kind_from_name(ballots);
            return report_out(report, spec_to_json(spec), out_path);
        }

        if (examples->parsed()) {
            const auto checks = run_reference_checks();
            std::size_t passed = 0;
            for (const ReferenceCheck& c : checks) {
                std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
                if (!c.pass) std::cout << "  (" << c.detail << ')';
                std::cout << '\n';
                passed += c.pass;
            }
            std::cout << passed << '/' << checks.size() << " reference checks passed\n";
            return passed == checks.size() ? kExitPass : kExitWitness;
        }

        if (replay->parsed()) return replay_witness_file(replay_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

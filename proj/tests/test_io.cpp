#include <catch2/catch_amalgamated.hpp>

#include "tally/fixtures.hpp"
#include "tally/io.hpp"

using namespace tally;

TEST_CASE("text import reproduces the support-vs-margin profile") {
    const std::string text = "8: b>c>a\n6: a>b=c\n4: c>a>b\n";
    const Profile p = import_external(text);
    CHECK(canonical_form(p) == canonical_form(fixtures::support_demo()));

    const Profile tied = import_external("1: a=b\n");
    CHECK(tied.num_alternatives() == 2);
    CHECK(tied.ballots[0] == Ballot());

    const Profile headed = import_external("alternatives: z y x\n1: x>y>z\n");
    CHECK(headed.labels == std::vector<std::string>{"z", "y", "x"});
    CHECK(headed.ballots[0].ranks_above(2, 1));
}

TEST_CASE("text import rejects malformed input") {
    CHECK_THROWS_AS(import_external("1: a>q\n2: a>b\n"), ParseError); // first line skips b
    CHECK_THROWS_AS(import_external("x: a>b\n"), ParseError);
    CHECK_THROWS_AS(import_external("1: a>>b\n"), ParseError);
    CHECK_THROWS_AS(import_external("0: a>b\n"), ParseError);
    CHECK_THROWS_AS(import_external("1: a>b>a\n"), ParseError);
    CHECK_THROWS_AS(import_external(""), ParseError);
    CHECK_THROWS_AS(import_external("alternatives: a b c\n1: a>b\n"), ParseError);
}

TEST_CASE("JSON round trip is a canonical fixed point") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        for (BallotKind kind :
             {BallotKind::linear, BallotKind::strict_weak_order, BallotKind::relation}) {
            const Profile p = random_profile(seed, 3, 6, kind);
            const Profile back = parse_profile(serialize_profile(p));
            CHECK(canonical_form(back) == canonical_form(p));
        }
    }

    const json doc = profile_to_json(fixtures::support_demo());
    CHECK(doc.at("format") == "tally-profile");
    CHECK(doc.at("version") == 1);
    CHECK(doc.at("alternatives").size() == 3);
}

TEST_CASE("text round trip for ranking profiles") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Profile p = random_profile(seed, 3, 5, BallotKind::strict_weak_order);
        const Profile back = import_external(export_external(p));
        CHECK(canonical_form(back) == canonical_form(p));
    }
    const Ballot both = Ballot::from_pairs({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(export_external(profile_from_counts(2, {{1, both}})), DomainError);
}

TEST_CASE("winner labels sort lexicographically") {
    Profile p;
    p.labels = {"delta", "alpha"};
    p.voters = {0};
    p.ballots = {Ballot()};
    CHECK(winner_labels(p, WinnerSet::of({0, 1})) ==
          std::vector<std::string>{"alpha", "delta"});
}

TEST_CASE("witness files replay") {
    const auto w = check_positive_involvement(method(MethodId::condorcet_plurality),
                                              fixtures::cp_noshow());
    REQUIRE(w.has_value());
    const json file = witness_file_json(*w);
    CHECK(file.at("format") == "tally-witness");
    const AxiomWitness back = witness_from_json(file);
    CHECK(back.method == w->method);
    CHECK(back.axiom == w->axiom);
    CHECK(back.winners_before == w->winners_before);
    CHECK(back.winners_after == w->winners_after);
    CHECK(verify_witness(back));

    // every transform kind that appears in witnesses survives the round trip
    const auto hv = check_homogeneity(method(MethodId::homogeneity_violator),
                                      fixtures::score_gap());
    REQUIRE(hv.has_value());
    CHECK(verify_witness(witness_from_json(witness_file_json(*hv))));

    const auto wpr = check_wpr(method(MethodId::trivial),
                               profile_from_counts(3, {{1, Ballot::from_order({0, 1, 2})},
                                                       {1, Ballot::from_order({2, 1, 0})}}));
    REQUIRE(wpr.has_value());
    CHECK(verify_witness(witness_from_json(witness_file_json(*wpr))));

    const auto imm = check_immunity(method(MethodId::minimax_mb), fixtures::loser_gap(), false);
    REQUIRE(imm.has_value());
    CHECK(verify_witness(witness_from_json(witness_file_json(*imm))));

    // an ordinal-invariance witness carries its second profile
    PairSearchSpec spec;
    spec.method = MethodId::kemeny;
    spec.pairs = 20000;
    spec.seed = 42;
    const SearchReport report = search_ordinal_invariance(spec);
    REQUIRE_FALSE(report.witnesses.empty());
    CHECK(verify_witness(witness_from_json(witness_file_json(report.witnesses[0]))));
}

TEST_CASE("corrupted witness files are rejected on replay") {
    const auto w = check_positive_involvement(method(MethodId::condorcet_plurality),
                                              fixtures::cp_noshow());
    REQUIRE(w.has_value());
    json file = witness_file_json(*w);
    file["winners_after"] = json::array({"c"});
    const AxiomWitness tampered = witness_from_json(file);
    CHECK_FALSE(verify_witness(tampered));
}

TEST_CASE("reference checks all pass, twice, with a working failure path") {
    const auto first = run_reference_checks();
    const auto second = run_reference_checks();
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].pass);
        CHECK(first[i].name == second[i].name);
        CHECK(first[i].pass == second[i].pass);
    }

    // negative control: a corrupted expectation must surface as a failure
    tally::detail::ReferenceRunner runner;
    runner.expect_eq("corrupted", minimax(fixtures::support_demo()), WinnerSet::of({2}));
    REQUIRE(runner.results.size() == 1);
    CHECK_FALSE(runner.results[0].pass);
    CHECK_FALSE(runner.results[0].detail.empty());
}

TEST_CASE("class-based search rejects the non-anonymous method") {
    SearchSpec spec;
    spec.method = MethodId::dictator_pair;
    spec.axiom = AxiomId::anonymity;
    spec.max_voters = 2;
    CHECK_THROWS_AS(find_violation(spec), DomainError);
}

TEST_CASE("report serialization is deterministic") {
    SearchSpec spec;
    spec.method = MethodId::trivial;
    spec.axiom = AxiomId::weak_positive_responsiveness;
    spec.max_voters = 2;
    const std::string a = report_to_json(find_violation(spec), spec_to_json(spec)).dump(2);
    const std::string b = report_to_json(find_violation(spec), spec_to_json(spec)).dump(2);
    CHECK(a == b);
}

#include <catch2/catch_amalgamated.hpp>

#include "tally/fixtures.hpp"
#include "tally/methods.hpp"
#include "tally/search.hpp"
#include "tally/transforms.hpp"

using namespace tally;

namespace {

// classical positional Borda count over linear 3-alternative ballots
WinnerSet positional_borda(const Profile& p) {
    const int m = p.num_alternatives();
    std::vector<int> score(m, 0);
    for (const Ballot& b : p.ballots)
        for (int a = 0; a < m; ++a)
            for (int x = 0; x < m; ++x)
                if (x != a && b.ranks_above(a, x)) ++score[a];
    const int hi = *std::max_element(score.begin(), score.end());
    WinnerSet w;
    for (int a = 0; a < m; ++a)
        if (score[a] == hi) w.add(a);
    return w;
}

} // namespace

TEST_CASE("majority") {
    const Profile p = profile_from_counts(2, {{3, Ballot::from_order({0, 1})},
                                              {1, Ballot::from_order({1, 0})}});
    CHECK(majority(p) == WinnerSet::of({0}));

    const Profile even = profile_from_counts(2, {{2, Ballot::from_order({0, 1})},
                                                 {2, Ballot::from_order({1, 0})}});
    CHECK(majority(even) == WinnerSet::of({0, 1}));

    CHECK(majority(profile_from_counts(2, {{1, Ballot()}})) == WinnerSet::of({0, 1}));
    CHECK_THROWS_AS(majority(profile_from_counts(3, {{1, Ballot::from_order({0, 1, 2})}})),
                    DomainError);
}

TEST_CASE("minimax from profiles and margin graphs") {
    CHECK(minimax(fixtures::cycle_10_6_8()) == WinnerSet::of({2}));
    CHECK(minimax(fixtures::cycle_10_6_8_graph()) == WinnerSet::of({2}));

    const Profile cw = profile_from_counts(3, {{2, Ballot::from_order({1, 0, 2})},
                                               {1, Ballot::from_order({0, 2, 1})}});
    CHECK(condorcet_winner(cw) == std::optional<int>(1));
    CHECK(minimax(cw) == WinnerSet::of({1}));

    const Profile rm = fixtures::support_demo();
    CHECK(minimax_score(rm, 0) == 6);
    CHECK(minimax_score(rm, 1) == 2);
    CHECK(minimax_score(rm, 2) == 4);
    CHECK(minimax(rm) == WinnerSet::of({1}));

    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Profile p = random_profile(seed, 4, 6, BallotKind::strict_weak_order);
        CHECK(minimax(p) == minimax(margin_graph(p)));
    }
}

TEST_CASE("support-based minimax") {
    const Profile rm = fixtures::support_demo();
    CHECK(minimax_support(rm) == WinnerSet::of({2}));

    Profile grown = rm;
    for (int i = 0; i < 3; ++i) grown = add_voter(grown, Ballot::from_order({2, 1, 0}));
    CHECK(minimax_support(grown) == WinnerSet::of({1}));

    // linear ballots: no difference from margin-based minimax
    enumerate_profiles(3, 4, BallotKind::linear, [](const Profile& p) {
        REQUIRE(minimax_support(p) == minimax(p));
        return true;
    });
}

TEST_CASE("marginal Borda and its minimax refinement") {
    const Profile cl = fixtures::loser_gap();
    CHECK(minimax(cl) == WinnerSet::of({1, 2}));
    CHECK(minimax_mb(cl) == WinnerSet::of({2}));

    CHECK(minimax_mb(fixtures::ascending_tie()) == WinnerSet::of({2}));

    const Profile eight = fixtures::eight_voter();
    CHECK(minimax_mb(eight) == WinnerSet::of({1, 2}));
    CHECK(minimax_mb(fixtures::eight_voter_switched()) == WinnerSet::of({2}));

    // equals positional Borda on linear ballots
    enumerate_profiles(3, 4, BallotKind::linear, [](const Profile& p) {
        REQUIRE(borda_marginal(p) == positional_borda(p));
        return true;
    });

    // always a refinement of minimax
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const Profile p = random_profile(seed, 3, 7, BallotKind::strict_weak_order);
        CHECK(minimax_mb(p).subset_of(minimax(p)));
    }
}

TEST_CASE("condorcet-plurality") {
    const Profile p = fixtures::cp_noshow();
    CHECK(plurality_score(p, 0) == 4);
    CHECK(plurality_score(p, 1) == 4);
    CHECK(plurality_score(p, 2) == 5);
    CHECK(condorcet_plurality(p) == WinnerSet::of({2}));
    CHECK(condorcet_plurality(add_voter(p, Ballot::from_order({2, 1, 0}))) ==
          WinnerSet::of({1}));

    // two-alternative profiles: agrees with majority
    enumerate_profiles(2, 4, BallotKind::strict_weak_order, [](const Profile& q) {
        REQUIRE(condorcet_plurality(q) == majority(q));
        return true;
    });

    // nobody uniquely first and no weak Condorcet winner: everyone ties at 0
    const Ballot cyc1 = Ballot::from_pairs({{0, 1}, {1, 2}, {2, 0}});
    const Profile odd = profile_from_counts(3, {{1, cyc1}});
    CHECK(condorcet_plurality(odd) == WinnerSet::all(3));
}

TEST_CASE("bucklin and coombs") {
    CHECK(bucklin(fixtures::bucklin_demo()) == WinnerSet::of({2}));
    CHECK(bucklin(add_block(fixtures::bucklin_demo())) == WinnerSet::of({0}));

    CHECK(coombs(fixtures::coombs_demo()) == WinnerSet::of({2}));
    CHECK(coombs(add_block(fixtures::coombs_demo())) == WinnerSet::of({0}));

    const Profile unanimous = profile_from_counts(3, {{4, Ballot::from_order({1, 2, 0})}});
    CHECK(bucklin(unanimous) == WinnerSet::of({1}));
    CHECK(coombs(unanimous) == WinnerSet::of({1}));

    const Profile tied = profile_from_counts(3, {{1, Ballot::from_tiers({{0, 1}, {2}})}});
    CHECK_THROWS_AS(bucklin(tied), DomainError);
    CHECK_THROWS_AS(coombs(tied), DomainError);
}

TEST_CASE("kemeny") {
    const Profile unanimous = profile_from_counts(3, {{3, Ballot::from_order({1, 0, 2})}});
    CHECK(kemeny(unanimous) == WinnerSet::of({1}));

    const Profile p = profile_from_counts(3, {{2, Ballot::from_order({0, 1, 2})},
                                              {1, Ballot::from_order({1, 2, 0})}});
    CHECK(kemeny(p) == WinnerSet::of({0}));

    // Condorcet winners stay among the kemeny winners at desk scale
    enumerate_profiles(3, 5, BallotKind::linear, [](const Profile& q) {
        if (auto w = condorcet_winner(q)) REQUIRE(kemeny(q).contains(*w));
        return true;
    });

    CHECK_THROWS_AS(kemeny(profile_from_counts(2, {{1, Ballot()}})), DomainError);
}

TEST_CASE("trivial, fixed-order, dictator-pair") {
    const Profile p = fixtures::cp_noshow();
    CHECK(trivial(p) == WinnerSet::all(3));

    Profile relabeled;
    relabeled.labels = {"c", "b"};
    relabeled.voters = {0};
    relabeled.ballots = {Ballot::from_order({1, 0})}; // ranks b above c
    CHECK(fixed_order(relabeled) == WinnerSet::of({0})); // first in the fixed order: c

    Profile two;
    two.labels = default_labels(3);
    two.voters = {0, 1};
    two.ballots = {Ballot::from_order({0, 1, 2}), Ballot::from_order({2, 1, 0})};
    CHECK(dictator_pair(two, 0, 1) == WinnerSet::of({0}));
    CHECK(dictator_pair(two, 1, 0) == WinnerSet::of({2}));

    Profile not_reversed = two;
    not_reversed.ballots[1] = Ballot::from_order({1, 2, 0});
    CHECK(dictator_pair(not_reversed, 0, 1) == minimax(not_reversed));

    Profile other_ids = two;
    other_ids.voters = {3, 4};
    CHECK(dictator_pair(other_ids, 0, 1) == minimax(other_ids));
}

TEST_CASE("homogeneity-violator method") {
    const Profile p = fixtures::score_gap();
    CHECK(homogeneity_violator(p) == WinnerSet::of({0, 2}));
    CHECK(homogeneity_violator(scale(p, 2)) == WinnerSet::of({0}));

    // Condorcet winner with a comfortable score gap: plain minimax
    const Profile cw = profile_from_counts(3, {{3, Ballot::from_order({1, 0, 2})},
                                               {1, Ballot::from_order({0, 2, 1})}});
    CHECK(homogeneity_violator(cw) == minimax(cw));
}

TEST_CASE("block-violator method") {
    const Profile p = fixtures::weak_cycle();
    CHECK(block_violator(p) == WinnerSet::of({0}));
    CHECK(minimax(p) == WinnerSet::of({1}));
    CHECK(block_violator(add_block(p)) == WinnerSet::of({1}));

    const Profile cw = profile_from_counts(3, {{2, Ballot::from_order({1, 0, 2})},
                                               {1, Ballot::from_order({0, 2, 1})}});
    CHECK(block_violator(cw) == minimax(cw));

    // the cycle condition never matches two role rotations at once
    enumerate_profiles(3, 5, BallotKind::linear, [](const Profile& q) {
        REQUIRE_NOTHROW(block_violator(q));
        return true;
    });
}

TEST_CASE("registry covers every method with its domain") {
    CHECK(method_registry().size() == 14);
    CHECK(find_method("minimax-mb") != nullptr);
    CHECK(find_method("no-such-method") == nullptr);
    CHECK(method(MethodId::bucklin).ballot_domain == BallotKind::linear);
    CHECK_FALSE(method(MethodId::dictator_pair).anonymous);

    // every method yields a nonempty subset of the alternatives on its domain
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Profile lin = random_profile(seed, 3, 5, BallotKind::linear);
        const Profile swo = random_profile(seed, 3, 5, BallotKind::strict_weak_order);
        for (const Method& f : method_registry()) {
            if (f.id == MethodId::majority) continue;
            for (const Profile* p : {&lin, &swo}) {
                if (!f.in_domain(*p, validate(*p))) continue;
                const WinnerSet w = f(*p);
                CHECK_FALSE(w.empty());
                CHECK(w.subset_of(AltSet::all(p->num_alternatives())));
            }
        }
    }

    // single-alternative profiles: the sole alternative wins everywhere
    Profile lone;
    lone.labels = {"a"};
    lone.voters = {0};
    lone.ballots = {Ballot()};
    for (const Method& f : method_registry()) {
        if (f.id == MethodId::majority) continue;
        CHECK(f(lone) == WinnerSet::of({0}));
    }
}

TEST_CASE("score lemma: a first-place voter lowers the winner's score by one") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Profile p = random_profile(seed, 3, 6, BallotKind::strict_weak_order);
        const int a = static_cast<int>(seed % 3);
        Ballot top; // a above everyone, everyone else tied
        for (int x = 0; x < 3; ++x)
            if (x != a) top.add(a, x);
        const Profile grown = add_voter(p, top);
        CHECK(minimax_score(grown, a) == minimax_score(p, a) - 1);
        for (int x = 0; x < 3; ++x) {
            if (x == a) continue;
            const int delta = minimax_score(grown, x) - minimax_score(p, x);
            CHECK(delta >= -1);
            CHECK(delta <= 1);
        }
    }
}

TEST_CASE("scale and block invariance of minimax") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Profile p = random_profile(seed, 3, 5, BallotKind::strict_weak_order);
        for (int n = 2; n <= 4; ++n) CHECK(minimax(scale(p, n)) == minimax(p));
        CHECK(minimax(add_block(p)) == minimax(p));
    }
}

TEST_CASE("minimax winner sets are ordinal-margin-graph invariants") {
    // sampled pairs with equal ordinal margin graphs give equal winner sets
    std::vector<std::pair<OrdinalMarginGraph, WinnerSet>> seen;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Profile p = random_profile(seed, 3, 5, BallotKind::linear);
        const OrdinalMarginGraph og = ordinal_margin_graph(p);
        const WinnerSet w = minimax(p);
        for (const auto& [other, winners] : seen)
            if (other == og) CHECK(winners == w);
        seen.emplace_back(og, w);
    }
}

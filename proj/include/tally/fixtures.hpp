#pragma once

#include <sstream>
#include <type_traits>

#include "tally/axioms.hpp"
#include "tally/methods.hpp"
#include "tally/search.hpp"
#include "tally/transforms.hpp"

namespace tally {
namespace fixtures {

// Reference profiles reproduced from the literature on margin-based voting;
// each builder documents its expected landmark values.

/// 24 voters realizing the cycle a->b 10, b->c 6, c->a 8; Minimax = {c}.
inline Profile cycle_10_6_8() {
    return profile_from_counts(3, {{8, Ballot::from_order({0, 1, 2})},
                                   {7, Ballot::from_order({1, 2, 0})},
                                   {9, Ballot::from_order({2, 0, 1})}});
}

inline MarginGraph cycle_10_6_8_graph() {
    MarginGraph g(3);
    g.set_margin(0, 1, 10).set_margin(1, 2, 6).set_margin(2, 0, 8);
    return g;
}

/// 18 voters with a bottom tie: margins b->c 4, c->a 6, a->b 2, supports
/// 8 / 12 / 10. Margin-Minimax = {b}, support-Minimax = {c}.
inline Profile support_demo() {
    return profile_from_counts(3, {{8, Ballot::from_order({1, 2, 0})},
                                   {6, Ballot::from_tiers({{0}, {1, 2}})},
                                   {4, Ballot::from_order({2, 0, 1})}});
}

/// 13 voters, cycle a->b 1, b->c 3, c->a 5: Condorcet-Plurality = {c},
/// Minimax = {b}; adding one c>b>a voter flips Condorcet-Plurality to {b}.
inline Profile cp_noshow() {
    return profile_from_counts(3, {{4, Ballot::from_order({0, 1, 2})},
                                   {4, Ballot::from_order({1, 2, 0})},
                                   {3, Ballot::from_order({2, 0, 1})},
                                   {2, Ballot::from_order({2, 1, 0})}});
}

/// 14 voters, cycle a->b 4, b->c 2, c->a 1: the score-gap tie-breaker picks
/// {a, c} while doubling collapses it to {a}.
inline Profile score_gap() {
    return profile_from_counts(3, {{6, Ballot::from_tiers({{0}, {1, 2}})},
                                   {1, Ballot::from_tiers({{1}, {0, 2}})},
                                   {4, Ballot::from_order({1, 2, 0})},
                                   {3, Ballot::from_order({2, 0, 1})}});
}

/// 11 voters, cycle x->y 1, y->z 7, z->x 3 with no y>x>z ballot: the cycle
/// tie-breaker picks {x} while Minimax picks {y}.
inline Profile weak_cycle() {
    Profile p = profile_from_counts(3, {{4, Ballot::from_order({0, 1, 2})},
                                        {5, Ballot::from_order({1, 2, 0})},
                                        {2, Ballot::from_order({2, 0, 1})}});
    p.labels = {"x", "y", "z"};
    return p;
}

/// 4 voters: Bucklin elects c outright; after a full block of orders the
/// round-2 tallies are a: 8, c: 7 and a wins.
inline Profile bucklin_demo() {
    return profile_from_counts(3, {{1, Ballot::from_order({0, 1, 2})},
                                   {3, Ballot::from_order({2, 0, 1})}});
}

/// 7 voters: Coombs elects c outright; after a full block c is eliminated
/// first and a wins.
inline Profile coombs_demo() {
    return profile_from_counts(3, {{2, Ballot::from_order({0, 1, 2})},
                                   {2, Ballot::from_order({2, 1, 0})},
                                   {2, Ballot::from_order({2, 0, 1})},
                                   {1, Ballot::from_order({1, 0, 2})}});
}

/// 8 voters: one full block plus cba and bca. Margins: c~b 0, b->a 2,
/// c->a 2; the marginal-Borda refinement ties {b, c}.
inline Profile eight_voter() {
    Profile p = block_profile(default_labels(3));
    p = add_voter(p, Ballot::from_order({2, 1, 0}));
    p = add_voter(p, Ballot::from_order({1, 2, 0}));
    return p;
}

/// eight_voter() with its b>a>c voter switched to b>c>a (a two-step
/// improvement for c); the marginal-Borda refinement then picks {c}.
inline Profile eight_voter_switched() {
    Profile p = eight_voter();
    const Ballot bac = Ballot::from_order({1, 0, 2});
    for (std::size_t i = 0; i < p.ballots.size(); ++i)
        if (p.ballots[i] == bac) {
            p.ballots[i] = Ballot::from_order({1, 2, 0});
            return p;
        }
    throw DomainError("eight_voter fixture lost its b>a>c ballot");
}

/// Condorcet-loser shape with unequal margins: b->a 2, c->a 4, b~c 0.
/// Minimax = {b, c}, the marginal-Borda refinement = {c}.
inline Profile loser_gap() {
    return profile_from_counts(3, {{2, Ballot::from_tiers({{1, 2}, {0}})},
                                   {1, Ballot::from_order({2, 0, 1})},
                                   {1, Ballot::from_order({1, 2, 0})}});
}

/// Ascending cycle with the two low margins equal: a->b 1, b->c 1, c->a 3.
/// Minimax = {b, c}, the marginal-Borda refinement = {c}.
inline Profile ascending_tie() {
    return profile_from_counts(3, {{1, Ballot::from_order({0, 1, 2})},
                                   {2, Ballot::from_order({1, 2, 0})},
                                   {2, Ballot::from_order({2, 0, 1})}});
}

} // namespace fixtures

/// One reference reproduction with its verdict.
struct ReferenceCheck {
    std::string name;
    bool pass = false;
    std::string detail; ///< expected-vs-got description on failure
};

namespace detail {

class ReferenceRunner {
public:
    std::vector<ReferenceCheck> results;

    void expect(const std::string& name, bool ok, const std::string& detail = "") {
        results.push_back({name, ok, ok ? "" : detail});
    }

    template <class T>
    void expect_eq(const std::string& name, const T& got, const T& want) {
        if (got == want) {
            results.push_back({name, true, ""});
        } else {
            std::ostringstream os;
            os << "expected " << printable(want) << ", got " << printable(got);
            results.push_back({name, false, os.str()});
        }
    }

private:
    template <class T> static std::string printable(const T& v) {
        if constexpr (std::is_same_v<T, WinnerSet> || std::is_same_v<T, AltSet>) {
            std::string s = "{";
            for (int a : v.to_vector()) s += std::to_string(a) + ",";
            if (s.back() == ',') s.pop_back();
            return s + "}";
        } else if constexpr (std::is_enum_v<T>) {
            return std::to_string(static_cast<int>(v));
        } else {
            std::ostringstream os;
            os << v;
            return os.str();
        }
    }
};

} // namespace detail

/// Runs every built-in reference reproduction; the CLI's paper-examples
/// command prints this table.
inline std::vector<ReferenceCheck> run_reference_checks() {
    using namespace fixtures;
    detail::ReferenceRunner r;

    { // tied pairs sit in neither direction of the relation
        const Profile tied = profile_from_counts(2, {{1, Ballot()}});
        r.expect("tied pair is mutual absence",
                 !ranks_above(tied, 0, 0, 1) && !ranks_above(tied, 0, 1, 0),
                 "tie must answer false both ways");
    }

    { // headline cycle: margins 10/6/8 make c the unique Minimax winner
        const Profile p = cycle_10_6_8();
        const MarginGraph g = margin_graph(p);
        r.expect("cycle-10-6-8 margins", g.margin(0, 1) == 10 && g.margin(1, 2) == 6 &&
                                             g.margin(2, 0) == 8,
                 "margin matrix mismatch");
        r.expect_eq("cycle-10-6-8 minimax", minimax(p), WinnerSet::of({2}));
        r.expect_eq("cycle-10-6-8 minimax from graph", minimax(cycle_10_6_8_graph()),
                    WinnerSet::of({2}));
    }

    { // a Condorcet winner is the unique Minimax winner
        const Profile cw = profile_from_counts(3, {{2, Ballot::from_order({1, 0, 2})},
                                                   {1, Ballot::from_order({0, 2, 1})}});
        r.expect("condorcet winner exists", condorcet_winner(cw) == std::optional<int>(1),
                 "expected winner b");
        r.expect_eq("condorcet winner wins minimax uniquely", minimax(cw), WinnerSet::of({1}));
    }

    { // support-vs-margin demo
        const Profile p = support_demo();
        const MarginGraph g = margin_graph(p);
        r.expect("support-demo margins", g.margin(1, 2) == 4 && g.margin(2, 0) == 6 &&
                                             g.margin(0, 1) == 2,
                 "margin graph mismatch");
        r.expect("support-demo supports", support(p, 1, 2) == 8 && support(p, 2, 0) == 12 &&
                                              support(p, 0, 1) == 10,
                 "support graph mismatch");
        r.expect_eq("support-demo validate", validate(p), BallotKind::strict_weak_order);
        r.expect_eq("support-demo minimax", minimax(p), WinnerSet::of({1}));
        r.expect("support-demo minimax scores",
                 minimax_score(p, 0) == 6 && minimax_score(p, 1) == 2 && minimax_score(p, 2) == 4,
                 "scores should be a:6 b:2 c:4");
        r.expect_eq("support-demo support-minimax", minimax_support(p), WinnerSet::of({2}));
        r.expect("support-demo a uniquely first on tied ballot",
                 ranks_uniquely_first(p, 8, 0) && !ranks_uniquely_first(p, 8, 1),
                 "tiered ballot top detection");
        Profile grown = p;
        for (int i = 0; i < 3; ++i) grown = add_voter(grown, Ballot::from_order({2, 1, 0}));
        r.expect("support-demo + 3*cba has Condorcet winner b",
                 condorcet_winner(grown) == std::optional<int>(1), "expected winner b");
        r.expect_eq("support-demo + 3*cba support-minimax", minimax_support(grown),
                    WinnerSet::of({1}));
        r.expect("support-demo support-minimax no-show witness",
                 check_positive_involvement(method(MethodId::minimax_support),
                                            add_voter(p, Ballot::from_order({2, 1, 0})))
                     .has_value(),
                 "expected a violation after one added c>b>a voter");
        r.expect("scaling by five keeps the ordinal margin graph",
                 ordinal_margin_graph(scale(p, 5)) == ordinal_margin_graph(p),
                 "ordinal graphs differ");
        r.expect("minimax ordinal-margin invariance on (P, 5P) and (P, P+block)",
                 !check_axiom(method(MethodId::minimax), p,
                              AxiomId::ordinal_margin_invariance)
                      .has_value(),
                 "minimax must pass");
    }

    { // with linear ballots, support- and margin-based scoring agree
        std::uint64_t diff = 0;
        enumerate_profiles(3, 4, BallotKind::linear, [&](const Profile& q) {
            diff += minimax_support(q) != minimax(q);
            return true;
        });
        r.expect("support equals margin scoring on linear ballots", diff == 0,
                 "found " + std::to_string(diff) + " disagreements");
    }

    { // Condorcet-Plurality no-show demo
        const Profile p = cp_noshow();
        const MarginGraph g = margin_graph(p);
        r.expect("cp-noshow margins", g.margin(0, 1) == 1 && g.margin(1, 2) == 3 &&
                                          g.margin(2, 0) == 5,
                 "margin graph mismatch");
        r.expect_eq("cp-noshow condorcet-plurality", condorcet_plurality(p), WinnerSet::of({2}));
        r.expect_eq("cp-noshow minimax", minimax(p), WinnerSet::of({1}));
        const Profile grown = add_voter(p, Ballot::from_order({2, 1, 0}));
        const MarginGraph g2 = margin_graph(grown);
        r.expect("cp-noshow+cba margins", g2.margin(0, 1) == 0 && g2.margin(1, 2) == 2 &&
                                              g2.margin(2, 0) == 6,
                 "margin graph mismatch after added voter");
        r.expect_eq("cp-noshow+cba weak winners", weak_condorcet_winners(grown),
                    AltSet::of({1}));
        r.expect_eq("cp-noshow+cba condorcet-plurality", condorcet_plurality(grown),
                    WinnerSet::of({1}));
        r.expect("cp-noshow positive-involvement witness",
                 check_positive_involvement(method(MethodId::condorcet_plurality), p).has_value(),
                 "expected a violation with an added c-first voter");
        const CycleCase cc = classify_three_cycle(p);
        r.expect("cp-noshow ascending case",
                 cc.kind == CycleCaseKind::ascending && cc.n == 1 && cc.m == 3 && cc.k == 5 &&
                     cc.roles == std::array<int, 3>{0, 1, 2} && cc.strictly_ascending(),
                 "classification mismatch");
    }

    { // score-gap tie-breaker (homogeneity failure)
        const Profile p = score_gap();
        const MarginGraph g = margin_graph(p);
        r.expect("score-gap margins", g.margin(0, 1) == 4 && g.margin(1, 2) == 2 &&
                                          g.margin(2, 0) == 1,
                 "margin graph mismatch");
        r.expect_eq("score-gap winner pair", homogeneity_violator(p), WinnerSet::of({0, 2}));
        const Profile doubled = scale(p, 2);
        const MarginGraph g2 = margin_graph(doubled);
        r.expect("score-gap doubled margins", g2.margin(0, 1) == 8 && g2.margin(1, 2) == 4 &&
                                                  g2.margin(2, 0) == 2,
                 "doubling should double margins");
        r.expect_eq("score-gap doubled winners", homogeneity_violator(doubled),
                    WinnerSet::of({0}));
        r.expect("score-gap homogeneity witness",
                 check_homogeneity(method(MethodId::homogeneity_violator), p).has_value(),
                 "expected {a,c} not within {a}");
        r.expect("score-gap minimax homogeneity pass",
                 !check_homogeneity(method(MethodId::minimax), p).has_value(),
                 "minimax must pass");
    }

    { // weak-cycle tie-breaker (block preservation failure)
        const Profile p = weak_cycle();
        r.expect_eq("weak-cycle winners", block_violator(p), WinnerSet::of({0}));
        r.expect_eq("weak-cycle minimax", minimax(p), WinnerSet::of({1}));
        r.expect_eq("weak-cycle after block", block_violator(add_block(p)), WinnerSet::of({1}));
        r.expect("weak-cycle block witness",
                 check_block_preservation(method(MethodId::block_violator), p).has_value(),
                 "expected {x} not within {y}");
        r.expect("weak-cycle minimax block pass",
                 !check_block_preservation(method(MethodId::minimax), p).has_value(),
                 "minimax must pass");
    }

    { // Bucklin block demo
        const Profile p = bucklin_demo();
        r.expect_eq("bucklin demo", bucklin(p), WinnerSet::of({2}));
        const Profile grown = add_block(p);
        const BucklinOutcome out = bucklin_outcome(grown);
        r.expect("bucklin demo + block counts",
                 out.round == 2 && out.counts[0] == 8 && out.counts[2] == 7,
                 "expected first-or-second counts a:8 c:7");
        r.expect_eq("bucklin demo + block winners", out.winners, WinnerSet::of({0}));
    }

    { // Coombs block demo
        const Profile p = coombs_demo();
        r.expect_eq("coombs demo", coombs(p), WinnerSet::of({2}));
        const Profile grown = add_block(p);
        const CoombsTrace trace = coombs_trace(grown);
        r.expect("coombs demo + block eliminates c first",
                 !trace.eliminated.empty() && trace.eliminated[0] == AltSet::of({2}),
                 "expected c eliminated in round 1");
        r.expect_eq("coombs demo + block winners", trace.winners, WinnerSet::of({0}));
    }

    { // eight-voter tie and its improvement step
        const Profile p = eight_voter();
        const MarginGraph g = margin_graph(p);
        r.expect("eight-voter margins", g.margin(2, 1) == 0 && g.margin(1, 0) == 2 &&
                                            g.margin(2, 0) == 2,
                 "margin graph mismatch");
        r.expect_eq("eight-voter minimax-mb", minimax_mb(p), WinnerSet::of({1, 2}));
        const Profile switched = eight_voter_switched();
        r.expect_eq("eight-voter switched minimax-mb", minimax_mb(switched), WinnerSet::of({2}));
        const Profile restricted = remove_alternative(p, 0);
        r.expect("eight-voter restriction keeps margin",
                 margin(restricted, 0, 1) == 0 && margin(p, 1, 0) == 2,
                 "restriction changed a margin");
        r.expect("minimax is not fully responsive on the eight-voter tie",
                 check_positive_responsiveness_full(method(MethodId::minimax), p).has_value(),
                 "expected the tie to survive an improvement step");
        r.expect("minimax-mb is fully responsive on the eight-voter tie",
                 !check_positive_responsiveness_full(method(MethodId::minimax_mb), p)
                      .has_value(),
                 "every improvement must single out its target");
    }

    { // refinement patterns of the marginal-Borda tie-breaker
        const Profile cl = loser_gap();
        const MarginGraph g = margin_graph(cl);
        r.expect("loser-gap margins", g.margin(1, 0) == 2 && g.margin(2, 0) == 4 &&
                                          g.margin(1, 2) == 0,
                 "margin graph mismatch");
        r.expect_eq("loser-gap minimax", minimax(cl), WinnerSet::of({1, 2}));
        r.expect_eq("loser-gap minimax-mb", minimax_mb(cl), WinnerSet::of({2}));
        r.expect("loser-gap full-immunity witness",
                 check_immunity(method(MethodId::minimax_mb), cl, false).has_value(),
                 "expected b spoiled by a");
        r.expect("loser-gap near-immunity pass",
                 !check_immunity(method(MethodId::minimax_mb), cl, true).has_value(),
                 "near immunity must hold");
        const CycleCase cc = classify_three_cycle(cl);
        r.expect("loser-gap case", cc.kind == CycleCaseKind::condorcet_loser && cc.n == 2 &&
                                       cc.k == 4,
                 "classification mismatch");
        const Profile at = ascending_tie();
        r.expect_eq("ascending-tie minimax", minimax(at), WinnerSet::of({1, 2}));
        r.expect_eq("ascending-tie minimax-mb", minimax_mb(at), WinnerSet::of({2}));
    }

    { // two-alternative majority landmarks
        const Profile even = profile_from_counts(2, {{2, Ballot::from_order({0, 1})},
                                                     {2, Ballot::from_order({1, 0})}});
        r.expect_eq("even two-alternative majority", majority(even), WinnerSet::of({0, 1}));
        const Profile tied = profile_from_counts(2, {{1, Ballot()}});
        r.expect_eq("single tied ballot majority", majority(tied), WinnerSet::of({0, 1}));
    }

    { // anonymity / neutrality failures of the constructed methods
        Profile two;
        two.labels = default_labels(3);
        two.voters = {0, 1};
        two.ballots = {Ballot::from_order({0, 1, 2}), Ballot::from_order({2, 1, 0})};
        r.expect_eq("dictator-pair reversed orders", dictator_pair(two, 0, 1),
                    WinnerSet::of({0}));
        r.expect("dictator-pair anonymity witness",
                 check_anonymity(method(MethodId::dictator_pair), two).has_value(),
                 "expected an id-swap violation");
        const Profile ab = profile_from_counts(2, {{1, Ballot::from_order({0, 1})},
                                                   {1, Ballot::from_order({1, 0})}});
        r.expect("fixed-order neutrality witness",
                 check_neutrality(method(MethodId::fixed_order), ab).has_value(),
                 "expected a label-swap violation");
        r.expect("trivial wpr witness",
                 check_wpr(method(MethodId::trivial),
                           profile_from_counts(3, {{1, Ballot::from_order({0, 1, 2})},
                                                   {1, Ballot::from_order({2, 1, 0})}}))
                     .has_value(),
                 "expected winners to stay the full set");
    }

    { // transforms on the cp-noshow cycle
        const Profile p = cp_noshow();
        const Profile moved = move_last_to_first(p, 12, 0); // a c>b>a voter flips to a>c>b
        const int pos = moved.voter_position(12);
        r.expect("move-last-to-first keeps lower order",
                 moved.ballots[pos] == Ballot::from_order({0, 2, 1}),
                 "expected ballot a>c>b");
        r.expect("block adds 6 voters", add_block(p).num_voters() == p.num_voters() + 6,
                 "block size mismatch");
        const MarginGraph before = margin_graph(p);
        const MarginGraph after = margin_graph(add_block(p));
        r.expect("block preserves margins", before == after, "margins changed under block");
    }

    { // minimax passes the full axiom battery on the reference profiles
        const Method& mm = method(MethodId::minimax);
        for (const Profile& p :
             {support_demo(), cp_noshow(), score_gap(), weak_cycle(), eight_voter()}) {
            const bool ok = !check_wpr(mm, p) && !check_positive_involvement(mm, p) &&
                            !check_immunity(mm, p, false) && !check_immunity(mm, p, true) &&
                            !check_homogeneity(mm, p) && !check_block_preservation(mm, p) &&
                            !check_anonymity(mm, p) && !check_neutrality(mm, p);
            r.expect("minimax axiom battery on " + std::to_string(p.num_voters()) + "-voter fixture",
                     ok, "minimax should satisfy every axiom here");
        }
    }

    { // two-alternative chain: block-addition plus one last-to-first move
        Profile p0 = profile_from_counts(2, {{1, Ballot::from_order({0, 1})}, {1, Ballot()}});
        r.expect_eq("chain start", minimax(p0), WinnerSet::of({0}));
        Profile p1 = add_block(add_block(p0));
        r.expect("chain blocks keep a winning", minimax(p1).contains(0), "winner lost");
        int flip = -1;
        for (int i = 0; i < p1.num_voters(); ++i)
            if (ranks_uniquely_last(p1.ballots[i], 2, 0)) flip = p1.voters[i];
        const Profile p2 = move_last_to_first(p1, flip, 0);
        r.expect_eq("chain end", minimax(p2), WinnerSet::of({0}));
        r.expect_eq("chain end majority agreement", majority(p2), WinnerSet::of({0}));
    }

    return r.results;
}

} // namespace tally

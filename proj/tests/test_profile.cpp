#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "tally/profile.hpp"
#include "tally/transforms.hpp"

using namespace tally;

namespace {

// independent ordered-Bell computation: a(n) = sum C(n,k) a(n-k)
long long ordered_bell(int n) {
    std::vector<long long> a(n + 1, 0);
    a[0] = 1;
    for (int i = 1; i <= n; ++i) {
        long long c = 1; // C(i, k) built incrementally
        for (int k = 1; k <= i; ++k) {
            c = c * (i - k + 1) / k;
            a[i] += c * a[i - k];
        }
    }
    return a[n];
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

} // namespace

TEST_CASE("ranks_above on linear, tied, and arbitrary ballots") {
    const Profile p = profile_from_counts(3, {{1, Ballot::from_order({0, 1, 2})}});
    CHECK(ranks_above(p, 0, 0, 2)); // transitive pair stored explicitly

    const Profile tied = profile_from_counts(2, {{1, Ballot()}});
    CHECK_FALSE(ranks_above(tied, 0, 0, 1));
    CHECK_FALSE(ranks_above(tied, 0, 1, 0));

    // random relation ballots agree with a direct pair-set lookup
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::set<std::pair<int, int>> pairs;
        Ballot b;
        for (int a = 0; a < 3; ++a)
            for (int x = 0; x < 3; ++x)
                if (a != x && rng() % 2) {
                    pairs.insert({a, x});
                    b.add(a, x);
                }
        Profile q;
        q.labels = default_labels(3);
        q.voters = {0};
        q.ballots = {b};
        for (int a = 0; a < 3; ++a)
            for (int x = 0; x < 3; ++x)
                if (a != x) CHECK(ranks_above(q, 0, a, x) == pairs.count({a, x}));
    }

    CHECK_THROWS_AS(ranks_above(p, 9, 0, 1), DomainError);
    CHECK_THROWS_AS(ranks_above(p, 0, 0, 7), DomainError);
}

TEST_CASE("uniquely first and last") {
    const Profile p = profile_from_counts(3, {{1, Ballot::from_order({0, 1, 2})}});
    CHECK(ranks_uniquely_first(p, 0, 0));
    CHECK_FALSE(ranks_uniquely_first(p, 0, 1));
    CHECK(ranks_uniquely_last(p, 0, 2));

    const Profile tiered = profile_from_counts(3, {{1, Ballot::from_tiers({{0}, {1, 2}})}});
    CHECK(ranks_uniquely_first(tiered, 0, 0));
    CHECK_FALSE(ranks_uniquely_last(tiered, 0, 1));

    // intransitive relation still counts pairwise
    const Ballot odd = Ballot::from_pairs({{0, 1}, {0, 2}, {1, 2}, {2, 1}});
    Profile q;
    q.labels = default_labels(3);
    q.voters = {0};
    q.ballots = {odd};
    CHECK(ranks_uniquely_first(q, 0, 0));
}

TEST_CASE("validate classifies ballots and rejects malformed profiles") {
    Profile all_linear;
    all_linear.labels = default_labels(3);
    int id = 0;
    for (const Ballot& b : ballot_space(3, BallotKind::linear)) {
        all_linear.voters.push_back(id++);
        all_linear.ballots.push_back(b);
    }
    CHECK(validate(all_linear) == BallotKind::linear);

    const Profile with_tie = profile_from_counts(3, {{1, Ballot::from_tiers({{1}, {0, 2}})},
                                                     {1, Ballot::from_order({0, 1, 2})}});
    CHECK(validate(with_tie) == BallotKind::strict_weak_order);

    const Ballot both = Ballot::from_pairs({{0, 1}, {1, 0}});
    CHECK(classify_ballot(both, 2) == BallotKind::relation);
    const Profile rel = profile_from_counts(2, {{1, both}});
    CHECK(validate(rel) == BallotKind::relation);

    CHECK_THROWS_AS(Ballot().add(1, 1), DomainError);

    Profile dupes = with_tie;
    dupes.voters = {0, 0};
    CHECK_THROWS_AS(validate(dupes), DomainError);

    Profile out_of_range = profile_from_counts(2, {{1, Ballot::from_pairs({{0, 2}})}});
    CHECK_THROWS_AS(validate(out_of_range), DomainError);

    Profile empty;
    empty.labels = default_labels(2);
    CHECK_THROWS_AS(validate(empty), DomainError);
}

TEST_CASE("kind checks are monotone along the lattice") {
    for (const Ballot& b : ballot_space(3, BallotKind::linear))
        CHECK(detail::is_asymmetric(b, 3));
    for (const Ballot& b : ballot_space(3, BallotKind::strict_weak_order)) {
        CHECK(detail::is_asymmetric(b, 3));
        CHECK(detail::is_negatively_transitive(b, 3));
    }
}

TEST_CASE("canonical form is a voter-permutation invariant") {
    const Profile p = profile_from_counts(3, {{2, Ballot::from_order({0, 1, 2})},
                                              {2, Ballot::from_order({2, 1, 0})},
                                              {1, Ballot::from_tiers({{0, 1}, {2}})}});
    const Profile canon = canonical_form(p);
    CHECK(canonical_form(canon) == canon); // idempotent

    Profile swapped = p;
    std::swap(swapped.voters[0], swapped.voters[3]);
    CHECK(canonical_form(swapped) == canon);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<int> perm = p.voters;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_form(permute_voters(p, perm)) == canon);
    }

    // different multisets get different canonical forms
    Profile other = p;
    other.ballots[0] = Ballot::from_order({1, 0, 2});
    CHECK_FALSE(canonical_form(other) == canon);
}

TEST_CASE("ballot spaces have the expected sizes and order") {
    CHECK(ballot_space(3, BallotKind::linear).size() == 6);
    CHECK(ballot_space(3, BallotKind::strict_weak_order).size() == 13);
    CHECK(ballot_space(2, BallotKind::strict_weak_order).size() == 3);
    CHECK(ballot_space(3, BallotKind::relation).size() == 64);

    for (int m = 1; m <= 4; ++m) {
        CHECK(ballot_space(m, BallotKind::linear).size() ==
              static_cast<std::size_t>(factorial(m)));
        CHECK(ballot_space(m, BallotKind::strict_weak_order).size() ==
              static_cast<std::size_t>(ordered_bell(m)));
    }
    CHECK(ballot_space(5, BallotKind::strict_weak_order).size() ==
          static_cast<std::size_t>(ordered_bell(5)));

    // deterministic order: strictly increasing under the ballot order
    const auto& space = ballot_space(3, BallotKind::strict_weak_order);
    for (std::size_t i = 0; i + 1 < space.size(); ++i)
        CHECK(ballot_less(space[i], space[i + 1]));

    // every ballot is of the requested kind
    for (const Ballot& b : ballot_space(4, BallotKind::strict_weak_order))
        CHECK(classify_ballot(b, 4) != BallotKind::relation);

    CHECK_THROWS_AS(ballot_space(6, BallotKind::linear), DomainError);
}

TEST_CASE("ballot order is a strict total order with prefix rule") {
    CHECK(ballot_less(Ballot(), Ballot::from_pairs({{0, 1}})));
    CHECK(ballot_less(Ballot::from_pairs({{0, 1}}), Ballot::from_pairs({{0, 1}, {0, 2}})));
    CHECK(ballot_less(Ballot::from_pairs({{0, 1}, {0, 2}}), Ballot::from_pairs({{0, 2}})));
    const auto& space = ballot_space(3, BallotKind::relation);
    for (std::size_t i = 0; i < space.size(); i += 7)
        for (std::size_t j = 0; j < space.size(); j += 11) {
            const bool lt = ballot_less(space[i], space[j]);
            const bool gt = ballot_less(space[j], space[i]);
            CHECK_FALSE((lt && gt));
            if (i != j) CHECK((lt || gt));
        }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>

#include "tally/io.hpp"
#include "tally/search.hpp"

using namespace tally;

TEST_CASE("profile enumeration counts match the closed form") {
    CHECK(count_profiles(3, 2, BallotKind::linear) == 27);
    CHECK(count_profiles(3, 7, BallotKind::linear) == 1715);
    CHECK(count_profiles(3, 5, BallotKind::strict_weak_order) == 8567);
    CHECK(count_profiles(2, 1, BallotKind::strict_weak_order) == 3);

    for (BallotKind kind : {BallotKind::linear, BallotKind::strict_weak_order}) {
        std::uint64_t streamed = enumerate_profiles(3, 4, kind, [](const Profile&) { return true; });
        CHECK(streamed == count_profiles(3, 4, kind));
    }
}

TEST_CASE("enumeration yields valid canonical profiles in a stable order") {
    std::vector<Profile> all;
    enumerate_profiles(2, 2, BallotKind::strict_weak_order, [&](const Profile& p) {
        all.push_back(p);
        return true;
    });
    REQUIRE(all.size() == 9); // 3 + C(4,2)
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK_NOTHROW(validate(all[i]));
        CHECK(canonical_form(all[i]) == all[i]);
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
    }
    CHECK(all[0].num_voters() == 1);
    CHECK(all.back().num_voters() == 2);

    // offset/limit windows tile the stream
    std::vector<Profile> tiled;
    for (std::uint64_t off = 0; off < 9; off += 2)
        enumerate_profiles(2, 2, BallotKind::strict_weak_order, off, 2, [&](const Profile& p) {
            tiled.push_back(p);
            return true;
        });
    REQUIRE(tiled.size() == all.size());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(tiled[i] == all[i]);
}

TEST_CASE("random profiles are reproducible and seed-sensitive") {
    const Profile a = random_profile(42, 3, 5, BallotKind::strict_weak_order);
    const Profile b = random_profile(42, 3, 5, BallotKind::strict_weak_order);
    CHECK(a == b);

    // canonical forms collide rarely once the class space is large
    int collisions = 0;
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Profile p = random_profile(seed, 4, 8, BallotKind::linear);
        if (!seen.insert(profile_to_json(p).dump()).second) ++collisions;
    }
    CHECK(collisions == 0);
}

TEST_CASE("random ballots are uniform (chi-square at 5 sigma)") {
    const auto& space = ballot_space(3, BallotKind::linear);
    std::vector<std::uint64_t> counts(space.size(), 0);
    const int profiles = 10000, voters = 5;
    for (std::uint64_t i = 0; i < profiles; ++i) {
        const Profile p = random_profile(detail::stream_seed(7, i), 3, voters, BallotKind::linear);
        for (const Ballot& b : p.ballots) {
            const auto it = std::find(space.begin(), space.end(), b);
            REQUIRE(it != space.end());
            ++counts[static_cast<std::size_t>(it - space.begin())];
        }
    }
    const double n = profiles * voters;
    const double piece = 1.0 / static_cast<double>(space.size());
    const double sigma = std::sqrt(n * piece * (1 - piece));
    for (std::uint64_t c : counts)
        CHECK(std::abs(static_cast<double>(c) - n * piece) < 5 * sigma);
}

TEST_CASE("find_violation on landmark specs") {
    SearchSpec trivial_wpr;
    trivial_wpr.method = MethodId::trivial;
    trivial_wpr.axiom = AxiomId::weak_positive_responsiveness;
    trivial_wpr.max_voters = 2;
    const SearchReport r1 = find_violation(trivial_wpr);
    CHECK_FALSE(r1.witnesses.empty());
    CHECK(r1.exhausted);
    for (const AxiomWitness& w : r1.witnesses) CHECK(verify_witness(w));

    SearchSpec minimax_clean;
    minimax_clean.method = MethodId::minimax;
    minimax_clean.axiom = AxiomId::positive_involvement;
    minimax_clean.max_voters = 5;
    const SearchReport r2 = find_violation(minimax_clean);
    CHECK(r2.witnesses.empty());
    CHECK(r2.exhausted);
    CHECK(r2.profiles_examined == 461);

    // early stop keeps the minimal witness
    SearchSpec first_hit = trivial_wpr;
    first_hit.stop_after = 1;
    const SearchReport r3 = find_violation(first_hit);
    REQUIRE(r3.witnesses.size() == 1);
    CHECK(r3.witnesses[0].base.num_voters() == 1);
}

TEST_CASE("refinement verification at desk scale") {
    const SearchReport clean = verify_refines_minimax(MethodId::minimax_mb, 3, 5);
    CHECK(clean.witnesses.empty());
    CHECK(clean.exhausted);

    const SearchReport borda = verify_refines_minimax(MethodId::borda_marginal, 3, 5);
    CHECK_FALSE(borda.witnesses.empty());
    for (const AxiomWitness& w : borda.witnesses) {
        CHECK(w.is_refinement());
        CHECK(verify_witness(w));
    }
}

TEST_CASE("partition covers the search space exactly") {
    SearchSpec spec;
    spec.method = MethodId::condorcet_plurality;
    spec.axiom = AxiomId::positive_involvement;
    spec.max_voters = 7;

    const auto parts = partition(spec, 1);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].offset == 0);
    CHECK(parts[0].limit == 1715);

    std::uint64_t covered = 0;
    for (const SearchSpec& part : partition(spec, 4)) {
        CHECK(part.offset == covered);
        covered += part.limit;
    }
    CHECK(covered == 1715);
}

TEST_CASE("parallel search reproduces the serial witness set") {
    SearchSpec spec;
    spec.method = MethodId::condorcet_plurality;
    spec.axiom = AxiomId::positive_involvement;
    spec.max_voters = 9; // contains the smallest no-show violations
    const SearchReport serial = find_violation(spec);
    const SearchReport parallel = run_search(spec, 4);
    CHECK_FALSE(serial.witnesses.empty());
    CHECK(serial.profiles_examined == parallel.profiles_examined);
    CHECK(parallel.exhausted);
    CHECK(canonical_witness_dump(serial.witnesses) == canonical_witness_dump(parallel.witnesses));

    SearchSpec random_spec;
    random_spec.method = MethodId::trivial;
    random_spec.axiom = AxiomId::weak_positive_responsiveness;
    random_spec.mode = SearchMode::random;
    random_spec.max_voters = 4;
    random_spec.budget = 500;
    random_spec.seed = 9;
    const SearchReport rs = find_violation(random_spec);
    const SearchReport rp = run_search(random_spec, 4);
    CHECK(rs.profiles_examined == 500);
    CHECK(canonical_witness_dump(rs.witnesses) == canonical_witness_dump(rp.witnesses));
    const SearchReport rs2 = find_violation(random_spec);
    CHECK(canonical_witness_dump(rs.witnesses) == canonical_witness_dump(rs2.witnesses));
}

TEST_CASE("anonymous-class representatives stand for the whole class") {
    std::mt19937_64 rng(5);
    std::uint64_t checked = 0;
    enumerate_profiles(3, 4, BallotKind::linear, [&](const Profile& p) {
        if (rng() % 10 != 0) return true; // sample
        ++checked;
        std::vector<int> perm = p.voters;
        std::shuffle(perm.begin(), perm.end(), rng);
        const Profile renamed = permute_voters(p, perm);
        for (MethodId id : {MethodId::minimax, MethodId::condorcet_plurality, MethodId::bucklin})
            CHECK(method(id)(p) == method(id)(renamed));
        return true;
    });
    CHECK(checked > 0);
}

TEST_CASE("ordinal-invariance pair search separates kemeny from minimax") {
    PairSearchSpec kemeny_spec;
    kemeny_spec.method = MethodId::kemeny;
    kemeny_spec.pairs = 20000;
    kemeny_spec.seed = 42;
    const SearchReport kr = search_ordinal_invariance(kemeny_spec);
    REQUIRE_FALSE(kr.witnesses.empty());
    CHECK(verify_witness(kr.witnesses[0]));
    CHECK(ordinal_margin_graph(kr.witnesses[0].base) ==
          ordinal_margin_graph(*kr.witnesses[0].other));

    PairSearchSpec mm_spec = kemeny_spec;
    mm_spec.method = MethodId::minimax;
    mm_spec.pairs = 3000;
    mm_spec.stop_after = 0;
    const SearchReport mr = search_ordinal_invariance(mm_spec);
    CHECK(mr.witnesses.empty());
    CHECK(mr.profiles_examined == 3000);
}

#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <thread>

#include "tally/axioms.hpp"

namespace tally {

namespace detail {

inline std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic seed for the i-th item of a seeded stream.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

/// Unbiased draw from [0, n) using raw 64-bit outputs.
template <class Rng> std::uint64_t bounded(Rng& rng, std::uint64_t n) {
    const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
    std::uint64_t v;
    do {
        v = rng();
    } while (rem != 0 && v > limit);
    return v % n;
}

inline void require_enumeration_bounds(int alternatives, BallotKind kind) {
    if (alternatives < 1 || alternatives > 4)
        throw DomainError("profile enumeration supports 1..4 alternatives");
    if (alternatives == 4 && kind != BallotKind::linear)
        throw DomainError("4-alternative enumeration supports linear ballots only");
}

} // namespace detail

/// Number of anonymous profiles (ballot-count multisets) with 1..max_voters
/// voters over the given ballot space.
inline std::uint64_t count_profiles(int alternatives, int max_voters, BallotKind kind) {
    detail::require_enumeration_bounds(alternatives, kind);
    const int t = static_cast<int>(ballot_space(alternatives, kind).size());
    std::uint64_t total = 0;
    for (int n = 1; n <= max_voters; ++n) total += detail::binom(n + t - 1, t - 1);
    return total;
}

/// Streams one representative per anonymous class: every voter total from 1
/// to max_voters, count vectors in lexicographic order within each total.
/// The callback receives a scratch profile valid only during the call;
/// returning false stops the stream. Returns the number of profiles
/// visited.
inline std::uint64_t
enumerate_profiles(int alternatives, int max_voters, BallotKind kind, std::uint64_t offset,
                   std::uint64_t limit, const std::function<bool(const Profile&)>& callback) {
    detail::require_enumeration_bounds(alternatives, kind);
    const auto& space = ballot_space(alternatives, kind);
    const int t = static_cast<int>(space.size());

    // locate the voter total and in-block rank for `offset`
    int n = 1;
    std::uint64_t rank = offset;
    while (n <= max_voters && rank >= detail::binom(n + t - 1, t - 1)) {
        rank -= detail::binom(n + t - 1, t - 1);
        ++n;
    }
    if (n > max_voters) return 0;

    std::vector<int> counts(t, 0);
    // unrank `rank` within the n-voter block
    {
        int remaining = n;
        for (int i = 0; i < t - 1; ++i) {
            for (int c = remaining; c >= 0; --c) {
                const std::uint64_t sz = detail::binom(remaining - c + t - i - 2, t - i - 2);
                if (rank < sz) {
                    counts[i] = c;
                    remaining -= c;
                    break;
                }
                rank -= sz;
            }
        }
        counts[t - 1] = remaining;
    }

    Profile scratch;
    scratch.labels = default_labels(alternatives);
    std::uint64_t visited = 0;
    while (true) {
        if (limit != 0 && visited >= limit) return visited;
        scratch.voters.resize(n);
        std::iota(scratch.voters.begin(), scratch.voters.end(), 0);
        scratch.ballots.clear();
        for (int i = 0; i < t; ++i)
            for (int c = 0; c < counts[i]; ++c) scratch.ballots.push_back(space[i]);
        ++visited;
        if (!callback(scratch)) return visited;

        // next count vector: move one unit rightward from the last nonzero
        // non-tail position; exhausting a block advances the voter total
        int j = t - 2;
        while (j >= 0 && counts[j] == 0) --j;
        if (j < 0) {
            if (++n > max_voters) return visited;
            std::fill(counts.begin(), counts.end(), 0);
            counts[0] = n;
            continue;
        }
        const int tail = counts[t - 1];
        counts[j] -= 1;
        counts[t - 1] = 0;
        counts[j + 1] = tail + 1;
    }
}

inline std::uint64_t
enumerate_profiles(int alternatives, int max_voters, BallotKind kind,
                   const std::function<bool(const Profile&)>& callback) {
    return enumerate_profiles(alternatives, max_voters, kind, 0, 0, callback);
}

/// Uniform i.i.d. ballots from the ballot space; reproducible from the seed.
inline Profile random_profile(std::uint64_t seed, int alternatives, int voters,
                              BallotKind kind) {
    if (alternatives < 1 || alternatives > Ballot::kMaxAlternatives)
        throw DomainError("random_profile supports 1..5 alternatives");
    if (voters < 1) throw DomainError("random_profile needs at least one voter");
    const auto& space = ballot_space(alternatives, kind);
    std::mt19937_64 rng(seed);
    Profile p;
    p.labels = default_labels(alternatives);
    p.voters.resize(voters);
    std::iota(p.voters.begin(), p.voters.end(), 0);
    p.ballots.reserve(voters);
    for (int i = 0; i < voters; ++i)
        p.ballots.push_back(space[detail::bounded(rng, space.size())]);
    return p;
}

enum class SearchMode { exhaustive, random };

/// Target and bounds for a violation search. Exhaustive mode walks the
/// anonymous enumeration; random mode samples `budget` seeded profiles with
/// 1..max_voters voters. An empty axiom means the Minimax-refinement target.
struct SearchSpec {
    MethodId method = MethodId::minimax;
    std::optional<AxiomId> axiom;
    int alternatives = 3;
    int max_voters = 5;
    BallotKind kind = BallotKind::linear;
    SearchMode mode = SearchMode::exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0; ///< random: profiles to sample; exhaustive: cap (0 = all)
    std::uint64_t offset = 0; ///< partition window start
    std::uint64_t limit = 0;  ///< partition window length (0 = rest)
    std::uint64_t stop_after = 0; ///< stop once this many witnesses found (0 = never)
    BallotKind pi_added_kind = BallotKind::linear;
    int anonymity_samples = 4;
};

struct SearchReport {
    std::uint64_t profiles_examined = 0;
    std::vector<AxiomWitness> witnesses;
    bool exhausted = false;
    double elapsed_seconds = 0.0;
};

namespace detail {

inline CheckResult check_target(const SearchSpec& spec, const Method& f, const Profile& p) {
    if (!spec.axiom) {
        const WinnerSet winners = f(p);
        const WinnerSet mm = minimax(p);
        if (winners.subset_of(mm)) return std::nullopt;
        AxiomWitness w;
        w.method = f.id;
        w.base = p;
        w.winners_before = winners;
        w.winners_after = mm;
        w.note = "winner set is not contained in the Minimax winner set";
        return w;
    }
    CheckOptions opt;
    opt.pi_added_kind = spec.pi_added_kind;
    opt.anonymity_samples = spec.anonymity_samples;
    return check_axiom(f, p, *spec.axiom, opt);
}

} // namespace detail

/// Runs the spec over its window single-threaded. Deterministic: identical
/// specs produce identical reports. Non-anonymous methods are rejected:
/// anonymous-class representatives do not stand for their whole class there,
/// so such methods are checked on explicit profiles instead.
inline SearchReport find_violation(const SearchSpec& spec) {
    const Method& f = method(spec.method);
    if (!f.anonymous)
        throw DomainError(std::string(f.name) +
                          " is not anonymous; class-based search does not cover it");
    const auto t0 = std::chrono::steady_clock::now();
    SearchReport report;

    auto visit = [&](const Profile& p) {
        ++report.profiles_examined;
        if (auto w = detail::check_target(spec, f, p)) report.witnesses.push_back(std::move(*w));
        return spec.stop_after == 0 || report.witnesses.size() < spec.stop_after;
    };

    if (spec.mode == SearchMode::exhaustive) {
        const std::uint64_t total = count_profiles(spec.alternatives, spec.max_voters, spec.kind);
        const std::uint64_t start = std::min(spec.offset, total);
        std::uint64_t window = total - start;
        if (spec.limit != 0) window = std::min(window, spec.limit);
        if (spec.budget != 0) window = std::min(window, spec.budget);
        enumerate_profiles(spec.alternatives, spec.max_voters, spec.kind, start, window, visit);
        report.exhausted = spec.offset == 0 && window == total &&
                           report.profiles_examined == total;
    } else {
        if (spec.budget == 0) throw DomainError("random search requires a budget");
        const std::uint64_t start = std::min(spec.offset, spec.budget);
        std::uint64_t end = spec.budget;
        if (spec.limit != 0) end = std::min(end, start + spec.limit);
        std::mt19937_64 pick(0);
        for (std::uint64_t i = start; i < end; ++i) {
            const std::uint64_t s = detail::stream_seed(spec.seed, i);
            pick.seed(s);
            const int voters = 1 + static_cast<int>(detail::bounded(pick, spec.max_voters));
            const Profile p =
                random_profile(detail::splitmix64(s), spec.alternatives, voters, spec.kind);
            if (!visit(p)) break;
        }
        report.exhausted = false;
    }

    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

/// Disjoint sub-specs covering the same search; the union of their witness
/// sets equals the serial report's.
inline std::vector<SearchSpec> partition(const SearchSpec& spec, int workers) {
    if (workers < 1) throw DomainError("worker count must be >= 1");
    std::uint64_t total;
    if (spec.mode == SearchMode::exhaustive) {
        total = count_profiles(spec.alternatives, spec.max_voters, spec.kind);
        if (spec.budget != 0) total = std::min(total, spec.budget);
    } else {
        total = spec.budget;
    }
    if (spec.limit != 0) total = std::min(total, spec.limit);
    std::vector<SearchSpec> parts;
    const std::uint64_t w = static_cast<std::uint64_t>(workers);
    for (std::uint64_t i = 0; i < w; ++i) {
        SearchSpec part = spec;
        part.offset = spec.offset + total * i / w;
        part.limit = spec.offset + total * (i + 1) / w - part.offset;
        if (part.limit == 0 && i > 0) continue;
        parts.push_back(part);
    }
    return parts;
}

/// Partitioned driver; witness order equals the serial enumeration order.
inline SearchReport run_search(const SearchSpec& spec, int workers = 1) {
    if (workers <= 1 || spec.stop_after != 0) return find_violation(spec);
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<SearchSpec> parts = partition(spec, workers);
    std::vector<SearchReport> reports(parts.size());
    std::vector<std::thread> threads;
    threads.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
        threads.emplace_back([&, i] { reports[i] = find_violation(parts[i]); });
    for (auto& th : threads) th.join();
    SearchReport merged;
    for (auto& r : reports) {
        merged.profiles_examined += r.profiles_examined;
        for (auto& w : r.witnesses) merged.witnesses.push_back(std::move(w));
    }
    if (spec.mode == SearchMode::exhaustive) {
        const std::uint64_t total = count_profiles(spec.alternatives, spec.max_voters, spec.kind);
        merged.exhausted = spec.offset == 0 && spec.limit == 0 && spec.budget == 0 &&
                           merged.profiles_examined == total;
    }
    merged.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return merged;
}

/// Reports every enumerated profile where the method's winners are not a
/// subset of the Minimax winners.
inline SearchReport verify_refines_minimax(MethodId id, int alternatives, int max_voters,
                                           BallotKind kind = BallotKind::linear,
                                           int workers = 1) {
    SearchSpec spec;
    spec.method = id;
    spec.axiom = std::nullopt;
    spec.alternatives = alternatives;
    spec.max_voters = max_voters;
    spec.kind = kind;
    spec.mode = SearchMode::exhaustive;
    return run_search(spec, workers);
}

/// Random search for ordinal-margin-invariance violations: each sample pairs
/// a random linear profile with a reweighted realization of the same ordinal
/// margin graph (distinct even margins, realized by canceling voter pairs).
struct PairSearchSpec {
    MethodId method = MethodId::kemeny;
    int alternatives = 4;
    std::uint64_t pairs = 100000;
    std::uint64_t seed = 0;
    std::uint64_t stop_after = 1;
    std::vector<int> voter_sizes = {3, 5, 7};
    int max_half_weight = 20;
};

inline SearchReport search_ordinal_invariance(const PairSearchSpec& spec) {
    const Method& f = method(spec.method);
    const auto t0 = std::chrono::steady_clock::now();
    const int m = spec.alternatives;
    SearchReport report;
    for (std::uint64_t i = 0; i < spec.pairs; ++i) {
        ++report.profiles_examined;
        const std::uint64_t s = detail::stream_seed(spec.seed, i);
        const int voters = spec.voter_sizes[i % spec.voter_sizes.size()];
        const Profile base = random_profile(s, m, voters, BallotKind::linear);
        const MarginGraph g = margin_graph(base);

        std::vector<int> values;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b && g.margin(a, b) > 0) values.push_back(g.margin(a, b));
        std::sort(values.begin(), values.end(), std::greater<>());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.empty()) continue;

        // strictly decreasing even replacement weights
        std::mt19937_64 rng(detail::splitmix64(s));
        std::vector<int> fresh;
        while (static_cast<int>(fresh.size()) < static_cast<int>(values.size())) {
            int w = 2 * (1 + static_cast<int>(detail::bounded(rng, spec.max_half_weight)));
            if (std::find(fresh.begin(), fresh.end(), w) == fresh.end()) fresh.push_back(w);
        }
        std::sort(fresh.begin(), fresh.end(), std::greater<>());

        // reweighted margin graph, realized by margin-neutral voter pairs
        Profile mate;
        mate.labels = base.labels;
        int next_voter = 0;
        std::vector<int> rest;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (a == b || g.margin(a, b) <= 0) continue;
                const int idx = static_cast<int>(
                    std::find(values.begin(), values.end(), g.margin(a, b)) - values.begin());
                const int weight = fresh[idx];
                rest.clear();
                for (int c = 0; c < m; ++c)
                    if (c != a && c != b) rest.push_back(c);
                std::vector<int> up = {a, b};
                up.insert(up.end(), rest.begin(), rest.end());
                std::vector<int> down(rest.rbegin(), rest.rend());
                down.push_back(a);
                down.push_back(b);
                const Ballot b1 = Ballot::from_order(up);
                const Ballot b2 = Ballot::from_order(down);
                for (int c = 0; c < weight / 2; ++c) {
                    mate.voters.push_back(next_voter++);
                    mate.ballots.push_back(b1);
                    mate.voters.push_back(next_voter++);
                    mate.ballots.push_back(b2);
                }
            }
        if (mate.ballots.empty()) continue;

        if (auto w = check_ordinal_margin_invariance(f, base, mate)) {
            report.witnesses.push_back(std::move(*w));
            if (spec.stop_after != 0 && report.witnesses.size() >= spec.stop_after) break;
        }
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace tally

#pragma once

#include <optional>
#include <random>

#include "tally/methods.hpp"
#include "tally/transforms.hpp"

namespace tally {

enum class AxiomId {
    anonymity,
    neutrality,
    weak_positive_responsiveness,
    positive_responsiveness_full,
    positive_involvement,
    immunity_to_spoilers,
    near_immunity_to_spoilers,
    homogeneity,
    block_preservation,
    condorcet_consistency,
    condorcet_loser_criterion,
    smith_criterion,
    resolvability_uw,
    ordinal_margin_invariance,
};

inline std::string_view axiom_name(AxiomId a) {
    switch (a) {
    case AxiomId::anonymity: return "anonymity";
    case AxiomId::neutrality: return "neutrality";
    case AxiomId::weak_positive_responsiveness: return "weak-positive-responsiveness";
    case AxiomId::positive_responsiveness_full: return "positive-responsiveness-full";
    case AxiomId::positive_involvement: return "positive-involvement";
    case AxiomId::immunity_to_spoilers: return "immunity-to-spoilers";
    case AxiomId::near_immunity_to_spoilers: return "near-immunity-to-spoilers";
    case AxiomId::homogeneity: return "homogeneity";
    case AxiomId::block_preservation: return "block-preservation";
    case AxiomId::condorcet_consistency: return "condorcet-consistency";
    case AxiomId::condorcet_loser_criterion: return "condorcet-loser-criterion";
    case AxiomId::smith_criterion: return "smith-criterion";
    case AxiomId::resolvability_uw: return "resolvability-uw";
    case AxiomId::ordinal_margin_invariance: return "ordinal-margin-invariance";
    }
    return "?";
}

inline std::optional<AxiomId> axiom_from_name(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(AxiomId::ordinal_margin_invariance); ++i)
        if (axiom_name(static_cast<AxiomId>(i)) == s) return static_cast<AxiomId>(i);
    return std::nullopt;
}

/// A certified violation: replaying the transform on the base profile and
/// re-evaluating the method reproduces the recorded winner sets and the
/// broken implication. `axiom` is empty for refinement violations.
struct AxiomWitness {
    std::optional<AxiomId> axiom;
    MethodId method = MethodId::minimax;
    Profile base;
    std::optional<TransformRecord> transform;
    std::optional<Profile> other; ///< second profile for invariance axioms
    WinnerSet winners_before;
    WinnerSet winners_after;
    std::string note;

    bool is_refinement() const { return !axiom.has_value(); }
};

using CheckResult = std::optional<AxiomWitness>;

namespace detail {

inline AxiomWitness make_witness(AxiomId axiom, const Method& f, const Profile& base,
                                 TransformRecord t, WinnerSet before, WinnerSet after,
                                 std::string note) {
    AxiomWitness w;
    w.axiom = axiom;
    w.method = f.id;
    w.base = base;
    w.transform = std::move(t);
    w.winners_before = before;
    w.winners_after = after;
    w.note = std::move(note);
    return w;
}

} // namespace detail

/// Weak positive responsiveness: a winner moved by one voter from uniquely
/// last to uniquely first must become the unique winner.
inline CheckResult check_wpr(const Method& f, const Profile& p) {
    const WinnerSet winners = f(p);
    const int m = p.num_alternatives();
    for (int a : winners.to_vector())
        for (int i = 0; i < p.num_voters(); ++i) {
            if (!ranks_uniquely_last(p.ballots[i], m, a)) continue;
            TransformRecord t;
            t.kind = TransformKind::move_last_to_first;
            t.voter = p.voters[i];
            t.alt = a;
            const Profile moved = apply_transform(t, p);
            const WinnerSet after = f(moved);
            if (after != WinnerSet::of({a}))
                return detail::make_witness(
                    AxiomId::weak_positive_responsiveness, f, p, std::move(t), winners, after,
                    "winner " + p.labels[a] + " moved last-to-first is not the unique winner");
        }
    return std::nullopt;
}

/// Positive involvement: adding one voter ranking a winner uniquely first
/// keeps that winner winning. Added ballots range over the given kind.
inline CheckResult check_positive_involvement(const Method& f, const Profile& p,
                                              BallotKind added_kind = BallotKind::linear) {
    const WinnerSet winners = f(p);
    const int m = p.num_alternatives();
    for (int a : winners.to_vector())
        for (const Ballot& b : ballot_space(m, added_kind)) {
            if (!ranks_uniquely_first(b, m, a)) continue;
            TransformRecord t;
            t.kind = TransformKind::add_voter;
            t.ballot = b;
            const Profile grown = apply_transform(t, p);
            const WinnerSet after = f(grown);
            if (!after.contains(a))
                return detail::make_witness(
                    AxiomId::positive_involvement, f, p, std::move(t), winners, after,
                    "adding a voter ranking " + p.labels[a] + " uniquely first dethrones it");
        }
    return std::nullopt;
}

/// Immunity to spoilers on three-alternative profiles. With near = true the
/// premise requires the spoiled alternative to win alone without the
/// spoiler.
inline CheckResult check_immunity(const Method& f, const Profile& p, bool near) {
    if (p.num_alternatives() != 3)
        throw DomainError("immunity check is scoped to exactly 3 alternatives");
    const WinnerSet winners = f(p);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            if (winners.contains(b) || winners.contains(a)) continue;
            const Profile p_minus_b = remove_alternative(p, b);
            const int a_in_minus = a - (a > b ? 1 : 0);
            const WinnerSet without = f(p_minus_b);
            if (near ? (without != WinnerSet::of({a_in_minus})) : !without.contains(a_in_minus))
                continue;
            AltSet pair = AltSet::of({a, b});
            const Profile head_to_head = restrict_to(p, pair);
            const int a_in_pair = a < b ? 0 : 1;
            if (f(head_to_head) != WinnerSet::of({a_in_pair})) continue;
            TransformRecord t;
            t.kind = TransformKind::remove_alt;
            t.alt = b;
            t.alt2 = a;
            return detail::make_witness(
                near ? AxiomId::near_immunity_to_spoilers : AxiomId::immunity_to_spoilers, f, p,
                std::move(t), winners, without,
                p.labels[a] + " wins without " + p.labels[b] + " and beats it head-to-head, yet " +
                    p.labels[b] + " spoils it");
        }
    return std::nullopt;
}

/// Homogeneity (inclusion form): F(P) must be contained in F(2P).
inline CheckResult check_homogeneity(const Method& f, const Profile& p) {
    const WinnerSet winners = f(p);
    TransformRecord t;
    t.kind = TransformKind::scale;
    t.factor = 2;
    const WinnerSet doubled = f(apply_transform(t, p));
    if (!winners.subset_of(doubled))
        return detail::make_witness(AxiomId::homogeneity, f, p, std::move(t), winners, doubled,
                                    "a winner is lost when the profile is doubled");
    return std::nullopt;
}

/// Block preservation: F(P) must be contained in F(P + one voter per linear
/// order).
inline CheckResult check_block_preservation(const Method& f, const Profile& p) {
    const WinnerSet winners = f(p);
    TransformRecord t;
    t.kind = TransformKind::add_block;
    const WinnerSet extended = f(apply_transform(t, p));
    if (!winners.subset_of(extended))
        return detail::make_witness(AxiomId::block_preservation, f, p, std::move(t), winners,
                                    extended, "a winner is lost when a full block of orders is added");
    return std::nullopt;
}

/// Anonymity: winner set invariant under renaming voters. Checked against
/// the canonical form plus `samples` deterministic random permutations.
inline CheckResult check_anonymity(const Method& f, const Profile& p, int samples = 4) {
    const WinnerSet winners = f(p);
    {
        // Renaming that realizes the canonical form: the voter at position i
        // receives its ballot's rank in the sorted ballot order.
        std::vector<int> order(p.num_voters());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return ballot_less(p.ballots[x], p.ballots[y]);
        });
        std::vector<int> perm(p.num_voters());
        for (int rank = 0; rank < p.num_voters(); ++rank) perm[order[rank]] = rank;
        TransformRecord t;
        t.kind = TransformKind::permute_voters;
        t.perm = perm;
        const WinnerSet after = f(apply_transform(t, p));
        if (after != winners)
            return detail::make_witness(AxiomId::anonymity, f, p, std::move(t), winners, after,
                                        "winner set changes under canonical renumbering");
    }
    std::mt19937_64 rng(0x414e4f4eull ^ (static_cast<std::uint64_t>(p.num_voters()) << 32));
    for (int s = 0; s < samples; ++s) {
        std::vector<int> perm = p.voters;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng() % i]);
        TransformRecord t;
        t.kind = TransformKind::permute_voters;
        t.perm = perm;
        const WinnerSet after = f(apply_transform(t, p));
        if (after != winners)
            return detail::make_witness(AxiomId::anonymity, f, p, std::move(t), winners, after,
                                        "winner set changes under a voter permutation");
    }
    return std::nullopt;
}

/// Neutrality: relabeling alternatives by tau maps the winner set by tau.
/// Exact over all |X|! permutations.
inline CheckResult check_neutrality(const Method& f, const Profile& p) {
    const WinnerSet winners = f(p);
    const int m = p.num_alternatives();
    std::vector<int> tau(m);
    std::iota(tau.begin(), tau.end(), 0);
    do {
        TransformRecord t;
        t.kind = TransformKind::permute_alts;
        t.perm = tau;
        const WinnerSet after = f(apply_transform(t, p));
        if (after != map_alt_set(winners, tau))
            return detail::make_witness(AxiomId::neutrality, f, p, std::move(t), winners, after,
                                        "winner set does not follow an alternative relabeling");
    } while (std::next_permutation(tau.begin(), tau.end()));
    return std::nullopt;
}

/// Full positive responsiveness: any single-step improvement of a winner on
/// one ballot makes it the unique winner.
inline CheckResult check_positive_responsiveness_full(const Method& f, const Profile& p) {
    const WinnerSet winners = f(p);
    for (int a : winners.to_vector())
        for (int i = 0; i < p.num_voters(); ++i)
            for (const ImproveStep& step : improve(p, p.voters[i], a)) {
                const WinnerSet after = f(step.profile);
                if (after != WinnerSet::of({a})) {
                    TransformRecord t;
                    t.kind = TransformKind::improve;
                    t.voter = step.voter;
                    t.alt = step.target;
                    t.alt2 = step.over;
                    t.pair_added = step.added;
                    return detail::make_witness(
                        AxiomId::positive_responsiveness_full, f, p, std::move(t), winners, after,
                        "improving winner " + p.labels[a] + " does not make it the unique winner");
                }
            }
    return std::nullopt;
}

/// Winner-set criteria evaluated against the margin structure of a single
/// profile.
inline CheckResult check_criterion(const Method& f, const Profile& p, AxiomId criterion) {
    const WinnerSet winners = f(p);
    auto witness = [&](WinnerSet reference, std::string note) {
        AxiomWitness w;
        w.axiom = criterion;
        w.method = f.id;
        w.base = p;
        w.winners_before = winners;
        w.winners_after = reference;
        w.note = std::move(note);
        return w;
    };
    switch (criterion) {
    case AxiomId::condorcet_consistency: {
        const auto cw = condorcet_winner(p);
        if (cw && winners != WinnerSet::of({*cw}))
            return witness(WinnerSet::of({*cw}),
                           "the Condorcet winner is not selected uniquely");
        return std::nullopt;
    }
    case AxiomId::condorcet_loser_criterion: {
        const auto cl = condorcet_loser(p);
        if (cl && winners.contains(*cl))
            return witness(WinnerSet::of({*cl}), "a Condorcet loser is selected");
        return std::nullopt;
    }
    case AxiomId::smith_criterion: {
        const AltSet smith = smith_set(p);
        if (!winners.subset_of(smith))
            return witness(smith, "a winner falls outside the Smith set");
        return std::nullopt;
    }
    case AxiomId::resolvability_uw: {
        if (is_uniquely_weighted(p) && winners.size() != 1)
            return witness(winners, "a uniquely-weighted profile has a tied winner set");
        return std::nullopt;
    }
    default: throw DomainError("not a single-profile criterion");
    }
}

/// Ordinal margin invariance over a pair: equal ordinal margin graphs must
/// give equal winner sets. Vacuous when the graphs differ.
inline CheckResult check_ordinal_margin_invariance(const Method& f, const Profile& a,
                                                   const Profile& b) {
    if (a.labels != b.labels) return std::nullopt;
    if (!(ordinal_margin_graph(a) == ordinal_margin_graph(b))) return std::nullopt;
    const WinnerSet wa = f(a), wb = f(b);
    if (wa == wb) return std::nullopt;
    AxiomWitness w;
    w.axiom = AxiomId::ordinal_margin_invariance;
    w.method = f.id;
    w.base = a;
    w.other = b;
    w.winners_before = wa;
    w.winners_after = wb;
    w.note = "equal ordinal margin graphs, different winner sets";
    return w;
}

struct CheckOptions {
    BallotKind pi_added_kind = BallotKind::linear;
    int anonymity_samples = 4;
};

/// Single-profile dispatcher used by the CLI and the search driver. For
/// ordinal margin invariance the profile is paired with its own scalings
/// (5P and P + block), which leave the ordinal margin graph unchanged.
inline CheckResult check_axiom(const Method& f, const Profile& p, AxiomId axiom,
                               const CheckOptions& opt = {}) {
    switch (axiom) {
    case AxiomId::anonymity: return check_anonymity(f, p, opt.anonymity_samples);
    case AxiomId::neutrality: return check_neutrality(f, p);
    case AxiomId::weak_positive_responsiveness: return check_wpr(f, p);
    case AxiomId::positive_responsiveness_full: return check_positive_responsiveness_full(f, p);
    case AxiomId::positive_involvement:
        return check_positive_involvement(f, p, opt.pi_added_kind);
    case AxiomId::immunity_to_spoilers: return check_immunity(f, p, false);
    case AxiomId::near_immunity_to_spoilers: return check_immunity(f, p, true);
    case AxiomId::homogeneity: return check_homogeneity(f, p);
    case AxiomId::block_preservation: return check_block_preservation(f, p);
    case AxiomId::condorcet_consistency:
    case AxiomId::condorcet_loser_criterion:
    case AxiomId::smith_criterion:
    case AxiomId::resolvability_uw: return check_criterion(f, p, axiom);
    case AxiomId::ordinal_margin_invariance: {
        if (auto w = check_ordinal_margin_invariance(f, p, scale(p, 5))) return w;
        return check_ordinal_margin_invariance(f, p, add_block(p));
    }
    }
    throw DomainError("unknown axiom id");
}

/// Re-derives a witness from its recorded ingredients: recomputes both
/// winner sets and re-checks that the axiom's implication is broken.
inline bool verify_witness(const AxiomWitness& w) {
    const Method& f = method(w.method);
    if (w.is_refinement()) {
        const WinnerSet winners = f(w.base);
        return winners == w.winners_before && minimax(w.base) == w.winners_after &&
               !winners.subset_of(w.winners_after);
    }
    switch (*w.axiom) {
    case AxiomId::weak_positive_responsiveness: {
        if (!w.transform) return false;
        const WinnerSet before = f(w.base);
        const WinnerSet after = f(apply_transform(*w.transform, w.base));
        return before == w.winners_before && after == w.winners_after &&
               before.contains(w.transform->alt) && after != WinnerSet::of({w.transform->alt});
    }
    case AxiomId::positive_involvement: {
        if (!w.transform || !w.transform->ballot) return false;
        const int m = w.base.num_alternatives();
        int first = -1;
        for (int a = 0; a < m; ++a)
            if (ranks_uniquely_first(*w.transform->ballot, m, a)) first = a;
        if (first < 0) return false;
        const WinnerSet before = f(w.base);
        const WinnerSet after = f(apply_transform(*w.transform, w.base));
        return before == w.winners_before && after == w.winners_after &&
               before.contains(first) && !after.contains(first);
    }
    case AxiomId::immunity_to_spoilers:
    case AxiomId::near_immunity_to_spoilers: {
        if (!w.transform) return false;
        const int b = w.transform->alt, a = w.transform->alt2;
        const bool near = *w.axiom == AxiomId::near_immunity_to_spoilers;
        const WinnerSet winners = f(w.base);
        const Profile p_minus_b = remove_alternative(w.base, b);
        const int a_in_minus = a - (a > b ? 1 : 0);
        const WinnerSet without = f(p_minus_b);
        const Profile head = restrict_to(w.base, AltSet::of({a, b}));
        const int a_in_pair = a < b ? 0 : 1;
        const bool premise =
            (near ? without == WinnerSet::of({a_in_minus}) : without.contains(a_in_minus)) &&
            f(head) == WinnerSet::of({a_in_pair}) && !winners.contains(b);
        return winners == w.winners_before && without == w.winners_after && premise &&
               !winners.contains(a);
    }
    case AxiomId::homogeneity:
    case AxiomId::block_preservation: {
        if (!w.transform) return false;
        const WinnerSet before = f(w.base);
        const WinnerSet after = f(apply_transform(*w.transform, w.base));
        return before == w.winners_before && after == w.winners_after &&
               !before.subset_of(after);
    }
    case AxiomId::anonymity: {
        if (!w.transform) return false;
        const WinnerSet before = f(w.base);
        const WinnerSet after = f(apply_transform(*w.transform, w.base));
        return before == w.winners_before && after == w.winners_after && before != after;
    }
    case AxiomId::neutrality: {
        if (!w.transform) return false;
        const WinnerSet before = f(w.base);
        const WinnerSet after = f(apply_transform(*w.transform, w.base));
        return before == w.winners_before && after == w.winners_after &&
               after != map_alt_set(before, w.transform->perm);
    }
    case AxiomId::positive_responsiveness_full: {
        if (!w.transform) return false;
        const WinnerSet before = f(w.base);
        const WinnerSet after = f(apply_transform(*w.transform, w.base));
        return before == w.winners_before && after == w.winners_after &&
               before.contains(w.transform->alt) &&
               after != WinnerSet::of({w.transform->alt});
    }
    case AxiomId::condorcet_consistency:
    case AxiomId::condorcet_loser_criterion:
    case AxiomId::smith_criterion:
    case AxiomId::resolvability_uw: {
        auto again = check_criterion(f, w.base, *w.axiom);
        return again && again->winners_before == w.winners_before &&
               again->winners_after == w.winners_after;
    }
    case AxiomId::ordinal_margin_invariance: {
        if (!w.other) return false;
        auto again = check_ordinal_margin_invariance(f, w.base, *w.other);
        return again && again->winners_before == w.winners_before &&
               again->winners_after == w.winners_after;
    }
    }
    return false;
}

} // namespace tally

#pragma once

#include <memory>
#include <optional>

#include "tally/profile.hpp"

namespace tally {

enum class TransformKind {
    restrict_alts,
    remove_alt,
    concat,
    scale,
    add_block,
    add_voter,
    move_last_to_first,
    improve,
    permute_voters,
    permute_alts,
};

inline std::string_view transform_kind_name(TransformKind k) {
    switch (k) {
    case TransformKind::restrict_alts: return "restrict";
    case TransformKind::remove_alt: return "remove-alt";
    case TransformKind::concat: return "concat";
    case TransformKind::scale: return "scale";
    case TransformKind::add_block: return "add-block";
    case TransformKind::add_voter: return "add-voter";
    case TransformKind::move_last_to_first: return "move-last-to-first";
    case TransformKind::improve: return "improve";
    case TransformKind::permute_voters: return "permute-voters";
    case TransformKind::permute_alts: return "permute-alts";
    }
    return "?";
}

/// Replayable description of a profile transformation; the fields used
/// depend on the kind.
struct TransformRecord {
    TransformKind kind = TransformKind::scale;
    AltSet alt_subset;                     // restrict
    int alt = -1;                          // remove-alt / move target / improve target
    int alt2 = -1;                         // improve's opponent
    int voter = -1;                        // move-last-to-first / improve
    int factor = 1;                        // scale
    bool pair_added = false;               // improve step type
    std::optional<Ballot> ballot;          // add-voter
    std::shared_ptr<const Profile> other;  // concat operand
    std::vector<int> perm;                 // voter ids / alternative images
};

/// Each ballot's relation intersected with Y x Y; voters unchanged.
/// Alternative indices are renumbered to 0..|Y|-1 preserving order.
inline Profile restrict_to(const Profile& p, AltSet y) {
    const int m = p.num_alternatives();
    if (y.empty() || !(y.subset_of(AltSet::all(m))) || y == AltSet::all(m))
        throw DomainError("restriction set must be a nonempty proper subset");
    const std::vector<int> keep = y.to_vector();
    Profile out;
    for (int a : keep) out.labels.push_back(p.labels[a]);
    out.voters = p.voters;
    out.ballots.reserve(p.ballots.size());
    for (const Ballot& b : p.ballots) {
        Ballot nb;
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                if (i != j && b.ranks_above(keep[i], keep[j]))
                    nb.add(static_cast<int>(i), static_cast<int>(j));
        out.ballots.push_back(nb);
    }
    return out;
}

inline Profile remove_alternative(const Profile& p, int b) {
    p.require_alternative(b);
    AltSet y = AltSet::all(p.num_alternatives());
    y.remove(b);
    return restrict_to(p, y);
}

namespace detail {

/// Fresh ids for `count` new voters: the smallest nonnegative integers not
/// already used, in increasing order.
inline std::vector<int> fresh_voter_ids(const Profile& p, int count) {
    std::vector<int> used = p.voters;
    std::sort(used.begin(), used.end());
    std::vector<int> out;
    int next = 0;
    std::size_t i = 0;
    while (static_cast<int>(out.size()) < count) {
        while (i < used.size() && used[i] < next) ++i;
        if (i < used.size() && used[i] == next) {
            ++next;
            continue;
        }
        out.push_back(next++);
    }
    return out;
}

} // namespace detail

/// Combined profile: a's voters keep their ids, b's voters (taken in
/// increasing id order) are renumbered onto the smallest free ids.
inline Profile concat(const Profile& a, const Profile& b) {
    if (a.labels != b.labels) throw DomainError("concat requires identical alternative lists");
    Profile out = a;
    std::vector<int> order(b.num_voters());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return b.voters[x] < b.voters[y]; });
    const std::vector<int> fresh = detail::fresh_voter_ids(a, b.num_voters());
    for (int i = 0; i < b.num_voters(); ++i) {
        out.voters.push_back(fresh[i]);
        out.ballots.push_back(b.ballots[order[i]]);
    }
    return out;
}

/// n disjoint copies of p; margins scale by n.
inline Profile scale(const Profile& p, int n) {
    if (n < 1) throw DomainError("scale factor must be >= 1");
    Profile out = p;
    for (int i = 1; i < n; ++i) out = concat(out, p);
    return out;
}

/// One voter per linear order of the alternatives, as a standalone profile.
inline Profile block_profile(const std::vector<std::string>& labels) {
    Profile out;
    out.labels = labels;
    const auto& space = ballot_space(static_cast<int>(labels.size()), BallotKind::linear);
    for (std::size_t i = 0; i < space.size(); ++i) {
        out.voters.push_back(static_cast<int>(i));
        out.ballots.push_back(space[i]);
    }
    return out;
}

/// Appends |X|! fresh voters, one per linear order; margins are unchanged.
inline Profile add_block(const Profile& p) { return concat(p, block_profile(p.labels)); }

/// Appends one fresh voter with the given ballot.
inline Profile add_voter(const Profile& p, Ballot ballot) {
    Profile out = p;
    out.voters.push_back(detail::fresh_voter_ids(p, 1)[0]);
    out.ballots.push_back(ballot);
    return out;
}

/// The voter, who must rank a uniquely last, switches to ranking a uniquely
/// first; their relation on the other alternatives is kept verbatim.
inline Profile move_last_to_first(const Profile& p, int voter_id, int a) {
    p.require_alternative(a);
    const int pos = p.voter_position(voter_id);
    const int m = p.num_alternatives();
    if (!ranks_uniquely_last(p.ballots[pos], m, a))
        throw DomainError("voter does not rank the alternative uniquely last");
    Profile out = p;
    Ballot b = out.ballots[pos];
    for (int x = 0; x < m; ++x)
        if (x != a) {
            b.remove(x, a);
            b.add(a, x);
        }
    out.ballots[pos] = b;
    return out;
}

/// One single-step simple improvement of a on one ballot.
struct ImproveStep {
    Profile profile;
    int voter = -1;
    int target = -1;   ///< the improved alternative a
    int over = -1;     ///< the opponent b of the toggled pair
    bool added = false; ///< true: added (a,b); false: removed (b,a)
};

/// All single-step improvements of a on the voter's ballot: add one missing
/// pair (a,b) or delete one present pair (b,a), leaving all else fixed.
/// Empty when a is already ranked uniquely first.
inline std::vector<ImproveStep> improve(const Profile& p, int voter_id, int a) {
    p.require_alternative(a);
    const int pos = p.voter_position(voter_id);
    const int m = p.num_alternatives();
    const Ballot base = p.ballots[pos];
    std::vector<ImproveStep> out;
    for (int b = 0; b < m; ++b) {
        if (b == a) continue;
        if (!base.ranks_above(a, b)) {
            ImproveStep step{p, voter_id, a, b, true};
            step.profile.ballots[pos] = Ballot(base).add(a, b);
            out.push_back(std::move(step));
        }
        if (base.ranks_above(b, a)) {
            ImproveStep step{p, voter_id, a, b, false};
            step.profile.ballots[pos] = Ballot(base).remove(b, a);
            out.push_back(std::move(step));
        }
    }
    return out;
}

/// Renames voters: position i gets the new id perm[i]; ballots stay with
/// their voters.
inline Profile permute_voters(const Profile& p, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != p.num_voters())
        throw DomainError("voter permutation has wrong size");
    std::vector<int> check = perm;
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end())
        throw DomainError("voter permutation is not injective");
    for (int v : check)
        if (v < 0) throw DomainError("negative voter id in permutation");
    Profile out = p;
    out.voters = perm;
    return out;
}

/// Relabels alternatives: (a,b) in the old ballot iff (tau[a],tau[b]) in
/// the new one.
inline Profile permute_alternatives(const Profile& p, const std::vector<int>& tau) {
    const int m = p.num_alternatives();
    if (static_cast<int>(tau.size()) != m) throw DomainError("alternative permutation has wrong size");
    std::vector<int> check = tau;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < m; ++i)
        if (check[i] != i) throw DomainError("alternative permutation is not a bijection");
    Profile out = p;
    for (std::size_t v = 0; v < p.ballots.size(); ++v) {
        Ballot nb;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b && p.ballots[v].ranks_above(a, b)) nb.add(tau[a], tau[b]);
        out.ballots[v] = nb;
    }
    return out;
}

inline AltSet map_alt_set(AltSet s, const std::vector<int>& tau) {
    AltSet out;
    for (int a : s.to_vector()) out.add(tau[a]);
    return out;
}

/// Replays a transform record against its source profile.
inline Profile apply_transform(const TransformRecord& t, const Profile& p) {
    switch (t.kind) {
    case TransformKind::restrict_alts: return restrict_to(p, t.alt_subset);
    case TransformKind::remove_alt: return remove_alternative(p, t.alt);
    case TransformKind::concat:
        if (!t.other) throw DomainError("concat record lacks its operand");
        return concat(p, *t.other);
    case TransformKind::scale: return scale(p, t.factor);
    case TransformKind::add_block: return add_block(p);
    case TransformKind::add_voter:
        if (!t.ballot) throw DomainError("add-voter record lacks its ballot");
        return add_voter(p, *t.ballot);
    case TransformKind::move_last_to_first: return move_last_to_first(p, t.voter, t.alt);
    case TransformKind::improve: {
        for (const ImproveStep& step : improve(p, t.voter, t.alt))
            if (step.over == t.alt2 && step.added == t.pair_added) return step.profile;
        throw DomainError("improve record does not match any single-step improvement");
    }
    case TransformKind::permute_voters: return permute_voters(p, t.perm);
    case TransformKind::permute_alts: return permute_alternatives(p, t.perm);
    }
    throw DomainError("unknown transform kind");
}

} // namespace tally

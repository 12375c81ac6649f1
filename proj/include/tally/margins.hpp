#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "tally/profile.hpp"

namespace tally {

/// Complete antisymmetric margin matrix over a profile's alternatives.
/// Stored complete (zero and negative entries included); the positive-edge
/// graph of the figures is a view on it.
class MarginGraph {
public:
    explicit MarginGraph(int m) : m_(m) {
        if (m < 1 || m > Ballot::kMaxAlternatives)
            throw DomainError("margin graph supports 1..5 alternatives");
        v_.fill(0);
    }

    static MarginGraph of(const Profile& p);

    int size() const { return m_; }

    int margin(int a, int b) const {
        check(a, b);
        return v_[a * Ballot::kStride + b];
    }

    /// Sets margin(a,b) = v and margin(b,a) = -v.
    MarginGraph& set_margin(int a, int b, int v) {
        check(a, b);
        v_[a * Ballot::kStride + b] = v;
        v_[b * Ballot::kStride + a] = -v;
        return *this;
    }

    friend bool operator==(const MarginGraph& x, const MarginGraph& y) {
        if (x.m_ != y.m_) return false;
        for (int a = 0; a < x.m_; ++a)
            for (int b = 0; b < x.m_; ++b)
                if (a != b && x.margin(a, b) != y.margin(a, b)) return false;
        return true;
    }

private:
    void check(int a, int b) const {
        if (a < 0 || b < 0 || a >= m_ || b >= m_) throw DomainError("alternative out of range");
        if (a == b) throw DomainError("margin requires distinct alternatives");
    }

    int m_;
    std::array<int, Ballot::kStride * Ballot::kStride> v_{};
};

/// Count of voters ranking a above b.
inline int support(const Profile& p, int a, int b) {
    p.require_alternative(a);
    p.require_alternative(b);
    if (a == b) throw DomainError("support requires distinct alternatives");
    int s = 0;
    for (const Ballot& bal : p.ballots) s += bal.ranks_above(a, b);
    return s;
}

/// Voters ranking a above b minus voters ranking b above a.
inline int margin(const Profile& p, int a, int b) {
    p.require_alternative(a);
    p.require_alternative(b);
    if (a == b) throw DomainError("margin requires distinct alternatives");
    int s = 0;
    for (const Ballot& bal : p.ballots) s += bal.ranks_above(a, b) - bal.ranks_above(b, a);
    return s;
}

inline MarginGraph MarginGraph::of(const Profile& p) {
    MarginGraph g(p.num_alternatives());
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b) g.set_margin(a, b, tally::margin(p, a, b));
    return g;
}

inline MarginGraph margin_graph(const Profile& p) { return MarginGraph::of(p); }

/// Positive-margin edges only, weighted by the weak order of their margins
/// (rank 0 = largest margin, equal margins share a rank).
struct OrdinalEdge {
    int from, to, rank;
    friend bool operator==(const OrdinalEdge&, const OrdinalEdge&) = default;
    friend auto operator<=>(const OrdinalEdge&, const OrdinalEdge&) = default;
};

class OrdinalMarginGraph {
public:
    explicit OrdinalMarginGraph(const MarginGraph& g) : m_(g.size()) {
        std::vector<int> weights;
        for (int a = 0; a < m_; ++a)
            for (int b = 0; b < m_; ++b)
                if (a != b && g.margin(a, b) > 0) weights.push_back(g.margin(a, b));
        std::sort(weights.begin(), weights.end(), std::greater<>());
        weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
        for (int a = 0; a < m_; ++a)
            for (int b = 0; b < m_; ++b)
                if (a != b && g.margin(a, b) > 0) {
                    int rank = static_cast<int>(
                        std::find(weights.begin(), weights.end(), g.margin(a, b)) -
                        weights.begin());
                    edges_.push_back({a, b, rank});
                }
        std::sort(edges_.begin(), edges_.end());
    }

    int size() const { return m_; }
    const std::vector<OrdinalEdge>& edges() const { return edges_; }

    friend bool operator==(const OrdinalMarginGraph& x, const OrdinalMarginGraph& y) {
        return x.m_ == y.m_ && x.edges_ == y.edges_;
    }

private:
    int m_;
    std::vector<OrdinalEdge> edges_;
};

inline OrdinalMarginGraph ordinal_margin_graph(const MarginGraph& g) {
    return OrdinalMarginGraph(g);
}
inline OrdinalMarginGraph ordinal_margin_graph(const Profile& p) {
    return OrdinalMarginGraph(margin_graph(p));
}

/// Alternative with a positive margin over every other one, if any.
inline std::optional<int> condorcet_winner(const MarginGraph& g) {
    for (int a = 0; a < g.size(); ++a) {
        bool ok = true;
        for (int b = 0; b < g.size() && ok; ++b)
            if (b != a && g.margin(a, b) <= 0) ok = false;
        if (ok) return a;
    }
    return std::nullopt;
}
inline std::optional<int> condorcet_winner(const Profile& p) {
    return condorcet_winner(margin_graph(p));
}

/// Alternatives with non-negative margins over every other one.
inline AltSet weak_condorcet_winners(const MarginGraph& g) {
    AltSet s;
    for (int a = 0; a < g.size(); ++a) {
        bool ok = true;
        for (int b = 0; b < g.size() && ok; ++b)
            if (b != a && g.margin(a, b) < 0) ok = false;
        if (ok) s.add(a);
    }
    return s;
}
inline AltSet weak_condorcet_winners(const Profile& p) {
    return weak_condorcet_winners(margin_graph(p));
}

/// Alternative with negative margins versus every other one, if any.
inline std::optional<int> condorcet_loser(const MarginGraph& g) {
    for (int a = 0; a < g.size(); ++a) {
        bool ok = g.size() > 1;
        for (int b = 0; b < g.size() && ok; ++b)
            if (b != a && g.margin(a, b) >= 0) ok = false;
        if (ok) return a;
    }
    return std::nullopt;
}
inline std::optional<int> condorcet_loser(const Profile& p) {
    return condorcet_loser(margin_graph(p));
}

/// Smallest set whose members all have positive margins over every outsider.
/// Computed by dominance closure from a Copeland winner.
inline AltSet smith_set(const MarginGraph& g) {
    const int m = g.size();
    int best = 0, best_score = -2 * m;
    for (int a = 0; a < m; ++a) {
        int score = 0;
        for (int b = 0; b < m; ++b)
            if (b != a) score += (g.margin(a, b) > 0) - (g.margin(a, b) < 0);
        if (score > best_score) {
            best = a;
            best_score = score;
        }
    }
    AltSet s = AltSet::of({best});
    bool grew = true;
    while (grew) {
        grew = false;
        for (int t = 0; t < m; ++t) {
            if (s.contains(t)) continue;
            for (int in = 0; in < m; ++in)
                if (s.contains(in) && g.margin(t, in) >= 0) {
                    s.add(t);
                    grew = true;
                    break;
                }
        }
    }
    return s;
}
inline AltSet smith_set(const Profile& p) { return smith_set(margin_graph(p)); }

/// Alternatives a such that for any rival b there is some c with
/// margin(c,b) >= margin(b,a).
inline AltSet defensible_set(const MarginGraph& g) {
    const int m = g.size();
    AltSet s;
    for (int a = 0; a < m; ++a) {
        bool defensible = true;
        for (int b = 0; b < m && defensible; ++b) {
            if (b == a) continue;
            bool countered = false;
            for (int c = 0; c < m && !countered; ++c)
                if (c != b && g.margin(c, b) >= g.margin(b, a)) countered = true;
            defensible = countered;
        }
        if (defensible) s.add(a);
    }
    return s;
}
inline AltSet defensible_set(const Profile& p) { return defensible_set(margin_graph(p)); }

/// True iff all pairwise contests have pairwise-distinct margins; a zero
/// margin anywhere already ties a pair with its own reverse.
inline bool is_uniquely_weighted(const MarginGraph& g) {
    const int m = g.size();
    std::vector<int> mags;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            int v = g.margin(a, b);
            if (v == 0) return false;
            mags.push_back(v < 0 ? -v : v);
        }
    std::sort(mags.begin(), mags.end());
    return std::adjacent_find(mags.begin(), mags.end()) == mags.end();
}
inline bool is_uniquely_weighted(const Profile& p) {
    return is_uniquely_weighted(margin_graph(p));
}

enum class CycleCaseKind {
    condorcet_winner,
    ascending,
    descending,
    condorcet_loser,
    symmetric,
};

/// Three-alternative margin graph classification. Role letters follow the
/// case diagrams; `roles[0]` is the alternative playing role a, and so on.
struct CycleCase {
    CycleCaseKind kind = CycleCaseKind::condorcet_winner;
    int n = 0, m = 0, k = 0;
    std::array<int, 3> roles{0, 1, 2};

    bool strictly_ascending() const { return kind == CycleCaseKind::ascending && n < m; }

    std::string_view label() const {
        switch (kind) {
        case CycleCaseKind::condorcet_winner: return "condorcet-winner";
        case CycleCaseKind::ascending: return strictly_ascending() ? "strictly-ascending" : "ascending";
        case CycleCaseKind::descending: return "descending";
        case CycleCaseKind::condorcet_loser: return "condorcet-loser";
        case CycleCaseKind::symmetric: return "symmetric";
        }
        return "?";
    }
};

/// Classifies a 3-alternative margin graph into the case taxonomy. Ties in
/// the role assignment are broken toward the lexicographically least
/// (role-a, role-b, role-c) index triple.
inline CycleCase classify_three_cycle(const MarginGraph& g) {
    if (g.size() != 3) throw DomainError("cycle classification requires exactly 3 alternatives");
    if (auto w = condorcet_winner(g)) {
        CycleCase c;
        c.kind = CycleCaseKind::condorcet_winner;
        c.roles = {*w, (*w + 1) % 3, (*w + 2) % 3};
        return c;
    }

    static constexpr std::array<std::array<int, 3>, 6> kPerms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

    std::optional<CycleCase> found;
    auto consider = [&](CycleCaseKind kind, int n, int m, int k, const std::array<int, 3>& roles) {
        if (found) {
            if (found->kind != kind)
                throw DomainError("cycle taxonomy is not mutually exclusive");
            if (roles < found->roles) *found = CycleCase{kind, n, m, k, roles};
            return;
        }
        found = CycleCase{kind, n, m, k, roles};
    };

    for (const auto& perm : kPerms) {
        const int a = perm[0], b = perm[1], c = perm[2];
        const int ab = g.margin(a, b), bc = g.margin(b, c), ca = g.margin(c, a);
        // ascending: cycle a->b (n), b->c (m), c->a (k), 0 <= n <= m < k
        if (ab >= 0 && bc >= 0 && ca > 0 && ab <= bc && bc < ca)
            consider(CycleCaseKind::ascending, ab, bc, ca, perm);
        // descending: cycle a->b (n), b->c (k), c->a (m), 0 <= n < m <= k
        if (ab >= 0 && bc > 0 && ca > 0 && ab < ca && ca <= bc)
            consider(CycleCaseKind::descending, ab, ca, bc, perm);
        // Condorcet loser: b->a (n), c->a (k), b~c, 0 < n <= k
        if (g.margin(b, a) > 0 && g.margin(c, a) > 0 && bc == 0 && g.margin(b, a) <= g.margin(c, a))
            consider(CycleCaseKind::condorcet_loser, g.margin(b, a), 0, g.margin(c, a), perm);
        // symmetric: n = m = k >= 0
        if (ab >= 0 && ab == bc && bc == ca)
            consider(CycleCaseKind::symmetric, ab, ab, ab, perm);
    }
    if (!found) throw DomainError("cycle taxonomy failed to classify margin graph");
    return *found;
}

inline CycleCase classify_three_cycle(const Profile& p) {
    return classify_three_cycle(margin_graph(p));
}

} // namespace tally

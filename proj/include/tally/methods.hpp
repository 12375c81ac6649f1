#pragma once

#include <functional>
#include <limits>
#include <string_view>

#include "tally/margins.hpp"
#include "tally/profile.hpp"

namespace tally {

/// Nonempty subset of the profile's alternatives.
using WinnerSet = AltSet;

enum class MethodId {
    majority,
    minimax,
    minimax_support,
    minimax_mb,
    borda_marginal,
    condorcet_plurality,
    bucklin,
    coombs,
    kemeny,
    trivial,
    fixed_order,
    dictator_pair,
    homogeneity_violator,
    block_violator,
};

namespace detail {

inline WinnerSet argmin_set(std::span<const int> scores) {
    int lo = scores[0];
    for (int s : scores) lo = std::min(lo, s);
    WinnerSet w;
    for (int a = 0; a < static_cast<int>(scores.size()); ++a)
        if (scores[a] == lo) w.add(a);
    return w;
}

inline WinnerSet argmax_set(std::span<const int> scores) {
    int hi = scores[0];
    for (int s : scores) hi = std::max(hi, s);
    WinnerSet w;
    for (int a = 0; a < static_cast<int>(scores.size()); ++a)
        if (scores[a] == hi) w.add(a);
    return w;
}

inline void require_alt_range(const Profile& p, int lo, int hi, const char* name) {
    const int m = p.num_alternatives();
    if (m < lo || m > hi)
        throw DomainError(std::string(name) + " is undefined for " + std::to_string(m) +
                          " alternatives");
}

inline void require_linear(const Profile& p, const char* name) {
    for (const Ballot& b : p.ballots)
        if (!is_linear_order(b, p.num_alternatives()))
            throw DomainError(std::string(name) + " requires linear ballots");
}

} // namespace detail

// --- majority -------------------------------------------------------------

/// Two-alternative majority voting: a wins iff at least as many voters rank
/// a above b as rank b above a.
inline WinnerSet majority(const Profile& p) {
    detail::require_alt_range(p, 2, 2, "majority");
    const int m01 = margin(p, 0, 1);
    if (m01 > 0) return WinnerSet::of({0});
    if (m01 < 0) return WinnerSet::of({1});
    return WinnerSet::of({0, 1});
}

// --- minimax ---------------------------------------------------------------

/// Maximum margin any opponent has over a; 0 for a lone alternative.
inline int minimax_score(const MarginGraph& g, int a) {
    int best = 0;
    bool first = true;
    for (int b = 0; b < g.size(); ++b) {
        if (b == a) continue;
        int v = g.margin(b, a);
        if (first || v > best) best = v, first = false;
    }
    return first ? 0 : best;
}

inline int minimax_score(const Profile& p, int a) {
    p.require_alternative(a);
    return minimax_score(margin_graph(p), a);
}

inline WinnerSet minimax(const MarginGraph& g) {
    std::vector<int> scores(g.size());
    for (int a = 0; a < g.size(); ++a) scores[a] = minimax_score(g, a);
    return detail::argmin_set(scores);
}

inline WinnerSet minimax(const Profile& p) { return minimax(margin_graph(p)); }

// --- support-based minimax --------------------------------------------------

/// Size of a's worst loss measured in support: the largest number of voters
/// ranking some b above a among the b that actually beat a head-to-head.
/// An alternative with no losses scores 0.
inline int minimax_support_score(const Profile& p, int a) {
    p.require_alternative(a);
    int best = 0;
    for (int b = 0; b < p.num_alternatives(); ++b) {
        if (b == a) continue;
        if (margin(p, b, a) > 0) best = std::max(best, support(p, b, a));
    }
    return best;
}

inline WinnerSet minimax_support(const Profile& p) {
    std::vector<int> scores(p.num_alternatives());
    for (int a = 0; a < p.num_alternatives(); ++a) scores[a] = minimax_support_score(p, a);
    return detail::argmin_set(scores);
}

// --- marginal Borda ----------------------------------------------------------

/// Sum of a's margins over all other alternatives.
inline int marginal_borda_score(const Profile& p, int a) {
    p.require_alternative(a);
    int s = 0;
    for (int b = 0; b < p.num_alternatives(); ++b)
        if (b != a) s += margin(p, a, b);
    return s;
}

inline WinnerSet borda_marginal(const Profile& p) {
    std::vector<int> scores(p.num_alternatives());
    for (int a = 0; a < p.num_alternatives(); ++a) scores[a] = marginal_borda_score(p, a);
    return detail::argmax_set(scores);
}

/// Minimax winners with the greatest marginal Borda score.
inline WinnerSet minimax_mb(const Profile& p) {
    const WinnerSet mm = minimax(p);
    int hi = std::numeric_limits<int>::min();
    for (int a : mm.to_vector()) hi = std::max(hi, marginal_borda_score(p, a));
    WinnerSet w;
    for (int a : mm.to_vector())
        if (marginal_borda_score(p, a) == hi) w.add(a);
    return w;
}

// --- Condorcet-Plurality ------------------------------------------------------

/// Number of voters ranking a uniquely first.
inline int plurality_score(const Profile& p, int a) {
    p.require_alternative(a);
    int s = 0;
    for (const Ballot& b : p.ballots) s += ranks_uniquely_first(b, p.num_alternatives(), a);
    return s;
}

/// Weak Condorcet winners when they exist, otherwise the plurality argmax.
inline WinnerSet condorcet_plurality(const Profile& p) {
    const AltSet weak = weak_condorcet_winners(p);
    if (!weak.empty()) return weak;
    std::vector<int> scores(p.num_alternatives());
    for (int a = 0; a < p.num_alternatives(); ++a) scores[a] = plurality_score(p, a);
    return detail::argmax_set(scores);
}

// --- Bucklin -------------------------------------------------------------------

struct BucklinOutcome {
    int round = 0;                       ///< first round with a strict majority
    std::array<int, Ballot::kMaxAlternatives> counts{}; ///< top-`round` counts
    WinnerSet winners;
};

inline BucklinOutcome bucklin_outcome(const Profile& p) {
    detail::require_alt_range(p, 1, 3, "bucklin");
    detail::require_linear(p, "bucklin");
    const int m = p.num_alternatives();
    const int n = p.num_voters();
    BucklinOutcome out;
    for (int r = 1; r <= m; ++r) {
        std::array<int, Ballot::kMaxAlternatives> cnt{};
        for (const Ballot& b : p.ballots)
            for (int a = 0; a < m; ++a) {
                int above = 0;
                for (int x = 0; x < m; ++x) above += b.ranks_above(x, a);
                if (above < r) ++cnt[a];
            }
        const int hi = *std::max_element(cnt.begin(), cnt.begin() + m);
        if (2 * hi > n) {
            out.round = r;
            out.counts = cnt;
            for (int a = 0; a < m; ++a)
                if (cnt[a] == hi) out.winners.add(a);
            return out;
        }
    }
    throw DomainError("bucklin found no majority round"); // unreachable: round m is total
}

inline WinnerSet bucklin(const Profile& p) { return bucklin_outcome(p).winners; }

// --- Coombs ----------------------------------------------------------------------

struct CoombsTrace {
    std::vector<AltSet> eliminated; ///< simultaneous elimination rounds
    WinnerSet winners;
};

inline CoombsTrace coombs_trace(const Profile& p) {
    detail::require_alt_range(p, 1, 3, "coombs");
    detail::require_linear(p, "coombs");
    const int m = p.num_alternatives();
    const int n = p.num_voters();
    CoombsTrace trace;
    AltSet remaining = AltSet::all(m);
    while (true) {
        for (int a : remaining.to_vector()) {
            int fc = 0;
            for (const Ballot& b : p.ballots) {
                bool top = true;
                for (int x : remaining.to_vector())
                    if (x != a && !b.ranks_above(a, x)) top = false;
                fc += top;
            }
            if (2 * fc > n) {
                trace.winners = WinnerSet::of({a});
                return trace;
            }
        }
        std::array<int, Ballot::kMaxAlternatives> lc{};
        for (const Ballot& b : p.ballots)
            for (int a : remaining.to_vector()) {
                bool bottom = true;
                for (int x : remaining.to_vector())
                    if (x != a && !b.ranks_above(x, a)) bottom = false;
                lc[a] += bottom;
            }
        int hi = -1;
        for (int a : remaining.to_vector()) hi = std::max(hi, lc[a]);
        AltSet drop;
        for (int a : remaining.to_vector())
            if (lc[a] == hi) drop.add(a);
        trace.eliminated.push_back(drop);
        if (drop == remaining) {
            trace.winners = drop;
            return trace;
        }
        for (int a : drop.to_vector()) remaining.remove(a);
        if (remaining.size() == 1) {
            trace.winners = remaining;
            return trace;
        }
    }
}

inline WinnerSet coombs(const Profile& p) { return coombs_trace(p).winners; }

// --- Kemeny -------------------------------------------------------------------------

/// Tops of the linear orders with minimal Kemeny score, where the score of
/// an order L sums, over pairs (x,y) in L, the voters ranking y above x.
inline WinnerSet kemeny(const Profile& p) {
    detail::require_alt_range(p, 1, 5, "kemeny");
    detail::require_linear(p, "kemeny");
    const int m = p.num_alternatives();
    std::array<std::array<int, Ballot::kMaxAlternatives>, Ballot::kMaxAlternatives> sup{};
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b) sup[a][b] = support(p, a, b);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    int best = std::numeric_limits<int>::max();
    WinnerSet winners;
    do {
        int score = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) score += sup[order[j]][order[i]];
        if (score < best) {
            best = score;
            winners = WinnerSet::of({order[0]});
        } else if (score == best) {
            winners.add(order[0]);
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return winners;
}

// --- constructed methods -------------------------------------------------------------

/// Selects all alternatives in every profile.
inline WinnerSet trivial(const Profile& p) { return WinnerSet::all(p.num_alternatives()); }

/// Selects the alternative that comes first in the fixed order on
/// alternatives (the profile's index order).
inline WinnerSet fixed_order(const Profile& p) {
    detail::require_alt_range(p, 1, Ballot::kMaxAlternatives, "fixed-order");
    return WinnerSet::of({0});
}

/// If the voters are exactly {i, j} submitting reversed linear orders,
/// selects i's favorite; otherwise Minimax.
inline WinnerSet dictator_pair(const Profile& p, int i, int j) {
    if (p.num_voters() == 2) {
        const int pi = p.voters[0] == i ? 0 : (p.voters[1] == i ? 1 : -1);
        const int pj = p.voters[0] == j ? 0 : (p.voters[1] == j ? 1 : -1);
        if (pi >= 0 && pj >= 0 && pi != pj) {
            const int m = p.num_alternatives();
            const Ballot bi = p.ballots[pi], bj = p.ballots[pj];
            bool reversed = detail::is_linear_order(bi, m) && detail::is_linear_order(bj, m);
            for (int a = 0; a < m && reversed; ++a)
                for (int b = 0; b < m && reversed; ++b)
                    if (a != b && bi.ranks_above(a, b) != bj.ranks_above(b, a)) reversed = false;
            if (reversed)
                for (int a = 0; a < m; ++a)
                    if (ranks_uniquely_first(bi, m, a)) return WinnerSet::of({a});
        }
    }
    return minimax(p);
}

/// Minimax, except that when all scores are distinct, the runner-up trails
/// by at most 1, and the runner-up beats the Minimax winner head-to-head,
/// both are selected.
inline WinnerSet homogeneity_violator(const Profile& p) {
    detail::require_alt_range(p, 1, 3, "homogeneity-violator");
    const int m = p.num_alternatives();
    const MarginGraph g = margin_graph(p);
    const WinnerSet mm = minimax(g);
    if (m < 2) return mm;
    std::vector<int> scores(m);
    for (int a = 0; a < m; ++a) scores[a] = minimax_score(g, a);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] < scores[b]; });
    bool distinct = true;
    for (int i = 0; i + 1 < m; ++i)
        if (scores[order[i]] == scores[order[i + 1]]) distinct = false;
    if (distinct && scores[order[1]] - scores[order[0]] <= 1 &&
        g.margin(order[1], order[0]) > 0)
        return WinnerSet::of({order[0], order[1]});
    return mm;
}

/// Minimax, except on cycles x->y->z->x whose margins n = m(x,y),
/// k = m(y,z), m = m(z,x) satisfy 0 <= m-n < k-m with no voter submitting
/// the order y > x > z, where x alone is selected.
inline WinnerSet block_violator(const Profile& p) {
    detail::require_alt_range(p, 1, 3, "block-violator");
    const int ma = p.num_alternatives();
    const MarginGraph g = margin_graph(p);
    if (ma != 3) return minimax(g);
    int hits = 0;
    int hit_x = -1, hit_y = -1, hit_z = -1;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            if (y == x) continue;
            const int z = 3 - x - y;
            const int n_ = g.margin(x, y), k_ = g.margin(y, z), m_ = g.margin(z, x);
            if (n_ >= 1 && k_ >= 1 && m_ >= 1 && 0 <= m_ - n_ && m_ - n_ < k_ - m_) {
                ++hits;
                hit_x = x, hit_y = y, hit_z = z;
            }
        }
    if (hits > 1) throw DomainError("block-violator cycle condition matched twice");
    if (hits == 1) {
        const Ballot yxz = Ballot{}.add(hit_y, hit_x).add(hit_y, hit_z).add(hit_x, hit_z);
        bool present = false;
        for (const Ballot& b : p.ballots)
            if (b == yxz) present = true;
        if (!present) return WinnerSet::of({hit_x});
    }
    return minimax(g);
}

// --- registry --------------------------------------------------------------------------

struct Method {
    MethodId id;
    std::string_view name;
    int min_alternatives;
    int max_alternatives;
    BallotKind ballot_domain; ///< weakest ballot class the method accepts
    bool anonymous;
    std::function<WinnerSet(const Profile&)> eval;

    WinnerSet operator()(const Profile& p) const { return eval(p); }

    bool in_domain(const Profile& p, BallotKind kind) const {
        return p.num_alternatives() >= min_alternatives &&
               p.num_alternatives() <= max_alternatives &&
               static_cast<int>(kind) <= static_cast<int>(ballot_domain);
    }
};

inline const std::vector<Method>& method_registry() {
    static const std::vector<Method> reg = [] {
        using BK = BallotKind;
        std::vector<Method> r;
        auto add = [&](MethodId id, std::string_view name, int lo, int hi, BK kind,
                       bool anonymous, std::function<WinnerSet(const Profile&)> fn) {
            r.push_back(Method{id, name, lo, hi, kind, anonymous, std::move(fn)});
        };
        add(MethodId::majority, "majority", 2, 2, BK::relation, true, &majority);
        add(MethodId::minimax, "minimax", 1, 5, BK::relation, true,
            [](const Profile& p) { return minimax(p); });
        add(MethodId::minimax_support, "minimax-support", 1, 5, BK::relation, true,
            &minimax_support);
        add(MethodId::minimax_mb, "minimax-mb", 1, 5, BK::relation, true, &minimax_mb);
        add(MethodId::borda_marginal, "borda-marginal", 1, 5, BK::relation, true,
            &borda_marginal);
        add(MethodId::condorcet_plurality, "condorcet-plurality", 1, 5, BK::relation, true,
            &condorcet_plurality);
        add(MethodId::bucklin, "bucklin", 1, 3, BK::linear, true, &bucklin);
        add(MethodId::coombs, "coombs", 1, 3, BK::linear, true, &coombs);
        add(MethodId::kemeny, "kemeny", 1, 5, BK::linear, true, &kemeny);
        add(MethodId::trivial, "trivial", 1, 5, BK::relation, true, &trivial);
        add(MethodId::fixed_order, "fixed-order", 1, 5, BK::relation, true, &fixed_order);
        add(MethodId::dictator_pair, "dictator-pair", 1, 5, BK::relation, false,
            [](const Profile& p) { return dictator_pair(p, 0, 1); });
        add(MethodId::homogeneity_violator, "homogeneity-violator", 1, 3, BK::relation, true,
            &homogeneity_violator);
        add(MethodId::block_violator, "block-violator", 1, 3, BK::relation, true,
            &block_violator);
        return r;
    }();
    return reg;
}

inline const Method& method(MethodId id) {
    for (const Method& m : method_registry())
        if (m.id == id) return m;
    throw DomainError("unknown method id");
}

inline const Method* find_method(std::string_view name) {
    for (const Method& m : method_registry())
        if (m.name == name) return &m;
    return nullptr;
}

} // namespace tally

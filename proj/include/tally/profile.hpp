#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tally {

/// Raised when an operation is applied outside its declared domain
/// (unknown voter, wrong alternative count, precondition failure, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the file-format parsers.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ballot classes ordered from strongest to weakest. A linear order is a
/// strict weak order; a strict weak order is a relation.
enum class BallotKind : int { linear = 0, strict_weak_order = 1, relation = 2 };

inline BallotKind weaker(BallotKind a, BallotKind b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

inline std::string_view ballot_kind_name(BallotKind k) {
    switch (k) {
    case BallotKind::linear: return "linear";
    case BallotKind::strict_weak_order: return "swo";
    case BallotKind::relation: return "relation";
    }
    return "?";
}

inline BallotKind ballot_kind_from_name(std::string_view s) {
    if (s == "linear") return BallotKind::linear;
    if (s == "swo" || s == "strict-weak-order") return BallotKind::strict_weak_order;
    if (s == "relation") return BallotKind::relation;
    throw DomainError("unknown ballot kind: " + std::string(s));
}

/// Small set of alternative indices (bitmask over indices 0..7).
class AltSet {
public:
    constexpr AltSet() = default;
    constexpr explicit AltSet(std::uint8_t bits) : bits_(bits) {}

    static constexpr AltSet all(int m) { return AltSet(static_cast<std::uint8_t>((1u << m) - 1u)); }
    static AltSet of(std::initializer_list<int> alts) {
        AltSet s;
        for (int a : alts) s.add(a);
        return s;
    }

    void add(int a) { bits_ |= static_cast<std::uint8_t>(1u << a); }
    void remove(int a) { bits_ &= static_cast<std::uint8_t>(~(1u << a)); }
    bool contains(int a) const { return (bits_ >> a) & 1u; }
    bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(static_cast<unsigned>(bits_)); }
    std::uint8_t bits() const { return bits_; }
    bool subset_of(AltSet other) const { return (bits_ & ~other.bits_) == 0; }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int a = 0; a < 8; ++a)
            if (contains(a)) out.push_back(a);
        return out;
    }

    friend bool operator==(AltSet, AltSet) = default;

private:
    std::uint8_t bits_ = 0;
};

/// A ballot is a set of ordered pairs (a, b) meaning "ranks a above b".
/// Pairs are stored as bits with index a * kStride + b, so ascending bit
/// order is exactly the lexicographic order on pairs.
class Ballot {
public:
    static constexpr int kMaxAlternatives = 5;
    static constexpr int kStride = kMaxAlternatives;

    constexpr Ballot() = default;
    constexpr explicit Ballot(std::uint32_t bits) : bits_(bits) {}

    static constexpr int pair_bit(int a, int b) { return a * kStride + b; }

    bool ranks_above(int a, int b) const { return (bits_ >> pair_bit(a, b)) & 1u; }

    Ballot& add(int a, int b) {
        if (a == b) throw DomainError("reflexive ballot pair");
        bits_ |= 1u << pair_bit(a, b);
        return *this;
    }
    Ballot& remove(int a, int b) {
        bits_ &= ~(1u << pair_bit(a, b));
        return *this;
    }

    std::uint32_t bits() const { return bits_; }
    bool empty() const { return bits_ == 0; }

    /// Ballot built from an explicit pair list.
    static Ballot from_pairs(std::initializer_list<std::pair<int, int>> pairs) {
        Ballot b;
        for (auto [x, y] : pairs) b.add(x, y);
        return b;
    }

    /// Linear ballot from a top-to-bottom order of alternatives.
    static Ballot from_order(std::span<const int> order) {
        Ballot b;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j) b.add(order[i], order[j]);
        return b;
    }
    static Ballot from_order(std::initializer_list<int> order) {
        return from_order(std::span<const int>(order.begin(), order.size()));
    }

    /// Strict weak order from tiers listed top to bottom; every alternative
    /// in tier i is ranked above every alternative in tier j > i.
    static Ballot from_tiers(const std::vector<std::vector<int>>& tiers) {
        Ballot b;
        for (std::size_t i = 0; i < tiers.size(); ++i)
            for (std::size_t j = i + 1; j < tiers.size(); ++j)
                for (int x : tiers[i])
                    for (int y : tiers[j]) b.add(x, y);
        return b;
    }

    std::vector<std::pair<int, int>> pairs(int m) const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b && ranks_above(a, b)) out.emplace_back(a, b);
        return out;
    }

    friend bool operator==(Ballot, Ballot) = default;

private:
    std::uint32_t bits_ = 0;
};

/// The fixed total order on ballots: lexicographic on the sorted pair list,
/// with a strict prefix ordered first. Used for canonical forms and for the
/// deterministic order of ballot_space.
inline bool ballot_less(Ballot x, Ballot y) {
    std::uint32_t a = x.bits(), b = y.bits();
    if (a == b) return false;
    std::uint32_t diff = a ^ b;
    std::uint32_t low = diff & (~diff + 1u);
    if (a & low) {
        // x owns the smaller first-differing pair; y is larger unless y has
        // nothing at or beyond it (then y is a strict prefix of x).
        return (b & ~(low - 1u)) != 0;
    }
    return (a & ~(low - 1u)) == 0;
}

struct BallotOrder {
    bool operator()(Ballot a, Ballot b) const { return ballot_less(a, b); }
};

/// True iff the ballot ranks a above every other alternative.
inline bool ranks_uniquely_first(Ballot b, int m, int a) {
    for (int x = 0; x < m; ++x)
        if (x != a && !b.ranks_above(a, x)) return false;
    return true;
}

/// True iff every other alternative is ranked above a.
inline bool ranks_uniquely_last(Ballot b, int m, int a) {
    for (int x = 0; x < m; ++x)
        if (x != a && !b.ranks_above(x, a)) return false;
    return true;
}

namespace detail {

inline bool is_asymmetric(Ballot b, int m) {
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y)
            if (b.ranks_above(x, y) && b.ranks_above(y, x)) return false;
    return true;
}

inline bool is_negatively_transitive(Ballot b, int m) {
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            if (x == y) continue;
            for (int z = 0; z < m; ++z) {
                if (z == x || z == y) continue;
                if (!b.ranks_above(x, y) && !b.ranks_above(y, z) && b.ranks_above(x, z))
                    return false;
            }
        }
    return true;
}

inline bool is_linear_order(Ballot b, int m) {
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y)
            if (b.ranks_above(x, y) == b.ranks_above(y, x)) return false;
    // connected + asymmetric; still need transitivity
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                if (x != y && y != z && x != z && b.ranks_above(x, y) && b.ranks_above(y, z) &&
                    !b.ranks_above(x, z))
                    return false;
    return true;
}

inline std::uint32_t in_range_mask(int m) {
    std::uint32_t mask = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b) mask |= 1u << Ballot::pair_bit(a, b);
    return mask;
}

} // namespace detail

/// Strongest class the ballot belongs to over m alternatives.
inline BallotKind classify_ballot(Ballot b, int m) {
    if (detail::is_linear_order(b, m)) return BallotKind::linear;
    if (detail::is_asymmetric(b, m) && detail::is_negatively_transitive(b, m))
        return BallotKind::strict_weak_order;
    return BallotKind::relation;
}

inline std::vector<std::string> default_labels(int m) {
    static const char* names[] = {"a", "b", "c", "d", "e"};
    if (m < 1 || m > Ballot::kMaxAlternatives) throw DomainError("unsupported alternative count");
    return std::vector<std::string>(names, names + m);
}

/// A profile: an ordered alternative list plus voter-indexed ballots.
/// Values are immutable by convention; operations return new profiles.
struct Profile {
    std::vector<std::string> labels;
    std::vector<int> voters;
    std::vector<Ballot> ballots;

    int num_alternatives() const { return static_cast<int>(labels.size()); }
    int num_voters() const { return static_cast<int>(voters.size()); }

    int voter_position(int voter_id) const {
        for (int i = 0; i < num_voters(); ++i)
            if (voters[i] == voter_id) return i;
        throw DomainError("unknown voter id " + std::to_string(voter_id));
    }

    int alternative_index(std::string_view label) const {
        for (int a = 0; a < num_alternatives(); ++a)
            if (labels[a] == label) return a;
        throw DomainError("unknown alternative label: " + std::string(label));
    }

    void require_alternative(int a) const {
        if (a < 0 || a >= num_alternatives()) throw DomainError("alternative index out of range");
    }

    friend bool operator==(const Profile&, const Profile&) = default;
};

/// Profile with voters 0..n-1 built from (count, ballot) groups.
inline Profile profile_from_counts(int m,
                                   std::initializer_list<std::pair<int, Ballot>> groups) {
    Profile p;
    p.labels = default_labels(m);
    int id = 0;
    for (const auto& [count, ballot] : groups)
        for (int i = 0; i < count; ++i) {
            p.voters.push_back(id++);
            p.ballots.push_back(ballot);
        }
    return p;
}

inline bool ranks_above(const Profile& p, int voter_id, int a, int b) {
    p.require_alternative(a);
    p.require_alternative(b);
    return p.ballots[p.voter_position(voter_id)].ranks_above(a, b);
}

inline bool ranks_uniquely_first(const Profile& p, int voter_id, int a) {
    p.require_alternative(a);
    return ranks_uniquely_first(p.ballots[p.voter_position(voter_id)], p.num_alternatives(), a);
}

inline bool ranks_uniquely_last(const Profile& p, int voter_id, int a) {
    p.require_alternative(a);
    return ranks_uniquely_last(p.ballots[p.voter_position(voter_id)], p.num_alternatives(), a);
}

/// Validates structure and classifies every ballot; returns the weakest
/// class present. Rejects reflexive/out-of-range pairs, duplicate voter
/// ids, duplicate labels, and empty alternative or ballot lists.
inline BallotKind validate(const Profile& p) {
    const int m = p.num_alternatives();
    if (m < 1 || m > Ballot::kMaxAlternatives)
        throw DomainError("profile must have 1..5 alternatives");
    if (p.voters.empty()) throw DomainError("profile has no voters");
    if (p.voters.size() != p.ballots.size())
        throw DomainError("voter/ballot list size mismatch");
    {
        std::vector<std::string> ls = p.labels;
        std::sort(ls.begin(), ls.end());
        if (std::adjacent_find(ls.begin(), ls.end()) != ls.end())
            throw DomainError("duplicate alternative label");
        std::vector<int> vs = p.voters;
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            throw DomainError("duplicate voter id");
        for (int v : vs)
            if (v < 0) throw DomainError("negative voter id");
    }
    const std::uint32_t ok = detail::in_range_mask(m);
    BallotKind kind = BallotKind::linear;
    for (const Ballot& b : p.ballots) {
        if (b.bits() & ~ok)
            throw DomainError("ballot pair outside the profile's alternatives");
        kind = weaker(kind, classify_ballot(b, m));
    }
    return kind;
}

inline BallotKind ballot_kind(const Profile& p) { return validate(p); }

/// Anonymity-respecting normal form: ballots sorted under the fixed ballot
/// order, voter ids renumbered 0..n-1. Two profiles have equal canonical
/// forms iff one is a voter permutation of the other.
inline Profile canonical_form(const Profile& p) {
    Profile out;
    out.labels = p.labels;
    out.ballots = p.ballots;
    std::sort(out.ballots.begin(), out.ballots.end(), BallotOrder{});
    out.voters.resize(p.voters.size());
    std::iota(out.voters.begin(), out.voters.end(), 0);
    return out;
}

namespace detail {

inline void ordered_partitions(std::vector<int>& elems, std::vector<std::vector<int>>& tiers,
                               std::vector<Ballot>& out) {
    if (elems.empty()) {
        out.push_back(Ballot::from_tiers(tiers));
        return;
    }
    const int n = static_cast<int>(elems.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> tier, rest;
        for (int i = 0; i < n; ++i)
            ((mask >> i) & 1u ? tier : rest).push_back(elems[i]);
        tiers.push_back(std::move(tier));
        ordered_partitions(rest, tiers, out);
        tiers.pop_back();
    }
}

} // namespace detail

/// All distinct ballots of the given kind over m alternatives, in the fixed
/// ballot order. Cached; do not mutate the result.
inline const std::vector<Ballot>& ballot_space(int m, BallotKind kind) {
    if (m < 1 || m > Ballot::kMaxAlternatives)
        throw DomainError("ballot_space supports 1..5 alternatives");
    static std::map<std::pair<int, BallotKind>, std::vector<Ballot>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({m, kind});
    if (it != cache.end()) return it->second;

    std::vector<Ballot> out;
    switch (kind) {
    case BallotKind::linear: {
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        do {
            out.push_back(Ballot::from_order(order));
        } while (std::next_permutation(order.begin(), order.end()));
        break;
    }
    case BallotKind::strict_weak_order: {
        std::vector<int> elems(m);
        std::iota(elems.begin(), elems.end(), 0);
        std::vector<std::vector<int>> tiers;
        detail::ordered_partitions(elems, tiers, out);
        break;
    }
    case BallotKind::relation: {
        std::vector<int> bitpos;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b) bitpos.push_back(Ballot::pair_bit(a, b));
        const std::size_t np = bitpos.size();
        out.reserve(std::size_t{1} << np);
        for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << np); ++sel) {
            std::uint32_t bits = 0;
            for (std::size_t i = 0; i < np; ++i)
                if ((sel >> i) & 1u) bits |= 1u << bitpos[i];
            out.push_back(Ballot(bits));
        }
        break;
    }
    }
    std::sort(out.begin(), out.end(), BallotOrder{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return cache.emplace(std::pair{m, kind}, std::move(out)).first->second;
}

} // namespace tally

#pragma once

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tally/search.hpp"
#include "tally/version.hpp"

namespace tally {

using json = nlohmann::ordered_json;

// --- ballots ----------------------------------------------------------------

/// Tier decomposition of a strict weak order: alternatives grouped by how
/// many others are ranked above them.
inline std::vector<std::vector<int>> ballot_tiers(Ballot b, int m) {
    std::vector<int> above(m, 0);
    for (int a = 0; a < m; ++a)
        for (int x = 0; x < m; ++x)
            if (x != a && b.ranks_above(x, a)) ++above[a];
    std::vector<int> levels = above;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<std::vector<int>> tiers;
    for (int lv : levels) {
        std::vector<int> tier;
        for (int a = 0; a < m; ++a)
            if (above[a] == lv) tier.push_back(a);
        tiers.push_back(std::move(tier));
    }
    return tiers;
}

inline json ballot_to_json(Ballot b, const std::vector<std::string>& labels) {
    const int m = static_cast<int>(labels.size());
    json out = json::object();
    if (classify_ballot(b, m) != BallotKind::relation) {
        json tiers = json::array();
        for (const auto& tier : ballot_tiers(b, m)) {
            json t = json::array();
            for (int a : tier) t.push_back(labels[a]);
            tiers.push_back(std::move(t));
        }
        out["ranking"] = std::move(tiers);
    } else {
        json pairs = json::array();
        for (auto [a, bb] : b.pairs(m)) pairs.push_back(json::array({labels[a], labels[bb]}));
        out["pairs"] = std::move(pairs);
    }
    return out;
}

inline Ballot ballot_from_json(const json& j, const Profile& p) {
    Ballot b;
    if (j.contains("ranking")) {
        std::vector<std::vector<int>> tiers;
        for (const auto& tier : j.at("ranking")) {
            if (tier.empty()) throw ParseError("empty tier in ballot ranking");
            std::vector<int> t;
            for (const auto& label : tier) t.push_back(p.alternative_index(label.get<std::string>()));
            tiers.push_back(std::move(t));
        }
        b = Ballot::from_tiers(tiers);
    } else if (j.contains("pairs")) {
        for (const auto& pair : j.at("pairs")) {
            if (pair.size() != 2) throw ParseError("ballot pair must have two labels");
            const int x = p.alternative_index(pair[0].get<std::string>());
            const int y = p.alternative_index(pair[1].get<std::string>());
            if (x == y) throw ParseError("reflexive ballot pair");
            b.add(x, y);
        }
    } else {
        throw ParseError("ballot needs either a ranking or a pair list");
    }
    return b;
}

// --- profiles ---------------------------------------------------------------

/// Grouped, anonymity-normalized profile document.
inline json profile_to_json(const Profile& p) {
    const Profile canon = canonical_form(p);
    json out = json::object();
    out["format"] = "tally-profile";
    out["version"] = 1;
    out["alternatives"] = canon.labels;
    json groups = json::array();
    for (std::size_t i = 0; i < canon.ballots.size();) {
        std::size_t j = i;
        while (j < canon.ballots.size() && canon.ballots[j] == canon.ballots[i]) ++j;
        json g = ballot_to_json(canon.ballots[i], canon.labels);
        json entry = json::object();
        entry["count"] = j - i;
        for (auto& [k, v] : g.items()) entry[k] = v;
        groups.push_back(std::move(entry));
        i = j;
    }
    out["ballots"] = std::move(groups);
    return out;
}

/// Voter-exact profile document, used inside witnesses so transforms that
/// reference voter ids replay bit-for-bit.
inline json profile_to_json_exact(const Profile& p) {
    json out = json::object();
    out["alternatives"] = p.labels;
    out["voters"] = p.voters;
    json ballots = json::array();
    for (const Ballot& b : p.ballots) ballots.push_back(ballot_to_json(b, p.labels));
    out["ballots"] = std::move(ballots);
    return out;
}

inline Profile profile_from_json(const json& j) {
    Profile p;
    for (const auto& label : j.at("alternatives")) p.labels.push_back(label.get<std::string>());
    if (p.labels.empty()) throw ParseError("profile has no alternatives");
    if (j.contains("voters")) {
        for (const auto& v : j.at("voters")) p.voters.push_back(v.get<int>());
        for (const auto& bj : j.at("ballots")) p.ballots.push_back(ballot_from_json(bj, p));
        if (p.voters.size() != p.ballots.size())
            throw ParseError("voter and ballot lists differ in length");
    } else {
        int id = 0;
        for (const auto& entry : j.at("ballots")) {
            const int count = entry.value("count", 1);
            if (count < 1) throw ParseError("ballot count must be >= 1");
            const Ballot b = ballot_from_json(entry, p);
            for (int c = 0; c < count; ++c) {
                p.voters.push_back(id++);
                p.ballots.push_back(b);
            }
        }
    }
    validate(p);
    return p;
}

// --- simple ranked-ballot text format ------------------------------------------

namespace detail {

inline std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

} // namespace detail

/// Parses the line-based ranked-ballot format: one ballot group per line as
/// "count: a>b=c", '#' comments, and an optional "alternatives: a b c"
/// header. Without a header the alternative set is the sorted union of the
/// labels seen, and every ballot must rank all of them.
inline Profile import_external(const std::string& text) {
    std::vector<std::string> labels;
    struct Line {
        int count;
        std::vector<std::vector<std::string>> tiers;
    };
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("alternatives:", 0) == 0) {
            std::istringstream ls(line.substr(13));
            std::string tok;
            while (ls >> tok) labels.push_back(tok);
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("missing ballot count in: " + raw);
        const std::string head = detail::trim(line.substr(0, colon));
        int count = 0;
        try {
            std::size_t used = 0;
            count = std::stoi(head, &used);
            if (used != head.size()) throw std::invalid_argument(head);
        } catch (const std::exception&) {
            throw ParseError("malformed ballot count in: " + raw);
        }
        if (count < 1) throw ParseError("ballot count must be >= 1 in: " + raw);
        Line entry{count, {}};
        for (const std::string& tier : detail::split(detail::trim(line.substr(colon + 1)), '>')) {
            if (tier.empty()) throw ParseError("empty tier in: " + raw);
            std::vector<std::string> names = detail::split(tier, '=');
            for (const std::string& n : names)
                if (n.empty()) throw ParseError("empty tier in: " + raw);
            entry.tiers.push_back(std::move(names));
        }
        if (entry.tiers.empty()) throw ParseError("empty ballot in: " + raw);
        lines.push_back(std::move(entry));
    }
    if (lines.empty()) throw ParseError("no ballots in input");

    if (labels.empty()) {
        for (const Line& l : lines)
            for (const auto& tier : l.tiers)
                for (const std::string& n : tier)
                    if (std::find(labels.begin(), labels.end(), n) == labels.end())
                        labels.push_back(n);
        std::sort(labels.begin(), labels.end());
    }

    Profile p;
    p.labels = labels;
    int id = 0;
    for (const Line& l : lines) {
        std::vector<std::vector<int>> tiers;
        std::vector<bool> seen(labels.size(), false);
        for (const auto& tier : l.tiers) {
            std::vector<int> t;
            for (const std::string& n : tier) {
                const int a = p.alternative_index(n);
                if (seen[a]) throw ParseError("alternative listed twice in a ballot: " + n);
                seen[a] = true;
                t.push_back(a);
            }
            tiers.push_back(std::move(t));
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw ParseError("ballot does not rank every alternative");
        const Ballot b = Ballot::from_tiers(tiers);
        for (int c = 0; c < l.count; ++c) {
            p.voters.push_back(id++);
            p.ballots.push_back(b);
        }
    }
    validate(p);
    return p;
}

/// Renders a profile of strict weak orders in the line-based format.
inline std::string export_external(const Profile& p) {
    if (validate(p) == BallotKind::relation)
        throw DomainError("the text format covers ranking ballots only");
    const Profile canon = canonical_form(p);
    std::ostringstream out;
    out << "alternatives:";
    for (const std::string& l : canon.labels) out << ' ' << l;
    out << '\n';
    for (std::size_t i = 0; i < canon.ballots.size();) {
        std::size_t j = i;
        while (j < canon.ballots.size() && canon.ballots[j] == canon.ballots[i]) ++j;
        out << (j - i) << ": ";
        const auto tiers = ballot_tiers(canon.ballots[i], canon.num_alternatives());
        for (std::size_t t = 0; t < tiers.size(); ++t) {
            if (t) out << '>';
            for (std::size_t x = 0; x < tiers[t].size(); ++x) {
                if (x) out << '=';
                out << canon.labels[tiers[t][x]];
            }
        }
        out << '\n';
        i = j;
    }
    return out.str();
}

/// Accepts either the JSON document or the line-based text format.
inline Profile parse_profile(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') {
            json j;
            try {
                j = json::parse(text);
            } catch (const json::exception& e) {
                throw ParseError(std::string("invalid JSON: ") + e.what());
            }
            try {
                return profile_from_json(j);
            } catch (const json::exception& e) {
                throw ParseError(std::string("invalid profile document: ") + e.what());
            }
        }
        return import_external(text);
    }
    throw ParseError("empty profile input");
}

inline std::string serialize_profile(const Profile& p) { return profile_to_json(p).dump(2) + "\n"; }

inline Profile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

// --- winner sets -----------------------------------------------------------------

/// Winner labels sorted lexicographically for stable output.
inline std::vector<std::string> winner_labels(const Profile& p, WinnerSet w) {
    std::vector<std::string> out;
    for (int a : w.to_vector()) out.push_back(p.labels[a]);
    std::sort(out.begin(), out.end());
    return out;
}

// --- transforms --------------------------------------------------------------------

inline json transform_to_json(const TransformRecord& t) {
    json out = json::object();
    out["kind"] = std::string(transform_kind_name(t.kind));
    switch (t.kind) {
    case TransformKind::restrict_alts: out["alts"] = t.alt_subset.to_vector(); break;
    case TransformKind::remove_alt:
        out["alt"] = t.alt;
        if (t.alt2 >= 0) out["focus-alt"] = t.alt2;
        break;
    case TransformKind::concat:
        if (t.other) out["other"] = profile_to_json_exact(*t.other);
        break;
    case TransformKind::scale: out["factor"] = t.factor; break;
    case TransformKind::add_block: break;
    case TransformKind::add_voter:
        if (t.ballot) out["ballot"] = json::object(); // patched below
        break;
    case TransformKind::move_last_to_first:
        out["voter"] = t.voter;
        out["alt"] = t.alt;
        break;
    case TransformKind::improve:
        out["voter"] = t.voter;
        out["alt"] = t.alt;
        out["over"] = t.alt2;
        out["pair-added"] = t.pair_added;
        break;
    case TransformKind::permute_voters:
    case TransformKind::permute_alts: out["perm"] = t.perm; break;
    }
    return out;
}

inline json transform_to_json(const TransformRecord& t, const Profile& base) {
    json out = transform_to_json(t);
    if (t.kind == TransformKind::add_voter && t.ballot)
        out["ballot"] = ballot_to_json(*t.ballot, base.labels);
    return out;
}

inline TransformRecord transform_from_json(const json& j, const Profile& base) {
    TransformRecord t;
    const std::string kind = j.at("kind").get<std::string>();
    bool found = false;
    for (int k = 0; k <= static_cast<int>(TransformKind::permute_alts); ++k)
        if (transform_kind_name(static_cast<TransformKind>(k)) == kind) {
            t.kind = static_cast<TransformKind>(k);
            found = true;
        }
    if (!found) throw ParseError("unknown transform kind: " + kind);
    switch (t.kind) {
    case TransformKind::restrict_alts:
        for (const auto& a : j.at("alts")) t.alt_subset.add(a.get<int>());
        break;
    case TransformKind::remove_alt:
        t.alt = j.at("alt").get<int>();
        t.alt2 = j.value("focus-alt", -1);
        break;
    case TransformKind::concat:
        t.other = std::make_shared<Profile>(profile_from_json(j.at("other")));
        break;
    case TransformKind::scale: t.factor = j.at("factor").get<int>(); break;
    case TransformKind::add_block: break;
    case TransformKind::add_voter: t.ballot = ballot_from_json(j.at("ballot"), base); break;
    case TransformKind::move_last_to_first:
        t.voter = j.at("voter").get<int>();
        t.alt = j.at("alt").get<int>();
        break;
    case TransformKind::improve:
        t.voter = j.at("voter").get<int>();
        t.alt = j.at("alt").get<int>();
        t.alt2 = j.at("over").get<int>();
        t.pair_added = j.at("pair-added").get<bool>();
        break;
    case TransformKind::permute_voters:
    case TransformKind::permute_alts:
        for (const auto& v : j.at("perm")) t.perm.push_back(v.get<int>());
        break;
    }
    return t;
}

// --- witnesses -----------------------------------------------------------------------

inline json witness_to_json(const AxiomWitness& w) {
    json out = json::object();
    out["method"] = std::string(method(w.method).name);
    out["target"] = w.axiom ? std::string(axiom_name(*w.axiom)) : std::string("refines-minimax");
    out["base_profile"] = profile_to_json_exact(w.base);
    if (w.transform) out["transform"] = transform_to_json(*w.transform, w.base);
    if (w.other) out["other_profile"] = profile_to_json_exact(*w.other);
    out["winners_before"] = winner_labels(w.base, w.winners_before);
    out["winners_after"] =
        w.transform ? winner_labels(apply_transform(*w.transform, w.base), w.winners_after)
                    : winner_labels(w.other ? *w.other : w.base, w.winners_after);
    out["note"] = w.note;
    return out;
}

inline AxiomWitness witness_from_json(const json& j) {
    AxiomWitness w;
    const std::string target = j.at("target").get<std::string>();
    if (target != "refines-minimax") {
        const auto id = axiom_from_name(target);
        if (!id) throw ParseError("unknown witness target: " + target);
        w.axiom = *id;
    }
    const Method* f = find_method(j.at("method").get<std::string>());
    if (!f) throw ParseError("unknown method in witness");
    w.method = f->id;
    w.base = profile_from_json(j.at("base_profile"));
    if (j.contains("transform")) w.transform = transform_from_json(j.at("transform"), w.base);
    if (j.contains("other_profile")) w.other = profile_from_json(j.at("other_profile"));
    const Profile after_profile = w.transform ? apply_transform(*w.transform, w.base)
                                              : (w.other ? *w.other : w.base);
    auto set_of = [](const Profile& p, const json& labels) {
        WinnerSet s;
        for (const auto& l : labels) s.add(p.alternative_index(l.get<std::string>()));
        return s;
    };
    w.winners_before = set_of(w.base, j.at("winners_before"));
    w.winners_after = set_of(after_profile, j.at("winners_after"));
    w.note = j.value("note", "");
    return w;
}

inline json witness_file_json(const AxiomWitness& w, const json& search_echo = {}) {
    json out = json::object();
    out["format"] = "tally-witness";
    out["version"] = 1;
    out["engine"] = std::string(kEngineName) + " " + kEngineVersion;
    const json body = witness_to_json(w);
    for (const auto& [k, v] : body.items()) out[k] = v;
    if (!search_echo.is_null() && !search_echo.empty()) out["search"] = search_echo;
    return out;
}

inline AxiomWitness load_witness(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (j.value("format", "") != "tally-witness") throw ParseError("not a witness file");
    return witness_from_json(j);
}

// --- search specs and reports -----------------------------------------------------------

inline json spec_to_json(const SearchSpec& spec) {
    json out = json::object();
    out["method"] = std::string(method(spec.method).name);
    out["target"] = spec.axiom ? std::string(axiom_name(*spec.axiom)) : std::string("refines-minimax");
    out["alternatives"] = spec.alternatives;
    out["max-voters"] = spec.max_voters;
    out["ballots"] = std::string(ballot_kind_name(spec.kind));
    out["mode"] = spec.mode == SearchMode::exhaustive ? "exhaustive" : "random";
    out["seed"] = spec.seed;
    out["budget"] = spec.budget;
    if (spec.offset) out["offset"] = spec.offset;
    if (spec.limit) out["limit"] = spec.limit;
    if (spec.stop_after) out["stop-after"] = spec.stop_after;
    return out;
}

inline json report_to_json(const SearchReport& report, const json& spec_echo = {}) {
    json out = json::object();
    out["format"] = "tally-report";
    out["version"] = 1;
    out["engine"] = std::string(kEngineName) + " " + kEngineVersion;
    if (!spec_echo.is_null() && !spec_echo.empty()) out["spec"] = spec_echo;
    out["profiles_examined"] = report.profiles_examined;
    out["exhausted"] = report.exhausted;
    json ws = json::array();
    for (const AxiomWitness& w : report.witnesses) ws.push_back(witness_to_json(w));
    out["witnesses"] = std::move(ws);
    return out;
}

/// Canonically sorted witness dump used for cross-run comparisons.
inline std::string canonical_witness_dump(const std::vector<AxiomWitness>& witnesses) {
    std::vector<std::string> dumps;
    dumps.reserve(witnesses.size());
    for (const AxiomWitness& w : witnesses) dumps.push_back(witness_to_json(w).dump());
    std::sort(dumps.begin(), dumps.end());
    std::string out;
    for (const std::string& d : dumps) {
        out += d;
        out += '\n';
    }
    return out;
}

inline void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

} // namespace tally

#pragma once

// JSON documents for polymatroids, fans, matrices and relations, plus the
// brace notation "{a,b}" for subsets and "{1},{1,2}" for set sequences.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "polymatroid/chow.hpp"
#include "polymatroid/fans.hpp"
#include "polymatroid/lift.hpp"
#include "polymatroid/polymatroid.hpp"
#include "polymatroid/polytopes.hpp"
#include "polymatroid/realization.hpp"

namespace polymatroid::io {

using Json = nlohmann::ordered_json;

/// Malformed input (bad JSON, missing fields, unparsable notation).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element names of a ground set E.
class Names {
public:
    Names() = default;
    explicit Names(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const auto& s = names_[i];
            if (s.empty() || s.find_first_of("{},") != std::string::npos)
                throw ParseError("element names must be nonempty and free of braces and commas");
            if (!index_.emplace(s, static_cast<int>(i)).second) throw ParseError("duplicate element name " + s);
        }
    }

    /// "1", "2", ..., "m".
    static Names numbered(int m) {
        std::vector<std::string> v;
        for (int i = 1; i <= m; ++i) v.push_back(std::to_string(i));
        return Names(std::move(v));
    }

    /// Names for EE: element i of E with a_i > 1 becomes i+"a", i+"b", ...;
    /// with a_i = 1 it keeps its name.
    Names lifted(const std::vector<int>& type) const {
        std::vector<std::string> v;
        for (std::size_t i = 0; i < type.size(); ++i) {
            if (type[i] == 1) {
                v.push_back(names_[i]);
                continue;
            }
            for (int k = 0; k < type[i]; ++k)
                v.push_back(names_[i] + (k < 26 ? std::string(1, static_cast<char>('a' + k)) : "_" + std::to_string(k)));
        }
        return Names(std::move(v));
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& list() const noexcept { return names_; }
    const std::string& operator[](int i) const { return names_.at(static_cast<std::size_t>(i)); }

    int index(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end()) throw Error(ErrorKind::UnknownElement, "unknown element " + name);
        return it->second;
    }

    /// "{a,b}" in element order; "{}" for the empty set.
    std::string format(Subset s) const {
        std::string out = "{";
        bool first = true;
        for (int i : elements_of(s)) {
            if (!first) out += ",";
            out += (*this)[i];
            first = false;
        }
        return out + "}";
    }

    Json list_json(Subset s) const {
        Json arr = Json::array();
        for (int i : elements_of(s)) arr.push_back((*this)[i]);
        return arr;
    }

    Subset parse_subset(const std::string& text) const {
        const auto seq = parse_sequence_raw(text);
        if (seq.size() != 1) throw ParseError("expected exactly one subset in " + text);
        return seq.front();
    }

    /// "{1},{1,2}" → ({1},{1,2}); the empty string is the empty sequence.
    SetSequence parse_sequence(const std::string& text) const { return parse_sequence_raw(text); }

private:
    SetSequence parse_sequence_raw(const std::string& text) const {
        SetSequence out;
        std::size_t pos = 0;
        auto skip_space = [&] {
            while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        };
        skip_space();
        if (pos == text.size()) return out;
        while (true) {
            skip_space();
            if (pos >= text.size() || text[pos] != '{') throw ParseError("expected '{' in " + text);
            const auto close = text.find('}', pos);
            if (close == std::string::npos) throw ParseError("unbalanced braces in " + text);
            Subset s = 0;
            std::string body = text.substr(pos + 1, close - pos - 1);
            std::size_t start = 0;
            while (start <= body.size()) {
                auto comma = body.find(',', start);
                if (comma == std::string::npos) comma = body.size();
                std::string name = body.substr(start, comma - start);
                while (!name.empty() && name.front() == ' ') name.erase(name.begin());
                while (!name.empty() && name.back() == ' ') name.pop_back();
                if (!name.empty()) s |= singleton(index(name));
                else if (comma != body.size() || start != 0) throw ParseError("empty element name in " + text);
                start = comma + 1;
            }
            out.push_back(s);
            pos = close + 1;
            skip_space();
            if (pos == text.size()) return out;
            if (text[pos] != ',') throw ParseError("expected ',' between subsets in " + text);
            ++pos;
        }
    }

    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

/// A polymatroid together with the names of its elements.
struct Named {
    Polymatroid p;
    Names names;
};

namespace detail {

inline std::vector<int> int_vector(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

inline Names names_from(const Json& doc, int m) {
    if (!doc.contains("elements")) return Names::numbered(m);
    if (!doc["elements"].is_array()) throw ParseError("\"elements\" must be an array");
    std::vector<std::string> v;
    for (const auto& e : doc["elements"]) {
        if (e.is_string()) v.push_back(e.get<std::string>());
        else if (e.is_number_integer()) v.push_back(std::to_string(e.get<long long>()));
        else throw ParseError("element names must be strings");
    }
    if (static_cast<int>(v.size()) != m) throw ParseError("\"elements\" and \"type\" differ in length");
    return Names(std::move(v));
}

}  // namespace detail

/// Reads a polymatroid document. Besides an explicit "rank" (dense array in
/// bitmask order or a map "{a,b}" → value), a document may give "points"
/// (rank recovered as a max over the points) or a "preset": "boolean",
/// "zero", or "H" with a "set".
inline Named read_polymatroid(const Json& doc, int max_m = kDefaultMaxElements) {
    if (!doc.is_object()) throw ParseError("polymatroid document must be an object");
    if (!doc.contains("type")) throw ParseError("polymatroid document needs \"type\"");
    const auto type = detail::int_vector(doc["type"], "\"type\"");
    const GroundData ground(type, max_m);
    Names names = detail::names_from(doc, ground.m());

    const int sources = static_cast<int>(doc.contains("rank")) + static_cast<int>(doc.contains("points")) +
                        static_cast<int>(doc.contains("preset"));
    if (sources != 1) throw ParseError("give exactly one of \"rank\", \"points\", \"preset\"");

    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) throw ParseError("\"preset\" must be a string");
        const auto preset = doc["preset"].get<std::string>();
        if (preset == "boolean") return {make_boolean(ground), names};
        if (preset == "zero") return {make_zero(ground), names};
        if (preset == "H") {
            if (!doc.contains("set") || !doc["set"].is_string()) throw ParseError("preset H needs a \"set\" string");
            return {make_H(ground, names.parse_subset(doc["set"].get<std::string>())), names};
        }
        throw ParseError("unknown preset " + preset);
    }
    if (doc.contains("points")) {
        if (!doc["points"].is_array()) throw ParseError("\"points\" must be an array");
        std::vector<LatticePoint> points;
        for (const auto& x : doc["points"]) points.push_back(detail::int_vector(x, "point"));
        return {validate(rank_from_points(points, ground), ground), names};
    }
    const Json& rank = doc["rank"];
    std::vector<int> table;
    if (rank.is_array()) {
        table = detail::int_vector(rank, "\"rank\"");
    } else if (rank.is_object()) {
        table.assign(ground.table_size(), 0);
        std::vector<bool> seen(ground.table_size(), false);
        for (const auto& [key, value] : rank.items()) {
            if (!value.is_number_integer()) throw ParseError("rank values must be integers");
            const Subset s = names.parse_subset(key);
            if (seen[s]) throw ParseError("subset " + key + " given twice");
            seen[s] = true;
            table[s] = value.get<int>();
        }
        for (Subset s = 0; s < seen.size(); ++s)
            if (!seen[s]) throw Error(ErrorKind::TableSize, "rank map misses " + names.format(s), {s});
    } else {
        throw ParseError("\"rank\" must be an array or an object");
    }
    return {validate(std::move(table), ground), names};
}

inline Json write_polymatroid(const Polymatroid& p, const Names& names) {
    Json doc;
    doc["elements"] = names.list();
    doc["type"] = p.ground().type();
    doc["rank"] = p.table();
    return doc;
}

inline Json write_sequence(const SetSequence& seq, const Names& names) {
    Json arr = Json::array();
    for (Subset s : seq) arr.push_back(names.format(s));
    return arr;
}

/// Fan cones as {"I": [EE names], "chain": [[E names], ...], "weight": w}.
inline Json write_fan(const WeightedFan& fan, const Names& base, const Names& lifted) {
    Json doc;
    doc["type"] = fan.ground_map().type();
    doc["quotient"] = fan.quotient();
    doc["dim"] = fan.dim();
    doc["f"] = f_polynomial(fan);
    Json cones = Json::array();
    for (const auto& [c, w] : fan.cones()) {
        Json chain = Json::array();
        for (Subset f : c.chain) chain.push_back(base.list_json(f));
        Json cone;
        cone["I"] = lifted.list_json(c.independent);
        cone["chain"] = std::move(chain);
        cone["weight"] = w;
        cones.push_back(std::move(cone));
    }
    doc["cones"] = std::move(cones);
    return doc;
}

inline Rational read_rational(const Json& v) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (!v.is_string()) throw ParseError("matrix entries must be integers or \"p/q\" strings");
    const auto text = v.get<std::string>();
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in " + text);
        return Rational(BigInt(text.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        throw ParseError("bad rational " + text);
    }
}

inline Json write_rational(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) {
        const BigInt num = boost::multiprecision::numerator(q);
        if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max())
            return num.convert_to<long long>();
    }
    return to_string(q);
}

/// {"blocks": [a_1, ...], "rows": [[entries]]}.
inline RealizationMatrix read_matrix(const Json& doc) {
    if (!doc.is_object() || !doc.contains("blocks") || !doc.contains("rows"))
        throw ParseError("matrix document needs \"blocks\" and \"rows\"");
    RealizationMatrix r{detail::int_vector(doc["blocks"], "\"blocks\""), {}};
    if (!doc["rows"].is_array()) throw ParseError("\"rows\" must be an array");
    for (const auto& row : doc["rows"]) {
        if (!row.is_array()) throw ParseError("each row must be an array");
        std::vector<Rational> v;
        for (const auto& e : row) v.push_back(read_rational(e));
        r.rows.push_back(std::move(v));
    }
    return r;
}

inline Json write_matrix(const RealizationMatrix& r) {
    Json doc;
    doc["blocks"] = r.blocks;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json v = Json::array();
        for (const auto& q : row) v.push_back(write_rational(q));
        rows.push_back(std::move(v));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

/// {"terms": [{"coeff": c, "polymatroid": doc}, ...]}.
inline std::pair<Relation, Names> read_relation(const Json& doc, int max_m = kDefaultMaxElements) {
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("relation document needs a \"terms\" array");
    Relation terms;
    Names names;
    for (const auto& t : doc["terms"]) {
        if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_number_integer() || !t.contains("polymatroid"))
            throw ParseError("each term needs an integer \"coeff\" and a \"polymatroid\"");
        auto named = read_polymatroid(t["polymatroid"], max_m);
        if (terms.empty()) names = named.names;
        terms.emplace_back(t["coeff"].get<std::int64_t>(), std::move(named.p));
    }
    if (terms.empty()) throw ParseError("relation has no terms");
    return {std::move(terms), std::move(names)};
}

inline Json write_relation(const Relation& terms, const Names& names) {
    Json arr = Json::array();
    for (const auto& [c, p] : terms) {
        Json t;
        t["coeff"] = c;
        t["polymatroid"] = write_polymatroid(p, names);
        arr.push_back(std::move(t));
    }
    Json doc;
    doc["terms"] = std::move(arr);
    return doc;
}

/// Flattens a document into "key,value" lines (nested keys joined by '.').
inline std::string to_csv(const Json& doc) {
    std::string out = "key,value\n";
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    };
    auto walk = [&](auto&& self, const Json& j, const std::string& key) -> void {
        if (j.is_object()) {
            for (const auto& [k, v] : j.items()) self(self, v, key.empty() ? k : key + "." + k);
        } else if (j.is_array()) {
            if (j.empty()) out += quote(key) + ",\n";
            for (std::size_t i = 0; i < j.size(); ++i) self(self, j[i], key + "." + std::to_string(i));
        } else {
            out += quote(key) + "," + quote(j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
        }
    };
    walk(walk, doc, "");
    return out;
}

}  // namespace polymatroid::io

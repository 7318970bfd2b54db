#pragma once

// Command-line front end. `run` parses arguments, reads documents from files
// (or the input stream when no file is given) and writes one JSON or CSV
// document. Exit codes: 0 success, 1 domain error, 2 malformed input.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "polymatroid/chow.hpp"
#include "polymatroid/fans.hpp"
#include "polymatroid/io.hpp"
#include "polymatroid/lift.hpp"
#include "polymatroid/polymatroid.hpp"
#include "polymatroid/polytopes.hpp"
#include "polymatroid/realization.hpp"
#include "polymatroid/suite.hpp"

namespace polymatroid::cli {

using io::Json;
using io::Names;

struct GoldenReport {
    int passed = 0;
    std::vector<std::string> failures;
};

inline GoldenReport golden_check(const std::filesystem::path& dir);

namespace detail {

struct Settings {
    std::string format = "json";
    std::uint64_t seed = 1;
    int trials = 1000;
    int max_m = kDefaultMaxElements;
    std::string out_path;
    std::vector<std::string> files;
    std::vector<std::string> caps;  // "element=value"
    std::string seq;
    std::string element;
    int value = 0;
    std::string flat;
    std::string type;
    std::string times;
    std::string golden;
    std::optional<int> drop;
    std::optional<int> random_rows;
    std::optional<int> max_dim;
    bool dual = false;
    bool cells = false;
    bool lift = false;
    bool hpoly = false;
    bool support = false;
    bool as_class = false;
    std::string against;
};

class Session {
public:
    Session(const Settings& s, std::istream& in) : s_(s), in_(in) {}

    /// Names of the first document read, for formatting error witnesses.
    const std::optional<Names>& names() const { return names_; }
    void use_names(Names names) { names_ = std::move(names); }

    Json read_json(const std::string& path) {
        try {
            if (path.empty() || path == "-") return Json::parse(in_);
            std::ifstream f(path);
            if (!f) throw io::ParseError("cannot open " + path);
            return Json::parse(f);
        } catch (const Json::parse_error& e) {
            throw io::ParseError(std::string("invalid JSON: ") + e.what());
        }
    }

    std::string file(std::size_t k) const { return k < s_.files.size() ? s_.files[k] : std::string(); }

    io::Named polymatroid(std::size_t k = 0) {
        const Json doc = read_json(file(k));
        remember_names(doc);
        io::Named named = io::read_polymatroid(doc, s_.max_m);
        for (const auto& cap : s_.caps) {
            const auto eq = cap.find('=');
            if (eq == std::string::npos) throw io::ParseError("--cap expects element=value");
            int c = 0;
            try {
                c = std::stoi(cap.substr(eq + 1));
            } catch (const std::exception&) {
                throw io::ParseError("--cap value must be an integer");
            }
            if (c < 0) throw Error(ErrorKind::InvalidArgument, "cap value must be nonnegative");
            named.p = cap_element(named.p, named.names.index(cap.substr(0, eq)), c);
        }
        return named;
    }

    std::vector<int> type_flag() const {
        std::vector<int> out;
        std::stringstream ss(s_.type);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                out.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw io::ParseError("--type expects comma-separated integers");
            }
        }
        if (out.empty()) throw io::ParseError("--type is empty");
        return out;
    }

private:
    void remember_names(const Json& doc) {
        if (names_ || !doc.is_object() || !doc.contains("type") || !doc["type"].is_array()) return;
        try {
            names_ = io::detail::names_from(doc, static_cast<int>(doc["type"].size()));
        } catch (const std::exception&) {
        }
    }

    const Settings& s_;
    std::istream& in_;
    std::optional<Names> names_;
};

inline Json points_json(const std::vector<LatticePoint>& points) {
    Json arr = Json::array();
    for (const auto& x : points) arr.push_back(x);
    return arr;
}

inline Json monomial_key(const HMonomial& mono, const Names& names) {
    std::string key;
    for (Subset s : mono) key += (key.empty() ? "" : ",") + names.format(s);
    return key;
}

inline Json class_json(const ChowClass& xi, const Names& names) {
    Json pairing = Json::object();
    const auto basis = monomials(xi.ground().m(), xi.dim());
    for (std::size_t k = 0; k < basis.size(); ++k)
        pairing[monomial_key(basis[k], names).get<std::string>()] = xi.pairing()[k];
    Json doc;
    doc["dim"] = xi.dim();
    doc["pairing"] = std::move(pairing);
    return doc;
}

inline Json cone_json(const ConeLabel& c, const Names& base, const Names& lifted) {
    Json chain = Json::array();
    for (Subset f : c.chain) chain.push_back(base.list_json(f));
    Json cone;
    cone["I"] = lifted.list_json(c.independent);
    cone["chain"] = std::move(chain);
    return cone;
}

inline Json command(const std::string& name, const Settings& s, Session& session) {
    if (name == "validate") {
        const auto [p, names] = session.polymatroid();
        Json doc;
        doc["valid"] = true;
        doc["rank"] = p.rank();
        doc["polymatroid"] = io::write_polymatroid(p, names);
        return doc;
    }
    if (name == "dual") {
        const auto [p, names] = session.polymatroid();
        return io::write_polymatroid(dual(p), names);
    }
    if (name == "union" || name == "meet") {
        const auto a = session.polymatroid(0);
        const auto b = session.polymatroid(1);
        require_same_ground(a.p, b.p);
        return io::write_polymatroid(name == "union" ? polymatroid_union(a.p, b.p) : meet(a.p, b.p), a.names);
    }
    if (name == "lift") {
        const auto [p, names] = session.polymatroid();
        const GroundMap pi(p.ground().type());
        const Names lifted = names.lifted(p.ground().type());
        const Polymatroid m = msym_lift(p, pi);
        if (s.flat.empty()) return io::write_polymatroid(m, lifted);
        session.use_names(lifted);
        const Subset f = lifted.parse_subset(s.flat);
        const Subset geo = max_geometric_flat(m, pi, f);
        Json doc;
        doc["flat"] = lifted.format(f);
        doc["geometric"] = lifted.format(geo);
        doc["rank"] = m.rank(f);
        doc["geometric_rank"] = m.rank(geo);
        doc["excess"] = cardinality(f & ~geo);
        doc["base_rank"] = p.rank(pi.image(geo));
        return doc;
    }
    if (name == "expand") {
        const auto [p, names] = session.polymatroid();
        const Names lifted = names.lifted(p.ground().type());
        const Polymatroid q = expand(p, GroundMap(p.ground().type()));
        if (!s.cells) return io::write_polymatroid(q, lifted);
        Json cells = Json::array();
        for (const auto& cell : cube_slice(q)) {
            Json c;
            c["translation"] = cell.translation;
            c["rank"] = cell.matroid.rank();
            c["matroid"] = io::write_polymatroid(cell.matroid, lifted);
            cells.push_back(std::move(c));
        }
        Json doc;
        doc["cells"] = std::move(cells);
        return doc;
    }
    if (name == "flats") {
        const auto [p, names] = session.polymatroid();
        const auto data = flats(p);
        Json list = Json::array();
        for (Subset f : data.flats) list.push_back(names.format(f));
        Json doc;
        doc["flats"] = std::move(list);
        doc["loops"] = names.format(data.loops);
        doc["loopless"] = data.loops == 0;
        return doc;
    }
    if (name == "points") {
        const auto [p, names] = session.polymatroid();
        Json doc;
        doc["independence"] = points_json(independence_points(p));
        doc["base"] = points_json(base_points(p));
        return doc;
    }
    if (name == "fan" || name == "star" || name == "balanced") {
        if (!s.type.empty()) {
            const GroundMap pi(session.type_flag());
            const Names names = Names::numbered(pi.m());
            const Names lifted = names.lifted(pi.type());
            if (name == "star") return io::write_fan(polypermutohedral_fan(pi), names, lifted);
            if (s.hpoly) {
                Json doc;
                doc["f"] = f_polynomial(polystell_fan(pi));
                doc["decomposition"] = hpoly_decomposition(pi);
                doc["holds"] = hpoly_identity_check(pi);
                return doc;
            }
            const WeightedFan fan = polystell_fan(pi, s.max_dim);
            if (name == "fan") return io::write_fan(fan, names, lifted);
            const auto result = is_balanced(fan);
            Json doc;
            doc["balanced"] = result.balanced;
            doc["witness"] = result.witness ? cone_json(*result.witness, names, lifted) : Json();
            return doc;
        }
        const auto [p, names] = session.polymatroid();
        const GroundMap pi(p.ground().type());
        const Names lifted = names.lifted(p.ground().type());
        const Names& base = s.lift ? lifted : names;
        WeightedFan fan = s.lift ? aug_bergman_fan(msym_lift(p, pi)) : aug_bergman_fan(p, pi);
        if (name == "star") return io::write_fan(star_empty(fan, s.lift ? msym_lift(p, pi) : p), base, lifted);
        if (name == "balanced") {
            if (s.drop) {
                const auto top = fan.maximal_cones();
                if (*s.drop < 0 || *s.drop >= static_cast<int>(top.size()))
                    throw Error(ErrorKind::InvalidArgument, "--drop index out of range");
                fan.erase(top[static_cast<std::size_t>(*s.drop)]);
            }
            const auto result = is_balanced(fan);
            Json doc;
            doc["balanced"] = result.balanced;
            doc["witness"] = result.witness ? cone_json(*result.witness, base, lifted) : Json();
            return doc;
        }
        if (s.support) {
            WeightedFan other = aug_bergman_fan(msym_lift(p, pi));
            if (!s.against.empty()) {
                const auto q = io::read_polymatroid(session.read_json(s.against), s.max_m);
                other = aug_bergman_fan(msym_lift(q.p, GroundMap(q.p.ground().type())));
            }
            const auto report = support_sample_report(fan, other, s.trials, s.seed);
            Json doc;
            doc["agree"] = report.agree;
            doc["trials"] = report.trials;
            doc["in_both"] = report.in_both;
            doc["in_neither"] = report.in_neither;
            Json witness = Json();
            if (report.witness) {
                witness = Json::array();
                for (const auto& q : *report.witness) witness.push_back(io::write_rational(q));
            }
            doc["witness"] = std::move(witness);
            return doc;
        }
        Json doc = io::write_fan(fan, base, lifted);
        doc["pure"] = fan.is_pure();
        return doc;
    }
    if (name == "degree" || name == "cascade" || name == "hr" || name == "dragon") {
        const auto [p, names] = session.polymatroid();
        if (name == "degree" && s.as_class) {
            ChowClass xi = bergman_class(p);
            for (Subset t : names.parse_sequence(s.times)) xi = multiply_by_h(xi, t);
            return class_json(xi, names);
        }
        const SetSequence seq = names.parse_sequence(s.seq);
        Json doc;
        if (name == "degree") doc["degree"] = degree_hr(p, seq);
        if (name == "cascade") doc["degree"] = degree_cascade(p, seq);
        if (name == "dragon") {
            doc["degree"] = dragon_degree(p, seq);
            doc["dragon_hall_rado"] = dragon_check(p, seq);
        }
        if (name == "hr") {
            doc["hall_rado"] = hall_rado(p, seq);
            const auto f = rado_matching(p, seq);
            if (f) {
                Json matching = Json::array();
                std::vector<int> x(static_cast<std::size_t>(p.m()), 0);
                for (int e : *f) {
                    matching.push_back(names[e]);
                    ++x[static_cast<std::size_t>(e)];
                }
                doc["matching"] = std::move(matching);
                doc["point"] = x;
            } else {
                doc["matching"] = Json();
                doc["point"] = Json();
            }
        }
        return doc;
    }
    if (name == "volume" || name == "egf") {
        const auto [p, names] = session.polymatroid();
        Json doc;
        doc["poly"] = (name == "volume" ? volume_polynomial(p) : basis_egf(p)).to_string();
        return doc;
    }
    if (name == "split") {
        const auto [p, names] = session.polymatroid();
        if (s.element.empty()) throw io::ParseError("split needs --element");
        const Split parts = hyperplane_split(p, names.index(s.element), s.value);
        const auto v = valuative_check(split_relation(p, parts));
        Json doc;
        doc["le"] = io::write_polymatroid(parts.le, names);
        doc["ge"] = io::write_polymatroid(parts.ge, names);
        doc["eq"] = io::write_polymatroid(parts.eq, names);
        Json points;
        points["le"] = points_json(base_points(parts.le));
        points["ge"] = points_json(base_points(parts.ge));
        points["eq"] = points_json(base_points(parts.eq));
        doc["base_points"] = std::move(points);
        doc["lhs_zero"] = v.lhs_zero;
        doc["rhs_zero"] = v.rhs_zero;
        return doc;
    }
    if (name == "valcheck") {
        const auto [terms, names] = io::read_relation(session.read_json(session.file(0)), s.max_m);
        const auto v = valuative_check(terms);
        Json doc;
        doc["lhs_zero"] = v.lhs_zero;
        doc["rhs_zero"] = v.rhs_zero;
        doc["agree"] = v.agree();
        return doc;
    }
    if (name == "realize") {
        RealizationMatrix r = s.random_rows ? random_realization(session.type_flag(), *s.random_rows, s.seed)
                                            : io::read_matrix(session.read_json(session.file(0)));
        if (s.dual) r = realize_dual(r);
        const Polymatroid p = rank_function(r);
        Json doc;
        doc["matrix"] = io::write_matrix(r);
        doc["polymatroid"] = io::write_polymatroid(p, Names::numbered(p.m()));
        return doc;
    }
    if (name == "suite") {
        suite::Options opt;
        opt.seed = s.seed;
        opt.support_trials = s.trials;
        auto results = suite::run_library_criteria(opt);
        suite::CriterionResult golden{12, "command-line golden files", true, ""};
        if (!s.golden.empty()) {
            const auto report = golden_check(s.golden);
            golden.pass = report.failures.empty() && report.passed > 0;
            golden.detail = std::to_string(report.passed) + " passed";
            for (const auto& f : report.failures) golden.detail += ", failed " + f;
        } else {
            golden.detail = "skipped (no --golden directory)";
        }
        results.push_back(golden);
        Json list = Json::array();
        bool all = true;
        for (const auto& r : results) {
            Json c;
            c["id"] = r.id;
            c["name"] = r.name;
            c["pass"] = r.pass;
            c["detail"] = r.detail;
            list.push_back(std::move(c));
            all = all && r.pass;
        }
        Json doc;
        doc["criteria"] = std::move(list);
        doc["pass"] = all;
        return doc;
    }
    throw io::ParseError("unknown command " + name);
}

inline Json error_json(const std::string& kind, const std::string& operation, const std::string& message) {
    Json doc;
    doc["error"] = kind;
    doc["operation"] = operation;
    doc["message"] = message;
    return doc;
}

}  // namespace detail

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"validate", "dual",   "union",   "meet",     "lift",   "expand", "flats",
                                                "points",   "fan",    "star",    "balanced", "degree", "cascade", "volume",
                                                "egf",      "hr",     "dragon",  "split",    "valcheck", "realize", "suite"};
    return names;
}

inline std::string command_description(const std::string& name) {
    static const std::map<std::string, std::string> text{
        {"validate", "Check the polymatroid axioms"},
        {"dual", "Dual polymatroid"},
        {"union", "Union of two polymatroids"},
        {"meet", "Meet of two polymatroids"},
        {"lift", "Multisymmetric lift (optionally a geometric flat)"},
        {"expand", "Expansion along the ground map (optionally cube cells)"},
        {"flats", "Flats and loops"},
        {"points", "Lattice points of the independence and base polytopes"},
        {"fan", "Augmented Bergman or polystellahedral fan"},
        {"star", "Star of a fan at the empty ray"},
        {"balanced", "Balancing check of a fan"},
        {"degree", "Degree of an h-monomial, or a Bergman class"},
        {"cascade", "Degree by repeated meets with H_S"},
        {"volume", "Volume polynomial"},
        {"egf", "Exponential generating function of base points"},
        {"hr", "Hall-Rado condition and a Rado matching"},
        {"dragon", "Dragon degree and dragon Hall-Rado condition"},
        {"split", "Hyperplane split of the base polytope"},
        {"valcheck", "Compare a relation on classes and on indicators"},
        {"realize", "Polymatroid of a subspace given by a matrix"},
        {"suite", "Run the self-check criteria"}};
    const auto it = text.find(name);
    return it == text.end() ? std::string() : it->second;
}

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    detail::Settings s;
    CLI::App app{"Exact polymatroid intersection theory", "polymatroid"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", s.seed, "Seed for sampled checks");
    app.add_option("--trials", s.trials, "Number of sampled trials")->check(CLI::PositiveNumber);
    app.add_option("--max-m", s.max_m, "Largest accepted ground set")->check(CLI::Range(1, kHardMaxElements));
    app.add_option("--out", s.out_path, "Write the output document to this file");
    app.add_option("--cap", s.caps, "Cap an element of every input: element=value")
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    for (const auto& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, command_description(name));
        sub->add_option("files", s.files, "Input documents (standard input when omitted)");
        if (name == "degree" || name == "cascade" || name == "hr" || name == "dragon")
            sub->add_option("--seq", s.seq, "Set sequence, e.g. {1},{1,2}");
        if (name == "degree") {
            sub->add_flag("--class", s.as_class, "Print the pairing vector of the Bergman class");
            sub->add_option("--times", s.times, "Multiply the class by h_S for each listed S");
        }
        if (name == "split") {
            sub->add_option("--element", s.element, "Element to cut along")->required();
            sub->add_option("--value", s.value, "Hyperplane x_i = value")->required();
        }
        if (name == "lift") sub->add_option("--flat", s.flat, "Report the maximal geometric flat inside this flat");
        if (name == "expand") sub->add_flag("--cells", s.cells, "Slice the expansion by unit cubes");
        if (name == "fan" || name == "star" || name == "balanced") {
            sub->add_option("--type", s.type, "Use the polystellahedral fan of this type, e.g. 2,1");
            sub->add_flag("--lift", s.lift, "Use the fan of the multisymmetric lift");
        }
        if (name == "fan") {
            sub->add_flag("--hpoly", s.hpoly, "Check the f-polynomial decomposition (with --type)");
            sub->add_flag("--support", s.support, "Compare supports with the fan of the lift by sampling");
            sub->add_option("--against", s.against, "Compare with the lift fan of this polymatroid instead");
            sub->add_option("--max-dim", s.max_dim, "Only cones up to this dimension (with --type)");
        }
        if (name == "balanced") sub->add_option("--drop", s.drop, "Delete this maximal cone first");
        if (name == "realize") {
            sub->add_flag("--dual", s.dual, "Realize the dual");
            sub->add_option("--random", s.random_rows, "Random realization with this many rows (needs --type)");
            sub->add_option("--type", s.type, "Block sizes for --random");
        }
        if (name == "suite") sub->add_option("--golden", s.golden, "Directory of golden files to replay");
    }

    auto emit = [&](const Json& doc) {
        std::string text = s.format == "csv" ? io::to_csv(doc) : doc.dump() + "\n";
        if (s.out_path.empty()) {
            out << text;
            return;
        }
        std::ofstream f(s.out_path, std::ios::binary);
        f << text;
    };

    std::string operation;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        for (const auto* sub : app.get_subcommands()) operation = sub->get_name();
        emit(detail::error_json("Parse", operation, e.what()));
        return 2;
    }
    operation = app.get_subcommands().front()->get_name();

    detail::Session session(s, in);
    try {
        const Json doc = detail::command(operation, s, session);
        emit(doc);
        if (operation == "suite" && !doc["pass"].get<bool>()) return 1;
        return 0;
    } catch (const io::ParseError& e) {
        emit(detail::error_json("Parse", operation, e.what()));
        return 2;
    } catch (const Error& e) {
        Json doc = detail::error_json(to_string(e.kind()), operation, e.what());
        Json witness = Json::array();
        for (Subset w : e.witness()) {
            const auto& names = session.names();
            const bool fits = names && is_subset(w, full_set(names->size()));
            witness.push_back(fits ? names->format(w) : std::to_string(w));
        }
        doc["witness"] = std::move(witness);
        emit(doc);
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

inline std::vector<std::string> split_words(const std::string& line) {
    std::istringstream ss(line);
    return {std::istream_iterator<std::string>(ss), std::istream_iterator<std::string>()};
}

/// Replays every NAME.cmd in `dir`: the file holds the argument list, input
/// documents are looked up in dir/data, and the output followed by a line
/// "exit: N" must equal NAME.out byte for byte.
inline GoldenReport golden_check(const std::filesystem::path& dir) {
    GoldenReport report;
    std::vector<std::filesystem::path> cases;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".cmd") cases.push_back(entry.path());
    std::sort(cases.begin(), cases.end());
    for (const auto& cmd : cases) {
        std::ifstream f(cmd);
        std::string line((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        auto args = split_words(line);
        for (auto& a : args)
            if (a.size() > 5 && a.substr(a.size() - 5) == ".json" && a.front() != '-') a = (dir / "data" / a).string();
        std::istringstream in;
        std::ostringstream out;
        std::ostringstream err;
        const int code = run(args, in, out, err);
        const std::string actual = out.str() + "exit: " + std::to_string(code) + "\n";
        std::ifstream expected_file(std::filesystem::path(cmd).replace_extension(".out"), std::ios::binary);
        const std::string expected((std::istreambuf_iterator<char>(expected_file)), std::istreambuf_iterator<char>());
        if (actual == expected) ++report.passed;
        else report.failures.push_back(cmd.stem().string());
    }
    return report;
}

}  // namespace polymatroid::cli

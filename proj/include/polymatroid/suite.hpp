#pragma once

// The verification battery: each criterion checks one identity of the
// theory exhaustively on small polymatroids and on seeded random samples.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polymatroid/chow.hpp"
#include "polymatroid/enumerate.hpp"
#include "polymatroid/fans.hpp"
#include "polymatroid/lift.hpp"
#include "polymatroid/polymatroid.hpp"
#include "polymatroid/polytopes.hpp"
#include "polymatroid/realization.hpp"

namespace polymatroid::suite {

struct Options {
    std::uint64_t seed = 1;
    int support_trials = 1000;
    int random_instances = 200;  // m = 3, a = (2,1,1)
    int random_relations = 100;
    int random_matrices = 100;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = true;
    std::string detail;
};

/// All tables of type (2,1) and (2,2), plus seeded draws of type (2,1,1).
struct Corpus {
    std::vector<Polymatroid> enumerated;
    std::vector<Polymatroid> random;

    explicit Corpus(const Options& opt) {
        for (const auto& type : {std::vector<int>{2, 1}, std::vector<int>{2, 2}})
            for (auto& p : all_polymatroids(GroundData(type))) enumerated.push_back(std::move(p));
        random = sample_polymatroids(GroundData({2, 1, 1}), opt.random_instances, opt.seed);
    }

    std::vector<Polymatroid> both() const {
        auto out = enumerated;
        out.insert(out.end(), random.begin(), random.end());
        return out;
    }
};

namespace detail {

inline std::string table_text(const Polymatroid& p) {
    std::string s = "type (";
    for (std::size_t i = 0; i < p.ground().type().size(); ++i) s += (i ? "," : "") + std::to_string(p.ground().a(static_cast<int>(i)));
    s += ") ranks (";
    for (std::size_t i = 0; i < p.table().size(); ++i) s += (i ? "," : "") + std::to_string(p.table()[i]);
    return s + ")";
}

inline std::string seq_text(const SetSequence& seq) {
    std::string s;
    for (Subset x : seq) s += "{" + std::to_string(x) + "}";
    return s.empty() ? "()" : s;
}

inline CriterionResult fail(CriterionResult r, const std::string& why) {
    r.pass = false;
    r.detail = why;
    return r;
}

}  // namespace detail

inline CriterionResult hall_rado_vs_cascade(const Corpus& corpus) {
    CriterionResult r{1, "Hall-Rado degree equals meet-cascade degree", true, ""};
    long count = 0;
    for (const auto& p : corpus.enumerated)
        for (const auto& seq : all_sequences(p.m(), p.rank())) {
            ++count;
            if (degree_hr(p, seq) != degree_cascade(p, seq))
                return detail::fail(r, detail::table_text(p) + " sequence " + detail::seq_text(seq));
        }
    r.detail = std::to_string(corpus.enumerated.size()) + " polymatroids, " + std::to_string(count) + " sequences";
    return r;
}

inline CriterionResult volume_equals_egf(const Corpus& corpus) {
    CriterionResult r{2, "volume polynomial equals basis exponential generating function", true, ""};
    const auto all = corpus.both();
    for (const auto& p : all)
        if (volume_polynomial(p) != basis_egf(p)) return detail::fail(r, detail::table_text(p));
    r.detail = std::to_string(all.size()) + " polymatroids";
    return r;
}

inline CriterionResult rado_matching_iff_hall_rado(const Corpus& corpus) {
    CriterionResult r{3, "Rado matching exists iff Hall-Rado holds", true, ""};
    long count = 0;
    auto check = [&](const Polymatroid& p, const SetSequence& seq) {
        ++count;
        const auto f = rado_matching(p, seq);
        if (f.has_value() != hall_rado(p, seq)) return false;
        if (!f) return true;
        // the witness must be an admissible assignment landing in I(P)
        std::vector<int> x(static_cast<std::size_t>(p.m()), 0);
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (!contains(seq[j], (*f)[j])) return false;
            ++x[static_cast<std::size_t>((*f)[j])];
        }
        return polymatroid::detail::point_independent(p, x);
    };
    for (const auto& p : corpus.enumerated)
        for (int k = 0; k <= p.rank() + 1; ++k)
            for (const auto& seq : all_sequences(p.m(), k))
                if (!check(p, seq)) return detail::fail(r, detail::table_text(p) + " sequence " + detail::seq_text(seq));
    for (const auto& p : corpus.random)
        for (const auto& seq : monomials(p.m(), p.rank()))
            if (!check(p, seq)) return detail::fail(r, detail::table_text(p) + " sequence " + detail::seq_text(seq));
    r.detail = std::to_string(count) + " (polymatroid, sequence) pairs";
    return r;
}

inline CriterionResult lift_identities(const Corpus& corpus) {
    CriterionResult r{4, "multisymmetric lift: projection and duality", true, ""};
    const auto all = corpus.both();
    for (const auto& p : all) {
        const GroundMap pi(p.ground().type());
        const Polymatroid lift = msym_lift(p, pi);
        std::vector<LatticePoint> expected;
        for (Subset s = 0; s <= full_set(pi.n()); ++s) {
            LatticePoint x(static_cast<std::size_t>(pi.n()), 0);
            for (int j : elements_of(s)) x[static_cast<std::size_t>(j)] = 1;
            if (polymatroid::detail::point_independent(p, pi.project(x))) expected.push_back(std::move(x));
        }
        std::sort(expected.begin(), expected.end());
        if (independence_points(lift) != expected) return detail::fail(r, "projection fails for " + detail::table_text(p));
        if (msym_lift(dual(p), pi) != dual(lift)) return detail::fail(r, "duality fails for " + detail::table_text(p));
        for (Subset s = 0; s <= p.ground().full(); ++s)
            if (lift.rank(pi.preimage(s)) != p.rank(s)) return detail::fail(r, "recovery fails for " + detail::table_text(p));
    }
    r.detail = std::to_string(all.size()) + " polymatroids";
    return r;
}

inline CriterionResult fan_checks(const Corpus& corpus, const Options& opt) {
    CriterionResult r{5, "augmented Bergman fan: purity, balancing, support", true, ""};
    std::uint64_t seed = opt.seed;
    for (const auto& p : corpus.enumerated) {
        const GroundMap pi(p.ground().type());
        const WeightedFan fan = aug_bergman_fan(p, pi);
        if (fan.dim() != p.rank() || !fan.is_pure()) return detail::fail(r, "not pure of dimension r: " + detail::table_text(p));
        if (!is_balanced(fan).balanced) return detail::fail(r, "not balanced: " + detail::table_text(p));
        const WeightedFan polystell = polystell_fan(pi);
        for (const auto& [c, w] : fan.cones())
            if (!polystell.contains(c)) return detail::fail(r, "not a subfan of the polystellahedral fan: " + detail::table_text(p));
        const auto report = support_sample_report(fan, aug_bergman_fan(msym_lift(p, pi)), opt.support_trials, seed++);
        if (!report.agree) return detail::fail(r, "supports differ: " + detail::table_text(p));
    }
    r.detail = std::to_string(corpus.enumerated.size()) + " fans, " + std::to_string(opt.support_trials) +
               " support samples each";
    return r;
}

inline CriterionResult hpoly_identity() {
    CriterionResult r{6, "f-polynomial decomposition of the polystellahedral fan", true, ""};
    for (const auto& type : {std::vector<int>{1}, std::vector<int>{2}, std::vector<int>{1, 1}, std::vector<int>{2, 1}})
        if (!hpoly_identity_check(GroundMap(type))) return detail::fail(r, "identity fails for type of size " + std::to_string(type.size()));
    r.detail = "types (1), (2), (1,1), (2,1)";
    return r;
}

inline CriterionResult dragon_hall_rado(const Corpus& corpus) {
    CriterionResult r{7, "dragon degree equals dragon Hall-Rado indicator", true, ""};
    long count = 0;
    for (const auto& p : corpus.enumerated) {
        if (!is_loopless(p) || p.rank() < 1) continue;
        for (const auto& seq : all_sequences(p.m(), p.rank() - 1)) {
            ++count;
            if (dragon_degree(p, seq) != (dragon_check(p, seq) ? 1 : 0))
                return detail::fail(r, detail::table_text(p) + " sequence " + detail::seq_text(seq));
        }
    }
    r.detail = std::to_string(count) + " (loopless polymatroid, sequence) pairs";
    return r;
}

/// Legal (i, c) for hyperplane_split.
inline std::vector<std::pair<int, int>> legal_splits(const Polymatroid& p) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < p.m(); ++i) {
        const int lo = p.rank() - p.rank(p.ground().full() & ~singleton(i));
        for (int c = lo; c <= p.rank(singleton(i)); ++c) out.emplace_back(i, c);
    }
    return out;
}

/// A relation built from a split, possibly refined by splitting one of its
/// pieces again, and possibly perturbed so that it no longer vanishes.
inline Relation random_relation(const std::vector<Polymatroid>& pool, std::mt19937_64& rng) {
    auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };
    const Polymatroid& p = pool[pick(pool.size())];
    const auto splits = legal_splits(p);
    const auto [i, c] = splits[pick(splits.size())];
    Relation rel = split_relation(p, hyperplane_split(p, i, c));
    if (rng() % 2 == 0) {
        const std::size_t k = 1 + pick(3);  // one of le, ge, eq
        const auto [coeff, q] = rel[k];
        const auto inner = legal_splits(q);
        const auto [i2, c2] = inner[pick(inner.size())];
        rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(k));
        // substitute q = le' + ge' - eq'
        const auto refined = split_relation(q, hyperplane_split(q, i2, c2));
        for (std::size_t t = 1; t < refined.size(); ++t) rel.emplace_back(-coeff * refined[t].first, refined[t].second);
    }
    switch (rng() % 3) {
    case 0: break;
    case 1:
        if (rel.size() > 1) rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(pick(rel.size())));
        break;
    default: rel[pick(rel.size())].first += (rng() % 2 == 0) ? 1 : -1; break;
    }
    return rel;
}

inline CriterionResult valuativity(const Corpus& corpus, const Options& opt) {
    CriterionResult r{8, "valuative relations: Bergman classes vs indicator functions", true, ""};
    long splits = 0;
    for (const auto& p : corpus.enumerated)
        for (const auto [i, c] : legal_splits(p)) {
            ++splits;
            const auto s = hyperplane_split(p, i, c);
            for (const auto* q : {&s.le, &s.ge, &s.eq})
                if (q->rank() != p.rank()) return detail::fail(r, "split changes rank: " + detail::table_text(p));
            const auto v = valuative_check(split_relation(p, s));
            if (!v.lhs_zero || !v.rhs_zero)
                return detail::fail(r, "split relation fails for " + detail::table_text(p) + " at element " +
                                           std::to_string(i) + " value " + std::to_string(c));
        }
    std::mt19937_64 rng(opt.seed);
    int vanishing = 0;
    for (int k = 0; k < opt.random_relations; ++k) {
        const Relation rel = random_relation(corpus.random, rng);
        const auto v = valuative_check(rel);
        if (!v.agree()) return detail::fail(r, "random relation " + std::to_string(k) + " disagrees");
        vanishing += v.lhs_zero ? 1 : 0;
    }
    r.detail = std::to_string(splits) + " splits, " + std::to_string(opt.random_relations) + " random relations (" +
               std::to_string(vanishing) + " vanishing)";
    return r;
}

inline CriterionResult cube_cells(const Corpus& corpus) {
    CriterionResult r{9, "cube slicing of expansions into matroid cells", true, ""};
    long cells = 0;
    for (const auto& p : corpus.both()) {
        const GroundMap pi(p.ground().type());
        const Polymatroid q = expand(p, pi);
        for (const auto& cell : cube_slice(q)) {
            ++cells;
            if (!cell.matroid.is_matroid()) return detail::fail(r, "cell is not a matroid: " + detail::table_text(p));
            const bool origin = std::all_of(cell.translation.begin(), cell.translation.end(), [](int v) { return v == 0; });
            if (origin && cell.matroid != msym_lift(p, pi))
                return detail::fail(r, "origin cell differs from the lift: " + detail::table_text(p));
            if (!origin && cell.matroid.rank() >= p.rank())
                return detail::fail(r, "translated cell has full rank: " + detail::table_text(p));
        }
    }
    r.detail = std::to_string(cells) + " cells";
    return r;
}

inline CriterionResult realization(const Options& opt) {
    CriterionResult r{10, "realizations: rank function and duality square", true, ""};
    const RealizationMatrix m0{{2, 1}, {{1, 0, 1}, {0, 1, 1}}};
    if (rank_function(m0).table() != std::vector<int>{0, 2, 1, 2}) return detail::fail(r, "P0 matrix gives the wrong table");
    std::mt19937_64 rng(opt.seed);
    for (int k = 0; k < opt.random_matrices; ++k) {
        const int m = 1 + static_cast<int>(rng() % 3);
        std::vector<int> blocks(static_cast<std::size_t>(m));
        int n = 0;
        for (auto& b : blocks) {
            b = static_cast<int>(rng() % 3);
            if (n + b > 6) b = 6 - n;
            n += b;
        }
        const int l = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
        const auto mat = random_realization(blocks, l, rng());
        if (rank_function(realize_dual(mat)) != dual(rank_function(mat)))
            return detail::fail(r, "duality square fails for matrix " + std::to_string(k));
    }
    r.detail = "P0 matrix and " + std::to_string(opt.random_matrices) + " random matrices";
    return r;
}

inline CriterionResult normalization() {
    CriterionResult r{11, "degree of y_1^a_1 ... y_m^a_m on the Boolean polymatroid", true, ""};
    int count = 0;
    for (int m = 1; m <= 3; ++m) {
        std::vector<int> a(static_cast<std::size_t>(m), 0);
        while (true) {
            SetSequence seq;
            for (int i = 0; i < m; ++i) seq.insert(seq.end(), static_cast<std::size_t>(a[static_cast<std::size_t>(i)]), singleton(i));
            const Polymatroid b = make_boolean(GroundData(a));
            ++count;
            if (degree_hr(b, seq) != 1 || degree_cascade(b, seq) != 1)
                return detail::fail(r, "fails for " + detail::table_text(b));
            int i = m - 1;
            while (i >= 0 && a[static_cast<std::size_t>(i)] == 2) a[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++a[static_cast<std::size_t>(i)];
        }
    }
    r.detail = std::to_string(count) + " type vectors with m <= 3, a_i <= 2";
    return r;
}

/// Criteria 1-11; the golden-file criterion lives with the command line.
inline std::vector<CriterionResult> run_library_criteria(const Options& opt) {
    const Corpus corpus(opt);
    return {hall_rado_vs_cascade(corpus), volume_equals_egf(corpus), rado_matching_iff_hall_rado(corpus),
            lift_identities(corpus),      fan_checks(corpus, opt),   hpoly_identity(),
            dragon_hall_rado(corpus),     valuativity(corpus, opt),  cube_cells(corpus),
            realization(opt),             normalization()};
}

}  // namespace polymatroid::suite

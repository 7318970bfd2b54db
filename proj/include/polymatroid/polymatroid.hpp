#pragma once

// Polymatroid kernel: dense rank tables, axiom validation, duality,
// union/meet, box truncation, flats and the Hall–Rado matching condition.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polymatroid/ground.hpp"

namespace polymatroid {

/// A sequence S_1, ..., S_k of nonempty subsets of E. Duplicates allowed.
using SetSequence = std::vector<Subset>;

/// The first axiom a raw table violates, with the witnessing subsets.
struct AxiomViolation {
    ErrorKind kind;
    std::vector<Subset> witness;
    std::string message;
};

/// Checks the four polymatroid axioms plus table shape. Returns the first
/// violation found, or nullopt when the table is a valid rank function.
///
/// Submodularity is checked in its local form
///   rk(S+i) + rk(S+j) >= rk(S) + rk(S+i+j),
/// which is equivalent to the global inequality; the witness reported is the
/// pair (S+i, S+j).
inline std::optional<AxiomViolation> check_axioms(const std::vector<int>& table, const GroundData& ground) {
    const int m = ground.m();
    if (table.size() != ground.table_size())
        return AxiomViolation{ErrorKind::TableSize, {},
                              "rank table has " + std::to_string(table.size()) + " entries, expected " +
                                  std::to_string(ground.table_size())};
    for (std::size_t s = 0; s < table.size(); ++s)
        if (table[s] < 0)
            return AxiomViolation{ErrorKind::NegativeEntry, {static_cast<Subset>(s)}, "negative rank entry"};
    if (table[0] != 0) return AxiomViolation{ErrorKind::Normalization, {0}, "rank of the empty set is not zero"};

    const Subset full = ground.full();
    for (Subset s = 0; s <= full; ++s) {
        for (int i = 0; i < m; ++i) {
            if (contains(s, i)) continue;
            const Subset si = s | singleton(i);
            if (table[s] > table[si])
                return AxiomViolation{ErrorKind::Monotonicity, {s, si}, "rank decreases along an inclusion"};
        }
    }
    for (Subset s = 0; s <= full; ++s) {
        for (int i = 0; i < m; ++i) {
            if (contains(s, i)) continue;
            for (int j = i + 1; j < m; ++j) {
                if (contains(s, j)) continue;
                const Subset si = s | singleton(i);
                const Subset sj = s | singleton(j);
                if (table[si] + table[sj] < table[s] + table[si | sj])
                    return AxiomViolation{ErrorKind::Submodularity, {si, sj}, "submodular inequality fails"};
            }
        }
    }
    for (int i = 0; i < m; ++i)
        if (table[singleton(i)] > ground.a(i))
            return AxiomViolation{ErrorKind::Type, {singleton(i)}, "singleton rank exceeds its type bound"};
    return std::nullopt;
}

class Polymatroid;
Polymatroid validate(std::vector<int> table, const GroundData& ground);

/// An integer polymatroid on E = {0, ..., m-1} of type a, stored as its
/// dense rank table indexed by subset bitmask. Instances always satisfy the
/// axioms: the only way to obtain one is through `validate`.
class Polymatroid {
public:
    const GroundData& ground() const noexcept { return ground_; }
    int m() const noexcept { return ground_.m(); }
    int rank(Subset s) const { return table_[s]; }
    /// r = rk(E).
    int rank() const { return table_.back(); }
    const std::vector<int>& table() const noexcept { return table_; }

    bool is_matroid() const {
        for (int i = 0; i < m(); ++i)
            if (rank(singleton(i)) > 1) return false;
        return true;
    }

    friend bool operator==(const Polymatroid&, const Polymatroid&) = default;

private:
    Polymatroid(GroundData ground, std::vector<int> table) : ground_(std::move(ground)), table_(std::move(table)) {}
    friend Polymatroid validate(std::vector<int> table, const GroundData& ground);

    GroundData ground_;
    std::vector<int> table_;
};

/// Builds a polymatroid from a raw table; throws ValidationError on the first
/// violated axiom.
inline Polymatroid validate(std::vector<int> table, const GroundData& ground) {
    if (auto v = check_axioms(table, ground)) throw ValidationError(v->kind, v->message, v->witness);
    return Polymatroid(ground, std::move(table));
}

inline bool is_valid(const std::vector<int>& table, const GroundData& ground) {
    return !check_axioms(table, ground).has_value();
}

inline void require_same_ground(const Polymatroid& p, const Polymatroid& q) {
    if (p.ground() != q.ground())
        throw Error(ErrorKind::GroundMismatch, "polymatroids have different ground data");
}

inline Polymatroid make_boolean(const GroundData& ground) {
    std::vector<int> t(ground.table_size());
    for (Subset s = 0; s < t.size(); ++s) t[s] = ground.weight(s);
    return validate(std::move(t), ground);
}

/// The rank-0 polymatroid: every element is a loop.
inline Polymatroid make_zero(const GroundData& ground) {
    return validate(std::vector<int>(ground.table_size(), 0), ground);
}

/// rk⊥(S) = Σ_{i∈S} a_i + rk(E∖S) − r.
inline Polymatroid dual(const Polymatroid& p) {
    const GroundData& g = p.ground();
    const Subset full = g.full();
    std::vector<int> t(g.table_size());
    for (Subset s = 0; s <= full; ++s) t[s] = g.weight(s) + p.rank(full & ~s) - p.rank();
    return validate(std::move(t), g);
}

namespace detail {

/// rk'(S) = min_{T⊆S} ( f(T) + Σ_{j∈S∖T} caps_j ): the rank function whose
/// independence polytope is I(f) ∩ ∏[0, caps_j].
inline std::vector<int> truncate_to_box(const std::vector<int>& f, const std::vector<int>& caps, int m) {
    const Subset full = full_set(m);
    std::vector<int> cap_weight(std::size_t{1} << m, 0);
    for (Subset s = 1; s <= full; ++s) {
        const int low = std::countr_zero(s);
        cap_weight[s] = cap_weight[s & (s - 1)] + caps[static_cast<std::size_t>(low)];
    }
    std::vector<int> out(f.size());
    for (Subset s = 0; s <= full; ++s) {
        int best = std::numeric_limits<int>::max();
        for_each_subset(s, [&](Subset t) { best = std::min(best, f[t] + cap_weight[s & ~t]); });
        out[s] = best;
    }
    return out;
}

}  // namespace detail

/// Polymatroid union: independence polytope (I(P1) + I(P2)) ∩ ∏[0, a_i].
inline Polymatroid polymatroid_union(const Polymatroid& p1, const Polymatroid& p2) {
    require_same_ground(p1, p2);
    std::vector<int> sum(p1.table().size());
    for (std::size_t s = 0; s < sum.size(); ++s) sum[s] = p1.table()[s] + p2.table()[s];
    return validate(detail::truncate_to_box(sum, p1.ground().type(), p1.m()), p1.ground());
}

/// Polymatroid intersection P1 ∧ P2 = (P1⊥ ∨ P2⊥)⊥.
inline Polymatroid meet(const Polymatroid& p1, const Polymatroid& p2) {
    require_same_ground(p1, p2);
    return dual(polymatroid_union(dual(p1), dual(p2)));
}

/// Truncates the independence polytope by x_i <= c.
inline Polymatroid cap_element(const Polymatroid& p, int i, int c) {
    if (i < 0 || i >= p.m()) throw Error(ErrorKind::UnknownElement, "element index out of range");
    if (c < 0) throw Error(ErrorKind::InvalidArgument, "cap must be nonnegative");
    std::vector<int> caps = p.ground().type();
    caps[static_cast<std::size_t>(i)] = std::min(c, caps[static_cast<std::size_t>(i)]);
    return validate(detail::truncate_to_box(p.table(), caps, p.m()), p.ground());
}

/// cl(S) = S ∪ {e : rk(S+e) = rk(S)}.
inline Subset closure(const Polymatroid& p, Subset s) {
    Subset cl = s;
    for (int e = 0; e < p.m(); ++e)
        if (!contains(s, e) && p.rank(s | singleton(e)) == p.rank(s)) cl |= singleton(e);
    return cl;
}

inline bool is_flat(const Polymatroid& p, Subset s) { return closure(p, s) == s; }

struct FlatData {
    std::vector<Subset> flats;  // ascending by bitmask
    Subset loops = 0;           // the minimal flat
};

inline FlatData flats(const Polymatroid& p) {
    FlatData out;
    for (Subset s = 0; s <= p.ground().full(); ++s)
        if (is_flat(p, s)) out.flats.push_back(s);
    out.loops = closure(p, 0);
    return out;
}

inline bool is_loopless(const Polymatroid& p) { return closure(p, 0) == 0; }

namespace detail {

inline void require_nonempty(const SetSequence& seq, int m) {
    for (Subset s : seq) {
        if (s == 0) throw Error(ErrorKind::EmptySet, "set sequence contains an empty set");
        if (!is_subset(s, full_set(m))) throw Error(ErrorKind::UnknownElement, "set sequence mentions unknown elements");
    }
}

}  // namespace detail

/// rk(∪_{j∈J} S_j) >= |J| for every J ⊆ [k].
inline bool hall_rado(const Polymatroid& p, const SetSequence& seq) {
    detail::require_nonempty(seq, p.m());
    const std::size_t k = seq.size();
    if (static_cast<int>(k) > p.rank()) return false;  // J = [k] already fails
    if (k >= 31) throw Error(ErrorKind::InvalidArgument, "set sequence too long to enumerate");
    const std::uint32_t count = std::uint32_t{1} << k;
    std::vector<Subset> unions(count, 0);
    for (std::uint32_t j = 1; j < count; ++j) {
        const int low = std::countr_zero(j);
        unions[j] = unions[j & (j - 1)] | seq[static_cast<std::size_t>(low)];
        if (p.rank(unions[j]) < std::popcount(j)) return false;
    }
    return true;
}

namespace detail {

inline bool point_independent(const Polymatroid& p, const std::vector<int>& x) {
    for (Subset s = 1; s <= p.ground().full(); ++s) {
        int sum = 0;
        for (int i : elements_of(s)) sum += x[static_cast<std::size_t>(i)];
        if (sum > p.rank(s)) return false;
    }
    return true;
}

}  // namespace detail

/// Returns the lexicographically smallest f with f(j) ∈ S_j and
/// Σ_j e_{f(j)} ∈ I(P), or nullopt if no such assignment exists.
inline std::optional<std::vector<int>> rado_matching(const Polymatroid& p, const SetSequence& seq) {
    detail::require_nonempty(seq, p.m());
    const std::size_t k = seq.size();
    if (static_cast<int>(k) > p.rank()) return std::nullopt;

    std::vector<int> x(static_cast<std::size_t>(p.m()), 0);
    std::vector<int> f(k, -1);
    std::set<std::pair<std::size_t, std::vector<int>>> dead;  // (position, partial point) with no completion

    auto search = [&](auto&& self, std::size_t j) -> bool {
        if (j == k) return true;
        if (dead.contains({j, x})) return false;
        for (int e : elements_of(seq[j])) {
            ++x[static_cast<std::size_t>(e)];
            if (detail::point_independent(p, x)) {
                f[j] = e;
                if (self(self, j + 1)) return true;
            }
            --x[static_cast<std::size_t>(e)];
        }
        dead.insert({j, x});
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return f;
}

/// H_S: the rank n-1 polymatroid whose dual has independence polytope Δ_S^0.
/// Elements of S with a_i = 0 contribute nothing to Δ_S^0 and are dropped;
/// S must keep at least one element with a_i >= 1.
inline Polymatroid make_H(const GroundData& ground, Subset s) {
    if (s == 0) throw Error(ErrorKind::EmptySet, "H_S needs a nonempty S");
    if (!is_subset(s, ground.full())) throw Error(ErrorKind::UnknownElement, "S mentions unknown elements");
    Subset support = 0;
    for (int i : elements_of(s))
        if (ground.a(i) > 0) support |= singleton(i);
    if (support == 0) throw Error(ErrorKind::TypeMismatch, "S consists only of elements with a_i = 0", {s});
    std::vector<int> simplex(ground.table_size());
    for (Subset t = 0; t < simplex.size(); ++t) simplex[t] = (t & support) != 0 ? 1 : 0;
    return dual(validate(std::move(simplex), ground));
}

}  // namespace polymatroid

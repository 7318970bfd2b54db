#pragma once

// Ground maps π: EE → E, expansions π*(P), multisymmetric lifts M_π(P) and
// geometric flats of the lift.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "polymatroid/polymatroid.hpp"

namespace polymatroid {

/// The surjection π: EE → E of type a. EE = {0, ..., n-1} is grouped
/// consecutively by fiber: π^{-1}(0) = {0, ..., a_0 - 1}, and so on.
class GroundMap {
public:
    GroundMap() = default;

    explicit GroundMap(std::vector<int> type) : base_(std::move(type), kHardMaxElements) {
        if (base_.n() > kHardMaxElements)
            throw Error(ErrorKind::InvalidArgument, "lifted ground set is too large for a dense rank table");
        fibers_.resize(static_cast<std::size_t>(base_.m()), 0);
        int j = 0;
        for (int i = 0; i < base_.m(); ++i) {
            for (int k = 0; k < base_.a(i); ++k, ++j) {
                fibers_[static_cast<std::size_t>(i)] |= singleton(j);
                owner_.push_back(i);
            }
        }
    }

    const GroundData& base() const noexcept { return base_; }
    const std::vector<int>& type() const noexcept { return base_.type(); }
    int m() const noexcept { return base_.m(); }
    int n() const noexcept { return base_.n(); }

    /// π(j).
    int operator()(int j) const { return owner_.at(static_cast<std::size_t>(j)); }
    Subset fiber(int i) const { return fibers_.at(static_cast<std::size_t>(i)); }

    /// π^{-1}(s) for s ⊆ E.
    Subset preimage(Subset s) const {
        Subset out = 0;
        for (int i : elements_of(s)) out |= fibers_[static_cast<std::size_t>(i)];
        return out;
    }

    /// π(t) for t ⊆ EE.
    Subset image(Subset t) const {
        Subset out = 0;
        for (int j : elements_of(t)) out |= singleton(owner_[static_cast<std::size_t>(j)]);
        return out;
    }

    /// p_π: ℝ^EE → ℝ^E, e_j ↦ e_{π(j)}.
    std::vector<int> project(const std::vector<int>& x) const {
        std::vector<int> out(static_cast<std::size_t>(m()), 0);
        for (std::size_t j = 0; j < x.size(); ++j) out[static_cast<std::size_t>(owner_[j])] += x[j];
        return out;
    }

    /// Unit-type ground data on EE.
    GroundData lifted_unit() const {
        return GroundData(std::vector<int>(static_cast<std::size_t>(n()), 1), kHardMaxElements);
    }

    friend bool operator==(const GroundMap& x, const GroundMap& y) { return x.base_ == y.base_; }

private:
    GroundData base_;
    std::vector<Subset> fibers_;
    std::vector<int> owner_;
};

inline void require_type(const Polymatroid& p, const GroundMap& pi) {
    if (p.ground().type() != pi.type())
        throw Error(ErrorKind::TypeMismatch, "ground map type does not match the polymatroid type");
}

/// π*(P): rank function rk_P ∘ π on EE. The declared type of element j is
/// rk_P({π(j)}), the tightest valid bound.
inline Polymatroid expand(const Polymatroid& p, const GroundMap& pi) {
    require_type(p, pi);
    std::vector<int> type(static_cast<std::size_t>(pi.n()));
    for (int j = 0; j < pi.n(); ++j) type[static_cast<std::size_t>(j)] = p.rank(singleton(pi(j)));
    const GroundData g(std::move(type), kHardMaxElements);
    std::vector<int> t(g.table_size());
    for (Subset s = 0; s < t.size(); ++s) t[s] = p.rank(pi.image(s));
    return validate(std::move(t), g);
}

/// M_π(P): rk(S) = min_{A⊆E} ( rk_P(A) + |S ∖ π^{-1}(A)| ).
inline Polymatroid msym_lift(const Polymatroid& p, const GroundMap& pi) {
    require_type(p, pi);
    const GroundData g = pi.lifted_unit();
    std::vector<Subset> pre(p.ground().table_size());
    for (Subset a = 0; a < pre.size(); ++a) pre[a] = pi.preimage(a);
    std::vector<int> t(g.table_size());
    for (Subset s = 0; s < t.size(); ++s) {
        int best = std::numeric_limits<int>::max();
        for (Subset a = 0; a < pre.size(); ++a) best = std::min(best, p.rank(a) + cardinality(s & ~pre[a]));
        t[s] = best;
    }
    return validate(std::move(t), g);
}

/// The largest flat of the form π^{-1}(G), G ⊆ E, contained in the flat F of
/// the lifted matroid M.
inline Subset max_geometric_flat(const Polymatroid& lifted, const GroundMap& pi, Subset f) {
    if (lifted.m() != pi.n()) throw Error(ErrorKind::TypeMismatch, "matroid does not live on the lifted ground set");
    if (!is_subset(f, lifted.ground().full()) || !is_flat(lifted, f))
        throw Error(ErrorKind::NotAFlat, "subset is not a flat of the lifted matroid", {f});
    std::vector<Subset> candidates;
    for (Subset g = 0; g <= pi.base().full(); ++g) {
        const Subset pre = pi.preimage(g);
        if (is_subset(pre, f) && is_flat(lifted, pre)) candidates.push_back(pre);
    }
    // never empty: the loops of a multisymmetric lift form π^{-1}(loops of P)
    if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "flat contains no geometric flat", {f});
    const Subset best = *std::max_element(candidates.begin(), candidates.end(),
                                          [](Subset x, Subset y) { return cardinality(x) < cardinality(y); });
    for (Subset c : candidates)
        if (!is_subset(c, best))
            throw Error(ErrorKind::InvalidArgument, "flat has no unique maximal geometric flat", {f});
    return best;
}

}  // namespace polymatroid

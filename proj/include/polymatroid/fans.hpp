#pragma once

// Polystellahedral fans Σ_π, augmented Bergman fans Σ_P, stars at ρ_∅,
// balancing, f-polynomials and support comparison by sampling.
//
// A cone σ_{I≤F} is stored by its label: I ⊆ EE and a strictly increasing
// chain F_1 ⊊ ... ⊊ F_k of proper subsets of E. Its rays are e_j for j ∈ I
// and -e_{EE∖π^{-1}(F_t)} for each chain member. Ray vectors are derived on
// demand.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "polymatroid/lift.hpp"
#include "polymatroid/linalg.hpp"
#include "polymatroid/polymatroid.hpp"

namespace polymatroid {

struct ConeLabel {
    Subset independent = 0;     // I ⊆ EE
    std::vector<Subset> chain;  // proper subsets of E, strictly increasing

    int dim() const { return cardinality(independent) + static_cast<int>(chain.size()); }

    /// σ is a face of this cone.
    bool has_face(const ConeLabel& sigma) const {
        if (!is_subset(sigma.independent, independent)) return false;
        return std::includes(chain.begin(), chain.end(), sigma.chain.begin(), sigma.chain.end());
    }

    friend auto operator<=>(const ConeLabel&, const ConeLabel&) = default;
    friend bool operator==(const ConeLabel&, const ConeLabel&) = default;
};

/// A set of cone labels with integer weights. When `quotient` is set the fan
/// lives in ℝ^EE / ℝ e_EE (stars at ρ_∅).
class WeightedFan {
public:
    WeightedFan() = default;
    WeightedFan(GroundMap pi, bool quotient) : pi_(std::move(pi)), quotient_(quotient) {}

    const GroundMap& ground_map() const noexcept { return pi_; }
    bool quotient() const noexcept { return quotient_; }
    int ambient_dim() const noexcept { return pi_.n() - (quotient_ ? 1 : 0); }

    const std::map<ConeLabel, int>& cones() const noexcept { return cones_; }
    std::size_t size() const noexcept { return cones_.size(); }
    bool contains(const ConeLabel& c) const { return cones_.contains(c); }

    void insert(ConeLabel c, int weight = 1) { cones_[std::move(c)] = weight; }
    bool erase(const ConeLabel& c) { return cones_.erase(c) > 0; }

    int dim() const {
        int d = -1;
        for (const auto& [c, w] : cones_) d = std::max(d, c.dim());
        return d;
    }

    std::vector<ConeLabel> maximal_cones() const {
        const int d = dim();
        std::vector<ConeLabel> out;
        for (const auto& [c, w] : cones_)
            if (c.dim() == d) out.push_back(c);
        return out;
    }

    /// Every cone is a face of a cone of top dimension.
    bool is_pure() const {
        const auto top = maximal_cones();
        for (const auto& [c, w] : cones_) {
            const bool covered =
                std::any_of(top.begin(), top.end(), [&](const ConeLabel& t) { return t.has_face(c); });
            if (!covered) return false;
        }
        return true;
    }

    /// Primitive generator of the ray for element j of EE.
    std::vector<int> element_ray(int j) const {
        std::vector<int> u(static_cast<std::size_t>(pi_.n()), 0);
        u[static_cast<std::size_t>(j)] = 1;
        return u;
    }

    /// Primitive generator -e_{EE∖π^{-1}(F)} of ρ_F.
    std::vector<int> flat_ray(Subset f) const {
        std::vector<int> u(static_cast<std::size_t>(pi_.n()), 0);
        const Subset pre = pi_.preimage(f);
        for (int j = 0; j < pi_.n(); ++j)
            if (!polymatroid::contains(pre, j)) u[static_cast<std::size_t>(j)] = -1;
        return u;
    }

    std::vector<std::vector<int>> rays(const ConeLabel& c) const {
        std::vector<std::vector<int>> out;
        for (int j : elements_of(c.independent)) out.push_back(element_ray(j));
        for (Subset f : c.chain) out.push_back(flat_ray(f));
        return out;
    }

    friend bool operator==(const WeightedFan&, const WeightedFan&) = default;

private:
    GroundMap pi_;
    bool quotient_ = false;
    std::map<ConeLabel, int> cones_;
};

namespace detail {

/// All strictly increasing chains of members of `pool` (ascending bitmask
/// order), including the empty chain.
inline std::vector<std::vector<Subset>> chains_from(const std::vector<Subset>& pool) {
    std::vector<std::vector<Subset>> out;
    std::vector<Subset> current;
    auto grow = [&](auto&& self, std::size_t start) -> void {
        out.push_back(current);
        for (std::size_t k = start; k < pool.size(); ++k) {
            if (!current.empty() && !(is_subset(current.back(), pool[k]) && current.back() != pool[k])) continue;
            current.push_back(pool[k]);
            self(self, k + 1);
            current.pop_back();
        }
    };
    grow(grow, 0);
    return out;
}

/// {i ∈ E : π^{-1}(i) ⊆ I}; includes every i with a_i = 0.
inline Subset saturated_part(const GroundMap& pi, Subset independent) {
    Subset s = 0;
    for (int i = 0; i < pi.m(); ++i)
        if (is_subset(pi.fiber(i), independent)) s |= singleton(i);
    return s;
}

}  // namespace detail

/// Compatibility of a pair I ≤ F: π^{-1}(S) ⊆ I implies S ⊆ F_1 (F_1 = E for
/// the empty chain).
inline bool is_compatible(const GroundMap& pi, const ConeLabel& c) {
    const Subset first = c.chain.empty() ? pi.base().full() : c.chain.front();
    return is_subset(detail::saturated_part(pi, c.independent), first);
}

/// Σ_π: all compatible pairs, optionally only those of dimension <= max_dim.
inline WeightedFan polystell_fan(const GroundMap& pi, std::optional<int> max_dim = std::nullopt) {
    WeightedFan fan(pi, false);
    std::vector<Subset> proper;
    for (Subset s = 0; s < pi.base().full(); ++s) proper.push_back(s);
    const Subset all = full_set(pi.n());
    for (auto& chain : detail::chains_from(proper)) {
        for_each_subset(all, [&](Subset independent) {
            ConeLabel c{independent, chain};
            if (max_dim && c.dim() > *max_dim) return;
            if (is_compatible(pi, c)) fan.insert(std::move(c));
        });
    }
    return fan;
}

/// Conditions (1) and (2) defining the cones of Σ_P, for I ⊆ EE and a chain
/// of proper flats. Condition (2) quantifies over nonempty T.
inline bool is_augmented_cone(const Polymatroid& p, const GroundMap& pi, Subset independent,
                              const std::vector<Subset>& chain) {
    bool ok = true;
    for_each_subset(independent, [&](Subset t) {
        if (ok && p.rank(pi.image(t)) < cardinality(t)) ok = false;
    });
    if (!ok) return false;
    for (Subset f : chain) {
        const Subset outside = independent & ~pi.preimage(f);
        for_each_subset(outside, [&](Subset t) {
            if (!ok || t == 0) return;
            if (p.rank(f | pi.image(t)) <= p.rank(f) + cardinality(t)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

/// Σ_P with unit weights.
inline WeightedFan aug_bergman_fan(const Polymatroid& p, const GroundMap& pi) {
    require_type(p, pi);
    WeightedFan fan(pi, false);
    std::vector<Subset> proper_flats;
    for (Subset f : flats(p).flats)
        if (f != p.ground().full()) proper_flats.push_back(f);
    const Subset all = full_set(pi.n());
    for (auto& chain : detail::chains_from(proper_flats)) {
        for_each_subset(all, [&](Subset independent) {
            if (is_augmented_cone(p, pi, independent, chain)) fan.insert(ConeLabel{independent, chain});
        });
    }
    return fan;
}

/// Σ_P for P given on its own ground set with the identity ground map, as
/// used for the augmented Bergman fan of a matroid.
inline WeightedFan aug_bergman_fan(const Polymatroid& p) {
    return aug_bergman_fan(p, GroundMap(p.ground().type()));
}

/// Cones whose chain begins with ∅, with ∅ dropped, in ℝ^EE / ℝ e_EE.
inline WeightedFan star_at_empty_ray(const WeightedFan& fan) {
    WeightedFan star(fan.ground_map(), true);
    for (const auto& [c, w] : fan.cones()) {
        if (c.chain.empty() || c.chain.front() != 0) continue;
        star.insert(ConeLabel{c.independent, std::vector<Subset>(c.chain.begin() + 1, c.chain.end())}, w);
    }
    return star;
}

/// Star of Σ_P at ρ_∅; requires P loopless.
inline WeightedFan star_empty(const WeightedFan& fan, const Polymatroid& p) {
    if (!is_loopless(p)) throw Error(ErrorKind::LoopyPolymatroid, "star at the empty ray needs a loopless polymatroid");
    return star_at_empty_ray(fan);
}

/// The polypermutohedral fan of type a: star of Σ_π at ρ_∅.
inline WeightedFan polypermutohedral_fan(const GroundMap& pi) { return star_at_empty_ray(polystell_fan(pi)); }

struct BalanceResult {
    bool balanced = true;
    std::optional<ConeLabel> witness;  // first codimension-one cone that fails
};

/// For every codimension-one cone τ, Σ_{σ⊋τ} w(σ) u_{σ∖τ} must lie in the
/// linear span of τ (together with e_EE for quotient fans). Decided by exact
/// rank comparison.
inline BalanceResult is_balanced(const WeightedFan& fan) {
    if (!fan.is_pure()) throw Error(ErrorKind::NonPureFan, "balancing needs a pure-dimensional fan");
    const int d = fan.dim();
    const auto top = fan.maximal_cones();
    const int n = fan.ground_map().n();
    for (const auto& [tau, wt] : fan.cones()) {
        if (tau.dim() != d - 1) continue;
        std::vector<long long> sum(static_cast<std::size_t>(n), 0);
        for (const auto& sigma : top) {
            if (!sigma.has_face(tau)) continue;
            const long long w = fan.cones().at(sigma);
            std::vector<int> u;
            const Subset extra = sigma.independent & ~tau.independent;
            if (extra != 0) {
                u = fan.element_ray(elements_of(extra).front());
            } else {
                std::vector<Subset> diff;
                std::set_difference(sigma.chain.begin(), sigma.chain.end(), tau.chain.begin(), tau.chain.end(),
                                    std::back_inserter(diff));
                u = fan.flat_ray(diff.front());
            }
            for (int j = 0; j < n; ++j) sum[static_cast<std::size_t>(j)] += w * u[static_cast<std::size_t>(j)];
        }
        Matrix<BigInt> span;
        for (const auto& r : fan.rays(tau)) span.emplace_back(r.begin(), r.end());
        if (fan.quotient()) span.emplace_back(static_cast<std::size_t>(n), BigInt(1));
        const int base = bareiss_rank(span);
        span.emplace_back(sum.begin(), sum.end());
        if (bareiss_rank(span) != base) return {false, tau};
    }
    return {};
}

/// Coefficient k counts the k-dimensional cones.
using FPoly = std::vector<std::int64_t>;

inline FPoly trimmed(FPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline FPoly f_polynomial(const WeightedFan& fan) {
    FPoly f;
    for (const auto& [c, w] : fan.cones()) {
        if (static_cast<int>(f.size()) <= c.dim()) f.resize(static_cast<std::size_t>(c.dim()) + 1, 0);
        ++f[static_cast<std::size_t>(c.dim())];
    }
    return trimmed(std::move(f));
}

inline FPoly poly_add(const FPoly& x, const FPoly& y) {
    FPoly out(std::max(x.size(), y.size()), 0);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
    return trimmed(std::move(out));
}

inline FPoly poly_mul(const FPoly& x, const FPoly& y) {
    if (x.empty() || y.empty()) return {};
    FPoly out(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return trimmed(std::move(out));
}

/// (1 + t)^k.
inline FPoly one_plus_t_pow(int k) {
    FPoly out{1};
    for (int i = 0; i < k; ++i) out = poly_mul(out, FPoly{1, 1});
    return out;
}

/// Right-hand side of the f-polynomial decomposition of Σ_a:
///   (1+t)^n + Σ_{J ⊊ E} t (1+t)^{|π^{-1}(J)|} f(polypermutohedral fan of a∖J).
/// The term for J is the set of cones whose first chain member is J; the
/// empty chain contributes (1+t)^n.
inline FPoly hpoly_decomposition(const GroundMap& pi) {
    FPoly rhs = one_plus_t_pow(pi.n());
    const Subset full = pi.base().full();
    for (Subset j = 0; j < full; ++j) {
        std::vector<int> rest;
        for (int i = 0; i < pi.m(); ++i)
            if (!contains(j, i)) rest.push_back(pi.type()[static_cast<std::size_t>(i)]);
        const FPoly star = f_polynomial(polypermutohedral_fan(GroundMap(rest)));
        rhs = poly_add(rhs, poly_mul(poly_mul(FPoly{0, 1}, one_plus_t_pow(cardinality(pi.preimage(j)))), star));
    }
    return rhs;
}

inline bool hpoly_identity_check(const GroundMap& pi) {
    return f_polynomial(polystell_fan(pi)) == hpoly_decomposition(pi);
}

using RationalPoint = std::vector<Rational>;

/// Whether x lies in the (closed) cone σ_{I≤F}. The ray matrix is triangular
/// with respect to the chain: writing M_t = μ_1 + ... + μ_t for the
/// coefficients of the chain rays, every coordinate j outside I at chain
/// level ℓ equals -M_{ℓ-1}, and every coordinate in I equals λ_j - M_{ℓ-1}.
inline bool cone_contains(const WeightedFan& fan, const ConeLabel& c, const RationalPoint& x) {
    const GroundMap& pi = fan.ground_map();
    const std::size_t k = c.chain.size();
    // level(j) ∈ {1, ..., k+1}: first chain member containing π(j)
    std::vector<std::optional<Rational>> partial(k + 1);  // partial[t] = M_t, M_0 = 0
    partial[0] = Rational(0);
    std::vector<std::size_t> level(static_cast<std::size_t>(pi.n()), k + 1);
    for (int j = 0; j < pi.n(); ++j) {
        for (std::size_t t = 0; t < k; ++t) {
            if (contains(c.chain[t], pi(j))) {
                level[static_cast<std::size_t>(j)] = t + 1;
                break;
            }
        }
    }
    for (int j = 0; j < pi.n(); ++j) {
        if (contains(c.independent, j)) continue;
        const std::size_t l = level[static_cast<std::size_t>(j)] - 1;
        const Rational value = -x[static_cast<std::size_t>(j)];
        if (partial[l] && *partial[l] != value) return false;
        partial[l] = value;
    }
    for (std::size_t t = 1; t <= k; ++t) {
        if (!partial[t]) throw Error(ErrorKind::InvalidArgument, "cone rays are linearly dependent");
        if (*partial[t] < *partial[t - 1]) return false;  // μ_t < 0
    }
    for (int j : elements_of(c.independent)) {
        const std::size_t l = level[static_cast<std::size_t>(j)] - 1;
        if (x[static_cast<std::size_t>(j)] + *partial[l] < 0) return false;  // λ_j < 0
    }
    return true;
}

inline bool support_contains(const WeightedFan& fan, const RationalPoint& x) {
    for (const auto& c : fan.maximal_cones())
        if (cone_contains(fan, c, x)) return true;
    return false;
}

struct SupportReport {
    bool agree = true;
    int trials = 0;
    int in_both = 0;
    int in_neither = 0;
    std::optional<RationalPoint> witness;
};

/// Samples points and compares membership in |A| and |B|. Trials rotate
/// between a rational point of the box [-bound, bound]^n and nonnegative
/// integer combinations of the rays of a random top cone of A or of B, so
/// that both supports are actually hit.
inline SupportReport support_sample_report(const WeightedFan& a, const WeightedFan& b, int trials, std::uint64_t seed,
                                           int bound = 4) {
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
    if (a.ground_map().n() != b.ground_map().n() || a.quotient() || b.quotient())
        throw Error(ErrorKind::InvalidArgument, "fans must share the ambient space ℝ^EE");
    const int n = a.ground_map().n();
    std::mt19937_64 rng(seed);
    const auto top_a = a.maximal_cones();
    const auto top_b = b.maximal_cones();
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto from_cone = [&](const WeightedFan& fan, const std::vector<ConeLabel>& top) {
        RationalPoint x(static_cast<std::size_t>(n), Rational(0));
        if (top.empty()) return x;
        const auto& c = top[static_cast<std::size_t>(uniform(0, static_cast<int>(top.size()) - 1))];
        for (const auto& r : fan.rays(c)) {
            const int coeff = uniform(0, bound);
            for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] += coeff * r[static_cast<std::size_t>(j)];
        }
        return x;
    };

    SupportReport report;
    for (int t = 0; t < trials; ++t) {
        RationalPoint x;
        switch (t % 3) {
        case 0: {
            const int den = uniform(1, 3);
            for (int j = 0; j < n; ++j) x.emplace_back(uniform(-bound * den, bound * den), den);
            break;
        }
        case 1: x = from_cone(a, top_a); break;
        default: x = from_cone(b, top_b); break;
        }
        const bool in_a = support_contains(a, x);
        const bool in_b = support_contains(b, x);
        ++report.trials;
        if (in_a && in_b) ++report.in_both;
        if (!in_a && !in_b) ++report.in_neither;
        if (in_a != in_b) {
            report.agree = false;
            report.witness = x;
            return report;
        }
    }
    return report;
}

inline bool support_equality_sample(const WeightedFan& a, const WeightedFan& b, int trials, std::uint64_t seed) {
    return support_sample_report(a, b, trials, seed).agree;
}

/// |Σ_P| against |Σ_{M_π(P)}|, the lift taken with unit type on EE.
inline bool support_equality_sample(const Polymatroid& p, const GroundMap& pi, int trials, std::uint64_t seed) {
    return support_equality_sample(aug_bergman_fan(p, pi), aug_bergman_fan(msym_lift(p, pi)), trials, seed);
}

}  // namespace polymatroid

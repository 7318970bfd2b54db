#pragma once

// Degrees of monomials in the simplicial generators h_S, homology classes as
// pairing vectors, volume polynomials, valuative relations and the dragon
// Hall–Rado degree.
//
// A class ξ of dimension k is stored as the vector of degrees
// deg(h_{S_1} ⋯ h_{S_k} · ξ) over all degree-k monomials in the h_S. The
// monomials in the h_S span the Chow ring of the polystellahedral variety,
// and that ring satisfies Poincaré duality, so two classes are equal exactly
// when their pairing vectors are.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polymatroid/linalg.hpp"
#include "polymatroid/polymatroid.hpp"
#include "polymatroid/polytopes.hpp"

namespace polymatroid {

/// Multiset of nonempty subsets of E, kept sorted.
using HMonomial = std::vector<Subset>;

/// All degree-k monomials over the generators {h_S : ∅ ≠ S ⊆ E}, in
/// lexicographic order.
inline std::vector<HMonomial> monomials(int m, int k) {
    std::vector<HMonomial> out;
    HMonomial current;
    const Subset last = full_set(m);
    auto grow = [&](auto&& self, Subset from) -> void {
        if (static_cast<int>(current.size()) == k) {
            out.push_back(current);
            return;
        }
        for (Subset s = from; s <= last; ++s) {
            current.push_back(s);
            self(self, s);
            current.pop_back();
        }
    };
    grow(grow, 1);
    return out;
}

inline HMonomial times(HMonomial mono, Subset s) {
    mono.insert(std::upper_bound(mono.begin(), mono.end(), s), s);
    return mono;
}

namespace detail {

inline void require_length(const Polymatroid& p, const SetSequence& seq, int expected) {
    if (static_cast<int>(seq.size()) != expected)
        throw Error(ErrorKind::LengthMismatch, "sequence has length " + std::to_string(seq.size()) + ", expected " +
                                                   std::to_string(expected));
    require_nonempty(seq, p.m());
}

}  // namespace detail

/// deg_P(h_{S_1} ⋯ h_{S_r}) via the Hall–Rado condition.
inline int degree_hr(const Polymatroid& p, const SetSequence& seq) {
    detail::require_length(p, seq, p.rank());
    return hall_rado(p, seq) ? 1 : 0;
}

/// The same degree computed by repeated intersection with H_{S_j}: each
/// factor h_S = [Σ_{H_S}] must lower the rank by exactly one, otherwise the
/// product vanishes; the rank-0 class has degree 1.
inline int degree_cascade(const Polymatroid& p, const SetSequence& seq) {
    detail::require_length(p, seq, p.rank());
    Polymatroid q = p;
    for (Subset s : seq) {
        bool supported = false;
        for (int i : elements_of(s)) supported = supported || p.ground().a(i) > 0;
        if (!supported) return 0;  // π^{-1}(S) = ∅, so h_S = 0
        Polymatroid next = meet(q, make_H(p.ground(), s));
        if (next.rank() != q.rank() - 1) return 0;
        q = std::move(next);
    }
    return q.rank() == 0 ? 1 : 0;
}

class ChowClass {
public:
    ChowClass(GroundData ground, int dim, std::vector<std::int64_t> pairing)
        : ground_(std::move(ground)), dim_(dim), pairing_(std::move(pairing)) {}

    const GroundData& ground() const noexcept { return ground_; }
    int dim() const noexcept { return dim_; }
    const std::vector<std::int64_t>& pairing() const noexcept { return pairing_; }

    /// deg(h^mono · ξ) for a monomial of degree dim().
    std::int64_t pair(const HMonomial& mono) const {
        const auto basis = monomials(ground_.m(), dim_);
        const auto it = std::lower_bound(basis.begin(), basis.end(), mono);
        if (it == basis.end() || *it != mono) throw Error(ErrorKind::InvalidArgument, "monomial has the wrong degree");
        return pairing_[static_cast<std::size_t>(it - basis.begin())];
    }

    bool is_zero() const {
        return std::all_of(pairing_.begin(), pairing_.end(), [](std::int64_t v) { return v == 0; });
    }

    friend bool operator==(const ChowClass&, const ChowClass&) = default;

private:
    GroundData ground_;
    int dim_;
    std::vector<std::int64_t> pairing_;
};

/// [Σ_P] ∈ A_r(X_a).
inline ChowClass bergman_class(const Polymatroid& p) {
    const auto basis = monomials(p.m(), p.rank());
    std::vector<std::int64_t> values;
    values.reserve(basis.size());
    for (const auto& mono : basis) values.push_back(degree_hr(p, mono));
    return ChowClass(p.ground(), p.rank(), std::move(values));
}

/// h_S · ξ.
inline ChowClass multiply_by_h(const ChowClass& xi, Subset s) {
    if (xi.dim() == 0) throw Error(ErrorKind::DimensionUnderflow, "cannot cut a dimension-0 class");
    if (s == 0 || !is_subset(s, xi.ground().full())) throw Error(ErrorKind::EmptySet, "h_S needs a nonempty S ⊆ E");
    const auto upper = monomials(xi.ground().m(), xi.dim());
    std::vector<std::int64_t> values;
    for (const auto& mono : monomials(xi.ground().m(), xi.dim() - 1)) {
        const auto it = std::lower_bound(upper.begin(), upper.end(), times(mono, s));
        values.push_back(xi.pairing()[static_cast<std::size_t>(it - upper.begin())]);
    }
    return ChowClass(xi.ground(), xi.dim() - 1, std::move(values));
}

/// Σ c_j ξ_j.
inline ChowClass class_combine(const std::vector<std::pair<std::int64_t, ChowClass>>& terms) {
    if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "empty combination has no dimension");
    const auto& first = terms.front().second;
    std::vector<std::int64_t> values(first.pairing().size(), 0);
    for (const auto& [c, xi] : terms) {
        if (xi.ground() != first.ground()) throw Error(ErrorKind::MixedGround, "classes live on different varieties");
        if (xi.dim() != first.dim()) throw Error(ErrorKind::MixedDimensions, "classes have different dimensions");
        for (std::size_t k = 0; k < values.size(); ++k) values[k] += c * xi.pairing()[k];
    }
    return ChowClass(first.ground(), first.dim(), std::move(values));
}

inline bool is_zero(const ChowClass& xi) { return xi.is_zero(); }

/// Polynomial in t_1..t_m with exact rational coefficients; zero terms are
/// never stored.
class VolumePoly {
public:
    using Exponent = std::vector<int>;

    VolumePoly() = default;

    void add(const Exponent& u, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(u, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<Exponent, Rational>& terms() const noexcept { return terms_; }
    Rational coefficient(const Exponent& u) const {
        const auto it = terms_.find(u);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// E.g. "1/2*t1^2 + t1*t2"; terms in decreasing lexicographic order of
    /// exponents, "0" for the zero polynomial.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [u, c] = *it;
            std::string vars;
            for (std::size_t i = 0; i < u.size(); ++i) {
                if (u[i] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += "t" + std::to_string(i + 1);
                if (u[i] > 1) vars += "^" + std::to_string(u[i]);
            }
            const Rational mag = c < 0 ? Rational(-c) : c;
            std::string term;
            if (vars.empty()) term = polymatroid::to_string(mag);
            else if (mag == 1) term = vars;
            else term = polymatroid::to_string(mag) + "*" + vars;
            if (first) out = (c < 0 ? "-" : "") + term;
            else out += (c < 0 ? " - " : " + ") + term;
            first = false;
        }
        return out;
    }

    friend bool operator==(const VolumePoly&, const VolumePoly&) = default;

private:
    std::map<Exponent, Rational> terms_;
};

namespace detail {

inline BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

inline Rational inverse_multifactorial(const std::vector<int>& u) {
    BigInt d = 1;
    for (int ui : u) d *= factorial(ui);
    return Rational(BigInt(1), d);
}

/// Calls f(u) for every u ∈ ℤ^m_{>=0} with Σ u = total.
template <typename F>
void for_each_composition(int m, int total, F&& f) {
    std::vector<int> u(static_cast<std::size_t>(m), 0);
    auto fill = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) {
            u[static_cast<std::size_t>(i)] = left;
            f(u);
            return;
        }
        for (int v = left; v >= 0; --v) {
            u[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, left - v);
        }
    };
    fill(fill, 0, total);
}

}  // namespace detail

/// (1/r!) deg_P((Σ t_i h_{i})^r) = Σ_{|u|=r} deg_P(h^u) t^u / u!, with the
/// degrees taken from the intersection cascade.
inline VolumePoly volume_polynomial(const Polymatroid& p) {
    VolumePoly poly;
    detail::for_each_composition(p.m(), p.rank(), [&](const std::vector<int>& u) {
        SetSequence seq;
        for (int i = 0; i < p.m(); ++i) seq.insert(seq.end(), static_cast<std::size_t>(u[static_cast<std::size_t>(i)]), singleton(i));
        if (degree_cascade(p, seq) != 0) poly.add(u, detail::inverse_multifactorial(u));
    });
    return poly;
}

/// Σ_{u ∈ B(P) ∩ ℤ^m} t^u / u!.
inline VolumePoly basis_egf(const Polymatroid& p) {
    VolumePoly poly;
    for (const auto& u : base_points(p)) poly.add(u, detail::inverse_multifactorial(u));
    return poly;
}

struct Split {
    Polymatroid le;  // B(P) ∩ {x_i <= c}
    Polymatroid ge;  // B(P) ∩ {x_i >= c}
    Polymatroid eq;  // B(P) ∩ {x_i == c}
};

/// Cuts B(P) by the hyperplane x_i = c, so that
/// 1_{B(P)} = 1_{B(le)} + 1_{B(ge)} - 1_{B(eq)}.
inline Split hyperplane_split(const Polymatroid& p, int i, int c) {
    if (i < 0 || i >= p.m()) throw Error(ErrorKind::UnknownElement, "element index out of range");
    const Subset full = p.ground().full();
    const int lo = p.rank() - p.rank(full & ~singleton(i));
    const int hi = p.rank(singleton(i));
    if (c < lo || c > hi)
        throw Error(ErrorKind::SplitOutOfRange,
                    "x_i ranges over [" + std::to_string(lo) + ", " + std::to_string(hi) + "] on the base polytope");
    Polymatroid le = cap_element(p, i, c);
    Polymatroid ge = dual(cap_element(dual(p), i, p.ground().a(i) - c));
    std::vector<int> face(p.table().size());
    for (Subset s = 0; s <= full; ++s) face[s] = le.rank(s | singleton(i)) - (contains(s, i) ? 0 : c);
    Polymatroid eq = validate(std::move(face), p.ground());
    return {std::move(le), std::move(ge), std::move(eq)};
}

using Relation = std::vector<std::pair<std::int64_t, Polymatroid>>;

namespace detail {

inline void require_common_shape(const Relation& terms) {
    if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "relation has no terms");
    for (const auto& [c, p] : terms) {
        if (p.ground() != terms.front().second.ground())
            throw Error(ErrorKind::MixedGround, "relation mixes ground data");
        if (p.rank() != terms.front().second.rank()) throw Error(ErrorKind::MixedGround, "relation mixes ranks");
    }
}

/// lcm(1..k).
inline std::int64_t lcm_upto(int k) {
    std::int64_t l = 1;
    for (int i = 2; i <= k; ++i) l = std::lcm(l, static_cast<std::int64_t>(i));
    return l;
}

/// Largest |det| of an m×m 0/1 matrix.
inline int max_binary_determinant(int m) {
    static constexpr int table[] = {1, 1, 1, 2, 3, 5, 9};
    if (m < 0 || m > 6) throw Error(ErrorKind::InvalidArgument, "indicator arrangement supported for m <= 6");
    return table[m];
}

}  // namespace detail

/// Decides Σ c_j 1_{B(P_j)} ≡ 0 on ℝ^m exactly.
///
/// Every facet of every B(P_j) lies on a hyperplane x_S = b with 0/1 normal
/// and integer b, so the function is constant on the faces of the arrangement
/// of all hyperplanes {x_S = rk_j(S)} and {x_i = 0}. A face vertex solves an
/// m×m 0/1 system (one row is Σ x = r), so its denominator divides some
/// binary determinant; the centroid of at most m affinely independent
/// vertices lies in the relative interior of the face. Hence the grid
/// (1/D)ℤ^m with D = lcm(1..m) · lcm(1..maxdet(m)) meets every face. We
/// sweep that grid over the box ∏[0, a_i] on Σ x = r, keep one point per face
/// signature and evaluate there. Outside the box the function is 0.
inline bool indicator_combination_is_zero(const Relation& terms, std::size_t* faces_visited = nullptr) {
    detail::require_common_shape(terms);
    const Polymatroid& head = terms.front().second;
    const int m = head.m();
    const std::int64_t scale = detail::lcm_upto(m) * detail::lcm_upto(detail::max_binary_determinant(m));
    const Subset full = head.ground().full();

    // hyperplanes x_S = b, stored as (S, b·scale)
    std::set<std::pair<Subset, std::int64_t>> planes;
    for (const auto& [c, p] : terms)
        for (Subset s = 1; s <= full; ++s) planes.insert({s, static_cast<std::int64_t>(p.rank(s)) * scale});
    for (int i = 0; i < m; ++i) planes.insert({singleton(i), 0});
    const std::vector<std::pair<Subset, std::int64_t>> plane_list(planes.begin(), planes.end());

    std::set<std::vector<signed char>> seen;
    std::vector<std::int64_t> y(static_cast<std::size_t>(m), 0);
    const std::int64_t target = static_cast<std::int64_t>(head.rank()) * scale;
    bool zero = true;

    auto coord_sum = [&](Subset s) {
        std::int64_t v = 0;
        for (int i : elements_of(s)) v += y[static_cast<std::size_t>(i)];
        return v;
    };
    auto visit = [&]() {
        std::vector<signed char> sig;
        sig.reserve(plane_list.size());
        for (const auto& [s, b] : plane_list) {
            const std::int64_t v = coord_sum(s);
            sig.push_back(static_cast<signed char>(v < b ? -1 : (v > b ? 1 : 0)));
        }
        if (!seen.insert(std::move(sig)).second) return;
        std::int64_t value = 0;
        for (const auto& [c, p] : terms) {
            bool inside = true;
            for (Subset s = 1; s <= full && inside; ++s) inside = coord_sum(s) <= static_cast<std::int64_t>(p.rank(s)) * scale;
            if (inside) value += c;
        }
        if (value != 0) zero = false;
    };
    auto sweep = [&](auto&& self, int i, std::int64_t left) -> void {
        if (!zero) return;
        const std::int64_t cap = static_cast<std::int64_t>(head.ground().a(i)) * scale;
        if (i == m - 1) {
            if (left <= cap) {
                y[static_cast<std::size_t>(i)] = left;
                visit();
            }
            return;
        }
        for (std::int64_t v = 0; v <= std::min(cap, left); ++v) {
            y[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, left - v);
        }
    };
    sweep(sweep, 0, target);
    if (faces_visited != nullptr) *faces_visited = seen.size();
    return zero;
}

struct ValuativeResult {
    bool lhs_zero;  // Σ c_j [Σ_{P_j}] = 0
    bool rhs_zero;  // Σ c_j 1_{B(P_j)} ≡ 0
    bool agree() const { return lhs_zero == rhs_zero; }
};

inline ValuativeResult valuative_check(const Relation& terms) {
    detail::require_common_shape(terms);
    std::vector<std::pair<std::int64_t, ChowClass>> classes;
    for (const auto& [c, p] : terms) classes.emplace_back(c, bergman_class(p));
    return {is_zero(class_combine(classes)), indicator_combination_is_zero(terms)};
}

/// The relation 1_{B(P)} - 1_{B(le)} - 1_{B(ge)} + 1_{B(eq)} of a split.
inline Relation split_relation(const Polymatroid& p, const Split& s) {
    return {{1, p}, {-1, s.le}, {-1, s.ge}, {1, s.eq}};
}

/// -Σ_{∅≠S⊆E} (-1)^{|S|} deg_P(h_{S_1} ⋯ h_{S_{r-1}} h_S).
inline std::int64_t dragon_degree(const Polymatroid& p, const SetSequence& seq) {
    if (p.rank() < 1) throw Error(ErrorKind::LengthMismatch, "dragon degree needs rank at least 1");
    detail::require_length(p, seq, p.rank() - 1);
    std::int64_t sum = 0;
    SetSequence extended = seq;
    extended.push_back(0);
    for (Subset s = 1; s <= p.ground().full(); ++s) {
        extended.back() = s;
        const std::int64_t sign = cardinality(s) % 2 == 0 ? 1 : -1;
        sum += sign * degree_hr(p, extended);
    }
    return -sum;
}

/// rk(∪_{j∈J} S_j) >= |J| + 1 for every nonempty J.
inline bool dragon_check(const Polymatroid& p, const SetSequence& seq) {
    if (p.rank() < 1) throw Error(ErrorKind::LengthMismatch, "dragon condition needs rank at least 1");
    detail::require_length(p, seq, p.rank() - 1);
    const std::uint32_t count = std::uint32_t{1} << seq.size();
    std::vector<Subset> unions(count, 0);
    for (std::uint32_t j = 1; j < count; ++j) {
        unions[j] = unions[j & (j - 1)] | seq[static_cast<std::size_t>(std::countr_zero(j))];
        if (p.rank(unions[j]) < std::popcount(j) + 1) return false;
    }
    return true;
}

}  // namespace polymatroid

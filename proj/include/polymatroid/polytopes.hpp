#pragma once

// Exact lattice-point enumeration for independence and base polytopes, and
// the unit-cube subdivision of an independence polytope into matroid cells.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "polymatroid/polymatroid.hpp"

namespace polymatroid {

using LatticePoint = std::vector<int>;

/// Σ_{i∈s} x_i.
inline int coordinate_sum(const LatticePoint& x, Subset s) {
    int sum = 0;
    for (int i : elements_of(s)) sum += x[static_cast<std::size_t>(i)];
    return sum;
}

/// All x ∈ ℤ^m, x >= 0, with Σ_{i∈S} x_i <= rk(S) for every S, in
/// lexicographic order. Iterates the box ∏[0, rk({i})] and filters by all
/// 2^m constraints, so the cost is O(∏(rk(i)+1) · 2^m).
inline std::vector<LatticePoint> independence_points(const Polymatroid& p) {
    const int m = p.m();
    std::vector<LatticePoint> out;
    LatticePoint x(static_cast<std::size_t>(m), 0);
    while (true) {
        bool ok = true;
        for (Subset s = 1; s <= p.ground().full() && ok; ++s) ok = coordinate_sum(x, s) <= p.rank(s);
        if (ok) out.push_back(x);
        // odometer increment, last coordinate fastest so output is lexicographic
        int i = m - 1;
        while (i >= 0) {
            auto& xi = x[static_cast<std::size_t>(i)];
            if (xi < p.rank(singleton(i))) {
                ++xi;
                break;
            }
            xi = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

/// Lattice points of B(P): independence points with Σ x_i = r.
inline std::vector<LatticePoint> base_points(const Polymatroid& p) {
    std::vector<LatticePoint> out;
    for (auto& x : independence_points(p))
        if (coordinate_sum(x, p.ground().full()) == p.rank()) out.push_back(std::move(x));
    return out;
}

/// rk(S) = max over points of Σ_{i∈S} x_i.
inline std::vector<int> rank_from_points(const std::vector<LatticePoint>& points, const GroundData& ground) {
    if (points.empty()) throw Error(ErrorKind::EmptyPointSet, "cannot recover a rank function from no points");
    std::vector<int> t(ground.table_size(), 0);
    for (const auto& x : points) {
        if (static_cast<int>(x.size()) != ground.m())
            throw Error(ErrorKind::InvalidArgument, "point dimension does not match the ground set");
        for (int xi : x)
            if (xi < 0) throw Error(ErrorKind::InvalidArgument, "points must be nonnegative");
        for (Subset s = 0; s < t.size(); ++s) t[s] = std::max(t[s], coordinate_sum(x, s));
    }
    return t;
}

/// One cell of the cube subdivision: the lattice points of I(Q) ∩ (v + [0,1]^n)
/// equal v + (independent sets of `matroid`).
struct CubeCell {
    LatticePoint translation;
    Polymatroid matroid;
};

using CellDecomposition = std::vector<CubeCell>;

/// Slices I(Q) by the integral translates of the unit cube and keeps the
/// maximal cells: a cell whose lattice points all lie in another cell is a
/// face of it and is dropped. Cells are listed in lexicographic order of
/// their translation vectors.
inline CellDecomposition cube_slice(const Polymatroid& q) {
    const int n = q.m();
    const GroundData unit(std::vector<int>(static_cast<std::size_t>(n), 1), kHardMaxElements);
    const auto points = independence_points(q);
    std::vector<std::vector<LatticePoint>> members;  // lattice points of each candidate cell, sorted
    for (const auto& v : points) {
        std::vector<LatticePoint> inside;
        for (const auto& x : points) {
            bool in_cube = true;
            for (std::size_t i = 0; i < x.size() && in_cube; ++i) in_cube = x[i] == v[i] || x[i] == v[i] + 1;
            if (in_cube) inside.push_back(x);
        }
        members.push_back(std::move(inside));
    }
    CellDecomposition cells;
    for (std::size_t k = 0; k < points.size(); ++k) {
        bool maximal = true;
        for (std::size_t other = 0; other < points.size() && maximal; ++other)
            maximal = other == k || members[other].size() <= members[k].size() ||
                      !std::includes(members[other].begin(), members[other].end(), members[k].begin(), members[k].end());
        if (!maximal) continue;
        std::vector<LatticePoint> shifted;
        for (const auto& x : members[k]) {
            LatticePoint d(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - points[k][i];
            shifted.push_back(std::move(d));
        }
        cells.push_back({points[k], validate(rank_from_points(shifted, unit), unit)});
    }
    return cells;
}

}  // namespace polymatroid

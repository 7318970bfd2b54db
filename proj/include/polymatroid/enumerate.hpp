#pragma once

// Exhaustive enumeration of polymatroids of a fixed small type, and seeded
// sampling from it.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "polymatroid/polymatroid.hpp"

namespace polymatroid {

/// Every valid rank table of type a, in lexicographic order of tables.
/// Subsets are filled in increasing bitmask order, so when rk(S) is chosen
/// all its subsets are known and the local axioms can prune immediately.
inline std::vector<Polymatroid> all_polymatroids(const GroundData& ground) {
    std::vector<Polymatroid> out;
    std::vector<int> t(ground.table_size(), 0);
    const int m = ground.m();
    auto fill = [&](auto&& self, Subset s) -> void {
        if (s == t.size()) {
            out.push_back(validate(t, ground));
            return;
        }
        int lo = 0;
        int hi = ground.weight(s);
        for (int i : elements_of(s)) {
            lo = std::max(lo, t[s & ~singleton(i)]);
            hi = std::min(hi, t[s & ~singleton(i)] + ground.a(i));
        }
        for (int v = lo; v <= hi; ++v) {
            t[s] = v;
            bool ok = true;
            for (int i = 0; i < m && ok; ++i) {
                if (!contains(s, i)) continue;
                for (int j = i + 1; j < m && ok; ++j) {
                    if (!contains(s, j)) continue;
                    const Subset si = s & ~singleton(i);
                    const Subset sj = s & ~singleton(j);
                    ok = t[si] + t[sj] >= v + t[si & sj];
                }
            }
            if (ok) self(self, s + 1);
        }
        t[s] = 0;
    };
    fill(fill, 1);
    return out;
}

/// `count` draws (with replacement) from all_polymatroids(ground).
inline std::vector<Polymatroid> sample_polymatroids(const GroundData& ground, int count, std::uint64_t seed) {
    const auto pool = all_polymatroids(ground);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<Polymatroid> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) out.push_back(pool[pick(rng)]);
    return out;
}

/// Every ordered sequence of k nonempty subsets of E.
inline std::vector<SetSequence> all_sequences(int m, int k) {
    std::vector<SetSequence> out;
    SetSequence seq(static_cast<std::size_t>(k), 1);
    const Subset last = full_set(m);
    while (true) {
        out.push_back(seq);
        int j = k - 1;
        while (j >= 0 && seq[static_cast<std::size_t>(j)] == last) seq[static_cast<std::size_t>(j--)] = 1;
        if (j < 0) break;
        ++seq[static_cast<std::size_t>(j)];
    }
    return out;
}

}  // namespace polymatroid

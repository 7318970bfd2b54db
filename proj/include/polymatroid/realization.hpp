#pragma once

// Polymatroids of subspaces L ⊆ ⊕ V_i given by exact rational matrices whose
// rows are a basis of L and whose columns are grouped into blocks V_i.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "polymatroid/lift.hpp"
#include "polymatroid/linalg.hpp"
#include "polymatroid/polymatroid.hpp"

namespace polymatroid {

struct RealizationMatrix {
    std::vector<int> blocks;
    Matrix<Rational> rows;

    int n() const {
        int total = 0;
        for (int b : blocks) total += b;
        return total;
    }
    std::size_t l() const { return rows.size(); }
};

namespace detail {

inline Matrix<Rational> select_columns(const Matrix<Rational>& a, Subset cols) {
    Matrix<Rational> out;
    out.reserve(a.size());
    const auto picked = elements_of(cols);
    for (const auto& row : a) {
        std::vector<Rational> r;
        r.reserve(picked.size());
        for (int c : picked) r.push_back(row[static_cast<std::size_t>(c)]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace detail

/// Checks the shape and that the rows are linearly independent.
inline void check_realization(const RealizationMatrix& r) {
    if (r.blocks.empty()) throw Error(ErrorKind::InvalidArgument, "realization needs at least one block");
    for (int b : r.blocks)
        if (b < 0) throw Error(ErrorKind::InvalidArgument, "block sizes must be nonnegative");
    if (r.n() > kHardMaxElements) throw Error(ErrorKind::InvalidArgument, "too many columns");
    for (const auto& row : r.rows)
        if (static_cast<int>(row.size()) != r.n())
            throw Error(ErrorKind::LengthMismatch, "row length does not match the block sizes");
    if (rank(r.rows) != static_cast<int>(r.l())) throw Error(ErrorKind::RankDeficient, "rows are linearly dependent");
}

/// rk(S) = dim of the image of L in ⊕_{i∈S} V_i, i.e. the rank of the
/// columns in the blocks of S.
inline Polymatroid rank_function(const RealizationMatrix& r) {
    check_realization(r);
    const GroundMap pi(r.blocks);
    const GroundData g(r.blocks);
    std::vector<int> t(g.table_size(), 0);
    for (Subset s = 1; s < t.size(); ++s) t[s] = r.rows.empty() ? 0 : rank(detail::select_columns(r.rows, pi.preimage(s)));
    return validate(std::move(t), g);
}

/// Rows spanning the annihilator of L.
inline RealizationMatrix realize_dual(const RealizationMatrix& r) {
    check_realization(r);
    const auto n = static_cast<std::size_t>(r.n());
    return {r.blocks, null_space(r.rows, n)};
}

/// Integer entries in [-bound, bound], redrawn until the rows are independent.
inline RealizationMatrix random_realization(const std::vector<int>& blocks, int l, std::uint64_t seed, int bound = 3,
                                            int attempts = 64) {
    RealizationMatrix r{blocks, {}};
    const int n = r.n();
    if (l < 0 || l > n) throw Error(ErrorKind::InvalidArgument, "need 0 <= l <= n");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-bound, bound);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        r.rows.assign(static_cast<std::size_t>(l), std::vector<Rational>(static_cast<std::size_t>(n)));
        for (auto& row : r.rows)
            for (auto& v : row) v = entry(rng);
        if (rank(r.rows) == l) return r;
    }
    throw Error(ErrorKind::RetryExhausted, "no independent rows found");
}

/// The matroid of the columns of a rational matrix.
inline Polymatroid column_matroid(const Matrix<Rational>& rows, int n) {
    const GroundData g(std::vector<int>(static_cast<std::size_t>(n), 1), kHardMaxElements);
    std::vector<int> t(g.table_size(), 0);
    if (!rows.empty())
        for (Subset s = 1; s < t.size(); ++s) t[s] = rank(detail::select_columns(rows, s));
    return validate(std::move(t), g);
}

/// Replaces each block by itself times a random integer a_i × a_i matrix (a
/// change of basis of V_i when invertible, which we do not insist on).
inline Matrix<Rational> random_block_change(const RealizationMatrix& r, std::mt19937_64& rng, int bound = 5) {
    std::uniform_int_distribution<int> entry(-bound, bound);
    Matrix<Rational> out = r.rows;
    std::size_t start = 0;
    for (int b : r.blocks) {
        const auto size = static_cast<std::size_t>(b);
        Matrix<Rational> g(size, std::vector<Rational>(size));
        for (auto& row : g)
            for (auto& v : row) v = entry(rng);
        for (std::size_t k = 0; k < r.rows.size(); ++k)
            for (std::size_t c = 0; c < size; ++c) {
                Rational v = 0;
                for (std::size_t j = 0; j < size; ++j) v += r.rows[k][start + j] * g[j][c];
                out[k][start + c] = v;
            }
        start += size;
    }
    return out;
}

struct LiftConsistency {
    bool bounded;    // every sampled column matroid lies below the lift
    bool attained;   // some sample equals the lift
    int samples;
};

/// Compares column matroids of random block changes of R with M_π(rk_R).
/// The lift bounds every column matroid from above; a general choice attains it.
inline LiftConsistency lift_consistency(const RealizationMatrix& r, std::uint64_t seed, int attempts = 16) {
    const Polymatroid p = rank_function(r);
    const Polymatroid lift = msym_lift(p, GroundMap(r.blocks));
    std::mt19937_64 rng(seed);
    LiftConsistency out{true, false, 0};
    for (int k = 0; k < attempts && !out.attained; ++k) {
        const Polymatroid m = column_matroid(random_block_change(r, rng), r.n());
        ++out.samples;
        for (Subset s = 0; s < m.table().size(); ++s) out.bounded = out.bounded && m.rank(s) <= lift.rank(s);
        out.attained = m == lift;
    }
    return out;
}

}  // namespace polymatroid

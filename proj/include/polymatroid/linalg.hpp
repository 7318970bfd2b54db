#pragma once

// Exact linear algebra over ℤ and ℚ: fraction-free (Bareiss) rank,
// reduced row echelon form and null spaces.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polymatroid {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Rank of an integer matrix by Bareiss elimination. Every division is exact,
/// so intermediate entries stay bounded by minors of the input.
inline int bareiss_rank(Matrix<BigInt> a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a.front().size();
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return static_cast<int>(rank);
}

/// Clears denominators row by row (row scaling preserves the row space).
inline Matrix<BigInt> integer_rows(const Matrix<Rational>& a) {
    Matrix<BigInt> out;
    out.reserve(a.size());
    for (const auto& row : a) {
        BigInt l = 1;
        for (const auto& q : row) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(q)));
        std::vector<BigInt> r;
        r.reserve(row.size());
        for (const auto& q : row) r.push_back(boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q)));
        out.push_back(std::move(r));
    }
    return out;
}

inline int rank(const Matrix<Rational>& a) { return bareiss_rank(integer_rows(a)); }

/// Reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix<Rational>& a) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = a.size();
    if (rows == 0) return pivots;
    const std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational factor = a[i][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= factor * a[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Basis of {x : A x = 0}, one row per basis vector, for a matrix with `cols` columns.
inline Matrix<Rational> null_space(Matrix<Rational> a, std::size_t cols) {
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix<Rational> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace polymatroid

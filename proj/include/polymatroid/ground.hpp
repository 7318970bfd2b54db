#pragma once

// Ground sets, subset bitmasks and the error type shared by every module.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polymatroid {

/// A subset of a ground set {0, ..., m-1}; bit i set means element i is in the set.
using Subset = std::uint32_t;

/// Default upper bound on the ground-set size. Every algorithm here is 2^m-bounded.
inline constexpr int kDefaultMaxElements = 12;
inline constexpr int kHardMaxElements = 24;

inline constexpr Subset full_set(int m) { return m == 0 ? Subset{0} : (Subset{1} << m) - 1; }
inline constexpr Subset singleton(int i) { return Subset{1} << i; }
inline constexpr bool contains(Subset s, int i) { return ((s >> i) & 1U) != 0; }
inline constexpr bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
inline int cardinality(Subset s) { return std::popcount(s); }

/// Elements of s in increasing order.
inline std::vector<int> elements_of(Subset s) {
    std::vector<int> out;
    while (s != 0) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

/// Calls f(t) for every t ⊆ s, including ∅ and s itself.
template <typename F>
void for_each_subset(Subset s, F&& f) {
    Subset t = s;
    while (true) {
        f(t);
        if (t == 0) break;
        t = (t - 1) & s;
    }
}

enum class ErrorKind {
    TableSize,
    NegativeEntry,
    Normalization,
    Monotonicity,
    Submodularity,
    Type,
    GroundMismatch,
    TypeMismatch,
    UnknownElement,
    EmptySet,
    EmptyPointSet,
    LengthMismatch,
    DimensionUnderflow,
    MixedDimensions,
    MixedGround,
    SplitOutOfRange,
    LoopyPolymatroid,
    NotAFlat,
    NonPureFan,
    RankDeficient,
    RetryExhausted,
    InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::TableSize: return "TableSize";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::Normalization: return "Normalization";
    case ErrorKind::Monotonicity: return "Monotonicity";
    case ErrorKind::Submodularity: return "Submodularity";
    case ErrorKind::Type: return "Type";
    case ErrorKind::GroundMismatch: return "GroundMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::EmptyPointSet: return "EmptyPointSet";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DimensionUnderflow: return "DimensionUnderflow";
    case ErrorKind::MixedDimensions: return "MixedDimensions";
    case ErrorKind::MixedGround: return "MixedGround";
    case ErrorKind::SplitOutOfRange: return "SplitOutOfRange";
    case ErrorKind::LoopyPolymatroid: return "LoopyPolymatroid";
    case ErrorKind::NotAFlat: return "NotAFlat";
    case ErrorKind::NonPureFan: return "NonPureFan";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::RetryExhausted: return "RetryExhausted";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Domain error. `witness()` holds the offending subsets when one exists
/// (e.g. the pair violating submodularity).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string what, std::vector<Subset> witness = {})
        : std::runtime_error(std::move(what)), kind_(kind), witness_(std::move(witness)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<Subset>& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    std::vector<Subset> witness_;
};

/// Raised when a rank table fails one of the polymatroid axioms.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Ground set E = {0, ..., m-1} together with the type vector a.
class GroundData {
public:
    GroundData() = default;

    explicit GroundData(std::vector<int> type, int max_elements = kDefaultMaxElements)
        : type_(std::move(type)) {
        if (type_.empty())
            throw Error(ErrorKind::InvalidArgument, "ground set must have at least one element");
        if (static_cast<int>(type_.size()) > max_elements || static_cast<int>(type_.size()) > kHardMaxElements)
            throw Error(ErrorKind::InvalidArgument,
                        "ground set of size " + std::to_string(type_.size()) + " exceeds the configured cap");
        for (int ai : type_)
            if (ai < 0) throw Error(ErrorKind::InvalidArgument, "type vector entries must be nonnegative");
        total_ = std::accumulate(type_.begin(), type_.end(), 0);
    }

    int m() const noexcept { return static_cast<int>(type_.size()); }
    /// n = a_1 + ... + a_m.
    int n() const noexcept { return total_; }
    const std::vector<int>& type() const noexcept { return type_; }
    int a(int i) const { return type_.at(static_cast<std::size_t>(i)); }
    Subset full() const noexcept { return full_set(m()); }
    std::size_t table_size() const noexcept { return std::size_t{1} << m(); }

    /// Σ_{i∈s} a_i.
    int weight(Subset s) const {
        int w = 0;
        for (int i : elements_of(s)) w += type_[static_cast<std::size_t>(i)];
        return w;
    }

    friend bool operator==(const GroundData&, const GroundData&) = default;

private:
    std::vector<int> type_;
    int total_ = 0;
};

}  // namespace polymatroid

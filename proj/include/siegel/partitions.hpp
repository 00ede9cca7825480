#pragma once

#include <stdexcept>
#include <vector>

#include "siegel/fields.hpp"

namespace siegel {

struct LengthTooSmall : Error {
    using Error::Error;
};
struct NilpotencyTooSmall : Error {
    using Error::Error;
};

/// Weakly decreasing non-negative integers; the declared length may exceed
/// the number of nonzero parts (trailing zeroes are significant).
struct PartitionWithZeroes {
    std::vector<int> parts;

    PartitionWithZeroes() = default;
    explicit PartitionWithZeroes(std::vector<int> p);

    int length() const { return static_cast<int>(parts.size()); }
    int part(int i) const { return (i >= 1 && i <= length()) ? parts[i - 1] : 0; }  // 1-based
    int sum() const;
    int largest() const { return parts.empty() ? 0 : parts.front(); }

    bool operator==(const PartitionWithZeroes& o) const { return parts == o.parts; }
};

/// Dual (conjugate) partition with zeroes: result_i = #{ j : p_j >= i },
/// declared length target_length. Requires target_length >= largest part.
PartitionWithZeroes dual_partition(const PartitionWithZeroes& p, int target_length);

/// The discrete invariants of a nilpotent operator with Jordan block sizes d
/// on a rank-r module: c the dual partition of length m, and
/// k_i = c_{i-1} - c_i with c_0 = r, c_{m+1} = 0.
struct JordanData {
    int m = 1;               // nilpotency degree bound (N^m = 0)
    int r = 0;               // rank, = declared length of d
    int n = 0;               // dimension, = sum of d
    PartitionWithZeroes d;   // Jordan block sizes, length r
    PartitionWithZeroes c;   // dual of d, length m
    std::vector<int> k;      // k_1..k_{m+1}, size m+1

    int k_at(int i) const { return (i >= 1 && i <= m + 1) ? k[i - 1] : 0; }  // 1-based
    bool operator==(const JordanData& o) const {
        return m == o.m && r == o.r && n == o.n && d == o.d && c == o.c && k == o.k;
    }
};

JordanData jordan_data(const PartitionWithZeroes& d, int m);

/// Jordan data of the dual module: d'_i = m - d_{r+1-i}, so that
/// k_i(dual) = k_{m+2-i} and n + n' = m*r.
JordanData dual_jordan_data(const JordanData& jd);

}  // namespace siegel

#include "siegel/partitions.hpp"

#include <numeric>

namespace siegel {

PartitionWithZeroes::PartitionWithZeroes(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0) throw Error("partition parts must be non-negative");
        if (i > 0 && parts[i] > parts[i - 1]) throw Error("partition parts must be weakly decreasing");
    }
}

int PartitionWithZeroes::sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }

PartitionWithZeroes dual_partition(const PartitionWithZeroes& p, int target_length) {
    if (target_length < p.largest())
        throw LengthTooSmall("dual partition length " + std::to_string(target_length) +
                             " smaller than largest part " + std::to_string(p.largest()));
    std::vector<int> out(static_cast<size_t>(target_length), 0);
    for (int i = 1; i <= target_length; ++i) {
        int count = 0;
        for (int v : p.parts)
            if (v >= i) ++count;
        out[static_cast<size_t>(i - 1)] = count;
    }
    return PartitionWithZeroes(std::move(out));
}

JordanData jordan_data(const PartitionWithZeroes& d, int m) {
    if (m < 1) throw Error("nilpotency degree must be >= 1");
    if (d.largest() > m)
        throw NilpotencyTooSmall("largest Jordan block " + std::to_string(d.largest()) +
                                 " exceeds nilpotency degree " + std::to_string(m));
    JordanData jd;
    jd.m = m;
    jd.r = d.length();
    jd.n = d.sum();
    jd.d = d;
    jd.c = dual_partition(d, m);
    jd.k.resize(static_cast<size_t>(m + 1));
    for (int i = 1; i <= m + 1; ++i) {
        int c_prev = (i == 1) ? jd.r : jd.c.part(i - 1);
        int c_cur = (i == m + 1) ? 0 : jd.c.part(i);
        jd.k[static_cast<size_t>(i - 1)] = c_prev - c_cur;
    }
    return jd;
}

JordanData dual_jordan_data(const JordanData& jd) {
    std::vector<int> dp(static_cast<size_t>(jd.r));
    for (int i = 1; i <= jd.r; ++i) dp[static_cast<size_t>(i - 1)] = jd.m - jd.d.part(jd.r + 1 - i);
    return jordan_data(PartitionWithZeroes(std::move(dp)), jd.m);
}

}  // namespace siegel

#pragma once

#include <map>

#include "siegel/siegel.hpp"

namespace siegel::testing {

/// Independent oracle for the P matrices: expand N^v l_u symbolically in the
/// module, rewriting every non-basis term N^a l_b (with b <= a+1) through the
/// defining relations until only basis terms N^z l_y with y >= z+2 remain.
/// Returns the map (z, y) -> P_{u,v,y,z}.
inline std::map<std::pair<int, int>, Mat> substitution_P(const SiegelObject& S, int u, int v) {
    const int m = S.m();
    // coefficient of N^a l_b, as a k_u x k_b matrix
    std::map<std::pair<int, int>, Mat> terms;
    terms.emplace(std::make_pair(v, u), Mat::identity(S.field(), S.k_at(u)));

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = terms.begin(); it != terms.end(); ++it) {
            auto [a, b] = it->first;
            if (b > a + 1) continue;  // basis term
            Mat T = it->second;
            terms.erase(it);
            changed = true;
            if (a < m) {
                for (int z = b - 1; z <= m - 1; ++z)
                    for (int y = z + 2; y <= m + 1; ++y) {
                        int exp = z + a - b + 1;
                        if (exp >= m) continue;
                        Mat add = -(T * S.at(b, y, z));
                        auto found = terms.find({exp, y});
                        if (found == terms.end())
                            terms.emplace(std::make_pair(exp, y), std::move(add));
                        else
                            found->second = found->second + add;
                    }
            }
            break;  // iterator invalidated; rescan
        }
    }

    std::map<std::pair<int, int>, Mat> out;
    for (auto& [key, coeff] : terms) out.emplace(std::make_pair(key.first, key.second), -coeff);
    return out;
}

}  // namespace siegel::testing

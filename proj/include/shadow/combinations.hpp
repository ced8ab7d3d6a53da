#pragma once

#include <numeric>
#include <vector>

namespace shadow {

/// First k-subset {0,...,k-1} of [0,m).
inline std::vector<int> first_combination(int k) {
    std::vector<int> c(static_cast<size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    return c;
}

/// Advances c to the next k-subset of [0,m) in lexicographic order.
/// Returns false when c was the last one.
inline bool next_combination(std::vector<int>& c, int m) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[static_cast<size_t>(i)] < m - k + i) {
            ++c[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace shadow

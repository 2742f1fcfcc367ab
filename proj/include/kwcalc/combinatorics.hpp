#pragma once

#include <cstddef>
#include <vector>

namespace kw {

/// A permutation of {0,..,k-1} given by its image list, with its sign.
struct SignedPermutation {
    std::vector<int> perm; // perm[k] = tau(k+1)-1 in 1-based terms
    int sign;
};

/// All (i,j)-unshuffles: permutations tau of i+j elements increasing on the
/// first i and on the last j positions. Count is binomial(i+j, i).
std::vector<SignedPermutation> unshuffles(int i, int j);

/// Sign of a sequence of distinct values by inversion count.
int permutation_sign(const std::vector<int>& seq);

/// All strictly increasing k-subsets of {0,..,n-1}, lexicographic.
std::vector<std::vector<int>> subsets(int n, int k);

/// Runs fn over all tuples in {0,..,base-1}^len in lexicographic order.
/// fn returning false stops the walk; returns false if stopped.
template <typename Fn>
bool for_each_tuple(std::size_t base, std::size_t len, Fn&& fn) {
    std::vector<std::size_t> idx(len, 0);
    if (base == 0 && len > 0) return true;
    while (true) {
        if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
        std::size_t pos = len;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < base) break;
            idx[pos] = 0;
            if (pos == 0) return true;
        }
        if (len == 0) return true;
    }
}

} // namespace kw

#include "kwcalc/combinatorics.hpp"

namespace kw {

int permutation_sign(const std::vector<int>& seq) {
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<SignedPermutation> unshuffles(int i, int j) {
    std::vector<SignedPermutation> out;
    const int total = i + j;
    for (const auto& first : subsets(total, i)) {
        SignedPermutation sp;
        sp.perm.reserve(total);
        sp.perm = first;
        std::vector<bool> used(total, false);
        for (int v : first) used[v] = true;
        for (int v = 0; v < total; ++v)
            if (!used[v]) sp.perm.push_back(v);
        sp.sign = permutation_sign(sp.perm);
        out.push_back(std::move(sp));
    }
    return out;
}

} // namespace kw

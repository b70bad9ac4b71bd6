#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace stabkit {

// Permutations are stored 0-based as image vectors: p[i] is the image of i.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// (a*b)(i) = a(b(i))
inline Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

inline Perm inverse(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return r;
}

inline bool is_permutation_vector(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

inline int inversions(const Perm& p) {
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++c;
    return c;
}

inline int perm_sign(const Perm& p) { return inversions(p) % 2 ? -1 : 1; }

// All permutations of {0..n-1} in lexicographic order of image vectors.
inline std::vector<Perm> all_permutations(int n) {
    std::vector<Perm> out;
    Perm p = identity_perm(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// All k-subsets of {lo..hi} (inclusive), each sorted, in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int lo, int hi, int k) {
    std::vector<std::vector<int>> out;
    int m = hi - lo + 1;
    if (k < 0 || k > std::max(m, 0)) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= hi - (k - static_cast<int>(cur.size())) + 1; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, lo);
    return out;
}

inline std::int64_t factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r = detail::checked_mul(r, i);
    return r;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return detail::narrow(r);
}

inline std::int64_t pow2(int e) {
    if (e < 0 || e > 62) throw OverflowError("2^e out of range");
    return std::int64_t{1} << e;
}

}  // namespace stabkit

#pragma once

// Seeded generators for the randomized checks. Callers own the engine.

#include <optional>
#include <random>
#include <vector>

#include "characters.hpp"
#include "rational.hpp"

namespace stabkit {

// Strictly decreasing doubled weight with entries = n-1 (mod 2).
inline Weight random_regular_lambda2(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<std::int64_t> start(-10, 10), gap(1, 5);
    std::int64_t v = start(rng);
    if (((v - (n - 1)) % 2 + 2) % 2) ++v;
    Weight w{0, {{}}};
    for (int i = 0; i < n; ++i) {
        w.blocks[0].push_back(v);
        v -= 2 * gap(rng);
    }
    return w;
}

// Vector satisfying the rotation hypothesis: shift a random vector by c with
// max_{I} min(avg_I, avg_{I^c}) <= c < avg.
inline std::vector<Rational> random_rotation_vector(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<std::int64_t> num(-9, 9), den(1, 4), coin(0, 1);
    for (;;) {
        std::vector<Rational> mu;
        Rational total;
        for (int i = 0; i < n; ++i) {
            mu.emplace_back(num(rng), den(rng));
            total += mu.back();
        }
        Rational avg = total / Rational(n);
        std::optional<Rational> cstar;
        for (unsigned I = 1; I < (1u << n) - 1; I += 2) {
            Rational s;
            int k = 0;
            for (int j = 0; j < n; ++j)
                if (I >> j & 1u) {
                    s += mu[static_cast<std::size_t>(j)];
                    ++k;
                }
            Rational m = std::min(s / Rational(k), (total - s) / Rational(n - k));
            if (!cstar || *cstar < m) cstar = m;
        }
        Rational c = cstar ? *cstar : avg - Rational(1);
        if (!(c < avg)) continue;
        if (coin(rng)) c = (c + avg) / Rational(2);
        for (auto& x : mu) x -= c;
        return mu;
    }
}

// Dominant weight with the given block sizes; strictly dominant if `regular`.
inline Weight random_dominant_weight(std::mt19937_64& rng, const std::vector<int>& sizes, bool regular) {
    std::uniform_int_distribution<std::int64_t> a(-5, 5), start(-6, 6), gap(regular ? 1 : 0, 3);
    Weight w{a(rng), {}};
    for (int n : sizes) {
        std::vector<std::int64_t> b;
        std::int64_t v = start(rng);
        for (int j = 0; j < n; ++j) {
            b.push_back(v);
            v -= gap(rng);
        }
        w.blocks.push_back(b);
    }
    return w;
}

}  // namespace stabkit

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "laurent.hpp"
#include "rational.hpp"
#include "rootdata.hpp"

namespace stabkit {

// (a; (a_{i,j})). Dominant iff every block is non-increasing.
struct Weight {
    std::int64_t a = 0;
    std::vector<std::vector<std::int64_t>> blocks;

    bool dominant() const {
        for (auto& b : blocks)
            for (std::size_t j = 1; j < b.size(); ++j)
                if (b[j - 1] < b[j]) return false;
        return true;
    }
    bool regular() const {
        for (auto& b : blocks)
            for (std::size_t j = 1; j < b.size(); ++j)
                if (b[j - 1] <= b[j]) return false;
        return true;
    }
    std::int64_t block_sum() const {
        std::int64_t s = 0;
        for (auto& b : blocks)
            for (auto v : b) s = detail::checked_add(s, v);
        return s;
    }
    std::vector<std::int64_t> flat() const {
        std::vector<std::int64_t> f{a};
        for (auto& b : blocks) f.insert(f.end(), b.begin(), b.end());
        return f;
    }
    std::string str() const {
        std::string s = std::to_string(a) + ";";
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) s += ";";
            for (std::size_t j = 0; j < blocks[i].size(); ++j) s += (j ? "," : "") + std::to_string(blocks[i][j]);
        }
        return s;
    }
    friend bool operator==(const Weight&, const Weight&) = default;
    friend bool operator<(const Weight& x, const Weight& y) { return x.flat() < y.flat(); }
};

// Formal sum of weights with rational multiplicities; zero entries dropped.
class SignedWeightSum {
public:
    void add(const Weight& w, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void scale(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return;
        }
        for (auto& [w, v] : terms_) v *= c;
    }
    const std::map<Weight, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    friend bool operator==(const SignedWeightSum& x, const SignedWeightSum& y) { return x.terms_ == y.terms_; }

private:
    std::map<Weight, Rational> terms_;
};

// ---------------------------------------------------------------- signed partition identities

// sum_{S contains n} (-1)^{|S|} w_S^{-1} |S_S(lambda)|, where S_S(lambda) is the set of
// orderings whose prefix sums are positive at every r in S.
inline Rational partial_sum_signature(const std::vector<Rational>& lambda) {
    int n = static_cast<int>(lambda.size());
    if (n == 0) throw PreconditionError("partial_sum_signature: empty vector");
    if (n > 16) throw PreconditionError("partial_sum_signature: vector too long");
    std::vector<std::int64_t> hist(std::size_t{1} << n, 0);
    Perm p = identity_perm(n);
    do {
        Rational s;
        unsigned mask = 0;
        for (int r = 0; r < n; ++r) {
            s += lambda[static_cast<std::size_t>(p[static_cast<std::size_t>(r)])];
            if (s > Rational(0)) mask |= 1u << r;
        }
        ++hist[mask];
    } while (std::next_permutation(p.begin(), p.end()));
    Rational total;
    unsigned top = 1u << (n - 1);
    for (unsigned S = top; S < (1u << n); ++S) {
        if (!(S & top)) continue;
        std::int64_t count = 0;
        for (unsigned mask = 0; mask < (1u << n); ++mask)
            if ((mask & S) == S) count += hist[mask];
        std::int64_t w = 1;
        int prev = 0, bits = 0;
        for (int r = 1; r <= n; ++r)
            if (S >> (r - 1) & 1u) {
                w = detail::checked_mul(w, factorial(r - prev));
                prev = r;
                ++bits;
            }
        total += Rational(bits % 2 ? -count : count, w);
    }
    return total;
}

// sum over ordered set partitions whose block-sum vector has positive prefix sums of (-1)^{#blocks}.
inline std::int64_t ordered_partition_sum(const std::vector<Rational>& lambda) {
    int n = static_cast<int>(lambda.size());
    if (n == 0) throw PreconditionError("ordered_partition_sum: empty vector");
    if (n > 16) throw PreconditionError("ordered_partition_sum: vector too long");
    unsigned full = (1u << n) - 1;
    std::vector<Rational> subset_sum(std::size_t{1} << n);
    for (unsigned m = 1; m <= full; ++m) {
        int low = __builtin_ctz(m);
        subset_sum[m] = subset_sum[m & (m - 1)] + lambda[static_cast<std::size_t>(low)];
    }
    // f(used) = signed count of completions of a prefix that used `used`;
    // prefix sums depend only on `used`, so memoize.
    std::vector<std::int64_t> memo(std::size_t{1} << n, 0);
    std::vector<char> done(std::size_t{1} << n, 0);
    auto f = [&](auto&& self, unsigned used) -> std::int64_t {
        if (used == full) return 1;
        if (done[used]) return memo[used];
        unsigned rest = full & ~used;
        std::int64_t acc = 0;
        for (unsigned blk = rest; blk; blk = (blk - 1) & rest) {
            if (!(subset_sum[used | blk] > Rational(0))) continue;
            acc -= self(self, used | blk);
        }
        done[used] = 1;
        memo[used] = acc;
        return acc;
    };
    return f(f, 0);
}

inline bool rotation_hypothesis(const std::vector<Rational>& lambda) {
    int n = static_cast<int>(lambda.size());
    if (n == 0) return false;
    Rational total;
    for (auto& x : lambda) total += x;
    if (!(total > Rational(0))) return false;
    // proper nonempty I containing index 0 covers each 2-partition once
    for (unsigned I = 1; I < (1u << n) - 1; I += 2) {
        Rational s;
        for (int k = 0; k < n; ++k)
            if (I >> k & 1u) s += lambda[static_cast<std::size_t>(k)];
        if (s > Rational(0) && total - s > Rational(0)) return false;
    }
    return true;
}

// Number of orderings with all prefix sums positive; (n-1)! under the hypothesis.
inline std::int64_t positive_rotation_count(const std::vector<Rational>& lambda) {
    if (!rotation_hypothesis(lambda))
        throw PreconditionError("positive_rotation_count: hypothesis violated (sum <= 0 or a positive/positive 2-partition exists)");
    int n = static_cast<int>(lambda.size());
    std::int64_t count = 0;
    Perm p = identity_perm(n);
    do {
        Rational s;
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) {
            s += lambda[static_cast<std::size_t>(p[static_cast<std::size_t>(r)])];
            ok = s > Rational(0);
        }
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

// The k in {1..n} such that (lambda_{k+1},...,lambda_n,lambda_1,...,lambda_k) has positive prefix sums.
// Returns every such k; there should be exactly one.
inline std::vector<int> positive_rotations(const std::vector<Rational>& lambda) {
    int n = static_cast<int>(lambda.size());
    std::vector<int> ks;
    for (int k = 1; k <= n; ++k) {
        Rational s;
        bool ok = true;
        for (int t = 0; t < n && ok; ++t) {
            s += lambda[static_cast<std::size_t>((k + t) % n)];
            ok = s > Rational(0);
        }
        if (ok) ks.push_back(k);
    }
    return ks;
}

// ---------------------------------------------------------------- Kostant

// GU(p,q) with the standard parabolic P_{S'}; Omega = S_n on the torus coordinates.
struct KostantDatum {
    int p = 0, q = 0;
    std::vector<int> Sp;

    static KostantDatum make(int p, int q, std::vector<int> Sp) {
        if (p < 0 || q < 0 || p + q < 1) throw PreconditionError("KostantDatum: bad signature");
        std::sort(Sp.begin(), Sp.end());
        Sp.erase(std::unique(Sp.begin(), Sp.end()), Sp.end());
        for (int r : Sp)
            if (r < 1 || r > std::min(p, q)) throw PreconditionError("KostantDatum: S' must lie in {1..min(p,q)}");
        return {p, q, Sp};
    }
    int n() const { return p + q; }

    // Block sizes of M_{S'} along the diagonal: r_1, r_2 - r_1, ..., n - 2 r_k, ..., r_1.
    std::vector<int> levi_blocks() const {
        std::vector<int> lin;
        int prev = 0;
        for (int r : Sp) {
            lin.push_back(r - prev);
            prev = r;
        }
        std::vector<int> out = lin;
        if (n() - 2 * prev > 0) out.push_back(n() - 2 * prev);
        for (auto it = lin.rbegin(); it != lin.rend(); ++it) out.push_back(*it);
        return out;
    }
    std::int64_t levi_weyl_order() const {
        std::int64_t o = 1;
        for (int b : levi_blocks()) o = detail::checked_mul(o, factorial(b));
        return o;
    }
    // 2 rho_B, coordinates n-1, n-3, ..., 1-n
    std::vector<std::int64_t> two_rho() const {
        std::vector<std::int64_t> r;
        for (int i = 0; i < n(); ++i) r.push_back(n() - 1 - 2 * i);
        return r;
    }
    // 2 rho_{S'}: the same pattern inside each block of M_{S'}
    std::vector<std::int64_t> two_rho_levi() const {
        std::vector<std::int64_t> r;
        for (int b : levi_blocks())
            for (int k = 0; k < b; ++k) r.push_back(b - 1 - 2 * k);
        return r;
    }
};

// <x, varpi_r> = sum_{j <= r} x_j - sum_{j > n-r} x_j
inline std::int64_t pairing_varpi(const std::vector<std::int64_t>& x, int r) {
    int n = static_cast<int>(x.size());
    std::int64_t s = 0;
    for (int j = 0; j < r; ++j) s += x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(n - 1 - j)];
    return s;
}

// <x, alpha_r^vee> = x_r - x_{n+1-r}
inline std::int64_t pairing_coroot(const std::vector<std::int64_t>& x, int r) {
    int n = static_cast<int>(x.size());
    return x[static_cast<std::size_t>(r - 1)] - x[static_cast<std::size_t>(n - r)];
}

// (omega x)_{omega(i)} = x_i
inline std::vector<std::int64_t> act(const Perm& w, const std::vector<std::int64_t>& x) {
    std::vector<std::int64_t> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[static_cast<std::size_t>(w[i])] = x[i];
    return y;
}

struct KostantEntry {
    Perm omega;
    int degree = 0;
    Weight weight;  // omega(lambda) - rho_B, integral
};

namespace detail {

inline const std::vector<std::int64_t>& single_block(const Weight& w, int n, const char* who) {
    if (w.blocks.size() != 1 || static_cast<int>(w.blocks[0].size()) != n)
        throw PreconditionError(std::string(who) + ": weight must have one block of size p+q");
    return w.blocks[0];
}

inline void check_doubled_lambda(const Weight& lambda2, int n, const char* who) {
    auto& x = single_block(lambda2, n, who);
    if (!lambda2.regular()) throw PreconditionError(std::string(who) + ": lambda must be dominant regular");
    if (lambda2.a % 2 != 0) throw PreconditionError(std::string(who) + ": doubled similitude weight must be even");
    for (auto v : x)
        if (((v - (n - 1)) % 2 + 2) % 2 != 0)
            throw PreconditionError(std::string(who) + ": lambda - rho_B must be integral (2 lambda_j = n-1 mod 2)");
}

// omega^{-1} increasing on every block
inline bool is_min_coset_rep(const Perm& omega, const std::vector<int>& blocks) {
    Perm inv = inverse(omega);
    int start = 0;
    for (int b : blocks) {
        for (int k = start + 1; k < start + b; ++k)
            if (inv[static_cast<std::size_t>(k - 1)] > inv[static_cast<std::size_t>(k)]) return false;
        start += b;
    }
    return true;
}

}  // namespace detail

// Weights are passed doubled: lambda2 = 2 lambda with lambda = (highest weight) + rho_B.
inline Weight lambda_from_highest_weight(const Weight& mu) {
    if (mu.blocks.size() != 1) throw PreconditionError("lambda_from_highest_weight: one block expected");
    if (!mu.dominant()) throw PreconditionError("lambda_from_highest_weight: weight must be dominant");
    int n = static_cast<int>(mu.blocks[0].size());
    Weight l{2 * mu.a, {{}}};
    for (int i = 0; i < n; ++i) l.blocks[0].push_back(2 * mu.blocks[0][static_cast<std::size_t>(i)] + n - 1 - 2 * i);
    return l;
}

inline std::vector<KostantEntry> kostant_cohomology(const KostantDatum& kd, const Weight& lambda2) {
    int n = kd.n();
    detail::check_doubled_lambda(lambda2, n, "kostant_cohomology");
    auto blocks = kd.levi_blocks();
    auto rho2 = kd.two_rho();
    std::vector<KostantEntry> out;
    for (auto& omega : all_permutations(n)) {
        if (!detail::is_min_coset_rep(omega, blocks)) continue;
        auto wl = act(omega, lambda2.blocks[0]);
        Weight w{lambda2.a / 2, {{}}};
        for (int i = 0; i < n; ++i)
            w.blocks[0].push_back((wl[static_cast<std::size_t>(i)] - rho2[static_cast<std::size_t>(i)]) / 2);
        out.push_back({omega, inversions(omega), w});
    }
    return out;
}

enum class TruncDir { Greater, Less };

// Keep entries with <omega(lambda) - rho_B, varpi_r> > t_r (resp. <) for r in S',
// t_r = r(r - n); computed on doubled weights.
inline std::vector<KostantEntry> truncate_cohomology(const std::vector<KostantEntry>& entries, const KostantDatum& kd,
                                                     TruncDir dir) {
    int n = kd.n();
    std::vector<KostantEntry> out;
    for (auto& e : entries) {
        auto& x = detail::single_block(e.weight, n, "truncate_cohomology");
        std::vector<std::int64_t> x2;
        for (auto v : x) x2.push_back(2 * v);
        bool keep = true;
        for (int r : kd.Sp) {
            std::int64_t lhs = pairing_varpi(x2, r), t2 = 2 * std::int64_t{r} * (r - n);
            if (lhs == t2) throw PreconditionError("truncate_cohomology: weight lies on a truncation wall");
            keep = keep && (dir == TruncDir::Greater ? lhs > t2 : lhs < t2);
        }
        if (keep) out.push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------- Weyl characters

// Schur polynomial of a dominant weight of GL_n in the given variables, as the exact
// quotient of the alternant a_{lambda+delta} by the Vandermonde a_delta.
inline LaurentPoly weyl_character(const std::vector<std::int64_t>& lambda, const std::vector<VarId>& vars) {
    int n = static_cast<int>(lambda.size());
    if (static_cast<int>(vars.size()) != n) throw PreconditionError("weyl_character: one variable per coordinate");
    if (n == 0) return LaurentPoly(1);
    // the bialternant quotient is exact for every weight, so dominance is checked up front
    for (int j = 1; j < n; ++j)
        if (lambda[static_cast<std::size_t>(j - 1)] < lambda[static_cast<std::size_t>(j)])
            throw PreconditionError("weyl_character: weight is not dominant");
    std::int64_t lo = *std::min_element(lambda.begin(), lambda.end());
    auto alternant = [&](const std::vector<std::int64_t>& e) {
        LaurentPoly a;
        for (auto& p : all_permutations(n)) {
            std::map<VarId, std::int64_t> ex;
            for (int j = 0; j < n; ++j) ex[vars[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])]] = e[static_cast<std::size_t>(j)];
            a += LaurentPoly::term(perm_sign(p), 0, Monomial(ex));
        }
        return a;
    };
    std::vector<std::int64_t> top, delta;
    for (int j = 0; j < n; ++j) {
        delta.push_back(n - 1 - j);
        top.push_back(lambda[static_cast<std::size_t>(j)] - lo + n - 1 - j);
    }
    LaurentPoly quot = divide_exact(alternant(top), alternant(delta));
    std::map<VarId, std::int64_t> shift;
    for (auto& v : vars) shift[v] = lo;
    return quot * make_monomial(shift);
}

// ---------------------------------------------------------------- the phi identity

struct PhiReport {
    SignedWeightSum lhs, rhs;
    bool ok() const { return lhs == rhs; }
};

// Both sides of the phi identity, with weights in doubled coordinates:
//   lhs = (-1)^s 2^s sum_{S' contains s} (-1)^{s-|S'|} |W(L_S,L_{S'})|^{-1} sum_{sigma in S_s}
//         sigma . [truncated Kostant sum for S', expanded through the Weyl numerators of M_{S'}]
//   rhs = (-1)^s 2^s sum_{omega : <omega lambda, alpha_r^vee> > 0, r <= s} det(omega) e^{omega lambda}
inline PhiReport verify_phi_identity(int p, int q, int s, const Weight& lambda2) {
    if (s < 1 || s > std::min(p, q)) throw PreconditionError("verify_phi_identity: need 1 <= s <= min(p,q)");
    int n = p + q;
    detail::check_doubled_lambda(lambda2, n, "verify_phi_identity");
    const auto& lam = lambda2.blocks[0];
    auto all = all_permutations(n);
    for (auto& w : all) {
        auto x = act(w, lam);
        for (int r = 1; r <= s; ++r)
            if (pairing_varpi(x, r) == 0 || pairing_coroot(x, r) == 0)
                throw PreconditionError("verify_phi_identity: lambda lies on a wall");
    }
    // S_s acting on the pairs (j, n+1-j), j <= s
    std::vector<Perm> sigmas;
    for (auto& t : all_permutations(s)) {
        Perm pm = identity_perm(n);
        for (int j = 0; j < s; ++j) {
            pm[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j)];
            pm[static_cast<std::size_t>(n - 1 - j)] = n - 1 - t[static_cast<std::size_t>(j)];
        }
        sigmas.push_back(pm);
    }
    PhiReport rep;
    for (unsigned mask = 0; mask < (1u << (s - 1)); ++mask) {
        std::vector<int> Sp;
        for (int r = 1; r < s; ++r)
            if (mask >> (r - 1) & 1u) Sp.push_back(r);
        Sp.push_back(s);
        KostantDatum kd = KostantDatum::make(p, q, Sp);
        auto entries = truncate_cohomology(kostant_cohomology(kd, lambda2), kd, TruncDir::Greater);
        auto blocks = kd.levi_blocks();
        auto rho2 = kd.two_rho(), rhoM2 = kd.two_rho_levi();
        // W(L_S, L_{S'}): permutations of {1..s} preserving the blocks cut by S'
        std::int64_t wS = 1;
        int prev = 0;
        for (int r : Sp) {
            wS = detail::checked_mul(wS, factorial(r - prev));
            prev = r;
        }
        int sgn = (s - static_cast<int>(Sp.size())) % 2 ? -1 : 1;
        Rational coeff(sgn, wS);
        std::vector<Perm> levi_weyl;
        for (auto& w : all) {
            bool inside = true;
            int start = 0;
            for (int b : blocks) {
                for (int k = start; k < start + b; ++k)
                    if (w[static_cast<std::size_t>(k)] < start || w[static_cast<std::size_t>(k)] >= start + b) inside = false;
                start += b;
            }
            if (inside) levi_weyl.push_back(w);
        }
        for (auto& e : entries) {
            // Weyl numerator of V_nu for M_{S'}: sum det(w_M) e^{w_M(nu + rho_{S'})}, then shift by rho_B - rho_{S'}
            std::vector<std::int64_t> top;
            for (int i = 0; i < n; ++i) top.push_back(2 * e.weight.blocks[0][static_cast<std::size_t>(i)] + rhoM2[static_cast<std::size_t>(i)]);
            int deg_sign = e.degree % 2 ? -1 : 1;
            for (auto& wm : levi_weyl) {
                auto y = act(wm, top);
                for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += rho2[static_cast<std::size_t>(i)] - rhoM2[static_cast<std::size_t>(i)];
                int sign = deg_sign * perm_sign(wm);
                for (auto& sg : sigmas) rep.lhs.add(Weight{lambda2.a, {act(sg, y)}}, coeff * Rational(sign));
            }
        }
    }
    for (auto& w : all) {
        auto x = act(w, lam);
        bool pass = true;
        for (int r = 1; r <= s; ++r) pass = pass && pairing_coroot(x, r) > 0;
        if (pass) rep.rhs.add(Weight{lambda2.a, {x}}, perm_sign(w));
    }
    Rational c(s % 2 ? -pow2(s) : pow2(s));
    rep.lhs.scale(c);
    rep.rhs.scale(c);
    return rep;
}

// ---------------------------------------------------------------- endoscopic weights

// omega in Omega_* is determined per factor by I_i = omega_i^{-1}({1..n_i^+}).
inline std::vector<std::vector<std::vector<int>>> omega_star(const EndoTriple& h) {
    std::vector<std::vector<std::vector<int>>> out{{}};
    for (int i = 1; i <= h.r(); ++i) {
        auto [np, nm] = h.factor(i);
        std::vector<std::vector<std::vector<int>>> next;
        for (auto& prefix : out)
            for (auto& I : k_subsets(1, np + nm, np)) {
                auto v = prefix;
                v.push_back(I);
                next.push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

inline Weight endoscopic_weight_transfer(const Weight& a, const EndoTriple& h, const std::vector<std::vector<int>>& I,
                                         std::int64_t C) {
    if (C % 2 == 0) throw PreconditionError("endoscopic_weight_transfer: C must be odd");
    if (!a.dominant()) throw PreconditionError("endoscopic_weight_transfer: weight must be dominant");
    if (static_cast<int>(a.blocks.size()) != h.r() || static_cast<int>(I.size()) != h.r())
        throw PreconditionError("endoscopic_weight_transfer: factor count mismatch");
    Weight out{a.a, {}};
    for (int i = 1; i <= h.r(); ++i) {
        auto [np, nm] = h.factor(i);
        const auto& blk = a.blocks[static_cast<std::size_t>(i - 1)];
        int n = np + nm;
        if (static_cast<int>(blk.size()) != n) throw PreconditionError("endoscopic_weight_transfer: block size mismatch");
        std::vector<int> Ii = I[static_cast<std::size_t>(i - 1)];
        std::sort(Ii.begin(), Ii.end());
        if (static_cast<int>(Ii.size()) != np || std::adjacent_find(Ii.begin(), Ii.end()) != Ii.end() ||
            (!Ii.empty() && (Ii.front() < 1 || Ii.back() > n)))
            throw PreconditionError("endoscopic_weight_transfer: omega is not in Omega_*");
        std::vector<int> K;
        for (int j = 1; j <= n; ++j)
            if (!std::binary_search(Ii.begin(), Ii.end(), j)) K.push_back(j);
        std::vector<std::int64_t> plus, minus;
        for (int s = 1; s <= np; ++s) {
            int j = Ii[static_cast<std::size_t>(s - 1)];
            plus.push_back(blk[static_cast<std::size_t>(j - 1)] + s - j + std::int64_t{nm} * (1 - C) / 2);
        }
        for (int t = 1; t <= nm; ++t) {
            int k = K[static_cast<std::size_t>(t - 1)];
            minus.push_back(blk[static_cast<std::size_t>(k - 1)] + t - k + std::int64_t{np} * (1 + C) / 2);
        }
        out.blocks.push_back(plus);
        out.blocks.push_back(minus);
    }
    return out;
}

// ---------------------------------------------------------------- Frobenius traces

enum class TraceField { Q, E };

// Split or E-rational case: z^{-m} sum_{|J_i| = p_i} prod z_{i,j}^{-m deg}, deg = [F_p : Q_p].
inline LaurentPoly frobenius_trace(const SignedGroupDatum& sg, int m, bool split, TraceField F) {
    if (m < 1) throw PreconditionError("frobenius_trace: m must be positive");
    if (F == TraceField::Q && !split && m % 2 == 1)
        throw UnsupportedError("frobenius_trace: case F = Q, p inert, m odd is not implemented (signs undetermined)");
    int deg = (F == TraceField::E && !split) ? 2 : 1;
    LaurentPoly f = LaurentPoly::var(VarId::sim(), -m);
    for (std::size_t i = 0; i < sg.sig.size(); ++i) {
        auto [p, q] = sg.sig[i];
        LaurentPoly block;
        for (auto& J : k_subsets(1, p + q, p)) {
            std::map<VarId, std::int64_t> e;
            for (int j : J) e[VarId::tor(static_cast<int>(i) + 1, j)] = -std::int64_t{m} * deg;
            block += make_monomial(e);
        }
        f *= block;
    }
    return f;
}

// ---------------------------------------------------------------- nonsingular subsets

inline Rational exact_determinant(std::vector<std::vector<Rational>> a) {
    int n = static_cast<int>(a.size());
    Rational det(1);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
            det = -det;
        }
        Rational pv = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        det *= pv;
        for (int r = c + 1; r < n; ++r) {
            Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / pv;
            if (f.is_zero()) continue;
            for (int k = c; k < n; ++k)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
        }
    }
    return det;
}

struct SubsetSystem {
    std::vector<std::vector<int>> J;  // J_1..J_n, each of size p
    Rational det;
};

inline std::vector<std::vector<Rational>> incidence_matrix(const std::vector<std::vector<int>>& J, int n) {
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j : J[static_cast<std::size_t>(i)]) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = Rational(1);
    return m;
}

namespace detail {

// Subsets of size p of {base..base+n-1}, n of them, with invertible incidence matrix.
inline std::vector<std::vector<int>> build_subsets(int base, int n, int p) {
    if (n == 1) return {{base}};
    if (p == n - 1) {
        std::vector<std::vector<int>> J;
        for (int i = 0; i < n; ++i) {
            std::vector<int> s;
            for (int j = 0; j < n; ++j)
                if (j != i) s.push_back(base + j);
            J.push_back(s);
        }
        return J;
    }
    // p <= n-2: J_1 = first p indices, then recurse on the last n-1 indices.
    std::vector<std::vector<int>> J;
    std::vector<int> first;
    for (int j = 0; j < p; ++j) first.push_back(base + j);
    J.push_back(first);
    for (auto& s : build_subsets(base + 1, n - 1, p)) J.push_back(s);
    return J;
}

}  // namespace detail

inline SubsetSystem nonsingular_subsets(int n, int p) {
    if (n < 1 || p < 1 || p > std::max(1, n - 1)) throw PreconditionError("nonsingular_subsets: need 1 <= p <= max(1, n-1)");
    SubsetSystem sys;
    sys.J = detail::build_subsets(1, n, p);
    sys.det = exact_determinant(incidence_matrix(sys.J, n));
    if (sys.det.is_zero()) throw std::logic_error("nonsingular_subsets: construction produced a singular system");
    return sys;
}

}  // namespace stabkit

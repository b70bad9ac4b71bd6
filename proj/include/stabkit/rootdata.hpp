#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "laurent.hpp"
#include "rational.hpp"

namespace stabkit {

// Raised when inputs violate an operation's preconditions.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised for cases the library deliberately does not model.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// G(U*(n_1) x ... x U*(n_r))
struct GroupDatum {
    std::vector<int> n;

    GroupDatum() = default;
    explicit GroupDatum(std::vector<int> sizes) : n(std::move(sizes)) {
        if (n.empty()) throw PreconditionError("group datum needs at least one factor");
        for (int v : n)
            if (v < 1) throw PreconditionError("group datum factors must be positive");
    }
    int r() const { return static_cast<int>(n.size()); }
    int ni(int i) const { return n.at(static_cast<std::size_t>(i - 1)); }
    int qi(int i) const { return ni(i) / 2; }
    int total() const {
        int t = 0;
        for (int v : n) t += v;
        return t;
    }
    bool all_even() const {
        return std::all_of(n.begin(), n.end(), [](int v) { return v % 2 == 0; });
    }
    TorusLayout layout(bool split) const { return TorusLayout{n, split}; }
    friend bool operator==(const GroupDatum&, const GroupDatum&) = default;
};

// G(U(p_1,q_1) x ... x U(p_r,q_r))
struct SignedGroupDatum {
    std::vector<std::pair<int, int>> sig;

    SignedGroupDatum() = default;
    explicit SignedGroupDatum(std::vector<std::pair<int, int>> s) : sig(std::move(s)) {
        if (sig.empty()) throw PreconditionError("signature needs at least one factor");
        for (auto [p, q] : sig)
            if (p < 0 || q < 0 || p + q < 1) throw PreconditionError("signature entries must be nonnegative with p+q >= 1");
    }
    GroupDatum datum() const {
        std::vector<int> n;
        for (auto [p, q] : sig) n.push_back(p + q);
        return GroupDatum(n);
    }
};

struct EndoTriple {
    std::vector<int> nplus, nminus;

    EndoTriple() = default;
    EndoTriple(std::vector<int> p, std::vector<int> m) : nplus(std::move(p)), nminus(std::move(m)) {}

    int r() const { return static_cast<int>(nplus.size()); }
    std::pair<int, int> factor(int i) const {
        return {nplus.at(static_cast<std::size_t>(i - 1)), nminus.at(static_cast<std::size_t>(i - 1))};
    }

    void validate_for(const GroupDatum& g) const {
        if (nplus.size() != g.n.size() || nminus.size() != g.n.size())
            throw PreconditionError("endoscopic triple has the wrong number of factors");
        int sum_minus = 0;
        for (int i = 1; i <= g.r(); ++i) {
            auto [p, m] = factor(i);
            if (p < 0 || m < 0 || p + m != g.ni(i)) throw PreconditionError("endoscopic factor sizes do not add up");
            sum_minus += m;
        }
        if (sum_minus % 2 != 0) throw PreconditionError("parity violation: sum of n_i^- must be even");
    }

    // Block sizes of H in the order (1+, 1-, 2+, 2-, ...); zeros are GU*(0) factors.
    std::vector<int> blocks() const {
        std::vector<int> b;
        for (std::size_t i = 0; i < nplus.size(); ++i) {
            b.push_back(nplus[i]);
            b.push_back(nminus[i]);
        }
        return b;
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> v;
        for (std::size_t i = 0; i < nplus.size(); ++i) v.emplace_back(nplus[i], nminus[i]);
        return v;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < nplus.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(nplus[i]) + "-" + std::to_string(nminus[i]);
        }
        return s;
    }

    friend bool operator==(const EndoTriple&, const EndoTriple&) = default;
    friend bool operator<(const EndoTriple& a, const EndoTriple& b) { return a.pairs() < b.pairs(); }
};

// split: p splits in E. d = [L:Q_p]. G splits over L iff p splits or d is even;
// then a = [L:E_p] is d (split) or d/2 (inert).
class PlaceContext {
public:
    PlaceContext() = default;
    static PlaceContext make(bool split, int d, std::optional<int> a = std::nullopt) {
        if (d < 1) throw PreconditionError("d must be positive");
        PlaceContext c;
        c.split_ = split;
        c.d_ = d;
        if (a) {
            if (!c.splits_over_L()) throw PreconditionError("a is undefined when G does not split over L (p inert, d odd)");
            if (*a != c.a()) throw PreconditionError("inconsistent degrees: expected a = " + std::to_string(c.a()));
        }
        return c;
    }
    static PlaceContext split_place(int d = 1) { return make(true, d); }
    static PlaceContext inert_place(int d = 1) { return make(false, d); }

    bool split() const { return split_; }
    int d() const { return d_; }
    bool splits_over_L() const { return split_ || d_ % 2 == 0; }
    int a() const {
        if (!splits_over_L()) throw PreconditionError("a is undefined when G does not split over L");
        return split_ ? d_ : d_ / 2;
    }

private:
    bool split_ = true;
    int d_ = 1;
};

inline std::vector<WeylElement> relative_weyl_group(const GroupDatum& g, const PlaceContext& ctx) {
    return enumerate_weyl_group(g.layout(ctx.splits_over_L()));
}

// ---------------------------------------------------------------- endoscopy

struct EndoClass {
    EndoTriple rep;
    int outer_order = 1;
};

namespace detail {

inline EndoTriple swapped(const EndoTriple& t, unsigned mask) {
    EndoTriple s = t;
    for (int i = 0; i < t.r(); ++i)
        if (mask >> i & 1u) std::swap(s.nplus[static_cast<std::size_t>(i)], s.nminus[static_cast<std::size_t>(i)]);
    return s;
}

// Swapping factor i moves sum n^- by n_i - 2 n_i^-, so a mask keeps parity iff sum_{i in mask} n_i is even.
inline bool mask_keeps_parity(const GroupDatum& g, unsigned mask) {
    int s = 0;
    for (int i = 0; i < g.r(); ++i)
        if (mask >> i & 1u) s += g.n[static_cast<std::size_t>(i)];
    return s % 2 == 0;
}

}  // namespace detail

inline EndoTriple canonical_triple(const GroupDatum& g, const EndoTriple& t) {
    t.validate_for(g);
    EndoTriple best = t;
    for (unsigned mask = 1; mask < (1u << g.r()); ++mask) {
        if (!detail::mask_keeps_parity(g, mask)) continue;
        EndoTriple s = detail::swapped(t, mask);
        if (s < best) best = s;
    }
    return best;
}

inline int outer_order(const EndoTriple& t) {
    int cnt = 0;
    for (int i = 1; i <= t.r(); ++i) {
        auto [p, m] = t.factor(i);
        if (p == m) ++cnt;
    }
    return static_cast<int>(pow2(cnt));
}

inline std::vector<EndoClass> enumerate_endoscopic(const GroupDatum& g) {
    std::set<EndoTriple> reps;
    EndoTriple cur(std::vector<int>(static_cast<std::size_t>(g.r())), std::vector<int>(static_cast<std::size_t>(g.r())));
    auto rec = [&](auto&& self, int i, int sum_minus) -> void {
        if (i == g.r()) {
            if (sum_minus % 2 == 0) reps.insert(canonical_triple(g, cur));
            return;
        }
        for (int m = 0; m <= g.n[static_cast<std::size_t>(i)]; ++m) {
            cur.nminus[static_cast<std::size_t>(i)] = m;
            cur.nplus[static_cast<std::size_t>(i)] = g.n[static_cast<std::size_t>(i)] - m;
            self(self, i + 1, sum_minus + m);
        }
    };
    rec(rec, 0, 0);
    std::vector<EndoClass> out;
    for (auto& t : reps) out.push_back({t, outer_order(t)});
    return out;
}

// ---------------------------------------------------------------- invariants

inline std::int64_t tamagawa(const GroupDatum& g) {
    return g.all_even() ? pow2(g.r()) : pow2(g.r() - 1);
}

// Tamagawa number of H = G(U*(m_1) x ...). A GU*(0) = G_m factor is absorbed by the
// common similitude and contributes no unitary factor, so zero blocks are dropped.
inline std::int64_t tamagawa_endoscopic(const EndoTriple& h) {
    std::vector<int> nz;
    for (int b : h.blocks())
        if (b > 0) nz.push_back(b);
    return tamagawa(GroupDatum(nz));
}

inline std::int64_t k_invariant(const SignedGroupDatum& sg) {
    GroupDatum g = sg.datum();
    int n = g.total(), r = g.r();
    return g.all_even() ? pow2(n - r - 1) : pow2(n - r);
}

inline std::int64_t packet_size(int p, int q) {
    if (p < 0 || q < 0) throw PreconditionError("packet_size: negative signature");
    if (p != q) return binomial(p + q, p);
    return binomial(2 * q, q) / 2;
}

inline Rational iota(const GroupDatum& g, const EndoTriple& h) {
    h.validate_for(g);
    return Rational(tamagawa(g)) / Rational(tamagawa_endoscopic(h) * outer_order(h));
}

// |pi_0(X)| as 2^{#{i : p_i = q_i}}, the per-factor product of the GU(p,p) count.
inline std::int64_t pi0_count(const SignedGroupDatum& sg) {
    int c = 0;
    for (auto [p, q] : sg.sig)
        if (p == q && p + q >= 2) ++c;
    return pow2(c);
}

inline Rational iota_GH(const SignedGroupDatum& sg, const EndoTriple& h) {
    GroupDatum g = sg.datum();
    h.validate_for(g);
    // Product over factors of sum_{|I_i| = a_i} (-1)^{|I_i cap {n_i^+ + 1..n_i}|}.
    std::int64_t signed_sum = 1;
    for (int i = 1; i <= g.r(); ++i) {
        auto [p, q] = sg.sig[static_cast<std::size_t>(i - 1)];
        int a = std::max(p, q);
        int np = h.factor(i).first;
        std::int64_t s = 0;
        for (auto& I : k_subsets(1, g.ni(i), a)) {
            int cnt = 0;
            for (int j : I)
                if (j > np) ++cnt;
            s += cnt % 2 ? -1 : 1;
        }
        signed_sum = detail::checked_mul(signed_sum, s);
    }
    return iota(g, h) / Rational(pi0_count(sg)) * Rational(signed_sum);
}

}  // namespace stabkit

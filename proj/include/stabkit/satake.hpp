#pragma once

#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "json_io.hpp"
#include "laurent.hpp"
#include "rootdata.hpp"

namespace stabkit {

enum class Side { Source, Target };

// Satake model C[X_*(T)]^Omega. `group` is the full Weyl group, `gens` a
// generating set used for membership tests.
struct HeckeRing {
    TorusLayout layout;
    Side side = Side::Target;
    std::vector<WeylElement> group;
    std::vector<WeylElement> gens;

    std::vector<VarId> variables() const { return layout.variables(); }

    bool has_variables_of(const LaurentPoly& f) const {
        auto vs = variables();
        for (auto& v : f.variables())
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) return false;
        return true;
    }
    bool contains(const LaurentPoly& f) const { return has_variables_of(f) && is_invariant(f, gens, layout); }
};

inline HeckeRing hecke_ring_layout(const TorusLayout& L, Side side) {
    return HeckeRing{L, side, enumerate_weyl_group(L), weyl_generators(L)};
}

// Source rings live over L, target rings over Q_p.
inline HeckeRing hecke_ring(const GroupDatum& g, const PlaceContext& ctx, Side side) {
    bool split = side == Side::Source ? ctx.splits_over_L() : ctx.split();
    return hecke_ring_layout(g.layout(split), side);
}

// ---------------------------------------------------------------- variable helpers

namespace detail {

// X_{i,j} for 1 <= j <= n_i under the extended-index rule of an inert torus.
inline SignedMonomial extended_tor(const TorusLayout& L, int i, int j) {
    int n = L.n(i);
    if (j < 1 || j > n) throw std::out_of_range("extended_tor: index out of range");
    if (L.split) return SignedMonomial::of(VarId::tor(i, j));
    int q = L.q(i);
    if (j <= q) return SignedMonomial::of(VarId::tor(i, j));
    if (n % 2 == 1 && j == (n + 1) / 2) return SignedMonomial::one();
    return SignedMonomial::of(VarId::tor(i, n + 1 - j), -1);
}

// The cocharacter X = X_1...X_r written in the variables of the layout.
inline SignedMonomial similitude_X(const TorusLayout& L) {
    if (L.split || !L.all_even()) return SignedMonomial::of(VarId::sim());
    std::map<VarId, std::int64_t> e{{VarId::sim(), 2}};
    for (int i = 1; i <= L.r(); ++i)
        for (int j = 1; j <= L.q(i); ++j) e[VarId::tor(i, j)] = -1;
    return SignedMonomial{1, 0, Monomial(e)};
}

inline int check_subset_size(int s, int n) {
    if (s < 0 || s > n) throw PreconditionError("subset size out of range");
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------- Kottwitz functions

inline LaurentPoly kottwitz_function(const GroupDatum& g, const std::vector<int>& s, const PlaceContext& ctx) {
    if (!ctx.splits_over_L()) throw PreconditionError("kottwitz_function needs G split over L");
    if (static_cast<int>(s.size()) != g.r()) throw PreconditionError("one s_i per factor is required");
    std::int64_t qexp = 0;
    LaurentPoly f = LaurentPoly::var(VarId::sim(), -1);
    for (int i = 1; i <= g.r(); ++i) {
        int si = detail::check_subset_size(s[static_cast<std::size_t>(i - 1)], g.ni(i));
        qexp += std::int64_t{si} * (g.ni(i) - si);
        LaurentPoly block;
        for (auto& I : k_subsets(1, g.ni(i), si)) {
            std::map<VarId, std::int64_t> e;
            for (int j : I) e[VarId::tor(i, j)] = -1;
            block += make_monomial(e);
        }
        f *= block;
    }
    return LaurentPoly::q_power(detail::checked_mul(qexp, ctx.d())) * f;
}

// ---------------------------------------------------------------- morphisms

struct RingMap {
    Substitution sub;
    HeckeRing source;
    HeckeRing target;

    LaurentPoly apply(const LaurentPoly& f) const { return substitute(f, sub); }
};

inline RingMap base_change_map(const GroupDatum& g, const PlaceContext& ctx) {
    HeckeRing src = hecke_ring(g, ctx, Side::Source);
    HeckeRing tgt = hecke_ring(g, ctx, Side::Target);
    Substitution sub;
    const TorusLayout& T = tgt.layout;
    if (!ctx.splits_over_L()) {
        int d = ctx.d();
        sub[VarId::sim()] = SignedMonomial::of(VarId::sim(), d);
        for (int i = 1; i <= g.r(); ++i)
            for (int j = 1; j <= g.qi(i); ++j) sub[VarId::tor(i, j)] = SignedMonomial::of(VarId::tor(i, j), d);
    } else {
        int a = ctx.a();
        sub[VarId::sim()] = detail::similitude_X(T).pow(a);
        for (int i = 1; i <= g.r(); ++i)
            for (int j = 1; j <= g.ni(i); ++j) sub[VarId::tor(i, j)] = detail::extended_tor(T, i, j).pow(a);
    }
    return {sub, src, tgt};
}

namespace detail {

inline void check_inert_routing(const GroupDatum& g, const TorusLayout& G, const TorusLayout& H) {
    if (G.all_even() != H.all_even())
        throw UnsupportedError("inert similitude variable is X' on one side and X on the other (mixed block parities)");
    for (int i = 1; i <= g.r(); ++i)
        if (H.q(2 * i - 1) + H.q(2 * i) != g.qi(i))
            throw UnsupportedError("inert routing undefined: factor " + std::to_string(i) + " splits into two odd blocks");
}

}  // namespace detail

// Endoscopic transfer b_0 for eta_simple, at Q_p.
inline RingMap transfer_map(const GroupDatum& g, const EndoTriple& h, const PlaceContext& ctx) {
    h.validate_for(g);
    TorusLayout GL = g.layout(ctx.split()), HL{h.blocks(), ctx.split()};
    Substitution sub;
    sub[VarId::sim()] = SignedMonomial::of(VarId::sim());
    if (ctx.split()) {
        for (int i = 1; i <= g.r(); ++i) {
            int np = h.factor(i).first;
            for (int j = 1; j <= g.ni(i); ++j)
                sub[VarId::tor(i, j)] = j <= np ? SignedMonomial::of(VarId::tor(2 * i - 1, j))
                                                : SignedMonomial::of(VarId::tor(2 * i, j - np));
        }
    } else {
        detail::check_inert_routing(g, GL, HL);
        for (int i = 1; i <= g.r(); ++i) {
            int qp = HL.q(2 * i - 1);
            for (int j = 1; j <= g.qi(i); ++j)
                sub[VarId::tor(i, j)] = j <= qp ? SignedMonomial::of(VarId::tor(2 * i - 1, j))
                                                : SignedMonomial::of(VarId::tor(2 * i, j - qp));
        }
    }
    return {sub, hecke_ring_layout(GL, Side::Source), hecke_ring_layout(HL, Side::Target)};
}

// Twisted transfer b~_0 for eta_simple: H(G(L)) -> H(H(Q_p)), sign -1 on the minus blocks.
inline RingMap twisted_transfer_map(const GroupDatum& g, const EndoTriple& h, const PlaceContext& ctx) {
    h.validate_for(g);
    TorusLayout GL = g.layout(ctx.splits_over_L()), HL{h.blocks(), ctx.split()};
    Substitution sub;
    if (ctx.splits_over_L()) {
        int a = ctx.a();
        sub[VarId::sim()] = detail::similitude_X(HL).pow(a);
        for (int i = 1; i <= g.r(); ++i) {
            int np = h.factor(i).first;
            for (int j = 1; j <= g.ni(i); ++j) {
                SignedMonomial img = j <= np ? detail::extended_tor(HL, 2 * i - 1, j) : detail::extended_tor(HL, 2 * i, j - np);
                img = img.pow(a);
                if (j > np) img.sign = -img.sign;
                sub[VarId::tor(i, j)] = img;
            }
        }
    } else {
        // G not split over L: both tori inert, routed as for the transfer map.
        detail::check_inert_routing(g, GL, HL);
        if (GL.all_even())
            throw UnsupportedError("twisted transfer with G not split over L and all blocks even is not modeled");
        int d = ctx.d();
        sub[VarId::sim()] = SignedMonomial::of(VarId::sim(), d);
        for (int i = 1; i <= g.r(); ++i) {
            int qp = HL.q(2 * i - 1);
            for (int j = 1; j <= g.qi(i); ++j)
                sub[VarId::tor(i, j)] = j <= qp ? SignedMonomial::of(VarId::tor(2 * i - 1, j), d)
                                                : SignedMonomial::of(VarId::tor(2 * i, j - qp), d, -1);
        }
    }
    return {sub, hecke_ring_layout(GL, Side::Source), hecke_ring_layout(HL, Side::Target)};
}

// ---------------------------------------------------------------- Levi subgroups

struct LeviDatum {
    int s = 0;  // M = M_{1..s}: linear part of rank s, Hermitian part of size n - 2s
};

// Data of s_M = s_{A, m_1, m_2} relative to h = (n_1, n_2).
struct LeviSignData {
    std::vector<int> A;  // subset of {1..s}
    int r1 = 0, r2 = 0, m1 = 0, m2 = 0;

    static LeviSignData make(const GroupDatum& g, const EndoTriple& h, const LeviDatum& levi, std::vector<int> A) {
        if (g.r() != 1) throw UnsupportedError("Levi operations are implemented for a single factor");
        h.validate_for(g);
        int n = g.ni(1), s = levi.s;
        if (s < 0 || 2 * s > n) throw PreconditionError("Levi rank s must satisfy 0 <= 2s <= n");
        std::sort(A.begin(), A.end());
        A.erase(std::unique(A.begin(), A.end()), A.end());
        for (int x : A)
            if (x < 1 || x > s) throw PreconditionError("sign set A must lie in {1..s}");
        LeviSignData d;
        d.A = A;
        d.r2 = static_cast<int>(A.size());
        d.r1 = s - d.r2;
        d.m1 = h.nplus[0] - 2 * d.r1;
        d.m2 = h.nminus[0] - 2 * d.r2;
        if (d.m1 < 0 || d.m2 < 0)
            throw PreconditionError("inconsistent Levi sign data: need n_1 >= 2(s - |A|) and n_2 >= 2|A|");
        return d;
    }
};

namespace detail {

// Permutations of block b fixing everything outside positions [lo, hi] (1-based),
// restricted to pair-preserving ones when the layout is inert.
inline std::vector<Perm> block_subgroup(int n, int lo, int hi, bool inert) {
    std::vector<Perm> out;
    int m = hi - lo + 1;
    if (m <= 0) return {identity_perm(n)};
    for (auto& sp : all_permutations(m)) {
        Perm p = identity_perm(n);
        for (int k = 0; k < m; ++k) p[static_cast<std::size_t>(lo - 1 + k)] = lo - 1 + sp[static_cast<std::size_t>(k)];
        bool ok = true;
        if (inert)
            for (int k = 0; k < n && ok; ++k)
                ok = p[static_cast<std::size_t>(n - 1 - k)] == n - 1 - p[static_cast<std::size_t>(k)];
        if (ok) out.push_back(p);
    }
    return out;
}

inline HeckeRing levi_ring(const TorusLayout& L, const std::vector<std::pair<int, int>>& herm, Side side) {
    std::vector<std::vector<Perm>> per;
    for (int b = 1; b <= L.r(); ++b)
        per.push_back(block_subgroup(L.n(b), herm[static_cast<std::size_t>(b - 1)].first,
                                     herm[static_cast<std::size_t>(b - 1)].second, !L.split));
    std::vector<WeylElement> group;
    std::vector<Perm> cur;
    auto rec = [&](auto&& self, std::size_t b) -> void {
        if (b == per.size()) {
            group.emplace_back(cur, !L.split);
            return;
        }
        for (auto& p : per[b]) {
            cur.push_back(p);
            self(self, b + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return HeckeRing{L, side, group, group};
}

}  // namespace detail

// Satake ring of M(L): Omega_M permutes Z_{s+1..n-s}.
inline HeckeRing levi_ring_G(const GroupDatum& g, const LeviDatum& levi, const PlaceContext& ctx) {
    if (g.r() != 1) throw UnsupportedError("Levi operations are implemented for a single factor");
    if (!ctx.splits_over_L()) throw PreconditionError("Levi operations assume G splits over L");
    int n = g.ni(1);
    if (levi.s < 0 || 2 * levi.s > n) throw PreconditionError("Levi rank s must satisfy 0 <= 2s <= n");
    return detail::levi_ring(g.layout(true), {{levi.s + 1, n - levi.s}}, Side::Source);
}

// Satake ring of M_H(Q_p): Omega_{M_H} acts on the Hermitian positions of each block.
inline HeckeRing levi_ring_H(const EndoTriple& h, const LeviSignData& sd, const PlaceContext& ctx) {
    TorusLayout HL{h.blocks(), ctx.split()};
    int n1 = h.nplus[0], n2 = h.nminus[0];
    return detail::levi_ring(HL, {{sd.r1 + 1, n1 - sd.r1}, {sd.r2 + 1, n2 - sd.r2}}, Side::Target);
}

// Constant term: the identity on polynomials, re-typed into the M-ring.
inline LaurentPoly levi_constant_term(const LaurentPoly& f, const GroupDatum& g, const LeviDatum& levi, const PlaceContext& ctx) {
    HeckeRing G = hecke_ring(g, ctx, Side::Source);
    if (!G.layout.split) throw PreconditionError("Levi operations assume G splits over L");
    if (!G.contains(f)) throw PreconditionError("levi_constant_term: f is not Omega_G-invariant");
    HeckeRing M = levi_ring_G(g, levi, ctx);
    if (!M.contains(f)) throw std::logic_error("levi_constant_term: constant term left the M-ring");
    return f;
}

inline LaurentPoly levi_kottwitz_function(const GroupDatum& g, const LeviDatum& levi, int alpha, int d) {
    if (g.r() != 1) throw UnsupportedError("Levi operations are implemented for a single factor");
    int n = g.ni(1), q = g.qi(1), r = levi.s;
    if (r < 0 || 2 * r > n) throw PreconditionError("Levi rank s must satisfy 0 <= 2s <= n");
    if (alpha < n - q || alpha > n) throw PreconditionError("alpha must satisfy n - q <= alpha <= n");
    if (d < 1) throw PreconditionError("d must be positive");
    std::map<VarId, std::int64_t> base{{VarId::sim(), -1}};
    if (alpha >= n - r + 1) {
        for (int i = 1; i <= alpha; ++i) base[VarId::tor(1, i)] = -1;
        return make_monomial(base);
    }
    for (int i = 1; i <= r; ++i) base[VarId::tor(1, i)] = -1;
    LaurentPoly sum;
    for (auto& I : k_subsets(r + 1, n - r, alpha - r)) {
        std::map<VarId, std::int64_t> e;
        for (int i : I) e[VarId::tor(1, i)] = -1;
        sum += make_monomial(e);
    }
    std::int64_t qexp = detail::checked_mul(d, std::int64_t{alpha - r} * (n - alpha - r));
    return LaurentPoly::q_power(qexp) * make_monomial(base) * sum;
}

// b_{s_M} (prime = false) or b_{s'_M} (prime = true). With A empty they coincide.
inline RingMap levi_twisted_transfer(const GroupDatum& g, const EndoTriple& h, const LeviDatum& levi,
                                     const LeviSignData& sd, const PlaceContext& ctx, bool prime = false) {
    HeckeRing M = levi_ring_G(g, levi, ctx);
    HeckeRing MH = levi_ring_H(h, sd, ctx);
    const TorusLayout& HL = MH.layout;
    int n = g.ni(1), r = levi.s, n1 = h.nplus[0], n2 = h.nminus[0];
    int a = ctx.a();
    std::vector<int> I, J = sd.A;
    for (int x = 1; x <= r; ++x)
        if (!std::binary_search(J.begin(), J.end(), x)) I.push_back(x);
    Substitution sub;
    sub[VarId::sim()] = detail::similitude_X(HL).pow(a);
    auto put = [&](int z, int block, int idx, int sign) {
        SignedMonomial img = detail::extended_tor(HL, block, idx).pow(a);
        img.sign *= sign;
        sub[VarId::tor(1, z)] = img;
    };
    int lin_sign = prime ? 1 : -1;
    for (int k = 1; k <= sd.r1; ++k) {
        int ik = I[static_cast<std::size_t>(k - 1)];
        put(ik, 1, k, 1);
        put(n + 1 - ik, 1, n1 + 1 - k, 1);
    }
    for (int l = 1; l <= sd.r2; ++l) {
        int jl = J[static_cast<std::size_t>(l - 1)];
        put(jl, 2, l, lin_sign);
        put(n + 1 - jl, 2, n2 + 1 - l, lin_sign);
    }
    for (int i = r + 1; i <= r + sd.m1; ++i) put(i, 1, i - sd.r2, 1);
    for (int i = r + sd.m1 + 1; i <= n - r; ++i) put(i, 2, i - (sd.r1 + sd.m1), -1);
    return {sub, M, MH};
}

// ---------------------------------------------------------------- the compatibility square

struct SquareFailure {
    std::string generator;  // label of the generator
    LaurentPoly f, lhs, rhs;
    std::string reason;
};

struct SquareReport {
    int cases = 0;
    std::vector<SquareFailure> failures;
    bool ok() const { return failures.empty(); }
};

struct LabeledPoly {
    std::string label;
    LaurentPoly poly;
};

inline std::vector<LabeledPoly> default_square_generators(const GroupDatum& g, const PlaceContext& ctx) {
    std::vector<LabeledPoly> gens;
    int n = g.ni(1), q = g.qi(1);
    for (int alpha = n - q; alpha <= n; ++alpha)
        gens.push_back({"kottwitz alpha=" + std::to_string(alpha), kottwitz_function(g, {alpha}, ctx)});
    return gens;
}

// Orbit sums of Z^c * prod Z_j^{e_j} with c in {-1,0,1}, sum |e_j| <= 2.
inline std::vector<LabeledPoly> orbit_sum_generators(const GroupDatum& g, const PlaceContext& ctx) {
    HeckeRing G = hecke_ring(g, ctx, Side::Source);
    std::vector<LabeledPoly> out;
    std::set<std::string> seen;
    int n = G.layout.torus_count(1);
    std::vector<std::map<VarId, std::int64_t>> shapes{{}};
    for (int j = 1; j <= n; ++j)
        for (int e : {-2, -1, 1, 2}) shapes.push_back({{VarId::tor(1, j), e}});
    for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k)
            for (int e1 : {-1, 1})
                for (int e2 : {-1, 1}) shapes.push_back({{VarId::tor(1, j), e1}, {VarId::tor(1, k), e2}});
    for (int c : {-1, 0, 1})
        for (auto e : shapes) {
            if (c != 0) e[VarId::sim()] = c;
            LaurentPoly f = symmetrize(make_monomial(e), G.group, G.layout);
            std::string key = serialize_poly(f);
            if (!seen.insert(key).second) continue;
            out.push_back({"orbit sum of " + make_monomial(e).str(), f});
        }
    return out;
}

// Checks b_{s_M}(f_M) == (b~(f))_{M_H} on every generator.
inline SquareReport verify_transfer_square(const GroupDatum& g, const EndoTriple& h, const LeviDatum& levi,
                                           const std::vector<int>& A, const PlaceContext& ctx,
                                           const std::vector<LabeledPoly>& generators) {
    LeviSignData sd = LeviSignData::make(g, h, levi, A);
    RingMap bsm = levi_twisted_transfer(g, h, levi, sd, ctx);
    RingMap bt = twisted_transfer_map(g, h, ctx);
    HeckeRing MH = levi_ring_H(h, sd, ctx);
    SquareReport rep;
    for (auto& gen : generators) {
        ++rep.cases;
        LaurentPoly fM = levi_constant_term(gen.poly, g, levi, ctx);
        LaurentPoly lhs = bsm.apply(fM);
        LaurentPoly rhs = bt.apply(gen.poly);
        std::string reason;
        if (!bt.target.contains(rhs)) reason = "twisted transfer image not Omega_H-invariant";
        else if (!MH.contains(lhs)) reason = "b_{s_M} image not Omega_{M_H}-invariant";
        else if (!(lhs == rhs)) reason = "composites differ";
        if (!reason.empty()) rep.failures.push_back({gen.label, gen.poly, lhs, rhs, reason});
    }
    return rep;
}

}  // namespace stabkit

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "stabkit/stabkit.hpp"

using namespace stabkit;

namespace {

LaurentPoly v(VarId id, std::int64_t e = 1) { return LaurentPoly::var(id, e); }
LaurentPoly X(std::int64_t e = 1) { return v(VarId::sim(), e); }
LaurentPoly T(int i, int j, std::int64_t e = 1) { return v(VarId::tor(i, j), e); }

const std::vector<PlaceContext>& places() {
    static const std::vector<PlaceContext> ps{PlaceContext::split_place(1), PlaceContext::split_place(2),
                                              PlaceContext::inert_place(1), PlaceContext::inert_place(2),
                                              PlaceContext::inert_place(3)};
    return ps;
}

std::vector<EndoTriple> triples(const GroupDatum& g) {
    std::vector<EndoTriple> out;
    std::vector<int> p(static_cast<std::size_t>(g.r())), m(static_cast<std::size_t>(g.r()));
    std::function<void(int, int)> rec = [&](int i, int sm) {
        if (i == g.r()) {
            if (sm % 2 == 0) out.emplace_back(p, m);
            return;
        }
        for (int k = 0; k <= g.ni(i + 1); ++k) {
            m[static_cast<std::size_t>(i)] = k;
            p[static_cast<std::size_t>(i)] = g.ni(i + 1) - k;
            rec(i + 1, sm + k);
        }
    };
    rec(0, 0);
    return out;
}

// Invariants of a ring: orbit sums of a few random monomials.
std::vector<LaurentPoly> sample_invariants(const HeckeRing& R, std::mt19937_64& rng, int count) {
    std::vector<LaurentPoly> out{LaurentPoly(1)};
    // X' itself is not invariant under the sign changes
    if (R.layout.split || !R.layout.all_even()) out.push_back(X(-1));
    for (int t = 0; t < count; ++t) out.push_back(symmetrize(oracle::random_layout_poly(rng, R.layout, 1), R.group, R.layout));
    return out;
}

}  // namespace

TEST(HeckeRing, Examples) {
    auto r1 = hecke_ring(GroupDatum({2}), PlaceContext::split_place(), Side::Target);
    EXPECT_EQ(r1.variables(), (std::vector<VarId>{VarId::sim(), VarId::tor(1, 1), VarId::tor(1, 2)}));
    EXPECT_EQ(r1.group.size(), 2u);
    auto r2 = hecke_ring(GroupDatum({2}), PlaceContext::inert_place(), Side::Target);
    EXPECT_EQ(r2.variables(), (std::vector<VarId>{VarId::sim(), VarId::tor(1, 1)}));
    EXPECT_EQ(r2.group.size(), 2u);
    EXPECT_TRUE(r2.layout.all_even());  // X' is the similitude variable
    auto r3 = hecke_ring(GroupDatum({3}), PlaceContext::inert_place(), Side::Target);
    EXPECT_EQ(r3.variables(), (std::vector<VarId>{VarId::sim(), VarId::tor(1, 1)}));
    EXPECT_EQ(r3.group.size(), 2u);
    EXPECT_FALSE(r3.layout.all_even());
}

TEST(Kottwitz, Examples) {
    auto ctx = PlaceContext::split_place(1);
    EXPECT_EQ(kottwitz_function(GroupDatum({2}), {1}, ctx), LaurentPoly::q_power(1) * X(-1) * (T(1, 1, -1) + T(1, 2, -1)));
    for (int n = 1; n <= 4; ++n)
        for (int d : {1, 3}) EXPECT_EQ(kottwitz_function(GroupDatum({n}), {0}, PlaceContext::split_place(d)), X(-1));
    EXPECT_EQ(kottwitz_function(GroupDatum({3}), {3}, PlaceContext::split_place(2)),
              X(-1) * T(1, 1, -1) * T(1, 2, -1) * T(1, 3, -1));
    EXPECT_THROW(kottwitz_function(GroupDatum({3}), {4}, ctx), PreconditionError);
    EXPECT_THROW(kottwitz_function(GroupDatum({3}), {1}, PlaceContext::inert_place(1)), PreconditionError);
}

TEST(Kottwitz, MatchesScaledOrbitSum) {
    std::vector<std::vector<int>> datums;
    for (int n = 1; n <= 5; ++n) datums.push_back({n});
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) datums.push_back({a, b});
    for (auto& n : datums) {
        GroupDatum g(n);
        auto L = g.layout(true);
        auto G = enumerate_weyl_group(L);
        std::vector<int> s(n.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == n.size()) {
                std::map<VarId, std::int64_t> e{{VarId::sim(), -1}};
                std::int64_t rho = 0;
                for (std::size_t k = 0; k < n.size(); ++k) {
                    for (int j = 1; j <= s[k]; ++j) e[VarId::tor(static_cast<int>(k) + 1, j)] = -1;
                    rho += s[k] * (n[k] - s[k]);
                }
                auto orbit = symmetrize(make_monomial(e), G, L);
                for (int d : {1, 2})
                    EXPECT_EQ(kottwitz_function(g, s, PlaceContext::split_place(d)), LaurentPoly::q_power(d * rho) * orbit);
                return;
            }
            for (int k = 0; k <= n[i]; ++k) {
                s[i] = k;
                rec(i + 1);
            }
        };
        rec(0);
    }
}

TEST(BaseChange, Examples) {
    auto m1 = base_change_map(GroupDatum({2}), PlaceContext::inert_place(3));
    EXPECT_EQ(m1.apply(X()), X(3));
    EXPECT_EQ(m1.apply(T(1, 1)), T(1, 1, 3));

    auto m2 = base_change_map(GroupDatum({2}), PlaceContext::inert_place(2));
    EXPECT_EQ(m2.apply(T(1, 1)), T(1, 1));
    EXPECT_EQ(m2.apply(T(1, 2)), T(1, 1, -1));
    EXPECT_EQ(m2.apply(X()), X(2) * T(1, 1, -1));  // X = X'^2 X_{1,1}^{-1} in the X' variables

    auto m3 = base_change_map(GroupDatum({1}), PlaceContext::split_place(1));
    EXPECT_EQ(m3.apply(X()), X());
    EXPECT_EQ(m3.apply(T(1, 1)), T(1, 1));
}

TEST(Transfer, Examples) {
    auto m = transfer_map(GroupDatum({3}), EndoTriple({1}, {2}), PlaceContext::split_place());
    EXPECT_EQ(m.apply(X()), X());
    EXPECT_EQ(m.apply(T(1, 1)), T(1, 1));
    EXPECT_EQ(m.apply(T(1, 2)), T(2, 1));
    EXPECT_EQ(m.apply(T(1, 3)), T(2, 2));

    auto m2 = transfer_map(GroupDatum({2}), EndoTriple({2}, {0}), PlaceContext::split_place());
    EXPECT_EQ(m2.apply(T(1, 2)), T(1, 2));

    auto m3 = transfer_map(GroupDatum({4}), EndoTriple({2}, {2}), PlaceContext::inert_place());
    EXPECT_EQ(m3.apply(X()), X());
    EXPECT_EQ(m3.apply(T(1, 1)), T(1, 1));
    EXPECT_EQ(m3.apply(T(1, 2)), T(2, 1));

    EXPECT_THROW(transfer_map(GroupDatum({3}), EndoTriple({2}, {1}), PlaceContext::split_place()), PreconditionError);
    // an odd/odd split of an even block has no inert routing
    EXPECT_THROW(transfer_map(GroupDatum({2, 2}), EndoTriple({1, 1}, {1, 1}), PlaceContext::inert_place()), UnsupportedError);
}

TEST(TwistedTransfer, Examples) {
    auto m = twisted_transfer_map(GroupDatum({4}), EndoTriple({2}, {2}), PlaceContext::split_place());
    EXPECT_EQ(m.apply(X()), X());
    EXPECT_EQ(m.apply(T(1, 1)), T(1, 1));
    EXPECT_EQ(m.apply(T(1, 2)), T(1, 2));
    EXPECT_EQ(m.apply(T(1, 3)), -T(2, 1));
    EXPECT_EQ(m.apply(T(1, 4)), -T(2, 2));

    auto m2 = twisted_transfer_map(GroupDatum({2}), EndoTriple({2}, {0}), PlaceContext::split_place());
    for (auto& [var, img] : m2.sub) EXPECT_EQ(img.sign, 1);
}

TEST(TwistedTransfer, KottwitzImageFactorsByBlock) {
    // b~(phi_alpha) = q^{d alpha(n-alpha)} X^{-a} sum_k e_k(block 1) (-1)^{alpha-k} e_{alpha-k}(block 2)
    for (int n = 1; n <= 5; ++n)
        for (int m = 0; m <= n; m += 2)
            for (int d : {1, 2}) {
                GroupDatum g({n});
                EndoTriple h({n - m}, {m});
                auto ctx = PlaceContext::split_place(d);
                auto bt = twisted_transfer_map(g, h, ctx);
                std::vector<LaurentPoly> b1, b2;
                for (int j = 1; j <= n - m; ++j) b1.push_back(T(1, j, -d));
                for (int j = 1; j <= m; ++j) b2.push_back(T(2, j, -d));
                for (int alpha = 0; alpha <= n; ++alpha) {
                    LaurentPoly sum;
                    for (int k = 0; k <= alpha; ++k) {
                        if (k > n - m || alpha - k > m) continue;
                        LaurentPoly term = oracle::elementary(b1, k) * oracle::elementary(b2, alpha - k);
                        sum += (alpha - k) % 2 ? -term : term;
                    }
                    auto expect = LaurentPoly::q_power(d * alpha * (n - alpha)) * X(-d) * sum;
                    EXPECT_EQ(bt.apply(kottwitz_function(g, {alpha}, ctx)), expect) << "n=" << n << " m=" << m << " alpha=" << alpha;
                }
            }
}

TEST(Morphisms, ImagesAreInvariant) {
    std::mt19937_64 rng(41);
    int checked = 0, unsupported = 0;
    std::vector<std::vector<int>> datums{{1}, {2}, {3}, {4}, {1, 1}, {2, 1}, {2, 2}};
    for (auto& n : datums) {
        GroupDatum g(n);
        for (auto& ctx : places()) {
            auto bc = base_change_map(g, ctx);
            for (auto& f : sample_invariants(bc.source, rng, 4)) {
                EXPECT_TRUE(bc.target.contains(bc.apply(f)));
                ++checked;
            }
            for (auto& h : triples(g)) {
                for (int twisted = 0; twisted < 2; ++twisted) {
                    RingMap m;
                    try {
                        m = twisted ? twisted_transfer_map(g, h, ctx) : transfer_map(g, h, ctx);
                    } catch (const UnsupportedError&) {
                        ++unsupported;
                        continue;
                    }
                    for (auto& f : sample_invariants(m.source, rng, 4)) {
                        EXPECT_TRUE(m.target.contains(m.apply(f))) << "h=" << h.str() << " twisted=" << twisted;
                        ++checked;
                    }
                }
            }
        }
    }
    EXPECT_GT(checked, 500);
    EXPECT_GT(unsupported, 0);
}

TEST(Morphisms, AreHomomorphisms) {
    std::mt19937_64 rng(43);
    GroupDatum g({4});
    for (auto& ctx : places()) {
        std::vector<RingMap> maps{base_change_map(g, ctx)};
        for (auto& h : triples(g)) {
            try {
                maps.push_back(twisted_transfer_map(g, h, ctx));
                maps.push_back(transfer_map(g, h, ctx));
            } catch (const UnsupportedError&) {
            }
        }
        for (auto& m : maps)
            for (int t = 0; t < 10; ++t) {
                auto f = oracle::random_layout_poly(rng, m.source.layout, 3);
                auto k = oracle::random_layout_poly(rng, m.source.layout, 3);
                EXPECT_EQ(m.apply(f * k), m.apply(f) * m.apply(k));
            }
    }
}

TEST(ConstantTerm, Examples) {
    auto ctx = PlaceContext::split_place();
    GroupDatum g({3});
    EXPECT_EQ(levi_constant_term(LaurentPoly(4), g, LeviDatum{1}, ctx), LaurentPoly(4));
    auto f = kottwitz_function(g, {1}, ctx);
    EXPECT_EQ(levi_constant_term(f, g, LeviDatum{1}, ctx), f);
    EXPECT_TRUE(levi_ring_G(g, LeviDatum{1}, ctx).contains(f));
    EXPECT_THROW(levi_constant_term(T(1, 1), g, LeviDatum{1}, ctx), PreconditionError);
}

TEST(LeviKottwitz, Examples) {
    GroupDatum g3({3}), g4({4});
    EXPECT_EQ(levi_kottwitz_function(g3, LeviDatum{1}, 3, 1), X(-1) * T(1, 1, -1) * T(1, 2, -1) * T(1, 3, -1));
    EXPECT_EQ(levi_kottwitz_function(g3, LeviDatum{1}, 2, 1), X(-1) * T(1, 1, -1) * T(1, 2, -1));
    EXPECT_EQ(levi_kottwitz_function(g4, LeviDatum{1}, 2, 1),
              LaurentPoly::q_power(1) * X(-1) * T(1, 1, -1) * (T(1, 2, -1) + T(1, 3, -1)));
    EXPECT_THROW(levi_kottwitz_function(g4, LeviDatum{1}, 1, 1), PreconditionError);
    // Omega_M-invariant
    for (int n = 2; n <= 5; ++n)
        for (int s = 0; 2 * s <= n; ++s)
            for (int alpha = n - n / 2; alpha <= n; ++alpha) {
                GroupDatum g({n});
                auto M = levi_ring_G(g, LeviDatum{s}, PlaceContext::split_place());
                EXPECT_TRUE(M.contains(levi_kottwitz_function(g, LeviDatum{s}, alpha, 1)));
            }
}

TEST(LeviKottwitz, ExponentIdentity) {
    for (int n = 1; n <= 20; ++n)
        for (int r = 1; 2 * r <= n; ++r)
            for (int alpha = n / 2; alpha <= n; ++alpha)
                EXPECT_EQ(alpha * (n - alpha) - (alpha - r) * (n - alpha - r), r * (n - r));
}

TEST(LeviTwistedTransfer, Examples) {
    GroupDatum g({3});
    EndoTriple h({1}, {2});
    auto ctx = PlaceContext::split_place();
    EXPECT_THROW(LeviSignData::make(g, h, LeviDatum{1}, {}), PreconditionError);
    auto sd = LeviSignData::make(g, h, LeviDatum{1}, {1});
    auto m = levi_twisted_transfer(g, h, LeviDatum{1}, sd, ctx);
    EXPECT_EQ(m.apply(T(1, 1)), -T(2, 1));
    EXPECT_EQ(m.apply(T(1, 3)), -T(2, 2));
    EXPECT_EQ(m.apply(T(1, 2)), T(1, 1));
    auto mp = levi_twisted_transfer(g, h, LeviDatum{1}, sd, ctx, true);
    EXPECT_EQ(mp.apply(T(1, 1)), T(2, 1));
    EXPECT_EQ(mp.apply(T(1, 3)), T(2, 2));

    GroupDatum g4({4});
    EndoTriple triv({4}, {0});
    auto sdt = LeviSignData::make(g4, triv, LeviDatum{1}, {});
    for (auto& [var, img] : levi_twisted_transfer(g4, triv, LeviDatum{1}, sdt, ctx).sub) EXPECT_EQ(img.sign, 1);

    // the (2,2) case with A empty: linear pair in block 1, Hermitian Z_2, Z_3 split across blocks
    EndoTriple h22({2}, {2});
    auto sd0 = LeviSignData::make(g4, h22, LeviDatum{1}, {});
    EXPECT_EQ(sd0.m1, 0);
    EXPECT_EQ(sd0.m2, 2);
    auto m0 = levi_twisted_transfer(g4, h22, LeviDatum{1}, sd0, ctx);
    EXPECT_EQ(m0.apply(T(1, 1)), T(1, 1));
    EXPECT_EQ(m0.apply(T(1, 4)), T(1, 2));
    EXPECT_EQ(m0.apply(T(1, 2)), -T(2, 1));
    EXPECT_EQ(m0.apply(T(1, 3)), -T(2, 2));
}

TEST(TransferSquare, Examples) {
    auto ctx = PlaceContext::split_place();
    struct Case {
        std::vector<int> n;
        EndoTriple h;
        int s;
        std::vector<int> A;
    };
    std::vector<Case> cases{{{2}, EndoTriple({2}, {0}), 0, {}},
                            {{2}, EndoTriple({2}, {0}), 1, {}},
                            {{3}, EndoTriple({1}, {2}), 1, {1}},
                            {{4}, EndoTriple({2}, {2}), 1, {}},
                            {{4}, EndoTriple({2}, {2}), 1, {1}},
                            {{4}, EndoTriple({0}, {4}), 2, {1, 2}}};
    for (auto& c : cases) {
        GroupDatum g(c.n);
        auto gens = default_square_generators(g, ctx);
        for (auto& x : orbit_sum_generators(g, ctx)) gens.push_back(x);
        auto rep = verify_transfer_square(g, c.h, LeviDatum{c.s}, c.A, ctx, gens);
        EXPECT_TRUE(rep.ok()) << c.h.str() << " s=" << c.s << (rep.ok() ? "" : " " + rep.failures[0].reason);
        EXPECT_EQ(rep.cases, static_cast<int>(gens.size()));
    }
}

TEST(TransferSquare, SignedVariantDiffers) {
    // b_{s'_M} drops the sign on the linear pair, so the square fails for A nonempty
    GroupDatum g({3});
    EndoTriple h({1}, {2});
    auto ctx = PlaceContext::split_place();
    auto sd = LeviSignData::make(g, h, LeviDatum{1}, {1});
    auto prime = levi_twisted_transfer(g, h, LeviDatum{1}, sd, ctx, true);
    auto bt = twisted_transfer_map(g, h, ctx);
    auto f = kottwitz_function(g, {2}, ctx);
    EXPECT_NE(prime.apply(f), bt.apply(f));
}

TEST(TransferSquare, InertTargetSplitOverL) {
    // p inert, d = 2: G splits over L but the endoscopic side lives over Q_p
    auto ctx = PlaceContext::inert_place(2);
    for (int n = 2; n <= 4; ++n) {
        GroupDatum g({n});
        for (auto& h : triples(g))
            for (int s = 0; 2 * s <= n; ++s)
                for (int k = 0; k <= s; ++k)
                    for (auto& A : k_subsets(1, s, k)) {
                        try {
                            LeviSignData::make(g, h, LeviDatum{s}, A);
                        } catch (const PreconditionError&) {
                            continue;
                        }
                        auto rep = verify_transfer_square(g, h, LeviDatum{s}, A, ctx, default_square_generators(g, ctx));
                        EXPECT_TRUE(rep.ok()) << n << " " << h.str() << " s=" << s;
                    }
    }
}

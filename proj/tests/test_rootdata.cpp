#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "stabkit/stabkit.hpp"

using namespace stabkit;

namespace {

// every composition of every n in [1, max]
std::vector<std::vector<int>> compositions_up_to(int max) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        if (!cur.empty()) out.push_back(cur);
        for (int k = 1; k <= left; ++k) {
            cur.push_back(k);
            rec(left - k);
            cur.pop_back();
        }
    };
    rec(max);
    return out;
}

std::vector<SignedGroupDatum> signatures_up_to(int max) {
    std::vector<SignedGroupDatum> out;
    for (auto& comp : compositions_up_to(max)) {
        std::vector<std::pair<int, int>> sig;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == comp.size()) {
                out.emplace_back(sig);
                return;
            }
            for (int p = 0; p <= comp[i]; ++p) {
                sig.emplace_back(p, comp[i] - p);
                rec(i + 1);
                sig.pop_back();
            }
        };
        rec(0);
    }
    return out;
}

}  // namespace

TEST(RelativeWeylGroup, Orders) {
    EXPECT_EQ(relative_weyl_group(GroupDatum({2}), PlaceContext::split_place()).size(), 2u);
    EXPECT_EQ(relative_weyl_group(GroupDatum({2}), PlaceContext::inert_place()).size(), 2u);
    EXPECT_EQ(relative_weyl_group(GroupDatum({3, 2}), PlaceContext::split_place()).size(), 12u);
    EXPECT_EQ(relative_weyl_group(GroupDatum({5}), PlaceContext::inert_place()).size(), 8u);
    // inert but split over L (d even): the split group
    EXPECT_EQ(relative_weyl_group(GroupDatum({3}), PlaceContext::inert_place(2)).size(), 6u);
}

TEST(RelativeWeylGroup, GroupTableSmall) {
    for (auto& comp : compositions_up_to(4))
        for (bool split : {true, false}) {
            GroupDatum g(comp);
            auto G = relative_weyl_group(g, split ? PlaceContext::split_place() : PlaceContext::inert_place());
            std::set<WeylElement> S(G.begin(), G.end());
            ASSERT_EQ(S.size(), G.size());
            std::int64_t expect = 1;
            for (int n : comp) expect *= split ? factorial(n) : pow2(n / 2) * factorial(n / 2);
            EXPECT_EQ(static_cast<std::int64_t>(G.size()), expect);
            auto id = WeylElement::identity(g.layout(split));
            EXPECT_TRUE(S.count(id));
            for (auto& a : G) {
                EXPECT_TRUE(S.count(a.inverse()));
                EXPECT_EQ(a * a.inverse(), id);
                for (auto& b : G) EXPECT_TRUE(S.count(a * b));
            }
        }
}

TEST(Endoscopy, Examples) {
    auto c3 = enumerate_endoscopic(GroupDatum({3}));
    ASSERT_EQ(c3.size(), 2u);
    EXPECT_EQ(c3[0].rep.str(), "1-2");
    EXPECT_EQ(c3[1].rep.str(), "3-0");
    EXPECT_EQ(c3[0].outer_order, 1);
    EXPECT_EQ(c3[1].outer_order, 1);

    auto c4 = enumerate_endoscopic(GroupDatum({4}));
    ASSERT_EQ(c4.size(), 2u);
    EXPECT_EQ(c4[0].rep.str(), "0-4");  // the class of (4,0)
    EXPECT_EQ(c4[1].rep.str(), "2-2");
    EXPECT_EQ(c4[0].outer_order, 1);
    EXPECT_EQ(c4[1].outer_order, 2);
    EXPECT_EQ(canonical_triple(GroupDatum({4}), EndoTriple({4}, {0})).str(), "0-4");

    // (1,0),(0,1) has odd n^- total, so (1,1) has a single class
    auto c11 = enumerate_endoscopic(GroupDatum({1, 1}));
    ASSERT_EQ(c11.size(), 1u);
    EXPECT_THROW(EndoTriple({1, 0}, {0, 1}).validate_for(GroupDatum({1, 1})), PreconditionError);
}

TEST(Endoscopy, MatchesBruteForce) {
    for (auto& comp : compositions_up_to(8)) {
        GroupDatum g(comp);
        auto got = enumerate_endoscopic(g);
        auto want = oracle::brute_endoscopy(comp);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            EXPECT_EQ(got[k].rep.pairs(), want[k].min_rep);
            EXPECT_EQ(got[k].outer_order, want[k].stabilizer);
        }
    }
}

TEST(Tamagawa, Examples) {
    EXPECT_EQ(tamagawa(GroupDatum({3})), 1);
    EXPECT_EQ(tamagawa(GroupDatum({2, 4})), 4);
    EXPECT_EQ(tamagawa(GroupDatum({2, 3})), 2);
    EXPECT_EQ(tamagawa(GroupDatum({4})), 2);
}

TEST(KInvariant, Examples) {
    EXPECT_EQ(k_invariant(SignedGroupDatum({{3, 0}})), 4);
    EXPECT_EQ(k_invariant(SignedGroupDatum({{1, 1}, {1, 1}})), 2);
    EXPECT_EQ(k_invariant(SignedGroupDatum({{1, 0}})), 1);
}

TEST(KInvariant, ProductWithTamagawa) {
    for (auto& sg : signatures_up_to(8))
        EXPECT_EQ(k_invariant(sg) * tamagawa(sg.datum()), pow2(sg.datum().total() - 1));
}

TEST(PacketSize, Examples) {
    EXPECT_EQ(packet_size(2, 1), 3);
    EXPECT_EQ(packet_size(1, 1), 1);
    EXPECT_EQ(packet_size(3, 2), 10);
    for (int p = 0; p <= 8; ++p)
        for (int q = 0; p + q <= 8; ++q)
            EXPECT_EQ(packet_size(p, q), p == q ? oracle::pascal(p + q, p) / 2 : oracle::pascal(p + q, p));
}

TEST(Iota, Examples) {
    EXPECT_EQ(iota(GroupDatum({3}), EndoTriple({3}, {0})), Rational(1));
    EXPECT_EQ(iota(GroupDatum({4}), EndoTriple({2}, {2})), Rational(1, 4));
    EXPECT_EQ(iota(GroupDatum({3}), EndoTriple({1}, {2})), Rational(1, 2));
    EXPECT_THROW(iota(GroupDatum({3}), EndoTriple({2}, {1})), PreconditionError);
}

TEST(Iota, InvariantUnderClassSwaps) {
    for (auto& comp : compositions_up_to(6)) {
        GroupDatum g(comp);
        for (auto& c : enumerate_endoscopic(g))
            for (unsigned mask = 0; mask < (1u << g.r()); ++mask) {
                auto s = c.rep;
                for (int i = 0; i < g.r(); ++i)
                    if (mask >> i & 1u) std::swap(s.nplus[static_cast<std::size_t>(i)], s.nminus[static_cast<std::size_t>(i)]);
                int sm = 0;
                for (int m : s.nminus) sm += m;
                if (sm % 2) continue;
                EXPECT_EQ(iota(g, s), iota(g, c.rep));
            }
    }
}

TEST(IotaGH, Examples) {
    EXPECT_EQ(iota_GH(SignedGroupDatum({{1, 0}}), EndoTriple({1}, {0})), Rational(1));
    EXPECT_EQ(iota_GH(SignedGroupDatum({{2, 0}}), EndoTriple({2}, {0})), Rational(1));
    // GU(1,1), a = 1: iota = 1, |pi_0| = 2, signed sums +2 and -2
    EXPECT_EQ(iota_GH(SignedGroupDatum({{1, 1}}), EndoTriple({2}, {0})), Rational(1));
    EXPECT_EQ(iota_GH(SignedGroupDatum({{1, 1}}), EndoTriple({0}, {2})), Rational(-1));
    EXPECT_THROW(iota_GH(SignedGroupDatum({{1, 1}}), EndoTriple({1}, {1})), PreconditionError);
    EXPECT_EQ(pi0_count(SignedGroupDatum({{1, 1}, {2, 2}, {2, 1}})), 4);
}

TEST(PlaceContext, Degrees) {
    EXPECT_EQ(PlaceContext::make(true, 3).a(), 3);
    EXPECT_EQ(PlaceContext::make(false, 4).a(), 2);
    EXPECT_FALSE(PlaceContext::make(false, 3).splits_over_L());
    EXPECT_THROW(PlaceContext::make(false, 3).a(), PreconditionError);
    EXPECT_THROW(PlaceContext::make(false, 4, 4), PreconditionError);
    EXPECT_THROW(PlaceContext::make(true, 0), PreconditionError);
}

#include "limflag/flags.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace limflag;

namespace {

GroupFamily fam(const std::string& s) { return parseFamily(s); }

Subspace span(std::initializer_list<Vec> g, Tail t = {}) { return Subspace{std::vector<Vec>(g), t}; }

FinitaryMap cayleySquaredSU(Index k) {
    DenseMat m(2, 2);
    m(0, 1) = 1;
    m(1, 0) = -1;
    return FinitaryMap::fromBlock({-k, k}, m);
}

const std::vector<std::string> kFormFamilies = {"su:inf", "su:3", "so:inf", "so:2", "sp:inf", "sp:2",
                                               "so_star", "sp_r", "so2"};

}  // namespace

TEST(StandardFlag, Examples) {
    auto su3 = fam("su:3");
    Flag f = standardFlag(su3, {0});
    ASSERT_EQ(f.members.size(), 1u);
    EXPECT_TRUE(sameSubspace(su3, f.members[0], span({Vec::basis(1), Vec::basis(2), Vec::basis(3)})));

    auto spr = fam("sp_r");
    Flag g = standardFlag(spr, {1});
    EXPECT_TRUE(sameSubspace(spr, g.members[0], span({Vec::basis(-1)}, Tail{Tail::Kind::Pos, 1})));
    EXPECT_EQ(dimension(spr, g.members[0]), Count::inf());

    // closed orbit representative in SU(∞,q): q-dimensional null subspace
    auto su2 = fam("su:2");
    Flag c = standardFlag(su2, {OrbitKey{0, 2}});
    auto t = truncate(c, 3);
    Model m = makeModel(su2, 3);
    EXPECT_EQ(rank(t[0]), 2u);
    EXPECT_TRUE((t[0].adjoint() * m.H * t[0]).isZero());
}

TEST(StandardFlag, IsotropicWhereRequired) {
    for (auto name : {"so_star", "sp_r", "so2"}) {
        auto f = fam(name);
        for (int k = 0; k <= 2; ++k) EXPECT_TRUE(isIsotropicFlag(standardFlag(f, {k}))) << name << " " << k;
    }
    EXPECT_TRUE(isIsotropicFlag(standardFlag(fam("sp_r"), {OrbitKey{1, 2}})));
    EXPECT_TRUE(isIsotropicFlag(standardFlag(fam("so_star"), {OrbitKey{1, 1}})));
    EXPECT_THROW(standardFlag(fam("su:2"), {OrbitKey{2, 1}}), std::invalid_argument);
    EXPECT_THROW(standardFlag(fam("so2"), {3}), std::invalid_argument);
}

TEST(StandardFlag, NestedMembersAreSorted) {
    auto sl = fam("sl_c");
    Flag f = standardFlag(sl, {3, 1, 2});
    ASSERT_EQ(f.members.size(), 3u);
    EXPECT_EQ(f.members[0].gens.size(), 1u);
    EXPECT_EQ(f.members[2].gens.size(), 3u);
    EXPECT_THROW(standardFlag(fam("su:inf"), {0, 1}), std::invalid_argument);
}

TEST(Compatibility, Examples) {
    for (auto name : kFormFamilies) {
        if (std::string(name) == "so2") continue;
        EXPECT_TRUE(isCompatibleWithE(standardFlag(fam(name), {1}))) << name;
    }
    // the quadric's base point e_1 + i e_2 is not a coordinate line
    EXPECT_FALSE(isCompatibleWithE(standardFlag(fam("so2"), {0})));
    auto su = fam("su:inf");
    Flag bad{su, {span({Vec::basis(-1) + Vec::basis(1)})}};
    EXPECT_FALSE(isCompatibleWithE(bad));
    // a transvection moves it off the coordinate subspaces
    FinitaryMap tr;
    tr.setDelta(1, -1, Scalar(1));
    Flag moved = applyMap(tr, Flag{su, {span({Vec::basis(-1)})}});
    EXPECT_FALSE(isCompatibleWithE(moved));
    EXPECT_TRUE(isCommensurable(moved, Flag{su, {span({Vec::basis(-1)})}}));
}

TEST(Commensurability, Examples) {
    auto su = fam("su:inf");
    Flag a{su, {span({Vec::basis(1)})}}, b{su, {span({Vec::basis(1), Vec::basis(2)})}};
    EXPECT_TRUE(isCommensurable(a, a));
    EXPECT_FALSE(isCommensurable(a, b));
    Flag p{su, {span({}, Tail{Tail::Kind::Pos, 0})}}, q{su, {span({}, Tail{Tail::Kind::Pos, 1})}};
    EXPECT_FALSE(isCommensurable(p, q));
    Flag r{su, {span({Vec::basis(-3)}, Tail{Tail::Kind::Pos, 1})}};
    EXPECT_TRUE(isCommensurable(p, r));
}

TEST(ApplyMap, CayleySquareGivesF1) {
    auto su = fam("su:inf");
    Flag f0 = standardFlag(su, {0});
    Flag f1 = applyMap(cayleySquaredSU(1), f0);
    EXPECT_TRUE(sameSubspace(su, f1.members[0], span({Vec::basis(-1)}, Tail{Tail::Kind::Pos, 1})));
    EXPECT_TRUE(sameSubspace(su, f1.members[0], standardFlag(su, {1}).members[0]));
    auto spr = fam("sp_r");
    EXPECT_TRUE(sameSubspace(spr, applyMap(cayleySquaredSU(1), standardFlag(spr, {0})).members[0],
                             standardFlag(spr, {1}).members[0]));
}

TEST(ApplyMap, IdentityAndInverse) {
    for (auto name : kFormFamilies) {
        auto f = fam(name);
        Flag fl = standardFlag(f, {1});
        Flag same = applyMap(FinitaryMap::identity(), fl);
        EXPECT_TRUE(sameSubspace(f, same.members[0], fl.members[0]));
        FinitaryMap g = randomGroupElement(f, 2, 7);
        auto idx = truncIndices(f, levelCovering(f, g.supportBound()));
        FinitaryMap gi = FinitaryMap::fromBlock(idx, inverse(g.block(idx)));
        Flag back = applyMap(g, applyMap(gi, fl));
        EXPECT_TRUE(sameSubspace(f, back.members[0], fl.members[0])) << name;
    }
}

TEST(Truncate, Examples) {
    auto su2 = fam("su:2");
    auto t = truncate(standardFlag(su2, {0}), 3);
    Model m = makeModel(su2, 3);
    EXPECT_EQ(t[0].cols(), 2u);
    EXPECT_EQ(rank(DenseMat::hcat(t[0], DenseMat::hcat(m.column(Vec::basis(1)), m.column(Vec::basis(2))))), 2u);

    auto su = fam("su:inf");
    Flag tailOnly{su, {span({}, Tail{Tail::Kind::All, 0})}};
    EXPECT_EQ(truncate(tailOnly, 4)[0].cols(), 8u);
    Flag wide{su, {span({Vec::basis(5)})}};
    EXPECT_THROW(truncate(wide, 3), std::invalid_argument);
}

TEST(Isotropy, Examples) {
    auto sp = fam("sp:inf");
    EXPECT_TRUE(isIsotropicSubspace(sp, span({}, Tail{Tail::Kind::Odd, 0})));
    auto spr = fam("sp_r");
    EXPECT_FALSE(isIsotropicSubspace(spr, span({Vec::basis(-1), Vec::basis(1)})));
    EXPECT_TRUE(isIsotropicSubspace(spr, span({})));
    EXPECT_THROW(isIsotropicFlag(Flag{fam("su:inf"), {span({Vec::basis(1)})}}), std::invalid_argument);
}

TEST(Orientation, Examples) {
    auto so2 = fam("so2");
    Flag none{so2, {span({Vec::basis(1) + Vec::basis(2, Scalar::i())})}};
    EXPECT_EQ(orientationClass(none, 4), Orientation::NotApplicable);
    // At n = 2, V_2 = C^4 with b = I; L a null line, M ⊃ L maximal isotropic.
    Vec l = Vec::basis(-2) + Vec::basis(-1, Scalar::i());
    Vec mPlus = Vec::basis(1) + Vec::basis(2, Scalar::i());
    Vec mMinus = Vec::basis(1) + Vec::basis(2, -Scalar::i());
    EXPECT_EQ(orientationClass(Flag{so2, {span({l})}}, 2), Orientation::Undecided);
    Orientation o1 = orientationClass(Flag{so2, {span({l}), span({l, mPlus})}}, 2);
    Orientation o2 = orientationClass(Flag{so2, {span({l}), span({l, mMinus})}}, 2);
    EXPECT_EQ(o1, Orientation::Positive);
    EXPECT_EQ(o2, Orientation::Negative);
    EXPECT_THROW(orientationClass(none.family == so2 ? Flag{fam("su:2"), {}} : none), std::invalid_argument);
}

TEST(Properties, RandomGroupElements) {
    testutil::Rng rng(11);
    for (auto name : kFormFamilies) {
        auto f = fam(name);
        Flag fl = standardFlag(f, {1});
        for (int trial = 0; trial < 6; ++trial) {
            FinitaryMap g = randomGroupElement(f, 2, rng());
            Flag gf = applyMap(g, fl);
            EXPECT_TRUE(isCommensurable(fl, gf)) << name;
            if (hasB(f) && isIsotropicFlag(fl)) {
                EXPECT_TRUE(isIsotropicFlag(gf)) << name;
            }
            int n = levelCovering(f, std::max(g.supportBound(), fl.bound()) + 1);
            Model m = makeModel(f, n);
            DenseMat lhs = truncate(gf, n)[0];
            DenseMat rhs = g.block(m.idx) * truncate(fl, n)[0];
            EXPECT_EQ(rank(lhs), rank(rhs));
            EXPECT_EQ(rank(DenseMat::hcat(lhs, rhs)), rank(lhs)) << name;
        }
    }
}

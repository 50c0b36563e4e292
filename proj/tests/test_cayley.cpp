#include "limflag/cayley.hpp"

#include <gtest/gtest.h>

using namespace limflag;

namespace {
GroupFamily fam(const std::string& s) { return parseFamily(s); }
Vec e(Index i, Scalar c = 1) { return Vec::basis(i, std::move(c)); }
const Scalar I = Scalar::i();

bool sameLine(const GroupFamily& f, const Flag& fl, Vec v) {
    return fl.members.size() == 1 && sameSubspace(f, fl.members[0], Subspace{{std::move(v)}, {}});
}
}  // namespace

TEST(Cayley, Examples) {
    auto su = fam("su:inf");
    Vec img = cayley(su, 1).apply(e(-1));
    EXPECT_EQ(img, Scalar::invSqrt2() * (e(-1) - e(1)));
    EXPECT_THROW(cayley(fam("su:2"), 3), std::invalid_argument);
    EXPECT_THROW(cayley(fam("sl_r"), 1), std::invalid_argument);
    EXPECT_THROW(cayley(su, 0), std::invalid_argument);

    // SO(∞,2) second transform, basis (e_-2, e_-1, e_1, e_2)
    DenseMat c2 = cayley(fam("so2"), 2).block({-2, -1, 1, 2});
    const int expected[4][4] = {{1, 0, 1, 0}, {0, 1, 0, -1}, {-1, 0, 1, 0}, {0, 1, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(c2(i, j), Scalar(expected[i][j]) * Scalar::invSqrt2());
}

TEST(Cayley, LiesInComplexGroup) {
    for (auto name : {"su:3", "su:inf", "so:2", "so:inf", "sp:2", "sp:inf", "so_star", "sp_r", "so2"}) {
        auto f = fam(name);
        int top = cayleyRange(f) ? cayleyRange(f) : 3;
        for (int k = 1; k <= top; ++k) EXPECT_TRUE(isGroupElement(f, cayley(f, k), Level::Complex)) << name << " " << k;
    }
}

TEST(Cayley, ConstantsAreNotInRealForm) {
    EXPECT_FALSE(isGroupElement(fam("su:2"), cayley(fam("su:2"), 1), Level::Real));
}

TEST(Cayley, DisjointTransformsCommute) {
    for (auto name : {"su:inf", "sp:inf", "so_star", "sp_r"}) {
        auto f = fam(name);
        auto a = cayley(f, 1), b = cayley(f, 2);
        EXPECT_TRUE(compose(compose(a, b), inverseAtTruncation(compose(b, a))).isIdentity()) << name;
    }
}

TEST(Cayley, FourthPowerIsMinusOne) {
    auto f = fam("su:inf");
    auto c = cayley(f, 2);
    auto c4 = compose(compose(c, c), compose(c, c));
    EXPECT_EQ(c4.block({-2, 2}), -DenseMat::identity(2));
    auto c2 = compose(c, c);
    EXPECT_EQ(c2.apply(e(2)), e(-2));
    EXPECT_EQ(c2.apply(e(-2)), Scalar(-1) * e(2));
}

TEST(ApplyWord, Examples) {
    auto spr = fam("sp_r");
    Flag f0 = baseFlag(spr);
    EXPECT_TRUE(sameSubspace(spr, applyWord({spr, {}, {}}, f0).members[0], f0.members[0]));
    EXPECT_TRUE(sameSubspace(spr, applyWord({spr, {}, {1}}, f0).members[0], standardFlag(spr, {1}).members[0]));
    for (int q = 1; q <= 3; ++q) {
        auto su = makeFamily(FamilyTag::SU, q);
        CayleyWord w{su, {}, {}};
        for (int k = 1; k <= q; ++k) w.singles.push_back(k);
        EXPECT_EQ(signatureSequence(applyWord(w, baseFlag(su))), (std::vector<SignatureTriple>{{0, 0, q}}));
    }
    EXPECT_THROW(applyWord({spr, {1}, {1}}, f0), std::invalid_argument);
}

TEST(ApplyWord, SUReachability) {
    for (int q = 1; q <= 3; ++q) {
        auto su = makeFamily(FamilyTag::SU, q);
        for (int c = 0; c <= q; ++c)
            for (int a = 0; a + c <= q; ++a) {
                Flag r = representative(su, a, c);
                EXPECT_EQ(signatureSequence(r), (std::vector<SignatureTriple>{{a, q - a - c, c}}));
                EXPECT_EQ(signatureSequence(r), signatureSequence(standardFlag(su, {OrbitKey{a, c}})));
            }
    }
    EXPECT_THROW(representative(makeFamily(FamilyTag::SU, 2), 2, 1), std::invalid_argument);
}

TEST(ApplyWord, OtherFamiliesMatchStandardRepresentatives) {
    for (auto name : {"so:2", "so:inf", "sp:2", "sp:inf", "so_star", "sp_r"}) {
        auto f = fam(name);
        for (int c = 0; c <= 1; ++c)
            for (int a = 0; a + c <= 2; ++a) {
                Flag r = representative(f, a, c);
                Flag table = standardFlag(f, {OrbitKey{a, c}});
                EXPECT_EQ(signatureSequence(r), signatureSequence(table)) << name << " a=" << a << " c=" << c;
                // the finite-q table picks F_- = span{e_{c+1}..}, a different point of the same orbit
                if (f.tag != FamilyTag::SO || f.qInfinite()) {
                    EXPECT_TRUE(sameSubspace(f, r.members[0], table.members[0])) << name << " a=" << a << " c=" << c;
                }
                if (f.tag == FamilyTag::SP) {
                    Model m = makeModel(f, defaultLevel(r) + 1);
                    DenseMat F = truncateSubspace(m, r.members[0]);
                    EXPECT_EQ(rank(DenseMat::hcat(F, applyTau(m, F))), rank(F)) << name;
                } else if (f.tag != FamilyTag::SO) {
                    EXPECT_TRUE(isIsotropicFlag(r)) << name;
                }
            }
    }
}

TEST(ApplyWord, SOStarDoublesReachEvenIndices) {
    auto f = fam("so_star");
    Flag r = applyWord({f, {}, {1}}, baseFlag(f));
    EXPECT_TRUE(sameSubspace(f, r.members[0], standardFlag(f, {2}).members[0]));
    EXPECT_FALSE(sameSubspace(f, r.members[0], standardFlag(f, {1}).members[0]));
}

TEST(SO2Table, RepresentativesMatchTable) {
    auto f = fam("so2");
    EXPECT_TRUE(sameLine(f, so2Representative("00"), e(1) + e(2, I)));
    EXPECT_TRUE(sameLine(f, so2Representative("01"), e(-2) + e(-1, I)));
    EXPECT_TRUE(sameLine(f, so2Representative("02"), e(1) + e(2, -I)));
    EXPECT_TRUE(sameLine(f, so2Representative("11"), e(-2) + e(-1, I) + e(1) + e(2, I)));
    EXPECT_TRUE(sameLine(f, so2Representative("12"), e(-2) + e(-1, -I) + e(1, -1) + e(2, I)));
    EXPECT_TRUE(sameLine(f, so2Representative("22"), e(-2) + e(2, I)));
    EXPECT_THROW(so2Word("21"), std::invalid_argument);
}

TEST(SO2Table, Classification) {
    int openNeg = 0, openPos = 0, inter = 0, closed = 0;
    std::set<Orientation> negOrient;
    for (auto& key : so2Keys()) {
        Flag r = so2Representative(key);
        EXPECT_TRUE(isIsotropicFlag(r)) << key;
        OrbitLabel L = classifyOrbit(r, 3);
        if (L.open && L.perMember[0].neg == Count(1)) { ++openNeg; negOrient.insert(L.orientation); }
        else if (L.open && L.perMember[0].pos == Count(1)) ++openPos;
        else if (L.closed) ++closed;
        else ++inter;
        for (int n = 3; n <= 4; ++n) EXPECT_EQ(opennessOracle(r, n), L.open) << key << " n=" << n;
    }
    EXPECT_EQ(openNeg, 2);
    EXPECT_EQ(negOrient.size(), 2u);
    EXPECT_EQ(openPos, 1);
    EXPECT_EQ(inter, 2);
    EXPECT_EQ(closed, 1);
    EXPECT_TRUE(classifyOrbit(so2Representative("22"), 3).closed);
}

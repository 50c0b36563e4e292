#include "limflag/domains.hpp"

#include <gtest/gtest.h>

using namespace limflag;

namespace {
GroupFamily fam(const std::string& s) { return parseFamily(s); }
Vec e(Index i, Scalar c = 1) { return Vec::basis(i, std::move(c)); }

DenseMat mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
    DenseMat m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (auto& row : rows) {
        std::size_t c = 0;
        for (auto& x : row) m(r, c++) = x;
        ++r;
    }
    return m;
}

const std::vector<std::string> kChartFamilies = {"su:2", "su:inf", "sp_r", "so_star", "so:2", "so:inf", "sp:1", "sp:2", "so2"};

std::pair<std::size_t, std::size_t> shapeFor(const GroupFamily& f, Rng& rng) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    if (f.tag == FamilyTag::SP) { r = 2 * (1 + rng() % 2); c = 2 * (1 + rng() % 2); }
    if (f.tag == FamilyTag::SpR || f.tag == FamilyTag::SOstar) c = r;
    if (f.tag == FamilyTag::SOstar && r == 1) c = r = 2;
    if (f.q) c = std::min<std::size_t>(c, f.tag == FamilyTag::SP ? 2 * f.q : f.q);
    return {r, c};
}
}  // namespace

TEST(Membership, Examples) {
    for (auto name : kChartFamilies) {
        auto f = fam(name);
        std::size_t r = f.tag == FamilyTag::SP ? 2 : 2, c = f.tag == FamilyTag::SO2 ? 1 : 2;
        EXPECT_TRUE(membership(DomainPoint{f, DenseMat(r, c)})) << name;
    }
    EXPECT_FALSE(membership(DomainPoint{fam("su:inf"), mat({{1}})}));
    EXPECT_TRUE(membership(DomainPoint{fam("su:inf"), mat({{Rat(1, 2)}})}));
    EXPECT_TRUE(membership(DomainPoint{fam("so2"), mat({{Rat(1, 2)}, {0}})}));
    EXPECT_FALSE(membership(DomainPoint{fam("so2"), mat({{Rat(1, 2)}, {0}}), Side::Minus, 1}));
    EXPECT_THROW(membership(DomainPoint{fam("sp_r"), mat({{0, 1}, {0, 0}})}), std::invalid_argument);
    EXPECT_THROW(membership(DomainPoint{fam("so_star"), mat({{1, 0}, {0, 0}})}), std::invalid_argument);
    EXPECT_THROW(membership(DomainPoint{fam("so:2"), mat({{Scalar::i()}})}), std::invalid_argument);
    EXPECT_THROW(membership(DomainPoint{fam("su:1"), DenseMat(1, 2)}), std::invalid_argument);
}

TEST(Subspace, Examples) {
    auto su2 = fam("su:2");
    Subspace base = subspaceFromPoint(DomainPoint{su2, DenseMat(1, 1)});
    EXPECT_TRUE(sameSubspace(su2, base, standardFlag(su2, {0}).members[0]));
    auto su = fam("su:inf");
    Scalar z(Rat(1, 3));
    Subspace s = subspaceFromPoint(DomainPoint{su, mat({{z}})});
    EXPECT_TRUE(sameSubspace(su, s, Subspace{{e(1) + e(-1, z)}, Tail{Tail::Kind::Pos, 1}}));
    EXPECT_EQ(subspaceSignature(su, s), (SignatureTriple{0, Count::inf(), 0}));
    auto so2 = fam("so2");
    EXPECT_TRUE(sameSubspace(so2, subspaceFromPoint(DomainPoint{so2, DenseMat(2, 1)}),
                             Subspace{{e(1) + e(2, Scalar::i())}, {}}));
}

TEST(LinearFractional, Examples) {
    auto su1 = fam("su:1");
    DenseMat g = mat({{Rat(5, 4), Rat(3, 4)}, {Rat(3, 4), Rat(5, 4)}});  // basis (e_-1, e_1)
    FinitaryMap G = FinitaryMap::fromBlock({-1, 1}, g);
    ASSERT_TRUE(isGroupElement(su1, G));
    DomainPoint p{su1, mat({{0}})};
    EXPECT_EQ(lfAction(G, p).Z, mat({{Rat(3, 5)}}));
    EXPECT_EQ(lfAction(FinitaryMap::identity(), p).Z, p.Z);
    FinitaryMap flip = FinitaryMap::fromBlock({-1, 1}, mat({{0, 1}, {1, 0}}));
    EXPECT_THROW(lfAction(flip, p), MathError);
}

TEST(SO2, XiExamples) {
    DenseMat zero(3, 1);
    EXPECT_EQ(xiEmbedSO2(zero), e(1) + e(2, Scalar::i()));
    auto so2 = fam("so2");
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        DomainPoint p = randomDomainPoint(so2, 3, 1, rng);
        Vec v = xiEmbedSO2(p.Z);
        EXPECT_TRUE(evalB(so2, v, v).isZero());
        bool neg = signReal(evalH(so2, v, v).re) < 0;
        DomainPoint p0 = p, p1 = p;
        p0.component = 0;
        p1.component = 1;
        EXPECT_EQ(neg, membership(p0) || membership(p1));
    }
}

TEST(SO2, ActionExamples) {
    auto so2 = fam("so2");
    DenseMat Z = mat({{Rat(1, 3)}, {Rat(-1, 2)}});
    EXPECT_EQ(so2Action(FinitaryMap::identity(), Z), Z);
    // rotation of (e_1, e_2) by (3/5, 4/5) fixes z_0 up to phase
    FinitaryMap rot = FinitaryMap::fromBlock({1, 2}, mat({{Rat(3, 5), Rat(-4, 5)}, {Rat(4, 5), Rat(3, 5)}}));
    ASSERT_TRUE(isGroupElement(so2, rot));
    EXPECT_TRUE(so2Action(rot, DenseMat(2, 1)).isZero());
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        FinitaryMap g = randomGroupElement(so2, 2, rng());
        DenseMat W = randomDomainPoint(so2, 2, 1, rng).Z;
        DenseMat gW;
        try { gW = so2Action(g, W); } catch (const MathError&) { continue; }
        Model m = makeModel(so2, 3);
        DenseMat a = m.column(xiEmbedSO2(gW)), b = m.column(g.apply(xiEmbedSO2(W)));
        EXPECT_EQ(rank(DenseMat::hcat(a, b)), 1u);
    }
}

TEST(Properties, ChartMatchesSubspace) {
    Rng rng(23);
    for (auto name : kChartFamilies) {
        auto f = fam(name);
        int inside = 0;
        for (int t = 0; t < 40; ++t) {
            auto [r, c] = shapeFor(f, rng);
            Side side = (t % 2 && f.tag != FamilyTag::SO2) ? Side::Plus : Side::Minus;
            if (side == Side::Plus) std::swap(r, c);
            if (side == Side::Plus && f.q) r = std::min<std::size_t>(r, f.tag == FamilyTag::SP ? 2 * f.q : f.q);
            DomainPoint p = randomDomainPoint(f, r, c, rng, side);
            bool in = membership(p);
            inside += in;
            EXPECT_EQ(in, subspaceIsInDomain(p)) << name << " t=" << t;
        }
        EXPECT_GT(inside, 0) << name;
    }
}

TEST(Properties, ActionPreservesMembershipAndConstraint) {
    Rng rng(29);
    for (auto name : {"su:2", "sp_r", "so_star", "so:2", "sp:1"}) {
        auto f = fam(name);
        for (int t = 0; t < 8; ++t) {
            auto [r, c] = shapeFor(f, rng);
            DomainPoint p = randomDomainPoint(f, r, c, rng);
            FinitaryMap g = randomGroupElement(f, 2, rng());
            DomainPoint q;
            try { q = lfAction(g, p); } catch (const MathError&) { continue; }
            EXPECT_NO_THROW(checkConstraint(q)) << name;
            EXPECT_EQ(membership(q), membership(p)) << name;
        }
    }
}

TEST(Properties, SubsetChartsUseTheSamePredicate) {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        DomainPoint p = randomDomainPoint(fam("sp_r"), 2, 2, rng);
        DomainPoint q = p;
        q.family = fam("su:inf");
        EXPECT_EQ(membership(p), membership(q));
    }
}

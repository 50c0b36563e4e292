#include "limflag/cayley.hpp"
#include "limflag/json_io.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace limflag;
using limflag::json::Json;

namespace {
Vec e(Index i, Scalar c = 1) { return Vec::basis(i, std::move(c)); }

// Emit, print, parse, read, emit again: the two documents must be identical.
template <class T, class Read>
void expectRoundTrip(const T& value, Read read) {
    Json first = json::toJson(value);
    Json again = json::toJson(read(Json::parse(first.dump())));
    EXPECT_EQ(first.dump(), again.dump());
}
}  // namespace

TEST(JsonIO, ScalarStrings) {
    testutil::Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Scalar x = testutil::randScalar(rng);
        EXPECT_EQ(json::scalarFromJson(json::toJson(x)), x);
    }
    EXPECT_EQ(json::scalarFromJson(Json(-3)), Scalar(-3));
    EXPECT_EQ(json::scalarFromJson(Json("1/2*s2i")).im, RealQuad(0, Rat(1, 2)));
    EXPECT_THROW(json::scalarFromJson(Json(0.5)), json::FormatError);
    EXPECT_THROW(json::scalarFromJson(Json("1/2*x")), json::FormatError);
}

TEST(JsonIO, CountsAndSignatures) {
    SignatureTriple s{Count::inf(), 2, 0};
    EXPECT_EQ(json::toJson(s).dump(), R"(["inf",2,0])");
    EXPECT_EQ(json::signatureFromJson(json::toJson(s)), s);
    EXPECT_THROW(json::countFromJson(Json("many")), json::FormatError);
}

TEST(JsonIO, FlagsRoundTrip) {
    for (auto name : {"su:2", "su:inf", "sp:1", "so_star", "sp_r", "so2", "sl_r", "sl_h"}) {
        auto f = parseFamily(name);
        std::vector<StandardSpec> spec = {1};
        if (f.tag == FamilyTag::SO2) spec = {2};
        Flag fl = applyMap(randomGroupElement(f, 2, 7, Level::Complex), standardFlag(f, spec));
        expectRoundTrip(fl, [](const Json& j) { return json::flagFromJson(j); });
        Flag back = json::flagFromJson(json::toJson(fl));
        EXPECT_EQ(back.family, f);
        EXPECT_TRUE(sameSubspace(f, back.members[0], fl.members[0])) << name;
    }
}

TEST(JsonIO, FlagFamilyResolution) {
    auto su = parseFamily("su:2");
    Json bare = Json::parse(R"({"members":[{"gens":[[[1,"1"]]]}]})");
    EXPECT_EQ(json::flagFromJson(bare, su).family, su);
    EXPECT_THROW(json::flagFromJson(bare), json::FormatError);
    Json tagged = Json::parse(R"({"schema":"limflag/1","family":"su:3","members":[]})");
    EXPECT_THROW(json::flagFromJson(tagged, su), json::FormatError);
    Json future = Json::parse(R"({"schema":"limflag/2","members":[]})");
    EXPECT_THROW(json::flagFromJson(future, su), json::FormatError);
    Json tail = Json::parse(R"({"members":[{"tail":{"kind":"pos","param":1}}]})");
    EXPECT_EQ(json::flagFromJson(tail, su).members[0].tail, (Tail{Tail::Kind::Pos, 1}));
    EXPECT_THROW(json::flagFromJson(Json::parse(R"({"members":[{"tail":{"kind":"odd2"}}]})"), su),
                 json::FormatError);
}

TEST(JsonIO, MapsRoundTrip) {
    for (auto name : {"su:2", "sp:1", "so2", "sl_c"}) {
        auto f = parseFamily(name);
        FinitaryMap g = randomGroupElement(f, 2, 11, Level::Complex);
        expectRoundTrip(g, [](const Json& j) { return json::mapFromJson(j); });
        EXPECT_EQ(json::mapFromJson(json::toJson(g)), g) << name;
    }
    Json block = Json::parse(R"({"indices":[-1,1],"block":[["0","1"],["1","0"]]})");
    FinitaryMap swap = json::mapFromJson(block);
    EXPECT_EQ(swap.apply(e(-1)), e(1));
    EXPECT_THROW(json::mapFromJson(Json::parse(R"({"indices":[0],"block":[["1"]]})")), json::FormatError);
    EXPECT_THROW(json::mapFromJson(Json::parse(R"({"delta":[[1,2]]})")), json::FormatError);
}

TEST(JsonIO, PointsAndLabelsRoundTrip) {
    Rng rng(5);
    for (auto name : {"su:2", "sp_r", "so_star", "so2"}) {
        auto f = parseFamily(name);
        DomainPoint p = randomDomainPoint(f, 2, 2, rng);
        expectRoundTrip(p, [&](const Json& j) { return json::pointFromJson(j); });
        DomainPoint back = json::pointFromJson(json::toJson(p));
        EXPECT_EQ(back.Z, p.Z);
        EXPECT_EQ(back.component, p.component);
    }
    for (auto& key : so2Keys()) {
        OrbitLabel L = classifyOrbit(so2Representative(key), 3);
        expectRoundTrip(L, [](const Json& j) { return json::labelFromJson(j); });
        EXPECT_EQ(json::labelFromJson(json::toJson(L)), L) << key;
    }
    auto slr = parseFamily("sl_r");
    OrbitLabel S = classifyOrbit(applyMap(randomGroupElement(slr, 4, 3, Level::Complex), standardFlag(slr, {2})), 4);
    EXPECT_EQ(json::labelFromJson(json::toJson(S)), S);
    OrbitLabel T = classifyOrbit(standardFlag(parseFamily("su:inf"), {1}));
    EXPECT_EQ(json::toJson(T)["signatures"][0].dump(), R"([1,"inf",0])");
    EXPECT_EQ(json::labelFromJson(json::toJson(T)), T);
}

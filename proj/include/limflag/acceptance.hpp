#pragma once
// Runners for the nine acceptance criteria; shared by `limflag verify` and the acceptance test binary.
#include "limflag/cayley.hpp"
#include "limflag/cycles.hpp"
#include "limflag/domains.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace limflag::acceptance {

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Options {
    std::uint64_t seed = 1;
};

namespace detail {

inline Vec e(Index i, Scalar c = 1) { return Vec::basis(i, std::move(c)); }

inline Subspace coords(std::initializer_list<Index> idx) {
    Subspace s;
    for (Index i : idx) s.gens.push_back(e(i));
    return s;
}

inline Flag lineFlag(const GroupFamily& f, Vec v) { return Flag{f, {Subspace{{std::move(v)}, {}}}}; }

template <class F>
Result timed(int id, std::string name, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    Result r{id, std::move(name), false, "", 0};
    try {
        body(r);
    } catch (const std::exception& ex) {
        r.pass = false;
        r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string str(const SignatureTriple& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

// Flags whose orbits range over open and non-open ones: standard representatives with and without null part.
inline std::vector<Flag> criterion3Bases(const GroupFamily& f, int n) {
    std::vector<Flag> out;
    const Scalar I = Scalar::i();
    switch (f.tag) {
        case FamilyTag::SU:
        case FamilyTag::SO: {
            int q = f.qInfinite() ? 2 : f.q;
            for (int c = 0; c <= q; ++c)
                for (int a = 0; a + c <= q; ++a) out.push_back(standardFlag(f, {OrbitKey{a, c}}));
            out.push_back(lineFlag(f, e(-1)));
            out.push_back(lineFlag(f, e(-1) + e(1)));
            out.push_back(Flag{f, {coords({-1}), coords({-1, 1})}});
            break;
        }
        case FamilyTag::SP: {
            int q = f.qInfinite() ? 2 : f.q;
            for (int c = 0; c <= q; ++c)
                for (int a = 0; a + c <= q; ++a) out.push_back(standardFlag(f, {OrbitKey{a, c}}));
            out.push_back(Flag{f, {coords({-2, -1})}});
            out.push_back(Flag{f, {Subspace{{e(-2) + e(1), e(-1, -1) + e(2)}, {}}}});
            break;
        }
        case FamilyTag::SpR:
        case FamilyTag::SOstar: {
            int step = f.tag == FamilyTag::SOstar ? 2 : 1;
            for (int c = 0; c <= 2; c += step)
                for (int a = 0; a + c <= 2; ++a) out.push_back(standardFlag(f, {OrbitKey{a, c}}));
            out.push_back(lineFlag(f, e(-1)));
            out.push_back(lineFlag(f, e(1)));
            out.push_back(lineFlag(f, e(-1) + e(2)));
            break;
        }
        case FamilyTag::SO2:
            for (auto& k : so2Keys()) out.push_back(so2Representative(k));
            out.push_back(lineFlag(f, e(-2) + e(1, I)));
            break;
        case FamilyTag::SL_R:
        case FamilyTag::SL_H:
        case FamilyTag::SL_C:
            out.push_back(standardFlag(f, {1}));
            out.push_back(standardFlag(f, {1, 2}));
            out.push_back(standardFlag(f, {n / 2}));
            out.push_back(fullFlagShape(f, n).base);
            break;
    }
    return out;
}

struct CycleCaseSpec {
    const char* family;
    CycleCase cycleCase;
    std::vector<Subspace> members;
};

// plusOnly / minusOnly / product base flags of each family in the cycle-space criterion.
inline std::vector<CycleCaseSpec> criterion8Cases() {
    const Scalar I = Scalar::i();
    const Vec z0 = e(1) + e(2, I), plusLine = e(-2) + e(-1, I);
    std::vector<CycleCaseSpec> out;
    for (const char* f : {"su:2", "so:1", "so:2"}) {
        out.push_back({f, CycleCase::PlusOnly, {coords({-1})}});
        out.push_back({f, CycleCase::MinusOnly, {coords({1})}});
        out.push_back({f, CycleCase::Product, {coords({-1}), coords({-1, 1})}});
    }
    for (const char* f : {"sp:1", "sp:2"}) {
        out.push_back({f, CycleCase::PlusOnly, {coords({-2, -1})}});
        out.push_back({f, CycleCase::MinusOnly, {coords({1, 2})}});
        out.push_back({f, CycleCase::Product, {coords({-2, -1}), coords({-2, -1, 1, 2})}});
    }
    for (const char* f : {"sp_r", "so_star"}) {
        out.push_back({f, CycleCase::PlusOnly, {coords({-1})}});
        out.push_back({f, CycleCase::MinusOnly, {coords({1})}});
        out.push_back({f, CycleCase::Product, {coords({-1}), coords({-1, 2})}});
    }
    out.push_back({"so2", CycleCase::PlusOnly, {Subspace{{plusLine}, {}}}});
    out.push_back({"so2", CycleCase::MinusOnly, {Subspace{{z0}, {}}}});
    out.push_back({"so2", CycleCase::Product, {Subspace{{plusLine}, {}}, Subspace{{plusLine, z0}, {}}}});
    return out;
}

}  // namespace detail

inline Result criterion1(const Options& opt) {
    return detail::timed(1, "SU open-orbit census on the q-plane Grassmannian", [&](Result& r) {
        int bad = 0, runs = 0;
        for (int q = 1; q <= 3; ++q) {
            auto f = makeFamily(FamilyTag::SU, q);
            std::set<SignatureTriple> want;
            for (int k = 0; k <= q; ++k) want.insert({k, q - k, 0});
            for (int p = q; p <= q + 3; ++p) {
                ++runs;
                auto labels = openOrbitCensus(f, grassmannShape(f, p), p, 40, opt.seed + 100 * q + p);
                std::set<SignatureTriple> got;
                for (auto& L : labels) got.insert(L.perMember.at(0));
                if (labels.size() != std::size_t(q + 1) || got != want) {
                    ++bad;
                    r.detail += "q=" + std::to_string(q) + " p=" + std::to_string(p) + ": " +
                                std::to_string(labels.size()) + " labels; ";
                }
            }
        }
        r.pass = bad == 0;
        r.detail += std::to_string(runs - bad) + "/" + std::to_string(runs) + " censuses exact";
    });
}

inline Result criterion2(const Options&) {
    return detail::timed(2, "SO(inf,2) orbit table", [&](Result& r) {
        int openNeg = 0, openPos = 0, inter = 0, closed = 0, oracleBad = 0;
        std::set<Orientation> negOrient;
        for (auto& key : so2Keys()) {
            Flag rep = so2Representative(key);
            OrbitLabel L = classifyOrbit(rep, 3);
            if (L.open && L.perMember[0].neg == Count(1)) {
                ++openNeg;
                negOrient.insert(L.orientation);
            } else if (L.open && L.perMember[0].pos == Count(1)) {
                ++openPos;
            } else if (L.closed) {
                ++closed;
            } else if (isIsotropicFlag(rep)) {
                ++inter;
            }
            for (int n = 3; n <= 5; ++n) oracleBad += opennessOracle(rep, n) != L.open;
        }
        r.pass = openNeg == 2 && negOrient.size() == 2 && openPos == 1 && inter == 2 && closed == 1 && oracleBad == 0;
        r.detail = "open negative " + std::to_string(openNeg) + " (components " + std::to_string(negOrient.size()) +
                   "), open positive " + std::to_string(openPos) + ", intermediate " + std::to_string(inter) +
                   ", closed " + std::to_string(closed) + ", oracle disagreements " + std::to_string(oracleBad);
    });
}

inline Result criterion3(const Options& opt, int perFamily = 200) {
    return detail::timed(3, "nondegeneracy agrees with the openness oracle", [&](Result& r) {
        struct Target {
            std::string family;
            std::vector<int> levels;  // empty: derived from the flag
        };
        std::vector<Target> targets;
        for (auto name : {"su:1", "su:2", "su:inf", "so:1", "so:2", "so:inf", "sp:1", "sp:2", "sp:inf", "sp_r",
                          "so_star", "so2"})
            targets.push_back({name, {}});
        targets.push_back({"sl_r", {3, 5}});
        targets.push_back({"sl_h", {3, 5}});
        Rng rng(opt.seed + 3);
        long total = 0, disagree = 0;
        for (auto& t : targets) {
            auto f = parseFamily(t.family);
            int open = 0, count = 0;
            for (int s = 0; s < perFamily; ++s) {
                int n = t.levels.empty() ? 2 : t.levels[s % t.levels.size()];
                auto bases = detail::criterion3Bases(f, n);
                const Flag& base = bases[rng() % bases.size()];
                Level lv = rng() % 2 ? Level::Complex : Level::Real;
                Flag fl = applyMap(randomGroupElement(f, n, rng(), lv), base);
                int level = t.levels.empty() ? std::max(defaultLevel(fl), 2) + 1 : n;
                bool a = isNondegenerate(fl, level), b = opennessOracle(fl, level);
                open += b;
                ++count;
                if (a != b) {
                    ++disagree;
                    r.detail += t.family + " sample " + std::to_string(s) + " disagrees; ";
                }
            }
            total += count;
            r.detail += t.family + " " + std::to_string(open) + "/" + std::to_string(count) + " open; ";
            if (open == 0 || open == count) r.detail += "(" + t.family + " sampled one kind only) ";
        }
        r.pass = disagree == 0;
        r.detail += std::to_string(total) + " flags, " + std::to_string(disagree) + " disagreements";
    });
}

inline Result criterion4(const Options&) {
    return detail::timed(4, "Cayley words reach every SU orbit label", [&](Result& r) {
        int bad = 0, checked = 0;
        for (int q = 1; q <= 3; ++q) {
            auto f = makeFamily(FamilyTag::SU, q);
            for (int c = 0; c <= q; ++c)
                for (int a = 0; a + c <= q; ++a) {
                    ++checked;
                    SignatureTriple want{a, q - a - c, c};
                    SignatureTriple got = signatureSequence(representative(f, a, c)).at(0);
                    if (got != want) {
                        ++bad;
                        r.detail += "q=" + std::to_string(q) + " (a,c)=(" + std::to_string(a) + "," +
                                    std::to_string(c) + ") gave " + detail::str(got) + "; ";
                    }
                }
            CayleyWord full{f, {}, {}};
            for (int k = 1; k <= q; ++k) full.singles.push_back(k);
            OrbitLabel L = classifyOrbit(applyWord(full, baseFlag(f)));
            ++checked;
            if (!(L.perMember.at(0) == SignatureTriple{0, 0, q}) || !L.closed) {
                ++bad;
                r.detail += "full word on q=" + std::to_string(q) + " not closed; ";
            }
        }
        r.pass = bad == 0;
        r.detail += std::to_string(checked - bad) + "/" + std::to_string(checked) + " words exact";
    });
}

inline Result criterion5(const Options& opt, int samples = 100) {
    return detail::timed(5, "quaternionic structure of Sp(p,r)", [&](Result& r) {
        int bad = 0, elements = 0;
        for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
            auto f = makeFamily(FamilyTag::SP, q);
            // J is conjugate-linear, so both identities are decided on a basis
            for (Index i : truncIndices(f, p)) {
                Vec v = Vec::basis(i);
                bool sq = quaternionJ(f, quaternionJ(f, v)) == Scalar(-1) * v;
                bool anti = (Scalar::i() * quaternionJ(f, v) + quaternionJ(f, Scalar::i() * v)).isZero();
                if (!sq || !anti) ++bad;
            }
            for (int s = 0; s < samples; ++s) {
                auto g = randomGroupElement(f, p, opt.seed * 7919 + 31 * s + 1000 * p + q, Level::Real);
                ++elements;
                // preserves h and b at the truncation, and commutes with J
                if (!isGroupElement(f, g, Level::Real) || !isQuaternionLinear(f, g)) ++bad;
            }
        }
        r.pass = bad == 0;
        r.detail = std::to_string(elements) + " elements, " + std::to_string(bad) + " failures";
    });
}

inline Result criterion6(const Options& opt, int perFamily = 100) {
    return detail::timed(6, "domain membership agrees with the realized subspace", [&](Result& r) {
        Rng rng(opt.seed + 6);
        int bad = 0, total = 0;
        for (auto name : {"su:2", "su:inf", "sp_r", "so_star", "so:2", "so:inf", "sp:1", "sp:2", "so2"}) {
            auto f = parseFamily(name);
            int inside = 0;
            for (int t = 0; t < perFamily; ++t) {
                std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
                if (f.tag == FamilyTag::SP) {
                    rows = 2 * (1 + rng() % 2);
                    cols = 2 * (1 + rng() % 2);
                }
                if (f.tag == FamilyTag::SpR || f.tag == FamilyTag::SOstar) cols = rows;
                if (f.tag == FamilyTag::SOstar && rows == 1) cols = rows = 2;
                if (f.q) cols = std::min<std::size_t>(cols, f.tag == FamilyTag::SP ? 2 * f.q : f.q);
                Side side = (t % 2 && f.tag != FamilyTag::SO2) ? Side::Plus : Side::Minus;
                if (side == Side::Plus) {
                    std::swap(rows, cols);
                    if (f.q) rows = std::min<std::size_t>(rows, f.tag == FamilyTag::SP ? 2 * f.q : f.q);
                }
                DomainPoint pt = randomDomainPoint(f, rows, cols, rng, side, 1, 3);
                bool in = membership(pt);
                inside += in;
                ++total;
                if (in != subspaceIsInDomain(pt)) {
                    ++bad;
                    r.detail += std::string(name) + " sample " + std::to_string(t) + " disagrees; ";
                }
            }
            r.detail += std::string(name) + " " + std::to_string(inside) + "/" + std::to_string(perFamily) + " inside; ";
        }
        r.pass = bad == 0;
        r.detail += std::to_string(total) + " points, " + std::to_string(bad) + " disagreements";
    });
}

inline Result criterion7(const Options& opt, int samples = 100) {
    return detail::timed(7, "SO(inf,2) quadric identities", [&](Result& r) {
        auto f = makeFamily(FamilyTag::SO2);
        Rng rng(opt.seed + 7);
        int bad = 0, actions = 0, chartExits = 0;
        for (int t = 0; t < samples; ++t) {
            std::size_t rows = 1 + rng() % 3;
            DomainPoint p = randomDomainPoint(f, rows, 1, rng);
            Vec v = xiEmbedSO2(p.Z);
            if (!evalB(f, v, v).isZero()) ++bad;
            bool neg = signReal(evalH(f, v, v).re) < 0;
            DomainPoint p0 = p, p1 = p;
            p0.component = 0;
            p1.component = 1;
            if (neg != (membership(p0) || membership(p1))) ++bad;

            FinitaryMap g = randomGroupElement(f, static_cast<int>(rows) + 1, rng());
            DenseMat gZ;
            try {
                gZ = so2Action(g, p.Z);
            } catch (const MathError&) {
                ++chartExits;
                continue;
            }
            ++actions;
            int level = std::max<int>(rows, static_cast<int>(gZ.rows())) + 2;
            Model m = makeModel(f, level);
            DenseMat a = m.column(xiEmbedSO2(gZ)), b = m.column(g.apply(v));
            if (rank(DenseMat::hcat(a, b)) != 1) ++bad;
        }
        r.pass = bad == 0 && actions > 0;
        r.detail = std::to_string(samples) + " points, " + std::to_string(actions) + " action checks (" +
                   std::to_string(chartExits) + " chart exits skipped), " + std::to_string(bad) + " failures";
    });
}

struct CycleTally {
    std::string family;
    CycleCase cycleCase;
    int samples = 0, members = 0, disagreements = 0;
    int oracleOnly = 0;  // criterion rejects g, the oracle finds no degenerate point
    std::vector<std::uint64_t> disagreeingSeeds;
};

inline Result criterion8(const Options& opt, int perCase = 200, std::vector<CycleTally>* tallies = nullptr) {
    return detail::timed(8, "cycle-space criterion agrees with the sampled oracle", [&](Result& r) {
        int disagree = 0;
        for (auto& c : detail::criterion8Cases()) {
            auto f = parseFamily(c.family);
            auto cs = makeCycleSpec(f, c.members);
            CycleTally t{c.family, cs.cycleCase, 0, 0, 0, 0, {}};
            for (int s = 0; s < perCase; ++s) {
                std::uint64_t seed = opt.seed * 1000003 + 10007 * static_cast<std::uint64_t>(cs.cycleCase) + s;
                auto g = randomGroupElement(f, 2, seed, Level::Complex, 1, 0);
                bool a = cycleMembership(cs, g);
                bool b = cycleMembershipSampled(cs, g, 3, 50, seed);
                ++t.samples;
                t.members += a;
                if (a != b) {
                    ++t.disagreements;
                    t.oracleOnly += b;
                    t.disagreeingSeeds.push_back(seed);
                }
            }
            disagree += t.disagreements;
            r.detail += t.family + "/" + cycleCaseName(t.cycleCase) + " " + std::to_string(t.members) + "/" +
                        std::to_string(t.samples) + " members, " + std::to_string(t.disagreements) + " disagree";
            if (t.disagreements)
                r.detail += " (" + std::to_string(t.oracleOnly) + " accepted by the oracle only)";
            r.detail += "; ";
            if (tallies) tallies->push_back(std::move(t));
        }
        r.pass = disagree == 0;
        r.detail += std::to_string(disagree) + " disagreements in total";
    });
}

inline Result criterion9(const Options& opt) {
    return detail::timed(9, "SL(R) has one open and one closed orbit", [&](Result& r) {
        auto f = makeFamily(FamilyTag::SL_R);
        int bad = 0;
        Rng rng(opt.seed + 9);
        for (int n : {3, 5}) {
            auto labels = openOrbitCensus(f, fullFlagShape(f, n), n, 20, opt.seed + n);
            r.detail += "n=" + std::to_string(n) + ": " + std::to_string(labels.size()) + " open labels; ";
            bad += labels.size() != 1;
            // real flags (every member τ-stable), moved by real elements, classify closed
            std::vector<Flag> real = {fullFlagShape(f, n).base, standardFlag(f, {1}), standardFlag(f, {2}),
                                      standardFlag(f, {1, n - 1})};
            for (auto& fl : real)
                for (int s = 0; s < 5; ++s) {
                    Flag moved = applyMap(randomGroupElement(f, n, rng(), Level::Real), fl);
                    OrbitLabel L = classifyOrbit(moved, n);
                    if (!L.closed || L.open) {
                        ++bad;
                        r.detail += "real flag not closed at n=" + std::to_string(n) + "; ";
                    }
                }
        }
        r.pass = bad == 0;
    });
}

inline std::vector<std::function<Result(const Options&)>> allCriteria() {
    return {[](const Options& o) { return criterion1(o); }, [](const Options& o) { return criterion2(o); },
            [](const Options& o) { return criterion3(o); }, [](const Options& o) { return criterion4(o); },
            [](const Options& o) { return criterion5(o); }, [](const Options& o) { return criterion6(o); },
            [](const Options& o) { return criterion7(o); }, [](const Options& o) { return criterion8(o); },
            [](const Options& o) { return criterion9(o); }};
}

}  // namespace limflag::acceptance

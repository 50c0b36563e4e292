#pragma once
// Subspaces and flags weakly compatible with E.

#include "limflag/forms.hpp"

#include <string>
#include <variant>

namespace limflag {

// Cofinite-style index sets from a fixed catalog, always intersected with E.
struct Tail {
    enum class Kind { None, Neg, Pos, All, Odd, Even };
    Kind kind = Kind::None;
    int param = 0;  // Neg: i < -param; Pos: i > param; All/Odd/Even: |i| > param

    bool contains(Index i) const {
        switch (kind) {
            case Kind::None: return false;
            case Kind::Neg: return i < -param;
            case Kind::Pos: return i > param;
            case Kind::All: return std::abs(i) > param;
            case Kind::Odd: return std::abs(i) > param && (i % 2 != 0);
            case Kind::Even: return std::abs(i) > param && (i % 2 == 0);
        }
        return false;
    }
    friend bool operator==(const Tail&, const Tail&) = default;
};

inline std::string tailKindName(Tail::Kind k) {
    switch (k) {
        case Tail::Kind::None: return "none";
        case Tail::Kind::Neg: return "neg";
        case Tail::Kind::Pos: return "pos";
        case Tail::Kind::All: return "all";
        case Tail::Kind::Odd: return "odd";
        case Tail::Kind::Even: return "even";
    }
    return "none";
}

inline Tail::Kind parseTailKind(const std::string& s) {
    for (auto k : {Tail::Kind::None, Tail::Kind::Neg, Tail::Kind::Pos, Tail::Kind::All, Tail::Kind::Odd, Tail::Kind::Even})
        if (tailKindName(k) == s) return k;
    throw std::invalid_argument("unknown tail kind: " + s);
}

struct Subspace {
    std::vector<Vec> gens;
    Tail tail;

    int genBound() const {
        int b = 0;
        for (auto& g : gens) b = std::max(b, g.supportBound());
        return b;
    }
    // Past this bound the subspace is the coordinate span of its tail.
    int bound() const { return std::max(genBound(), tail.kind == Tail::Kind::None ? 0 : tail.param); }
};

struct Flag {
    GroupFamily family;
    std::vector<Subspace> members;  // proper members, increasing

    int bound() const {
        int b = 0;
        for (auto& m : members) b = std::max(b, m.bound());
        return b;
    }
};

// Tail indices of E inside [-limit, limit].
inline std::vector<Index> tailIndices(const GroupFamily& f, const Tail& t, int limit) {
    std::vector<Index> out;
    for (Index i = -limit; i <= limit; ++i)
        if (i != 0 && inIndexSet(f, i) && t.contains(i)) out.push_back(i);
    return out;
}

// Is the tail infinite inside E?
inline bool tailInfinite(const GroupFamily& f, const Tail& t) {
    if (t.kind == Tail::Kind::None) return false;
    int far = std::max(t.param, positiveBound(f)) + 8;
    for (Index i : {-far, -far - 1, far, far + 1})
        if (inIndexSet(f, i) && t.contains(i)) return true;
    return false;
}

// Levels large enough to see all structure, plus a margin where tails are periodic.
inline int safeLevel(const GroupFamily& f, int bound) { return levelCovering(f, bound + 4); }

// Columns spanning S ∩ V_n. Throws when a generator does not fit in V_n.
inline DenseMat truncateSubspace(const Model& m, const Subspace& s) {
    for (auto& g : s.gens)
        for (auto& [i, _] : g.entries())
            if (!m.pos.count(i)) throw std::invalid_argument("truncation level too small for generator support");
    DenseMat out(m.dim(), 0);
    for (auto& g : s.gens) out = DenseMat::hcat(out, m.column(g));
    for (Index i : m.idx)
        if (s.tail.contains(i)) out = DenseMat::hcat(out, m.column(Vec::basis(i)));
    return out;
}

inline std::vector<DenseMat> truncate(const Flag& f, int n) {
    Model m = makeModel(f.family, n);
    std::vector<DenseMat> out;
    for (auto& s : f.members) out.push_back(truncateSubspace(m, s));
    return out;
}

inline void validateSubspace(const GroupFamily& f, const Subspace& s) {
    for (auto& g : s.gens) {
        if (g.isZero()) throw std::invalid_argument("zero generator");
        for (auto& [i, _] : g.entries()) {
            if (!inIndexSet(f, i)) throw std::invalid_argument("generator index " + std::to_string(i) + " not in E");
            if (s.tail.contains(i)) throw std::invalid_argument("generator support meets the tail");
        }
    }
    Model m = makeModel(f, levelCovering(f, std::max(s.genBound(), 1)));
    DenseMat g(m.dim(), 0);
    for (auto& v : s.gens) g = DenseMat::hcat(g, m.column(v));
    if (rank(g) != s.gens.size()) throw std::invalid_argument("generators are linearly dependent");
}

inline Count dimension(const GroupFamily& f, const Subspace& s) {
    if (tailInfinite(f, s.tail)) return Count::inf();
    Model m = makeModel(f, safeLevel(f, s.bound()));
    return static_cast<std::int64_t>(rank(truncateSubspace(m, s)));
}

inline bool subspaceContains(const GroupFamily& f, const Subspace& big, const Subspace& small) {
    int n = safeLevel(f, std::max(big.bound(), small.bound()));
    Model m = makeModel(f, n);
    DenseMat a = truncateSubspace(m, big), b = truncateSubspace(m, small);
    return rank(DenseMat::hcat(a, b)) == rank(a);
}

inline bool sameSubspace(const GroupFamily& f, const Subspace& a, const Subspace& b) {
    return subspaceContains(f, a, b) && subspaceContains(f, b, a);
}

inline void validateFlag(const Flag& fl) {
    for (auto& s : fl.members) validateSubspace(fl.family, s);
    for (std::size_t k = 1; k < fl.members.size(); ++k) {
        if (!subspaceContains(fl.family, fl.members[k], fl.members[k - 1]) ||
            sameSubspace(fl.family, fl.members[k], fl.members[k - 1]))
            throw std::invalid_argument("flag members are not strictly increasing");
    }
}

// ---- group action ----

inline Subspace applyMap(const GroupFamily& f, const FinitaryMap& g, const Subspace& s) {
    Subspace out;
    out.tail = s.tail;
    int sb = g.supportBound();
    std::vector<Vec> src = s.gens;
    if (sb > 0 && s.tail.kind != Tail::Kind::None) {
        // make the tail start past the support of g
        for (Index i : tailIndices(f, s.tail, sb)) src.push_back(Vec::basis(i));
        switch (s.tail.kind) {
            case Tail::Kind::Neg:
            case Tail::Kind::Pos:
            case Tail::Kind::All:
            case Tail::Kind::Odd:
            case Tail::Kind::Even: out.tail.param = std::max(s.tail.param, sb); break;
            default: break;
        }
        if (!tailInfinite(f, out.tail) && tailIndices(f, out.tail, std::max(out.tail.param, positiveBound(f)) + 8).empty())
            out.tail = Tail{};
    }
    for (auto& v : src) out.gens.push_back(g.apply(v));
    return out;
}

inline Flag applyMap(const FinitaryMap& g, const Flag& fl) {
    Flag out{fl.family, {}};
    for (auto& s : fl.members) out.members.push_back(applyMap(fl.family, g, s));
    return out;
}

// ---- compatibility and commensurability ----

inline bool isCompatibleWithE(const Flag& fl) {
    int n = safeLevel(fl.family, fl.bound());
    Model m = makeModel(fl.family, n);
    for (auto& s : fl.members) {
        DenseMat a = truncateSubspace(m, s);
        std::size_t r = rank(a), coord = 0;
        for (Index i : m.idx) {
            DenseMat e = m.column(Vec::basis(i));
            if (rank(DenseMat::hcat(a, e)) == r) ++coord;
        }
        if (coord != r) return false;
    }
    return true;
}

inline bool isCommensurable(const Flag& a, const Flag& b) {
    if (a.members.size() != b.members.size() || !(a.family == b.family)) return false;
    int bound = std::max(a.bound(), b.bound());
    int n = levelCovering(a.family, bound);
    Model m = makeModel(a.family, n);
    Model far = makeModel(a.family, safeLevel(a.family, bound));
    for (std::size_t k = 0; k < a.members.size(); ++k) {
        const auto& s = a.members[k];
        const auto& t = b.members[k];
        // tails must agree past the bound
        for (Index i : far.idx)
            if (std::abs(i) > bound && s.tail.contains(i) != t.tail.contains(i)) return false;
        if (rank(truncateSubspace(m, s)) != rank(truncateSubspace(m, t))) return false;
    }
    return true;
}

// ---- isotropy ----

inline bool isIsotropicSubspace(const GroupFamily& f, const Subspace& s) {
    if (!hasB(f)) throw std::invalid_argument("family " + familyName(f) + " carries no bilinear form");
    Model m = makeModel(f, safeLevel(f, s.bound()));
    DenseMat a = truncateSubspace(m, s);
    return (a.transpose() * m.B * a).isZero();
}

inline bool isIsotropicFlag(const Flag& fl) {
    for (auto& s : fl.members)
        if (!isIsotropicSubspace(fl.family, s)) return false;
    return true;
}

// ---- orientation for orthogonal families ----

enum class Orientation { NotApplicable, Undecided, Positive, Negative };

inline std::string orientationName(Orientation o) {
    switch (o) {
        case Orientation::NotApplicable: return "notApplicable";
        case Orientation::Undecided: return "undecided";
        case Orientation::Positive: return "positive";
        case Orientation::Negative: return "negative";
    }
    return "notApplicable";
}

namespace detail {
// A maximal b-isotropic subspace of V_n fixing which family of maximal isotropics is "positive".
inline DenseMat referenceMaximalIsotropic(const Model& m) {
    DenseMat out(m.dim(), 0);
    for (std::size_t k = 0; k + 1 < m.dim(); k += 2) {
        Scalar bx = m.B(k, k), by = m.B(k + 1, k + 1);
        Scalar c = bx == by ? Scalar::i() : Scalar(1);
        DenseMat col(m.dim(), 1);
        col(k, 0) = 1;
        col(k + 1, 0) = c;
        out = DenseMat::hcat(out, col);
    }
    return out;
}
}  // namespace detail

// Orientation read at truncation level n (members must be b-isotropic where used).
inline Orientation orientationClass(const Flag& fl, int n = 0) {
    if (fl.family.tag != FamilyTag::SO && fl.family.tag != FamilyTag::SO2)
        throw std::invalid_argument("orientation needs so:q or so2, got " + familyName(fl.family));
    if (n == 0) n = levelCovering(fl.family, std::max(fl.bound(), 1));
    Model m = makeModel(fl.family, n);
    std::vector<DenseMat> mem;
    for (auto& s : fl.members) mem.push_back(columnBasis(truncateSubspace(m, s)));
    const std::size_t N = m.dim();
    auto isotropic = [&](const DenseMat& a) { return (a.transpose() * m.B * a).isZero(); };
    for (std::size_t k = 0; k < mem.size(); ++k) {
        const DenseMat& L = mem[k];
        if (!isotropic(L) || N != 2 * L.cols() + 2) continue;
        // L found; look for a maximal isotropic member containing it
        for (std::size_t j = 0; j < mem.size(); ++j) {
            const DenseMat& M = mem[j];
            if (M.cols() != L.cols() + 1 || !isotropic(M)) continue;
            if (rank(DenseMat::hcat(M, L)) != M.cols()) continue;
            DenseMat ref = detail::referenceMaximalIsotropic(m);
            std::size_t meet = M.cols() + ref.cols() - rank(DenseMat::hcat(M, ref));
            return (meet % 2) == (ref.cols() % 2) ? Orientation::Positive : Orientation::Negative;
        }
        return Orientation::Undecided;
    }
    return Orientation::NotApplicable;
}

// ---- standard representatives ----

struct OrbitKey {
    int a = 0, c = 0;  // positive part a, null part c; the negative part fills the rest
};
using StandardSpec = std::variant<int, OrbitKey>;

namespace detail {
inline Vec e(Index i, Scalar c = 1) { return Vec::basis(i, std::move(c)); }

// Null and positive generators reached by Cayley words on quaternion-style unit pairs
// (-2j, 2j-1), (-2j+1, 2j).
inline void pairedUnits(Subspace& s, int a, int c) {
    for (int j = 1; j <= c; ++j) {
        s.gens.push_back(e(-2 * j) + e(2 * j - 1));
        s.gens.push_back(e(-2 * j + 1, -1) + e(2 * j));
    }
    for (int j = c + 1; j <= c + a; ++j) {
        s.gens.push_back(e(-2 * j));
        s.gens.push_back(e(-2 * j + 1));
    }
}
}  // namespace detail

// F_(k): an int spec. An OrbitKey (a, c) gives the representative with a positive, c null directions.
inline Subspace standardSubspace(const GroupFamily& f, const StandardSpec& spec) {
    using detail::e;
    const bool isKey = std::holds_alternative<OrbitKey>(spec);
    int a = isKey ? std::get<OrbitKey>(spec).a : std::get<int>(spec);
    int c = isKey ? std::get<OrbitKey>(spec).c : 0;
    if (a < 0 || c < 0) throw std::invalid_argument("negative orbit parameters");
    Subspace s;
    switch (f.tag) {
        case FamilyTag::SU:
        case FamilyTag::SO:
            if (!f.qInfinite() && a + c > f.q) throw std::invalid_argument("a + c exceeds q");
            for (int j = 1; j <= c; ++j) s.gens.push_back(e(-j) + e(j));
            for (int j = c + 1; j <= c + a; ++j) s.gens.push_back(e(-j));
            if (f.qInfinite()) s.tail = Tail{Tail::Kind::Pos, c + a};
            else if (isKey)
                for (int j = c + 1; j <= f.q - a; ++j) s.gens.push_back(e(j));  // F_- = span{e_{c+1}..e_{c+b}}
            else
                for (int j = a + 1; j <= f.q; ++j) s.gens.push_back(e(j));
            return s;
        case FamilyTag::SpR:
            for (int j = 1; j <= c; ++j) s.gens.push_back(e(-j) + e(j));
            for (int j = c + 1; j <= c + a; ++j) s.gens.push_back(e(-j));
            s.tail = Tail{Tail::Kind::Pos, c + a};
            return s;
        case FamilyTag::SOstar:
            if (!isKey) {
                for (int j = 1; j <= a; ++j) s.gens.push_back(e(-j));
                s.tail = Tail{Tail::Kind::Pos, a};
                return s;
            }
            detail::pairedUnits(s, a, c);
            s.tail = Tail{Tail::Kind::Pos, 2 * (c + a)};
            return s;
        case FamilyTag::SP:
            if (!f.qInfinite() && a + c > f.q) throw std::invalid_argument("a + c exceeds q");
            detail::pairedUnits(s, a, c);
            if (f.qInfinite()) s.tail = Tail{Tail::Kind::Pos, 2 * (c + a)};
            else
                for (int i = 2 * (c + a) + 1; i <= 2 * f.q; ++i) s.gens.push_back(e(i));
            return s;
        case FamilyTag::SO2:
            if (c != 0 || a > 2) throw std::invalid_argument("so2 standard lines are k = 0, 1, 2");
            if (a == 0) return Subspace{{e(1) + e(2, Scalar::i())}, {}};
            if (a == 1) return Subspace{{e(1) + e(2, -Scalar::i())}, {}};
            return Subspace{{e(-2) + e(-1, Scalar::i())}, {}};
        case FamilyTag::SL_C:
        case FamilyTag::SL_R:
        case FamilyTag::SL_H: {
            if (c != 0) throw std::invalid_argument("SL standard subspaces take a dimension only");
            int top = f.tag == FamilyTag::SL_H ? 2 * a : a;
            for (int i = 1; i <= top; ++i) s.gens.push_back(e(i));
            return s;
        }
    }
    return s;
}

inline Flag standardFlag(const GroupFamily& f, const std::vector<StandardSpec>& specs) {
    Flag fl{f, {}};
    for (auto& sp : specs) fl.members.push_back(standardSubspace(f, sp));
    std::sort(fl.members.begin(), fl.members.end(), [&](const Subspace& x, const Subspace& y) {
        return subspaceContains(f, y, x) && !sameSubspace(f, x, y);
    });
    validateFlag(fl);
    if (hasB(f) && f.tag != FamilyTag::SO && f.tag != FamilyTag::SP && !isIsotropicFlag(fl))
        throw std::invalid_argument("standard flag is not isotropic");
    return fl;
}

}  // namespace limflag

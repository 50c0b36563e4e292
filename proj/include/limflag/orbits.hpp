#pragma once
// Signatures, nondegeneracy, the tangent-rank openness oracle and orbit labels.

#include "limflag/flags.hpp"

#include <set>

namespace limflag {

// ---- signatures ----

namespace detail {
// Number of tail indices of E with the given sign (negative side if neg).
inline Count tailCount(const GroupFamily& f, const Tail& t, bool neg) {
    if (t.kind == Tail::Kind::None) return 0;
    int far = std::max(t.param, positiveBound(f)) + 8;
    for (Index i : {far, far + 1}) {
        Index j = neg ? -i : i;
        if (inIndexSet(f, j) && t.contains(j)) return Count::inf();
    }
    std::int64_t k = 0;
    for (Index i = 1; i < far; ++i) {
        Index j = neg ? -i : i;
        if (inIndexSet(f, j) && t.contains(j)) ++k;
    }
    return k;
}
}  // namespace detail

inline SignatureTriple subspaceSignature(const GroupFamily& f, const Subspace& s) {
    if (!hasH(f)) throw std::invalid_argument("family " + familyName(f) + " carries no hermitian form");
    SignatureTriple sig{0, 0, 0};
    if (!s.gens.empty()) {
        Model m = makeModel(f, levelCovering(f, std::max(s.genBound(), 1)));
        DenseMat g(m.dim(), 0);
        for (auto& v : s.gens) g = DenseMat::hcat(g, m.column(v));
        sig = signatureOfGram(g.adjoint() * m.H * g);
    }
    // tail is h-orthogonal to the generators: h is diagonal and supports are disjoint
    sig.pos = sig.pos + detail::tailCount(f, s.tail, true);
    sig.neg = sig.neg + detail::tailCount(f, s.tail, false);
    return sig;
}

inline std::vector<SignatureTriple> signatureSequence(const Flag& fl) {
    std::vector<SignatureTriple> out;
    for (auto& s : fl.members) out.push_back(subspaceSignature(fl.family, s));
    return out;
}

// ---- openness oracle ----

namespace detail {
// Real coordinates over ℚ(√2): (Re, Im) of each entry.
inline void appendRealified(std::vector<Scalar>& row, const DenseMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.emplace_back(m(i, j).re, RealQuad{});
            row.emplace_back(m(i, j).im, RealQuad{});
        }
}

struct TangentData {
    std::vector<DenseMat> members, annihilators;
};

inline TangentData tangentData(const Model& m, const Flag& fl) {
    TangentData t;
    for (auto& s : fl.members) {
        DenseMat M = columnBasis(truncateSubspace(m, s));
        t.annihilators.push_back(nullSpace(M.transpose()).transpose());
        t.members.push_back(std::move(M));
    }
    return t;
}

// Real rank of X ↦ (P_j X M_j)_j over a real basis of a Lie algebra.
inline std::size_t tangentRank(const TangentData& t, const std::vector<DenseMat>& basis) {
    std::size_t width = 0;
    for (std::size_t j = 0; j < t.members.size(); ++j) width += 2 * t.annihilators[j].rows() * t.members[j].cols();
    DenseMat img(basis.size(), width);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        std::vector<Scalar> row;
        row.reserve(width);
        for (std::size_t j = 0; j < t.members.size(); ++j)
            appendRealified(row, t.annihilators[j] * (basis[r] * t.members[j]));
        for (std::size_t c = 0; c < width; ++c) img(r, c) = row[c];
    }
    return rank(img);
}
}  // namespace detail

// Is the G_0-orbit of the truncated flag open in the G-orbit at level n?
inline bool opennessOracle(const Flag& fl, int n) {
    Model m = makeModel(fl.family, n);
    auto t = detail::tangentData(m, fl);
    std::size_t real = detail::tangentRank(t, lieAlgebraBasis(m, Level::Real));
    std::size_t full = detail::tangentRank(t, lieAlgebraBasis(m, Level::Complex));
    return real == full;
}

inline int defaultLevel(const Flag& fl) { return levelCovering(fl.family, std::max(fl.bound(), 1)); }

// ---- nondegeneracy and classification ----

inline bool isNondegenerate(const Flag& fl, int n = 0) {
    if (!isSLFamily(fl.family)) {
        for (auto& s : signatureSequence(fl))
            if (s.nul != Count(0)) return false;
        return true;
    }
    if (n == 0) n = defaultLevel(fl);
    if (fl.family.tag != FamilyTag::SL_C && fl.members.size() == 1) {
        Model m = makeModel(fl.family, n);
        DenseMat F = columnBasis(truncateSubspace(m, fl.members[0]));
        if (rank(DenseMat::hcat(F, applyTau(m, F))) == 2 * F.cols()) return true;  // F ∩ τF = 0
    }
    return opennessOracle(fl, n);
}

struct OrbitLabel {
    std::vector<SignatureTriple> perMember;
    bool open = false;
    bool closed = false;
    Orientation orientation = Orientation::NotApplicable;
    std::vector<int> signs;  // SL families: sign invariant of members with 2·dim = dim V_n, else 0

    friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
    friend auto operator<=>(const OrbitLabel& a, const OrbitLabel& b) {
        if (a.perMember != b.perMember) return a.perMember < b.perMember ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::tie(a.open, a.closed, a.orientation, a.signs) <=> std::tie(b.open, b.closed, b.orientation, b.signs);
    }
};

namespace detail {
// SO(∞,2) has no τ in its model; the real structure of so(n,2) acts on vectors as v ↦ H·conj(v).
inline DenseMat realStructure(const Model& m, const DenseMat& F) {
    return m.hasT ? applyTau(m, F) : m.H * F.conjugate();
}

inline bool tauStable(const Model& m, const DenseMat& F) {
    return rank(DenseMat::hcat(F, realStructure(m, F))) == F.cols();
}

// Sign of i^k det[F, τF] for dim F = k, 2k = dim V_n; real for both SL_R and SL_H.
inline int halfDimensionSign(const Model& m, const DenseMat& F) {
    if (2 * F.cols() != m.dim()) return 0;
    Scalar d = determinant(DenseMat::hcat(F, applyTau(m, F)));
    if (m.family.tag == FamilyTag::SL_R)
        for (std::size_t k = 0; k < F.cols(); ++k) d = d * Scalar::i();
    if (!d.im.isZero()) throw MathError("half-dimension invariant is not real");
    return signReal(d.re);
}

// SO(∞,2): a negative line [v] has Re v, Im v spanning a negative 2-plane; its orientation
// projected to span{e_1, e_2} is the sign of Im(conj(v_1) v_2).
inline Orientation so2LineOrientation(const Vec& v) {
    Scalar w = v.get(1).conj() * v.get(2);
    int s = signReal(w.im);
    return s > 0 ? Orientation::Positive : (s < 0 ? Orientation::Negative : Orientation::Undecided);
}
}  // namespace detail

inline OrbitLabel classifyOrbit(const Flag& fl, int n = 0) {
    OrbitLabel L;
    const GroupFamily& f = fl.family;
    if (n == 0) n = defaultLevel(fl);
    if (isSLFamily(f)) {
        Model m = makeModel(f, n);
        L.open = isNondegenerate(fl, n);
        if (f.tag == FamilyTag::SL_C) {
            L.closed = true;  // G_0 = G is transitive
            return L;
        }
        L.closed = true;
        for (auto& s : fl.members) {
            DenseMat F = columnBasis(truncateSubspace(m, s));
            L.closed = L.closed && detail::tauStable(m, F);
            L.signs.push_back(L.open ? detail::halfDimensionSign(m, F) : 0);
        }
        return L;
    }
    L.perMember = signatureSequence(fl);
    L.open = isNondegenerate(fl);
    bool allNull = true;
    for (auto& s : L.perMember) allNull = allNull && s.pos == Count(0) && s.neg == Count(0);
    switch (f.tag) {
        case FamilyTag::SO2: {
            Model m = makeModel(f, n);
            L.closed = allNull;
            for (auto& s : fl.members) L.closed = L.closed && detail::tauStable(m, columnBasis(truncateSubspace(m, s)));
            if (fl.members.size() == 1 && fl.members[0].gens.size() == 1 && L.perMember[0].neg == Count(1))
                L.orientation = detail::so2LineOrientation(fl.members[0].gens[0]);
            else
                L.orientation = orientationClass(fl, n);
            break;
        }
        case FamilyTag::SO:
            L.closed = allNull;
            L.orientation = orientationClass(fl, n);
            break;
        default: L.closed = allNull; break;
    }
    return L;
}

// ---- census ----

struct Shape {
    Flag base;                     // a point of the flag manifold; samples are G-translates of it
    std::vector<Flag> representatives;
};

inline Shape grassmannShape(const GroupFamily& f, int n) {
    Shape s{standardFlag(f, {0}), {}};
    switch (f.tag) {
        case FamilyTag::SO2:
            for (int k = 0; k <= 2; ++k) s.representatives.push_back(standardFlag(f, {k}));
            break;
        case FamilyTag::SOstar:  // F_(k) with k odd lies in the other family of maximal isotropics
            for (int k = 0; k <= n; k += 2) s.representatives.push_back(standardFlag(f, {k}));
            break;
        default: {
            int top = f.qInfinite() ? n : std::min(n, f.q);
            for (int k = 0; k <= top; ++k) s.representatives.push_back(standardFlag(f, {k}));
        }
    }
    return s;
}

// Standard flag of the given member dimensions (quaternionic dimensions for SL_H).
inline Shape slShape(const GroupFamily& f, const std::vector<int>& dims) {
    if (!isSLFamily(f)) throw std::invalid_argument("slShape needs an SL family");
    std::vector<StandardSpec> spec(dims.begin(), dims.end());
    return Shape{standardFlag(f, spec), {}};
}

inline Shape fullFlagShape(const GroupFamily& f, int n) {
    std::vector<int> dims;
    for (int k = 1; k < n; ++k) dims.push_back(k);
    return slShape(f, dims);
}

inline std::set<OrbitLabel> openOrbitCensus(const GroupFamily& f, const Shape& shape, int n, int samples,
                                            std::uint64_t seed = 1) {
    std::set<OrbitLabel> out;
    auto consider = [&](const Flag& fl) {
        OrbitLabel L = classifyOrbit(fl, n);
        if (L.open) out.insert(std::move(L));
    };
    for (auto& r : shape.representatives) consider(r);
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        FinitaryMap g = randomGroupElement(f, n, rng(), Level::Complex, 3);
        consider(applyMap(g, shape.base));
    }
    return out;
}

}  // namespace limflag

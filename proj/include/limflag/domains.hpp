#pragma once
// Bounded domain charts: membership, the subspace of a chart point, linear fractional actions,
// and the SO(∞,2) map ξ.
//
// Chart blocks index V_+ = span{e_i : i < 0} by rows/cols r ↔ e_{-(r+1)} and V_- by c ↔ e_{c+1}.

#include "limflag/orbits.hpp"

namespace limflag {

enum class Side { Plus, Minus };
enum class Constraint { None, Symmetric, Antisymmetric, Real, Quaternion, Column };

inline std::string sideName(Side s) { return s == Side::Plus ? "plus" : "minus"; }
inline Side parseSide(const std::string& s) {
    if (s == "plus") return Side::Plus;
    if (s == "minus") return Side::Minus;
    throw std::invalid_argument("side must be plus or minus, got " + s);
}

inline Constraint constraintOf(const GroupFamily& f) {
    switch (f.tag) {
        case FamilyTag::SpR: return Constraint::Symmetric;
        case FamilyTag::SOstar: return Constraint::Antisymmetric;
        case FamilyTag::SO: return Constraint::Real;
        case FamilyTag::SP: return Constraint::Quaternion;
        case FamilyTag::SO2: return Constraint::Column;
        case FamilyTag::SU: return Constraint::None;
        default: throw std::invalid_argument("no bounded domain chart for " + familyName(f));
    }
}

inline std::string constraintName(Constraint c) {
    switch (c) {
        case Constraint::None: return "none";
        case Constraint::Symmetric: return "symmetric";
        case Constraint::Antisymmetric: return "antisymmetric";
        case Constraint::Real: return "real";
        case Constraint::Quaternion: return "quaternion";
        case Constraint::Column: return "column";
    }
    return "none";
}

// Side minus: Z : V_- → V_+, subspace = columns of (Z; I). Side plus: Z : V_+ → V_-, columns of (I; Z).
// SO(∞,2): Z is a column in V_+ and component selects D'_0 (0) or D'_1 (1).
struct DomainPoint {
    GroupFamily family;
    DenseMat Z;
    Side side = Side::Minus;
    int component = 0;
};

namespace detail {
inline Index plusIndex(std::size_t r) { return -static_cast<Index>(r) - 1; }
inline Index minusIndex(std::size_t c) { return static_cast<Index>(c) + 1; }

// 𝒥 = M·conj restricted to V_+ (first k coordinates in chart order) or V_-.
inline DenseMat quaternionBlock(const GroupFamily& f, std::size_t k, bool plusSide) {
    DenseMat M(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        Index i = plusSide ? plusIndex(a) : minusIndex(a);
        Vec t = tauOfBasis(f, i);
        for (auto& [j, c] : t.entries()) {
            std::size_t b = plusSide ? static_cast<std::size_t>(-j - 1) : static_cast<std::size_t>(j - 1);
            if (b >= k) throw std::logic_error("quaternion structure leaves the chart block");
            M(b, a) = c;
        }
    }
    return M;
}

inline std::size_t plusRows(const DomainPoint& p) { return p.side == Side::Minus ? p.Z.rows() : p.Z.cols(); }
inline std::size_t minusCols(const DomainPoint& p) { return p.side == Side::Minus ? p.Z.cols() : p.Z.rows(); }
}  // namespace detail

inline void checkConstraint(const DomainPoint& p) {
    Constraint c = constraintOf(p.family);
    const DenseMat& Z = p.Z;
    auto fail = [&](const std::string& why) { throw std::invalid_argument("domain point violates constraint: " + why); };
    if (c == Constraint::Column) {
        if (Z.cols() != 1) fail("SO(∞,2) points are single columns");
        if (p.component != 0 && p.component != 1) fail("SO(∞,2) component must be 0 or 1");
        return;
    }
    int pb = positiveBound(p.family);
    if (pb > 0 && detail::minusCols(p) > static_cast<std::size_t>(pb)) fail("block exceeds dim V_-");
    switch (c) {
        case Constraint::Symmetric:
            if (Z.rows() != Z.cols() || !(Z == Z.transpose())) fail("matrix must be symmetric");
            break;
        case Constraint::Antisymmetric:
            if (Z.rows() != Z.cols() || !(Z + Z.transpose()).isZero()) fail("matrix must be antisymmetric");
            break;
        case Constraint::Real:
            if (!(Z == Z.conjugate())) fail("matrix must be real");
            break;
        case Constraint::Quaternion: {
            if (Z.rows() % 2 || Z.cols() % 2) fail("quaternionic blocks have even size");
            DenseMat Mr = detail::quaternionBlock(p.family, Z.rows(), p.side == Side::Minus);
            DenseMat Mc = detail::quaternionBlock(p.family, Z.cols(), p.side != Side::Minus);
            if (!(Mr * Z.conjugate() == Z * Mc)) fail("matrix must commute with the quaternion structure");
            break;
        }
        default: break;
    }
}

// Project an arbitrary block onto the constraint set (used for sampling).
inline DenseMat projectToConstraint(const GroupFamily& f, const DenseMat& Z, Side side = Side::Minus) {
    switch (constraintOf(f)) {
        case Constraint::Symmetric: return Scalar(Rat(1, 2)) * (Z + Z.transpose());
        case Constraint::Antisymmetric: return Scalar(Rat(1, 2)) * (Z - Z.transpose());
        case Constraint::Real: return Scalar(Rat(1, 2)) * (Z + Z.conjugate());
        case Constraint::Quaternion: {
            DenseMat Mr = detail::quaternionBlock(f, Z.rows(), side == Side::Minus);
            DenseMat Mc = detail::quaternionBlock(f, Z.cols(), side != Side::Minus);
            return Scalar(Rat(1, 2)) * (Z + Mr * Z.conjugate() * inverse(Mc));
        }
        default: return Z;
    }
}

// ---- SO(∞,2) ----

inline Scalar so2Quadratic(const DenseMat& Z) { return (Z.transpose() * Z)(0, 0); }

// ξ(Z) = [2i Z; 1 + ᵗZZ; i(1 - ᵗZZ)]
inline Vec xiEmbedSO2(const DenseMat& Z) {
    if (Z.cols() != 1) throw std::invalid_argument("ξ takes a single column");
    Scalar q = so2Quadratic(Z);
    Vec v;
    for (std::size_t r = 0; r < Z.rows(); ++r) v.set(detail::plusIndex(r), Scalar(2) * Scalar::i() * Z(r, 0));
    v.set(1, Scalar(1) + q);
    v.set(2, Scalar::i() * (Scalar(1) - q));
    return v;
}

// Chart coordinate of the line [w]; inverse of ξ where defined.
inline DenseMat so2Chart(const Vec& w, std::size_t rows) {
    Scalar den = Scalar::i() * w.get(1) + w.get(2);
    if (den.isZero()) throw MathError("point leaves the SO(∞,2) chart");
    Scalar inv = den.inverse();
    rows = std::max<std::size_t>(rows, static_cast<std::size_t>(std::max(w.supportBound(), 0)));
    DenseMat Z(rows, 1);
    for (auto& [i, c] : w.entries())
        if (i < 0) Z(static_cast<std::size_t>(-i - 1), 0) = c * inv;
    return Z;
}

// g(Z) = (AZ_1 + BZ_2) / ((√-1, 1)(CZ_1 + DZ_2)) with (Z_1; Z_2) = ξ(Z).
inline DenseMat so2Action(const FinitaryMap& g, const DenseMat& Z) {
    return so2Chart(g.apply(xiEmbedSO2(Z)), Z.rows());
}

// ---- membership and subspaces ----

inline bool membership(const DomainPoint& p) {
    checkConstraint(p);
    const DenseMat& Z = p.Z;
    if (p.family.tag == FamilyTag::SO2) {
        Scalar zz = (Z.adjoint() * Z)(0, 0);  // real
        Scalar q = so2Quadratic(Z);
        RealQuad first = (Scalar(1) + Scalar(q.absSq()) - Scalar(2) * zz).re;
        if (signReal(first) <= 0) return false;
        int cmp = compareReal(zz.re, RealQuad(1));
        return p.component == 0 ? cmp < 0 : cmp > 0;
    }
    // the identity tail is uniformly definite; only the finite block matters
    return isPosDefinite(DenseMat::identity(Z.cols()) - Z.adjoint() * Z);
}

inline Subspace subspaceFromPoint(const DomainPoint& p) {
    checkConstraint(p);
    if (p.family.tag == FamilyTag::SO2) return Subspace{{xiEmbedSO2(p.Z)}, {}};
    Subspace s;
    const DenseMat& Z = p.Z;
    for (std::size_t c = 0; c < Z.cols(); ++c) {
        Vec v;
        if (p.side == Side::Minus) {
            v.set(detail::minusIndex(c), 1);
            for (std::size_t r = 0; r < Z.rows(); ++r) v.set(detail::plusIndex(r), Z(r, c));
        } else {
            v.set(detail::plusIndex(c), 1);
            for (std::size_t r = 0; r < Z.rows(); ++r) v.set(detail::minusIndex(r), Z(r, c));
        }
        s.gens.push_back(std::move(v));
    }
    int k = static_cast<int>(Z.cols());
    if (p.side == Side::Minus) {
        int pb = positiveBound(p.family);
        if (pb == 0) s.tail = Tail{Tail::Kind::Pos, k};
        else
            for (int j = k + 1; j <= pb; ++j) s.gens.push_back(Vec::basis(j));
    } else {
        s.tail = Tail{Tail::Kind::Neg, k};
    }
    return s;
}

// Chart/subspace consistency: the subspace is definite of the side's sign (and isotropic where b is used).
inline bool subspaceIsInDomain(const DomainPoint& p) {
    Subspace s = subspaceFromPoint(p);
    const GroupFamily& f = p.family;
    SignatureTriple sig = subspaceSignature(f, s);
    if (f.tag == FamilyTag::SO2) {
        if (!(sig == SignatureTriple{0, 1, 0})) return false;
        Orientation o = detail::so2LineOrientation(s.gens[0]);
        return o == (p.component == 0 ? Orientation::Positive : Orientation::Negative);
    }
    bool definite = sig.nul == Count(0) && (p.side == Side::Minus ? sig.pos == Count(0) : sig.neg == Count(0));
    if (!definite) return false;
    if (f.tag == FamilyTag::SpR || f.tag == FamilyTag::SOstar) return isIsotropicSubspace(f, s);
    return true;
}

// Linear fractional action of a finitary g on a chart point.
inline DomainPoint lfAction(const FinitaryMap& g, const DomainPoint& p) {
    checkConstraint(p);
    if (p.family.tag == FamilyTag::SO2) {
        DomainPoint out = p;
        out.Z = so2Action(g, p.Z);
        return out;
    }
    const GroupFamily& f = p.family;
    int bound = std::max({g.supportBound(), static_cast<int>(p.Z.rows()), static_cast<int>(p.Z.cols()), 1});
    Model m = makeModel(f, levelCovering(f, bound));
    std::vector<Index> plus, minus;
    for (std::size_t r = 0; m.pos.count(detail::plusIndex(r)); ++r) plus.push_back(detail::plusIndex(r));
    for (std::size_t c = 0; m.pos.count(detail::minusIndex(c)); ++c) minus.push_back(detail::minusIndex(c));
    auto sub = [&](const std::vector<Index>& rows, const std::vector<Index>& cols) {
        DenseMat out(rows.size(), cols.size());
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = g.entry(rows[a], cols[b]);
        return out;
    };
    DenseMat A = sub(plus, plus), B = sub(plus, minus), C = sub(minus, plus), D = sub(minus, minus);
    // embed Z into the level's full block
    DenseMat Z = p.side == Side::Minus ? DenseMat(plus.size(), minus.size()) : DenseMat(minus.size(), plus.size());
    Z.setBlock(0, 0, p.Z);
    DenseMat num, den;
    if (p.side == Side::Minus) { num = A * Z + B; den = C * Z + D; }
    else { num = C + D * Z; den = A + B * Z; }
    if (determinant(den).isZero()) throw MathError("point leaves the chart");
    DomainPoint out = p;
    out.Z = num * inverse(den);
    return out;
}

// Random constrained block with small rational entries.
inline DomainPoint randomDomainPoint(const GroupFamily& f, std::size_t rows, std::size_t cols, Rng& rng,
                                     Side side = Side::Minus, int num = 2, int den = 3) {
    DomainPoint p{f, DenseMat(rows, cols), side, 0};
    if (f.tag == FamilyTag::SO2) {
        p.Z = DenseMat(rows, 1);
        p.component = static_cast<int>(rng() % 2);
    }
    for (std::size_t r = 0; r < p.Z.rows(); ++r)
        for (std::size_t c = 0; c < p.Z.cols(); ++c) p.Z(r, c) = Scalar(smallRat(rng, num, den), smallRat(rng, num, den));
    p.Z = projectToConstraint(f, p.Z, side);
    return p;
}

}  // namespace limflag

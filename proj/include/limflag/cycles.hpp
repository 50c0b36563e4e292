#pragma once
// Base cycles Y = K_0·F of open orbits, the closed-form cycle-space membership test, and a
// sampled oracle that searches Y for a translate leaving the open orbit.

#include "limflag/orbits.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>

namespace limflag {

enum class CycleCase { PlusOnly, MinusOnly, Product };

inline std::string cycleCaseName(CycleCase c) {
    switch (c) {
        case CycleCase::PlusOnly: return "plusOnly";
        case CycleCase::MinusOnly: return "minusOnly";
        case CycleCase::Product: return "product";
    }
    return "?";
}

struct CycleSpec {
    GroupFamily family;
    Flag flag;                    // open-orbit representative
    Flag splitPlus, splitMinus;   // members F ∩ V_+ and F ∩ V_-, zero and repeated members dropped
    CycleCase cycleCase = CycleCase::Product;
};

namespace detail {

inline bool emptyTail(const GroupFamily& f, const Tail& t) {
    return t.kind == Tail::Kind::None ||
           (!tailInfinite(f, t) && tailIndices(f, t, std::max(t.param, positiveBound(f)) + 8).empty());
}

// (F ∩ V_+, F ∩ V_-) of one member, read at a level past its generators.
inline std::pair<Subspace, Subspace> splitSubspace(const GroupFamily& f, const Subspace& s) {
    if (s.tail.kind == Tail::Kind::Odd || s.tail.kind == Tail::Kind::Even)
        throw std::invalid_argument("splitting a parity tail is not supported");
    Model m = makeModel(f, levelCovering(f, s.genBound() + 1));
    DenseMat F = columnBasis(truncateSubspace(m, s));
    const std::size_t np = m.nPlus(), N = m.dim();
    std::vector<std::size_t> plusRows, minusRows;
    for (std::size_t r = 0; r < N; ++r) (r < np ? plusRows : minusRows).push_back(r);
    // vectors of F vanishing on the minus rows lie in V_+, and conversely
    DenseMat Fp = F * nullSpace(F.selectRows(minusRows));
    DenseMat Fm = F * nullSpace(F.selectRows(plusRows));
    if (Fp.cols() + Fm.cols() != F.cols()) throw std::invalid_argument("flag member does not split along V+ ⊕ V-");
    std::pair<Subspace, Subspace> out;
    for (std::size_t c = 0; c < Fp.cols(); ++c) out.first.gens.push_back(m.vec(Fp, c));
    for (std::size_t c = 0; c < Fm.cols(); ++c) out.second.gens.push_back(m.vec(Fm, c));
    auto k = s.tail.kind;
    if (k == Tail::Kind::Neg || k == Tail::Kind::All) out.first.tail = Tail{Tail::Kind::Neg, static_cast<int>(-m.idx.front())};
    if (k == Tail::Kind::Pos || k == Tail::Kind::All) out.second.tail = Tail{Tail::Kind::Pos, static_cast<int>(m.idx.back())};
    if (emptyTail(f, out.first.tail)) out.first.tail = Tail{};
    if (emptyTail(f, out.second.tail)) out.second.tail = Tail{};
    return out;
}

inline bool isZeroSubspace(const Subspace& s) { return s.gens.empty() && s.tail.kind == Tail::Kind::None; }

inline void pushMember(const GroupFamily& f, Flag& fl, Subspace s) {
    if (isZeroSubspace(s)) return;
    if (!fl.members.empty() && sameSubspace(f, fl.members.back(), s)) return;
    fl.members.push_back(std::move(s));
}

}  // namespace detail

inline CycleCase cycleSpaceCase(const Flag& fl) {
    bool allPos = true, allNeg = true;
    for (auto& s : signatureSequence(fl)) {
        allPos = allPos && s.neg == Count(0) && s.nul == Count(0);
        allNeg = allNeg && s.pos == Count(0) && s.nul == Count(0);
    }
    if (allPos) return CycleCase::PlusOnly;
    if (allNeg) return CycleCase::MinusOnly;
    return CycleCase::Product;
}

inline CycleSpec makeCycleSpec(const Flag& fl) {
    validateFlag(fl);
    const GroupFamily& f = fl.family;
    if (!hasH(f)) throw std::invalid_argument("cycles need a hermitian form; " + familyName(f) + " has none");
    if (!isNondegenerate(fl)) throw std::invalid_argument("flag is not in an open orbit");
    if (hasB(f) && !isRealModel(f) && !isIsotropicFlag(fl)) throw std::invalid_argument("flag is not b-isotropic");
    CycleSpec cs{f, fl, Flag{f, {}}, Flag{f, {}}, cycleSpaceCase(fl)};
    for (auto& s : fl.members) {
        auto [p, q] = detail::splitSubspace(f, s);
        detail::pushMember(f, cs.splitPlus, std::move(p));
        detail::pushMember(f, cs.splitMinus, std::move(q));
    }
    return cs;
}

inline CycleSpec makeCycleSpec(const GroupFamily& f, const std::vector<Subspace>& members) {
    return makeCycleSpec(Flag{f, members});
}

// Level used for a spec: covers the flag generators with one spare index on each side.
inline int cycleLevel(const CycleSpec& cs, int n = 0) {
    return std::max(n, levelCovering(cs.family, cs.flag.bound() + 1));
}

// ---- the base cycle ----

struct BaseCycle {
    Flag plusFactor, minusFactor;  // Y_1 = K_0·plusFactor in V_+, Y_2 = K_0·minusFactor in V_-
    bool crossIsotropy = false;    // Y ⊂ Y_1 × Y_2 cut out by b(k_1 W_+, k_2 W_-) = 0
    std::size_t realDimension = 0; // real dimension of Y at the truncation level
};

// Real dimension of K_0·F at level n, from the tangent map of the compact Lie algebra.
inline std::size_t cycleRealDimension(const CycleSpec& cs, int n = 0) {
    Model m = makeModel(cs.family, cycleLevel(cs, n));
    return detail::tangentRank(detail::tangentData(m, cs.flag), lieAlgebraBasis(m, Level::Compact));
}

// Is the K_0-orbit through fl a complex submanifold at fl (is i·T a subspace of T)?
inline bool isComplexK0Orbit(const Flag& fl, int n = 0) {
    if (isRealModel(fl.family)) throw std::invalid_argument("real and quaternionic flag manifolds are not complex");
    Model m = makeModel(fl.family, std::max(n, defaultLevel(fl)));
    auto t = detail::tangentData(m, fl);
    const auto& k = lieAlgebraBasis(m, Level::Compact);
    std::vector<DenseMat> kc = k;
    for (auto& X : k) kc.push_back(Scalar::i() * X);
    return detail::tangentRank(t, k) == detail::tangentRank(t, kc);
}

// The base cycle is the K_0-orbit in D that is a complex submanifold.
inline bool hasComplexTangent(const CycleSpec& cs, int n = 0) { return isComplexK0Orbit(cs.flag, cycleLevel(cs, n)); }

inline BaseCycle baseCycle(const CycleSpec& cs, int n = 0) {
    BaseCycle y;
    y.plusFactor = cs.splitPlus;
    y.minusFactor = cs.splitMinus;
    const GroupFamily& f = cs.family;
    // b pairs V_+ with V_- only for the antidiagonal forms
    y.crossIsotropy = (f.tag == FamilyTag::SpR || f.tag == FamilyTag::SOstar) && !cs.splitPlus.members.empty() &&
                      !cs.splitMinus.members.empty();
    y.realDimension = cycleRealDimension(cs, n);
    return y;
}

inline std::vector<Flag> sampleCyclePoints(const CycleSpec& cs, int n, int count, std::uint64_t seed) {
    std::vector<Flag> out;
    if (count <= 0) return out;
    out.push_back(cs.flag);
    Model m = makeModel(cs.family, cycleLevel(cs, n));
    Rng rng(seed);
    for (int t = 1; t < count; ++t) {
        auto k = FinitaryMap::fromBlock(m.idx, randomGroupBlock(m, Level::Compact, rng, 1));
        out.push_back(applyMap(k, cs.flag));
    }
    return out;
}

// Does the flag lie on Y? Points of Y are exactly the flags of the same label that split along
// V_+ ⊕ V_- with the same factor dimensions.
inline bool onBaseCycle(const CycleSpec& cs, const Flag& fl) {
    if (fl.members.size() != cs.flag.members.size()) return false;
    const int n = std::max(defaultLevel(fl), defaultLevel(cs.flag));
    if (classifyOrbit(fl, n) != classifyOrbit(cs.flag, n)) return false;
    for (std::size_t j = 0; j < fl.members.size(); ++j) {
        std::pair<Subspace, Subspace> a, b;
        try {
            a = detail::splitSubspace(cs.family, fl.members[j]);
        } catch (const std::invalid_argument&) {
            return false;
        }
        b = detail::splitSubspace(cs.family, cs.flag.members[j]);
        if (dimension(cs.family, a.first) != dimension(cs.family, b.first)) return false;
        if (dimension(cs.family, a.second) != dimension(cs.family, b.second)) return false;
    }
    return true;
}

// ---- closed-form membership ----

// gV_+ positive definite and/or gV_- negative definite, by case. For SO(∞,2) with a minus
// factor the translate must also keep the orientation of the base point.
inline bool cycleMembership(const CycleSpec& cs, const FinitaryMap& g) {
    const GroupFamily& f = cs.family;
    if (!isGroupElement(f, g, Level::Complex)) throw std::invalid_argument("g is not in the complex group");
    Model m = makeModel(f, levelCovering(f, std::max(g.supportBound(), 1)));
    DenseMat G = g.block(m.idx);
    const std::size_t np = m.nPlus(), N = m.dim();
    DenseMat Gp = G.block(0, 0, N, np), Gm = G.block(0, np, N, N - np);
    bool plus = isPosDefinite(Gp.adjoint() * m.H * Gp);
    bool minus = isNegDefinite(Gm.adjoint() * m.H * Gm);
    bool ok = true;
    if (cs.cycleCase != CycleCase::MinusOnly) ok = ok && plus;
    if (cs.cycleCase != CycleCase::PlusOnly) ok = ok && minus;
    if (ok && f.tag == FamilyTag::SO2 && cs.cycleCase != CycleCase::PlusOnly) {
        Flag t = applyMap(g, cs.flag);
        const int n = std::max(defaultLevel(t), defaultLevel(cs.flag));
        ok = classifyOrbit(t, n) == classifyOrbit(cs.flag, n);
    }
    return ok;
}

// ---- sampled oracle ----

namespace detail {

using CMat = Eigen::MatrixXcd;

inline std::complex<double> toComplex(const Scalar& s) {
    const double r2 = std::sqrt(2.0);
    return {s.re.a.get_d() + r2 * s.re.b.get_d(), s.im.a.get_d() + r2 * s.im.b.get_d()};
}

inline CMat toEigen(const DenseMat& a) {
    CMat out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = toComplex(a(i, j));
    return out;
}

inline Rat roundRat(double x, int bits) {
    Rat r(static_cast<long>(std::llround(std::ldexp(x, bits))), 1L << bits);
    r.canonicalize();
    return r;
}

// Float model of θ ↦ g·cayley(Σ θ_i X_i)·F and its distance from the degenerate flags.
struct CycleSteering {
    CMat G, H;
    std::vector<CMat> members, basis;
    std::vector<std::size_t> negCounts;

    // Objective 2j: smallest eigenvalue of member j that should be positive; 2j+1: minus the
    // largest that should be negative. A translate leaves D iff some objective is <= 0.
    int objectives() const { return static_cast<int>(2 * members.size()); }

    double objective(const CMat& K, int which) const {
        const std::size_t j = static_cast<std::size_t>(which / 2);
        CMat A = G * K * members[j];
        Eigen::HouseholderQR<CMat> qr(A);
        CMat Q = qr.householderQ() * CMat::Identity(A.rows(), A.cols());
        Eigen::SelfAdjointEigenSolver<CMat> es(Q.adjoint() * H * Q, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        const auto q = static_cast<Eigen::Index>(negCounts[j]);
        if (which % 2 == 0) return q < ev.size() ? ev(q) : std::numeric_limits<double>::infinity();
        return q > 0 ? -ev(q - 1) : std::numeric_limits<double>::infinity();
    }

    double margin(const CMat& K) const {
        double best = std::numeric_limits<double>::infinity();
        for (int w = 0; w < objectives(); ++w) best = std::min(best, objective(K, w));
        return best;
    }

    // exp(Σ θ_i X_i), computed from the spectrum of the hermitian −iX
    CMat element(const std::vector<double>& theta) const {
        const Eigen::Index N = G.rows();
        CMat X = CMat::Zero(N, N);
        for (std::size_t i = 0; i < basis.size(); ++i) X += theta[i] * basis[i];
        Eigen::SelfAdjointEigenSolver<CMat> es(std::complex<double>(0, -1) * X);  // −iX is hermitian
        Eigen::VectorXcd d(N);
        for (Eigen::Index k = 0; k < N; ++k) d(k) = std::polar(1.0, es.eigenvalues()(k));
        return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    }

    // Real coordinates of the inverse Cayley transform (K − I)(K + I)^{-1} in the basis.
    std::optional<std::vector<double>> cayleyCoordinates(const CMat& K) const {
        const Eigen::Index N = K.rows();
        CMat I = CMat::Identity(N, N);
        Eigen::PartialPivLU<CMat> lu(K + I);
        if (std::abs(lu.determinant()) < 1e-9) return std::nullopt;
        CMat Y = (K - I) * lu.inverse();
        Eigen::MatrixXd M(2 * N * N, basis.size());
        Eigen::VectorXd rhs(2 * N * N);
        for (Eigen::Index a = 0; a < N; ++a)
            for (Eigen::Index b = 0; b < N; ++b) {
                Eigen::Index r = 2 * (a * N + b);
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    M(r, i) = basis[i](a, b).real();
                    M(r + 1, i) = basis[i](a, b).imag();
                }
                rhs(r) = Y(a, b).real();
                rhs(r + 1) = Y(a, b).imag();
            }
        Eigen::VectorXd c = M.colPivHouseholderQr().solve(rhs);
        return std::vector<double>(c.data(), c.data() + c.size());
    }

    double value(const std::vector<double>& theta, int which) const { return objective(element(theta), which); }
};

// Gradient descent with backtracking from one start; stops early once a violation shows.
inline double descend(const CycleSteering& st, int which, std::vector<double>& theta, int iterations) {
    const std::size_t d = theta.size();
    double f = st.value(theta, which);
    std::vector<double> grad(d), trial(d);
    double step = 0.5;
    for (int it = 0; it < iterations && f > -1e-2; ++it) {
        const double h = 1e-6;
        double norm = 0;
        for (std::size_t i = 0; i < d; ++i) {
            trial = theta;
            trial[i] += h;
            grad[i] = (st.value(trial, which) - f) / h;
            norm += grad[i] * grad[i];
        }
        if (norm < 1e-18) break;
        norm = std::sqrt(norm);
        bool moved = false;
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t i = 0; i < d; ++i) trial[i] = theta[i] - step * grad[i] / norm;
            double ft = st.value(trial, which);
            if (ft < f) {
                theta = trial;
                f = ft;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return f;
}

}  // namespace detail

struct OracleOptions {
    int presamples = 64;  // float samples of K_0 ranked by margin
    int restarts = 4;     // descents, started from the base point and the best presamples
    int iterations = 40;  // descent steps per search
};

// True iff every examined point g·k·F (k ∈ K_0 at level n) is nondegenerate with the base label.
// Examined: k = 1, `trials` random exact elements of K_0, and exact roundings of the
// float-steered minimizers of the signed margin.
inline bool cycleMembershipSampled(const CycleSpec& cs, const FinitaryMap& g, int n, int trials, std::uint64_t seed,
                                   const OracleOptions& opt = {}) {
    const GroupFamily& f = cs.family;
    const int L = std::max(cycleLevel(cs, n), levelCovering(f, std::max(g.supportBound(), 1)));
    Model m = makeModel(f, L);
    const OrbitLabel base = classifyOrbit(cs.flag, L);
    DenseMat G = g.block(m.idx);
    // without an orientation the label is the member signatures; g and k fix every tail past V_L
    std::vector<DenseMat> truncated;
    std::vector<SignatureTriple> truncatedSig;
    for (auto& s : cs.flag.members) {
        truncated.push_back(columnBasis(truncateSubspace(m, s)));
        truncatedSig.push_back(signatureOfGram(truncated.back().adjoint() * m.H * truncated.back()));
    }
    const DenseMat pulledH = G.adjoint() * m.H * G;
    auto exactOk = [&](const DenseMat& K) {
        if (base.orientation != Orientation::NotApplicable) {
            Flag t = applyMap(FinitaryMap::fromBlock(m.idx, G * K), cs.flag);
            return classifyOrbit(t, L) == base;
        }
        for (std::size_t j = 0; j < truncated.size(); ++j) {
            DenseMat F = K * truncated[j];
            if (!(signatureOfGram(F.adjoint() * (pulledH * F)) == truncatedSig[j])) return false;
        }
        return true;
    };
    if (!exactOk(DenseMat::identity(m.dim()))) return false;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t)
        if (!exactOk(randomGroupBlock(m, Level::Compact, rng, 1))) return false;

    std::vector<DenseMat> basis = lieAlgebraBasis(m, Level::Compact);
    if (!hasB(f)) {
        // U(p) × U(q) moves Y no further than K_0 does; its extra central direction helps the search
        DenseMat P(m.dim(), m.dim());
        for (std::size_t r = 0; r < m.nPlus(); ++r) P(r, r) = Scalar::i();
        basis.push_back(P);
    }
    detail::CycleSteering st;
    st.G = detail::toEigen(G);
    st.H = detail::toEigen(m.H);
    for (auto& X : basis) st.basis.push_back(detail::toEigen(X));
    for (std::size_t j = 0; j < truncated.size(); ++j) {
        st.members.push_back(detail::toEigen(truncated[j]));
        st.negCounts.push_back(static_cast<std::size_t>(truncatedSig[j].neg.v));
    }
    // float presamples of K_0; each objective is descended from the base point and its best presamples
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> samples{std::vector<double>(basis.size(), 0.0)};
    for (int s = 0; s < opt.presamples; ++s) {
        std::vector<double> theta(basis.size());
        double scale = 0.5 * (1 + s % 4);
        for (auto& x : theta) x = scale * gauss(rng);
        samples.push_back(std::move(theta));
    }
    std::vector<detail::CMat> sampleK;
    for (auto& t : samples) sampleK.push_back(st.element(t));
    // decide exactly at rational points of K_0 next to a float point
    auto exactNear = [&](const detail::CMat& Kf) {
        auto coords = st.cayleyCoordinates(Kf);
        if (!coords) return true;
        for (int bits : {6, 12, 20}) {
            DenseMat X(m.dim(), m.dim());
            for (std::size_t i = 0; i < basis.size(); ++i) X = X + Scalar(detail::roundRat((*coords)[i], bits)) * basis[i];
            auto K = cayleyMap(X);
            if (K && !exactOk(*K)) return false;
        }
        return true;
    };
    for (int w = 0; w < st.objectives(); ++w) {
        if (!std::isfinite(st.objective(sampleK[0], w))) continue;  // member has no eigenvalue of that sign
        std::vector<std::pair<double, std::size_t>> order{{-1.0, 0}};
        for (std::size_t s = 1; s < samples.size(); ++s) order.emplace_back(st.objective(sampleK[s], w), s);
        std::sort(order.begin(), order.end());
        for (int r = 0; r < opt.restarts && r < static_cast<int>(order.size()); ++r) {
            std::vector<double> theta = samples[order[r].second];
            if (detail::descend(st, w, theta, opt.iterations) > 0.05) continue;
            if (!exactNear(st.element(theta))) return false;
        }
    }
    return true;
}

}  // namespace limflag

#pragma once
// Group families, their forms h, b, the structure map τ, and exact sampling.

#include "limflag/linalg.hpp"

#include <map>
#include <mutex>
#include <random>
#include <string>
#include <tuple>

namespace limflag {

enum class FamilyTag { SL_C, SL_R, SL_H, SU, SO, SP, SOstar, SpR, SO2 };

struct GroupFamily {
    FamilyTag tag = FamilyTag::SU;
    int q = 0;  // 0 means ∞; ignored where not applicable

    bool qInfinite() const { return q == 0; }
    friend bool operator==(const GroupFamily&, const GroupFamily&) = default;
    friend auto operator<=>(const GroupFamily&, const GroupFamily&) = default;
};

inline GroupFamily makeFamily(FamilyTag t, int q = 0) {
    if (t == FamilyTag::SO2) q = 2;
    if (t != FamilyTag::SU && t != FamilyTag::SO && t != FamilyTag::SP && t != FamilyTag::SO2) q = 0;
    if (q < 0) throw std::invalid_argument("q must be positive or infinite");
    return {t, q};
}

inline std::string familyName(const GroupFamily& f) {
    auto withQ = [&](const char* base) { return std::string(base) + ":" + (f.qInfinite() ? "inf" : std::to_string(f.q)); };
    switch (f.tag) {
        case FamilyTag::SL_C: return "sl_c";
        case FamilyTag::SL_R: return "sl_r";
        case FamilyTag::SL_H: return "sl_h";
        case FamilyTag::SU: return withQ("su");
        case FamilyTag::SO: return withQ("so");
        case FamilyTag::SP: return withQ("sp");
        case FamilyTag::SOstar: return "so_star";
        case FamilyTag::SpR: return "sp_r";
        case FamilyTag::SO2: return "so2";
    }
    return "?";
}

inline GroupFamily parseFamily(const std::string& s) {
    static const std::map<std::string, FamilyTag> plain = {
        {"sl_c", FamilyTag::SL_C}, {"sl_r", FamilyTag::SL_R}, {"sl_h", FamilyTag::SL_H},
        {"so_star", FamilyTag::SOstar}, {"sp_r", FamilyTag::SpR}, {"so2", FamilyTag::SO2}};
    if (auto it = plain.find(s); it != plain.end()) return makeFamily(it->second);
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unknown family: " + s);
    std::string base = s.substr(0, colon), qs = s.substr(colon + 1);
    FamilyTag t;
    if (base == "su") t = FamilyTag::SU;
    else if (base == "so") t = FamilyTag::SO;
    else if (base == "sp") t = FamilyTag::SP;
    else throw std::invalid_argument("unknown family: " + s);
    int q = 0;
    if (qs != "inf") {
        std::size_t used = 0;
        try { q = std::stoi(qs, &used); } catch (...) { used = 0; }
        if (used != qs.size() || q < 1) throw std::invalid_argument("bad q in family: " + s);
    }
    return {t, q};
}

inline bool isSLFamily(const GroupFamily& f) {
    return f.tag == FamilyTag::SL_C || f.tag == FamilyTag::SL_R || f.tag == FamilyTag::SL_H;
}
inline bool hasH(const GroupFamily& f) { return !isSLFamily(f); }
inline bool hasB(const GroupFamily& f) {
    return f.tag == FamilyTag::SO || f.tag == FamilyTag::SP || f.tag == FamilyTag::SOstar ||
           f.tag == FamilyTag::SpR || f.tag == FamilyTag::SO2;
}
// Families whose flag manifold is real (SO) or quaternionic (SP): G = SL(ℝ) resp. SL(ℍ).
inline bool isRealModel(const GroupFamily& f) { return f.tag == FamilyTag::SO || f.tag == FamilyTag::SP; }

enum class BRule { None, Diagonal, Antidiagonal, SymplecticPairs, SignedAntidiagonal, AllDiagonal };
enum class TauRule { None, RealConj, QuaternionConj };

struct FormData {
    bool hasH = false;  // h(e_i,e_j) = +δ for i<0, −δ for i>0
    BRule bRule = BRule::None;
    TauRule tauRule = TauRule::None;
};

inline FormData formData(const GroupFamily& f) {
    FormData d;
    d.hasH = hasH(f);
    switch (f.tag) {
        case FamilyTag::SO: d.bRule = BRule::Diagonal; d.tauRule = TauRule::RealConj; break;
        case FamilyTag::SP: d.bRule = BRule::SymplecticPairs; d.tauRule = TauRule::QuaternionConj; break;
        case FamilyTag::SOstar: d.bRule = BRule::Antidiagonal; break;
        case FamilyTag::SpR: d.bRule = BRule::SignedAntidiagonal; break;
        case FamilyTag::SO2: d.bRule = BRule::AllDiagonal; break;
        case FamilyTag::SL_R: d.tauRule = TauRule::RealConj; break;
        case FamilyTag::SL_H: d.tauRule = TauRule::QuaternionConj; break;
        default: break;
    }
    return d;
}

// Largest positive index of E, or 0 when unbounded.
inline int positiveBound(const GroupFamily& f) {
    switch (f.tag) {
        case FamilyTag::SU:
        case FamilyTag::SO: return f.q;
        case FamilyTag::SP: return 2 * f.q;
        case FamilyTag::SO2: return 2;
        default: return 0;
    }
}

inline bool inIndexSet(const GroupFamily& f, Index i) {
    if (i == 0) return false;
    if (f.tag == FamilyTag::SL_C) return true;
    if (isSLFamily(f)) return i > 0;
    int pb = positiveBound(f);
    return i < 0 || pb == 0 || i <= pb;
}

// Basis indices of V_n, ascending. SL_H and SP count quaternionic dimensions.
inline std::vector<Index> truncIndices(const GroupFamily& f, int n) {
    if (n < 1) throw std::invalid_argument("truncation level must be >= 1");
    std::vector<Index> idx;
    if (f.tag == FamilyTag::SL_R || f.tag == FamilyTag::SL_H) {
        int top = f.tag == FamilyTag::SL_H ? 2 * n : n;
        for (int i = 1; i <= top; ++i) idx.push_back(i);
        return idx;
    }
    int neg = f.tag == FamilyTag::SP ? 2 * n : n;
    if (f.tag == FamilyTag::SL_C) {
        for (int i = -neg; i <= neg; ++i)
            if (i) idx.push_back(i);
        return idx;
    }
    for (int i = -neg; i <= -1; ++i) idx.push_back(i);
    int pb = positiveBound(f);
    int pos = pb ? pb : (f.tag == FamilyTag::SP ? 2 * n : n);
    for (int i = 1; i <= pos; ++i) idx.push_back(i);
    return idx;
}

// Smallest level n whose V_n contains every listed index.
inline int levelCovering(const GroupFamily& f, int bound) {
    bound = std::max(bound, 1);
    if (f.tag == FamilyTag::SP || f.tag == FamilyTag::SL_H) return (bound + 1) / 2;
    return bound;
}

inline int hSign(Index i) { return i < 0 ? 1 : -1; }

inline Scalar bEntry(const GroupFamily& f, Index i, Index j) {
    switch (formData(f).bRule) {
        case BRule::None: throw std::invalid_argument("family " + familyName(f) + " carries no bilinear form");
        case BRule::Diagonal: return i == j ? Scalar(hSign(i)) : Scalar(0);
        case BRule::AllDiagonal: return i == j ? Scalar(1) : Scalar(0);
        case BRule::Antidiagonal: return i + j == 0 ? Scalar(1) : Scalar(0);
        case BRule::SignedAntidiagonal: return i + j == 0 ? Scalar(i < 0 ? 1 : -1) : Scalar(0);
        case BRule::SymplecticPairs:
            if (i > 0 && i % 2 == 1 && j == i + 1) return -1;
            if (i > 0 && i % 2 == 0 && j == i - 1) return 1;
            if (i < 0 && (-i) % 2 == 1 && j == i - 1) return 1;   // b(e_{2k+1}, e_{2k}) = 1, k<0
            if (i < 0 && (-i) % 2 == 0 && j == i + 1) return -1;  // b(e_{2k}, e_{2k+1}) = -1
            return 0;
    }
    return 0;
}

// τ(e_i) as a vector; τ is conjugate-linear.
inline Vec tauOfBasis(const GroupFamily& f, Index i) {
    switch (formData(f).tauRule) {
        case TauRule::None: throw std::invalid_argument("family " + familyName(f) + " carries no conjugation");
        case TauRule::RealConj: return Vec::basis(i);
        case TauRule::QuaternionConj:
            if (f.tag == FamilyTag::SL_H) return i % 2 ? Vec::basis(i + 1, -1) : Vec::basis(i - 1);
            // 𝒥(e_i) = √−1 · B H e_i
            {
                Vec out;
                for (Index k : {i - 1, i + 1})
                    if (k != 0) {
                        Scalar c = bEntry(f, k, i);
                        if (!c.isZero()) out.set(k, Scalar::i() * c * Scalar(hSign(i)));
                    }
                return out;
            }
    }
    return {};
}

inline Scalar evalH(const GroupFamily& f, const Vec& u, const Vec& v) {
    if (!hasH(f)) throw std::invalid_argument("family " + familyName(f) + " carries no hermitian form");
    Scalar s;
    for (auto& [i, c] : u.entries()) {
        auto it = v.entries().find(i);
        if (it != v.entries().end()) s += Scalar(hSign(i)) * c * it->second.conj();
    }
    return s;
}

inline Scalar evalB(const GroupFamily& f, const Vec& u, const Vec& v) {
    Scalar s;
    if (!hasB(f)) throw std::invalid_argument("family " + familyName(f) + " carries no bilinear form");
    for (auto& [i, c] : u.entries())
        for (Index j : {-i, i - 1, i, i + 1}) {
            if (j == 0) continue;
            auto it = v.entries().find(j);
            if (it == v.entries().end()) continue;
            Scalar bij = bEntry(f, i, j);
            if (!bij.isZero()) s += c * bij * it->second;
        }
    return s;
}

inline Vec applyTau(const GroupFamily& f, const Vec& v) {
    Vec out;
    for (auto& [i, c] : v.entries()) out = out + c.conj() * tauOfBasis(f, i);
    return out;
}

// Matrices of the structures on V_n in the basis truncIndices(f, n).
struct Model {
    GroupFamily family;
    int n = 0;
    std::vector<Index> idx;
    std::map<Index, std::size_t> pos;
    DenseMat H, B, T;  // H, B empty when absent; τ(v) = T·conj(v)
    bool hasH = false, hasB = false, hasT = false;

    std::size_t dim() const { return idx.size(); }
    std::size_t at(Index i) const {
        auto it = pos.find(i);
        if (it == pos.end()) throw std::out_of_range("index " + std::to_string(i) + " outside V_" + std::to_string(n));
        return it->second;
    }
    DenseMat column(const Vec& v) const {
        DenseMat c(dim(), 1);
        for (auto& [i, x] : v.entries()) c(at(i), 0) = x;
        return c;
    }
    Vec vec(const DenseMat& m, std::size_t col) const {
        Vec v;
        for (std::size_t r = 0; r < dim(); ++r) v.set(idx[r], m(r, col));
        return v;
    }
    // Number of negative-index coordinates; V_+ occupies the first nPlus() rows.
    std::size_t nPlus() const {
        std::size_t k = 0;
        while (k < idx.size() && idx[k] < 0) ++k;
        return k;
    }
};

inline Model makeModel(const GroupFamily& f, int n) {
    Model m;
    m.family = f;
    m.n = n;
    m.idx = truncIndices(f, n);
    for (std::size_t k = 0; k < m.idx.size(); ++k) m.pos[m.idx[k]] = k;
    std::size_t N = m.idx.size();
    FormData d = formData(f);
    if (d.hasH) {
        m.hasH = true;
        m.H = DenseMat(N, N);
        for (std::size_t k = 0; k < N; ++k) m.H(k, k) = hSign(m.idx[k]);
    }
    if (d.bRule != BRule::None) {
        m.hasB = true;
        m.B = DenseMat(N, N);
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b) m.B(a, b) = bEntry(f, m.idx[a], m.idx[b]);
    }
    if (d.tauRule != TauRule::None) {
        m.hasT = true;
        m.T = DenseMat(N, N);
        for (std::size_t k = 0; k < N; ++k) {
            Vec t = tauOfBasis(f, m.idx[k]);
            for (auto& [i, c] : t.entries()) m.T(m.at(i), k) = c;
        }
    }
    return m;
}

inline DenseMat applyTau(const Model& m, const DenseMat& cols) { return m.T * cols.conjugate(); }

enum class Level { Real, Complex, Compact };

// Which defining conditions hold at each level.
struct Conditions {
    bool h = false, b = false, tau = false, trace = true, cartan = false;
};

inline Conditions conditions(const GroupFamily& f, Level lv) {
    Conditions c;
    FormData d = formData(f);
    switch (lv) {
        case Level::Compact:
            if (!d.hasH) throw std::invalid_argument("no lim-compact subgroup model for " + familyName(f));
            c.cartan = true;
            [[fallthrough]];
        case Level::Real:
            c.h = d.hasH;
            c.b = d.bRule != BRule::None;
            c.tau = (f.tag == FamilyTag::SL_R || f.tag == FamilyTag::SL_H);
            break;
        case Level::Complex:
            if (isRealModel(f)) c.tau = true;  // G = SL(ℝ) or SL(ℍ)
            else c.b = d.bRule != BRule::None && !isSLFamily(f) && f.tag != FamilyTag::SU;
            break;
    }
    return c;
}

// Does the dense block g (on m.idx) satisfy the group conditions?
inline bool blockInGroup(const Model& m, const DenseMat& g, Level lv) {
    Conditions c = conditions(m.family, lv);
    if (c.h && !(g * m.H * g.adjoint() == m.H)) return false;
    if (c.b && !(g * m.B * g.transpose() == m.B)) return false;
    if (c.tau && !(m.T * g.conjugate() == g * m.T)) return false;
    if (c.cartan && !(m.H * g == g * m.H)) return false;
    return determinant(g) == Scalar(1);
}

// Checks on the support block plus one identity margin index.
inline bool isGroupElement(const GroupFamily& f, const FinitaryMap& g, Level lv = Level::Real) {
    for (Index i : g.support())
        if (!inIndexSet(f, i)) return false;
    int n = levelCovering(f, g.supportBound() + 1);
    Model m = makeModel(f, n);
    return blockInGroup(m, g.block(m.idx), lv);
}

inline Vec quaternionJ(const GroupFamily& f, const Vec& v) {
    if (f.tag != FamilyTag::SP && f.tag != FamilyTag::SL_H)
        throw std::invalid_argument("quaternion structure needs sp:q or sl_h, got " + familyName(f));
    return applyTau(f, v);
}

inline bool isQuaternionLinear(const GroupFamily& f, const FinitaryMap& g) {
    if (f.tag != FamilyTag::SP && f.tag != FamilyTag::SL_H)
        throw std::invalid_argument("quaternion structure needs sp:q or sl_h, got " + familyName(f));
    int n = levelCovering(f, g.supportBound() + 1);
    Model m = makeModel(f, n);
    DenseMat b = g.block(m.idx);
    return m.T * b.conjugate() == b * m.T;
}

// ---- Lie algebras at truncation, by exact null space over Q ----

namespace detail {

// Real unknowns: X = R + iS, entry (a,b) of R at a*N+b, of S at N*N + a*N+b.
struct LinearSystem {
    std::size_t N;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> rows;

    // Adds real and imaginary parts of a complex-linear expression in X and conj(X).
    // terms: (a, b, coefficient c, conjugated?) meaning c·X_ab or c·conj(X_ab)
    void addComplexEquation(const std::vector<std::tuple<std::size_t, std::size_t, Scalar, bool>>& terms) {
        std::map<std::size_t, Rat> re, im;
        for (auto& [a, b, c, cj] : terms) {
            if (sgn(c.re.b) != 0 || sgn(c.im.b) != 0)
                throw MathError("Lie algebra equations must have Gaussian rational coefficients");
            const Rat& cr = c.re.a;
            const Rat& ci = c.im.a;
            std::size_t r = a * N + b, s = N * N + a * N + b;
            Rat sgnS = cj ? Rat(-1) : Rat(1);
            // c·(R + i σS) = (cr R − ci σ S) + i (ci R + cr σ S)
            re[r] += cr;
            re[s] -= ci * sgnS;
            im[r] += ci;
            im[s] += cr * sgnS;
        }
        for (auto* part : {&re, &im}) {
            std::vector<std::pair<std::size_t, Rat>> row;
            for (auto& [k, v] : *part)
                if (sgn(v) != 0) row.emplace_back(k, v);
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }
};

}  // namespace detail

// Real basis of the Lie algebra of the group at the given level, as N×N matrices over V_n.
inline std::vector<DenseMat> computeLieAlgebraBasis(const Model& m, Level lv) {
    Conditions c = conditions(m.family, lv);
    const std::size_t N = m.dim();
    detail::LinearSystem sys{N, {}};
    using Term = std::tuple<std::size_t, std::size_t, Scalar, bool>;
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            if (c.h) {  // X H + H X* = 0, entry (a,b): X_ab H_bb + H_aa conj(X_ba)
                sys.addComplexEquation({Term{a, b, m.H(b, b), false}, Term{b, a, m.H(a, a), true}});
            }
            if (c.b) {  // X B + B X^T = 0, entry (a,b): Σ_k X_ak B_kb + B_ak X_bk
                std::vector<Term> t;
                for (std::size_t k = 0; k < N; ++k) {
                    if (!m.B(k, b).isZero()) t.emplace_back(a, k, m.B(k, b), false);
                    if (!m.B(a, k).isZero()) t.emplace_back(b, k, m.B(a, k), false);
                }
                if (!t.empty()) sys.addComplexEquation(t);
            }
            if (c.tau) {  // T conj(X) − X T = 0
                std::vector<Term> t;
                for (std::size_t k = 0; k < N; ++k) {
                    if (!m.T(a, k).isZero()) t.emplace_back(k, b, m.T(a, k), true);
                    if (!m.T(k, b).isZero()) t.emplace_back(a, k, -m.T(k, b), false);
                }
                if (!t.empty()) sys.addComplexEquation(t);
            }
            if (c.cartan && m.H(a, a) != m.H(b, b)) sys.addComplexEquation({Term{a, b, Scalar(1), false}});
        }
    if (c.trace) {
        std::vector<Term> t;
        for (std::size_t a = 0; a < N; ++a) t.emplace_back(a, a, Scalar(1), false);
        sys.addComplexEquation(t);
    }
    RatMat A(sys.rows.size(), 2 * N * N);
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        for (auto& [k, v] : sys.rows[r]) A(r, k) = v;
    RatMat ns = nullSpace(A);
    std::vector<DenseMat> out;
    for (std::size_t col = 0; col < ns.cols(); ++col) {
        DenseMat X(N, N);
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                X(a, b) = Scalar(RealQuad(ns(a * N + b, col)), RealQuad(ns(N * N + a * N + b, col)));
        out.push_back(std::move(X));
    }
    return out;
}

inline const std::vector<DenseMat>& lieAlgebraBasis(const Model& m, Level lv) {
    static std::mutex mu;
    static std::map<std::tuple<GroupFamily, int, Level>, std::vector<DenseMat>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(m.family, m.n, lv);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, computeLieAlgebraBasis(m, lv)).first->second;
}

// ---- exact random elements ----

using Rng = std::mt19937_64;

inline Rat smallRat(Rng& rng, int num = 3, int den = 4) {
    std::uniform_int_distribution<int> n(-num, num), d(1, den);
    Rat r(n(rng), d(rng));
    r.canonicalize();
    return r;
}

inline DenseMat randomLieElement(const Model& m, Level lv, Rng& rng, int terms = 3) {
    const auto& basis = lieAlgebraBasis(m, lv);
    DenseMat X(m.dim(), m.dim());
    if (basis.empty()) return X;
    if (terms <= 0) {  // dense: every basis element with its own coefficient
        for (auto& B : basis) X = X + Scalar(smallRat(rng, 5, 9) / 4) * B;
        return X;
    }
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int t = 0; t < terms; ++t) X = X + Scalar(smallRat(rng)) * basis[pick(rng)];
    return X;
}

// Cayley parametrization (I + X)(I − X)^{-1}; rational points on circles and hyperbolas come from here.
// Decoupled coordinate blocks of X (compact Lie algebras are block diagonal) are inverted separately.
inline std::optional<DenseMat> cayleyMap(const DenseMat& X) {
    const std::size_t N = X.rows();
    std::vector<std::size_t> comp(N);
    for (std::size_t k = 0; k < N; ++k) comp[k] = k;
    auto root = [&](std::size_t k) {
        while (comp[k] != k) k = comp[k] = comp[comp[k]];
        return k;
    };
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            if (!X(a, b).isZero()) comp[root(a)] = root(b);
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t k = 0; k < N; ++k) blocks[root(k)].push_back(k);
    DenseMat out = DenseMat::identity(N);
    try {
        for (auto& [_, idx] : blocks) {
            if (idx.size() == 1 && X(idx[0], idx[0]).isZero()) continue;
            const std::size_t n = idx.size();
            DenseMat Xb(n, n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) Xb(a, b) = X(idx[a], idx[b]);
            DenseMat I = DenseMat::identity(n);
            DenseMat Kb = (I + Xb) * inverse(I - Xb);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) out(idx[a], idx[b]) = Kb(a, b);
        }
    } catch (const MathError&) {
        return std::nullopt;
    }
    return out;
}

namespace detail {
// Blocks of coordinates that the structure map τ keeps together.
inline std::vector<std::size_t> blockIds(const Model& m, bool useTau) {
    std::vector<std::size_t> id(m.dim());
    for (std::size_t k = 0; k < m.dim(); ++k) id[k] = k;
    if (!useTau) return id;
    for (std::size_t a = 0; a < m.dim(); ++a)
        for (std::size_t b = 0; b < m.dim(); ++b)
            if (!m.T(a, b).isZero()) id[std::max(a, b)] = id[std::min(a, b)] = std::min({id[a], id[b], a, b});
    return id;
}
}  // namespace detail

// Dense random element of the group at level lv on V_n.
// terms: number of Lie algebra basis elements mixed into each Cayley step; 0 mixes all of them.
inline DenseMat randomGroupBlock(const Model& m, Level lv, Rng& rng, int wordLength = 2, int terms = 3) {
    Conditions c = conditions(m.family, lv);
    const std::size_t N = m.dim();
    DenseMat g = DenseMat::identity(N);
    if (wordLength <= 0) return g;
    if (c.h || c.b) {
        bool square = m.family.tag == FamilyTag::SO || m.family.tag == FamilyTag::SO2 ||
                      m.family.tag == FamilyTag::SOstar;
        for (int w = 0; w < wordLength; ++w) {
            std::optional<DenseMat> k;
            while (!(k = cayleyMap(randomLieElement(m, lv, rng, terms)))) {}
            DenseMat step = square ? (*k) * (*k) : *k;
            if (c.h && !c.b) {
                // unitary Cayley image has det u with |u| = 1; rescale one coordinate by conj(u)
                Scalar u = determinant(step);
                for (std::size_t r = 0; r < N; ++r) step(r, 0) *= u.conj();
            }
            g = g * step;
        }
        return g;
    }
    // no quadratic form: products of block-unipotent pieces of random Lie algebra elements
    auto blk = detail::blockIds(m, c.tau);
    for (int w = 0; w < 2 * wordLength; ++w) {
        DenseMat X = randomLieElement(m, lv, rng, terms > 0 ? terms + 1 : 0);
        DenseMat U = DenseMat::identity(N);
        bool upper = w % 2 == 0;
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                if (upper ? blk[a] < blk[b] : blk[a] > blk[b]) U(a, b) = X(a, b);
        g = g * U;
    }
    return g;
}

inline FinitaryMap randomGroupElement(const GroupFamily& f, int n, std::uint64_t seed, Level lv = Level::Real,
                                      int wordLength = 2, int terms = 3) {
    Rng rng(seed);
    Model m = makeModel(f, n);
    return FinitaryMap::fromBlock(m.idx, randomGroupBlock(m, lv, rng, wordLength, terms));
}

}  // namespace limflag

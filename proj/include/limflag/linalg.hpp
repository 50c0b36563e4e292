#pragma once
// Dense and finitary exact linear algebra.

#include "limflag/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace limflag {

inline bool isZero(const Rat& r) { return sgn(r) == 0; }
inline bool isZero(const Scalar& s) { return s.isZero(); }
inline Rat conj(const Rat& r) { return r; }

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix diag(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool isZero() const {
        for (const auto& x : a_)
            if (!limflag::isZero(x)) return false;
        return true;
    }
    bool isSquare() const { return rows_ == cols_; }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        checkSame(x, y);
        Matrix r = x;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        checkSame(x, y);
        Matrix r = x;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& x) {
        Matrix r = x;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& x) {
        Matrix r = x;
        for (auto& v : r.a_) v = s * v;
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (limflag::isZero(xik)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (!limflag::isZero(y(k, j))) r(i, j) += xik * y(k, j);
            }
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Matrix conjugate() const {
        Matrix r = *this;
        for (auto& v : r.a_) v = limflag::conj(v);
        return r;
    }
    Matrix adjoint() const { return transpose().conjugate(); }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix r(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }
    void setBlock(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix selectColumns(const std::vector<std::size_t>& js) const {
        Matrix r(rows_, js.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < js.size(); ++k) r(i, k) = (*this)(i, js[k]);
        return r;
    }
    Matrix selectRows(const std::vector<std::size_t>& is) const {
        Matrix r(is.size(), cols_);
        for (std::size_t k = 0; k < is.size(); ++k)
            for (std::size_t j = 0; j < cols_; ++j) r(k, j) = (*this)(is[k], j);
        return r;
    }
    static Matrix hcat(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ && x.cols_ && y.cols_) throw std::invalid_argument("hcat: row mismatch");
        Matrix r(std::max(x.rows_, y.rows_), x.cols_ + y.cols_);
        r.setBlock(0, 0, x);
        r.setBlock(0, x.cols_, y);
        return r;
    }
    static Matrix vcat(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.cols_ && x.rows_ && y.rows_) throw std::invalid_argument("vcat: column mismatch");
        Matrix r(x.rows_ + y.rows_, std::max(x.cols_, y.cols_));
        r.setBlock(0, 0, x);
        r.setBlock(x.rows_, 0, y);
        return r;
    }

    T trace() const {
        T t(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

private:
    static void checkSame(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
    }
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using DenseMat = Matrix<Scalar>;
using RatMat = Matrix<Rat>;

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rrefInPlace(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && isZero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!isZero(m(r, j))) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || isZero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!isZero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    // plain forward elimination; cheaper than a full rref
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && isZero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (isZero(m(i, c))) continue;
            T f = m(i, c) * inv;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!isZero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

// Columns form a basis of {x : m x = 0}.
template <class T>
Matrix<T> nullSpace(Matrix<T> m) {
    auto piv = rrefInPlace(m);
    std::vector<bool> isPiv(m.cols(), false);
    for (auto p : piv) isPiv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!isPiv[j]) free.push_back(j);
    Matrix<T> out(m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        out(free[k], k) = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) out(piv[r], k) = -m(r, free[k]);
    }
    return out;
}

// Columns of the result form a basis of the column space (a subset of the input columns).
template <class T>
Matrix<T> columnBasis(const Matrix<T>& m) {
    Matrix<T> w = m;
    auto piv = rrefInPlace(w);
    return m.selectColumns(piv);
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (!m.isSquare()) throw MathError("inverse of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return m;
    Matrix<T> aug = Matrix<T>::hcat(m, Matrix<T>::identity(n));
    auto piv = rrefInPlace(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw MathError("singular matrix");
    return aug.block(0, n, n, n);
}

template <class T>
T determinant(Matrix<T> m) {
    if (!m.isSquare()) throw MathError("determinant of non-square matrix");
    T det(1);
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && isZero(m(p, c))) ++p;
        if (p == n) return T(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        T inv = T(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (isZero(m(i, c))) continue;
            T f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

// Solve m x = b for a single solution, or nullopt when inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& m, const Matrix<T>& b) {
    Matrix<T> aug = Matrix<T>::hcat(m, b);
    auto piv = rrefInPlace(aug);
    Matrix<T> x(m.cols(), b.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] >= m.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, m.cols() + j);
    }
    return x;
}

inline bool isHermitian(const DenseMat& g) { return g.isSquare() && g == g.adjoint(); }

// A finite-or-infinite count; infinite values come from tails.
struct Count {
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
    std::int64_t v = 0;
    Count() = default;
    Count(std::int64_t x) : v(x) {}  // NOLINT(implicit)
    static Count inf() { return Count(kInf); }
    bool isInf() const { return v == kInf; }
    friend Count operator+(Count a, Count b) { return (a.isInf() || b.isInf()) ? inf() : Count(a.v + b.v); }
    friend bool operator==(Count a, Count b) { return a.v == b.v; }
    friend auto operator<=>(Count a, Count b) { return a.v <=> b.v; }
};

struct SignatureTriple {
    Count pos, neg, nul;
    friend bool operator==(const SignatureTriple&, const SignatureTriple&) = default;
    friend auto operator<=>(const SignatureTriple& a, const SignatureTriple& b) {
        if (auto c = a.pos <=> b.pos; c != 0) return c;
        if (auto c = a.neg <=> b.neg; c != 0) return c;
        return a.nul <=> b.nul;
    }
};

inline std::ostream& operator<<(std::ostream& os, Count c) {
    if (c.isInf()) return os << "inf";
    return os << c.v;
}
inline std::ostream& operator<<(std::ostream& os, const SignatureTriple& s) {
    return os << "(" << s.pos << "," << s.neg << "," << s.nul << ")";
}

struct Diagonalization {
    DenseMat transform;  // A with A* g A = diagonal
    DenseMat diagonal;
    SignatureTriple signature;
};

// Hermitian congruence diagonalization. Throws on non-hermitian input.
inline Diagonalization diagonalizeHermitian(const DenseMat& g) {
    if (!isHermitian(g)) throw MathError("signature: matrix is not hermitian");
    const std::size_t n = g.rows();
    DenseMat m = g;
    DenseMat a = DenseMat::identity(n);
    auto addCol = [&](std::size_t dst, std::size_t src, const Scalar& c) {
        // m <- E* m E with E = I + c e_src e_dst^T
        for (std::size_t i = 0; i < n; ++i)
            if (!m(i, src).isZero()) m(i, dst) += c * m(i, src);
        Scalar cc = c.conj();
        for (std::size_t j = 0; j < n; ++j)
            if (!m(src, j).isZero()) m(dst, j) += cc * m(src, j);
        for (std::size_t i = 0; i < n; ++i)
            if (!a(i, src).isZero()) a(i, dst) += c * a(i, src);
    };
    auto swapIdx = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < n; ++k) std::swap(m(k, i), m(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(m(i, k), m(j, k));
        for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, p).isZero()) ++p;
        if (p == n) {
            // all remaining diagonal entries vanish: hyperbolic pair step
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!m(i, j).isZero()) { pi = i; pj = j; break; }
            if (pi == n) break;  // remaining block is zero
            addCol(pi, pj, m(pi, pj).conj());
            p = pi;
        }
        swapIdx(k, p);
        Scalar inv = m(k, k).inverse();
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m(k, r).isZero()) continue;
            addCol(r, k, -(m(k, r) * inv));
        }
    }
    Diagonalization d{a, m, {}};
    std::int64_t pos = 0, neg = 0, nul = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !m(i, j).isZero()) throw MathError("signature: diagonalization failed");
        if (!m(i, i).isReal()) throw MathError("signature: non-real diagonal entry");
        int s = signReal(m(i, i).re);
        (s > 0 ? pos : s < 0 ? neg : nul)++;
    }
    if (!(a.adjoint() * g * a == m)) throw MathError("signature: congruence check failed");
    d.signature = {pos, neg, nul};
    return d;
}

inline SignatureTriple signatureOfGram(const DenseMat& g) { return diagonalizeHermitian(g).signature; }

inline bool isPosDefinite(const DenseMat& g) {
    auto s = signatureOfGram(g);
    return s.pos == Count(static_cast<std::int64_t>(g.rows())) && s.neg == Count(0) && s.nul == Count(0);
}
inline bool isNegDefinite(const DenseMat& g) { return isPosDefinite(-g); }

// ---- finitary vectors and maps over the index set E ----

using Index = int;

inline void checkIndex(Index i) {
    if (i == 0) throw std::invalid_argument("basis index must be nonzero");
}

class Vec {
public:
    Vec() = default;
    static Vec basis(Index i, Scalar c = 1) {
        Vec v;
        v.set(i, std::move(c));
        return v;
    }
    const std::map<Index, Scalar>& entries() const { return e_; }
    Scalar get(Index i) const {
        auto it = e_.find(i);
        return it == e_.end() ? Scalar(0) : it->second;
    }
    void set(Index i, Scalar c) {
        checkIndex(i);
        if (c.isZero()) e_.erase(i);
        else e_[i] = std::move(c);
    }
    void add(Index i, const Scalar& c) { set(i, get(i) + c); }
    bool isZero() const { return e_.empty(); }
    int supportBound() const {
        int b = 0;
        for (auto& [i, _] : e_) b = std::max(b, std::abs(i));
        return b;
    }
    friend bool operator==(const Vec& x, const Vec& y) { return x.e_ == y.e_; }
    friend Vec operator+(Vec x, const Vec& y) {
        for (auto& [i, c] : y.e_) x.add(i, c);
        return x;
    }
    friend Vec operator-(Vec x, const Vec& y) {
        for (auto& [i, c] : y.e_) x.add(i, -c);
        return x;
    }
    friend Vec operator*(const Scalar& s, const Vec& x) {
        Vec r;
        for (auto& [i, c] : x.e_) r.set(i, s * c);
        return r;
    }
    Vec conj() const {
        Vec r;
        for (auto& [i, c] : e_) r.e_[i] = c.conj();
        return r;
    }

private:
    std::map<Index, Scalar> e_;
};

class FinitaryMap {
public:
    FinitaryMap() = default;
    static FinitaryMap identity() { return {}; }

    // Build from a dense block acting on the listed indices (identity elsewhere).
    static FinitaryMap fromBlock(const std::vector<Index>& idx, const DenseMat& m) {
        if (m.rows() != idx.size() || m.cols() != idx.size()) throw std::invalid_argument("fromBlock: size mismatch");
        FinitaryMap f;
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) {
                Scalar d = m(i, j) - (i == j ? Scalar(1) : Scalar(0));
                f.setDelta(idx[i], idx[j], d);
            }
        return f;
    }

    const std::map<std::pair<Index, Index>, Scalar>& delta() const { return d_; }
    int supportBound() const {
        int b = 0;
        for (auto& [k, _] : d_) b = std::max({b, std::abs(k.first), std::abs(k.second)});
        return b;
    }
    std::set<Index> support() const {
        std::set<Index> s;
        for (auto& [k, _] : d_) { s.insert(k.first); s.insert(k.second); }
        return s;
    }
    Scalar entry(Index i, Index j) const {
        auto it = d_.find({i, j});
        Scalar base = (i == j) ? Scalar(1) : Scalar(0);
        return it == d_.end() ? base : base + it->second;
    }
    void setDelta(Index i, Index j, const Scalar& c) {
        checkIndex(i);
        checkIndex(j);
        if (c.isZero()) d_.erase({i, j});
        else d_[{i, j}] = c;
    }
    bool isIdentity() const { return d_.empty(); }

    DenseMat block(const std::vector<Index>& idx) const {
        DenseMat m(idx.size(), idx.size());
        std::map<Index, std::size_t> pos;
        for (std::size_t k = 0; k < idx.size(); ++k) { pos[idx[k]] = k; m(k, k) = 1; }
        for (auto& [k, c] : d_) {
            auto i = pos.find(k.first), j = pos.find(k.second);
            if (i == pos.end() || j == pos.end()) {
                throw std::invalid_argument("block: index set does not cover the support");
            }
            m(i->second, j->second) += c;
        }
        return m;
    }

    Vec apply(const Vec& v) const {
        Vec out = v;
        for (auto& [k, c] : d_) {
            auto it = v.entries().find(k.second);
            if (it != v.entries().end()) out.add(k.first, c * it->second);
        }
        return out;
    }

    friend bool operator==(const FinitaryMap& x, const FinitaryMap& y) { return x.d_ == y.d_; }

private:
    std::map<std::pair<Index, Index>, Scalar> d_;
};

inline std::vector<Index> unionSupport(const FinitaryMap& f, const FinitaryMap& g) {
    auto s = f.support();
    auto t = g.support();
    s.insert(t.begin(), t.end());
    return {s.begin(), s.end()};
}

inline FinitaryMap compose(const FinitaryMap& f, const FinitaryMap& g) {
    auto idx = unionSupport(f, g);
    return FinitaryMap::fromBlock(idx, f.block(idx) * g.block(idx));
}

inline FinitaryMap inverseAtTruncation(const FinitaryMap& f) {
    auto s = f.support();
    std::vector<Index> idx(s.begin(), s.end());
    return FinitaryMap::fromBlock(idx, inverse(f.block(idx)));
}

}  // namespace limflag

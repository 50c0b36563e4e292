#pragma once
// Exact arithmetic in Q ⊂ Q(√2) ⊂ K = Q(√2, i).

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace limflag {

using Rat = mpq_class;

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int sgn(const Rat& r) { return ::sgn(r); }

inline Rat parseRat(std::string_view s) {
    std::string t(s);
    if (t.empty()) throw std::invalid_argument("empty rational");
    if (t[0] == '+') t.erase(0, 1);
    Rat r;
    if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    r.canonicalize();
    return r;
}

// a + b·√2
struct RealQuad {
    Rat a, b;

    RealQuad() = default;
    RealQuad(long v) : a(v), b(0) {}  // NOLINT(implicit)
    RealQuad(Rat a_, Rat b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}

    static RealQuad sqrt2() { return {0, 1}; }

    bool isZero() const { return sgn(a) == 0 && sgn(b) == 0; }

    friend bool operator==(const RealQuad& x, const RealQuad& y) { return x.a == y.a && x.b == y.b; }
    friend RealQuad operator+(const RealQuad& x, const RealQuad& y) { return {x.a + y.a, x.b + y.b}; }
    friend RealQuad operator-(const RealQuad& x, const RealQuad& y) { return {x.a - y.a, x.b - y.b}; }
    friend RealQuad operator-(const RealQuad& x) { return {-x.a, -x.b}; }
    friend RealQuad operator*(const RealQuad& x, const RealQuad& y) {
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    // a² − 2b², the norm to Q
    Rat norm() const { return a * a - 2 * b * b; }
    RealQuad inverse() const {
        Rat n = norm();
        if (sgn(n) == 0) throw MathError("division by zero");
        return {a / n, -b / n};
    }
    friend RealQuad operator/(const RealQuad& x, const RealQuad& y) { return x * y.inverse(); }
    RealQuad& operator+=(const RealQuad& y) { a += y.a; b += y.b; return *this; }
    RealQuad& operator-=(const RealQuad& y) { a -= y.a; b -= y.b; return *this; }
    RealQuad& operator*=(const RealQuad& y) { return *this = *this * y; }
};

// Sign of a + b√2 as a real number.
inline int signReal(const RealQuad& x) {
    int sa = sgn(x.a), sb = sgn(x.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: |a| vs |b|√2
    int c = cmp(x.a * x.a, 2 * x.b * x.b);
    if (c == 0) return 0;  // unreachable for rationals, √2 is irrational
    return c > 0 ? sa : sb;
}

inline int compareReal(const RealQuad& x, const RealQuad& y) { return signReal(x - y); }

// re + im·i
struct Scalar {
    RealQuad re, im;

    Scalar() = default;
    Scalar(long v) : re(v) {}  // NOLINT(implicit)
    Scalar(Rat r) : re(std::move(r)) {}  // NOLINT(implicit)
    Scalar(RealQuad r) : re(std::move(r)) {}  // NOLINT(implicit)
    Scalar(RealQuad r, RealQuad i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return {RealQuad(0), RealQuad(1)}; }
    static Scalar sqrt2() { return RealQuad::sqrt2(); }
    static Scalar invSqrt2() { return RealQuad(0, Rat(1, 2)); }

    bool isZero() const { return re.isZero() && im.isZero(); }
    bool isReal() const { return im.isZero(); }

    friend bool operator==(const Scalar& x, const Scalar& y) { return x.re == y.re && x.im == y.im; }
    friend Scalar operator+(const Scalar& x, const Scalar& y) { return {x.re + y.re, x.im + y.im}; }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return {x.re - y.re, x.im - y.im}; }
    friend Scalar operator-(const Scalar& x) { return {-x.re, -x.im}; }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    Scalar conj() const { return {re, -im}; }
    // x·conj(x), lies in Q(√2)
    RealQuad absSq() const { return re * re + im * im; }
    Scalar inverse() const {
        RealQuad n = absSq();
        if (n.isZero()) throw MathError("division by zero");
        RealQuad ni = n.inverse();
        return {re * ni, -(im * ni)};
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }
    Scalar& operator+=(const Scalar& y) { re += y.re; im += y.im; return *this; }
    Scalar& operator-=(const Scalar& y) { re -= y.re; im -= y.im; return *this; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }
};

inline Scalar conj(const Scalar& x) { return x.conj(); }

namespace detail {
inline void appendTerm(std::string& out, const Rat& r, const char* suffix) {
    if (sgn(r) == 0) return;
    std::string s = r.get_str();
    if (!out.empty()) {
        if (s[0] == '-') { out += " - "; s.erase(0, 1); }
        else out += " + ";
    }
    out += s;
    out += suffix;
}
}  // namespace detail

inline std::string toString(const Scalar& x) {
    std::string out;
    detail::appendTerm(out, x.re.a, "");
    detail::appendTerm(out, x.re.b, "*s2");
    detail::appendTerm(out, x.im.a, "*i");
    detail::appendTerm(out, x.im.b, "*s2i");
    return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << toString(x); }
inline std::ostream& operator<<(std::ostream& os, const RealQuad& x) { return os << toString(Scalar(x)); }

// Accepts sums of terms "r", "r*s2", "r*i", "r*s2i", "s2", "i", "s2i" with r rational.
inline Scalar parseScalar(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s.empty()) throw std::invalid_argument("empty scalar");
    Scalar out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') sign = -1;
            ++pos;
        } else if (pos != 0) {
            throw std::invalid_argument("bad scalar: " + std::string(text));
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw std::invalid_argument("bad scalar: " + std::string(text));
        std::string coef = term, unit;
        auto star = term.find('*');
        if (star != std::string::npos) {
            coef = term.substr(0, star);
            unit = term.substr(star + 1);
        } else if (term == "s2" || term == "i" || term == "s2i") {
            coef = "1";
            unit = term;
        }
        Rat r = parseRat(coef) * sign;
        if (unit.empty()) out.re.a += r;
        else if (unit == "s2") out.re.b += r;
        else if (unit == "i") out.im.a += r;
        else if (unit == "s2i") out.im.b += r;
        else throw std::invalid_argument("bad scalar unit: " + unit);
    }
    return out;
}

}  // namespace limflag

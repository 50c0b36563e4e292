#pragma once
// Partial Cayley transforms and the words that reach orbit representatives.

#include "limflag/orbits.hpp"

namespace limflag {

inline int cayleyRange(const GroupFamily& f) {
    switch (f.tag) {
        case FamilyTag::SU:
        case FamilyTag::SO:
        case FamilyTag::SP: return f.q;  // 0 = unbounded
        case FamilyTag::SOstar:
        case FamilyTag::SpR: return 0;
        case FamilyTag::SO2: return 2;
        default: return -1;
    }
}

inline FinitaryMap cayley(const GroupFamily& f, int k) {
    int range = cayleyRange(f);
    if (range < 0) throw std::invalid_argument("no partial Cayley transforms for " + familyName(f));
    if (k < 1 || (range > 0 && k > range))
        throw std::invalid_argument("Cayley index " + std::to_string(k) + " out of range for " + familyName(f));
    const Scalar r = Scalar::invSqrt2();
    switch (f.tag) {
        case FamilyTag::SO2: {
            // basis (e_-2, e_-1, e_1, e_2)
            DenseMat c(4, 4);
            c(0, 0) = r; c(0, 2) = r;
            c(1, 1) = r; c(1, 3) = k == 1 ? r : -r;
            c(2, 0) = -r; c(2, 2) = r;
            c(3, 1) = k == 1 ? -r : r; c(3, 3) = r;
            return FinitaryMap::fromBlock({-2, -1, 1, 2}, c);
        }
        case FamilyTag::SOstar:
        case FamilyTag::SP: {
            // unit k pairs e_{-2k} with e_{2k-1} and e_{-2k+1} with e_{2k}
            std::vector<Index> idx = {-2 * k, -2 * k + 1, 2 * k - 1, 2 * k};
            DenseMat c(4, 4);
            c(0, 0) = r; c(2, 0) = -r;  // c(e_{-2k}) = (e_{-2k} - e_{2k-1})/√2
            c(0, 2) = r; c(2, 2) = r;   // c(e_{2k-1}) = (e_{-2k} + e_{2k-1})/√2
            c(1, 1) = r; c(3, 1) = r;   // c(e_{-2k+1}) = (e_{-2k+1} + e_{2k})/√2
            c(1, 3) = -r; c(3, 3) = r;  // c(e_{2k}) = (-e_{-2k+1} + e_{2k})/√2
            return FinitaryMap::fromBlock(idx, c);
        }
        default: {
            DenseMat c(2, 2);
            c(0, 0) = r; c(1, 0) = -r;  // c(e_{-k}) = (e_{-k} - e_k)/√2
            c(0, 1) = r; c(1, 1) = r;   // c(e_k) = (e_{-k} + e_k)/√2
            return FinitaryMap::fromBlock({-k, k}, c);
        }
    }
}

struct CayleyWord {
    GroupFamily family;
    std::vector<int> singles, doubles;
};

inline void validateWord(const CayleyWord& w) {
    std::set<int> seen;
    for (auto list : {&w.singles, &w.doubles})
        for (int k : *list) {
            if (!seen.insert(k).second) throw std::invalid_argument("Cayley word repeats index " + std::to_string(k));
            cayley(w.family, k);
        }
}

// c_{s_1} c_{s_2} ... c_{d_1}^2 c_{d_2}^2 ...
inline FinitaryMap wordMap(const CayleyWord& w) {
    validateWord(w);
    FinitaryMap out = FinitaryMap::identity();
    for (int k : w.singles) out = compose(out, cayley(w.family, k));
    for (int k : w.doubles) {
        FinitaryMap c = cayley(w.family, k);
        out = compose(out, compose(c, c));
    }
    return out;
}

inline Flag applyWord(const CayleyWord& w, const Flag& f) {
    if (!(w.family == f.family)) throw std::invalid_argument("Cayley word and flag belong to different families");
    return applyMap(wordMap(w), f);
}

inline Flag baseFlag(const GroupFamily& f) { return standardFlag(f, {0}); }

// Word c_1...c_c c_{c+1}^2...c_{c+a}^2 on the base flag: a positive, c null units.
inline Flag representative(const GroupFamily& f, int a, int c) {
    if (a < 0 || c < 0) throw std::invalid_argument("negative orbit parameters");
    int range = cayleyRange(f);
    if (range < 0 || f.tag == FamilyTag::SO2) throw std::invalid_argument("no (a,b,c) labels for " + familyName(f));
    if (range > 0 && a + c > range) throw std::invalid_argument("label not realizable: a + c exceeds q");
    CayleyWord w{f, {}, {}};
    for (int k = 1; k <= c; ++k) w.singles.push_back(k);
    for (int k = c + 1; k <= c + a; ++k) w.doubles.push_back(k);
    return applyWord(w, baseFlag(f));
}

// SO(∞,2) table keys z_{i,j}: "00", "01", "02", "11", "12", "22".
inline CayleyWord so2Word(const std::string& key) {
    auto f = makeFamily(FamilyTag::SO2);
    if (key == "00") return {f, {}, {}};
    if (key == "01") return {f, {}, {1}};
    if (key == "02") return {f, {}, {1, 2}};
    if (key == "11") return {f, {1}, {}};
    if (key == "12") return {f, {1}, {2}};
    if (key == "22") return {f, {1, 2}, {}};
    throw std::invalid_argument("unknown SO(∞,2) table key: " + key);
}

inline const std::vector<std::string>& so2Keys() {
    static const std::vector<std::string> k = {"00", "01", "02", "11", "12", "22"};
    return k;
}

inline Flag so2Representative(const std::string& key) {
    return applyWord(so2Word(key), baseFlag(makeFamily(FamilyTag::SO2)));
}

}  // namespace limflag

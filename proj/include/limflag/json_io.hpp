#pragma once
// JSON encoding of the library's values. Scalars are exact strings ("1/2 + 3*s2i"), counts may be "inf".
#include "limflag/cycles.hpp"
#include "limflag/domains.hpp"

#include <json.hpp>

#include <string>

namespace limflag::json {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "limflag/1";

class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw FormatError(what);
}

// Accepts the schema tag when present; a different version is rejected.
inline void checkSchema(const Json& j) {
    if (j.is_object() && j.contains("schema"))
        require(j["schema"].is_string() && j["schema"].get<std::string>() == kSchema,
                "unsupported schema: " + j["schema"].dump());
}

inline Json tagged() { return Json{{"schema", kSchema}}; }

// ---- scalars and counts ----

inline Json toJson(const Scalar& s) { return toString(s); }

inline Scalar scalarFromJson(const Json& j) {
    if (j.is_number_integer()) return Scalar(Rat(j.get<long>()));
    require(j.is_string(), "scalar must be a string or integer: " + j.dump());
    try {
        return parseScalar(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

inline Json toJson(Count c) { return c.isInf() ? Json("inf") : Json(c.v); }

inline Count countFromJson(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Count::inf();
    require(j.is_number_integer(), "count must be an integer or \"inf\"");
    return Count(j.get<std::int64_t>());
}

inline Json toJson(const SignatureTriple& s) { return Json::array({toJson(s.pos), toJson(s.neg), toJson(s.nul)}); }

inline SignatureTriple signatureFromJson(const Json& j) {
    require(j.is_array() && j.size() == 3, "signature must be [pos, neg, nul]");
    return {countFromJson(j[0]), countFromJson(j[1]), countFromJson(j[2])};
}

// ---- vectors, subspaces, flags ----

// [[index, scalar], ...] in increasing index order.
inline Json toJson(const Vec& v) {
    Json out = Json::array();
    for (auto& [i, c] : v.entries()) out.push_back(Json::array({i, toJson(c)}));
    return out;
}

inline Vec vecFromJson(const Json& j) {
    require(j.is_array(), "vector must be an array of [index, scalar] pairs");
    Vec v;
    for (auto& t : j) {
        require(t.is_array() && t.size() == 2 && t[0].is_number_integer(), "bad vector entry: " + t.dump());
        Index i = t[0].get<Index>();
        require(i != 0, "basis index must be nonzero");
        v.add(i, scalarFromJson(t[1]));
    }
    return v;
}

inline Json toJson(const Tail& t) { return Json{{"kind", tailKindName(t.kind)}, {"param", t.param}}; }

inline Tail tailFromJson(const Json& j) {
    require(j.is_object() && j.contains("kind"), "tail must be an object with a kind");
    Tail t;
    try {
        t.kind = parseTailKind(j["kind"].get<std::string>());
    } catch (const std::exception& e) {
        throw FormatError(e.what());
    }
    t.param = j.value("param", 0);
    require(t.param >= 0, "tail param must be nonnegative");
    return t;
}

inline Json toJson(const Subspace& s) {
    Json gens = Json::array();
    for (auto& g : s.gens) gens.push_back(toJson(g));
    return Json{{"gens", gens}, {"tail", toJson(s.tail)}};
}

inline Subspace subspaceFromJson(const Json& j) {
    require(j.is_object(), "subspace must be an object");
    Subspace s;
    if (j.contains("gens")) {
        require(j["gens"].is_array(), "gens must be an array");
        for (auto& g : j["gens"]) s.gens.push_back(vecFromJson(g));
    }
    if (j.contains("tail")) s.tail = tailFromJson(j["tail"]);
    return s;
}

inline Json toJson(const Flag& fl) {
    Json out = tagged();
    out["family"] = familyName(fl.family);
    Json members = Json::array();
    for (auto& m : fl.members) members.push_back(toJson(m));
    out["members"] = members;
    return out;
}

// The family comes from the document or, failing that, from the caller; both present must agree.
inline Flag flagFromJson(const Json& j, std::optional<GroupFamily> family = std::nullopt) {
    checkSchema(j);
    Json members = j;
    if (j.is_object()) {
        require(j.contains("members"), "flag object needs members");
        members = j["members"];
        if (j.contains("family")) {
            GroupFamily f;
            try {
                f = parseFamily(j["family"].get<std::string>());
            } catch (const std::exception& e) {
                throw FormatError(e.what());
            }
            require(!family || *family == f, "flag family " + familyName(f) + " does not match " +
                                                  (family ? familyName(*family) : std::string()));
            family = f;
        }
    }
    require(family.has_value(), "flag has no family");
    require(members.is_array(), "members must be an array");
    Flag fl{*family, {}};
    for (auto& m : members) fl.members.push_back(subspaceFromJson(m));
    return fl;
}

// ---- maps and matrices ----

// g = I + Σ delta entries; {"delta": [[i, j, scalar], ...]}.
inline Json toJson(const FinitaryMap& g) {
    Json out = tagged();
    Json d = Json::array();
    for (auto& [k, c] : g.delta()) d.push_back(Json::array({k.first, k.second, toJson(c)}));
    out["delta"] = d;
    return out;
}

// Also accepts {"indices": [...], "block": [[...]]}, a dense block on those indices.
inline FinitaryMap mapFromJson(const Json& j) {
    checkSchema(j);
    require(j.is_object(), "map must be an object");
    FinitaryMap g;
    if (j.contains("delta")) {
        require(j["delta"].is_array(), "delta must be an array");
        for (auto& t : j["delta"]) {
            require(t.is_array() && t.size() == 3 && t[0].is_number_integer() && t[1].is_number_integer(),
                    "bad delta entry: " + t.dump());
            Index r = t[0].get<Index>(), c = t[1].get<Index>();
            require(r != 0 && c != 0, "basis index must be nonzero");
            g.setDelta(r, c, g.entry(r, c) - Scalar(r == c ? 1 : 0) + scalarFromJson(t[2]));
        }
        return g;
    }
    require(j.contains("indices") && j.contains("block"), "map needs delta or indices+block");
    std::vector<Index> idx;
    for (auto& i : j["indices"]) {
        require(i.is_number_integer() && i.get<Index>() != 0, "bad index: " + i.dump());
        idx.push_back(i.get<Index>());
    }
    const Json& b = j["block"];
    require(b.is_array() && b.size() == idx.size(), "block must be square over the indices");
    DenseMat m(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        require(b[r].is_array() && b[r].size() == idx.size(), "block must be square over the indices");
        for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = scalarFromJson(b[r][c]);
    }
    return FinitaryMap::fromBlock(idx, m);
}

inline Json toJson(const DenseMat& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(toJson(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline DenseMat matrixFromJson(const Json& j) {
    require(j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty(), "matrix must be a nonempty array of rows");
    DenseMat m(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        require(j[r].is_array() && j[r].size() == m.cols(), "matrix rows must have equal length");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = scalarFromJson(j[r][c]);
    }
    return m;
}

inline Json toJson(const DomainPoint& p) {
    Json out = tagged();
    out["family"] = familyName(p.family);
    out["side"] = sideName(p.side);
    if (p.family.tag == FamilyTag::SO2) out["component"] = p.component;
    out["matrix"] = toJson(p.Z);
    return out;
}

// A bare matrix, or an object with "matrix" and optional "side"/"component"/"family".
inline DomainPoint pointFromJson(const Json& j, std::optional<GroupFamily> family = std::nullopt) {
    checkSchema(j);
    DomainPoint p;
    if (j.is_array()) {
        p.Z = matrixFromJson(j);
    } else {
        require(j.is_object() && j.contains("matrix"), "point needs a matrix");
        p.Z = matrixFromJson(j["matrix"]);
        try {
            if (j.contains("family")) {
                GroupFamily f = parseFamily(j["family"].get<std::string>());
                require(!family || *family == f, "point family does not match");
                family = f;
            }
            if (j.contains("side")) p.side = parseSide(j["side"].get<std::string>());
        } catch (const FormatError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
        p.component = j.value("component", 0);
        require(p.component == 0 || p.component == 1, "component must be 0 or 1");
    }
    require(family.has_value(), "point has no family");
    p.family = *family;
    return p;
}

// ---- results ----

inline Json toJson(const OrbitLabel& L) {
    Json out = tagged();
    Json sigs = Json::array();
    for (auto& s : L.perMember) sigs.push_back(toJson(s));
    out["signatures"] = sigs;
    out["open"] = L.open;
    out["closed"] = L.closed;
    if (L.orientation != Orientation::NotApplicable) out["orientation"] = orientationName(L.orientation);
    if (!L.signs.empty()) out["signs"] = L.signs;
    return out;
}

inline Orientation parseOrientation(const std::string& s) {
    for (auto o : {Orientation::NotApplicable, Orientation::Undecided, Orientation::Positive, Orientation::Negative})
        if (orientationName(o) == s) return o;
    throw FormatError("unknown orientation: " + s);
}

inline OrbitLabel labelFromJson(const Json& j) {
    checkSchema(j);
    require(j.is_object() && j.contains("signatures"), "label needs signatures");
    OrbitLabel L;
    for (auto& s : j["signatures"]) L.perMember.push_back(signatureFromJson(s));
    L.open = j.value("open", false);
    L.closed = j.value("closed", false);
    if (j.contains("orientation")) L.orientation = parseOrientation(j["orientation"].get<std::string>());
    if (j.contains("signs")) L.signs = j["signs"].get<std::vector<int>>();
    return L;
}

}  // namespace limflag::json

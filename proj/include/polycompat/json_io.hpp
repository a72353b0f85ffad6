#pragma once

#include "polycompat/fixtures.hpp"
#include "polycompat/hypergraph.hpp"
#include "polycompat/inclusion.hpp"
#include "polycompat/magic.hpp"
#include "polycompat/polytope.hpp"
#include "polycompat/tuples.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace polycompat {
namespace io {

using nlohmann::json;

/// Rationals serialize as [num, den] integer pairs; components that do not
/// fit in 64 bits fall back to decimal strings, which the reader accepts
/// transparently, keeping round trips bit-exact.
inline json rational_json(const Rational& q) {
    auto encode = [](const BigInt& n) -> json {
        if (n >= std::numeric_limits<int64_t>::min() && n <= std::numeric_limits<int64_t>::max())
            return n.convert_to<int64_t>();
        return n.str();
    };
    return json::array({encode(rat_num(q)), encode(rat_den(q))});
}

inline Rational rational_from(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("rational: expected [num, den]");
    auto decode = [](const json& e) -> BigInt {
        if (e.is_string()) return BigInt(e.get<std::string>());
        if (e.is_number_integer()) return BigInt(e.get<int64_t>());
        throw std::invalid_argument("rational: component must be integer or string");
    };
    BigInt num = decode(j[0]);
    BigInt den = decode(j[1]);
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline json rvector_json(const RVector& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(rational_json(e));
    return a;
}

inline RVector rvector_from(const json& j) {
    RVector v;
    for (const auto& e : j) v.push_back(rational_from(e));
    return v;
}

inline json rmatrix_json(const RMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rational_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RMatrix rmatrix_from(const json& j) {
    int rows = static_cast<int>(j.size());
    int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
    RMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c) m.at(i, c) = rational_from(j[i][c]);
    return m;
}

// --- polytopes -------------------------------------------------------------

inline json polytope_json(const Polytope& p) {
    json j;
    j["g"] = p.g();
    json vs = json::array();
    for (const auto& v : p.vertices()) vs.push_back(rvector_json(v));
    j["vertices"] = std::move(vs);
    json fs = json::array();
    for (const auto& f : p.facets()) fs.push_back(rvector_json(f));
    j["facets"] = std::move(fs);
    j["label"] = p.label();
    return j;
}

inline Polytope polytope_from(const json& j) {
    const int g = j.at("g").get<int>();
    std::string label = j.value("label", "");
    auto read_list = [&](const char* key) {
        std::vector<RVector> out;
        for (const auto& row : j.at(key)) {
            RVector v = rvector_from(row);
            if (static_cast<int>(v.size()) != g)
                throw std::invalid_argument("polytope: vector length != g");
            out.push_back(std::move(v));
        }
        return out;
    };
    bool have_v = j.contains("vertices") && !j.at("vertices").empty();
    bool have_f = j.contains("facets") && !j.at("facets").empty();
    if (have_v && have_f)
        return Polytope::from_both(read_list("vertices"), read_list("facets"), label);
    if (have_v) return Polytope::from_vertices(read_list("vertices"), label);
    if (have_f) return Polytope::from_facets(read_list("facets"), label);
    throw std::invalid_argument("polytope: need vertices or facets");
}

// --- Hermitian matrices (exact backend) -------------------------------------

inline json herm_json(const HermX& m) {
    json entries = json::array();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j <= i; ++j) {
            GRational z = m(i, j);
            json e = json::array();
            json re = rational_json(z.re), im = rational_json(z.im);
            e.push_back(re[0]);
            e.push_back(re[1]);
            e.push_back(im[0]);
            e.push_back(im[1]);
            entries.push_back(std::move(e));
        }
    return json{{"d", m.dim()}, {"entries", std::move(entries)}};
}

inline HermX herm_from(const json& j) {
    const int d = j.at("d").get<int>();
    HermX m(d);
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != d * (d + 1) / 2)
        throw std::invalid_argument("hermitian: wrong lower-triangle length");
    int idx = 0;
    for (int i = 0; i < d; ++i)
        for (int jj = 0; jj <= i; ++jj, ++idx) {
            const auto& e = entries[idx];
            if (e.size() != 4) throw std::invalid_argument("hermitian: entry needs 4 components");
            Rational re = rational_from(json::array({e[0], e[1]}));
            Rational im = rational_from(json::array({e[2], e[3]}));
            if (i == jj && im != 0)
                throw std::invalid_argument("hermitian: diagonal entry must be real");
            m.set(i, jj, GRational(re, im));
        }
    return m;
}

inline json tuple_json(const TupleX& t) {
    json ms = json::array();
    for (const auto& m : t.entries) ms.push_back(herm_json(m));
    return json{{"mode", "tuple"}, {"matrices", std::move(ms)}};
}

inline TupleX tuple_from(const json& j) {
    std::vector<HermX> ms;
    for (const auto& m : j.at("matrices")) ms.push_back(herm_from(m));
    return TupleX(std::move(ms));
}

inline json povm_json(const PovmX& p) {
    json ms = json::array();
    for (const auto& m : p.elements) ms.push_back(herm_json(m));
    return json{{"mode", p.mode == PovmMode::Povm ? "povm" : "sub-povm"},
                {"matrices", std::move(ms)}};
}

inline PovmX povm_from(const json& j) {
    std::vector<HermX> ms;
    for (const auto& m : j.at("matrices")) ms.push_back(herm_from(m));
    PovmMode mode = j.at("mode").get<std::string>() == "sub-povm" ? PovmMode::SubPovm
                                                                  : PovmMode::Povm;
    return make_povm(std::move(ms), mode);
}

// --- hypergraphs and charts --------------------------------------------------

inline json hypergraph_json(const ProbabilityHypergraph& g) {
    return json{{"vertices", g.vertex_count}, {"edges", g.edges}};
}

inline ProbabilityHypergraph hypergraph_from(const json& j) {
    ProbabilityHypergraph g;
    g.vertex_count = j.at("vertices").get<int>();
    g.edges = j.at("edges").get<std::vector<std::vector<int>>>();
    g.validate_shape();
    return g;
}

inline json chart_json(const HypergraphChart& c) {
    json j;
    j["base"] = rvector_json(c.base);
    json basis = json::array();
    for (const auto& b : c.basis) basis.push_back(rvector_json(b));
    j["basis"] = std::move(basis);
    return j;
}

inline HypergraphChart chart_from(const json& j) {
    HypergraphChart c;
    c.base = rvector_from(j.at("base"));
    for (const auto& b : j.at("basis")) c.basis.push_back(rvector_from(b));
    return c;
}

// --- certificates -------------------------------------------------------------

inline json scaling_certificate_json(const ScalingCertificate& c) {
    return json{{"polytope_hash", std::to_string(c.polytope_hash())},
                {"s", rvector_json(c.s())},
                {"T", rmatrix_json(c.t())}};
}

/// Deserialization re-verifies the exact identity against the polytope and
/// refuses certificates bound to a different vertex/facet order.
inline ScalingCertificate scaling_certificate_from(const json& j, const Polytope& p) {
    uint64_t hash = std::stoull(j.at("polytope_hash").get<std::string>());
    if (hash != p.content_hash())
        throw std::invalid_argument("scaling certificate bound to a different polytope");
    return ScalingCertificate(p, rvector_from(j.at("s")), rmatrix_from(j.at("T")));
}

inline json compat_certificate_json(const CertificateX& c) {
    return json{{"polytope_hash", std::to_string(c.polytope_hash)}, {"povm", povm_json(c.povm)}};
}

inline CertificateX compat_certificate_from(const json& j, const Polytope& p) {
    CertificateX c;
    c.polytope_hash = std::stoull(j.at("polytope_hash").get<std::string>());
    if (c.polytope_hash != p.content_hash())
        throw std::invalid_argument("compat certificate bound to a different polytope");
    c.povm = povm_from(j.at("povm"));
    return c;
}

// --- magic squares --------------------------------------------------------------

inline json magic_json(const MagicX& m) {
    json blocks = json::array();
    for (const auto& b : m.blocks) blocks.push_back(herm_json(b));
    return json{{"N", m.n}, {"d", m.dim()}, {"blocks", std::move(blocks)}};
}

inline MagicX magic_from(const json& j) {
    MagicX m;
    m.n = j.at("N").get<int>();
    for (const auto& b : j.at("blocks")) m.blocks.push_back(herm_from(b));
    if (static_cast<int>(m.blocks.size()) != m.n * m.n)
        throw std::invalid_argument("magic square: wrong block count");
    return m;
}

// --- files -------------------------------------------------------------------

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace io
} // namespace polycompat

#include "siegel/serialize.hpp"

#include <sstream>

namespace siegel {

json field_spec_to_json(const FieldPtr& f) {
    json j;
    switch (f->kind) {
        case FieldKind::Rationals:
            j["kind"] = "rationals";
            break;
        case FieldKind::Finite: {
            j["kind"] = "finite";
            j["p"] = std::to_string(f->p);
            j["e"] = f->e;
            json mod = json::array();
            for (long c : f->modulus) mod.push_back(std::to_string(c));
            j["modulus"] = mod;
            break;
        }
        case FieldKind::RatFunc:
            j["kind"] = "ratfunc";
            j["base"] = field_spec_to_json(f->base);
            j["var"] = f->var;
            break;
    }
    return j;
}

FieldPtr field_spec_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "finite") {
        long p = std::stol(j.at("p").get<std::string>());
        if (j.contains("modulus")) {
            std::vector<long> mod;
            for (const auto& c : j.at("modulus")) mod.push_back(std::stol(c.get<std::string>()));
            return FieldSpec::finite(p, mod);
        }
        int e = j.value("e", 1);
        return FieldSpec::finite(p, e);
    }
    if (kind == "ratfunc")
        return FieldSpec::ratfunc(field_spec_from_json(j.at("base")), j.at("var").get<std::string>());
    throw ParseError("unknown field kind: " + kind);
}

FieldPtr parse_field_shorthand(const std::string& text) {
    if (!text.empty() && text[0] == '{') return field_spec_from_json(json::parse(text));
    if (text == "rationals" || text == "q" || text == "Q") return FieldSpec::rationals();
    if (text == "qt" || text == "rationals_t") return FieldSpec::ratfunc(FieldSpec::rationals(), "theta");
    std::string body = text;
    if (body.empty() || (body[0] != 'f' && body[0] != 'F' && body[0] != 'q' && body[0] != 'Q'))
        throw ParseError("unknown field shorthand: " + text);
    body = body.substr(1);
    bool with_theta = false;
    if (!body.empty() && body.back() == 't') {
        with_theta = true;
        body.pop_back();
    }
    if (body.empty()) throw ParseError("unknown field shorthand: " + text);
    long q = 0;
    try {
        q = std::stol(body);
    } catch (...) {
        throw ParseError("unknown field shorthand: " + text);
    }
    // factor q = p^e
    long p = q;
    int e = 1;
    for (long d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            long v = q;
            e = 0;
            while (v % d == 0) {
                v /= d;
                ++e;
            }
            if (v != 1) throw ParseError("field order must be a prime power: " + text);
            p = d;
            break;
        }
    }
    FieldPtr base = FieldSpec::finite(p, e);
    return with_theta ? FieldSpec::ratfunc(base, "theta") : base;
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const json& j, const FieldPtr& field, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError("matrix row count mismatch");
    Mat m(field, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("matrix column count mismatch");
        for (int c = 0; c < cols; ++c)
            m.set(i, c, parse_value(field, row[static_cast<size_t>(c)].get<std::string>()));
    }
    return m;
}

namespace {

std::string quad_key(int u, int v, int y, int z) {
    std::ostringstream os;
    os << u << "," << v << "," << y << "," << z;
    return os.str();
}

std::array<int, 4> parse_quad_key(const std::string& s) {
    std::array<int, 4> q{};
    std::istringstream is(s);
    char comma;
    if (!(is >> q[0] >> comma >> q[1] >> comma >> q[2] >> comma >> q[3]))
        throw ParseError("bad index key: " + s);
    return q;
}

}  // namespace

json siegel_to_json(const SiegelObject& S, const std::string& type) {
    json j;
    j["type"] = type;
    j["field"] = field_spec_to_json(S.field());
    j["m"] = S.m();
    j["k"] = S.k();
    json entries = json::object();
    for (const TetraIndex& t : tetra_indices(S.m()))
        entries[quad_key(t.u, t.u - 1, t.y, t.z)] = mat_to_json(S.at(t));
    j["entries"] = entries;
    return j;
}

SiegelObject siegel_from_json(const json& j) {
    FieldPtr field = field_spec_from_json(j.at("field"));
    int m = j.at("m").get<int>();
    std::vector<int> k = j.at("k").get<std::vector<int>>();
    SiegelObject S(field, m, k);
    const json& entries = j.at("entries");
    for (const TetraIndex& t : tetra_indices(m)) {
        std::string key = quad_key(t.u, t.u - 1, t.y, t.z);
        if (!entries.contains(key)) {
            if (S.k_at(t.u) == 0 || S.k_at(t.y) == 0) continue;
            throw ParseError("missing Siegel entry " + key);
        }
        S.set(t.u, t.y, t.z, mat_from_json(entries.at(key), field, S.k_at(t.u), S.k_at(t.y)));
    }
    return S;
}

json ptable_to_json(const PTable& P) {
    json j;
    j["type"] = "ptable";
    j["field"] = field_spec_to_json(P.field());
    j["m"] = P.m();
    j["k"] = P.k();
    json entries = json::object();
    for (const auto& [key, mat] : P.entries())
        entries[quad_key(key[0], key[1], key[2], key[3])] = mat_to_json(mat);
    j["entries"] = entries;
    return j;
}

json instance_to_json(const LatticeInstance& L) {
    json j;
    j["type"] = "lattice";
    j["field"] = field_spec_to_json(L.field);
    j["m"] = L.m();
    j["d"] = L.jordan.d.parts;
    json basis = json::array();
    for (const Mat& v : L.basis) {
        json vec = json::array();
        for (int i = 0; i < v.rows(); ++i) vec.push_back(v.at(i, 0).str());
        basis.push_back(std::move(vec));
    }
    j["basis"] = basis;
    return j;
}

LatticeInstance instance_from_json(const json& j) {
    LatticeInstance L;
    L.field = field_spec_from_json(j.at("field"));
    int m = j.at("m").get<int>();
    PartitionWithZeroes d(j.at("d").get<std::vector<int>>());
    L.jordan = jordan_data(d, m);
    const json& basis = j.at("basis");
    if (static_cast<int>(basis.size()) != L.r()) throw ParseError("basis must list r vectors");
    for (const auto& vec : basis) {
        if (static_cast<int>(vec.size()) != L.n()) throw ParseError("basis vector has wrong dimension");
        Mat v(L.field, L.n(), 1);
        for (int i = 0; i < L.n(); ++i)
            v.set(i, 0, parse_value(L.field, vec[static_cast<size_t>(i)].get<std::string>()));
        L.basis.push_back(std::move(v));
    }
    return L;
}

json laurent_to_json(const LaurentSeries& s) {
    json j;
    j["type"] = "laurent";
    j["field"] = field_spec_to_json(s.field());
    j["kappa"] = s.kappa();
    j["truncation"] = s.truncation();
    json coeffs = json::object();
    for (int e = -s.kappa(); e <= s.truncation(); ++e) {
        FieldValue c = s.coeff(e);
        if (!c.is_zero()) coeffs[std::to_string(e)] = c.str();
    }
    j["coeffs"] = coeffs;
    return j;
}

}  // namespace siegel

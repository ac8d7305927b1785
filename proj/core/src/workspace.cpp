#include "lie2kit/workspace.hpp"

#include <fstream>

namespace lie2kit::workspace {

namespace {

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw WorkspaceError(path, std::string("missing field '") + key + "'");
    return j.at(key);
}

int need_int(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number_integer() || v.get<long>() < 0)
        throw WorkspaceError(path + "." + key, "expected a nonnegative integer");
    return v.get<int>();
}

Rational parse_rat(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw WorkspaceError(path, "rationals must be strings like \"-3/7\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw WorkspaceError(path, e.what());
    }
}

const json& section(const json& ws, const char* kind, const std::string& name) {
    if (!ws.contains(kind))
        throw WorkspaceError(kind, "section not present while resolving '" + name + "'");
    const json& sec = ws.at(kind);
    if (!sec.contains(name))
        throw WorkspaceError(std::string(kind) + "." + name, "unresolved reference");
    return sec.at(name);
}

}  // namespace

json read_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw WorkspaceError(filename, "cannot open file");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw WorkspaceError(filename, std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw WorkspaceError(filename, "workspace root must be an object");
    return j;
}

void write_file(const std::string& filename, const json& ws) {
    std::ofstream out(filename);
    if (!out) throw WorkspaceError(filename, "cannot open file for writing");
    out << ws.dump(2) << "\n";
}

RationalMatrix parse_matrix(const json& j, int rows, int cols, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw WorkspaceError(path, "expected " + std::to_string(rows) + " matrix rows");
    RationalMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw WorkspaceError(path + "[" + std::to_string(i) + "]",
                                 "expected " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k)
            m.at(i, k) = parse_rat(row.at(k), path + "[" + std::to_string(i) + "]");
    }
    return m;
}

MultiTensor parse_tensor(const json& j, int p, int q, int dim_anti, int dim_sym, int target,
                         const std::string& path) {
    if (!j.is_array()) throw WorkspaceError(path, "expected a list of tensor entries");
    MultiTensor t(p, q, dim_anti, dim_sym, target);
    int n = 0;
    for (const json& e : j) {
        std::string ep = path + "[" + std::to_string(n++) + "]";
        if (!e.is_array() || e.size() != 3)
            throw WorkspaceError(ep, "entries are [indices, out, value]");
        const json& idx = e.at(0);
        if (!idx.is_array() || static_cast<int>(idx.size()) != p + q)
            throw WorkspaceError(ep, "expected " + std::to_string(p + q) + " input indices");
        std::vector<int> anti, sym;
        for (int k = 0; k < p; ++k) {
            int v = idx.at(k).get<int>();
            if (v < 0 || v >= dim_anti) throw WorkspaceError(ep, "antisymmetric index out of range");
            anti.push_back(v);
        }
        for (int k = p; k < p + q; ++k) {
            int v = idx.at(k).get<int>();
            if (v < 0 || v >= dim_sym) throw WorkspaceError(ep, "symmetric index out of range");
            sym.push_back(v);
        }
        int out = e.at(1).get<int>();
        if (out < 0 || out >= target) throw WorkspaceError(ep, "output index out of range");
        t.add(anti, sym, out, parse_rat(e.at(2), ep));
    }
    return t;
}

TwoTermSpace parse_space(const json& j, const std::string& path) {
    int d0 = need_int(j, "dim0", path);
    int d1 = need_int(j, "dim1", path);
    RationalMatrix diff = parse_matrix(need(j, "diff", path), d0, d1, path + ".diff");
    return TwoTermSpace(d0, d1, std::move(diff));
}

Lie2Algebra get_algebra(const json& ws, const std::string& name) {
    const json& j = section(ws, "algebras", name);
    std::string path = "algebras." + name;
    TwoTermSpace s = parse_space(need(j, "space", path), path + ".space");
    int d0 = s.dim0, d1 = s.dim1;
    Lie2Algebra g(std::move(s));
    g.l2_00 = parse_tensor(need(j, "l2_00", path), 2, 0, d0, d1, d0, path + ".l2_00");
    g.l2_01 = parse_tensor(need(j, "l2_01", path), 1, 1, d0, d1, d1, path + ".l2_01");
    g.l3 = parse_tensor(need(j, "l3", path), 3, 0, d0, d1, d1, path + ".l3");
    return g;
}

Lie2Module get_module(const json& ws, const std::string& name) {
    const json& j = section(ws, "modules", name);
    std::string path = "modules." + name;
    Lie2Algebra g = get_algebra(ws, need(j, "algebra", path).get<std::string>());
    TwoTermSpace v = parse_space(need(j, "space", path), path + ".space");
    int g0 = g.space.dim0, g1 = g.space.dim1;
    int v0 = v.dim0, v1 = v.dim1;
    Lie2Module m(std::move(g), std::move(v));
    m.act00 = parse_tensor(need(j, "act00", path), 1, 1, g0, v0, v0, path + ".act00");
    m.act01 = parse_tensor(need(j, "act01", path), 1, 1, g0, v1, v1, path + ".act01");
    m.act10 = parse_tensor(need(j, "act10", path), 1, 1, g1, v0, v1, path + ".act10");
    m.act2 = parse_tensor(need(j, "act2", path), 2, 1, g0, v0, v1, path + ".act2");
    return m;
}

Lie2Hom get_hom(const json& ws, const std::string& name) {
    const json& j = section(ws, "homomorphisms", name);
    std::string path = "homomorphisms." + name;
    Lie2Algebra src = get_algebra(ws, need(j, "source", path).get<std::string>());
    Lie2Algebra dst = get_algebra(ws, need(j, "target", path).get<std::string>());
    RationalMatrix m0 = parse_matrix(need(j, "m0", path), dst.space.dim0, src.space.dim0,
                                     path + ".m0");
    RationalMatrix m1 = parse_matrix(need(j, "m1", path), dst.space.dim1, src.space.dim1,
                                     path + ".m1");
    MultiTensor phi2 = parse_tensor(need(j, "phi2", path), 2, 0, src.space.dim0, src.space.dim1,
                                    dst.space.dim1, path + ".phi2");
    return make_hom(src, dst, GradedMap(std::move(m0), std::move(m1)), std::move(phi2));
}

CrossedModule get_crossed_module(const json& ws, const std::string& name) {
    const json& j = section(ws, "crossed_modules", name);
    std::string path = "crossed_modules." + name;
    Lie2Algebra m = get_algebra(ws, need(j, "m", path).get<std::string>());
    Lie2Algebra g = get_algebra(ws, need(j, "g", path).get<std::string>());
    Lie2Module base = get_module(ws, need(j, "module", path).get<std::string>());
    if (base.algebra.space.dim0 != g.space.dim0 || base.space.dim0 != m.space.dim0 ||
        base.algebra.space.dim1 != g.space.dim1 || base.space.dim1 != m.space.dim1)
        throw WorkspaceError(path + ".module", "action shapes do not match m and g");
    MultiTensor lphi0 = parse_tensor(need(j, "lphi0", path), 2, 1, m.space.dim0, g.space.dim0,
                                     m.space.dim1, path + ".lphi0");
    RationalMatrix p0 = parse_matrix(need(j, "phi_m0", path), g.space.dim0, m.space.dim0,
                                     path + ".phi_m0");
    RationalMatrix p1 = parse_matrix(need(j, "phi_m1", path), g.space.dim1, m.space.dim1,
                                     path + ".phi_m1");
    MultiTensor phi2 = parse_tensor(need(j, "phi2", path), 2, 0, m.space.dim0, m.space.dim1,
                                    g.space.dim1, path + ".phi2");
    MultiTensor sigma = parse_tensor(need(j, "sigma", path), 1, 1, g.space.dim0, m.space.dim0,
                                     g.space.dim1, path + ".sigma");
    try {
        return make_crossed_module(std::move(m), std::move(g),
                                   DerivAction(std::move(base), std::move(lphi0)),
                                   GradedMap(std::move(p0), std::move(p1)), std::move(phi2),
                                   std::move(sigma));
    } catch (const std::runtime_error& e) {
        throw WorkspaceError(path, e.what());
    }
}

namespace {

Cochain parse_blocks(const json& blocks, int degree, const Lie2Module& m,
                     const std::string& path) {
    Cochain c(degree, m.algebra.space.dim0, m.algebra.space.dim1, m.space.dim0, m.space.dim1);
    if (!blocks.is_array()) throw WorkspaceError(path, "blocks must be a list");
    int n = 0;
    for (const json& b : blocks) {
        std::string bp = path + "[" + std::to_string(n++) + "]";
        int p = need_int(b, "p", bp), q = need_int(b, "q", bp), s = need_int(b, "s", bp);
        if (s != 0 && s != 1) throw WorkspaceError(bp, "s must be 0 or 1");
        if (p + 2 * q - s != degree) throw WorkspaceError(bp, "block degree mismatch");
        c.set(p, q, s,
              parse_tensor(need(b, "entries", bp), p, q, m.algebra.space.dim0,
                           m.algebra.space.dim1, s == 0 ? m.space.dim0 : m.space.dim1,
                           bp + ".entries"));
    }
    return c;
}

}  // namespace

Cochain get_cochain(const json& ws, const std::string& name) {
    const json& j = section(ws, "cochains", name);
    std::string path = "cochains." + name;
    Lie2Module m = get_module(ws, need(j, "module", path).get<std::string>());
    int degree = need(j, "degree", path).get<int>();
    return parse_blocks(need(j, "blocks", path), degree, m, path + ".blocks");
}

Lie3Algebra get_lie3(const json& ws, const std::string& name) {
    const json& j = section(ws, "lie3_algebras", name);
    std::string path = "lie3_algebras." + name;
    int d0 = need_int(j, "dim0", path), d1 = need_int(j, "dim1", path), d2 = need_int(j, "dim2", path);
    RationalMatrix d10 = parse_matrix(need(j, "diff10", path), d0, d1, path + ".diff10");
    RationalMatrix d21 = parse_matrix(need(j, "diff21", path), d1, d2, path + ".diff21");
    Lie3Algebra t;
    try {
        t = Lie3Algebra(ThreeTermSpace(d0, d1, d2, std::move(d10), std::move(d21)));
    } catch (const std::runtime_error& e) {
        throw WorkspaceError(path, e.what());
    }
    t.l2_00 = parse_tensor(need(j, "l2_00", path), 2, 0, d0, 0, d0, path + ".l2_00");
    t.l2_01 = parse_tensor(need(j, "l2_01", path), 1, 1, d0, d1, d1, path + ".l2_01");
    t.l2_02 = parse_tensor(need(j, "l2_02", path), 1, 1, d0, d2, d2, path + ".l2_02");
    t.l2_11 = parse_tensor(need(j, "l2_11", path), 0, 2, 0, d1, d2, path + ".l2_11");
    t.l3_000 = parse_tensor(need(j, "l3_000", path), 3, 0, d0, 0, d1, path + ".l3_000");
    t.l3_001 = parse_tensor(need(j, "l3_001", path), 2, 1, d0, d1, d2, path + ".l3_001");
    return t;
}

SpliceSetup get_splice(const json& ws, const std::string& name) {
    const json& j = section(ws, "splices", name);
    std::string path = "splices." + name;
    SpliceSetup out;
    out.ses.v = get_module(ws, need(j, "v", path).get<std::string>());
    out.ses.i = get_module(ws, need(j, "i", path).get<std::string>());
    out.ses.q = get_module(ws, need(j, "q", path).get<std::string>());
    out.ses.p = GradedMap(parse_matrix(need(j, "p_m0", path), out.ses.i.space.dim0,
                                       out.ses.v.space.dim0, path + ".p_m0"),
                          parse_matrix(need(j, "p_m1", path), out.ses.i.space.dim1,
                                       out.ses.v.space.dim1, path + ".p_m1"));
    out.ses.r = GradedMap(parse_matrix(need(j, "q_m0", path), out.ses.q.space.dim0,
                                       out.ses.i.space.dim0, path + ".q_m0"),
                          parse_matrix(need(j, "q_m1", path), out.ses.q.space.dim1,
                                       out.ses.i.space.dim1, path + ".q_m1"));
    out.lambda = get_cochain(ws, need(j, "lambda", path).get<std::string>());
    return out;
}

GaugeSetup get_gauge(const json& ws, const std::string& name) {
    const json& j = section(ws, "gauge_setups", name);
    std::string path = "gauge_setups." + name;
    GaugeSetup out;
    out.datum.g = get_algebra(ws, need(j, "algebra", path).get<std::string>());
    int g0 = out.datum.g.space.dim0, g1 = out.datum.g.space.dim1;
    std::vector<Vec> b0, b1;
    const json& i0 = need(j, "ideal0", path);
    for (size_t k = 0; k < i0.size(); ++k) {
        Vec v(g0);
        const json& row = i0.at(k);
        if (static_cast<int>(row.size()) != g0)
            throw WorkspaceError(path + ".ideal0", "vector length mismatch");
        for (int t = 0; t < g0; ++t) v[t] = parse_rat(row.at(t), path + ".ideal0");
        b0.push_back(std::move(v));
    }
    const json& i1 = need(j, "ideal1", path);
    for (size_t k = 0; k < i1.size(); ++k) {
        Vec v(g1);
        const json& row = i1.at(k);
        if (static_cast<int>(row.size()) != g1)
            throw WorkspaceError(path + ".ideal1", "vector length mismatch");
        for (int t = 0; t < g1; ++t) v[t] = parse_rat(row.at(t), path + ".ideal1");
        b1.push_back(std::move(v));
    }
    out.datum.k = GradedSubspace(b0, b1, g0, g1);
    out.datum.v = get_module(ws, need(j, "module", path).get<std::string>());
    out.datum.lambda = get_cochain(ws, need(j, "lambda", path).get<std::string>());
    out.a = get_cochain(ws, need(j, "a", path).get<std::string>());
    // R lives on the quotient; shape it against the derived context
    LambdaContext ctx = lambda_context(out.datum);
    out.r_on_h = parse_blocks(need(j, "r", path), 2, ctx.hv, path + ".r");
    return out;
}

std::string entity_kind(const json& ws, const std::string& name) {
    for (const char* kind : {"spaces", "algebras", "modules", "homomorphisms", "crossed_modules",
                             "cochains", "lie3_algebras", "splices", "gauge_setups"})
        if (ws.contains(kind) && ws.at(kind).contains(name)) return kind;
    return "";
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

json matrix_to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json tensor_to_json(const MultiTensor& t) {
    json entries = json::array();
    for (int c = 0; c < t.cols(); ++c) {
        std::vector<int> anti, sym;
        t.indexer().tuple(c, anti, sym);
        for (int k = 0; k < t.target_dim(); ++k) {
            const Rational& v = t.coeffs().at(k, c);
            if (v.is_zero()) continue;
            json idx = json::array();
            for (int i : anti) idx.push_back(i);
            for (int i : sym) idx.push_back(i);
            entries.push_back(json::array({idx, k, v.str()}));
        }
    }
    return entries;
}

json space_to_json(const TwoTermSpace& s) {
    json j;
    j["dim0"] = s.dim0;
    j["dim1"] = s.dim1;
    j["diff"] = matrix_to_json(s.diff);
    return j;
}

json algebra_to_json(const Lie2Algebra& g) {
    json j;
    j["space"] = space_to_json(g.space);
    j["l2_00"] = tensor_to_json(g.l2_00);
    j["l2_01"] = tensor_to_json(g.l2_01);
    j["l3"] = tensor_to_json(g.l3);
    return j;
}

json module_to_json(const Lie2Module& m, const std::string& algebra_name) {
    json j;
    j["algebra"] = algebra_name;
    j["space"] = space_to_json(m.space);
    j["act00"] = tensor_to_json(m.act00);
    j["act01"] = tensor_to_json(m.act01);
    j["act10"] = tensor_to_json(m.act10);
    j["act2"] = tensor_to_json(m.act2);
    return j;
}

json hom_to_json(const Lie2Hom& f, const std::string& source, const std::string& target) {
    json j;
    j["source"] = source;
    j["target"] = target;
    j["m0"] = matrix_to_json(f.maps.m0);
    j["m1"] = matrix_to_json(f.maps.m1);
    j["phi2"] = tensor_to_json(f.phi2);
    return j;
}

json crossed_module_to_json(const CrossedModule& cm, const std::string& m_name,
                            const std::string& g_name, const std::string& module_name) {
    json j;
    j["m"] = m_name;
    j["g"] = g_name;
    j["module"] = module_name;
    j["lphi0"] = tensor_to_json(cm.action.lphi0);
    j["phi_m0"] = matrix_to_json(cm.phi.m0);
    j["phi_m1"] = matrix_to_json(cm.phi.m1);
    j["phi2"] = tensor_to_json(cm.phi2);
    j["sigma"] = tensor_to_json(cm.sigma);
    return j;
}

json cochain_blocks_to_json(const Cochain& c) {
    json blocks = json::array();
    for (const auto& [k, t] : c.blocks()) {
        json b;
        b["p"] = k.p;
        b["q"] = k.q;
        b["s"] = k.s;
        b["entries"] = tensor_to_json(t);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

json cochain_to_json(const Cochain& c, const std::string& algebra_name,
                     const std::string& module_name) {
    json j;
    j["algebra"] = algebra_name;
    j["module"] = module_name;
    j["degree"] = c.degree();
    j["blocks"] = cochain_blocks_to_json(c);
    return j;
}

json lie3_to_json(const Lie3Algebra& t) {
    json j;
    j["dim0"] = t.space.dim0;
    j["dim1"] = t.space.dim1;
    j["dim2"] = t.space.dim2;
    j["diff10"] = matrix_to_json(t.space.diff10);
    j["diff21"] = matrix_to_json(t.space.diff21);
    j["l2_00"] = tensor_to_json(t.l2_00);
    j["l2_01"] = tensor_to_json(t.l2_01);
    j["l2_02"] = tensor_to_json(t.l2_02);
    j["l2_11"] = tensor_to_json(t.l2_11);
    j["l3_000"] = tensor_to_json(t.l3_000);
    j["l3_001"] = tensor_to_json(t.l3_001);
    return j;
}

}  // namespace lie2kit::workspace

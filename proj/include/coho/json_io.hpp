#pragma once

#include "coho/cohomology.hpp"
#include "coho/extensions.hpp"
#include "coho/haar.hpp"
#include "coho/lie.hpp"
#include "coho/ses.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace coho {

/// Insertion-ordered JSON so that emitted reports have a deliberate field
/// order and parse/re-emit round trips are byte identical.
using js = nlohmann::ordered_json;

inline js parse_json_text(const std::string& text, const std::string& where) {
    try {
        return js::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("bad-json", where + ": " + e.what());
    }
}

inline js parse_json_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw ValidationError("missing-file", "input file '" + path + "' does not exist");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("missing-file", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

namespace detail {

inline const js& field(const js& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw ValidationError("bad-json", std::string("missing field '") + name + "'");
    return j.at(name);
}

inline i64 as_int(const js& j, const char* what) {
    if (!j.is_number_integer())
        throw ValidationError("bad-json", std::string(what) + " must be an integer");
    return j.get<i64>();
}

inline Rat as_rational(const js& j, const char* what) {
    if (j.is_number_integer()) return Rat(j.get<i64>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ValidationError("bad-json", std::string(what) + " must be an integer or a 'p/q' string");
}

inline std::vector<std::vector<i64>> as_int_matrix(const js& j, const char* what) {
    if (!j.is_array())
        throw ValidationError("bad-json", std::string(what) + " must be an array of rows");
    std::vector<std::vector<i64>> out;
    for (const js& row : j) {
        if (!row.is_array())
            throw ValidationError("bad-json", std::string(what) + " rows must be arrays");
        std::vector<i64> r;
        for (const js& v : row) r.push_back(as_int(v, what));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Groups: {"elements": [labels], "table": [[indices]]}

inline js group_to_json(const FiniteGroup& g) {
    js j;
    j["elements"] = g.elements;
    j["table"] = g.table;
    return j;
}

inline FiniteGroup group_from_json(const js& j, int cap = kDefaultGroupCap) {
    const js& elems = detail::field(j, "elements");
    if (!elems.is_array())
        throw ValidationError("bad-json", "'elements' must be an array of labels");
    std::vector<std::string> labels;
    for (const js& e : elems) {
        if (!e.is_string())
            throw ValidationError("bad-json", "element labels must be strings");
        labels.push_back(e.get<std::string>());
    }
    auto rows = detail::as_int_matrix(detail::field(j, "table"), "'table'");
    std::vector<std::vector<int>> table;
    for (const auto& r : rows) {
        std::vector<int> row;
        for (i64 v : r) {
            if (v < 0 || v >= static_cast<i64>(labels.size()))
                throw ValidationError("invalid-group", "table index out of range");
            row.push_back(static_cast<int>(v));
        }
        table.push_back(std::move(row));
    }
    return group_from_table(std::move(labels), std::move(table), cap);
}

/// Shorthand group specs: "cyclic:n", "product:n1,n2,...", "dihedral:n"
/// (2n elements), "dicyclic:n" (4n elements), "a4"; anything else is a path
/// to a group JSON file.
inline FiniteGroup group_from_spec(const std::string& spec, int cap = kDefaultGroupCap) {
    auto number = [&](const std::string& s) -> i64 {
        try {
            size_t used = 0;
            i64 v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError("bad-spec", "expected a number in group spec '" + spec + "'");
        }
    };
    if (spec.rfind("cyclic:", 0) == 0) return cyclic_group(number(spec.substr(7)), cap);
    if (spec.rfind("product:", 0) == 0) {
        std::vector<i64> moduli;
        std::stringstream ss(spec.substr(8));
        std::string part;
        while (std::getline(ss, part, ',')) moduli.push_back(number(part));
        return product_group(moduli, cap);
    }
    if (spec.rfind("dihedral:", 0) == 0)
        return dihedral_group(static_cast<int>(number(spec.substr(9))));
    if (spec.rfind("dicyclic:", 0) == 0)
        return dicyclic_group(static_cast<int>(number(spec.substr(9))));
    if (spec == "a4") return alternating4_group();
    return group_from_json(parse_json_file(spec), cap);
}

// ---------------------------------------------------------------------------
// Modules: {"moduli": [...], "action": {"kind": "trivial"}} or
//          {"moduli": [...], "action": {"kind": "matrices",
//                                       "matrices": {label: [[int]]}}}

inline js module_to_json(const GModule& m) {
    js j;
    j["moduli"] = m.carrier.moduli;
    js action;
    if (m.trivial) {
        action["kind"] = "trivial";
    } else {
        action["kind"] = "matrices";
        js mats;
        for (int s = 0; s < m.group().order(); ++s) mats[m.group().elements[s]] = m.act[s];
        action["matrices"] = mats;
    }
    j["action"] = action;
    return j;
}

inline GModule module_from_json(const FiniteGroup& g, const js& j) {
    const js& mod = detail::field(j, "moduli");
    if (!mod.is_array()) throw ValidationError("bad-json", "'moduli' must be an array");
    FiniteAbelianGroup a;
    for (const js& v : mod) a.moduli.push_back(detail::as_int(v, "modulus"));
    const js& action = detail::field(j, "action");
    std::string kind = detail::field(action, "kind").get<std::string>();
    if (kind == "trivial") return trivial_module(g, std::move(a));
    if (kind != "matrices")
        throw ValidationError("bad-json", "action kind must be 'trivial' or 'matrices'");
    const js& mats = detail::field(action, "matrices");
    if (!mats.is_object())
        throw ValidationError("bad-json", "'matrices' must map element labels to matrices");
    if (mats.empty()) return trivial_module(g, std::move(a));
    std::map<std::string, ActionMatrix> gens;
    for (auto it = mats.begin(); it != mats.end(); ++it)
        gens[it.key()] = detail::as_int_matrix(it.value(), "action matrix");
    return module_from_generators(g, std::move(a), gens);
}

namespace detail {

inline std::vector<i64> parse_carrier_shape(const std::string& body, const std::string& spec) {
    std::vector<i64> moduli;
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        if (part.rfind("Z/", 0) != 0)
            throw ValidationError("bad-spec",
                                  "carrier in '" + spec + "' must look like Z/2 or Z/2xZ/4");
        try {
            moduli.push_back(std::stoll(part.substr(2)));
        } catch (const std::exception&) {
            throw ValidationError("bad-spec", "bad modulus in '" + spec + "'");
        }
    }
    if (moduli.empty()) throw ValidationError("bad-spec", "empty carrier in '" + spec + "'");
    return moduli;
}

} // namespace detail

/// Shorthand module specs: "trivial:Z/2xZ/4" or "negation:Z/m" (only valid
/// when index i acting by (-1)^i is a homomorphism, e.g. even cyclic groups);
/// anything else is a path to a module JSON file.
inline GModule module_from_spec(const FiniteGroup& g, const std::string& spec) {
    if (spec.rfind("trivial:", 0) == 0) {
        FiniteAbelianGroup a{detail::parse_carrier_shape(spec.substr(8), spec)};
        return trivial_module(g, std::move(a));
    }
    if (spec.rfind("negation:", 0) == 0) {
        FiniteAbelianGroup a{detail::parse_carrier_shape(spec.substr(9), spec)};
        std::vector<ActionMatrix> per(g.order());
        for (int s = 0; s < g.order(); ++s) {
            ActionMatrix m(a.rank(), std::vector<i64>(a.rank(), 0));
            for (int i = 0; i < a.rank(); ++i) m[i][i] = (s % 2) ? -1 : 1;
            per[s] = std::move(m);
        }
        return module_from_matrices(g, std::move(a), std::move(per));
    }
    return module_from_json(g, parse_json_file(spec));
}

// ---------------------------------------------------------------------------
// Cochains: {"degree": n, "values": {"(i,j,...)": [tuple]}}

inline std::string tuple_key(const std::vector<int>& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

inline js cochain_to_json(const Cochain& f) {
    js j;
    j["degree"] = f.degree;
    js values = js::object();
    const i64 go = f.module().group().order();
    for (size_t t = 0; t < f.values.size(); ++t)
        values[tuple_key(tuple_decode(go, f.degree, static_cast<i64>(t)))] = f.values[t];
    j["values"] = values;
    return j;
}

inline Cochain cochain_from_json(const GModule& m, const js& j) {
    int degree = static_cast<int>(detail::as_int(detail::field(j, "degree"), "'degree'"));
    if (degree < 0) throw ValidationError("bad-degree", "cochain degree must be nonnegative");
    const js& values = detail::field(j, "values");
    if (!values.is_object())
        throw ValidationError("bad-json", "'values' must map tuples to carrier elements");
    Cochain f = zero_cochain(m, degree);
    const int go = m.group().order();
    for (auto it = values.begin(); it != values.end(); ++it) {
        const std::string& key = it.key();
        if (key.size() < 2 || key.front() != '(' || key.back() != ')')
            throw ValidationError("bad-json", "tuple key '" + key + "' must look like (i,j)");
        std::vector<int> tuple;
        std::string body = key.substr(1, key.size() - 2);
        if (!body.empty()) {
            std::stringstream ss(body);
            std::string part;
            while (std::getline(ss, part, ',')) {
                try {
                    tuple.push_back(std::stoi(part));
                } catch (const std::exception&) {
                    throw ValidationError("bad-json", "bad index in tuple key '" + key + "'");
                }
            }
        }
        if (static_cast<int>(tuple.size()) != degree)
            throw ValidationError("bad-json", "tuple key '" + key + "' does not match degree " +
                                                  std::to_string(degree));
        for (int s : tuple)
            if (s < 0 || s >= go)
                throw ValidationError("bad-json", "group index out of range in '" + key + "'");
        if (!it.value().is_array() ||
            static_cast<int>(it.value().size()) != m.carrier.rank())
            throw ValidationError("bad-json", "value at '" + key + "' must list " +
                                                  std::to_string(m.carrier.rank()) +
                                                  " coordinates");
        Elem e;
        for (const js& v : it.value()) e.push_back(detail::as_int(v, "carrier coordinate"));
        f.values[tuple_index(go, tuple)] = m.carrier.reduce(e);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Cohomology groups: {"degree": n, "factors": [...], "representatives": [...]}

inline js cohomology_to_json(const CohomologyGroup& h) {
    js j;
    j["degree"] = h.degree;
    j["factors"] = h.group.moduli;
    js reps = js::array();
    for (const Cochain& r : h.representatives) reps.push_back(cochain_to_json(r));
    j["representatives"] = reps;
    return j;
}

// ---------------------------------------------------------------------------
// Extensions: input {"group":…, "module":…, "cocycle":…}; the built result
// adds {"E": group, "inclusion": [...], "projection": [...], "section": [...]}.

inline js extension_to_json(const Extension& x) {
    js j;
    j["E"] = group_to_json(x.e);
    j["inclusion"] = x.incl;
    j["projection"] = x.proj;
    j["section"] = x.section;
    return j;
}

// ---------------------------------------------------------------------------
// Short exact sequences:
// {"A1": module, "A": module, "A2": module, "incl": [[int]], "proj": [[int]],
//  "section": optional [[int]] or {"col": [entries]}}

struct SESInput {
    GModule sub, mid, quot;
    LinMap incl, proj;
    bool has_section = false;
    IMat section;

    SESInput() = default;
    SESInput(const SESInput&) = delete; // ModuleSES will point into this storage
    SESInput& operator=(const SESInput&) = delete;
};

inline LinMap linmap_from_json(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst,
                               const js& j, const char* what) {
    auto rows = detail::as_int_matrix(j, what);
    if (static_cast<int>(rows.size()) != dst.rank())
        throw ValidationError("bad-json", std::string(what) + " needs " +
                                              std::to_string(dst.rank()) + " rows");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != src.rank())
            throw ValidationError("bad-json", std::string(what) + " needs " +
                                                  std::to_string(src.rank()) + " columns");
    return LinMap{src, dst, rows};
}

inline void ses_from_json(const FiniteGroup& g, const js& j, SESInput& out) {
    out.sub = module_from_json(g, detail::field(j, "A1"));
    out.mid = module_from_json(g, detail::field(j, "A"));
    out.quot = module_from_json(g, detail::field(j, "A2"));
    out.incl = linmap_from_json(out.sub.carrier, out.mid.carrier, detail::field(j, "incl"),
                                "'incl'");
    out.proj = linmap_from_json(out.mid.carrier, out.quot.carrier, detail::field(j, "proj"),
                                "'proj'");
    if (j.contains("section")) {
        const js& sec = j.at("section");
        std::vector<std::vector<i64>> rows;
        if (sec.is_array()) {
            rows = detail::as_int_matrix(sec, "'section'");
        } else if (sec.is_object()) {
            // map form: column index -> middle-module coordinates
            rows.assign(out.mid.carrier.rank(), std::vector<i64>(out.quot.carrier.rank(), 0));
            for (auto it = sec.begin(); it != sec.end(); ++it) {
                int col = 0;
                try {
                    col = std::stoi(it.key());
                } catch (const std::exception&) {
                    throw ValidationError("bad-json", "section keys must be column indices");
                }
                if (col < 0 || col >= out.quot.carrier.rank())
                    throw ValidationError("bad-json", "section column out of range");
                if (!it.value().is_array() ||
                    static_cast<int>(it.value().size()) != out.mid.carrier.rank())
                    throw ValidationError("bad-json", "section column has the wrong length");
                for (int r = 0; r < out.mid.carrier.rank(); ++r)
                    rows[r][col] = detail::as_int(it.value()[r], "section entry");
            }
        } else {
            throw ValidationError("bad-json", "'section' must be a matrix or a column map");
        }
        if (static_cast<int>(rows.size()) != out.mid.carrier.rank())
            throw ValidationError("bad-json", "'section' needs one row per middle coordinate");
        out.section = IMat(out.mid.carrier.rank(), out.quot.carrier.rank());
        for (int r = 0; r < out.section.rows(); ++r) {
            if (static_cast<int>(rows[r].size()) != out.section.cols())
                throw ValidationError("bad-json", "'section' has a short row");
            for (int c = 0; c < out.section.cols(); ++c) out.section.at(r, c) = rows[r][c];
        }
        out.has_section = true;
    }
}

inline js ses_to_json(const SESInput& in) {
    js j;
    j["A1"] = module_to_json(in.sub);
    j["A"] = module_to_json(in.mid);
    j["A2"] = module_to_json(in.quot);
    j["incl"] = in.incl.m;
    j["proj"] = in.proj.m;
    if (in.has_section) {
        js rows = js::array();
        for (int r = 0; r < in.section.rows(); ++r) {
            js row = js::array();
            for (int c = 0; c < in.section.cols(); ++c) row.push_back(to_i64(in.section.at(r, c)));
            rows.push_back(row);
        }
        j["section"] = rows;
    }
    return j;
}

inline js les_to_json(const LongExactSequence& les) {
    js j;
    j["cap"] = les.cap;
    js nodes = js::array();
    size_t check = 0;
    auto push = [&](const CohomologyGroup& h) {
        js node;
        node["name"] = les.checks[check].node;
        node["factors"] = h.group.moduli;
        node["exact"] = les.checks[check].exact;
        nodes.push_back(node);
        ++check;
    };
    push(les.sub[0]);
    for (int n = 0; n <= les.cap; ++n) {
        push(les.mid[n]);
        push(les.quot[n]);
        if (n < les.cap) push(les.sub[n + 1]);
    }
    j["nodes"] = nodes;
    js connect = js::array();
    for (const LinMap& c : les.connect) connect.push_back(c.m);
    j["connecting"] = connect;
    j["exact"] = les.exact;
    return j;
}

// ---------------------------------------------------------------------------
// Group functions: {"values": {element-label: "p/q"}}

inline js function_to_json(const GroupFunction& f) {
    js values = js::object();
    for (int x = 0; x < f.group().order(); ++x)
        if (f.values[x] != 0) values[f.group().elements[x]] = format_rational(f.values[x]);
    js j;
    j["values"] = values;
    return j;
}

inline GroupFunction function_from_json(const FiniteGroup& g, const js& j) {
    const js& values = detail::field(j, "values");
    if (!values.is_object())
        throw ValidationError("bad-json", "'values' must map element labels to rationals");
    std::vector<Rat> v(g.order(), Rat(0));
    for (auto it = values.begin(); it != values.end(); ++it) {
        auto pos = std::find(g.elements.begin(), g.elements.end(), it.key());
        if (pos == g.elements.end())
            throw ValidationError("bad-function",
                                  "'" + it.key() + "' is not an element of the group");
        v[pos - g.elements.begin()] = detail::as_rational(it.value(), "function value");
    }
    return group_function(g, std::move(v));
}

// ---------------------------------------------------------------------------
// Lie algebras: {"dim": n, "brackets": {"i,j": {"k": "p/q"}}} and modules
// {"dim": m, "rep": [matrix per basis element]}.

inline js lie_to_json(const LieAlgebra& l) {
    js brackets = js::object();
    for (int i = 0; i < l.dim; ++i)
        for (int j = i + 1; j < l.dim; ++j) {
            js entry = js::object();
            for (int k = 0; k < l.dim; ++k)
                if (l.c[i][j][k] != 0)
                    entry[std::to_string(k)] = format_rational(l.c[i][j][k]);
            if (!entry.empty())
                brackets[std::to_string(i) + "," + std::to_string(j)] = entry;
        }
    js j;
    j["dim"] = l.dim;
    j["brackets"] = brackets;
    return j;
}

inline LieAlgebra lie_from_json(const js& j) {
    int dim = static_cast<int>(detail::as_int(detail::field(j, "dim"), "'dim'"));
    if (dim < 0 || dim > kLieDimCap)
        throw SizeError("Lie algebra dimension outside the supported range");
    std::vector constants(dim, std::vector(dim, std::vector<Rat>(dim, Rat(0))));
    const js& brackets = detail::field(j, "brackets");
    if (!brackets.is_object())
        throw ValidationError("bad-json", "'brackets' must map index pairs to coefficients");
    auto parse_index = [&](const std::string& s) {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size() || v < 0 || v >= dim) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError("bad-json", "bad basis index '" + s + "' in brackets");
        }
    };
    std::vector mirrored(dim, std::vector<bool>(dim, false));
    for (auto it = brackets.begin(); it != brackets.end(); ++it) {
        auto comma = it.key().find(',');
        if (comma == std::string::npos)
            throw ValidationError("bad-json", "bracket keys must look like \"i,j\"");
        int i = parse_index(it.key().substr(0, comma));
        int jj = parse_index(it.key().substr(comma + 1));
        if (!it.value().is_object())
            throw ValidationError("bad-json", "bracket entries must map indices to rationals");
        for (auto kt = it.value().begin(); kt != it.value().end(); ++kt) {
            int k = parse_index(kt.key());
            constants[i][jj][k] = detail::as_rational(kt.value(), "structure constant");
        }
        mirrored[i][jj] = true;
    }
    // Fill unstated mirror entries by antisymmetry; stated ones are validated.
    for (int i = 0; i < dim; ++i)
        for (int jj = 0; jj < dim; ++jj)
            if (mirrored[i][jj] && !mirrored[jj][i])
                for (int k = 0; k < dim; ++k) constants[jj][i][k] = -constants[i][jj][k];
    return build_lie_algebra(dim, std::move(constants));
}

inline js lie_module_to_json(const LieModule& v) {
    js rep = js::array();
    for (const RMat& m : v.rep) {
        js mat = js::array();
        for (const auto& row : m) {
            js r = js::array();
            for (const Rat& x : row) r.push_back(format_rational(x));
            mat.push_back(r);
        }
        rep.push_back(mat);
    }
    js j;
    j["dim"] = v.dim;
    j["rep"] = rep;
    return j;
}

inline LieModule lie_module_from_json(const LieAlgebra& l, const js& j) {
    int dim = static_cast<int>(detail::as_int(detail::field(j, "dim"), "'dim'"));
    const js& rep = detail::field(j, "rep");
    if (!rep.is_array())
        throw ValidationError("bad-json", "'rep' must be an array of matrices");
    std::vector<RMat> mats;
    for (const js& mj : rep) {
        if (!mj.is_array()) throw ValidationError("bad-json", "'rep' entries must be matrices");
        RMat m;
        for (const js& rj : mj) {
            if (!rj.is_array())
                throw ValidationError("bad-json", "'rep' matrix rows must be arrays");
            std::vector<Rat> row;
            for (const js& v : rj) row.push_back(detail::as_rational(v, "matrix entry"));
            m.push_back(std::move(row));
        }
        mats.push_back(std::move(m));
    }
    return build_lie_module(l, dim, std::move(mats));
}

inline js ce_to_json(const CECohomology& h) {
    js j;
    j["degree"] = h.degree;
    j["dim"] = h.dim;
    js reps = js::array();
    for (const auto& r : h.representatives) {
        js v = js::array();
        for (const Rat& x : r) v.push_back(format_rational(x));
        reps.push_back(v);
    }
    j["representatives"] = reps;
    return j;
}

// ---------------------------------------------------------------------------
// Haar reports.

inline js haar_to_json(const FiniteGroup& g, const HaarReport& r) {
    js j;
    j["value"] = format_rational(r.value);
    js coeff = js::object();
    for (int u = 0; u < g.order(); ++u)
        if (r.coefficients[u] != 0) coeff[g.elements[u]] = format_rational(r.coefficients[u]);
    j["coefficients"] = coeff;
    j["feasible"] = r.feasible;
    j["certified"] = r.certified;
    return j;
}

inline js relative_to_json(const RelativeIntegralReport& r) {
    js j;
    j["value"] = format_rational(r.value);
    j["f_phi"] = format_rational(r.f_phi);
    j["gref_phi"] = format_rational(r.gref_phi);
    j["f_nonzero"] = r.f_nonzero;
    j["bounds_ok"] = r.bounds_ok;
    j["translation_invariant"] = r.translation_invariant;
    j["homogeneous"] = r.homogeneous;
    return j;
}

inline js invariant_to_json(const InvariantIntegralReport& r, const GroupFunction& f) {
    js j;
    j["value"] = format_rational(r.functional.apply(f));
    j["positive"] = r.positive;
    j["left_invariant"] = r.left_invariant;
    j["additive"] = r.additive;
    j["homogeneous"] = r.homogeneous;
    j["nonzero"] = r.nonzero;
    return j;
}

} // namespace coho

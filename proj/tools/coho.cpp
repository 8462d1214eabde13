// Batch command-line surface over the cohomology toolkit: compute, classify,
// verify, and emit reports as JSON or aligned-text tables.
//
// Exit codes: 0 success; 1 domain error (invalid input, non-cocycle, missing
// file, malformed JSON) with a machine-readable error report on stdout;
// 2 resource-cap refusal. No partial output is written on failure.

#include "coho/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

namespace {

using coho::js;

struct CommonOpts {
    std::string group_spec;
    std::string module_spec;
    std::string cocycle_path;
    std::string ses_path;
    int degree = -1;
    long long cap = -1;
    unsigned long long seed = 12345;
    std::string out_path;
    bool emit_input = false;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool group_required) {
    auto* g = cmd->add_option("--group", o.group_spec,
                              "group: cyclic:n, product:n1,n2,..., dihedral:n (order 2n), "
                              "dicyclic:n (order 4n), a4, or a JSON file");
    if (group_required) g->required();
    cmd->add_option("--module", o.module_spec,
                    "module: trivial:Z/m[xZ/m...], negation:Z/m, or a JSON file");
    cmd->add_option("--cocycle", o.cocycle_path, "cochain JSON file");
    cmd->add_option("--ses", o.ses_path, "short exact sequence JSON file");
    cmd->add_option("--degree", o.degree, "cohomology degree");
    cmd->add_option("--cap", o.cap, "resource cap (see each command's help)");
    cmd->add_option("--seed", o.seed, "seed for randomized property runs");
    cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
    cmd->add_flag("--emit-input", o.emit_input,
                  "emit the fully expanded inputs instead of computing");
    cmd->add_option("--format", o.format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
}

coho::CohomologyCaps caps_from(const CommonOpts& o) {
    coho::CohomologyCaps caps;
    if (o.cap >= 0) caps.max_tuples = o.cap;
    return caps;
}

// ---------------------------------------------------------------------------
// Aligned-text rendering of the JSON reports.

std::string pad(const std::string& s, size_t w) {
    return s + std::string(s.size() < w ? w - s.size() : 0, ' ');
}

std::string factors_text(const js& factors) {
    if (factors.empty()) return "0";
    std::string s;
    for (const auto& f : factors) s += (s.empty() ? "Z/" : " x Z/") + f.dump();
    return s;
}

void render_lines(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& kv) {
    size_t w = 0;
    for (const auto& [k, _] : kv) w = std::max(w, k.size());
    for (const auto& [k, v] : kv) os << pad(k, w + 2) << v << "\n";
}

std::string render_table(const std::string& command, const js& r) {
    std::ostringstream os;
    if (command == "cohomology") {
        std::vector<std::pair<std::string, std::string>> kv = {
            {"degree", r.at("degree").dump()},
            {"factors", factors_text(r.at("factors"))},
            {"order", r.at("order").dump()},
        };
        if (r.contains("classification")) {
            const js& c = r.at("classification");
            kv.emplace_back("cocycle", c.at("is_cocycle").get<bool>() ? "yes" : "no");
            if (c.contains("coordinates")) kv.emplace_back("coordinates", c.at("coordinates").dump());
            if (c.contains("is_coboundary"))
                kv.emplace_back("coboundary", c.at("is_coboundary").get<bool>() ? "yes" : "no");
        }
        render_lines(os, kv);
    } else if (command == "extensions") {
        if (r.contains("classes")) {
            os << pad("coords", 12) << pad("label", 24) << "order\n";
            for (const js& c : r.at("classes"))
                os << pad(c.at("coords").dump(), 12) << pad(c.at("label").get<std::string>(), 24)
                   << c.at("E").at("elements").size() << "\n";
        } else {
            render_lines(os, {{"order", std::to_string(r.at("E").at("elements").size())},
                              {"label", r.at("label").get<std::string>()}});
        }
    } else if (command == "les") {
        os << pad("node", 12) << pad("factors", 20) << "exact\n";
        for (const js& n : r.at("nodes"))
            os << pad(n.at("name").get<std::string>(), 12)
               << pad(factors_text(n.at("factors")), 20)
               << (n.at("exact").get<bool>() ? "yes" : "no") << "\n";
    } else if (command == "haar") {
        std::vector<std::pair<std::string, std::string>> kv;
        kv.emplace_back("(f;g_ref)", r.at("approx").at("value").get<std::string>());
        kv.emplace_back("certified", r.at("approx").at("certified").get<bool>() ? "yes" : "no");
        kv.emplace_back("I_phi(f)", r.at("relative").at("value").get<std::string>());
        kv.emplace_back("bounds", r.at("relative").at("bounds_ok").get<bool>() ? "ok" : "violated");
        kv.emplace_back("invariant I(f)", r.at("invariant").at("value").get<std::string>());
        render_lines(os, kv);
    } else if (command == "lie") {
        os << pad("degree", 8) << "dim\n";
        if (r.contains("cohomology"))
            for (const js& h : r.at("cohomology"))
                os << pad(h.at("degree").dump(), 8) << h.at("dim").dump() << "\n";
        else
            os << pad(r.at("degree").dump(), 8) << r.at("dim").dump() << "\n";
    } else { // verify
        for (auto it = r.begin(); it != r.end(); ++it)
            os << pad(it.key(), 24) << it.value().dump() << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

void write_report(const CommonOpts& o, const std::string& command, const js& report) {
    std::string text =
        o.format == "table" ? render_table(command, report) : report.dump(2) + "\n";
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw coho::Error("io", "cannot write '" + o.out_path + "'");
        out << text;
    }
}

int run_cohomology(const CommonOpts& o) {
    if (o.module_spec.empty())
        throw coho::ValidationError("bad-invocation", "cohomology needs --module");
    if (o.degree < 0)
        throw coho::ValidationError("bad-invocation", "cohomology needs --degree");
    coho::FiniteGroup g = coho::group_from_spec(o.group_spec);
    coho::GModule m = coho::module_from_spec(g, o.module_spec);
    std::optional<coho::Cochain> f;
    if (!o.cocycle_path.empty())
        f = coho::cochain_from_json(m, coho::parse_json_file(o.cocycle_path));
    if (o.emit_input) {
        js in;
        in["group"] = coho::group_to_json(g);
        in["module"] = coho::module_to_json(m);
        if (f) in["cocycle"] = coho::cochain_to_json(*f);
        write_report(o, "input", in);
        return 0;
    }
    coho::CohomologyGroup h = coho::cohomology(m, o.degree, caps_from(o));
    js report = coho::cohomology_to_json(h);
    report["order"] = h.order();
    if (f) {
        coho::Classification c = coho::classify_cochain(h, *f);
        js cj;
        cj["is_cocycle"] = c.is_cocycle;
        if (c.is_cocycle) {
            cj["is_coboundary"] = c.is_coboundary;
            if (c.class_coords) cj["coordinates"] = *c.class_coords;
        } else if (c.cocycle_defect) {
            cj["defect_tuple"] = coho::tuple_key(c.cocycle_defect->first);
        }
        report["classification"] = cj;
    }
    write_report(o, "cohomology", report);
    return 0;
}

int run_extensions(const CommonOpts& o, bool classify) {
    if (o.module_spec.empty())
        throw coho::ValidationError("bad-invocation", "extensions needs --module");
    coho::FiniteGroup g = coho::group_from_spec(o.group_spec);
    coho::GModule m = coho::module_from_spec(g, o.module_spec);
    if (!classify && o.cocycle_path.empty())
        throw coho::ValidationError("bad-invocation",
                                    "extensions needs --classify or --cocycle");
    std::optional<coho::Cochain> f;
    if (!o.cocycle_path.empty())
        f = coho::cochain_from_json(m, coho::parse_json_file(o.cocycle_path));
    if (o.emit_input) {
        js in;
        in["group"] = coho::group_to_json(g);
        in["module"] = coho::module_to_json(m);
        if (f) in["cocycle"] = coho::cochain_to_json(*f);
        write_report(o, "input", in);
        return 0;
    }
    js report;
    if (classify) {
        coho::ExtensionCatalog cat = coho::classify_extensions(m, caps_from(o));
        report["factors"] = cat.h2.group.moduli;
        report["count"] = cat.items.size();
        report["pairwise_inequivalent"] = cat.pairwise_inequivalent;
        js classes = js::array();
        for (const coho::ClassifiedExtension& item : cat.items) {
            js c;
            c["coords"] = item.coords;
            c["label"] = item.label;
            c["cocycle"] = coho::cochain_to_json(item.cocycle);
            js ext = coho::extension_to_json(item.ext);
            for (auto it = ext.begin(); it != ext.end(); ++it) c[it.key()] = it.value();
            classes.push_back(c);
        }
        report["classes"] = classes;
    } else {
        coho::Extension x = coho::build_extension(*f);
        report["group"] = coho::group_to_json(g);
        report["module"] = coho::module_to_json(m);
        report["cocycle"] = coho::cochain_to_json(*f);
        js ext = coho::extension_to_json(x);
        for (auto it = ext.begin(); it != ext.end(); ++it) report[it.key()] = it.value();
        report["label"] = x.e.order() <= coho::kLabelCap ? coho::abstract_label(x.e)
                                                         : "unlabelled (order too large)";
    }
    write_report(o, "extensions", report);
    return 0;
}

int run_les(const CommonOpts& o) {
    if (o.ses_path.empty()) throw coho::ValidationError("bad-invocation", "les needs --ses");
    coho::FiniteGroup g = coho::group_from_spec(o.group_spec);
    js sj = coho::parse_json_file(o.ses_path);
    coho::SESInput in;
    coho::ses_from_json(g, sj, in);
    coho::ModuleSES s = coho::make_ses(in.sub, in.mid, in.quot, in.incl, in.proj);
    if (in.has_section) {
        // A user-provided section must split the projection on every column.
        for (int c = 0; c < in.quot.carrier.rank(); ++c) {
            coho::Elem unit = in.quot.carrier.zero();
            unit[c] = coho::mod_reduce(1, in.quot.carrier.moduli[c]);
            std::vector<coho::Int> col(in.mid.carrier.rank());
            for (int r = 0; r < in.mid.carrier.rank(); ++r) col[r] = in.section.at(r, c);
            coho::Elem mid = in.mid.carrier.reduce(col);
            std::vector<coho::Int> im(in.quot.carrier.rank());
            for (int r = 0; r < in.quot.carrier.rank(); ++r) {
                coho::Int acc = 0;
                for (int k = 0; k < in.mid.carrier.rank(); ++k)
                    acc += coho::Int(in.proj.m[r][k]) * mid[k];
                im[r] = acc;
            }
            if (in.quot.carrier.reduce(im) != unit)
                throw coho::ValidationError("bad-section",
                                            "the given section does not split the projection");
        }
        s.section = in.section;
    }
    if (o.emit_input) {
        js ij;
        ij["group"] = coho::group_to_json(g);
        ij["ses"] = coho::ses_to_json(in);
        write_report(o, "input", ij);
        return 0;
    }
    int cap = o.degree >= 0 ? o.degree : 2;
    coho::CohomologyCaps caps;
    caps.max_degree = cap + 1;
    if (o.cap >= 0) caps.max_tuples = o.cap;
    coho::LongExactSequence les = coho::long_exact_sequence(s, cap, caps);
    write_report(o, "les", coho::les_to_json(les));
    return 0;
}

int run_haar(const CommonOpts& o, const std::string& f_path, const std::string& gref_path,
             const std::string& phi_path) {
    coho::FiniteGroup g = coho::group_from_spec(o.group_spec);
    coho::GroupFunction f = coho::function_from_json(g, coho::parse_json_file(f_path));
    coho::GroupFunction gref = gref_path.empty()
                                   ? coho::constant_function(g, coho::Rat(1))
                                   : coho::function_from_json(g, coho::parse_json_file(gref_path));
    coho::GroupFunction phi = phi_path.empty()
                                  ? coho::point_mass(g)
                                  : coho::function_from_json(g, coho::parse_json_file(phi_path));
    if (o.emit_input) {
        js in;
        in["group"] = coho::group_to_json(g);
        in["f"] = coho::function_to_json(f);
        in["g_ref"] = coho::function_to_json(gref);
        in["phi"] = coho::function_to_json(phi);
        write_report(o, "input", in);
        return 0;
    }
    js report;
    report["approx"] = coho::haar_to_json(g, coho::approx_integral(f, gref));
    report["relative"] = coho::relative_to_json(coho::relative_integral(f, phi, gref));
    report["invariant"] = coho::invariant_to_json(coho::invariant_integral(g, gref), f);
    write_report(o, "haar", report);
    return 0;
}

int run_lie(const CommonOpts& o, const std::string& algebra_path,
            const std::string& module_path) {
    coho::LieAlgebra l = coho::lie_from_json(coho::parse_json_file(algebra_path));
    coho::LieModule v = module_path.empty()
                            ? coho::trivial_lie_module(l, 1)
                            : coho::lie_module_from_json(l, coho::parse_json_file(module_path));
    if (o.emit_input) {
        js in;
        in["algebra"] = coho::lie_to_json(l);
        in["module"] = coho::lie_module_to_json(v);
        write_report(o, "input", in);
        return 0;
    }
    js report;
    if (o.degree >= 0) {
        report = coho::ce_to_json(coho::ce_cohomology(l, v, o.degree));
    } else {
        js all = js::array();
        js dims = js::array();
        for (int n = 0; n <= l.dim; ++n) {
            coho::CECohomology h = coho::ce_cohomology(l, v, n);
            dims.push_back(h.dim);
            all.push_back(coho::ce_to_json(h));
        }
        report["dims"] = dims;
        report["cohomology"] = all;
    }
    write_report(o, "lie", report);
    return 0;
}

int run_verify(const CommonOpts& o) {
    coho::FiniteGroup g = coho::group_from_spec(o.group_spec);
    js report;
    report["group_order"] = g.order();
    report["group_abelian"] = g.is_abelian();
    report["group_valid"] = true;
    if (!o.module_spec.empty()) {
        coho::GModule m = coho::module_from_spec(g, o.module_spec);
        report["module_order"] = m.carrier.order();
        report["module_valid"] = true;

        // Seeded random coboundary-of-coboundary probes, degrees 0..2.
        int trials = o.cap >= 0 ? static_cast<int>(o.cap) : 25;
        std::mt19937_64 rng(o.seed);
        bool dd_zero = true;
        for (int t = 0; t < trials; ++t) {
            int n = static_cast<int>(rng() % 3);
            coho::Cochain f = coho::zero_cochain(m, n);
            for (auto& e : f.values)
                for (size_t i = 0; i < e.size(); ++i)
                    e[i] = coho::mod_reduce(static_cast<coho::i64>(rng() % 1000),
                                            m.carrier.moduli[i]);
            dd_zero = dd_zero && coho::coboundary(coho::coboundary(f)).is_zero();
        }
        report["coboundary_squared_zero"] = dd_zero;
        report["trials"] = trials;
        if (!dd_zero) throw coho::Error("internal", "d(d(f)) was nonzero on a random cochain");

        if (!o.cocycle_path.empty()) {
            coho::Cochain f =
                coho::cochain_from_json(m, coho::parse_json_file(o.cocycle_path));
            report["cocycle_degree"] = f.degree;
            report["is_cocycle"] = coho::coboundary(f).is_zero();
        }
    }
    if (o.emit_input) {
        js in;
        in["group"] = coho::group_to_json(g);
        write_report(o, "input", in);
        return 0;
    }
    write_report(o, "verify", report);
    return 0;
}

js error_json(const std::string& kind, const std::string& message) {
    js e;
    e["error"]["kind"] = kind;
    e["error"]["message"] = message;
    return e;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-group and Lie-algebra cohomology toolkit"};
    app.require_subcommand(1);

    CommonOpts cohomology_o, extensions_o, les_o, haar_o, lie_o, verify_o;
    bool classify = false;
    std::string haar_f, haar_gref, haar_phi, lie_algebra, lie_module;

    CLI::App* c_cohomology =
        app.add_subcommand("cohomology", "compute H^n(G, A) and classify cocycles");
    add_common(c_cohomology, cohomology_o, true);

    CLI::App* c_extensions =
        app.add_subcommand("extensions", "build and classify group extensions by H^2");
    add_common(c_extensions, extensions_o, true);
    c_extensions->add_flag("--classify", classify, "enumerate one extension per H^2 class");

    CLI::App* c_les = app.add_subcommand(
        "les", "long exact cohomology sequence of a short exact module sequence");
    add_common(c_les, les_o, true);

    CLI::App* c_haar =
        app.add_subcommand("haar", "approximate and invariant integrals on a finite group");
    add_common(c_haar, haar_o, true);
    c_haar->add_option("f", haar_f, "function JSON file")->required();
    c_haar->add_option("g_ref", haar_gref, "reference function JSON (default: constant 1)");
    c_haar->add_option("phi", haar_phi, "precision function JSON (default: point mass at e)");

    CLI::App* c_lie = app.add_subcommand("lie", "Chevalley-Eilenberg Lie algebra cohomology");
    add_common(c_lie, lie_o, false);
    c_lie->add_option("algebra", lie_algebra, "Lie algebra JSON file")->required();
    c_lie->add_option("module_file", lie_module, "Lie module JSON file (default: trivial 1-dim)");

    CLI::App* c_verify =
        app.add_subcommand("verify", "validate a group/module and run seeded property probes");
    add_common(c_verify, verify_o, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_json("bad-invocation", e.what()).dump(2) << "\n";
        return 1;
    }

    try {
        if (c_cohomology->parsed()) return run_cohomology(cohomology_o);
        if (c_extensions->parsed()) return run_extensions(extensions_o, classify);
        if (c_les->parsed()) return run_les(les_o);
        if (c_haar->parsed()) return run_haar(haar_o, haar_f, haar_gref, haar_phi);
        if (c_lie->parsed()) return run_lie(lie_o, lie_algebra, lie_module);
        if (c_verify->parsed()) return run_verify(verify_o);
    } catch (const coho::SizeError& e) {
        std::cout << error_json(e.kind(), e.what()).dump(2) << "\n";
        return 2;
    } catch (const coho::Error& e) {
        std::cout << error_json(e.kind(), e.what()).dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << error_json("internal", e.what()).dump(2) << "\n";
        return 1;
    }
    return 1;
}

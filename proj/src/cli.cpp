#include "polyreal/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyreal/geomesh.hpp"

namespace polyreal {

namespace {

namespace fs = std::filesystem;

struct CliError {
    int code;
    std::string message;
};

struct GroupContext {
    std::unique_ptr<FiniteGroup> group;
    std::vector<StringCGroup> classes;
    std::vector<std::string> letters;
    bool published_letters = false;
    std::string label;  // "h3" or the file path
};

Mat3 matrix_from_json(const nlohmann::json& jm) {
    if (!jm.is_array() || jm.size() != 3) throw CliError{2, "each generator must be a 3x3 array"};
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
        const auto& row = jm[r];
        if (!row.is_array() || row.size() != 3)
            throw CliError{2, "each generator must be a 3x3 array"};
        for (int c = 0; c < 3; ++c) {
            const auto& cell = row[c];
            if (cell.is_string())
                m.at(r, c) = parse_qsqrt5(cell.get<std::string>());
            else if (cell.is_number_integer())
                m.at(r, c) = QSqrt5(cell.get<long>());
            else
                throw CliError{2, "matrix entries must be exact strings like \"1/2-1/2*sqrt5\""};
        }
    }
    return m;
}

std::vector<Mat3> load_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{2, "cannot open generator file: " + path};
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw CliError{2, "generator file is not valid JSON: " + std::string(e.what())};
    }
    if (!j.is_array() || j.empty()) throw CliError{2, "generator file must be a list of matrices"};
    std::vector<Mat3> gens;
    try {
        for (const auto& jm : j) gens.push_back(matrix_from_json(jm));
    } catch (const std::invalid_argument& e) {
        throw CliError{2, "bad matrix entry: " + std::string(e.what())};
    }
    return gens;
}

GroupContext load_group(const std::string& arg, ExecMode mode) {
    GroupContext ctx;
    ctx.label = arg;
    std::vector<Mat3> gens;
    if (arg == "h3") {
        Representation rep = builtin_representation("phi2");
        gens.assign(rep.gens.begin(), rep.gens.end());
    } else {
        gens = load_generator_file(arg);
    }
    try {
        ctx.group = std::make_unique<FiniteGroup>(FiniteGroup::generate(gens));
    } catch (const std::exception& e) {
        throw CliError{2, "group closure failed: " + std::string(e.what())};
    }
    ctx.classes = enumerate_string_cgroups(*ctx.group, mode);
    if (auto pub = h3_row_letters(*ctx.group, ctx.classes)) {
        ctx.letters = *pub;
        ctx.published_letters = true;
    } else {
        ctx.letters = canonical_letters(ctx.classes);
    }
    return ctx;
}

int resolve_selector(const GroupContext& ctx, const std::string& sel) {
    int p = 0, q = 0;
    std::string letter;
    std::size_t colon = sel.find(':');
    std::string type_part = colon == std::string::npos ? sel : sel.substr(0, colon);
    if (colon != std::string::npos) letter = sel.substr(colon + 1);
    std::size_t comma = type_part.find(',');
    if (comma == std::string::npos)
        throw CliError{2, "selector must look like \"5,3\" or \"10,3:b\""};
    try {
        std::size_t used = 0;
        p = std::stoi(type_part.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(type_part);
        q = std::stoi(type_part.substr(comma + 1), &used);
        if (used != type_part.size() - comma - 1) throw std::invalid_argument(type_part);
    } catch (const std::exception&) {
        throw CliError{2, "selector must look like \"5,3\" or \"10,3:b\""};
    }
    std::vector<int> matches;
    for (std::size_t i = 0; i < ctx.classes.size(); ++i)
        if (ctx.classes[i].p == p && ctx.classes[i].q == q) matches.push_back(static_cast<int>(i));
    if (matches.empty())
        throw CliError{2, "no class of type {" + std::to_string(p) + "," + std::to_string(q) + "}"};
    if (letter.empty()) {
        if (matches.size() > 1) {
            std::string opts;
            for (int i : matches) opts += (opts.empty() ? "" : ", ") + ctx.letters[i];
            throw CliError{2, "type {" + std::to_string(p) + "," + std::to_string(q) +
                                  "} is ambiguous; append one of: " + opts};
        }
        return matches[0];
    }
    for (int i : matches)
        if (ctx.letters[i] == letter) return i;
    throw CliError{2, "no class " + std::to_string(p) + "," + std::to_string(q) + ":" + letter};
}

// Representations usable with this group: the published pair when it
// propagates, always the group's own matrices under the name "native".
std::vector<std::pair<std::string, std::vector<Mat3>>> available_images(const FiniteGroup& G) {
    std::vector<std::pair<std::string, std::vector<Mat3>>> out;
    for (const char* name : {"phi1", "phi2"}) {
        try {
            out.emplace_back(name, representation_images(G, builtin_representation(name)));
        } catch (const std::invalid_argument&) {
        }
    }
    std::vector<Mat3> native;
    for (int i = 0; i < G.size(); ++i) native.push_back(G.element(i).matrix);
    out.emplace_back("native", std::move(native));
    return out;
}

std::vector<Mat3> images_for(const FiniteGroup& G, const std::string& rep_name) {
    if (rep_name == "native") {
        std::vector<Mat3> native;
        for (int i = 0; i < G.size(); ++i) native.push_back(G.element(i).matrix);
        return native;
    }
    try {
        return representation_images(G, builtin_representation(rep_name));
    } catch (const std::invalid_argument& e) {
        throw CliError{2, "representation " + rep_name + " does not apply: " + e.what()};
    }
}

std::string type_string(const StringCGroup& S) {
    return "{" + std::to_string(S.p) + "," + std::to_string(S.q) + "}";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{1, "cannot write " + path.string()};
    out << content;
    if (!out) throw CliError{1, "cannot write " + path.string()};
}

fs::path resolve_out_dir(const std::string& flag_value) {
    std::string dir = flag_value;
    if (dir.empty()) {
        const char* env = std::getenv("POLYREAL_OUT");
        dir = env ? env : ".";
    }
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw CliError{2, "cannot create output directory " + p.string()};
    return p;
}

int cmd_enumerate(const GroupContext& ctx, bool as_json, std::ostream& out) {
    auto reps = available_images(*ctx.group);
    if (ctx.label == "h3" && reps.size() == 3) reps.pop_back();  // native repeats phi2

    std::vector<std::vector<int>> dims(ctx.classes.size());
    for (std::size_t i = 0; i < ctx.classes.size(); ++i)
        for (const auto& [name, images] : reps)
            dims[i].push_back(wythoff_dimension(images, ctx.classes[i]));

    const FiniteGroup& G = *ctx.group;
    if (as_json) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < ctx.classes.size(); ++i) {
            const StringCGroup& S = ctx.classes[i];
            nlohmann::json row{{"p", S.p},
                               {"q", S.q},
                               {"label", ctx.letters[i]},
                               {"t0", G.word_name(S.triple.t0)},
                               {"t1", G.word_name(S.triple.t1)},
                               {"t2", G.word_name(S.triple.t2)}};
            nlohmann::json d;
            for (std::size_t r = 0; r < reps.size(); ++r) d[reps[r].first] = dims[i][r];
            row["dim"] = std::move(d);
            rows.push_back(std::move(row));
        }
        nlohmann::json doc{{"group", ctx.label},
                           {"order", G.size()},
                           {"class_count", ctx.classes.size()},
                           {"classes", std::move(rows)}};
        out << doc.dump(2) << '\n';
        return 0;
    }

    out << std::left << std::setw(9) << "type" << std::setw(7) << "label" << std::setw(14) << "t0"
        << std::setw(14) << "t1" << std::setw(14) << "t2";
    for (const auto& [name, images] : reps) out << std::setw(12) << ("dim[" + name + "]");
    out << '\n';
    for (std::size_t i = 0; i < ctx.classes.size(); ++i) {
        const StringCGroup& S = ctx.classes[i];
        out << std::left << std::setw(9) << type_string(S) << std::setw(7)
            << (ctx.letters[i].empty() ? "-" : ctx.letters[i]) << std::setw(14)
            << G.word_name(S.triple.t0) << std::setw(14) << G.word_name(S.triple.t1)
            << std::setw(14) << G.word_name(S.triple.t2);
        for (std::size_t r = 0; r < reps.size(); ++r) out << std::setw(12) << dims[i][r];
        out << '\n';
    }
    out << ctx.classes.size() << " classes, group order " << G.size() << '\n';
    return 0;
}

int cmd_poset(const GroupContext& ctx, int idx, const fs::path& out_dir, ExecMode mode,
              std::ostream& out) {
    AbstractPolyhedron P(ctx.classes[idx]);
    AxiomReport report = verify_axioms(P.poset(), mode);
    bool ft = flag_transitive(P);

    nlohmann::json axioms = axiom_report_json(report);
    axioms["flag_transitive"] = ft;
    axioms["counts"] = {{"vertices", P.vertex_count()},
                        {"edges", P.edge_count()},
                        {"facets", P.facet_count()}};

    write_file(out_dir / "hasse.dot", export_hasse(P));
    write_file(out_dir / "poset.json", poset_json(P).dump(2) + "\n");
    write_file(out_dir / "axioms.json", axioms.dump(2) + "\n");

    out << "class " << type_string(ctx.classes[idx])
        << (ctx.letters[idx].empty() ? "" : ":" + ctx.letters[idx]) << "  v=" << P.vertex_count()
        << " e=" << P.edge_count() << " f=" << P.facet_count() << "  flags=" << report.flag_count
        << '\n';
    out << "axioms: " << (report.all_pass() ? "pass" : "FAIL")
        << "  flag-transitive: " << (ft ? "yes" : "NO") << '\n';
    for (const std::string& f : report.failures) out << "  " << f << '\n';
    out << "wrote " << (out_dir / "hasse.dot").string() << ", " << (out_dir / "poset.json").string()
        << ", " << (out_dir / "axioms.json").string() << '\n';
    return report.all_pass() && ft ? 0 : 1;
}

int cmd_realize(const GroupContext& ctx, int idx, const std::string& rep_name,
                const std::string& family_arg, const fs::path& out_dir,
                const PlateauParams& plateau, int arc_samples, ExecMode mode, std::ostream& out,
                std::ostream& err) {
    const StringCGroup& S = ctx.classes[idx];
    std::vector<Mat3> images = images_for(*ctx.group, rep_name);
    AbstractPolyhedron P(S);

    WythoffSpace W = wythoff_space(images, S);
    if (W.dimension == 0) {
        err << "refused: the " << rep_name << " point-stabilizer fixed space for "
            << type_string(S) << (ctx.letters[idx].empty() ? "" : ":" + ctx.letters[idx])
            << " has dimension 0, so the coset construction yields no realization\n";
        return 2;
    }

    RealizationSkeleton skel = build_skeleton(P, images, rep_name, W.basis[0]);
    write_file(out_dir / "skeleton.json", skeleton_json(skel).dump(2) + "\n");

    Family classified = classify_family(skel, mode);
    RealizedPolyhedron rp;
    if (family_arg == "sp") {
        rp = realize_spherical(skel, arc_samples);
    } else {
        Family requested = family_arg == "auto" ? classified : family_from_code(family_arg);
        if (requested != classified) {
            err << "refused: requested family " << family_arg << " but the skeleton classifies as "
                << family_code(classified) << " (" << family_name(classified) << ")\n";
            return 2;
        }
        rp = classified == Family::Skew ? realize_skew(skel, plateau, mode)
                                        : realize_classical(skel, mode);
    }

    nlohmann::json meta = realization_metadata(rp);
    meta["classified_family"] = family_name(classified);
    meta["requested_family"] = family_arg;
    write_file(out_dir / "mesh.obj", export_obj(rp));
    write_file(out_dir / "mesh.ply", export_ply(rp));
    write_file(out_dir / "realization.json", meta.dump(2) + "\n");

    out << "realized " << type_string(S)
        << (ctx.letters[idx].empty() ? "" : ":" + ctx.letters[idx]) << " under " << rep_name
        << " as " << family_name(rp.family) << "  (classified " << family_name(classified) << ")\n";
    out << "v=" << P.vertex_count() << " e=" << P.edge_count() << " f=" << P.facet_count() << '\n';
    if (rp.family == Family::Skew)
        out << "minimal surface: iterations=" << rp.plateau.iterations
            << " area=" << rp.plateau.final_area << '\n';
    out << "wrote " << (out_dir / "skeleton.json").string() << ", "
        << (out_dir / "mesh.obj").string() << ", " << (out_dir / "mesh.ply").string() << ", "
        << (out_dir / "realization.json").string() << '\n';
    return 0;
}

int cmd_check(const GroupContext& ctx, const std::string& selector, ExecMode mode,
              std::ostream& out) {
    const FiniteGroup& G = *ctx.group;
    bool ok = true;
    nlohmann::json report;
    report["group"] = ctx.label;
    report["order"] = G.size();

    nlohmann::json gens = nlohmann::json::array();
    bool gens_ok = true;
    for (int k = 0; k < G.num_generators(); ++k) {
        int g = G.generator(k);
        const Mat3& m = G.element(g).matrix;
        bool orth = is_orthogonal(m);
        bool invol = G.is_involution(g);
        gens_ok = gens_ok && orth && invol;
        gens.push_back({{"generator", k}, {"orthogonal", orth}, {"involution", invol}});
    }
    report["generators"] = std::move(gens);
    if (!gens_ok) {
        report["pass"] = false;
        out << report.dump(2) << '\n';
        return 1;
    }

    std::vector<int> targets;
    if (selector.empty())
        for (std::size_t i = 0; i < ctx.classes.size(); ++i) targets.push_back(static_cast<int>(i));
    else
        targets.push_back(resolve_selector(ctx, selector));
    report["class_count"] = ctx.classes.size();

    auto reps = available_images(G);
    nlohmann::json classes = nlohmann::json::array();
    for (int idx : targets) {
        const StringCGroup& S = ctx.classes[idx];
        AbstractPolyhedron P(S);
        AxiomReport ar = verify_axioms(P.poset(), mode);
        bool ft = flag_transitive(P) && poset_flag_transitive(P.poset());
        bool flags_match = ar.flag_count == G.size();
        nlohmann::json c{{"type", type_string(S)},
                         {"label", ctx.letters[idx]},
                         {"axioms", ar.all_pass()},
                         {"flag_transitive", ft},
                         {"flag_count", ar.flag_count},
                         {"flag_count_matches_order", flags_match}};
        if (!ar.failures.empty()) c["failures"] = ar.failures;
        bool class_ok = ar.all_pass() && ft && flags_match;

        nlohmann::json jreps;
        for (const auto& [name, images] : reps) {
            nlohmann::json r;
            bool rep_ok = true;
            try {
                int dim_formula = wythoff_dimension(images, S);
                WythoffSpace W = wythoff_space(images, S);
                r["dimension"] = dim_formula;
                r["trace_formula_matches_fixed_space"] = (W.dimension == dim_formula);
                rep_ok = W.dimension == dim_formula;
                if (W.dimension >= 1) {
                    RealizationSkeleton skel = build_skeleton(P, images, name, W.basis[0]);
                    bool eq = skeleton_equivariant(skel);
                    bool st = skeleton_stabilizers_match(skel);
                    bool nn = skeleton_equal_norms(skel);
                    bool ll = skeleton_equal_edge_lengths(skel);
                    r["equivariant"] = eq;
                    r["stabilizers_match"] = st;
                    r["equal_vertex_norms"] = nn;
                    r["equal_edge_lengths"] = ll;
                    r["family"] = family_name(classify_family(skel, mode));
                    rep_ok = rep_ok && eq && st && nn && ll;
                }
            } catch (const std::exception& e) {
                r["error"] = e.what();
                rep_ok = false;
            }
            r["pass"] = rep_ok;
            jreps[name] = std::move(r);
            class_ok = class_ok && rep_ok;
        }
        c["representations"] = std::move(jreps);
        c["pass"] = class_ok;
        ok = ok && class_ok;
        classes.push_back(std::move(c));
    }
    report["classes"] = std::move(classes);
    report["pass"] = ok;
    out << report.dump(2) << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"string C-groups, abstract polyhedra, and their geometric realizations"};
    app.require_subcommand(1);

    std::string group_arg, selector, rep_name = "phi1", family = "auto", out_flag;
    bool as_json = false, serial = false;
    PlateauParams plateau;
    int arc_samples = 16;

    CLI::App* c_enum = app.add_subcommand("enumerate", "list the string C-group classes");
    c_enum->add_option("group", group_arg, "builtin h3 or a generator-matrix JSON file")
        ->required();
    c_enum->add_flag("--json", as_json, "emit JSON instead of a table");
    c_enum->add_flag("--serial", serial, "disable parallel kernels");

    CLI::App* c_poset = app.add_subcommand("poset", "build and verify one face poset");
    c_poset->add_option("group", group_arg, "builtin h3 or a generator-matrix JSON file")
        ->required();
    c_poset->add_option("selector", selector, "class selector, e.g. 5,3 or 10,3:b")->required();
    c_poset->add_option("--out", out_flag, "output directory (default: POLYREAL_OUT or .)");
    c_poset->add_flag("--serial", serial, "disable parallel kernels");

    CLI::App* c_real = app.add_subcommand("realize", "realize one class geometrically");
    c_real->add_option("group", group_arg, "builtin h3 or a generator-matrix JSON file")
        ->required();
    c_real->add_option("selector", selector, "class selector, e.g. 5,3 or 10,3:b")->required();
    c_real->add_option("--rep", rep_name, "representation: phi1, phi2, or native")
        ->check(CLI::IsMember({"phi1", "phi2", "native"}));
    c_real->add_option("--family", family, "sp, co, st, sk, or auto")
        ->check(CLI::IsMember({"sp", "co", "st", "sk", "auto"}));
    c_real->add_option("--out", out_flag, "output directory (default: POLYREAL_OUT or .)");
    c_real->add_option("--arc-samples", arc_samples, "spherical arc sampling")
        ->check(CLI::PositiveNumber);
    c_real->add_option("--plateau-samples", plateau.samples_per_edge, "boundary samples per edge")
        ->check(CLI::PositiveNumber);
    c_real->add_option("--plateau-step", plateau.step, "relaxation damping in (0,1]");
    c_real->add_option("--plateau-tol", plateau.tolerance, "convergence displacement");
    c_real->add_option("--plateau-max-iters", plateau.max_iterations, "iteration budget")
        ->check(CLI::PositiveNumber);
    c_real->add_option("--plateau-levels", plateau.refinement_levels, "refinement levels")
        ->check(CLI::NonNegativeNumber);
    c_real->add_flag("--serial", serial, "disable parallel kernels");

    CLI::App* c_check = app.add_subcommand("check", "run the invariant suites");
    c_check->add_option("group", group_arg, "builtin h3 or a generator-matrix JSON file")
        ->required();
    c_check->add_option("selector", selector, "restrict to one class");
    c_check->add_flag("--serial", serial, "disable parallel kernels");

    std::vector<const char*> argv;
    argv.push_back("polyreal");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    ExecMode mode = serial ? ExecMode::Serial : ExecMode::OpenMP;
    try {
        GroupContext ctx = load_group(group_arg, mode);
        if (c_enum->parsed()) return cmd_enumerate(ctx, as_json, out);
        if (c_poset->parsed())
            return cmd_poset(ctx, resolve_selector(ctx, selector), resolve_out_dir(out_flag), mode,
                             out);
        if (c_real->parsed())
            return cmd_realize(ctx, resolve_selector(ctx, selector), rep_name, family,
                               resolve_out_dir(out_flag), plateau, arc_samples, mode, out, err);
        if (c_check->parsed()) return cmd_check(ctx, selector, mode, out);
        err << "no subcommand\n";
        return 2;
    } catch (const CliError& e) {
        err << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace polyreal

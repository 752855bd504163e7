#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "isolab/experiments.hpp"
#include "isolab/serialize.hpp"

namespace {

using namespace isolab;

constexpr int kExitPass = 0;
constexpr int kExitClaimFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitBudgetExceeded = 3;

VertexId parse_vertex(const std::string& text) {
    VertexId v;
    std::string coords = text;
    const auto semi = text.find(';');
    if (semi != std::string::npos) {
        v.tag = std::stoi(text.substr(semi + 1));
        coords = text.substr(0, semi);
    }
    std::size_t pos = 0;
    int axis = 0;
    while (pos < coords.size() && axis < 4) {
        const auto comma = coords.find(',', pos);
        const std::string tok = coords.substr(pos, comma == std::string::npos ? std::string::npos
                                                                              : comma - pos);
        v.coords[axis++] = std::stoll(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return v;
}

std::vector<Scaled> parse_radii(const std::string& text) {
    std::vector<Scaled> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto comma = text.find(',', pos);
        out.push_back(std::stoll(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                             : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

CompareGrid parse_grid(const std::string& text) {
    // "2^a..2^b" or a plain maximal power-of-two value
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        auto exp_of = [](const std::string& s) {
            const auto caret = s.find('^');
            if (caret == std::string::npos) return log2_ceil(std::stoll(s));
            return static_cast<int>(std::stoll(s.substr(caret + 1)));
        };
        const int lo = exp_of(text.substr(0, dots));
        const int hi = exp_of(text.substr(dots + 2));
        CompareGrid g;
        for (int e = lo; e <= hi; ++e) g.constants.push_back(std::int64_t{1} << e);
        return g;
    }
    return CompareGrid::powers(log2_ceil(std::stoll(text)));
}

nlohmann::json load_params(const std::string& path, const nlohmann::json& config) {
    nlohmann::json params = config.value("params", nlohmann::json::object());
    if (!path.empty()) {
        const nlohmann::json file = read_json_file(path);
        for (const auto& [k, v] : file.items()) params[k] = v;
    }
    return params;
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) std::cout << content;
    else write_text_file(path, content);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isolab: isoperimetric profiles, counterexample graph families and "
                 "large-scale equivalence checks on implicit graphs"};
    app.require_subcommand(1);

    std::string config_path;
    std::size_t budget_vertices = 4'000'000;
    app.add_option("--config", config_path, "JSON config file; explicit flags override it");
    app.add_option("--budget", budget_vertices, "vertex-count cap for searches");

    // generate
    auto* gen = app.add_subcommand("generate", "build a named space and write its JSON form");
    std::string gen_name, gen_params_path, gen_out;
    bool gen_materialize = false;
    gen->add_option("generator", gen_name,
                    "glued_trees | vonkoch | perforated | constricted | ib_pair | cube_chain | zd")
        ->required();
    gen->add_option("--params", gen_params_path, "JSON file with generator parameters");
    gen->add_option("--out", gen_out, "output path (stdout if omitted)");
    gen->add_flag("--materialize", gen_materialize, "write explicit vertices/edges (finite spaces)");

    // describe
    auto* desc = app.add_subcommand("describe", "named subsets and exact counts of a space");
    std::string desc_space, desc_out;
    desc->add_option("--space", desc_space, "space JSON file")->required();
    desc->add_option("--out", desc_out, "output path (stdout if omitted)");

    // profile
    auto* prof = app.add_subcommand("profile", "exact or family-restricted profile");
    prof->set_help_flag("--help", "print help");  // frees -h/--h for the thickness option
    std::string prof_space, prof_family, prof_center, prof_radii, prof_out, prof_csv;
    Scaled prof_h = 0;
    bool prof_exact = false, prof_connected = false, prof_upper = false;
    prof->add_option("--space", prof_space, "space JSON file")->required();
    prof->add_option("--h", prof_h, "boundary thickness in scaled units");
    prof->add_flag("--exact", prof_exact, "full enumeration (finite spaces up to 22 vertices)");
    prof->add_flag("--connected", prof_connected, "restrict the exact profile to connected subsets");
    prof->add_option("--family", prof_family, "'balls' (needs --center/--radii) or 'named:<prefix>'");
    prof->add_flag("--upper", prof_upper, "upper restricted profile instead of lower");
    prof->add_option("--center", prof_center, "ball family center, e.g. '3,4' or '0,0;1'");
    prof->add_option("--radii", prof_radii, "comma-separated scaled radii");
    prof->add_option("--out", prof_out, "profile JSON output");
    prof->add_option("--csv", prof_csv, "CSV output path");

    // growth
    auto* grow = app.add_subcommand("growth", "ball volume growth around a center");
    std::string grow_space, grow_center, grow_radii, grow_out, grow_csv;
    grow->add_option("--space", grow_space, "space JSON file")->required();
    grow->add_option("--center", grow_center, "center vertex")->required();
    grow->add_option("--radii", grow_radii, "comma-separated scaled radii")->required();
    grow->add_option("--out", grow_out, "growth JSON output");
    grow->add_option("--csv", grow_csv, "CSV output path");

    // verify
    auto* ver = app.add_subcommand("verify", "run a named experiment and emit its report");
    std::string ver_name, ver_params_path, ver_report, ver_plot, ver_format = "json";
    ver->add_option("experiment", ver_name, "experiment name (see --list)")->required();
    ver->add_option("--params", ver_params_path, "JSON file with experiment parameters");
    ver->add_option("--report", ver_report, "report output path");
    ver->add_option("--format", ver_format, "report format: json | csv");
    ver->add_option("--plot", ver_plot, "SVG plot output path");

    // compare
    auto* cmp = app.add_subcommand("compare", "order two sampled curves up to constants");
    std::string cmp_f, cmp_g, cmp_grid = "2^0..2^10", cmp_out;
    bool cmp_equiv = false;
    cmp->add_option("--f", cmp_f, "curve/profile/growth JSON")->required();
    cmp->add_option("--g", cmp_g, "curve/profile/growth JSON")->required();
    cmp->add_option("--grid", cmp_grid, "constant grid, e.g. 2^0..2^10");
    cmp->add_flag("--equivalent", cmp_equiv, "check both directions");
    cmp->add_option("--out", cmp_out, "witness JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json config = nlohmann::json::object();
        if (!config_path.empty()) config = read_json_file(config_path);
        Budget budget{config.value("budget", budget_vertices)};
        if (app.count("--budget")) budget.max_vertices = budget_vertices;

        if (gen->parsed()) {
            nlohmann::json spec{{"generator", gen_name},
                                {"params", load_params(gen_params_path, config)}};
            GeneratedSpace g = load_space(spec, budget);
            const nlohmann::json out =
                gen_materialize ? space_to_json(g.space, budget) : generated_to_json(g);
            write_or_print(gen_out, json_dump_stable(out));
            return kExitPass;
        }

        if (desc->parsed()) {
            GeneratedSpace g = load_space(read_json_file(desc_space), budget);
            write_or_print(desc_out, json_dump_stable(describe_generated(g)));
            return kExitPass;
        }

        if (prof->parsed()) {
            GeneratedSpace g = load_space(read_json_file(prof_space), budget);
            const Scaled h = prof_h > 0 ? prof_h
                                        : config.value("h", g.space.scale());
            ProfileCurve curve;
            if (prof_exact) {
                ExactProfileOptions opt;
                opt.connected_only = prof_connected;
                opt.budget = budget;
                curve = exact_profile(g.space, h, opt);
            } else if (prof_family == "balls") {
                if (prof_center.empty() || prof_radii.empty())
                    throw Error("--family balls needs --center and --radii");
                FamilySpec family{"balls", {}};
                const VertexId c = parse_vertex(prof_center);
                for (Scaled r : parse_radii(prof_radii))
                    family.members.push_back({"ball_r" + std::to_string(r), ball(g.space, c, r, budget)});
                curve = family_profile(g.space, family, h,
                                       prof_upper ? FamilyMode::upper : FamilyMode::lower, budget)
                            .curve;
            } else if (prof_family.rfind("named:", 0) == 0) {
                const std::string prefix = prof_family.substr(6);
                FamilySpec family{prof_family, {}};
                for (const auto& [name, region] : g.sets)
                    if (name.rfind(prefix, 0) == 0) family.members.push_back({name, region});
                if (family.members.empty()) throw Error("no named sets match '" + prefix + "'");
                curve = family_profile(g.space, family, h,
                                       prof_upper ? FamilyMode::upper : FamilyMode::lower, budget)
                            .curve;
            } else {
                throw Error("choose --exact or --family balls|named:<prefix>");
            }
            if (!prof_out.empty() || prof_csv.empty())
                write_or_print(prof_out, json_dump_stable(profile_to_json(curve)));
            if (!prof_csv.empty()) write_text_file(prof_csv, points_to_csv(curve.points));
            return kExitPass;
        }

        if (grow->parsed()) {
            GeneratedSpace g = load_space(read_json_file(grow_space), budget);
            GrowthCurve curve =
                growth_curve(g.space, parse_vertex(grow_center), parse_radii(grow_radii), budget);
            if (!grow_out.empty() || grow_csv.empty())
                write_or_print(grow_out, json_dump_stable(growth_to_json(curve)));
            if (!grow_csv.empty()) write_text_file(grow_csv, points_to_csv(curve.points));
            return kExitPass;
        }

        if (ver->parsed()) {
            ExperimentSpec spec;
            spec.name = ver_name;
            spec.params = load_params(ver_params_path, config);
            spec.budget = budget;
            const auto t0 = std::chrono::steady_clock::now();
            Report report = run_experiment(spec);
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            for (const auto& a : report.assertions)
                std::cout << (a.pass ? "ok   " : "FAIL ") << a.name << "\n";
            std::cout << report.experiment << ": " << report.status << " (" << ms << " ms)\n";
            if (!ver_report.empty()) emit_report(report, ver_report, ver_format);
            if (!ver_plot.empty()) {
                const auto series = report_plot_series(report);
                if (series.empty()) {
                    std::cerr << "no plottable tables in this report\n";
                } else {
                    PlotOptions opt;
                    opt.log_log = true;
                    opt.annotate_slope = true;
                    opt.title = report.experiment;
                    write_text_file(ver_plot, emit_plot(series, opt));
                }
            }
            if (report.status == "pass") return kExitPass;
            if (report.status == "fail") return kExitClaimFailed;
            if (report.status == "budget-exceeded") return kExitBudgetExceeded;
            return kExitInvalidInput;
        }

        if (cmp->parsed()) {
            const Curve f = curve_from_json(read_json_file(cmp_f));
            const Curve g = curve_from_json(read_json_file(cmp_g));
            const CompareGrid grid = parse_grid(config.value("grid", cmp_grid));
            const ComparisonWitness w = cmp_equiv ? compare_equivalent(f, g, grid) : compare(f, g, grid);
            write_or_print(cmp_out, json_dump_stable(witness_to_json(w)));
            std::cerr << relation_name(w.relation) << "\n";
            return w.holds() ? kExitPass : kExitClaimFailed;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudgetExceeded;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

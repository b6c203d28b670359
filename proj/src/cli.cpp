#include "shrinkpath/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shrinkpath/dataset.hpp"
#include "shrinkpath/export.hpp"
#include "shrinkpath/inference.hpp"
#include "shrinkpath/svg.hpp"

namespace shrinkpath {

namespace {

using nlohmann::json;

struct CommonArgs {
    std::string data_path;
    std::string dataset;
    std::string y_name;
    std::string x_list;
    unsigned steps = 8;
    std::string mode_name = "ml";
    std::string out_dir = ".";
    std::string format_name = "csv";
    bool svg = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    auto* input = cmd->add_option_group("input", "data source");
    input->add_option("--data", a.data_path, "CSV file with a header row");
    input->add_option("--dataset", a.dataset, "built-in dataset name (portland)");
    input->require_option(1);
    cmd->add_option("--y", a.y_name, "outcome column name")->required();
    cmd->add_option("--x", a.x_list, "comma-separated predictor column names")->required();
    cmd->add_option("--steps", a.steps, "lattice points per unit of m")
        ->default_val(8u)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", a.mode_name, "risk plug-in mode: ml|unbiased")
        ->default_val("ml")
        ->check(CLI::IsMember({"ml", "unbiased"}));
    cmd->add_option("--out", a.out_dir, "output directory")->default_val(".");
    cmd->add_option("--format", a.format_name, "export/summary format: csv|json")
        ->default_val("csv")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--svg", a.svg, "also render SVG plots");
}

std::vector<std::string> split_list(const std::string& list) {
    std::vector<std::string> names;
    std::string item;
    std::istringstream ss(list);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) names.push_back(item);
    }
    return names;
}

Table load_table(const CommonArgs& a) {
    if (!a.dataset.empty()) return builtin_dataset(a.dataset);
    if (!a.data_path.empty()) return read_csv_file(a.data_path);
    throw std::invalid_argument("no input data: pass --data <csv> or --dataset portland");
}

struct LoadedModel {
    Table table;
    StandardizedModel model;
    CanonicalForm cf;
    RiskMode mode;
    ExportFormat format;
};

LoadedModel load_model(const CommonArgs& a) {
    LoadedModel lm{load_table(a), {}, {}, parse_risk_mode(a.mode_name),
                   parse_export_format(a.format_name)};
    lm.model = standardize(lm.table, a.y_name, split_list(a.x_list));
    lm.cf = canonicalize(lm.model);
    return lm;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join_nums(const Vector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += num(v[i]);
    }
    return s;
}

void warn_degenerate(const ShrinkagePath& path, const CanonicalForm& cf, std::ostream& err) {
    if (path.degenerate_knot)
        err << "warning: degenerate knot (R^2 = " << num(cf.r2)
            << "); path collapses to a single linear piece\n";
}

json path_summary_json(const LoadedModel& lm, const ShrinkagePath& path) {
    json j;
    j["kind"] = to_string(path.kind);
    j["n"] = lm.cf.n;
    j["p"] = lm.cf.p;
    j["r2"] = lm.cf.r2;
    j["mStar"] = path.m_star;
    j["deltaStar"] = path.delta_star;
    j["degenerateKnot"] = path.degenerate_knot;
    j["mode"] = to_string(lm.mode);
    j["steps"] = path.steps;
    if (path.q) j["q"] = *path.q;
    return j;
}

void list_files(const std::vector<std::filesystem::path>& files, std::ostream& out) {
    for (const auto& f : files) out << "wrote " << f.string() << '\n';
}

std::vector<std::filesystem::path> write_trace_svgs(
    const TraceBundle& bundle, const std::vector<std::string>& names,
    const std::filesystem::path& dir, const TraceBundle* lr_compare,
    const std::string& compare_label) {
    std::vector<std::filesystem::path> files;
    TraceRenderOptions opt;
    opt.series_names = names;
    for (const char* type : {"coef", "spat", "rmse", "exev", "infd", "lr"}) {
        TraceRenderOptions o = opt;
        if (std::string(type) == "exev" || std::string(type) == "infd")
            o.series_names.clear();  // component-indexed, let defaults label them
        if (std::string(type) == "lr" && lr_compare) {
            o.compare = lr_compare;
            o.compare_label = compare_label;
        }
        const auto dest = dir / (std::string(type) + ".svg");
        write_file_atomic(dest, render_trace(bundle, type, o));
        files.push_back(dest);
    }
    return files;
}

int run_fit(const CommonArgs& a, std::ostream& out, std::ostream& err) {
    LoadedModel lm = load_model(a);
    const ShrinkagePath path = build_efficient_path(lm.cf, a.steps);
    warn_degenerate(path, lm.cf, err);
    const TraceBundle bundle = assemble_traces(lm.cf, path, lm.mode);

    auto files = export_traces(bundle, lm.model.x_names, lm.format, a.out_dir);
    if (a.svg) {
        auto svgs = write_trace_svgs(bundle, lm.model.x_names, a.out_dir, nullptr, "");
        files.insert(files.end(), svgs.begin(), svgs.end());
    }

    if (lm.format == ExportFormat::json) {
        json j = path_summary_json(lm, path);
        j["command"] = "fit";
        out << j.dump(2) << '\n';
    } else {
        out << "efficient path: n = " << lm.cf.n << ", p = " << lm.cf.p
            << ", steps = " << a.steps << ", mode = " << to_string(lm.mode) << '\n'
            << "R^2 = " << num(lm.cf.r2) << '\n'
            << "mStar = " << num(path.m_star) << '\n'
            << "deltaStar = " << join_nums(path.delta_star) << '\n';
        list_files(files, out);
    }
    return 0;
}

int run_qm(const CommonArgs& a, const std::string& q_arg, bool search, std::ostream& out,
           std::ostream& err) {
    LoadedModel lm = load_model(a);

    double q = 0.0;
    std::string q_origin;
    std::optional<QSearchResult> searched;
    if (search) {
        searched = q_search(lm.cf, default_q_mesh(), a.steps);
        q = searched->q_best;
        q_origin = "mesh search";
    } else if (q_arg == "best2") {
        q = q_best_p2(lm.cf);
        q_origin = "closed-form p=2 optimum";
    } else {
        q = parse_double(q_arg);
        q_origin = "given";
    }

    const ShrinkagePath path = build_qm_path(lm.cf, q, a.steps);
    const TraceBundle bundle = assemble_traces(lm.cf, path, lm.mode);
    const double lr_min = neg2_log_lr(lm.cf, path.delta_star);

    auto files = export_traces(bundle, lm.model.x_names, lm.format, a.out_dir);
    if (a.svg) {
        const ShrinkagePath eff = build_efficient_path(lm.cf, a.steps);
        const TraceBundle eff_bundle = assemble_traces(lm.cf, eff, lm.mode);
        auto svgs = write_trace_svgs(eff_bundle, lm.model.x_names, a.out_dir, &bundle,
                                     "qm path (q = " + num(q) + ")");
        files.insert(files.end(), svgs.begin(), svgs.end());
    }
    warn_degenerate(path, lm.cf, err);

    if (lm.format == ExportFormat::json) {
        json j = path_summary_json(lm, path);
        j["command"] = "qm";
        j["q"] = q;
        j["qOrigin"] = q_origin;
        j["lrMin"] = lr_min;
        if (searched) {
            j["qBest"] = searched->q_best;
            j["mBest"] = searched->m_best;
        }
        out << j.dump(2) << '\n';
    } else {
        out << "qm path: n = " << lm.cf.n << ", p = " << lm.cf.p << ", steps = " << a.steps
            << ", mode = " << to_string(lm.mode) << '\n'
            << "q = " << num(q) << " (" << q_origin << ")\n"
            << "mStar = " << num(path.m_star) << " with -2logLR = " << num(lr_min) << '\n';
        list_files(files, out);
    }
    return 0;
}

int run_yonx(const CommonArgs& a, std::ostream& out, std::ostream& err) {
    LoadedModel lm = load_model(a);
    if (lm.model.p != 1) throw std::invalid_argument("yonx requires exactly one --x column");

    const ShrinkagePath path = build_yonx_path(lm.model, a.steps);
    warn_degenerate(path, lm.cf, err);
    const TraceBundle bundle = assemble_traces(lm.cf, path, lm.mode);

    auto files = export_traces(bundle, lm.model.x_names, lm.format, a.out_dir);
    if (a.svg) {
        auto svgs = write_trace_svgs(bundle, lm.model.x_names, a.out_dir, nullptr, "");
        files.insert(files.end(), svgs.begin(), svgs.end());
        const auto dest = std::filesystem::path(a.out_dir) / "yonx.svg";
        write_file_atomic(dest, render_yonx(lm.model, path));
        files.push_back(dest);
    }

    if (lm.format == ExportFormat::json) {
        json j = path_summary_json(lm, path);
        j["command"] = "yonx";
        json lines = json::array();
        for (const FittedLine& ln : path.display_lines)
            lines.push_back({{"m", ln.m}, {"slope", ln.slope}, {"intercept", ln.intercept}});
        j["displayLines"] = std::move(lines);
        out << j.dump(2) << '\n';
    } else {
        out << "yonx path: n = " << lm.cf.n << ", steps = " << a.steps << '\n'
            << "mStar = " << num(path.m_star) << '\n';
        for (const FittedLine& ln : path.display_lines)
            out << "slope at m = " << num(ln.m) << ": " << num(ln.slope)
                << " (intercept " << num(ln.intercept) << ")\n";
        list_files(files, out);
    }
    return 0;
}

int run_ellipse(const CommonArgs& a, const std::string& pair_arg,
                const std::string& levels_arg, std::ostream& out, std::ostream& err) {
    LoadedModel lm = load_model(a);

    const auto pair_names = split_list(pair_arg);
    if (pair_names.size() != 2)
        throw std::invalid_argument("--pair needs exactly two column names, got '" +
                                    pair_arg + "'");
    std::vector<double> levels;
    for (const std::string& s : split_list(levels_arg)) levels.push_back(parse_double(s));
    if (levels.empty()) throw std::invalid_argument("--levels list is empty");

    auto coef_index = [&](const std::string& name) {
        for (std::size_t j = 0; j < lm.model.x_names.size(); ++j)
            if (lm.model.x_names[j] == name) return j;
        throw std::invalid_argument("--pair name '" + name + "' is not a predictor");
    };
    const std::size_t i = coef_index(pair_names[0]);
    const std::size_t j = coef_index(pair_names[1]);

    const ShrinkagePath path = build_efficient_path(lm.cf, a.steps);
    warn_degenerate(path, lm.cf, err);
    const EllipseSpec spec =
        confidence_ellipse(lm.cf, i, j, levels, path, pair_names[0], pair_names[1]);

    std::filesystem::create_directories(a.out_dir);
    std::vector<std::filesystem::path> files;
    if (lm.format == ExportFormat::json) {
        json doc;
        doc["pair"] = spec.names;
        doc["center"] = {spec.center.x, spec.center.y};
        doc["cov2"] = {{spec.cov2[0][0], spec.cov2[0][1]},
                       {spec.cov2[1][0], spec.cov2[1][1]}};
        doc["levels"] = spec.levels;
        doc["mStar"] = spec.m_star;
        json rings = json::array();
        for (const auto& ring : spec.boundaries) {
            json r = json::array();
            for (const Point2& p : ring) r.push_back({p.x, p.y});
            rings.push_back(std::move(r));
        }
        doc["boundaries"] = std::move(rings);
        json ov = json::array();
        for (const Point2& p : spec.overlay) ov.push_back({p.x, p.y});
        doc["overlay"] = std::move(ov);
        const auto dest = std::filesystem::path(a.out_dir) / "ellipse.json";
        write_file_atomic(dest, doc.dump(2) + "\n");
        files.push_back(dest);
    } else {
        std::ostringstream csv;
        csv << "level,x,y\n";
        for (std::size_t k = 0; k < spec.boundaries.size(); ++k)
            for (const Point2& p : spec.boundaries[k])
                csv << format_double(spec.levels[k]) << ',' << format_double(p.x) << ','
                    << format_double(p.y) << '\n';
        const auto dest = std::filesystem::path(a.out_dir) / "ellipse.csv";
        write_file_atomic(dest, csv.str());
        files.push_back(dest);
    }
    if (a.svg) {
        const auto dest = std::filesystem::path(a.out_dir) / "ellipse.svg";
        write_file_atomic(dest, render_ellipse(spec));
        files.push_back(dest);
    }

    out << "ellipse pair (" << spec.names[0] << ", " << spec.names[1] << "), levels "
        << levels_arg << '\n'
        << "center = (" << num(spec.center.x) << ", " << num(spec.center.y) << ")\n"
        << "knot at m = " << num(spec.m_star) << '\n';
    list_files(files, out);
    return 0;
}

int run_info(const CommonArgs& a, std::ostream& out, std::ostream&) {
    LoadedModel lm = load_model(a);
    const CanonicalForm& cf = lm.cf;

    if (lm.format == ExportFormat::json) {
        json j;
        j["command"] = "info";
        j["n"] = cf.n;
        j["p"] = cf.p;
        j["lambda"] = cf.lambda;
        j["rho"] = cf.rho;
        j["c"] = cf.c;
        j["r2"] = cf.r2;
        j["yty"] = cf.yty;
        j["rss"] = cf.rss;
        j["sigma2ML"] = cf.sigma2_ml;
        j["sigma2Unb"] = cf.sigma2_unb;
        j["fRatios"] = cf.f_ratios;
        j["betaOLS"] = cf.beta_ols;
        j["names"] = lm.model.x_names;
        out << j.dump(2) << '\n';
        return 0;
    }

    out << "canonical form: n = " << cf.n << ", p = " << cf.p << '\n'
        << "R^2 = " << num(cf.r2) << ", y'y = " << num(cf.yty) << ", RSS = " << num(cf.rss)
        << '\n'
        << "sigma^2: ML = " << num(cf.sigma2_ml) << ", unbiased = " << num(cf.sigma2_unb)
        << '\n'
        << "lambda  = " << join_nums(cf.lambda) << '\n'
        << "rho     = " << join_nums(cf.rho) << '\n'
        << "c       = " << join_nums(cf.c) << '\n'
        << "F       = " << join_nums(cf.f_ratios) << '\n'
        << "betaOLS = " << join_nums(cf.beta_ols) << '\n';
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"generalized ridge shrinkage paths, TRACE diagnostics and plots"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);

    CommonArgs fit_args, qm_args, yonx_args, ell_args, info_args;
    std::string q_arg, pair_arg, levels_arg = "0.10,0.90";
    bool search = false;

    auto* fit = app.add_subcommand("fit", "efficient shrinkage path with TRACE exports");
    add_common(fit, fit_args);

    auto* qm = app.add_subcommand("qm", "q-shape shrinkage path");
    add_common(qm, qm_args);
    auto* qopt = qm->add_option("--q", q_arg, "q-shape value, or 'best2' for the p=2 optimum");
    auto* sopt = qm->add_flag("--search", search, "search the default q mesh (5 .. -5)");
    qopt->excludes(sopt);

    auto* yonx = app.add_subcommand("yonx", "simple p = 1 regression path and fit plot");
    add_common(yonx, yonx_args);

    auto* ell = app.add_subcommand("ellipse", "bivariate confidence ellipses for a pair");
    add_common(ell, ell_args);
    ell->add_option("--pair", pair_arg, "two predictor names, comma-separated")->required();
    ell->add_option("--levels", levels_arg, "confidence levels in (0,1)")
        ->default_val("0.10,0.90");

    auto* info = app.add_subcommand("info", "canonical-form summary");
    add_common(info, info_args);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (fit->parsed()) return run_fit(fit_args, out, err);
        if (qm->parsed()) {
            if (q_arg.empty() && !search)
                throw std::invalid_argument("qm needs --q <value|best2> or --search");
            return run_qm(qm_args, q_arg, search, out, err);
        }
        if (yonx->parsed()) return run_yonx(yonx_args, out, err);
        if (ell->parsed()) return run_ellipse(ell_args, pair_arg, levels_arg, out, err);
        if (info->parsed()) return run_info(info_args, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "usage error: no subcommand given\n";
    return 2;
}

}  // namespace shrinkpath

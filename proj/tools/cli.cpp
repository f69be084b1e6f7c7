#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "extval/characterization.hpp"
#include "extval/error.hpp"
#include "extval/info_measures.hpp"
#include "extval/io.hpp"
#include "extval/model_family.hpp"

namespace extval::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open '" + path + "' for writing");
    return f;
}

GridSpec load_spec(const std::string& path) {
    if (path.empty())
        return GridSpec{};
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot open grid spec '" + path + "'");
    Json j;
    try {
        j = Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("grid spec: ") + e.what());
    }
    return grid_spec_from_json(j);
}

int cmd_measure(const std::string& path, std::ostream& out) {
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot open '" + path + "'");
    auto labels = read_labels_csv(f);
    auto table = build_contingency(labels);
    auto measures = all_measures(table);
    Json report{{"n", labels.size()},
                {"table", to_json(table)},
                {"q_scores", to_json(q_scores(table))}};
    Json mv = to_json(measures);
    report["measures"] = mv["measures"];
    report["degenerate"] = mv["degenerate"];
    out << report.dump(2) << '\n';
    return kOk;
}

int cmd_model(const ModelParams& params, std::optional<std::size_t> n, std::ostream& out) {
    if (auto v = validate(params); !v)
        throw Error(ErrorKind::InvalidParameter, "invalid model parameters: " + v.message());
    auto joint = build_joint(params);
    Json report{{"params", to_json(params)}, {"joint", to_json(joint)}};
    if (n)
        report["expected_table"] = to_json(expected_table(joint, *n));
    out << report.dump(2) << '\n';
    return kOk;
}

int cmd_grid(const GridSpec& spec, const std::string& csv_path, const std::string& report_path,
             unsigned threads, std::ostream& out) {
    auto grid = evaluate_grid(spec, PairConvention::Continuous, threads);
    auto rounded = evaluate_grid(spec, PairConvention::RoundedCells, threads);
    auto report = check_all(grid);
    auto alt = check_all(rounded);

    {
        auto f = open_output(csv_path);
        write_grid_csv(f, grid);
    }
    {
        auto f = open_output(report_path);
        Json j{{"spec", to_json(spec)},
               {"primary", to_json(report, grid)},
               {"alternative", to_json(alt, rounded)}};
        f << j.dump(2) << '\n';
    }

    out << grid.rows.size() << " valid combinations\n\n";
    write_violation_summary(out, report);
    out << '\n';
    write_violation_summary(out, alt);
    return kOk;
}

int cmd_ranks(const GridSpec& spec, const std::string& out_path, unsigned threads,
              std::ostream& out) {
    auto grid = evaluate_grid(spec, PairConvention::Continuous, threads);
    auto ranks = rank_table(grid);
    if (out_path.empty()) {
        write_ranks_csv(out, ranks);
        return kOk;
    }
    {
        auto f = open_output(out_path);
        write_ranks_csv(f, ranks);
    }
    out << grid.rows.size() << " ranked combinations\n";
    out << "spearman vs Q2:";
    for (Measure m : kReportOrder)
        if (m != Measure::Q2)
            out << ' ' << measure_column(m) << '='
                << format_number(spearman(ranks[m], ranks[Measure::Q2]));
    out << '\n';
    return kOk;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& out) {
    auto sweep = sweep_eps1(spec);
    if (out_path.empty()) {
        write_sweep_csv(out, sweep);
        return kOk;
    }
    {
        auto f = open_output(out_path);
        write_sweep_csv(f, sweep);
    }
    out << sweep.size() << " sweep points written to " << out_path << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"External cluster-validity measures and their characterization"};
    app.name("extval");
    app.require_subcommand(1);

    std::string labels_path;
    auto* measure = app.add_subcommand("measure", "All seven measures for a class,cluster CSV");
    measure->add_option("labels", labels_path, "CSV with header class,cluster")->required();

    ModelParams params;
    std::optional<std::size_t> model_n;
    auto* model = app.add_subcommand("model", "Joint distribution of the parametric family");
    model->add_option("--classes", params.num_classes, "Number of classes")->capture_default_str();
    model->add_option("--useful", params.useful_clusters, "Useful clusters")->capture_default_str();
    model->add_option("--noise", params.noise_clusters, "Noise clusters")->capture_default_str();
    model->add_option("--eps1", params.eps1, "Mass on unmatched useful clusters")->capture_default_str();
    model->add_option("--eps2", params.eps2, "Mass on noise clusters")->capture_default_str();
    model->add_option("--n", model_n, "Also emit the expected table for n objects");

    std::string spec_path;
    std::optional<std::size_t> grid_n;
    std::optional<std::size_t> grid_classes;
    unsigned threads = 0;
    std::string csv_path = "grid.csv";
    std::string report_path = "violations.json";
    auto* grid = app.add_subcommand("grid", "Evaluate the parameter grid and check the desiderata");
    grid->add_option("--spec", spec_path, "Grid spec JSON");
    grid->add_option("--n", grid_n, "Number of objects (overrides the spec)");
    grid->add_option("--classes", grid_classes, "Number of classes (overrides the spec)");
    grid->add_option("--csv", csv_path, "Grid CSV output")->capture_default_str();
    grid->add_option("--report", report_path, "Violation report JSON output")->capture_default_str();
    grid->add_option("--threads", threads, "Worker threads, 0 = all cores");

    std::string ranks_out;
    auto* ranks = app.add_subcommand("ranks", "Per-measure ranks over the grid");
    ranks->add_option("--spec", spec_path, "Grid spec JSON");
    ranks->add_option("--n", grid_n, "Number of objects (overrides the spec)");
    ranks->add_option("--classes", grid_classes, "Number of classes (overrides the spec)");
    ranks->add_option("--out", ranks_out, "Rank CSV output (stdout if omitted)");
    ranks->add_option("--threads", threads, "Worker threads, 0 = all cores");

    SweepSpec sweep_spec;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Measures along an eps1 sweep");
    sweep->add_option("--classes", sweep_spec.num_classes, "Number of classes")->capture_default_str();
    sweep->add_option("--useful", sweep_spec.useful, "Useful clusters")->capture_default_str();
    sweep->add_option("--n", sweep_spec.n, "Number of objects")->capture_default_str();
    sweep->add_option("--eps1", sweep_spec.eps1, "Ascending eps1 values in [0, 0.8]")->delimiter(',');
    sweep->add_option("--out", sweep_out, "Sweep CSV output (stdout if omitted)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        auto resolved_spec = [&] {
            GridSpec s = load_spec(spec_path);
            if (grid_n)
                s.n = *grid_n;
            if (grid_classes)
                s.num_classes = *grid_classes;
            s.check();
            return s;
        };
        if (*measure)
            return cmd_measure(labels_path, out);
        if (*model)
            return cmd_model(params, model_n, out);
        if (*grid)
            return cmd_grid(resolved_spec(), csv_path, report_path, threads, out);
        if (*ranks)
            return cmd_ranks(resolved_spec(), ranks_out, threads, out);
        if (*sweep)
            return cmd_sweep(sweep_spec, sweep_out, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

} // namespace extval::cli

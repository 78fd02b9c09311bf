// Command-line front end: dataset complexity reports, comparisons, synthetic
// data and the open-ball RBF classifier.

#include "shatter/analysis.hpp"
#include "shatter/classifier.hpp"
#include "shatter/dataset.hpp"
#include "shatter/equivalence.hpp"
#include "shatter/error.hpp"
#include "shatter/growth.hpp"
#include "shatter/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_internal = 2;

struct common_flags {
    std::string label;
    std::string delimiter = ",";
    std::string metric = "euclidean";
    double shrink = shatter::default_shrink;
    std::vector<std::size_t> schedule;
    std::size_t reps = 10;
    std::uint64_t seed = 42;
    double delta = 0.05;
    std::vector<double> zetas{0.01};
    std::string path = "both";
    bool no_timestamp = false;
    bool warn_duplicates = false;
    unsigned threads = 1;
    std::string out;
};

void add_dataset_flags(CLI::App* cmd, common_flags& f) {
    cmd->add_option("--label", f.label, "Label column: header name or #index (default: last column)");
    cmd->add_option("--delimiter", f.delimiter, "CSV delimiter")->capture_default_str();
}

void add_analysis_flags(CLI::App* cmd, common_flags& f) {
    add_dataset_flags(cmd, f);
    cmd->add_option("--metric", f.metric, "euclidean | manhattan | chebyshev")->capture_default_str();
    cmd->add_option("--shrink", f.shrink, "Relative shrink of each open ball below its nearest-enemy distance")
        ->capture_default_str();
    cmd->add_option("--schedule", f.schedule, "Subsample sizes for the growth curve (default: 10 geometric sizes)")
        ->delimiter(',');
    cmd->add_option("--reps", f.reps, "Repetitions per subsample size")->capture_default_str();
    cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--delta", f.delta, "Confidence parameter delta")->capture_default_str();
    cmd->add_option("--zeta", f.zetas, "Slack(s) above the epsilon threshold used for sample sizes")->delimiter(',');
    cmd->add_option("--path", f.path, "Shattering path: i | ii | both")->capture_default_str();
    cmd->add_option("--threads", f.threads, "Worker threads for growth repetitions")->capture_default_str();
    cmd->add_flag("--no-timestamp", f.no_timestamp, "Omit the timestamp so reports are byte-reproducible");
    cmd->add_flag("--warn-duplicates", f.warn_duplicates, "Warn on stderr when points share coordinates");
    cmd->add_option("--out", f.out, "Write the JSON report here instead of stdout");
}

char parse_delimiter(const std::string& d) {
    if (d == "\\t" || d == "tab") {
        return '\t';
    }
    if (d.size() != 1) {
        throw shatter::input_error("delimiter must be a single character");
    }
    return d.front();
}

shatter::analysis_options to_options(const common_flags& f) {
    shatter::analysis_options o;
    o.csv.label = f.label;
    o.csv.delimiter = parse_delimiter(f.delimiter);
    o.kind = shatter::parse_metric(f.metric);
    o.shrink = f.shrink;
    o.schedule = f.schedule;
    o.repetitions = f.reps;
    o.seed = f.seed;
    o.delta = f.delta;
    o.zetas = f.zetas;
    if (f.path == "i") {
        o.paths = shatter::path_selection::hyperplanes;
    } else if (f.path == "ii") {
        o.paths = shatter::path_selection::regions;
    } else if (f.path == "both") {
        o.paths = shatter::path_selection::both;
    } else {
        throw shatter::input_error("--path must be i, ii or both");
    }
    o.timestamp = !f.no_timestamp;
    o.threads = f.threads;
    return o;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out);
    if (!file) {
        throw shatter::input_error("cannot write '" + out + "'");
    }
    file << text;
}

void warn_about(const shatter::complexity_report& r, bool duplicates_requested) {
    for (const auto& w : r.warnings) {
        if (duplicates_requested || r.conflicting_duplicates > 0) {
            std::cerr << "warning: " << r.source << ": " << w << '\n';
        }
    }
}

int run_analyze(const std::string& path, const common_flags& f) {
    const auto report = shatter::analyze_file(path, to_options(f));
    warn_about(report, f.warn_duplicates);
    emit(shatter::to_json(report).dump(2) + "\n", f.out);
    return exit_ok;
}

int run_compare(const std::vector<std::string>& paths, const common_flags& f) {
    const auto result = shatter::compare(paths, to_options(f));
    for (const auto& e : result.entries) {
        if (e.report) {
            warn_about(*e.report, f.warn_duplicates);
        } else {
            std::cerr << "error: " << e.error << '\n';
        }
    }
    emit(shatter::to_json(result).dump(2) + "\n", f.out);
    return result.all_ok() ? exit_ok : exit_input;
}

int run_growth_curve(const std::string& path, const common_flags& f) {
    const auto opts = to_options(f);
    const auto data = shatter::normalize_unit_cube(shatter::load_csv(path, opts.csv));
    const auto schedule =
        opts.schedule.empty() ? shatter::default_schedule(data.size(), data.num_classes()) : opts.schedule;
    const auto curve = shatter::sample_growth_curve(data, schedule, opts.repetitions, opts.seed,
                                                    {opts.kind, opts.shrink, opts.threads});
    std::ostringstream buf;
    shatter::write_growth_curve_csv(buf, curve);
    emit(buf.str(), f.out);
    return exit_ok;
}

struct synth_flags {
    std::string kind = "gaussians";
    std::uint64_t seed = 42;
    std::string means = "0,0;10,10";
    double variance = 1.0;
    std::vector<std::size_t> counts{200, 200};
    std::size_t per_class = 200;
    std::size_t dim = 2;
    std::string out;
};

std::vector<std::vector<double>> parse_means(const std::string& text) {
    std::vector<std::vector<double>> means;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<double> mean;
        std::stringstream cells(group);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                mean.push_back(std::stod(cell, &used));
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::logic_error&) {
                throw shatter::input_error("--means: '" + cell + "' is not a number");
            }
        }
        means.push_back(std::move(mean));
    }
    return means;
}

int run_synth(const synth_flags& f) {
    std::optional<shatter::labeled_dataset> data;
    if (f.kind == "gaussians") {
        shatter::synth::gaussian_params p;
        p.means = parse_means(f.means);
        p.variance = f.variance;
        p.counts = f.counts;
        data = shatter::synth::gaussians(p, f.seed);
    } else if (f.kind == "overlap") {
        data = shatter::synth::overlap(f.per_class, f.dim, f.seed);
    } else if (f.kind == "xor") {
        data = shatter::synth::xor_layout();
    } else {
        throw shatter::input_error("--kind must be gaussians, xor or overlap");
    }
    std::ostringstream buf;
    shatter::write_csv(buf, *data);
    emit(buf.str(), f.out);
    return exit_ok;
}

struct classifier_flags {
    double width_scale = shatter::default_width_scale;
    bool unlabeled = false;
};

int run_classify_build(const std::string& path, const common_flags& f, const classifier_flags& cf) {
    const auto opts = to_options(f);
    const auto raw = shatter::load_csv(path, opts.csv);
    if (raw.num_classes() < 2) {
        std::cerr << "warning: " << path << " has a single class; the classifier predicts it everywhere\n";
    }
    const auto scaling = shatter::unit_cube_scaling::fit(raw);
    const auto data = shatter::normalize_unit_cube(raw);
    const auto balls = shatter::compute_open_balls(data, opts.kind, opts.shrink);
    const auto clf = shatter::build_classifier(data, balls, scaling, cf.width_scale);
    emit(shatter::to_json(clf).dump(2) + "\n", f.out);
    return exit_ok;
}

int run_classify_apply(const std::string& model_path, const std::string& query_path, const common_flags& f,
                       const classifier_flags& cf) {
    std::ifstream in(model_path);
    if (!in) {
        throw shatter::input_error("cannot open classifier file '" + model_path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw shatter::input_error(model_path + ": " + e.what());
    }
    const auto clf = shatter::classifier_from_json(j);
    const char delim = parse_delimiter(f.delimiter);

    std::ostringstream buf;
    buf << "row,predicted\n";
    if (cf.unlabeled) {
        const auto table = shatter::load_feature_csv(query_path, delim);
        const auto pred = shatter::apply_classifier(clf, table.coords, table.dim);
        for (std::size_t i = 0; i < pred.size(); ++i) {
            buf << i << ',' << clf.class_names[static_cast<std::size_t>(pred[i])] << '\n';
        }
        emit(buf.str(), f.out);
        return exit_ok;
    }
    const auto queries = shatter::load_csv(query_path, {f.label, delim});
    const auto pred = shatter::apply_classifier(clf, queries);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const auto& name = clf.class_names[static_cast<std::size_t>(pred[i])];
        buf << i << ',' << name << '\n';
        if (name == queries.class_names()[static_cast<std::size_t>(queries.label(i))]) {
            ++correct;
        }
    }
    emit(buf.str(), f.out);
    std::cerr << "accuracy: " << static_cast<double>(correct) / static_cast<double>(pred.size()) << " (" << correct
              << "/" << pred.size() << ")\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shatter: shattering-coefficient and sample-size estimates for labeled datasets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", shatter::tool_version);

    common_flags flags;
    std::string dataset;
    std::vector<std::string> datasets;

    auto* analyze = app.add_subcommand("analyze", "Full complexity report for one dataset (JSON)");
    analyze->add_option("dataset", dataset, "CSV file")->required();
    add_analysis_flags(analyze, flags);

    auto* compare = app.add_subcommand("compare", "Analyze several datasets and rank them by epsilon threshold");
    compare->add_option("datasets", datasets, "CSV files")->required()->expected(2, -1);
    add_analysis_flags(compare, flags);

    auto* growth = app.add_subcommand("growth-curve", "Export the region-count growth curve as CSV");
    growth->add_option("dataset", dataset, "CSV file")->required();
    add_analysis_flags(growth, flags);

    synth_flags sf;
    auto* synth = app.add_subcommand("synth", "Write a synthetic dataset as CSV");
    synth->add_option("--kind", sf.kind, "gaussians | xor | overlap")->capture_default_str();
    synth->add_option("--seed", sf.seed, "RNG seed")->capture_default_str();
    synth->add_option("--means", sf.means, "gaussians: class means, e.g. \"0,0;10,10\"")->capture_default_str();
    synth->add_option("--variance", sf.variance, "gaussians: per-axis variance")->capture_default_str();
    synth->add_option("--counts", sf.counts, "gaussians: points per class")->delimiter(',');
    synth->add_option("--per-class", sf.per_class, "overlap: points per class")->capture_default_str();
    synth->add_option("--dim", sf.dim, "overlap: dimensionality")->capture_default_str();
    synth->add_option("--out", sf.out, "Output CSV (default: stdout)");

    classifier_flags cf;
    std::string model_path;
    auto* build = app.add_subcommand("classify-build", "Build the open-ball RBF classifier (JSON)");
    build->add_option("dataset", dataset, "Training CSV")->required();
    add_dataset_flags(build, flags);
    build->add_option("--metric", flags.metric, "euclidean | manhattan | chebyshev")->capture_default_str();
    build->add_option("--shrink", flags.shrink, "Open-ball shrink factor")->capture_default_str();
    build->add_option("--width-scale", cf.width_scale, "Kernel width as a multiple of the ball radius")
        ->capture_default_str();
    build->add_option("--out", flags.out, "Classifier file (default: stdout)");

    auto* apply = app.add_subcommand("classify-apply", "Predict classes for a query CSV");
    apply->add_option("model", model_path, "Classifier JSON from classify-build")->required();
    apply->add_option("queries", dataset, "Query CSV")->required();
    add_dataset_flags(apply, flags);
    apply->add_flag("--unlabeled", cf.unlabeled, "Every query column is a feature (no label column)");
    apply->add_option("--out", flags.out, "Prediction CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (analyze->parsed()) return run_analyze(dataset, flags);
        if (compare->parsed()) return run_compare(datasets, flags);
        if (growth->parsed()) return run_growth_curve(dataset, flags);
        if (synth->parsed()) return run_synth(sf);
        if (build->parsed()) return run_classify_build(dataset, flags, cf);
        if (apply->parsed()) return run_classify_apply(model_path, dataset, flags, cf);
    } catch (const shatter::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}

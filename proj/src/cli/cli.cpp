// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/cli.hpp"

#include "splatbench/aggregate.hpp"
#include "splatbench/benchmark.hpp"
#include "splatbench/error.hpp"
#include "splatbench/io/container.hpp"
#include "splatbench/io/image.hpp"
#include "splatbench/io/manifest_io.hpp"
#include "splatbench/io/prediction.hpp"
#include "splatbench/io/report.hpp"
#include "splatbench/metrics.hpp"
#include "splatbench/parallel.hpp"
#include "splatbench/splat/colormap.hpp"
#include "splatbench/splat/rasterizer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace splatbench::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Globals {
    unsigned threads = 0;
    bool json = false;
};

struct CorruptArgs {
    std::string input;
    std::string out;
    std::vector<std::string> kinds{"all"};
    std::vector<std::string> severities{"all"};
    std::uint64_t seed = 0;
    bool dry_run = false;
};

struct RenderArgs {
    std::string input;
    std::string out;
    std::size_t views = 12;
    std::size_t res = 112;
    double iso_scale = 0.02;
    double opacity = 0.9;
    double radius_factor = 2.5;
    std::vector<double> elevations{30.0, -30.0};
    double fov = 0.0;
    std::string mode = "depth";
    std::string colormap = "turbo";
    std::string features;
    bool png = true;
};

struct EvalArgs {
    std::string pred;
    std::string gt;
    std::string out = "eval.csv";
    std::vector<std::string> metrics{"aiou", "auc", "sim", "mae"};
    std::vector<std::string> group_by;
    std::vector<double> thresholds;
};

struct ReportArgs {
    std::vector<std::string> evals;
    std::string format = "md";
    std::vector<std::string> group_by{"corruption"};
    std::string out;
};

std::vector<CorruptionKind> parse_kinds(const std::vector<std::string>& names) {
    std::vector<CorruptionKind> kinds;
    for (const auto& name : names) {
        if (name == "all") {
            kinds.assign(kAllCorruptionKinds.begin(), kAllCorruptionKinds.end());
            continue;
        }
        const auto kind = parse_corruption_kind(name);
        if (!kind) {
            throw Error(ErrorCode::InvalidConfig, "unknown corruption kind '" + name + "'");
        }
        kinds.push_back(*kind);
    }
    return kinds;
}

std::vector<int> parse_severities(const std::vector<std::string>& names) {
    std::vector<int> levels;
    for (const auto& name : names) {
        if (name == "all") {
            levels = {1, 2, 3, 4, 5};
            continue;
        }
        int level = 0;
        try {
            std::size_t used = 0;
            level = std::stoi(name, &used);
            if (used != name.size()) throw std::invalid_argument(name);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidConfig, "bad severity '" + name + "'");
        }
        levels.push_back(SeverityLevel(level).value());
    }
    return levels;
}

std::vector<Metric> parse_metrics(const std::vector<std::string>& names) {
    std::vector<Metric> metrics;
    for (const auto& name : names) {
        const auto metric = parse_metric(name);
        if (!metric) {
            throw Error(ErrorCode::InvalidConfig, "unknown metric '" + name + "'");
        }
        if (std::find(metrics.begin(), metrics.end(), *metric) == metrics.end()) {
            metrics.push_back(*metric);
        }
    }
    // Reports always use the canonical column order.
    std::sort(metrics.begin(), metrics.end());
    return metrics;
}

std::vector<GroupKey> parse_group_keys(const std::vector<std::string>& names) {
    std::vector<GroupKey> keys;
    for (const auto& name : names) {
        const auto key = parse_group_key(name);
        if (!key) {
            throw Error(ErrorCode::InvalidConfig, "unknown group key '" + name + "'");
        }
        keys.push_back(*key);
    }
    return keys;
}

std::string view_file(std::size_t view, const std::string& what, const char* ext) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "view_%02zu.%s.%s", view, what.c_str(), ext);
    return buffer;
}

std::vector<float> to_float(std::span<const double> values) {
    return {values.begin(), values.end()};
}

void emit_json(std::ostream& out, const ordered_json& summary) {
    out << summary.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int cmd_corrupt(const CorruptArgs& a, const Globals& g, std::ostream& out) {
    const auto manifests = io::load_manifest(a.input);
    BenchmarkOptions options;
    options.master_seed = a.seed;
    options.kinds = parse_kinds(a.kinds);
    options.severities = parse_severities(a.severities);
    options.threads = g.threads;

    BenchmarkIndex index;
    if (a.dry_run) {
        index = plan_benchmark(manifests, options);
    } else {
        if (a.out.empty()) {
            throw Error(ErrorCode::InvalidConfig, "--out is required unless --dry-run is given");
        }
        index = build_benchmark(manifests, std::filesystem::path(a.input).parent_path(), a.out, options);
    }
    std::vector<CorruptionKind> unique_kinds = options.kinds;
    std::sort(unique_kinds.begin(), unique_kinds.end());
    unique_kinds.erase(std::unique(unique_kinds.begin(), unique_kinds.end()), unique_kinds.end());
    std::vector<int> unique_levels = options.severities;
    std::sort(unique_levels.begin(), unique_levels.end());
    unique_levels.erase(std::unique(unique_levels.begin(), unique_levels.end()), unique_levels.end());
    const std::size_t per_pairing = unique_kinds.size() * unique_levels.size();
    const int code = index.skipped.empty() ? kExitOk : kExitPartial;

    if (g.json) {
        ordered_json j;
        j["command"] = "corrupt";
        j["dry_run"] = a.dry_run;
        j["variants"] = index.variants.size();
        j["variants_per_pairing"] = per_pairing;
        ordered_json base = ordered_json::object();
        for (const auto& [dataset, count] : index.base_pairings) {
            base[dataset.empty() ? "untagged" : dataset] = count;
        }
        j["base_pairings"] = base;
        j["base_pairings_total"] = index.total_base_pairings();
        ordered_json skipped = ordered_json::array();
        for (const auto& s : index.skipped) {
            ordered_json item;
            item["sample_id"] = s.sample_id;
            if (s.kind) {
                item["kind"] = std::string(to_string(*s.kind));
                item["severity"] = s.severity;
            }
            item["reason"] = s.reason;
            skipped.push_back(item);
        }
        j["skipped"] = skipped;
        j["exit_code"] = code;
        emit_json(out, j);
        return code;
    }

    out << index.variants.size() << " variants " << (a.dry_run ? "planned" : "written") << "\n";
    out << "base pairings:";
    for (const auto& [dataset, count] : index.base_pairings) {
        out << ' ' << (dataset.empty() ? "untagged" : dataset) << ' ' << count << ',';
    }
    out << " total " << index.total_base_pairings() << "\n";
    out << "variants per pairing: " << per_pairing << "\n";
    if (!index.skipped.empty()) {
        out << "skipped:\n";
        for (const auto& s : index.skipped) {
            out << "  sample " << s.sample_id;
            if (s.kind) out << ' ' << to_string(*s.kind) << " s" << s.severity;
            out << ": " << s.reason << "\n";
        }
    }
    return code;
}

// ---------------------------------------------------------------------------

enum class RenderMode { Depth, Affordance, Feature };

int cmd_render(const RenderArgs& a, const Globals& g, std::ostream& out) {
    RenderMode mode;
    if (a.mode == "depth") {
        mode = RenderMode::Depth;
    } else if (a.mode == "affordance") {
        mode = RenderMode::Affordance;
    } else if (a.mode == "feature") {
        mode = RenderMode::Feature;
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown render mode '" + a.mode + "'");
    }
    const auto colormap = parse_depth_colormap(a.colormap);
    if (!colormap) {
        throw Error(ErrorCode::InvalidConfig, "unknown colormap '" + a.colormap + "'");
    }
    RigConfig rig_config;
    rig_config.views = a.views;
    rig_config.resolution = a.res;
    rig_config.radius_factor = a.radius_factor;
    rig_config.elevations_deg = a.elevations;
    rig_config.fov_deg = a.fov;
    GaussianOptions gaussian_options;
    gaussian_options.iso_scale = a.iso_scale;
    gaussian_options.opacity = a.opacity;
    // Validate the configuration before touching any sample.
    make_views(Vec3{}, 1.0, rig_config);
    init_gaussians(LabeledCloud{}, gaussian_options);

    const auto refs = load_sample_refs(a.input);
    RenderOptions render_options;
    render_options.threads = g.threads;
    const std::filesystem::path out_dir(a.out);

    std::size_t rendered = 0;
    std::size_t images = 0;
    ordered_json skipped = ordered_json::array();
    ordered_json invalid = ordered_json::array();
    for (const auto& ref : refs) {
        const std::string stem = sample_stem(ref);
        LabeledCloud cloud;
        std::vector<double> features;
        std::size_t dim = 0;
        try {
            cloud = io::read_cloud(ref.cloud_path);
            require_valid(cloud);
            if (mode == RenderMode::Feature) {
                if (a.features.empty()) {
                    dim = 4;
                    for (std::size_t i = 0; i < cloud.size(); ++i) {
                        features.insert(features.end(), cloud.points[i].begin(), cloud.points[i].end());
                        features.push_back(cloud.labels[i]);
                    }
                } else {
                    auto file = io::read_point_features(std::filesystem::path(a.features) / (stem + ".f32"));
                    if (file.n_points != cloud.size()) {
                        throw Error(ErrorCode::DimensionMismatch,
                                    stem + ": features have " + std::to_string(file.n_points) + " rows, cloud has " +
                                        std::to_string(cloud.size()) + " points");
                    }
                    dim = file.dim;
                    features = std::move(file.values);
                }
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::DimensionMismatch) {
                throw;
            }
            skipped.push_back({{"sample", stem}, {"reason", e.what()}});
            continue;
        }

        const CameraRig rig = make_views(cloud, rig_config);
        GaussianSet gaussians = init_gaussians(cloud, gaussian_options);
        if (dim > 0) {
            attach_features(gaussians, features, dim);
        }
        const RenderedViews views = rasterize(gaussians, rig, render_options);
        const std::size_t plane = views.pixels();
        const std::filesystem::path dir = out_dir / stem;

        std::vector<double> expected_depth;
        ColormapResult colored;
        if (mode == RenderMode::Depth) {
            expected_depth.resize(views.depth.size());
            for (std::size_t i = 0; i < expected_depth.size(); ++i) {
                expected_depth[i] = views.alpha[i] > kValidAlpha ? views.depth[i] / views.alpha[i] : 0.0;
            }
            colored = colormap_depth(expected_depth, views.alpha, views.views, views.height, views.width, *colormap);
        }

        for (std::size_t v = 0; v < views.views; ++v) {
            const auto alpha = std::span(views.alpha).subspan(v * plane, plane);
            io::write_raw_image(dir / view_file(v, "alpha", "f32"), to_float(alpha), {v, views.height, views.width, 1});
            switch (mode) {
            case RenderMode::Depth: {
                const auto depth = std::span(views.depth).subspan(v * plane, plane);
                io::write_raw_image(dir / view_file(v, "depth", "f32"), to_float(depth),
                                    {v, views.height, views.width, 1});
                if (a.png) {
                    const auto rgb = std::span(colored.images).subspan(v * 3 * plane, 3 * plane);
                    io::write_png_rgb(dir / view_file(v, "depth", "png"), to_float(rgb), views.height, views.width);
                }
                if (colored.all_invalid[v]) {
                    invalid.push_back({{"sample", stem}, {"view", v}});
                }
                break;
            }
            case RenderMode::Affordance: {
                const auto mask = std::span(views.color).subspan(v * plane, plane);
                io::write_raw_image(dir / view_file(v, "affordance", "f32"), to_float(mask),
                                    {v, views.height, views.width, 1});
                if (a.png) {
                    io::write_png_gray(dir / view_file(v, "affordance", "png"), to_float(mask), views.height,
                                       views.width);
                }
                break;
            }
            case RenderMode::Feature: {
                const auto feat = std::span(views.feature).subspan(v * dim * plane, dim * plane);
                io::write_raw_image(dir / view_file(v, "feature", "f32"), to_float(feat),
                                    {v, views.height, views.width, dim});
                break;
            }
            }
            ++images;
        }
        ++rendered;
    }

    const int code = skipped.empty() ? kExitOk : kExitPartial;
    if (g.json) {
        ordered_json j;
        j["command"] = "render";
        j["mode"] = a.mode;
        j["samples"] = rendered;
        j["images"] = images;
        j["views"] = a.views;
        j["height"] = a.res;
        j["width"] = a.res;
        j["all_invalid"] = invalid;
        j["skipped"] = skipped;
        j["exit_code"] = code;
        emit_json(out, j);
        return code;
    }
    out << rendered << " samples rendered, " << images << " " << a.mode << " images of " << a.res << "x" << a.res
        << "\n";
    for (const auto& item : invalid) {
        out << "warning: " << item["sample"].get<std::string>() << " view " << item["view"].get<std::size_t>()
            << " has no valid depth pixel\n";
    }
    if (!skipped.empty()) {
        out << "skipped:\n";
        for (const auto& item : skipped) {
            out << "  " << item["sample"].get<std::string>() << ": " << item["reason"].get<std::string>() << "\n";
        }
    }
    return code;
}

// ---------------------------------------------------------------------------

struct EvalOutcome {
    std::vector<EvalRecord> records;
    std::string skip_reason;
    std::optional<Error> fatal;
};

int cmd_eval(const EvalArgs& a, const Globals& g, std::ostream& out) {
    const auto metrics = parse_metrics(a.metrics);
    const auto keys = parse_group_keys(a.group_by);
    const std::vector<double> thresholds = a.thresholds.empty() ? default_iou_thresholds() : a.thresholds;
    for (const double t : thresholds) {
        if (!(t >= 0.0 && t < 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "thresholds must lie in [0, 1)");
        }
    }
    const auto refs = load_sample_refs(a.gt);

    std::vector<EvalOutcome> outcomes(refs.size());
    parallel_for(refs.size(), g.threads, [&](std::size_t i) {
        const SampleRef& ref = refs[i];
        EvalOutcome& o = outcomes[i];
        const std::filesystem::path pred_path =
            ref.prediction_path ? *ref.prediction_path : std::filesystem::path(a.pred) / (sample_stem(ref) + ".f32");
        if (!std::filesystem::exists(pred_path)) {
            o.skip_reason = "missing prediction " + pred_path.string();
            return;
        }
        LabeledCloud cloud;
        io::Prediction prediction;
        try {
            cloud = io::read_cloud(ref.cloud_path);
            prediction = io::read_prediction(pred_path);
        } catch (const Error& e) {
            o.skip_reason = e.what();
            return;
        }
        if (prediction.scores.size() != cloud.size()) {
            o.fatal = Error(ErrorCode::DimensionMismatch, sample_stem(ref) + ": prediction has " +
                                                              std::to_string(prediction.scores.size()) +
                                                              " scores, cloud has " + std::to_string(cloud.size()) +
                                                              " points");
            return;
        }
        const MetricReport report = evaluate(prediction.scores, cloud.labels, metrics, thresholds);
        o.records = to_records(report, metrics, ref.sample_id, ref.object_category, ref.affordance_type,
                               ref.corruption, ref.severity);
    });

    std::vector<EvalRecord> records;
    ordered_json skipped = ordered_json::array();
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (outcomes[i].fatal) {
            throw *outcomes[i].fatal;
        }
        if (!outcomes[i].skip_reason.empty()) {
            skipped.push_back({{"sample", sample_stem(refs[i])}, {"reason", outcomes[i].skip_reason}});
            continue;
        }
        ++evaluated;
        records.insert(records.end(), outcomes[i].records.begin(), outcomes[i].records.end());
    }
    std::size_t degenerate = 0;
    for (const auto& r : records) {
        degenerate += r.value ? 0 : 1;
    }

    {
        std::ostringstream csv;
        io::write_eval_csv(csv, records);
        const std::string text = csv.str();
        io::write_file_bytes(a.out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }

    std::optional<AggregateTable> table;
    if (!keys.empty()) {
        table = aggregate(records, keys, metrics);
    }
    const int code = skipped.empty() ? kExitOk : kExitPartial;
    if (g.json) {
        ordered_json j;
        j["command"] = "eval";
        j["samples"] = evaluated;
        j["records"] = records.size();
        j["degenerate"] = degenerate;
        j["thresholds"] = thresholds;
        j["out"] = a.out;
        if (table) {
            ordered_json rows = ordered_json::array();
            for (const auto& row : table->rows) {
                ordered_json r;
                for (std::size_t k = 0; k < keys.size(); ++k) {
                    r[std::string(to_string(keys[k]))] = row.key[k];
                }
                for (std::size_t m = 0; m < metrics.size(); ++m) {
                    const auto& cell = row.cells[m];
                    r[std::string(to_string(metrics[m]))] = cell.mean ? ordered_json(*cell.mean) : ordered_json();
                }
                rows.push_back(r);
            }
            j["groups"] = rows;
        }
        j["skipped"] = skipped;
        j["exit_code"] = code;
        emit_json(out, j);
        return code;
    }
    out << evaluated << " samples evaluated, " << records.size() << " metric values written to " << a.out << "\n";
    out << "degenerate (excluded) metric values: " << degenerate << "\n";
    if (table) {
        out << "\n";
        io::write_aggregate_markdown(out, *table);
    }
    if (!skipped.empty()) {
        out << "\nskipped:\n";
        for (const auto& item : skipped) {
            out << "  " << item["sample"].get<std::string>() << ": " << item["reason"].get<std::string>() << "\n";
        }
    }
    return code;
}

// ---------------------------------------------------------------------------

int cmd_report(const ReportArgs& a, const Globals& g, std::ostream& out) {
    if (a.format != "md" && a.format != "csv") {
        throw Error(ErrorCode::InvalidConfig, "unknown report format '" + a.format + "'");
    }
    const auto keys = parse_group_keys(a.group_by);
    if (keys.empty()) {
        throw Error(ErrorCode::InvalidConfig, "at least one group key is required");
    }
    std::vector<io::ModelTable> models;
    for (const auto& spec : a.evals) {
        const auto eq = spec.find('=');
        const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
        std::string name = eq == std::string::npos ? std::filesystem::path(path).stem().string() : spec.substr(0, eq);
        std::ifstream in(path);
        if (!in) {
            throw Error(ErrorCode::IoFailure, "cannot open eval CSV " + path);
        }
        const auto records = io::read_eval_csv(in);
        std::vector<Metric> metrics;
        for (const auto& r : records) {
            if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end()) {
                metrics.push_back(r.metric);
            }
        }
        std::sort(metrics.begin(), metrics.end());
        models.push_back({std::move(name), aggregate(records, keys, metrics)});
    }
    for (const auto& m : models) {
        if (m.table.metrics != models.front().table.metrics) {
            throw Error(ErrorCode::SchemaMismatch, "eval files do not share a metric list");
        }
    }

    std::ostringstream report;
    const bool corruption_only = keys == std::vector<GroupKey>{GroupKey::Corruption};
    if (a.format == "md" && corruption_only) {
        io::write_corruption_comparison_markdown(report, models);
    } else {
        for (const auto& m : models) {
            if (models.size() > 1) {
                report << (a.format == "md" ? "## " : "# model=") << m.model << "\n";
            }
            if (a.format == "md") {
                io::write_aggregate_markdown(report, m.table);
            } else {
                io::write_aggregate_csv(report, m.table);
            }
            if (models.size() > 1 && a.format == "md") report << "\n";
        }
    }
    const std::string text = report.str();
    if (!a.out.empty()) {
        io::write_file_bytes(a.out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }

    std::size_t excluded = 0;
    for (const auto& m : models) {
        excluded += m.table.total_excluded();
    }
    if (g.json) {
        ordered_json j;
        j["command"] = "report";
        ordered_json names = ordered_json::array();
        for (const auto& m : models) names.push_back(m.model);
        j["models"] = names;
        j["rows"] = models.front().table.rows.size();
        j["excluded"] = excluded;
        if (a.out.empty()) {
            j["report"] = text;
        } else {
            j["out"] = a.out;
        }
        j["exit_code"] = kExitOk;
        emit_json(out, j);
        return kExitOk;
    }
    if (a.out.empty()) {
        out << text;
    } else {
        out << "report written to " << a.out << " (" << models.front().table.rows.size() << " rows, " << excluded
            << " degenerate values excluded)\n";
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"splatbench: corruption benchmarks, splat rendering and affordance metrics"};
    app.set_config("--config", "", "key = value config file; [command] sections hold command options");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all");

    Globals globals;
    app.add_option("--threads", globals.threads, "Worker threads (0 = all cores)")->envname("SPLATBENCH_THREADS");
    app.add_flag("--json", globals.json, "Print a machine-readable summary");

    CorruptArgs corrupt;
    auto* c = app.add_subcommand("corrupt", "Generate corrupted variants of every manifest sample");
    c->add_option("--input", corrupt.input, "Sample manifest (JSON lines)")->required();
    c->add_option("--out", corrupt.out, "Output directory");
    c->add_option("--kinds", corrupt.kinds, "Corruption kinds or 'all'")->delimiter(',')->envname("SPLATBENCH_KINDS");
    c->add_option("--severities", corrupt.severities, "Severities 1-5 or 'all'")
        ->delimiter(',')
        ->envname("SPLATBENCH_SEVERITIES");
    c->add_option("--seed", corrupt.seed, "Master seed")->envname("SPLATBENCH_SEED");
    c->add_flag("--dry-run", corrupt.dry_run, "Count variants without reading or writing clouds");

    RenderArgs render;
    auto* r = app.add_subcommand("render", "Splat clouds into per-view images");
    r->add_option("--input", render.input, "Sample manifest or benchmark index")->required();
    r->add_option("--out", render.out, "Output directory")->required();
    r->add_option("--views", render.views, "Number of views")->envname("SPLATBENCH_VIEWS");
    r->add_option("--res", render.res, "Image side length in pixels")->envname("SPLATBENCH_RES");
    r->add_option("--iso-scale", render.iso_scale, "Gaussian standard deviation")->envname("SPLATBENCH_ISO_SCALE");
    r->add_option("--opacity", render.opacity, "Gaussian opacity")->envname("SPLATBENCH_OPACITY");
    r->add_option("--radius-factor", render.radius_factor, "Camera distance over bounding radius")
        ->envname("SPLATBENCH_RADIUS_FACTOR");
    r->add_option("--elevations", render.elevations, "Elevation rings in degrees")->delimiter(',');
    r->add_option("--fov", render.fov, "Field of view in degrees (0 = fit the cloud)");
    r->add_option("--mode", render.mode, "depth | affordance | feature")->envname("SPLATBENCH_MODE");
    r->add_option("--colormap", render.colormap, "grayscale | grayscale-inverse | turbo");
    r->add_option("--features", render.features, "Directory of <stem>.f32 per-point features");
    r->add_flag("--png,!--no-png", render.png, "Write PNG previews");

    EvalArgs eval;
    auto* e = app.add_subcommand("eval", "Score prediction files against ground truth");
    e->add_option("--pred", eval.pred, "Directory of <stem>.f32 predictions");
    e->add_option("--gt", eval.gt, "Sample manifest or benchmark index")->required();
    e->add_option("--out", eval.out, "Per-sample CSV output");
    e->add_option("--metrics", eval.metrics, "aiou,auc,sim,mae")->delimiter(',');
    e->add_option("--group-by", eval.group_by, "category,affordance,corruption,severity")->delimiter(',');
    e->add_option("--thresholds", eval.thresholds, "aIoU threshold grid")->delimiter(',');

    ReportArgs report;
    auto* p = app.add_subcommand("report", "Aggregate eval CSVs into tables");
    p->add_option("--eval", report.evals, "Eval CSV, optionally as model=path; repeatable")->required();
    p->add_option("--format", report.format, "md | csv");
    p->add_option("--group-by", report.group_by, "Grouping keys")->delimiter(',');
    p->add_option("--out", report.out, "Output file (default stdout)");

    auto* s = app.add_subcommand("selftest", "Run built-in oracle checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kExitOk : kExitFatal;
    }

    try {
        if (c->parsed()) return cmd_corrupt(corrupt, globals, out);
        if (r->parsed()) return cmd_render(render, globals, out);
        if (e->parsed()) return cmd_eval(eval, globals, out);
        if (p->parsed()) return cmd_report(report, globals, out);
        if (s->parsed()) return selftest(out, globals.threads) == 0 ? kExitOk : kExitFatal;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitFatal;
    } catch (const std::filesystem::filesystem_error& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitFatal;
    }
    return kExitFatal;
}

} // namespace splatbench::cli

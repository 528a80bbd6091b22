// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include "splatbench/benchmark.hpp"
#include "splatbench/cli.hpp"
#include "splatbench/corrupt.hpp"
#include "splatbench/error.hpp"
#include "splatbench/io/container.hpp"
#include "splatbench/io/manifest_io.hpp"
#include "splatbench/metrics.hpp"
#include "splatbench/oracle.hpp"
#include "splatbench/splat/camera.hpp"
#include "splatbench/splat/gaussians.hpp"
#include "splatbench/splat/rasterizer.hpp"
#include "testing.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace splatbench;
using testutil::TempDir;

namespace {

// Empty string means success; otherwise the first failure found.
using Check = std::function<std::string()>;

std::string fmt(const char* format, double a, double b = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, format, a, b);
    return buffer;
}

int cli_run(std::vector<std::string> args, std::string* out = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
}

std::string cardinality() {
    TempDir dir("acc_card");
    auto all = io::synthesize_dataset_manifest("PIAD-C", 0);
    const auto laso = io::synthesize_dataset_manifest("LASO-C", all.size());
    all.insert(all.end(), laso.begin(), laso.end());
    io::write_manifest(dir / "all.jsonl", all);
    std::string out;
    if (cli_run({"--json", "corrupt", "--input", (dir / "all.jsonl").string(), "--dry-run"}, &out) != 0) {
        return "dry run failed";
    }
    const auto j = nlohmann::json::parse(out);
    if (j["base_pairings"]["PIAD-C"] != 2474) return "PIAD-C total " + j["base_pairings"]["PIAD-C"].dump();
    if (j["base_pairings"]["LASO-C"] != 2416) return "LASO-C total " + j["base_pairings"]["LASO-C"].dump();
    if (j["base_pairings_total"] != 4890) return "union " + j["base_pairings_total"].dump();
    if (j["variants_per_pairing"] != 35) return "variants per pairing " + j["variants_per_pairing"].dump();

    const auto manifest = testutil::write_sample_set(dir.path(), 10, 512);
    if (cli_run({"corrupt", "--input", manifest.string(), "--out", (dir / "bench").string()}, &out) != 0) {
        return "desk-scale build failed";
    }
    if (out.find("350 variants written") == std::string::npos) return "desk-scale output: " + out;
    const auto refs = load_sample_refs(dir / "bench" / "index.jsonl");
    if (refs.size() != 350) return "index holds " + std::to_string(refs.size()) + " variants";
    return {};
}

std::string count_laws() {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<std::size_t> size(64, 4096);
    for (std::uint64_t trial = 0; trial < 500; ++trial) {
        const std::size_t n = size(gen);
        const auto cloud = testutil::random_cloud(n, gen());
        for (const auto kind : kAllCorruptionKinds) {
            for (int s = 1; s <= 5; ++s) {
                const auto spec = make_corruption_spec(kind, SeverityLevel(s), 7, trial);
                const bool too_small =
                    kind == CorruptionKind::DropLocal && n <= SeverityTable::drop_local_count[s - 1] + 8;
                try {
                    const auto out = apply_corruption(cloud, spec);
                    if (too_small) return "drop_local accepted a cloud of " + std::to_string(n);
                    const std::size_t expected = expected_point_count(kind, SeverityLevel(s), n);
                    std::size_t law = n;
                    switch (kind) {
                    case CorruptionKind::DropGlobal:
                        law = n - static_cast<std::size_t>(
                                      std::llround(n * SeverityTable::drop_global_permille[s - 1] / 1000.0));
                        break;
                    case CorruptionKind::DropLocal: law = n - SeverityTable::drop_local_count[s - 1]; break;
                    case CorruptionKind::AddGlobal: law = n + SeverityTable::add_global_count[s - 1]; break;
                    case CorruptionKind::AddLocal: law = n + SeverityTable::add_local_count[s - 1]; break;
                    default: break;
                    }
                    if (out.size() != law || expected != law) {
                        return std::string(to_string(kind)) + " s" + std::to_string(s) + " N=" + std::to_string(n) +
                               ": got " + std::to_string(out.size()) + ", law " + std::to_string(law);
                    }
                } catch (const Error& e) {
                    if (!(too_small && e.code() == ErrorCode::CloudTooSmall)) return e.what();
                }
            }
        }
    }
    return {};
}

std::string jitter_calibration() {
    for (int s = 1; s <= 5; ++s) {
        const double sigma = SeverityTable::jitter_sigma[s - 1];
        std::array<double, 3> sum_sq{}, sum{};
        std::size_t count = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto cloud = testutil::random_cloud(2048, 1000 + seed);
            const auto out = apply_corruption(cloud, make_corruption_spec(CorruptionKind::Jitter, SeverityLevel(s),
                                                                          seed, seed));
            for (std::size_t i = 0; i < cloud.size(); ++i) {
                for (int k = 0; k < 3; ++k) {
                    const double d = out.points[i][k] - cloud.points[i][k];
                    sum[k] += d;
                    sum_sq[k] += d * d;
                }
            }
            count += cloud.size();
        }
        for (int k = 0; k < 3; ++k) {
            const double mean = sum[k] / count;
            const double std = std::sqrt(sum_sq[k] / count - mean * mean);
            if (std::abs(std / sigma - 1.0) > 0.02) {
                return "severity " + std::to_string(s) + " axis " + std::to_string(k) + fmt(": std %.6g vs %.6g", std, sigma);
            }
        }
    }
    return {};
}

std::string scale_rotate_geometry() {
    for (int s = 1; s <= 5; ++s) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto cloud = testutil::random_cloud(300, seed, 0.2 + seed * 0.1);
            CorruptionTrace st;
            const auto scaled = scale(cloud, make_corruption_spec(CorruptionKind::Scale, SeverityLevel(s), 3, seed), &st);
            double max_norm = 0.0;
            for (const auto& p : scaled.points) max_norm = std::max(max_norm, norm(p));
            if (std::abs(max_norm - 1.0) > 1e-6) return fmt("max norm %.12g", max_norm);

            CorruptionTrace rt;
            const auto rotated =
                rotate(cloud, make_corruption_spec(CorruptionKind::Rotate, SeverityLevel(s), 3, seed), &rt);
            for (const double angle : rt.euler_angles) {
                if (std::abs(angle) > SeverityTable::rotate_theta[s - 1]) return fmt("angle %.6g > %.6g", angle,
                                                                                     SeverityTable::rotate_theta[s - 1]);
            }
            for (std::size_t i = 0; i < cloud.size(); ++i) {
                for (std::size_t j = i + 1; j < cloud.size(); ++j) {
                    const double before = norm(cloud.points[i] - cloud.points[j]);
                    const double after = norm(rotated.points[i] - rotated.points[j]);
                    if (std::abs(after - before) > 1e-6 * before) return fmt("distance %.12g became %.12g", before, after);
                }
            }
        }
    }
    return {};
}

std::string add_labels() {
    std::size_t appended = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto cloud = testutil::random_cloud(512 + seed * 13, seed);
        for (const auto kind : {CorruptionKind::AddGlobal, CorruptionKind::AddLocal}) {
            for (int s = 1; s <= 5; ++s) {
                const auto out = apply_corruption(cloud, make_corruption_spec(kind, SeverityLevel(s), 5, seed));
                for (std::size_t i = 0; i < cloud.size(); ++i) {
                    if (out.points[i] != cloud.points[i] || out.labels[i] != cloud.labels[i]) {
                        return "original point " + std::to_string(i) + " changed";
                    }
                }
                for (std::size_t i = cloud.size(); i < out.size(); ++i) {
                    ++appended;
                    if (out.labels[i] != 0.0) return "appended label " + std::to_string(out.labels[i]);
                    if (kind == CorruptionKind::AddGlobal && norm(out.points[i]) > 1.0) {
                        return fmt("add_global point at radius %.17g", norm(out.points[i]));
                    }
                }
            }
        }
    }
    return appended > 0 ? std::string{} : "nothing appended";
}

struct Scene {
    GaussianSet gaussians;
    CameraRig rig;
};

Scene random_scene(std::uint64_t seed, std::size_t max_gaussians, std::size_t feature_dim) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 0.4);
    const std::size_t n = 1 + gen() % max_gaussians;
    LabeledCloud cloud;
    for (std::size_t i = 0; i < n; ++i) {
        cloud.points.push_back({normal(gen), normal(gen), normal(gen)});
        cloud.labels.push_back(unit(gen));
    }
    GaussianSet g = init_gaussians(cloud, {0.02, 0.9, ColorMode::Affordance, 1.0});
    for (std::size_t i = 0; i < n; ++i) {
        g.scales[i] = 0.005 + 0.08 * unit(gen);
        g.opacities[i] = 0.05 + 0.95 * unit(gen);
    }
    std::vector<double> features(n * feature_dim);
    for (auto& f : features) f = 2.0 * unit(gen) - 1.0;
    attach_features(g, features, feature_dim);
    RigConfig config;
    config.radius_factor = 2.0 + unit(gen);
    return {std::move(g), make_views(cloud, config)};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::string renderer_oracle() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Scene scene = random_scene(seed, 1000, 2);
        const auto tile = rasterize(scene.gaussians, scene.rig);
        const auto ref = reference_rasterize(scene.gaussians, scene.rig);
        if (tile.views != 12 || tile.height != 112 || tile.width != 112) return "unexpected image shape";
        const double d = std::max({max_abs_diff(tile.color, ref.color), max_abs_diff(tile.depth, ref.depth),
                                   max_abs_diff(tile.alpha, ref.alpha), max_abs_diff(tile.feature, ref.feature)});
        worst = std::max(worst, d);
        if (d > 1e-5) return "scene " + std::to_string(seed) + fmt(": max abs difference %.3g", d);
    }
    return {};
}

std::string alpha_conservation() {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t len = 1 + gen() % 64;
        std::vector<double> alphas(len);
        for (auto& a : alphas) a = trial % 10 == 0 ? std::round(unit(gen)) : unit(gen);
        double survive = 1.0;
        double weights = 0.0;
        BlendState state;
        for (const double a : alphas) {
            survive *= 1.0 - a;
            weights += state.add(a);
        }
        const double expected = 1.0 - survive;
        const double composed = composite_alpha(alphas);
        if (std::abs(weights - expected) > 1e-10 || std::abs(composed - expected) > 1e-10) {
            return "trial " + std::to_string(trial) + fmt(": %.17g vs %.17g", weights, expected);
        }
        if (composed < 0.0 || composed > 1.0) return fmt("alpha %.17g outside [0, 1]", composed);
    }
    return {};
}

std::string feature_linearity() {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Scene scene = random_scene(500 + seed, 1000, 3);
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        const double a = coef(gen), b = coef(gen);
        GaussianSet g1 = scene.gaussians, g2 = scene.gaussians, mix = scene.gaussians;
        for (auto& f : g2.features) f = coef(gen);
        for (std::size_t i = 0; i < mix.features.size(); ++i) mix.features[i] = a * g1.features[i] + b * g2.features[i];
        const auto r1 = rasterize(g1, scene.rig);
        const auto r2 = rasterize(g2, scene.rig);
        const auto rm = rasterize(mix, scene.rig);
        for (std::size_t i = 0; i < rm.feature.size(); ++i) {
            const double d = std::abs(rm.feature[i] - a * r1.feature[i] - b * r2.feature[i]);
            if (d > 1e-5) return fmt("residual %.3g", d);
        }
    }
    return {};
}

std::string metric_oracles() {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto grid = default_iou_thresholds();
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + gen() % 511;
        std::vector<double> pred(n), gt(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = trial % 3 == 0 ? std::floor(unit(gen) * 20.0) / 20.0 : unit(gen);
            gt[i] = unit(gen) < 0.4 ? unit(gen) : 0.0;
        }
        gt[0] = 0.0;
        gt[1] = 0.8;
        const std::string at = "trial " + std::to_string(trial) + ": ";
        if (std::abs(auc(pred, gt) - oracle::auc_pairs(pred, gt)) > 1e-9) return at + "auc";
        if (aiou(pred, gt) != oracle::aiou_sets(pred, gt, grid)) return at + "aiou";
        if (std::abs(sim(pred, gt) - oracle::sim_loop(pred, gt)) > 1e-12) return at + "sim";
        if (std::abs(mae(pred, gt) - oracle::mae_loop(pred, gt)) > 1e-12) return at + "mae";

        const FeatureShape shape{1 + gen() % 3, 1 + gen() % 4, 1 + gen() % 8, 1 + gen() % 8};
        std::vector<float> fa(shape.size()), fb(shape.size());
        for (auto& x : fa) x = static_cast<float>(unit(gen) * 2.0 - 1.0);
        for (auto& x : fb) x = static_cast<float>(unit(gen) * 2.0 - 1.0);
        std::vector<std::uint8_t> mask(shape.pixels());
        for (auto& m : mask) m = unit(gen) < 0.6;
        mask[0] = 1;
        const double got = consistency_mse(fa, shape, fb, shape, mask);
        const double want = oracle::mse_loop(fa, fb, mask, shape.views, shape.channels, shape.height, shape.width);
        if (std::abs(got - want) > 1e-12) return at + "consistency mse";
    }
    return {};
}

std::string thread_independence() {
    TempDir dir("acc_threads");
    const auto manifest = testutil::write_sample_set(dir.path(), 4, 1024);
    std::map<std::string, std::string> corrupt_ref, render_ref;
    for (const char* threads : {"1", "4", "16"}) {
        const std::string t = threads;
        if (cli_run({"--threads", t, "corrupt", "--input", manifest.string(), "--out", (dir / ("c" + t)).string(),
                     "--seed", "31"}) != 0) {
            return "corrupt failed with " + t + " workers";
        }
        if (cli_run({"--threads", t, "render", "--input", (dir / ("c" + t) / "index.jsonl").string(), "--out",
                     (dir / ("r" + t)).string(), "--views", "4", "--res", "48", "--no-png"}) != 0) {
            return "render failed with " + t + " workers";
        }
        const auto c = testutil::snapshot(dir / ("c" + t));
        const auto r = testutil::snapshot(dir / ("r" + t));
        if (t == "1") {
            corrupt_ref = c;
            render_ref = r;
            if (c.empty() || r.empty()) return "no output written";
        } else {
            if (c != corrupt_ref) return "corrupt output differs with " + t + " workers";
            if (r != render_ref) return "render output differs with " + t + " workers";
        }
    }
    return {};
}

std::string golden_vectors() {
    const struct {
        const char* file;
        Lineage lineage;
    } cases[] = {{"rng_7_7_7.txt", {7, 7, 7}}, {"rng_42_0_1.txt", {42, 0, 1}}, {"rng_0_0_0.txt", {0, 0, 0}}};
    for (const auto& c : cases) {
        const auto expected = testutil::read_golden(c.file);
        if (expected.size() != 4) return std::string(c.file) + " missing";
        RngStream stream(c.lineage);
        for (const double e : expected) {
            if (stream.uniform() != e) return std::string(c.file) + " mismatch";
        }
    }
    return {};
}

std::string io_round_trip() {
    TempDir dir("acc_io");
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto cloud = testutil::random_cloud(1 + gen() % 4096, gen(), 5.0);
        for (auto& p : cloud.points)
            for (auto& x : p) x = static_cast<float>(x);
        for (auto& l : cloud.labels) l = static_cast<float>(l);
        const auto path = dir / "c.pcaf";
        const bool labels = trial % 4 != 0;
        io::write_cloud(path, cloud, labels);
        const auto bytes = io::read_file_bytes(path);
        if (bytes.size() != io::container_size(cloud.size(), labels)) return "unexpected file length";
        const auto back = io::read_cloud(path);
        if (back.points != cloud.points) return "points changed";
        if (labels && back.labels != cloud.labels) return "labels changed";
        if (io::encode_cloud(back, labels) != bytes) return "re-encoding changed bytes";
    }
    const struct {
        const char* file;
        ErrorCode code;
    } malformed[] = {{"bad_magic.pcaf", ErrorCode::BadMagic},
                     {"truncated.pcaf", ErrorCode::Truncated},
                     {"future_version.pcaf", ErrorCode::UnsupportedVersion},
                     {"label_out_of_range.pcaf", ErrorCode::LabelOutOfRange}};
    for (const auto& m : malformed) {
        try {
            io::read_cloud(std::filesystem::path(SPLATBENCH_FIXTURE_DIR) / m.file);
            return std::string(m.file) + " was accepted";
        } catch (const Error& e) {
            if (e.code() != m.code) return std::string(m.file) + ": " + e.what();
        }
    }
    return {};
}

} // namespace

int main() {
    const std::pair<const char*, Check> criteria[] = {
        {"benchmark cardinality", cardinality},
        {"corruption count laws", count_laws},
        {"jitter calibration", jitter_calibration},
        {"scale and rotate geometry", scale_rotate_geometry},
        {"appended point labels", add_labels},
        {"tile renderer matches reference", renderer_oracle},
        {"alpha blend conservation", alpha_conservation},
        {"feature splat linearity", feature_linearity},
        {"metric oracles", metric_oracles},
        {"determinism across worker counts", thread_independence},
        {"rng golden vectors", golden_vectors},
        {"container round trip and malformed files", io_round_trip},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        std::string problem;
        try {
            problem = check();
        } catch (const std::exception& e) {
            problem = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (problem.empty()) {
            std::printf("PASS %2d %s (%.1fs)\n", index, name, seconds);
        } else {
            ++failed;
            std::printf("FAIL %2d %s (%.1fs): %s\n", index, name, seconds, problem.c_str());
        }
        std::fflush(stdout);
    }
    return failed;
}

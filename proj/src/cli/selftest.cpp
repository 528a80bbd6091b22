// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/cli.hpp"

#include "splatbench/metrics.hpp"
#include "splatbench/oracle.hpp"
#include "splatbench/rng.hpp"
#include "splatbench/splat/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace splatbench::cli {

namespace {

struct GoldenVector {
    Lineage lineage;
    double uniforms[4];
};

// Same values as tests/golden/rng_*.txt.
constexpr GoldenVector kGolden[] = {
    {{7, 7, 7}, {0.13117597388095059, 0.87049464250197539, 0.38522918755989699, 0.78807754225036997}},
    {{42, 0, 1}, {0.35526376911057789, 0.83641909201128894, 0.09419039862170886, 0.053381910629551554}},
    {{0, 0, 0}, {0.53957827124584645, 0.61060321753415669, 0.76352283418081102, 0.063422369769905229}},
};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

std::string check_golden() {
    for (const auto& g : kGolden) {
        RngStream stream(g.lineage);
        for (const double expected : g.uniforms) {
            if (stream.uniform() != expected) {
                return "lineage (" + std::to_string(g.lineage.master_seed) + ", " +
                       std::to_string(g.lineage.sample_id) + ", " + std::to_string(g.lineage.corruption_tag) +
                       ") diverges";
            }
        }
    }
    return {};
}

std::string check_renderer(unsigned threads) {
    for (std::uint64_t scene = 0; scene < 3; ++scene) {
        RngStream rng = derive_stream(0x5e1f7e57, scene, 0);
        LabeledCloud cloud;
        const std::size_t n = 50 + rng.index(150);
        std::vector<double> features;
        for (std::size_t i = 0; i < n; ++i) {
            cloud.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
            cloud.labels.push_back(rng.uniform());
            features.push_back(rng.uniform(-1, 1));
            features.push_back(rng.uniform(-1, 1));
        }
        RigConfig config;
        config.views = 4;
        config.resolution = 48;
        const CameraRig rig = make_views(cloud, config);
        GaussianOptions options;
        options.iso_scale = 0.03 + 0.05 * rng.uniform();
        options.opacity = 0.5 + 0.5 * rng.uniform();
        GaussianSet g = init_gaussians(cloud, options);
        attach_features(g, features, 2);
        RenderOptions render;
        render.threads = threads;
        const RenderedViews tile = rasterize(g, rig, render);
        const RenderedViews ref = reference_rasterize(g, rig, render);
        const double worst = std::max({max_abs_diff(tile.color, ref.color), max_abs_diff(tile.depth, ref.depth),
                                       max_abs_diff(tile.alpha, ref.alpha), max_abs_diff(tile.feature, ref.feature)});
        if (!(worst <= 1e-5)) {
            return "scene " + std::to_string(scene) + " max abs difference " + std::to_string(worst);
        }
    }
    return {};
}

std::string check_metrics() {
    const auto thresholds = default_iou_thresholds();
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        RngStream rng = derive_stream(0x3e7c5, trial, 0);
        const std::size_t n = 2 + rng.index(255);
        std::vector<double> pred(n), gt(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = std::round(rng.uniform() * 20.0) / 20.0;
            gt[i] = rng.uniform() < 0.4 ? rng.uniform() : 0.0;
        }
        gt[0] = 0.5;
        gt[1] = 0.0;
        pred[0] = std::max(pred[0], 0.01);
        const std::string where = " (trial " + std::to_string(trial) + ")";
        if (std::abs(auc(pred, gt) - oracle::auc_pairs(pred, gt)) > 1e-9) return "auc" + where;
        if (aiou(pred, gt, thresholds) != oracle::aiou_sets(pred, gt, thresholds)) return "aiou" + where;
        if (std::abs(sim(pred, gt) - oracle::sim_loop(pred, gt)) > 1e-12) return "sim" + where;
        if (std::abs(mae(pred, gt) - oracle::mae_loop(pred, gt)) > 1e-12) return "mae" + where;
    }
    return {};
}

} // namespace

int selftest(std::ostream& out, unsigned threads) {
    const std::pair<const char*, std::function<std::string()>> checks[] = {
        {"rng golden vectors", check_golden},
        {"renderer oracle equivalence", [threads] { return check_renderer(threads); }},
        {"metric oracles", check_metrics},
    };
    int failures = 0;
    for (const auto& [name, check] : checks) {
        std::string problem;
        try {
            problem = check();
        } catch (const std::exception& e) {
            problem = e.what();
        }
        if (problem.empty()) {
            out << "PASS " << name << "\n";
        } else {
            out << "FAIL " << name << ": " << problem << "\n";
            ++failures;
        }
    }
    return failures;
}

} // namespace splatbench::cli

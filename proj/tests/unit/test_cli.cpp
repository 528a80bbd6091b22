// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/benchmark.hpp"
#include "splatbench/cli.hpp"
#include "splatbench/io/container.hpp"
#include "splatbench/io/image.hpp"
#include "splatbench/io/prediction.hpp"
#include "splatbench/io/report.hpp"
#include "testing.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

using namespace splatbench;
using testutil::TempDir;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::size_t count_lines_starting(const std::string& text, char c) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) n += !line.empty() && line[0] == c;
    return n;
}

// Rewrites every cloud with labels thresholded to {0, 1}.
void binarize_labels(const std::filesystem::path& manifest) {
    for (const auto& ref : load_sample_refs(manifest)) {
        auto cloud = io::read_cloud(ref.cloud_path);
        for (auto& l : cloud.labels) l = l > 0.0 ? 1.0 : 0.0;
        io::write_cloud(ref.cloud_path, cloud);
    }
}

// Writes a prediction equal to each sample's labels.
void write_perfect_predictions(const std::filesystem::path& manifest, const std::filesystem::path& dir) {
    for (const auto& ref : load_sample_refs(manifest)) {
        const auto cloud = io::read_cloud(ref.cloud_path);
        io::write_prediction(dir / (sample_stem(ref) + ".f32"), {ref.sample_id, "oracle", cloud.labels});
    }
}

} // namespace

TEST(CliCorrupt, TenSamplesAllVariants) {
    TempDir dir("cli_corrupt");
    const auto manifest = testutil::write_sample_set(dir.path(), 10, 1024);
    const auto r = run({"corrupt", "--input", manifest.string(), "--out", (dir / "out").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "350 variants written")) << r.out;
    EXPECT_TRUE(contains(r.out, "variants per pairing: 35")) << r.out;
}

TEST(CliCorrupt, FilteredAndDeterministic) {
    TempDir dir("cli_corrupt_filter");
    const auto manifest = testutil::write_sample_set(dir.path(), 10, 256);
    const auto a = run({"corrupt", "--input", manifest.string(), "--out", (dir / "a").string(), "--kinds", "jitter",
                        "--severities", "1", "--seed", "4"});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_TRUE(contains(a.out, "10 variants written")) << a.out;
    run({"corrupt", "--input", manifest.string(), "--out", (dir / "b").string(), "--kinds", "jitter",
         "--severities", "1", "--seed", "4"});
    EXPECT_EQ(testutil::snapshot(dir / "a"), testutil::snapshot(dir / "b"));
}

TEST(CliCorrupt, FullScaleDryRunJson) {
    TempDir dir("cli_dry");
    auto piad = io::synthesize_dataset_manifest("PIAD-C", 0);
    const auto laso = io::synthesize_dataset_manifest("LASO-C", piad.size());
    piad.insert(piad.end(), laso.begin(), laso.end());
    io::write_manifest(dir / "all.jsonl", piad);
    const auto r = run({"--json", "corrupt", "--input", (dir / "all.jsonl").string(), "--dry-run"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["base_pairings"]["PIAD-C"], 2474);
    EXPECT_EQ(j["base_pairings"]["LASO-C"], 2416);
    EXPECT_EQ(j["base_pairings_total"], 4890);
    EXPECT_EQ(j["variants_per_pairing"], 35);
    EXPECT_EQ(j["variants"], 4890 * 35);
}

TEST(CliCorrupt, Errors) {
    TempDir dir("cli_err");
    EXPECT_EQ(run({"corrupt", "--input", (dir / "missing.jsonl").string(), "--out", "x"}).code, 1);
    const auto manifest = testutil::write_sample_set(dir.path(), 1, 64);
    EXPECT_EQ(run({"corrupt", "--input", manifest.string(), "--kinds", "blur", "--dry-run"}).code, 1);
    EXPECT_EQ(run({"corrupt", "--input", manifest.string(), "--severities", "6", "--dry-run"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliRender, SmokeSingleView) {
    TempDir dir("cli_render");
    const auto manifest = testutil::write_sample_set(dir.path(), 1, 256);
    const auto r = run({"render", "--input", manifest.string(), "--out", (dir / "out").string(), "--views", "1",
                        "--res", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "1 samples rendered, 1 depth images of 8x8")) << r.out;
    const auto img = io::read_raw_image(dir / "out" / "100" / "view_00.depth.f32");
    EXPECT_EQ(img.info.height, 8u);
    EXPECT_EQ(img.info.width, 8u);
    EXPECT_EQ(img.planes.size(), 64u);
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / "100" / "view_00.depth.png"));
}

TEST(CliRender, DefaultsGiveTwelveImages) {
    TempDir dir("cli_render_defaults");
    const auto manifest = testutil::write_sample_set(dir.path(), 1, 256);
    const auto r = run({"render", "--input", manifest.string(), "--out", (dir / "out").string(), "--no-png"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "12 depth images of 112x112")) << r.out;
    EXPECT_EQ(io::read_raw_image(dir / "out" / "100" / "view_11.depth.f32").planes.size(), 112u * 112u);
}

TEST(CliRender, ZeroLabelsGiveBlackMasks) {
    TempDir dir("cli_render_black");
    SampleManifest m;
    m.sample_id = 1;
    m.object_category = "Chair";
    m.affordance_type = "sit";
    m.cloud_path = "c.pcaf";
    auto cloud = testutil::random_cloud(300, 1);
    std::fill(cloud.labels.begin(), cloud.labels.end(), 0.0);
    io::write_cloud(dir / "c.pcaf", cloud);
    const std::vector<SampleManifest> records{m};
    io::write_manifest(dir / "m.jsonl", records);
    const auto r = run({"render", "--input", (dir / "m.jsonl").string(), "--out", (dir / "out").string(), "--mode",
                        "affordance", "--views", "2", "--res", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* view : {"view_00", "view_01"}) {
        const auto img = io::read_raw_image(dir / "out" / "1" / (std::string(view) + ".affordance.f32"));
        for (const float v : img.planes) EXPECT_EQ(v, 0.0f);
    }
}

TEST(CliRender, BadConfigIsFatal) {
    TempDir dir("cli_render_bad");
    const auto manifest = testutil::write_sample_set(dir.path(), 1, 64);
    EXPECT_EQ(run({"render", "--input", manifest.string(), "--out", (dir / "o").string(), "--views", "0"}).code, 1);
    EXPECT_EQ(run({"render", "--input", manifest.string(), "--out", (dir / "o").string(), "--mode", "x"}).code, 1);
}

TEST(CliEval, PerfectPredictionsAndReport) {
    TempDir dir("cli_eval");
    const auto manifest = testutil::write_sample_set(dir.path(), 3, 256);
    binarize_labels(manifest);
    std::filesystem::create_directories(dir / "pred");
    write_perfect_predictions(manifest, dir / "pred");
    const auto csv = (dir / "eval.csv").string();
    const auto r = run({"eval", "--pred", (dir / "pred").string(), "--gt", manifest.string(), "--out", csv});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "3 samples evaluated")) << r.out;
    std::ifstream in(csv);
    const auto records = io::read_eval_csv(in);
    ASSERT_EQ(records.size(), 12u);
    for (const auto& rec : records) {
        if (rec.metric == Metric::Aiou) EXPECT_EQ(rec.value, 1.0);
        if (rec.metric == Metric::Mae) EXPECT_EQ(rec.value, 0.0);
    }
}

TEST(CliEval, MissingPredictionIsPartial) {
    TempDir dir("cli_eval_missing");
    const auto manifest = testutil::write_sample_set(dir.path(), 3, 128);
    std::filesystem::create_directories(dir / "pred");
    write_perfect_predictions(manifest, dir / "pred");
    std::filesystem::remove(dir / "pred" / "101.f32");
    const auto r = run({"eval", "--pred", (dir / "pred").string(), "--gt", manifest.string(), "--out",
                        (dir / "e.csv").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.out, "skipped:")) << r.out;
    EXPECT_TRUE(contains(r.out, "101")) << r.out;
}

TEST(CliEval, ShapeMismatchIsFatal) {
    TempDir dir("cli_eval_shape");
    const auto manifest = testutil::write_sample_set(dir.path(), 1, 128);
    std::filesystem::create_directories(dir / "pred");
    io::write_prediction(dir / "pred" / "100.f32", {100, "m", std::vector<double>(5, 0.5)});
    EXPECT_EQ(run({"eval", "--pred", (dir / "pred").string(), "--gt", manifest.string(), "--out",
                   (dir / "e.csv").string()})
                  .code,
              1);
}

TEST(CliPipeline, CorruptionGroupingHasSevenRows) {
    TempDir dir("cli_pipeline");
    const auto manifest = testutil::write_sample_set(dir.path(), 2, 256);
    ASSERT_EQ(run({"corrupt", "--input", manifest.string(), "--out", (dir / "bench").string(), "--severities", "2"})
                  .code,
              0);
    const auto index = dir / "bench" / "index.jsonl";
    std::filesystem::create_directories(dir / "pred");
    write_perfect_predictions(index, dir / "pred");
    const auto csv = (dir / "eval.csv").string();
    const auto e = run({"eval", "--pred", (dir / "pred").string(), "--gt", index.string(), "--out", csv,
                        "--group-by", "corruption"});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(count_lines_starting(e.out, '|'), 9u) << e.out;
    const auto rep = run({"report", "--eval", "base=" + csv, "--eval", "other=" + csv});
    ASSERT_EQ(rep.code, 0) << rep.err;
    EXPECT_EQ(count_lines_starting(rep.out, '|'), 9u) << rep.out;
    EXPECT_TRUE(contains(rep.out, "Drop-L")) << rep.out;
    const auto rep_csv = run({"report", "--eval", csv, "--format", "csv", "--group-by", "corruption,severity"});
    ASSERT_EQ(rep_csv.code, 0) << rep_csv.err;
    EXPECT_TRUE(contains(rep_csv.out, "aiou_mean")) << rep_csv.out;
}

TEST(CliConfig, FlagsBeatConfigBeatEnvironment) {
    TempDir dir("cli_config");
    const auto manifest = testutil::write_sample_set(dir.path(), 10, 64);
    {
        std::ofstream cfg(dir / "cfg.ini");
        cfg << "[corrupt]\nseverities = [1, 2]\n";
    }
    auto variants = [&](std::vector<std::string> extra) {
        std::vector<std::string> args{"--json"};
        args.insert(args.end(), extra.begin(), extra.end());
        args.insert(args.end(), {"corrupt", "--input", manifest.string(), "--dry-run"});
        const auto r = run(args);
        EXPECT_EQ(r.code, 0) << r.err;
        return nlohmann::json::parse(r.out)["variants"].get<int>();
    };
    ::setenv("SPLATBENCH_SEVERITIES", "1,2,3", 1);
    EXPECT_EQ(variants({}), 210);
    EXPECT_EQ(variants({"--config", (dir / "cfg.ini").string()}), 140);
    std::vector<std::string> args{"--json", "--config", (dir / "cfg.ini").string(), "corrupt", "--input",
                                  manifest.string(), "--dry-run", "--severities", "4"};
    const auto r = run(args);
    EXPECT_EQ(nlohmann::json::parse(r.out)["variants"].get<int>(), 70);
    ::unsetenv("SPLATBENCH_SEVERITIES");
    EXPECT_EQ(variants({}), 350);
}

TEST(CliThreads, OutputBytesIndependentOfWorkers) {
    TempDir dir("cli_threads");
    const auto manifest = testutil::write_sample_set(dir.path(), 3, 1024);
    for (const char* t : {"1", "4"}) {
        const std::string tag = t;
        ASSERT_EQ(run({"--threads", t, "corrupt", "--input", manifest.string(), "--out",
                       (dir / ("c" + tag)).string(), "--kinds", "drop_local,add_local"})
                      .code,
                  0);
        ASSERT_EQ(run({"--threads", t, "render", "--input", manifest.string(), "--out", (dir / ("r" + tag)).string(),
                       "--views", "3", "--res", "32"})
                      .code,
                  0);
    }
    EXPECT_EQ(testutil::snapshot(dir / "c1"), testutil::snapshot(dir / "c4"));
    EXPECT_EQ(testutil::snapshot(dir / "r1"), testutil::snapshot(dir / "r4"));
}

TEST(CliSelftest, Passes) {
    const auto r = run({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(count_lines_starting(r.out, 'P'), 3u) << r.out;
}

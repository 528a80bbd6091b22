// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/cli.hpp"
#include "splatbench/corrupt.hpp"
#include "splatbench/error.hpp"
#include "splatbench/io/container.hpp"
#include "splatbench/metrics.hpp"
#include "splatbench/rng.hpp"
#include "splatbench/splat/rasterizer.hpp"
#include "splatbench/vocabulary.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace splatbench;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

LabeledCloud to_cloud(const Array& points, const Array& labels) {
    if (points.ndim() != 2 || points.shape(1) != 3) {
        throw py::value_error("points must have shape (N, 3)");
    }
    if (labels.ndim() != 1 || labels.shape(0) != points.shape(0)) {
        throw py::value_error("labels must have shape (N,)");
    }
    LabeledCloud cloud;
    const auto p = points.unchecked<2>();
    const auto l = labels.unchecked<1>();
    for (py::ssize_t i = 0; i < points.shape(0); ++i) {
        cloud.points.push_back({p(i, 0), p(i, 1), p(i, 2)});
        cloud.labels.push_back(l(i));
    }
    return cloud;
}

py::tuple from_cloud(const LabeledCloud& cloud) {
    Array points({static_cast<py::ssize_t>(cloud.size()), py::ssize_t{3}});
    Array labels(static_cast<py::ssize_t>(cloud.size()));
    auto p = points.mutable_unchecked<2>();
    auto l = labels.mutable_unchecked<1>();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (int k = 0; k < 3; ++k) p(i, k) = cloud.points[i][k];
        l(i) = cloud.labels[i];
    }
    return py::make_tuple(points, labels);
}

std::vector<double> to_vector(const Array& a) {
    return {a.data(), a.data() + a.size()};
}

Array image(const std::vector<double>& data, std::vector<py::ssize_t> shape) {
    Array out(shape);
    std::copy(data.begin(), data.end(), out.mutable_data());
    return out;
}

py::dict render(const Array& points, const Array& labels, std::size_t views, std::size_t resolution,
                double iso_scale, double opacity, std::optional<Array> features, bool reference, unsigned threads) {
    const LabeledCloud cloud = to_cloud(points, labels);
    RigConfig config;
    config.views = views;
    config.resolution = resolution;
    const CameraRig rig = make_views(cloud, config);
    GaussianOptions options;
    options.iso_scale = iso_scale;
    options.opacity = opacity;
    GaussianSet g = init_gaussians(cloud, options);
    if (features) {
        if (features->ndim() != 2) {
            throw py::value_error("features must have shape (N, D)");
        }
        attach_features(g, to_vector(*features), static_cast<std::size_t>(features->shape(1)));
    }
    RenderOptions render_options;
    render_options.threads = threads;
    py::gil_scoped_release release;
    const RenderedViews out = reference ? reference_rasterize(g, rig, render_options) : rasterize(g, rig, render_options);
    py::gil_scoped_acquire acquire;

    const auto v = static_cast<py::ssize_t>(out.views);
    const auto h = static_cast<py::ssize_t>(out.height);
    const auto w = static_cast<py::ssize_t>(out.width);
    py::dict result;
    result["color"] = image(out.color, {v, static_cast<py::ssize_t>(out.color_channels), h, w});
    result["depth"] = image(out.depth, {v, h, w});
    result["alpha"] = image(out.alpha, {v, h, w});
    if (out.feature_dim > 0) {
        result["feature"] = image(out.feature, {v, static_cast<py::ssize_t>(out.feature_dim), h, w});
    }
    return result;
}

} // namespace

PYBIND11_MODULE(_splatbench, m) {
    m.doc() = "Corruption benchmarks, Gaussian-splat rendering and affordance metrics";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("uniforms", [](std::uint64_t master, std::uint64_t sample, std::uint64_t tag, std::size_t n) {
        RngStream stream = derive_stream(master, sample, tag);
        std::vector<double> out(n);
        for (auto& u : out) u = stream.uniform();
        return out;
    }, py::arg("master_seed"), py::arg("sample_id"), py::arg("corruption_tag"), py::arg("n") = 4);

    m.def("corruption_kinds", [] {
        std::vector<std::string> names;
        for (const auto kind : kAllCorruptionKinds) names.emplace_back(to_string(kind));
        return names;
    });

    m.def("corrupt", [](const Array& points, const Array& labels, const std::string& kind, int severity,
                        std::uint64_t seed, std::uint64_t sample_id) {
        const auto parsed = parse_corruption_kind(kind);
        if (!parsed) throw py::value_error("unknown corruption kind '" + kind + "'");
        const auto spec = make_corruption_spec(*parsed, SeverityLevel(severity), seed, sample_id);
        return from_cloud(apply_corruption(to_cloud(points, labels), spec));
    }, py::arg("points"), py::arg("labels"), py::arg("kind"), py::arg("severity"), py::arg("seed") = 0,
       py::arg("sample_id") = 0);

    m.def("read_cloud", [](const std::string& path) { return from_cloud(io::read_cloud(path)); });
    m.def("write_cloud", [](const std::string& path, const Array& points, const Array& labels) {
        io::write_cloud(path, to_cloud(points, labels));
    });

    m.def("render", &render, py::arg("points"), py::arg("labels"), py::arg("views") = 12,
          py::arg("resolution") = 112, py::arg("iso_scale") = 0.02, py::arg("opacity") = 0.9,
          py::arg("features") = py::none(), py::arg("reference") = false, py::arg("threads") = 0);

    m.def("auc", [](const Array& p, const Array& g) { return auc(to_vector(p), to_vector(g)); });
    m.def("aiou", [](const Array& p, const Array& g) { return aiou(to_vector(p), to_vector(g)); });
    m.def("sim", [](const Array& p, const Array& g) { return sim(to_vector(p), to_vector(g)); });
    m.def("mae", [](const Array& p, const Array& g) { return mae(to_vector(p), to_vector(g)); });
    m.def("evaluate", [](const Array& p, const Array& g) {
        const MetricReport r = evaluate(to_vector(p), to_vector(g));
        py::dict out;
        for (const auto metric : kAllMetrics) {
            const auto value = r.get(metric);
            out[py::str(std::string(to_string(metric)))] = value ? py::object(py::float_(*value)) : py::none();
        }
        out["flags"] = r.flags;
        return out;
    });

    m.def("total_pairings", [](const std::string& dataset) {
        const auto parsed = parse_dataset(dataset);
        if (!parsed) throw py::value_error("unknown dataset '" + dataset + "'");
        return total_pairings(*parsed);
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    });
}

#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gdr/error.hpp"
#include "gdr/plot.hpp"

namespace gdr::cli {

namespace {

std::string format_g17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

AlphaWeights parse_alphas(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw InvalidArgument("--alphas: '" + item + "' is not a number");
        }
        v.push_back(x);
    }
    if (v.size() != 3) throw InvalidArgument("--alphas: expected three comma-separated weights");
    try {
        return AlphaWeights(v[0], v[1], v[2]);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string("--alphas: ") + e.what());
    }
}

// Shared by `run` and `replay`.
int guarded(const std::function<void()>& body, std::ostream& err) {
    try {
        body();
        return 0;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

nlohmann::json to_json(const RunManifest& m) {
    const auto& c = m.config;
    nlohmann::json j;
    j["method"] = to_string(c.method);
    j["use_pca"] = c.use_pca;
    j["alphas"] = c.alpha.values();
    j["max_iter"] = c.max_iter;
    j["tol"] = c.tol;
    j["r_min"] = c.guards.r_min;
    j["per_pair_cap"] = c.guards.per_pair_cap;
    j["step_scale"] = c.guards.step_scale;
    j["stabilized"] = c.stabilized;
    j["lof_k"] = c.lof_k;
    j["horizon_eps"] = c.horizon_eps;
    j["seed"] = c.seed;
    j["input"] = m.input;
    j["label_column"] = m.label_column;
    j["output"] = m.output;
    j["metrics"] = m.metrics;
    j["plot_dir"] = m.plot_dir;
    j["version"] = m.version;
    j["started_at"] = m.started_at;
    return j;
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    try {
        RunManifest m;
        auto& c = m.config;
        c.method = parse_method(j.at("method").get<std::string>());
        c.use_pca = j.at("use_pca").get<bool>();
        const auto a = j.at("alphas").get<std::array<double, 3>>();
        c.alpha = AlphaWeights(a[0], a[1], a[2]);
        c.max_iter = j.at("max_iter").get<int>();
        c.tol = j.at("tol").get<double>();
        c.guards.r_min = j.at("r_min").get<double>();
        c.guards.per_pair_cap = j.at("per_pair_cap").get<bool>();
        c.guards.step_scale = j.at("step_scale").get<double>();
        c.stabilized = j.at("stabilized").get<bool>();
        c.lof_k = j.at("lof_k").get<int>();
        c.horizon_eps = j.at("horizon_eps").get<double>();
        c.seed = j.at("seed").get<std::uint64_t>();
        m.input = j.at("input").get<std::string>();
        m.label_column = j.at("label_column").get<std::string>();
        m.output = j.at("output").get<std::string>();
        m.metrics = j.value("metrics", "");
        m.plot_dir = j.value("plot_dir", "");
        m.version = j.value("version", kVersion);
        m.started_at = j.value("started_at", "");
        c.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("manifest: ") + e.what());
    }
}

std::string metrics_csv(const GdrResult& result) {
    std::string out = "iteration,class,variance,total\n";
    for (const auto& r : result.reports) {
        const std::string it = std::to_string(r.iteration);
        const std::string total = format_g17(r.total_variance);
        for (std::size_t k = 0; k < r.per_class_variance.size(); ++k) {
            out += it + ',' + std::to_string(k) + ',' + format_g17(r.per_class_variance[k]) +
                   ',' + total + '\n';
        }
        out += it + ",all," + total + ',' + total + '\n';
    }
    return out;
}

GdrResult execute(const RunManifest& m, std::ostream& log) {
    m.config.validate();
    const LabeledDataset data = load_csv(m.input, m.label_column);

    IterationObserver observer;
    if (!m.plot_dir.empty()) {
        std::filesystem::create_directories(m.plot_dir);
        const std::filesystem::path dir = m.plot_dir;
        observer = [dir](const IterationReport& r, const LabeledDataset& snapshot) {
            const std::string name =
                r.iteration == 0 ? "initial.svg" : "iter_" + std::to_string(r.iteration) + ".svg";
            emit_svg(snapshot, dir / name);
        };
    }

    GdrResult result = run_gdr(data, m.config, observer);
    write_csv(result.transformed, m.output);
    if (!m.metrics.empty()) write_text(m.metrics, metrics_csv(result));

    log << "method " << to_string(m.config.method) << ", n=" << data.size()
        << ", d=" << data.dim() << ", classes=" << data.class_count() << '\n';
    log << "iteration 0: total variance " << format_g17(result.initial.total_variance) << '\n';
    for (const auto& r : result.reports) {
        log << "iteration " << r.iteration << ": total variance "
            << format_g17(r.total_variance) << " (" << r.elapsed.count() << " s)\n";
    }
    return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gravitational dimensionality reduction"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // run
    auto* run = app.add_subcommand("run", "Transform a labeled CSV dataset");
    RunManifest rm;
    std::string method = "newtonian";
    std::string alphas = "0.33,0.33,0.34";
    bool no_pca = false;
    std::string manifest_path;
    run->add_option("--input", rm.input, "Input CSV with a header row")->required();
    run->add_option("--label-column", rm.label_column, "Name of the class label column")
        ->required();
    run->add_option("--method", method, "newtonian | schwarzschild | minkowski")
        ->required()
        ->check(CLI::IsMember({"newtonian", "schwarzschild", "minkowski"}));
    run->add_option("--output", rm.output, "Transformed CSV to write")->required();
    run->add_option("--alphas", alphas, "Coordinate weights a1,a2,a3 (relativity; sum to 1)");
    run->add_option("--max-iter", rm.config.max_iter, "Maximum number of iterations")
        ->check(CLI::PositiveNumber);
    run->add_option("--tol", rm.config.tol, "Relative variance change that counts as converged")
        ->check(CLI::NonNegativeNumber);
    run->add_flag("--no-pca", no_pca, "Work in the input space (newtonian only)");
    run->add_option("--lof-k", rm.config.lof_k, "LOF neighborhood size (clamped to class size - 1)")
        ->check(CLI::PositiveNumber);
    run->add_flag("--stabilized", rm.config.stabilized,
                  "Newtonian: cap each pull at the pair distance, scale steps by 1/(n_k-1)");
    run->add_option("--r-min", rm.config.guards.r_min, "Pairs closer than this are skipped")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed", rm.config.seed, "Seed recorded in the manifest");
    run->add_option("--metrics", rm.metrics, "Per-iteration variance CSV to write");
    run->add_option("--plot-dir", rm.plot_dir, "Directory for initial.svg and iter_<t>.svg");
    run->add_option("--manifest", manifest_path, "Write the resolved run configuration as JSON");

    // blobs
    auto* blobs = app.add_subcommand("blobs", "Write a synthetic Gaussian-blob dataset");
    BlobSpec spec;
    std::string blobs_out;
    blobs->add_option("--classes", spec.n_classes, "Number of classes")->check(CLI::PositiveNumber);
    blobs->add_option("--per-class", spec.per_class, "Samples per class")
        ->check(CLI::PositiveNumber);
    blobs->add_option("--dim", spec.dim, "Dimensionality")->check(CLI::PositiveNumber);
    blobs->add_option("--spread", spec.spread, "Standard deviation around each center")
        ->check(CLI::NonNegativeNumber);
    blobs->add_option("--center-scale", spec.center_scale,
                      "Centers are uniform in [-s, s]^dim")
        ->check(CLI::PositiveNumber);
    blobs->add_option("--seed", spec.seed, "splitmix64 seed");
    blobs->add_option("--output", blobs_out, "CSV to write")->required();

    // replay
    auto* replay = app.add_subcommand("replay", "Repeat a run from its manifest");
    std::string replay_path;
    replay->add_option("manifest", replay_path, "Manifest JSON written by run --manifest")
        ->required()
        ->check(CLI::ExistingFile);

    std::vector<const char*> argv{"gdr"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (*run) {
        try {
            rm.config.method = parse_method(method);
            rm.config.alpha = parse_alphas(alphas);
            rm.config.use_pca = !no_pca;
            if (no_pca && is_relativity(rm.config.method)) {
                throw InvalidArgument("--no-pca: method " + method +
                                      " needs the 3-D PCA manifold");
            }
            rm.config.validate();
        } catch (const InvalidArgument& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }
        rm.started_at = utc_timestamp();
        return guarded(
            [&] {
                if (!manifest_path.empty()) write_text(manifest_path, to_json(rm).dump(2) + "\n");
                execute(rm, out);
            },
            err);
    }
    if (*blobs) {
        return guarded([&] { write_csv(make_blobs(spec), blobs_out); }, err);
    }
    if (*replay) {
        return guarded(
            [&] {
                std::ifstream in(replay_path);
                if (!in) throw IoError("cannot open " + replay_path);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::parse_error& e) {
                    throw InvalidArgument(std::string("manifest: ") + e.what());
                }
                execute(manifest_from_json(j), out);
            },
            err);
    }
    return 2;
}

} // namespace gdr::cli

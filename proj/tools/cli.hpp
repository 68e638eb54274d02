#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdr/engine.hpp"

namespace gdr::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to repeat a `run` invocation.
struct RunManifest {
    GdrConfig config;
    std::string input;
    std::string label_column = "label";
    std::string output;
    std::string metrics;  ///< empty when not requested
    std::string plot_dir; ///< empty when not requested
    std::string version = kVersion;
    std::string started_at;
};

nlohmann::json to_json(const RunManifest& m);
/// Throws InvalidArgument on missing or malformed keys.
RunManifest manifest_from_json(const nlohmann::json& j);

/// Executes a fully resolved run: load, transform, write outputs.
/// Returns the engine result.
GdrResult execute(const RunManifest& m, std::ostream& log);

/// Metrics CSV text: `iteration,class,variance,total`, one row per class and
/// one `all` row per executed iteration.
std::string metrics_csv(const GdrResult& result);

/// Entry point shared by the executable and the tests. args excludes argv[0].
/// Exit codes: 0 ok, 1 I/O or data error, 2 bad flags or configuration.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gdr::cli

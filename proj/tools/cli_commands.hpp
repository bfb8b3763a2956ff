#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nctorus/json_io.hpp"

namespace nctorus::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Shared run configuration; every report embeds it so runs are
/// reproducible from their own output.
struct RunConfig {
    double theta = 0.7071067811865476;
    double tau_re = -0.35;
    double tau_im = -0.8;
    int order = 5;
    int box = 10;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    int cases = 8;
    std::string format = "json";  // json | csv
    std::optional<std::string> input_path;
    std::optional<std::string> out_path;
    bool corrupt_pairing = false;  // test hook: flips the pairing sign in E_r

    TorusParams params() const { return TorusParams(theta, Complex(tau_re, tau_im)); }
    Json to_json() const;
    /// Merge values from a config file (flags already parsed win).
    static RunConfig from_json(const Json& j, RunConfig base);
};

struct CommandResult {
    Json report;
    std::string csv;  // only for commands with a CSV form
    int exit_code = 0;
};

CommandResult cmd_identities(const RunConfig& config);
CommandResult cmd_exp(const RunConfig& config, const AlgebraElement& a, const std::string& which);
CommandResult cmd_converge(const RunConfig& config, const AlgebraElement& a,
                           std::optional<HalfPlaneForm> halfplane);
CommandResult cmd_theta_scan(const RunConfig& config, const AlgebraElement& a,
                             const std::vector<int>& radii);
CommandResult cmd_chi(const RunConfig& config, const FactoredElement& x);

}  // namespace nctorus::cli

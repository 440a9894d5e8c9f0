#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nli/scan.hpp"

namespace nli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of the CLI; library errors are classified the same way.
//   0 success, 2 config error, 3 numerical-validity failure, 4 I/O error.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class NumericError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fully resolved experiment configuration: defaults applied, units converted
// to natural units (c = hbar = 1). `resolved` echoes every effective value.
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    std::string resolved;  // canonical JSON text of the resolved config
};

std::vector<std::string> list_experiments();

// Parses and validates a JSON config. Throws ConfigError with a path-to-field
// diagnostic on schema violations and on parameter-invariant violations.
ExperimentConfig parse_config(const std::string& text);

std::string serialize_config(const ExperimentConfig& config);

// Runs the configured experiment; deterministic for a fixed config and seed.
// Regime warnings are captured in the results, never dropped.
std::vector<ScanResult> run_experiment(const ExperimentConfig& config);

struct ManifestEntry {
    std::string file;
    std::uint64_t bytes = 0;
    std::string fnv1a64;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
};

// Writes one CSV and one JSON metadata sidecar per scan plus manifest.json
// into the directory (created if needed); files are replaced atomically.
Manifest write_outputs(const std::vector<ScanResult>& results, const std::string& directory,
                       const ExperimentConfig& config);

}  // namespace nli

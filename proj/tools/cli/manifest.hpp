#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bagins::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of one command invocation. Contains nothing time- or host-dependent,
/// so identical invocations produce identical manifests.
struct RunManifest {
    std::string command;
    std::string config_json;     // resolved configuration, compact JSON
    std::string config_source;   // "file" or "defaults"
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    /// Hex SHA-256 of config_json.
    std::string config_digest() const;
    std::string to_json() const;
};

std::string sha256_hex(const std::string& data);

/// Writes via a temporary sibling and rename, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// report.csv -> report.manifest.json (same for any extension, or none).
std::filesystem::path sibling_path(const std::filesystem::path& out, const std::string& suffix);

}  // namespace bagins::cli

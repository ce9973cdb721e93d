#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace episource::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit digest of a file's bytes, as hex. Throws on open failure.
std::string file_digest(const std::string& path);

/// Writes `manifest.json` into the directory holding `output_path`
/// (or into output_path itself when it is a directory). The manifest records
/// the subcommand, its fully resolved configuration, the seed, tool version,
/// input digests and a timestamp; a run is reproducible from it.
void write_manifest(const std::string& output_path, const std::string& subcommand,
                    const nlohmann::json& resolved_config, std::uint64_t seed,
                    const std::vector<std::string>& input_files);

} // namespace episource::cli

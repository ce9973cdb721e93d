#include "manifest.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include "episource/errors.hpp"

namespace episource::cli {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file for digest: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

void write_manifest(const std::string& output_path, const std::string& subcommand,
                    const nlohmann::json& resolved_config, std::uint64_t seed,
                    const std::vector<std::string>& input_files) {
    namespace fs = std::filesystem;
    fs::path base(output_path);
    fs::path dir = fs::is_directory(base) ? base : base.parent_path();
    if (dir.empty()) dir = ".";

    nlohmann::json digests = nlohmann::json::object();
    for (const auto& f : input_files) digests[f] = file_digest(f);

    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);

    nlohmann::json manifest{
        {"subcommand", subcommand}, {"config", resolved_config},   {"seed", seed},
        {"version", kToolVersion},  {"input_digests", digests},    {"timestamp", stamp},
    };
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

} // namespace episource::cli

#include "manifest.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace opamech::tools {

std::string fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot checksum " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 14];
    while (f.read(buf, sizeof(buf)) || f.gcount() > 0) {
        const std::streamsize n = f.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!f) break;
    }
    char out[19];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

void RunManifest::add_output(const std::string& path) { outputs_.push_back(path); }

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["tool"] = "opamech";
    j["version"] = kToolVersion;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    j["timestamp_utc"] = stamp;
    j["command"] = command;
    j["runs"] = nlohmann::json::array();
    for (const auto& [label, params_json] : runs)
        j["runs"].push_back({{"label", label}, {"params", nlohmann::json::parse(params_json)}});
    j["outputs"] = nlohmann::json::array();
    for (const auto& out : outputs_) {
        j["outputs"].push_back({
            {"path", std::filesystem::path(out).filename().string()},
            {"bytes", std::filesystem::file_size(out)},
            {"fnv1a64", fnv1a64_file(out)},
        });
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << '\n';
}

} // namespace opamech::tools

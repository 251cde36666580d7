#ifndef OPAMECH_TOOLS_MANIFEST_HPP
#define OPAMECH_TOOLS_MANIFEST_HPP

#include <string>
#include <vector>

namespace opamech::tools {

inline constexpr const char* kToolVersion = "0.1.0";

// Run manifest: resolved parameters, tool version, timestamp, and every
// output file with its FNV-1a 64 content checksum.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> runs;  // label -> params JSON

    void add_output(const std::string& path);
    void write(const std::string& path) const;

  private:
    std::vector<std::string> outputs_;
};

std::string fnv1a64_file(const std::string& path);

} // namespace opamech::tools

#endif

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace corrcolor::cli {

/// Everything needed to rerun a command: name, effective options, seed,
/// build version, SHA-256 of every input file, and a UTC timestamp.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::string version;
    std::map<std::string, std::string> input_digests;  ///< path -> hex digest
    std::string timestamp;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);
std::string utc_timestamp();

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

}  // namespace corrcolor::cli

#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

#include <openssl/evp.h>

#include "corrcolor/types.hpp"

namespace corrcolor::cli {

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::ostringstream hex;
    hex << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i)
        hex << std::setw(2) << static_cast<int>(digest[i]);
    return hex.str();
}

std::string sha256_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

std::string utc_timestamp()
{
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

nlohmann::json manifest_to_json(const RunManifest& m)
{
    return {{"command", m.command},   {"params", m.params},
            {"seed", m.seed},         {"version", m.version},
            {"input_digests", m.input_digests}, {"timestamp", m.timestamp}};
}

RunManifest manifest_from_json(const nlohmann::json& j)
{
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.params = j.at("params").get<std::map<std::string, std::string>>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.version = j.at("version").get<std::string>();
        m.input_digests = j.at("input_digests").get<std::map<std::string, std::string>>();
        m.timestamp = j.at("timestamp").get<std::string>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("manifest document: ") + e.what());
    }
}

}  // namespace corrcolor::cli

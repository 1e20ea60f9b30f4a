#include "cli/manifest.hpp"

#include <array>
#include <cstdio>
#include <fstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "bagins/errors.hpp"

namespace bagins::cli {

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    char buf[3];
    for (unsigned int k = 0; k < len; ++k) {
        std::snprintf(buf, sizeof buf, "%02x", digest[k]);
        hex += buf;
    }
    return hex;
}

std::string RunManifest::config_digest() const { return sha256_hex(config_json); }

std::string RunManifest::to_json() const {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["tool_version"] = kToolVersion;
    doc["seed"] = seed;
    doc["config_digest"] = config_digest();
    doc["config_source"] = config_source;
    doc["config"] = nlohmann::ordered_json::parse(config_json);
    doc["inputs"] = inputs;
    doc["outputs"] = outputs;
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw InputError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw InputError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::filesystem::path sibling_path(const std::filesystem::path& out, const std::string& suffix) {
    auto p = out;
    p.replace_extension();
    p += suffix;
    return p;
}

}  // namespace bagins::cli

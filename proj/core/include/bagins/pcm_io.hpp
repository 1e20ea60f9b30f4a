#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "bagins/pcm.hpp"

namespace bagins {

enum class PcmFormat { json, csv };

std::optional<PcmFormat> pcm_format_from_string(std::string_view s) noexcept;

/// Parses one PCM document. JSON:
///   {"id": str, "n": int, "items": [str...], "judgments": [{"i","j","grade","direction"}...]}
/// CSV:
///   # id=<id> n=<n>
///   i,j,grade,direction
///   0,1,3,i_over_j
/// CSV carries no item names; they default to default_item_names(n).
/// Throws InputError naming the offending field or line. Pair coverage is not
/// checked here; use validate_pcm.
LinguisticPCM parse_pcm(std::string_view text, PcmFormat format);

/// Inverse of parse_pcm. JSON output is a single compact line without a trailing newline.
std::string serialize_pcm(const LinguisticPCM& pcm, PcmFormat format);

/// Reads a file; format inferred from the extension (.csv, otherwise JSON) unless given.
LinguisticPCM read_pcm_file(const std::filesystem::path& path, std::optional<PcmFormat> format = {});

std::string read_text_file(const std::filesystem::path& path);

}  // namespace bagins

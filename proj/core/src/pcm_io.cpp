#include "bagins/pcm_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json_detail.hpp"

namespace bagins {

namespace detail {

nlohmann::json parse_json(std::string_view text, const std::string& where) {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(where + "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

ojson pcm_to_json(const LinguisticPCM& pcm) {
    ojson doc;
    doc["id"] = pcm.id;
    doc["n"] = pcm.n;
    doc["items"] = pcm.items;
    ojson judgments = ojson::array();
    for (const auto& jd : pcm.judgments) {
        ojson e;
        e["i"] = jd.i();
        e["j"] = jd.j();
        e["grade"] = jd.grade().value();
        e["direction"] = to_string(jd.direction());
        judgments.push_back(std::move(e));
    }
    doc["judgments"] = std::move(judgments);
    return doc;
}

LinguisticPCM pcm_from_json(const nlohmann::json& doc, const std::string& where) {
    LinguisticPCM pcm;
    pcm.id = require_string(doc, "id", where);
    const auto n = require_int(doc, "n", where);
    if (n < 0) throw InputError(where + "field 'n' must be non-negative");
    pcm.n = static_cast<std::size_t>(n);

    const auto& items = require(doc, "items", where);
    if (!items.is_array()) throw InputError(where + "field 'items' must be an array");
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (!items[k].is_string()) {
            throw InputError(where + "items[" + std::to_string(k) + "] must be a string");
        }
        pcm.items.push_back(items[k].get<std::string>());
    }

    const auto& judgments = require(doc, "judgments", where);
    if (!judgments.is_array()) throw InputError(where + "field 'judgments' must be an array");
    pcm.judgments.reserve(judgments.size());
    for (std::size_t k = 0; k < judgments.size(); ++k) {
        const std::string loc = where + "judgments[" + std::to_string(k) + "]";
        const auto& e = judgments[k];
        const auto i = require_int(e, "i", loc + ": ");
        const auto j = require_int(e, "j", loc + ": ");
        const auto grade = require_int(e, "grade", loc + ": ");
        const auto dir_text = require_string(e, "direction", loc + ": ");
        if (i < 0 || i >= n) throw InputError(loc + ".i: index out of range");
        if (j < 0 || j >= n) throw InputError(loc + ".j: index out of range");
        if (grade < 1 || grade > kGradeCount) throw InputError(loc + ".grade: label grade out of range");
        const auto dir = direction_from_string(dir_text);
        if (!dir) throw InputError(loc + ".direction: unknown direction '" + dir_text + "'");
        try {
            pcm.judgments.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                       Grade(static_cast<int>(grade)), *dir);
        } catch (const InputError& err) {
            throw InputError(loc + ": " + err.what());
        }
    }
    return pcm;
}

}  // namespace detail

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::int64_t parse_int_field(const std::string& text, const std::string& loc) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw InputError(loc + ": expected an integer, got '" + text + "'");
    }
    return v;
}

LinguisticPCM parse_csv(std::string_view text) {
    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto pos = text.find('\n', start);
            lines.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
    }
    // Line numbers are 1-based for messages.
    std::size_t idx = 0;
    auto skip_blank = [&] {
        while (idx < lines.size() && trim(lines[idx]).empty()) ++idx;
    };

    skip_blank();
    if (idx >= lines.size()) throw InputError("line 1: missing '# id=<id> n=<n>' comment");
    const std::string meta = trim(lines[idx]);
    const std::string meta_loc = "line " + std::to_string(idx + 1);
    if (meta.rfind("#", 0) != 0) throw InputError(meta_loc + ": expected '# id=<id> n=<n>' comment");
    const auto id_pos = meta.find("id=");
    const auto n_pos = meta.rfind(" n=");
    if (id_pos == std::string::npos || n_pos == std::string::npos || n_pos < id_pos) {
        throw InputError(meta_loc + ": expected '# id=<id> n=<n>' comment");
    }
    LinguisticPCM pcm;
    pcm.id = meta.substr(id_pos + 3, n_pos - (id_pos + 3));
    const auto n = parse_int_field(trim(meta.substr(n_pos + 3)), meta_loc + " (n)");
    if (n < 0) throw InputError(meta_loc + ": n must be non-negative");
    pcm.n = static_cast<std::size_t>(n);
    pcm.items = default_item_names(pcm.n);
    ++idx;

    skip_blank();
    if (idx >= lines.size() || trim(lines[idx]) != "i,j,grade,direction") {
        throw InputError("line " + std::to_string(idx + 1) + ": expected header 'i,j,grade,direction'");
    }
    ++idx;

    for (; idx < lines.size(); ++idx) {
        const std::string line = trim(lines[idx]);
        if (line.empty()) continue;
        const std::string loc = "line " + std::to_string(idx + 1);
        const auto fields = split_commas(line);
        if (fields.size() != 4) {
            throw InputError(loc + ": expected 4 fields, got " + std::to_string(fields.size()));
        }
        const auto i = parse_int_field(fields[0], loc + " (i)");
        const auto j = parse_int_field(fields[1], loc + " (j)");
        const auto grade = parse_int_field(fields[2], loc + " (grade)");
        if (i < 0 || i >= n) throw InputError(loc + ": i index out of range");
        if (j < 0 || j >= n) throw InputError(loc + ": j index out of range");
        if (grade < 1 || grade > kGradeCount) throw InputError(loc + ": label grade out of range");
        const auto dir = direction_from_string(fields[3]);
        if (!dir) throw InputError(loc + ": unknown direction '" + fields[3] + "'");
        try {
            pcm.judgments.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                       Grade(static_cast<int>(grade)), *dir);
        } catch (const InputError& err) {
            throw InputError(loc + ": " + err.what());
        }
    }
    return pcm;
}

std::string serialize_csv(const LinguisticPCM& pcm) {
    std::ostringstream os;
    os << "# id=" << pcm.id << " n=" << pcm.n << "\n";
    os << "i,j,grade,direction\n";
    for (const auto& jd : pcm.judgments) {
        os << jd.i() << ',' << jd.j() << ',' << jd.grade().value() << ',' << to_string(jd.direction()) << '\n';
    }
    return os.str();
}

}  // namespace

std::optional<PcmFormat> pcm_format_from_string(std::string_view s) noexcept {
    if (s == "json") return PcmFormat::json;
    if (s == "csv") return PcmFormat::csv;
    return std::nullopt;
}

LinguisticPCM parse_pcm(std::string_view text, PcmFormat format) {
    if (format == PcmFormat::csv) return parse_csv(text);
    return detail::pcm_from_json(detail::parse_json(text, ""), "");
}

std::string serialize_pcm(const LinguisticPCM& pcm, PcmFormat format) {
    if (format == PcmFormat::csv) return serialize_csv(pcm);
    return detail::pcm_to_json(pcm).dump();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

LinguisticPCM read_pcm_file(const std::filesystem::path& path, std::optional<PcmFormat> format) {
    const auto fmt = format.value_or(path.extension() == ".csv" ? PcmFormat::csv : PcmFormat::json);
    try {
        return parse_pcm(read_text_file(path), fmt);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

}  // namespace bagins

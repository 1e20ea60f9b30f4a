#include "bagins/random_index.hpp"

#include <array>
#include <vector>

#include "bagins/errors.hpp"
#include "bagins/priority.hpp"
#include "bagins/rng.hpp"
#include "json_detail.hpp"
#include "parallel.hpp"

namespace bagins {

namespace {

// Fixed so the summation order is independent of the thread count.
constexpr std::size_t kChunks = 64;

constexpr std::array<double, 17> kSaatyValues = {
    1.0 / 9, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0,
    2.0,     3.0,     4.0,     5.0,     6.0,     7.0,     8.0,     9.0,
};

double chunk_ci_sum(std::size_t n, std::uint64_t count, std::uint64_t seed, std::size_t chunk) {
    // Stream id folds in n so different dimensions never share draws.
    Rng rng(seed, (static_cast<std::uint64_t>(n) << 32) | chunk, StreamPurpose::random_index);
    std::vector<double> a(n * n, 1.0);
    double sum = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = kSaatyValues[rng.below(kSaatyValues.size())];
                a[i * n + j] = v;
                a[j * n + i] = 1.0 / v;
            }
        }
        const auto eig = eigen_priority(NumericPCM(n, a));
        sum += consistency_index(eig.lambda_max, n);
    }
    return sum;
}

}  // namespace

RandomIndexTable::RandomIndexTable(std::map<std::size_t, double> ri, std::uint64_t samples, std::uint64_t seed)
    : ri_(std::move(ri)), samples_(samples), seed_(seed) {
    for (const auto& [n, value] : ri_) {
        if (n < 3) throw InputError("random index entries start at n=3, got n=" + std::to_string(n));
        if (!(value > 0)) throw InputError("random index for n=" + std::to_string(n) + " must be positive");
    }
}

RandomIndexTable RandomIndexTable::generate(std::size_t min_n, std::size_t max_n, std::uint64_t samples,
                                            std::uint64_t seed) {
    if (min_n < 3 || max_n < min_n) throw InputError("random index range must satisfy 3 <= min_n <= max_n");
    std::map<std::size_t, double> ri;
    for (std::size_t n = min_n; n <= max_n; ++n) ri[n] = derive_random_index(n, samples, seed);
    return RandomIndexTable(std::move(ri), samples, seed);
}

double RandomIndexTable::at(std::size_t n) const {
    const auto it = ri_.find(n);
    if (it == ri_.end()) throw InputError("missing RI entry for n=" + std::to_string(n));
    return it->second;
}

RandomIndexTable RandomIndexTable::from_json(std::string_view text) {
    const auto doc = detail::parse_json(text, "RI table: ");
    const std::string where = "RI table: ";
    const auto seed = detail::require_int(doc, "seed", where);
    const auto samples = detail::require_int(doc, "samples", where);
    const auto& entries = detail::require(doc, "ri", where);
    if (!entries.is_object()) throw InputError(where + "field 'ri' must be an object");
    std::map<std::size_t, double> ri;
    for (const auto& [key, value] : entries.items()) {
        std::size_t n = 0;
        try {
            std::size_t used = 0;
            n = std::stoul(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw InputError(where + "ri key '" + key + "' is not a dimension");
        }
        if (!value.is_number()) throw InputError(where + "ri['" + key + "'] must be a number");
        ri[n] = value.get<double>();
    }
    return RandomIndexTable(std::move(ri), static_cast<std::uint64_t>(samples), static_cast<std::uint64_t>(seed));
}

std::string RandomIndexTable::to_json() const {
    detail::ojson doc;
    doc["seed"] = seed_;
    doc["samples"] = samples_;
    detail::ojson entries = detail::ojson::object();
    for (const auto& [n, value] : ri_) entries[std::to_string(n)] = value;
    doc["ri"] = std::move(entries);
    return doc.dump(2);
}

double derive_random_index(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
    if (n < 3) throw InputError("random index requires n >= 3");
    if (samples < kMinRandomIndexSamples) {
        throw InputError("random index requires at least " + std::to_string(kMinRandomIndexSamples) + " samples");
    }
    std::array<double, kChunks> sums{};
    detail::parallel_for(kChunks, [&](std::size_t chunk) {
        // Spread the remainder over the leading chunks.
        const std::uint64_t count = samples / kChunks + (chunk < samples % kChunks ? 1 : 0);
        sums[chunk] = chunk_ci_sum(n, count, seed, chunk);
    });
    double total = 0;
    for (double s : sums) total += s;
    return total / static_cast<double>(samples);
}

}  // namespace bagins

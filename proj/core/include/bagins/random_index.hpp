#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace bagins {

/// Mean consistency index of random reciprocal matrices, by dimension.
class RandomIndexTable {
public:
    /// Every entry must be positive and keyed by n >= 3.
    RandomIndexTable(std::map<std::size_t, double> ri, std::uint64_t samples, std::uint64_t seed);

    /// Table shipped with the library: seed 42, 500000 samples, n = 3..15.
    static const RandomIndexTable& builtin();

    /// Runs derive_random_index for each n in [min_n, max_n].
    static RandomIndexTable generate(std::size_t min_n, std::size_t max_n, std::uint64_t samples,
                                     std::uint64_t seed);

    /// {"seed": int, "samples": int, "ri": {"3": real, ...}}
    static RandomIndexTable from_json(std::string_view text);
    std::string to_json() const;

    bool contains(std::size_t n) const { return ri_.contains(n); }
    /// Throws InputError "missing RI entry for n=..." when absent.
    double at(std::size_t n) const;

    const std::map<std::size_t, double>& entries() const noexcept { return ri_; }
    std::uint64_t samples() const noexcept { return samples_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::map<std::size_t, double> ri_;
    std::uint64_t samples_;
    std::uint64_t seed_;
};

inline constexpr std::uint64_t kMinRandomIndexSamples = 10000;

/// Mean CI over `samples` random reciprocal n x n matrices whose upper-triangle
/// entries are uniform over {1/9, ..., 1/2, 1, 2, ..., 9}. Samples are split
/// into a fixed number of chunks, each with its own substream, and the chunk
/// sums are added in chunk order; the result does not depend on the number of
/// worker threads. Requires n >= 3 and samples >= 10000.
double derive_random_index(std::size_t n, std::uint64_t samples, std::uint64_t seed);

}  // namespace bagins

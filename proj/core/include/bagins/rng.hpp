#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace bagins {

/// Purpose tags keep substreams drawn for different jobs apart even when
/// they share a seed and an index.
enum class StreamPurpose : std::uint64_t {
    random_index = 1,
    weights = 2,
    perturbation = 3,
    test = 99,
};

/// Deterministic substream generator. Engine is mt19937_64 (output fully
/// specified by the standard); seeding mixes (seed, stream, purpose) with
/// splitmix64. Variates are derived from raw engine bits rather than
/// std:: distributions, so draws do not depend on the standard library vendor.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream, StreamPurpose purpose = StreamPurpose::test);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1), 53-bit resolution.
    double uniform();
    /// Uniform integer in [0, bound). bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Exponential(1).
    double exponential();
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace bagins

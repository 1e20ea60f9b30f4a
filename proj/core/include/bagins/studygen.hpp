#pragma once

// Synthetic decision-makers: ground-truth weights, verbalized judgments under
// a "true" scale, and grade-level noise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bagins/pcm.hpp"
#include "bagins/priority.hpp"

namespace bagins {

enum class WeightModel { uniform_simplex, table1_fixed };

const char* to_string(WeightModel m) noexcept;
std::optional<WeightModel> weight_model_from_string(std::string_view s) noexcept;

struct StudyConfig {
    std::size_t n = 9;
    std::size_t matrices = 100;
    ScaleAssignment true_scale = ScaleAssignment::saaty();
    double perturb_prob = 0.0;
    WeightModel weight_model = WeightModel::uniform_simplex;
    std::uint64_t seed = 42;

    void validate() const;

    /// Field names as above; "true_scale" is an array of 9 reals.
    static StudyConfig from_json(std::string_view text);
    std::string to_json() const;
};

using PairIndex = std::pair<std::size_t, std::size_t>;

struct SyntheticInstance {
    PriorityVector true_weights;
    LinguisticPCM pcm;
    ScaleAssignment true_scale;
    std::vector<PairIndex> perturbed_pairs;
};

/// uniform_simplex: normalized Exp(1) draws (flat Dirichlet) from substream
/// (seed, stream_index). table1_fixed: w_i = i / (n(n+1)/2), i = 1..n, which
/// for n = 9 is the dots/grams weight vector 10/450, 20/450, ..., 90/450.
PriorityVector sample_weights(const StudyConfig& cfg, std::uint64_t stream_index);

/// For each pair i < j the ratio r = max/min is verbalized as the grade whose
/// scale value is nearest to r (grade 9 when r exceeds v9; ties to the lower
/// grade), pointing toward the heavier item.
LinguisticPCM discretize(const PriorityVector& w, const ScaleAssignment& true_scale, std::string id = {});

struct PerturbResult {
    LinguisticPCM pcm;
    std::vector<PairIndex> perturbed_pairs;
};

/// Each judgment independently, with probability perturb_prob, moves one
/// grade up or down with equal odds. Grade 9 can only move down. A grade-1
/// judgment moving down becomes grade 2 in the opposite direction.
PerturbResult perturb(const LinguisticPCM& pcm, double perturb_prob, std::uint64_t seed,
                      std::uint64_t stream_index);

/// Instance k depends only on (cfg, k).
SyntheticInstance generate_instance(const StudyConfig& cfg, std::uint64_t index);
std::vector<SyntheticInstance> generate_batch(const StudyConfig& cfg);

/// One JSON-lines record: the PCM document plus "true_weights",
/// "true_scale" and "perturbed_pairs".
std::string to_json_line(const SyntheticInstance& instance);

}  // namespace bagins

#include "bagins/studygen.hpp"

#include <cmath>
#include <cstdio>

#include "bagins/errors.hpp"
#include "bagins/rng.hpp"
#include "json_detail.hpp"

namespace bagins {

namespace {

// Relative tolerance under which two candidate grades are equally close to a ratio.
constexpr double kRatioTieTol = 1e-12;

std::string instance_id(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "syn-%06llu", static_cast<unsigned long long>(index));
    return buf;
}

}  // namespace

const char* to_string(WeightModel m) noexcept {
    return m == WeightModel::uniform_simplex ? "uniform_simplex" : "table1_fixed";
}

std::optional<WeightModel> weight_model_from_string(std::string_view s) noexcept {
    if (s == "uniform_simplex") return WeightModel::uniform_simplex;
    if (s == "table1_fixed") return WeightModel::table1_fixed;
    return std::nullopt;
}

void StudyConfig::validate() const {
    if (n < 2) throw InputError("study n must be at least 2");
    if (matrices < 1) throw InputError("study needs at least one matrix");
    if (!(perturb_prob >= 0.0 && perturb_prob <= 1.0)) throw InputError("perturb_prob must lie in [0, 1]");
}

StudyConfig StudyConfig::from_json(std::string_view text) {
    const std::string where = "study config: ";
    const auto doc = detail::parse_json(text, where);
    if (!doc.is_object()) throw InputError(where + "expected a JSON object");
    StudyConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "n") {
            const auto n = detail::require_int(doc, "n", where);
            if (n < 2) throw InputError(where + "n must be at least 2");
            cfg.n = static_cast<std::size_t>(n);
        } else if (key == "matrices") {
            const auto m = detail::require_int(doc, "matrices", where);
            if (m < 1) throw InputError(where + "matrices must be at least 1");
            cfg.matrices = static_cast<std::size_t>(m);
        } else if (key == "true_scale") {
            if (!value.is_array() || value.size() != kGradeCount) {
                throw InputError(where + "true_scale must be an array of 9 numbers");
            }
            std::array<double, kGradeCount> v{};
            for (std::size_t k = 0; k < kGradeCount; ++k) {
                if (!value[k].is_number()) throw InputError(where + "true_scale entries must be numbers");
                v[k] = value[k].get<double>();
            }
            // The simulated decision-maker is not bound by the search bounds.
            cfg.true_scale = ScaleAssignment(v, {1e-9, std::max(9.0, v.back())});
        } else if (key == "perturb_prob") {
            cfg.perturb_prob = detail::require_number(doc, "perturb_prob", where);
        } else if (key == "weight_model") {
            const auto m = value.is_string() ? weight_model_from_string(value.get<std::string>()) : std::nullopt;
            if (!m) throw InputError(where + "weight_model must be uniform_simplex or table1_fixed");
            cfg.weight_model = *m;
        } else if (key == "seed") {
            const auto s = detail::require_int(doc, "seed", where);
            if (s < 0) throw InputError(where + "seed must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else {
            throw InputError(where + "unknown field '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

std::string StudyConfig::to_json() const {
    detail::ojson doc;
    doc["n"] = n;
    doc["matrices"] = matrices;
    doc["true_scale"] = true_scale.values();
    doc["perturb_prob"] = perturb_prob;
    doc["weight_model"] = bagins::to_string(weight_model);
    doc["seed"] = seed;
    return doc.dump();
}

PriorityVector sample_weights(const StudyConfig& cfg, std::uint64_t stream_index) {
    std::vector<double> w(cfg.n);
    if (cfg.weight_model == WeightModel::table1_fixed) {
        for (std::size_t i = 0; i < cfg.n; ++i) w[i] = static_cast<double>(i + 1);
    } else {
        Rng rng(cfg.seed, stream_index, StreamPurpose::weights);
        for (double& x : w) {
            // Exp(1) is 0 with probability ~2^-53; redraw rather than emit a zero weight.
            do {
                x = rng.exponential();
            } while (!(x > 0));
        }
    }
    return PriorityVector::normalized(std::move(w));
}

LinguisticPCM discretize(const PriorityVector& w, const ScaleAssignment& true_scale, std::string id) {
    LinguisticPCM pcm;
    pcm.id = std::move(id);
    pcm.n = w.size();
    pcm.items = default_item_names(pcm.n);
    const auto& v = true_scale.values();
    for (std::size_t i = 0; i < pcm.n; ++i) {
        for (std::size_t j = i + 1; j < pcm.n; ++j) {
            const bool i_heavier = w[i] >= w[j];
            const double ratio = i_heavier ? w[i] / w[j] : w[j] / w[i];
            std::size_t best = 0;
            double best_dist = std::abs(v[0] - ratio);
            for (std::size_t g = 1; g < v.size(); ++g) {
                const double d = std::abs(v[g] - ratio);
                if (d < best_dist - kRatioTieTol * ratio) {
                    best = g;
                    best_dist = d;
                }
            }
            pcm.judgments.emplace_back(i, j, Grade(static_cast<int>(best + 1)),
                                       i_heavier ? Direction::i_over_j : Direction::j_over_i);
        }
    }
    return pcm;
}

PerturbResult perturb(const LinguisticPCM& pcm, double perturb_prob, std::uint64_t seed,
                      std::uint64_t stream_index) {
    if (!(perturb_prob >= 0.0 && perturb_prob <= 1.0)) throw InputError("perturb_prob must lie in [0, 1]");
    Rng rng(seed, stream_index, StreamPurpose::perturbation);
    PerturbResult out{pcm, {}};
    for (auto& jd : out.pcm.judgments) {
        // Both draws are always taken so the stream stays aligned across probabilities.
        const bool hit = rng.uniform() < perturb_prob;
        const bool up = rng.uniform() < 0.5;
        if (!hit) continue;
        const int g = jd.grade().value();
        if (g == kGradeCount) {
            jd = Judgment(jd.i(), jd.j(), Grade(g - 1), jd.direction());
        } else if (up) {
            jd = Judgment(jd.i(), jd.j(), Grade(g + 1), jd.direction());
        } else if (g == 1) {
            jd = Judgment(jd.i(), jd.j(), Grade(2), Direction::j_over_i);
        } else {
            jd = Judgment(jd.i(), jd.j(), Grade(g - 1), jd.direction());
        }
        out.perturbed_pairs.emplace_back(jd.i(), jd.j());
    }
    return out;
}

SyntheticInstance generate_instance(const StudyConfig& cfg, std::uint64_t index) {
    cfg.validate();
    auto weights = sample_weights(cfg, index);
    auto noisy = perturb(discretize(weights, cfg.true_scale, instance_id(index)), cfg.perturb_prob, cfg.seed, index);
    return {std::move(weights), std::move(noisy.pcm), cfg.true_scale, std::move(noisy.perturbed_pairs)};
}

std::vector<SyntheticInstance> generate_batch(const StudyConfig& cfg) {
    cfg.validate();
    std::vector<SyntheticInstance> batch;
    batch.reserve(cfg.matrices);
    for (std::size_t k = 0; k < cfg.matrices; ++k) batch.push_back(generate_instance(cfg, k));
    return batch;
}

std::string to_json_line(const SyntheticInstance& instance) {
    auto doc = detail::pcm_to_json(instance.pcm);
    doc["true_weights"] = std::vector<double>(instance.true_weights.weights().begin(),
                                              instance.true_weights.weights().end());
    doc["true_scale"] = instance.true_scale.values();
    detail::ojson pairs = detail::ojson::array();
    for (const auto& [i, j] : instance.perturbed_pairs) pairs.push_back({i, j});
    doc["perturbed_pairs"] = std::move(pairs);
    return doc.dump();
}

}  // namespace bagins

#include "bagins/individualize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "bagins/errors.hpp"
#include "json_detail.hpp"

namespace bagins {

namespace {

using Values = std::array<double, kGradeCount>;

// A move must beat the current objective by more than this to count.
constexpr double kMinImprovement = 1e-12;
constexpr double kOracleTieTol = 1e-10;

const Values kSaatyValues = {1, 2, 3, 4, 5, 6, 7, 8, 9};

double distance_from_saaty(const Values& v) {
    double d = 0;
    for (std::size_t k = 0; k < v.size(); ++k) d += std::abs(v[k] - kSaatyValues[k]);
    return d;
}

// Realizes and scores scales for one validated PCM without re-validating it
// on every call.
class ObjectiveEvaluator {
public:
    ObjectiveEvaluator(const LinguisticPCM& pcm, const IndividualizationConfig& cfg, const RandomIndexTable& ri)
        : pcm_(pcm), objective_(cfg.objective), entries_(pcm.n * pcm.n, 1.0) {
        if (const auto v = validate_pcm(pcm); !v.ok()) {
            throw InputError("invalid PCM '" + pcm.id + "': " + v.summary());
        }
        if (objective_ == Objective::cr && pcm.n >= 3) random_index_ = ri.at(pcm.n);
    }

    double operator()(const Values& v) {
        ++evaluations_;
        const std::size_t n = pcm_.n;
        if (n < 3) return 0.0;
        for (const auto& jd : pcm_.judgments) {
            const double value = v[static_cast<std::size_t>(jd.grade().value() - 1)];
            const double fwd = jd.direction() == Direction::i_over_j ? value : 1.0 / value;
            entries_[jd.i() * n + jd.j()] = fwd;
            entries_[jd.j() * n + jd.i()] = 1.0 / fwd;
        }
        const double lambda = eigen_priority(NumericPCM(n, entries_)).lambda_max;
        switch (objective_) {
            case Objective::lambda_max_gap:
                return std::max(0.0, lambda - static_cast<double>(n));
            case Objective::ci:
                return consistency_index(lambda, n);
            case Objective::cr: {
                const double ci = consistency_index(lambda, n);
                return ci > 0 ? ci / random_index_ : 0.0;
            }
        }
        return 0.0;
    }

    long evaluations() const noexcept { return evaluations_; }

private:
    const LinguisticPCM& pcm_;
    Objective objective_;
    double random_index_ = 1.0;
    std::vector<double> entries_;
    long evaluations_ = 0;
};

// Grades that appear in the PCM above 1, as 0-based indices. Grade 1 is
// fixed at 1 and acts as the lower anchor.
std::vector<std::size_t> used_grade_indices(const LinguisticPCM& pcm) {
    std::array<bool, kGradeCount> used{};
    for (const auto& jd : pcm.judgments) used[static_cast<std::size_t>(jd.grade().value() - 1)] = true;
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k < kGradeCount; ++k)
        if (used[k]) out.push_back(k);
    return out;
}

// Feasible interval for grade k given fixed values at grades a < k < b, with
// b == kGradeCount standing for the v_max ceiling above grade 9.
std::pair<double, double> interval(const Values& v, std::size_t a, std::size_t k, std::size_t b,
                                   const IndividualizationConfig& cfg) {
    const double lo = v[a] + static_cast<double>(k - a) * cfg.eps_gap;
    const double hi = b < kGradeCount ? v[b] - static_cast<double>(b - k) * cfg.eps_gap
                                      : cfg.v_max - static_cast<double>(kGradeCount - 1 - k) * cfg.eps_gap;
    return {lo, hi};
}

// Unused grades do not enter the objective. Each is placed as close to its
// Saaty value as the surrounding used grades allow.
void place_unused(Values& v, const std::vector<std::size_t>& used, const IndividualizationConfig& cfg) {
    std::size_t prev = 0;
    std::size_t u = 0;
    for (std::size_t k = 1; k < kGradeCount; ++k) {
        if (u < used.size() && used[u] == k) {
            prev = k;
            ++u;
            continue;
        }
        const std::size_t next = u < used.size() ? used[u] : kGradeCount;
        const auto [lo, hi] = interval(v, prev, k, next, cfg);
        v[k] = std::clamp(kSaatyValues[k], lo, hi);
    }
}

struct Move {
    double value;
    double x;  // new value of the lowest moved grade
};

// Tries v[first] + step and v[first] - step, clamped into [lo, hi], with every
// used grade from position `from` upward shifted by the same amount. Returns
// the better strictly improving candidate, ties going to the one leaving
// v[first] closer to its Saaty value.
std::optional<Move> best_shift(Values& v, double current, double step, const std::vector<std::size_t>& used,
                               std::size_t from, double lo, double hi, const IndividualizationConfig& cfg,
                               ObjectiveEvaluator& evaluate) {
    const std::size_t first = used[from];
    const double original = v[first];
    std::optional<Move> best;
    for (const double candidate : {original + step, original - step}) {
        const double x = std::clamp(candidate, lo, hi);
        if (x == original) continue;
        Values trial = v;
        for (std::size_t u = from; u < used.size(); ++u) trial[used[u]] += x - original;
        place_unused(trial, used, cfg);
        const double value = evaluate(trial);
        if (!(value < current - kMinImprovement)) continue;
        const bool tied_closer = best && std::abs(value - best->value) <= kMinImprovement &&
                                 std::abs(x - kSaatyValues[first]) < std::abs(best->x - kSaatyValues[first]);
        if (!best || value < best->value - kMinImprovement || tied_closer) best = Move{value, x};
    }
    return best;
}

void apply_shift(Values& v, const std::vector<std::size_t>& used, std::size_t from, double x,
                 const IndividualizationConfig& cfg) {
    const double delta = x - v[used[from]];
    for (std::size_t u = from; u < used.size(); ++u) v[used[u]] += delta;
    place_unused(v, used, cfg);
}

// One sweep at a fixed step: first each used grade alone, in increasing
// order, then each block of used grades from k to the top moved together.
// A single grade may move anywhere between its used neighbours, leaving room
// for the unused grades in between; a block keeps its internal gaps and must
// stay above its lower neighbour and below v_max. Returns true if anything moved.
bool sweep(Values& v, double& current, double step, const std::vector<std::size_t>& used,
           const IndividualizationConfig& cfg, ObjectiveEvaluator& evaluate) {
    bool moved = false;
    for (std::size_t u = 0; u < used.size(); ++u) {
        const std::size_t k = used[u];
        const std::size_t prev = u > 0 ? used[u - 1] : 0;
        const std::size_t next = u + 1 < used.size() ? used[u + 1] : kGradeCount;
        const auto [lo, hi] = interval(v, prev, k, next, cfg);
        if (hi < lo) continue;
        if (const auto m = best_shift(v, current, step, {k}, 0, lo, hi, cfg, evaluate)) {
            v[k] = m->x;
            place_unused(v, used, cfg);
            current = m->value;
            moved = true;
        }
    }
    // Blocks of two or more grades; a one-grade block is the single move above.
    for (std::size_t u = 0; u + 1 < used.size(); ++u) {
        const std::size_t k = used[u];
        const std::size_t top = used.back();
        const std::size_t prev = u > 0 ? used[u - 1] : 0;
        const double lo = v[prev] + static_cast<double>(k - prev) * cfg.eps_gap;
        const double headroom = cfg.v_max - static_cast<double>(kGradeCount - 1 - top) * cfg.eps_gap - v[top];
        const double hi = v[k] + headroom;
        if (hi < lo) continue;
        if (const auto m = best_shift(v, current, step, used, u, lo, hi, cfg, evaluate)) {
            apply_shift(v, used, u, m->x, cfg);
            current = m->value;
            moved = true;
        }
    }
    return moved;
}

struct Run {
    Values values;
    double objective;
    std::vector<TracePoint> trace;
};

// Rounds through the step schedule until one makes no move.
Run descend(Values v, const std::vector<std::size_t>& used, const IndividualizationConfig& cfg,
            ObjectiveEvaluator& evaluate, double baseline) {
    place_unused(v, used, cfg);
    double current = v == kSaatyValues ? baseline : evaluate(v);
    std::vector<TracePoint> trace;
    int pass = 0;
    for (int round = 0; round < cfg.max_passes; ++round) {
        bool round_moved = false;
        for (const double step : cfg.step_schedule) {
            for (int p = 0; p < cfg.max_passes; ++p) {
                const bool moved = sweep(v, current, step, used, cfg, evaluate);
                trace.push_back({++pass, current});
                if (!moved) break;
                round_moved = true;
            }
        }
        if (!round_moved) break;
    }
    return {v, current, std::move(trace)};
}

// Extra starting points v_k = k^alpha, pushed up where needed to keep eps_gap.
constexpr std::array<double, 3> kRestartExponents = {0.5, 0.25, 0.1};

Values compressed_start(double alpha, const IndividualizationConfig& cfg) {
    Values v{};
    v[0] = 1.0;
    for (std::size_t k = 1; k < kGradeCount; ++k)
        v[k] = std::max(std::pow(static_cast<double>(k + 1), alpha), v[k - 1] + cfg.eps_gap);
    return v;
}

}  // namespace

const char* to_string(Objective o) noexcept {
    switch (o) {
        case Objective::cr: return "cr";
        case Objective::ci: return "ci";
        case Objective::lambda_max_gap: return "lambda_max_gap";
    }
    return "cr";
}

std::optional<Objective> objective_from_string(std::string_view s) noexcept {
    if (s == "cr") return Objective::cr;
    if (s == "ci") return Objective::ci;
    if (s == "lambda_max_gap") return Objective::lambda_max_gap;
    return std::nullopt;
}

void IndividualizationConfig::validate() const {
    if (step_schedule.empty()) throw InputError("step_schedule must not be empty");
    for (std::size_t k = 0; k < step_schedule.size(); ++k) {
        if (!(step_schedule[k] > 0) || !std::isfinite(step_schedule[k])) {
            throw InputError("step_schedule entries must be positive");
        }
        if (k > 0 && !(step_schedule[k] < step_schedule[k - 1])) {
            throw InputError("step_schedule must be strictly decreasing");
        }
    }
    if (!(eps_gap > 0)) throw InputError("eps_gap must be positive");
    if (!(v_max >= 1 + 8 * eps_gap)) throw InputError("v_max must be at least 1 + 8 * eps_gap");
    if (eps_gap > 1 || v_max < 9) {
        throw InputError("eps_gap <= 1 and v_max >= 9 are required so the Saaty scale stays feasible");
    }
    if (max_passes < 1) throw InputError("max_passes must be at least 1");
}

IndividualizationConfig IndividualizationConfig::from_json(std::string_view text) {
    const std::string where = "individualization config: ";
    const auto doc = detail::parse_json(text, where);
    if (!doc.is_object()) throw InputError(where + "expected a JSON object");
    IndividualizationConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "objective") {
            const auto o = value.is_string() ? objective_from_string(value.get<std::string>()) : std::nullopt;
            if (!o) throw InputError(where + "objective must be one of cr, ci, lambda_max_gap");
            cfg.objective = *o;
        } else if (key == "step_schedule") {
            if (!value.is_array()) throw InputError(where + "step_schedule must be an array");
            cfg.step_schedule.clear();
            for (const auto& s : value) {
                if (!s.is_number()) throw InputError(where + "step_schedule entries must be numbers");
                cfg.step_schedule.push_back(s.get<double>());
            }
        } else if (key == "eps_gap") {
            cfg.eps_gap = detail::require_number(doc, "eps_gap", where);
        } else if (key == "v_max") {
            cfg.v_max = detail::require_number(doc, "v_max", where);
        } else if (key == "max_passes") {
            cfg.max_passes = static_cast<int>(detail::require_int(doc, "max_passes", where));
        } else if (key == "tie_break") {
            if (!value.is_string() || value.get<std::string>() != "prefer_default_scale") {
                throw InputError(where + "tie_break must be prefer_default_scale");
            }
        } else {
            throw InputError(where + "unknown field '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

std::string IndividualizationConfig::to_json() const {
    detail::ojson doc;
    doc["objective"] = bagins::to_string(objective);
    doc["step_schedule"] = step_schedule;
    doc["eps_gap"] = eps_gap;
    doc["v_max"] = v_max;
    doc["max_passes"] = max_passes;
    doc["tie_break"] = "prefer_default_scale";
    return doc.dump();
}

double objective(const LinguisticPCM& pcm, const ScaleAssignment& scale, const IndividualizationConfig& cfg,
                 const RandomIndexTable& ri) {
    ObjectiveEvaluator evaluate(pcm, cfg, ri);
    return evaluate(scale.values());
}

IndividualizationResult individualize_scale(const LinguisticPCM& pcm, const IndividualizationConfig& cfg,
                                            const RandomIndexTable& ri) {
    return individualize_scale(pcm, cfg, ri, ScaleAssignment::saaty());
}

IndividualizationResult individualize_scale(const LinguisticPCM& pcm, const IndividualizationConfig& cfg,
                                            const RandomIndexTable& ri, const ScaleAssignment& start) {
    cfg.validate();
    if (const auto problems = ScaleAssignment::check(start.values(), cfg.bounds()); !problems.empty()) {
        throw InputError("starting scale violates the configured bounds: " + problems.front());
    }
    ObjectiveEvaluator evaluate(pcm, cfg, ri);
    const auto used = used_grade_indices(pcm);
    const double baseline = evaluate(kSaatyValues);

    Run best = descend(start.values(), used, cfg, evaluate, baseline);
    for (const double alpha : kRestartExponents) {
        Run run = descend(compressed_start(alpha, cfg), used, cfg, evaluate, baseline);
        const bool better = run.objective < best.objective - kMinImprovement;
        const bool tied_closer = std::abs(run.objective - best.objective) <= kMinImprovement &&
                                 distance_from_saaty(run.values) < distance_from_saaty(best.values);
        if (better || tied_closer) best = std::move(run);
    }

    if (best.objective > baseline) {
        best.values = kSaatyValues;
        best.objective = baseline;
    }
    return {ScaleAssignment(best.values, cfg.bounds()), best.objective, baseline, baseline - best.objective,
            evaluate.evaluations(), std::move(best.trace)};
}

OracleResult oracle_grid_search(const LinguisticPCM& pcm, double grid_step, const IndividualizationConfig& cfg,
                                const RandomIndexTable& ri) {
    cfg.validate();
    if (!(grid_step >= 0.25)) throw InputError("grid_step must be at least 0.25");
    ObjectiveEvaluator evaluate(pcm, cfg, ri);

    std::set<int> used_set;
    for (const auto& jd : pcm.judgments) {
        if (!jd.grade().is_indifference()) used_set.insert(jd.grade().value());
    }
    const std::vector<int> used(used_set.begin(), used_set.end());
    if (used.size() > kMaxOracleGrades) {
        throw InputError("too many distinct grades for enumeration: " + std::to_string(used.size()) + " > " +
                         std::to_string(kMaxOracleGrades));
    }

    std::vector<double> lattice;
    for (int t = 1;; ++t) {
        const double x = 1.0 + t * grid_step;
        if (x > cfg.v_max + 1e-12) break;
        lattice.push_back(x);
    }

    // Anchors at grade 1 and every used grade; linear in between, then slope
    // min(1, headroom per remaining grade) above the last anchor.
    auto expand = [&](const std::vector<double>& anchor_values) {
        Values v{};
        v[0] = 1.0;
        int prev_grade = 1;
        double prev_value = 1.0;
        for (std::size_t a = 0; a < used.size(); ++a) {
            const int g = used[a];
            const double value = anchor_values[a];
            for (int k = prev_grade + 1; k <= g; ++k) {
                v[static_cast<std::size_t>(k - 1)] =
                    prev_value + (value - prev_value) * (k - prev_grade) / static_cast<double>(g - prev_grade);
            }
            v[static_cast<std::size_t>(g - 1)] = value;
            prev_grade = g;
            prev_value = value;
        }
        if (prev_grade < kGradeCount) {
            const double slope = std::min(1.0, (cfg.v_max - prev_value) / (kGradeCount - prev_grade));
            for (int k = prev_grade + 1; k <= kGradeCount; ++k) {
                v[static_cast<std::size_t>(k - 1)] = prev_value + slope * (k - prev_grade);
            }
        }
        return v;
    };

    std::optional<Values> best;
    double best_value = 0;
    double best_distance = 0;
    auto consider = [&](const Values& v) {
        if (!ScaleAssignment::check(v, cfg.bounds()).empty()) return;
        const double value = evaluate(v);
        const double distance = distance_from_saaty(v);
        if (!best || value < best_value - kOracleTieTol ||
            (std::abs(value - best_value) <= kOracleTieTol && distance < best_distance)) {
            best = v;
            best_value = value;
            best_distance = distance;
        }
    };

    if (used.empty()) {
        consider(kSaatyValues);
    } else {
        // Strictly increasing index tuples into the lattice.
        const std::size_t m = lattice.size();
        const std::size_t r = used.size();
        if (m >= r) {
            std::vector<std::size_t> idx(r);
            for (std::size_t a = 0; a < r; ++a) idx[a] = a;
            std::vector<double> anchors(r);
            while (true) {
                for (std::size_t a = 0; a < r; ++a) anchors[a] = lattice[idx[a]];
                consider(expand(anchors));
                std::size_t a = r;
                while (a > 0 && idx[a - 1] == m - r + (a - 1)) --a;
                if (a == 0) break;
                ++idx[a - 1];
                for (std::size_t b = a; b < r; ++b) idx[b] = idx[b - 1] + 1;
            }
        }
    }
    if (!best) throw InputError("no feasible scale on the oracle lattice");
    return {ScaleAssignment(*best, cfg.bounds()), best_value, evaluate.evaluations()};
}

std::string result_to_json(const IndividualizationResult& result, std::string_view id) {
    detail::ojson doc;
    doc["id"] = std::string(id);
    doc["scale"] = result.scale.values();
    doc["objective"] = result.objective_value;
    doc["baseline"] = result.baseline_objective;
    doc["improvement"] = result.improvement;
    doc["evaluations"] = result.evaluations;
    return doc.dump();
}

}  // namespace bagins

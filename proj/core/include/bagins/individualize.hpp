#pragma once

// Per-decision-maker scale individualization: search over monotone scale
// assignments for the one that makes the realized matrix most consistent.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bagins/pcm.hpp"
#include "bagins/priority.hpp"
#include "bagins/random_index.hpp"

namespace bagins {

enum class Objective { cr, ci, lambda_max_gap };
enum class TieBreak { prefer_default_scale };

const char* to_string(Objective o) noexcept;
std::optional<Objective> objective_from_string(std::string_view s) noexcept;

struct IndividualizationConfig {
    Objective objective = Objective::cr;
    /// Coarse to fine; strictly decreasing and positive.
    std::vector<double> step_schedule{1.0, 0.5, 0.25, 0.1, 0.05, 0.01};
    double eps_gap = 0.01;
    double v_max = 9.0;
    /// Caps the sweeps spent at one step size, and the number of rounds
    /// through the whole schedule.
    int max_passes = 50;
    TieBreak tie_break = TieBreak::prefer_default_scale;

    ScaleBounds bounds() const noexcept { return {eps_gap, v_max}; }

    /// Throws InputError. Besides the schedule and gap rules, requires the
    /// fixed Saaty scale to be feasible (eps_gap <= 1, v_max >= 9) so the
    /// baseline is always a candidate.
    void validate() const;

    /// Missing fields keep their defaults; unknown fields are rejected.
    static IndividualizationConfig from_json(std::string_view text);
    std::string to_json() const;
};

struct TracePoint {
    int pass;
    double objective;
};

struct IndividualizationResult {
    ScaleAssignment scale;
    double objective_value;
    double baseline_objective;  // same objective under v_k = k
    double improvement;         // baseline_objective - objective_value, never negative
    long evaluations;
    std::vector<TracePoint> trace;  // objective after every sweep
};

/// Inconsistency of realize(pcm, scale) under the configured measure.
/// For n = 2 every measure is 0.
double objective(const LinguisticPCM& pcm, const ScaleAssignment& scale, const IndividualizationConfig& cfg,
                 const RandomIndexTable& ri);

/// Coordinate descent over the grades the PCM uses, starting from the Saaty scale.
///
/// For each step size in the schedule the used grades are swept in increasing
/// order. Each tries v_k + step and v_k - step, clamped so that the grades up to
/// the neighbouring used grades (grade 1 below, v_max above grade 9) still fit
/// with eps_gap between consecutive values, and takes the better of the two if
/// it strictly improves the current objective. Unused grades do not affect the
/// objective; after every move each is set to the feasible value closest to
/// its Saaty value. When every grade is used this is plain coordinate descent
/// with candidates clamped into [v_{k-1} + eps_gap, v_{k+1} - eps_gap].
/// Each sweep then tries shifting every used grade from position u upward by
/// the same step as a block. Sweeps repeat until one makes no move, then the
/// next step size starts. The schedule is rerun from the top until a complete
/// round makes no move.
///
/// The descent runs from the Saaty scale and again from the compressed scales
/// v_k = k^a for a in {0.5, 0.25, 0.1}. The lowest objective wins; ties within
/// 1e-12 go to the scale closer to Saaty. Fully deterministic.
IndividualizationResult individualize_scale(const LinguisticPCM& pcm, const IndividualizationConfig& cfg,
                                            const RandomIndexTable& ri);

/// Same search with `start` in place of the Saaty scale as the first starting
/// point. The result still
/// never exceeds the Saaty baseline: if the search ends worse, the Saaty
/// scale is returned.
IndividualizationResult individualize_scale(const LinguisticPCM& pcm, const IndividualizationConfig& cfg,
                                            const RandomIndexTable& ri, const ScaleAssignment& start);

struct OracleResult {
    ScaleAssignment scale;
    double objective_value;
    long evaluations;
};

inline constexpr std::size_t kMaxOracleGrades = 4;

/// Exhaustive search over the lattice {1 + grid_step, 1 + 2 grid_step, ..., <= v_max}
/// for the grades the PCM actually uses above 1 (at most four). Unused grades
/// are interpolated linearly between used ones, and continue above the
/// highest used grade with slope min(1, remaining headroom). Ties within 1e-10
/// go to the assignment closest to the Saaty scale (sum of |v_k - k|).
OracleResult oracle_grid_search(const LinguisticPCM& pcm, double grid_step, const IndividualizationConfig& cfg,
                                const RandomIndexTable& ri);

/// {"id": str, "scale": [9 reals], "objective": real, "baseline": real,
///  "improvement": real, "evaluations": int}
std::string result_to_json(const IndividualizationResult& result, std::string_view id);

}  // namespace bagins

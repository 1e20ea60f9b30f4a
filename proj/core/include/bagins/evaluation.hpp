#pragma once

// Comparison of derived priorities against ground truth, per participant and
// in aggregate, for the fixed Saaty scale and the individualized scale.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bagins/individualize.hpp"
#include "bagins/pcm.hpp"
#include "bagins/priority.hpp"
#include "bagins/random_index.hpp"

namespace bagins {

enum class Experiment { visual, mass, synthetic };

const char* to_string(Experiment e) noexcept;
std::optional<Experiment> experiment_from_string(std::string_view s) noexcept;

/// Natural quantities behind an experiment (dot counts, grams) and the
/// weights they imply.
struct GroundTruth {
    Experiment experiment;
    std::vector<double> natural_values;
    PriorityVector weights;

    /// weights = natural_values / sum.
    static GroundTruth from_natural(Experiment experiment, std::vector<double> natural_values);
};

/// Sidecar document {"experiment": str, "natural_values": [real...]}.
GroundTruth parse_truth_sidecar(std::string_view text);
GroundTruth read_truth_sidecar(const std::filesystem::path& path);

struct DatasetEntry {
    LinguisticPCM pcm;
    std::optional<GroundTruth> truth;
    std::string source;  // file[:line]
};

enum class DatasetFormat { jsonl, csv_dir };

/// jsonl: one PCM document per line. Lines carrying "true_weights" (as
/// written by the study generator) get synthetic truth; other lines take the
/// sidecar. csv_dir: every *.csv file in the directory in name order; the
/// sidecar defaults to truth.json in the directory when present.
/// Every PCM is validated. Throws InputError with file/line locations, and
/// on dimension mismatch between a PCM and its truth.
std::vector<DatasetEntry> load_dataset(const std::filesystem::path& path, DatasetFormat format,
                                       const std::optional<std::filesystem::path>& truth_sidecar = {});

struct DistanceMetrics {
    double euclidean;
    double mae;
    double kendall_tau;
};

/// Kendall tau-b. Values within 1e-9 relative of each other count as tied.
/// Returns 0 when either side is entirely tied.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

DistanceMetrics distance_metrics(const PriorityVector& derived, const PriorityVector& truth);

enum class EvalMethod { fixed_saaty, bagins };

const char* to_string(EvalMethod m) noexcept;

struct EvaluationRecord {
    std::string participant;
    EvalMethod method;
    double euclidean;
    double mae;
    double kendall_tau;
    double cr_before;  // configured objective under the Saaty scale
    double cr_after;   // objective under the scale this method used
};

struct ParticipantEvaluation {
    EvaluationRecord fixed;
    EvaluationRecord individualized;
    IndividualizationResult search;
};

ParticipantEvaluation evaluate_participant(const LinguisticPCM& pcm, const GroundTruth& truth,
                                           const IndividualizationConfig& cfg, const RandomIndexTable& ri,
                                           PriorityMethod method = PriorityMethod::eigenvector);

/// Evaluates every entry (in parallel) and returns records in dataset order,
/// fixed_saaty before bagins for each participant. Entries without truth are rejected.
std::vector<EvaluationRecord> evaluate_dataset(const std::vector<DatasetEntry>& entries,
                                               const IndividualizationConfig& cfg, const RandomIndexTable& ri,
                                               PriorityMethod method = PriorityMethod::eigenvector);

struct MetricSummary {
    double mean;
    double median;
    double stdev;  // population
};

struct MethodSummary {
    EvalMethod method;
    std::size_t count;
    MetricSummary euclidean;
    MetricSummary mae;
    MetricSummary kendall_tau;
    MetricSummary cr_before;
    MetricSummary cr_after;
};

struct PairedSummary {
    std::size_t pairs;
    double mean_delta_euclidean;  // bagins - fixed
    double mean_delta_mae;
    double mean_delta_kendall_tau;
    double fraction_improved;     // bagins euclidean strictly below fixed
    double mean_cr_reduction;     // cr_before - cr_after of the bagins records
};

struct Summary {
    std::vector<MethodSummary> methods;  // fixed_saaty first, methods without records omitted
    PairedSummary paired;
};

/// Records are sorted by (participant, method) before folding, so the result
/// does not depend on input order. Throws InputError on empty input.
Summary aggregate(std::vector<EvaluationRecord> records);

/// Header participant,method,euclidean,mae,kendall_tau,cr_before,cr_after;
/// numbers in shortest round-trip form.
std::string records_to_csv(const std::vector<EvaluationRecord>& records);
std::string summary_to_json(const Summary& summary);

}  // namespace bagins

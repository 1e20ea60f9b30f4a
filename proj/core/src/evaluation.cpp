#include "bagins/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "bagins/errors.hpp"
#include "bagins/pcm_io.hpp"
#include "json_detail.hpp"
#include "parallel.hpp"

namespace bagins {

namespace {

constexpr double kTieRelTol = 1e-9;

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void check_dimensions(const DatasetEntry& e) {
    if (e.truth && e.truth->weights.size() != e.pcm.n) {
        throw InputError(e.source + ": dimension mismatch: PCM has n=" + std::to_string(e.pcm.n) +
                         " but ground truth has " + std::to_string(e.truth->weights.size()) + " values");
    }
}

void check_valid(const LinguisticPCM& pcm, const std::string& where) {
    if (const auto v = validate_pcm(pcm); !v.ok()) throw InputError(where + ": invalid PCM: " + v.summary());
}

int compare_with_ties(double a, double b) {
    if (std::abs(a - b) <= kTieRelTol * std::max(std::abs(a), std::abs(b))) return 0;
    return a < b ? -1 : 1;
}

MetricSummary summarize(std::vector<double> values) {
    const auto n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double sq = 0;
    for (double v : values) sq += (v - mean) * (v - mean);
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    const double median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    return {mean, median, std::sqrt(sq / n)};
}

detail::ojson metric_json(const MetricSummary& m) {
    detail::ojson j;
    j["mean"] = m.mean;
    j["median"] = m.median;
    j["stdev"] = m.stdev;
    return j;
}

}  // namespace

const char* to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::visual: return "visual";
        case Experiment::mass: return "mass";
        case Experiment::synthetic: return "synthetic";
    }
    return "synthetic";
}

std::optional<Experiment> experiment_from_string(std::string_view s) noexcept {
    if (s == "visual") return Experiment::visual;
    if (s == "mass") return Experiment::mass;
    if (s == "synthetic") return Experiment::synthetic;
    return std::nullopt;
}

const char* to_string(EvalMethod m) noexcept { return m == EvalMethod::fixed_saaty ? "fixed_saaty" : "bagins"; }

GroundTruth GroundTruth::from_natural(Experiment experiment, std::vector<double> natural_values) {
    auto weights = PriorityVector::normalized(natural_values);
    return {experiment, std::move(natural_values), std::move(weights)};
}

GroundTruth parse_truth_sidecar(std::string_view text) {
    const std::string where = "ground truth: ";
    const auto doc = detail::parse_json(text, where);
    const auto experiment_text = detail::require_string(doc, "experiment", where);
    const auto experiment = experiment_from_string(experiment_text);
    if (!experiment) throw InputError(where + "unknown experiment '" + experiment_text + "'");
    const auto& values = detail::require(doc, "natural_values", where);
    if (!values.is_array() || values.empty()) throw InputError(where + "natural_values must be a non-empty array");
    std::vector<double> natural;
    for (const auto& v : values) {
        if (!v.is_number() || !(v.get<double>() > 0)) {
            throw InputError(where + "natural_values must be positive numbers");
        }
        natural.push_back(v.get<double>());
    }
    return GroundTruth::from_natural(*experiment, std::move(natural));
}

GroundTruth read_truth_sidecar(const std::filesystem::path& path) {
    try {
        return parse_truth_sidecar(read_text_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& path, DatasetFormat format,
                                       const std::optional<std::filesystem::path>& truth_sidecar) {
    namespace fs = std::filesystem;
    std::optional<GroundTruth> sidecar;
    if (truth_sidecar) sidecar = read_truth_sidecar(*truth_sidecar);

    std::vector<DatasetEntry> entries;
    if (format == DatasetFormat::jsonl) {
        const std::string text = read_text_file(path);
        std::istringstream in(text);
        std::string line;
        for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const std::string where = path.string() + ":" + std::to_string(line_no);
            const auto doc = detail::parse_json(line, where + ": ");
            DatasetEntry entry{detail::pcm_from_json(doc, where + ": "), sidecar, where};
            if (const auto it = doc.find("true_weights"); it != doc.end()) {
                if (!it->is_array()) throw InputError(where + ": true_weights must be an array");
                std::vector<double> w;
                for (const auto& x : *it) {
                    if (!x.is_number() || !(x.get<double>() > 0)) {
                        throw InputError(where + ": true_weights must be positive numbers");
                    }
                    w.push_back(x.get<double>());
                }
                entry.truth = GroundTruth::from_natural(Experiment::synthetic, std::move(w));
            }
            check_valid(entry.pcm, where);
            check_dimensions(entry);
            entries.push_back(std::move(entry));
        }
        return entries;
    }

    if (!fs::is_directory(path)) throw InputError(path.string() + ": not a directory");
    if (!sidecar && fs::exists(path / "truth.json")) sidecar = read_truth_sidecar(path / "truth.json");
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(path)) {
        if (de.is_regular_file() && de.path().extension() == ".csv") files.push_back(de.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        DatasetEntry entry{read_pcm_file(file, PcmFormat::csv), sidecar, file.string()};
        check_valid(entry.pcm, entry.source);
        check_dimensions(entry);
        entries.push_back(std::move(entry));
    }
    return entries;
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("kendall tau needs equal-length inputs");
    const std::size_t n = x.size();
    long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int dx = compare_with_ties(x[i], x[j]);
            const int dy = compare_with_ties(y[i], y[j]);
            if (dx == 0) ++ties_x;
            if (dy == 0) ++ties_y;
            if (dx == 0 || dy == 0) continue;
            if (dx == dy) ++concordant;
            else ++discordant;
        }
    }
    const long pairs = static_cast<long>(n * (n - 1) / 2);
    const double denom = std::sqrt(static_cast<double>(pairs - ties_x) * static_cast<double>(pairs - ties_y));
    if (denom == 0) return 0.0;
    return static_cast<double>(concordant - discordant) / denom;
}

DistanceMetrics distance_metrics(const PriorityVector& derived, const PriorityVector& truth) {
    if (derived.size() != truth.size()) {
        throw InputError("dimension mismatch: " + std::to_string(derived.size()) + " vs " +
                         std::to_string(truth.size()));
    }
    double sq = 0, abs_sum = 0;
    for (std::size_t i = 0; i < derived.size(); ++i) {
        const double d = derived[i] - truth[i];
        sq += d * d;
        abs_sum += std::abs(d);
    }
    return {std::sqrt(sq), abs_sum / static_cast<double>(derived.size()),
            kendall_tau_b(derived.weights(), truth.weights())};
}

ParticipantEvaluation evaluate_participant(const LinguisticPCM& pcm, const GroundTruth& truth,
                                           const IndividualizationConfig& cfg, const RandomIndexTable& ri,
                                           PriorityMethod method) {
    if (truth.weights.size() != pcm.n) {
        throw InputError("participant '" + pcm.id + "': dimension mismatch with ground truth");
    }
    auto search = individualize_scale(pcm, cfg, ri);

    const auto fixed_w = derive_priority(realize(pcm, ScaleAssignment::saaty()), method);
    const auto fixed_m = distance_metrics(fixed_w, truth.weights);
    const auto ind_w = derive_priority(realize(pcm, search.scale), method);
    const auto ind_m = distance_metrics(ind_w, truth.weights);

    EvaluationRecord fixed{pcm.id, EvalMethod::fixed_saaty, fixed_m.euclidean, fixed_m.mae, fixed_m.kendall_tau,
                           search.baseline_objective, search.baseline_objective};
    EvaluationRecord individualized{pcm.id, EvalMethod::bagins, ind_m.euclidean, ind_m.mae, ind_m.kendall_tau,
                                    search.baseline_objective, search.objective_value};
    return {std::move(fixed), std::move(individualized), std::move(search)};
}

std::vector<EvaluationRecord> evaluate_dataset(const std::vector<DatasetEntry>& entries,
                                               const IndividualizationConfig& cfg, const RandomIndexTable& ri,
                                               PriorityMethod method) {
    for (const auto& e : entries) {
        if (!e.truth) throw InputError(e.source + ": no ground truth for participant '" + e.pcm.id + "'");
    }
    std::vector<std::optional<ParticipantEvaluation>> results(entries.size());
    detail::parallel_for(entries.size(), [&](std::size_t k) {
        results[k] = evaluate_participant(entries[k].pcm, *entries[k].truth, cfg, ri, method);
    });
    std::vector<EvaluationRecord> records;
    records.reserve(2 * entries.size());
    for (auto& r : results) {
        records.push_back(std::move(r->fixed));
        records.push_back(std::move(r->individualized));
    }
    return records;
}

Summary aggregate(std::vector<EvaluationRecord> records) {
    if (records.empty()) throw InputError("cannot aggregate an empty record list");
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.participant != b.participant) return a.participant < b.participant;
        if (a.method != b.method) return a.method < b.method;
        // Full key so duplicates of a participant still sort canonically.
        return std::tie(a.euclidean, a.mae, a.kendall_tau, a.cr_before, a.cr_after) <
               std::tie(b.euclidean, b.mae, b.kendall_tau, b.cr_before, b.cr_after);
    });

    Summary summary;
    for (const auto method : {EvalMethod::fixed_saaty, EvalMethod::bagins}) {
        std::vector<double> eu, mae, tau, before, after;
        for (const auto& r : records) {
            if (r.method != method) continue;
            eu.push_back(r.euclidean);
            mae.push_back(r.mae);
            tau.push_back(r.kendall_tau);
            before.push_back(r.cr_before);
            after.push_back(r.cr_after);
        }
        if (eu.empty()) continue;
        summary.methods.push_back({method, eu.size(), summarize(eu), summarize(mae), summarize(tau),
                                   summarize(before), summarize(after)});
    }

    PairedSummary paired{};
    double d_eu = 0, d_mae = 0, d_tau = 0, cr_red = 0;
    std::size_t improved = 0;
    for (std::size_t k = 0; k + 1 < records.size(); ++k) {
        const auto& a = records[k];
        const auto& b = records[k + 1];
        if (a.participant != b.participant || a.method != EvalMethod::fixed_saaty || b.method != EvalMethod::bagins) {
            continue;
        }
        ++paired.pairs;
        d_eu += b.euclidean - a.euclidean;
        d_mae += b.mae - a.mae;
        d_tau += b.kendall_tau - a.kendall_tau;
        cr_red += b.cr_before - b.cr_after;
        if (b.euclidean < a.euclidean) ++improved;
        ++k;
    }
    if (paired.pairs > 0) {
        const auto p = static_cast<double>(paired.pairs);
        paired.mean_delta_euclidean = d_eu / p;
        paired.mean_delta_mae = d_mae / p;
        paired.mean_delta_kendall_tau = d_tau / p;
        paired.fraction_improved = static_cast<double>(improved) / p;
        paired.mean_cr_reduction = cr_red / p;
    }
    summary.paired = paired;
    return summary;
}

std::string records_to_csv(const std::vector<EvaluationRecord>& records) {
    std::string out = "participant,method,euclidean,mae,kendall_tau,cr_before,cr_after\n";
    for (const auto& r : records) {
        out += csv_field(r.participant) + ',' + to_string(r.method) + ',' + format_double(r.euclidean) + ',' +
               format_double(r.mae) + ',' + format_double(r.kendall_tau) + ',' + format_double(r.cr_before) + ',' +
               format_double(r.cr_after) + '\n';
    }
    return out;
}

std::string summary_to_json(const Summary& summary) {
    detail::ojson doc;
    detail::ojson methods = detail::ojson::array();
    for (const auto& m : summary.methods) {
        detail::ojson j;
        j["method"] = to_string(m.method);
        j["count"] = m.count;
        j["euclidean"] = metric_json(m.euclidean);
        j["mae"] = metric_json(m.mae);
        j["kendall_tau"] = metric_json(m.kendall_tau);
        j["cr_before"] = metric_json(m.cr_before);
        j["cr_after"] = metric_json(m.cr_after);
        methods.push_back(std::move(j));
    }
    doc["methods"] = std::move(methods);
    detail::ojson paired;
    paired["pairs"] = summary.paired.pairs;
    paired["mean_delta_euclidean"] = summary.paired.mean_delta_euclidean;
    paired["mean_delta_mae"] = summary.paired.mean_delta_mae;
    paired["mean_delta_kendall_tau"] = summary.paired.mean_delta_kendall_tau;
    paired["fraction_improved"] = summary.paired.fraction_improved;
    paired["mean_cr_reduction"] = summary.paired.mean_cr_reduction;
    doc["paired"] = std::move(paired);
    return doc.dump(2);
}

}  // namespace bagins

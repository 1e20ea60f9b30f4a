#include "cli/commands.hpp"

#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bagins/errors.hpp"
#include "bagins/evaluation.hpp"
#include "bagins/individualize.hpp"
#include "bagins/pcm_io.hpp"
#include "bagins/priority.hpp"
#include "bagins/random_index.hpp"
#include "bagins/studygen.hpp"
#include "cli/manifest.hpp"

namespace bagins::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

struct DeriveOptions {
    std::string pcm;
    std::optional<std::string> scale;
    std::string method = "eigenvector";
    std::optional<std::string> ri;
};

struct IndividualizeOptions {
    std::string pcm;
    std::optional<std::string> ri;
    std::optional<std::string> objective;
};

struct SimulateOptions {
    std::optional<std::size_t> matrices;
    std::optional<double> perturb;
    std::optional<std::size_t> n;
};

struct EvaluateOptions {
    std::string dataset;
    std::optional<std::string> truth;
    std::optional<std::string> ri;
    std::string method = "eigenvector";
};

struct RiTableOptions {
    std::uint64_t samples = 500000;
    std::size_t min_n = 3;
    std::size_t max_n = 15;
};

class Session {
public:
    Session(const GlobalOptions& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

    int derive(const DeriveOptions& o);
    int individualize(const IndividualizeOptions& o);
    int simulate(const SimulateOptions& o);
    int evaluate(const EvaluateOptions& o);
    int ri_table(const RiTableOptions& o);

private:
    std::optional<PcmFormat> input_format() const {
        if (!g_.format) return std::nullopt;
        const auto f = pcm_format_from_string(*g_.format);
        if (!f) throw InputError("--format must be json or csv");
        return f;
    }

    const RandomIndexTable& random_index(const std::optional<std::string>& path, RunManifest& m) {
        if (!path) return RandomIndexTable::builtin();
        loaded_ri_ = RandomIndexTable::from_json(read_text_file(*path));
        m.inputs.push_back(*path);
        return *loaded_ri_;
    }

    IndividualizationConfig individualization_config(RunManifest& m) const {
        if (!g_.config) {
            m.config_source = "defaults";
            return {};
        }
        m.config_source = "file";
        m.inputs.push_back(*g_.config);
        try {
            return IndividualizationConfig::from_json(read_text_file(*g_.config));
        } catch (const InputError& e) {
            throw InputError(*g_.config + ": " + e.what());
        }
    }

    // Result to --out (plus manifest beside it), or to stdout with the manifest on stderr.
    void emit(const std::string& result, RunManifest& m) {
        if (g_.out) {
            const fs::path out = *g_.out;
            const auto manifest_path = sibling_path(out, ".manifest.json");
            m.outputs.push_back(out.string());
            m.outputs.push_back(manifest_path.string());
            write_file_atomic(out, result);
            write_file_atomic(manifest_path, m.to_json());
        } else {
            out_ << result;
            err_ << m.to_json();
        }
    }

    const GlobalOptions& g_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<RandomIndexTable> loaded_ri_;
};

ScaleAssignment read_scale(const std::string& path, ScaleBounds bounds) {
    const auto doc = nlohmann::json::parse(read_text_file(path), nullptr, false);
    if (doc.is_discarded()) throw InputError(path + ": malformed JSON");
    const auto& arr = doc.is_object() && doc.contains("scale") ? doc["scale"] : doc;
    if (!arr.is_array() || arr.size() != kGradeCount) {
        throw InputError(path + ": expected an array of 9 scale values or an object with \"scale\"");
    }
    std::array<double, kGradeCount> v{};
    for (std::size_t k = 0; k < kGradeCount; ++k) {
        if (!arr[k].is_number()) throw InputError(path + ": scale values must be numbers");
        v[k] = arr[k].get<double>();
    }
    try {
        return ScaleAssignment(v, bounds);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

int Session::derive(const DeriveOptions& o) {
    RunManifest m{"derive", {}, {}, g_.seed.value_or(0), {o.pcm}, {}};
    const auto method = priority_method_from_string(o.method);
    if (!method) throw InputError("--method must be eigenvector or geometric_mean");
    const auto cfg = individualization_config(m);
    const auto& ri = random_index(o.ri, m);

    const auto pcm = read_pcm_file(o.pcm, input_format());
    if (const auto v = validate_pcm(pcm); !v.ok()) throw InputError(o.pcm + ": " + v.summary());
    auto scale = ScaleAssignment::saaty();
    if (o.scale) {
        scale = read_scale(*o.scale, cfg.bounds());
        m.inputs.push_back(*o.scale);
    }

    const auto matrix = realize(pcm, scale);
    const auto weights = derive_priority(matrix, *method);
    const auto report = consistency(matrix, ri, *method);

    ojson resolved;
    resolved["method"] = o.method;
    resolved["scale"] = scale.values();
    resolved["ri_samples"] = ri.samples();
    resolved["ri_seed"] = ri.seed();
    m.config_json = resolved.dump();

    ojson doc;
    doc["id"] = pcm.id;
    doc["method"] = to_string(*method);
    doc["weights"] = std::vector<double>(weights.weights().begin(), weights.weights().end());
    doc["lambda_max"] = report.lambda_max;
    doc["ci"] = report.ci;
    doc["cr"] = report.cr;
    doc["iterations"] = report.iterations;
    emit(doc.dump(2) + "\n", m);
    return kSuccess;
}

int Session::individualize(const IndividualizeOptions& o) {
    RunManifest m{"individualize", {}, {}, g_.seed.value_or(0), {o.pcm}, {}};
    auto cfg = individualization_config(m);
    if (o.objective) {
        const auto obj = objective_from_string(*o.objective);
        if (!obj) throw InputError("--objective must be cr, ci or lambda_max_gap");
        cfg.objective = *obj;
    }
    const auto& ri = random_index(o.ri, m);
    const auto pcm = read_pcm_file(o.pcm, input_format());
    if (const auto v = validate_pcm(pcm); !v.ok()) throw InputError(o.pcm + ": " + v.summary());

    const auto result = individualize_scale(pcm, cfg, ri);
    m.config_json = cfg.to_json();
    emit(result_to_json(result, pcm.id) + "\n", m);
    return kSuccess;
}

int Session::simulate(const SimulateOptions& o) {
    RunManifest m{"simulate", {}, {}, 0, {}, {}};
    StudyConfig cfg;
    if (g_.config) {
        m.config_source = "file";
        m.inputs.push_back(*g_.config);
        try {
            cfg = StudyConfig::from_json(read_text_file(*g_.config));
        } catch (const InputError& e) {
            throw InputError(*g_.config + ": " + e.what());
        }
    } else {
        m.config_source = "defaults";
    }
    if (g_.seed) cfg.seed = *g_.seed;
    if (o.matrices) cfg.matrices = *o.matrices;
    if (o.perturb) cfg.perturb_prob = *o.perturb;
    if (o.n) cfg.n = *o.n;
    cfg.validate();
    m.seed = cfg.seed;
    m.config_json = cfg.to_json();

    std::string lines;
    for (const auto& instance : generate_batch(cfg)) lines += to_json_line(instance) + "\n";
    emit(lines, m);
    return kSuccess;
}

int Session::evaluate(const EvaluateOptions& o) {
    if (!g_.out) throw InputError("evaluate requires --out <report.csv>");
    RunManifest m{"evaluate", {}, {}, g_.seed.value_or(0), {o.dataset}, {}};
    const auto method = priority_method_from_string(o.method);
    if (!method) throw InputError("--method must be eigenvector or geometric_mean");
    const auto cfg = individualization_config(m);
    const auto& ri = random_index(o.ri, m);

    const fs::path dataset = o.dataset;
    if (!fs::exists(dataset)) throw InputError(o.dataset + ": no such file or directory");
    const auto format = fs::is_directory(dataset) ? DatasetFormat::csv_dir : DatasetFormat::jsonl;
    std::optional<fs::path> truth;
    if (o.truth) {
        truth = *o.truth;
        m.inputs.push_back(*o.truth);
    }
    const auto entries = load_dataset(dataset, format, truth);
    if (entries.empty()) throw InputError("no matrices found in " + o.dataset);

    const auto records = evaluate_dataset(entries, cfg, ri, *method);
    const auto summary = aggregate(records);

    ojson resolved = ojson::parse(cfg.to_json());
    resolved["method"] = o.method;
    resolved["ri_samples"] = ri.samples();
    resolved["ri_seed"] = ri.seed();
    m.config_json = resolved.dump();

    const fs::path out = *g_.out;
    const auto summary_path = sibling_path(out, ".summary.json");
    const auto manifest_path = sibling_path(out, ".manifest.json");
    m.outputs = {out.string(), summary_path.string(), manifest_path.string()};
    write_file_atomic(out, records_to_csv(records));
    write_file_atomic(summary_path, summary_to_json(summary) + "\n");
    write_file_atomic(manifest_path, m.to_json());
    err_ << "evaluated " << entries.size() << " participants\n";
    return kSuccess;
}

int Session::ri_table(const RiTableOptions& o) {
    RunManifest m{"ri-table", {}, "defaults", g_.seed.value_or(42), {}, {}};
    const auto table = RandomIndexTable::generate(o.min_n, o.max_n, o.samples, m.seed);
    ojson resolved;
    resolved["samples"] = o.samples;
    resolved["min_n"] = o.min_n;
    resolved["max_n"] = o.max_n;
    m.config_json = resolved.dump();
    emit(table.to_json() + "\n", m);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Priority derivation and scale individualization for pairwise comparison matrices", "bagins"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Seed for all randomness");
    app.add_option("--config", g.config, "JSON configuration file");
    app.add_option("--out", g.out, "Output path (stdout when omitted)");
    app.add_option("--format", g.format, "PCM input format: json or csv (default: by extension)");

    DeriveOptions derive;
    auto* derive_cmd = app.add_subcommand("derive", "Priorities and consistency of one PCM");
    derive_cmd->add_option("pcm", derive.pcm, "PCM file")->required();
    derive_cmd->add_option("--scale", derive.scale, "Scale file: 9 values, or an individualize result");
    derive_cmd->add_option("--method", derive.method, "eigenvector or geometric_mean");
    derive_cmd->add_option("--ri", derive.ri, "Random index table JSON (default: built-in)");

    IndividualizeOptions ind;
    auto* ind_cmd = app.add_subcommand("individualize", "Search for the most consistent scale of one PCM");
    ind_cmd->add_option("pcm", ind.pcm, "PCM file")->required();
    ind_cmd->add_option("--ri", ind.ri, "Random index table JSON (default: built-in)");
    ind_cmd->add_option("--objective", ind.objective, "cr, ci or lambda_max_gap");

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic JSON-lines study");
    sim_cmd->add_option("--matrices", sim.matrices, "Number of instances");
    sim_cmd->add_option("--perturb", sim.perturb, "Per-judgment perturbation probability");
    sim_cmd->add_option("--n", sim.n, "Alternatives per matrix");

    EvaluateOptions eval;
    auto* eval_cmd = app.add_subcommand("evaluate", "Compare fixed and individualized scales against truth");
    eval_cmd->add_option("dataset", eval.dataset, "JSON-lines file or directory of CSV PCMs")->required();
    eval_cmd->add_option("--truth", eval.truth, "Ground-truth sidecar JSON");
    eval_cmd->add_option("--ri", eval.ri, "Random index table JSON (default: built-in)");
    eval_cmd->add_option("--method", eval.method, "eigenvector or geometric_mean");

    RiTableOptions ri;
    auto* ri_cmd = app.add_subcommand("ri-table", "Derive the random index table by simulation");
    ri_cmd->add_option("--samples", ri.samples, "Random matrices per dimension");
    ri_cmd->add_option("--min-n", ri.min_n, "Smallest dimension");
    ri_cmd->add_option("--max-n", ri.max_n, "Largest dimension");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    Session session(g, out, err);
    try {
        if (*derive_cmd) return session.derive(derive);
        if (*ind_cmd) return session.individualize(ind);
        if (*sim_cmd) return session.simulate(sim);
        if (*eval_cmd) return session.evaluate(eval);
        if (*ri_cmd) return session.ri_table(ri);
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace bagins::cli

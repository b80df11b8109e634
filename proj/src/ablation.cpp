// Copyright 2026 The sentibench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sentibench/ablation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include "sentibench/corpus.hpp"
#include "sentibench/error.hpp"
#include "sentibench/hash.hpp"
#include "sentibench/io.hpp"

namespace sentibench {

std::string_view to_string(Balance b) noexcept {
    switch (b) {
        case Balance::balanced:
            return "balanced";
        case Balance::ratio_preserving:
            return "ratio_preserving";
        case Balance::none:
            break;
    }
    return "none";
}

Balance parse_balance(std::string_view s) {
    if (s == "balanced") return Balance::balanced;
    if (s == "ratio_preserving") return Balance::ratio_preserving;
    if (s == "none") return Balance::none;
    throw ConfigError("unknown balance '" + std::string(s) + "' (expected balanced, ratio_preserving or none)");
}

std::filesystem::path ExperimentSpec::corpus_dir() const {
    const std::filesystem::path ref(corpus_ref);
    return ref.is_absolute() || base_dir.empty() ? ref : base_dir / ref;
}

void ExperimentSpec::validate() const {
    if (name.empty()) throw ConfigError("experiment name must not be empty");
    if (corpus_ref.empty()) throw ConfigError("experiment '" + name + "' has no corpus_ref");
    prep.validate();
    train_config.validate();
    if (min_df < 1) throw ConfigError("min_df must be >= 1");
    switch (balance) {
        case Balance::none:
            if (train_size) throw ConfigError("train_size requires balance 'balanced' or 'ratio_preserving'");
            break;
        case Balance::ratio_preserving:
            if (!train_size) throw ConfigError("balance 'ratio_preserving' requires train_size");
            if (*train_size == 0) throw ConfigError("train_size must be > 0");
            break;
        case Balance::balanced:
            if (train_size && (*train_size == 0 || *train_size % kNumSentimentClasses != 0)) {
                throw ConfigError("balanced train_size must be a positive multiple of 3");
            }
            break;
    }
}

nlohmann::json to_json(const ExperimentSpec& s) {
    return {{"name", s.name},
            {"corpus_ref", s.corpus_ref},
            {"prep", to_json(s.prep)},
            {"weighting", to_string(s.weighting)},
            {"min_df", s.min_df},
            {"model", to_string(s.model)},
            {"train_config", to_json(s.train_config)},
            {"train_size", s.train_size ? nlohmann::json(*s.train_size) : nlohmann::json(nullptr)},
            {"balance", to_string(s.balance)},
            {"seed", s.seed}};
}

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("experiment spec must be a JSON object");
    ExperimentSpec s;
    s.base_dir = base_dir;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "name") s.name = v.get<std::string>();
            else if (key == "corpus_ref") s.corpus_ref = v.get<std::string>();
            else if (key == "prep") s.prep = prep_config_from_json(v);
            else if (key == "weighting") s.weighting = parse_weighting(v.get<std::string>());
            else if (key == "min_df") s.min_df = v.get<int>();
            else if (key == "model") s.model = parse_model_kind(v.get<std::string>());
            else if (key == "train_config") s.train_config = train_config_from_json(v);
            else if (key == "train_size") s.train_size = v.is_null() ? std::nullopt : std::optional(v.get<std::size_t>());
            else if (key == "balance") s.balance = parse_balance(v.get<std::string>());
            else if (key == "seed") s.seed = v.get<std::uint64_t>();
            else throw ConfigError("unknown experiment spec key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad experiment spec: " + std::string(e.what()));
    }
    s.validate();
    return s;
}

std::string spec_hash(const ExperimentSpec& spec) { return content_hash(to_json(spec).dump()); }

std::vector<ExperimentSpec> load_specs(const std::filesystem::path& path) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
        for (const auto& e : std::filesystem::directory_iterator(path))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
    } else if (std::filesystem::exists(path)) {
        files.push_back(path);
    } else {
        throw ConfigError("spec path " + path.string() + " does not exist");
    }
    std::vector<ExperimentSpec> specs;
    for (const auto& f : files) {
        const auto j = read_json_file(f);
        const auto base = f.parent_path();
        try {
            if (j.is_array()) {
                for (const auto& item : j) specs.push_back(experiment_spec_from_json(item, base));
            } else {
                specs.push_back(experiment_spec_from_json(j, base));
            }
        } catch (const ConfigError& e) {
            throw ConfigError(f.string() + ": " + e.what());
        }
    }
    if (specs.empty()) throw ConfigError("no experiment specs found in " + path.string());
    return specs;
}

namespace {

nlohmann::json fit_info_json(const FitInfo& f) {
    return {{"converged", f.converged}, {"iterations", f.iterations}, {"grad_inf_norm", f.grad_inf_norm}};
}

ConfusionMatrix confusion_from_report(const nlohmann::json& report) {
    const auto& rows = report.at("confusion");
    const int n = static_cast<int>(rows.size());
    std::vector<std::uint64_t> counts;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) throw DataError("confusion matrix is not square");
        for (const auto& v : row) counts.push_back(v.get<std::uint64_t>());
    }
    return ConfusionMatrix(n, std::move(counts));
}

}  // namespace

nlohmann::json to_json(const ExperimentResult& r) {
    nlohmann::json j = {{"name", r.name},
                        {"spec_hash", r.spec_hash},
                        {"model", r.model},
                        {"train_size", r.train_size},
                        {"vocab_size", r.vocab_size},
                        {"train_metrics", metrics_report(r.train_confusion)},
                        {"test_metrics", metrics_report(r.test_confusion)},
                        {"wall_time_prepare", r.wall_time_prepare},
                        {"wall_time_transform", r.wall_time_transform},
                        {"wall_time_fit", r.wall_time_fit},
                        {"test_hash", r.test_hash}};
    if (r.fit_info) j["fit"] = fit_info_json(*r.fit_info);
    return j;
}

ExperimentResult experiment_result_from_json(const nlohmann::json& j) {
    try {
        ExperimentResult r;
        r.name = j.at("name").get<std::string>();
        r.spec_hash = j.at("spec_hash").get<std::string>();
        r.model = j.at("model").get<std::string>();
        r.train_size = j.at("train_size").get<std::size_t>();
        r.vocab_size = j.at("vocab_size").get<std::size_t>();
        r.train_confusion = confusion_from_report(j.at("train_metrics"));
        r.test_confusion = confusion_from_report(j.at("test_metrics"));
        r.wall_time_prepare = j.at("wall_time_prepare").get<double>();
        r.wall_time_transform = j.at("wall_time_transform").get<double>();
        r.wall_time_fit = j.at("wall_time_fit").get<double>();
        r.test_hash = j.at("test_hash").get<std::string>();
        if (j.contains("fit")) {
            const auto& f = j.at("fit");
            r.fit_info = FitInfo{f.at("converged").get<bool>(), f.at("iterations").get<int>(),
                                 f.at("grad_inf_norm").get<double>(), {}};
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed experiment result: ") + e.what());
    }
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

struct LoadedCorpus {
    std::vector<LabeledDoc> train;
    std::vector<LabeledDoc> test;
};

LoadedCorpus load_corpus(const ExperimentSpec& spec) {
    return stage("load", [&] {
        const auto dir = spec.corpus_dir();
        LoadedCorpus c{read_corpus(dir / "train.jsonl"), read_corpus(dir / "test.jsonl")};
        if (c.train.empty()) throw DataError("training split in " + dir.string() + " is empty");
        if (c.test.empty()) throw DataError("test split in " + dir.string() + " is empty");
        return c;
    });
}

}  // namespace

std::vector<LabeledDoc> sample_training_docs(const ExperimentSpec& spec, const std::vector<LabeledDoc>& train) {
    return stage("sample", [&] {
        switch (spec.balance) {
            case Balance::ratio_preserving:
                return downsample_preserving_ratio(train, *spec.train_size, spec.seed);
            case Balance::balanced: {
                std::size_t per_class = 0;
                if (spec.train_size) {
                    per_class = *spec.train_size / kNumSentimentClasses;
                } else {
                    const auto counts = count_labels(train);
                    per_class = train.size();
                    for (int c = 0; c < kNumSentimentClasses; ++c) {
                        const auto it = counts.find(c);
                        per_class = std::min(per_class, it == counts.end() ? std::size_t{0} : it->second);
                    }
                }
                return downsample_balanced(train, per_class, spec.seed);
            }
            case Balance::none:
                break;
        }
        return train;
    });
}

namespace {

struct PreparedCorpus {
    GramDocs train;  // in fitting order
    std::vector<int> train_y;
    GramDocs test;
    std::vector<int> test_y;
    std::string test_hash;
    double prepare_seconds = 0.0;
};

PreparedCorpus prepare_corpus(const ExperimentSpec& spec, const std::vector<LabeledDoc>& train,
                              const std::vector<LabeledDoc>& test, const TextResources& resources) {
    return stage("prepare", [&] {
        const auto t0 = Clock::now();
        const Preprocessor pre(spec.prep, resources);
        PreparedCorpus p;
        p.train = prepare_docs(train, pre);
        p.train_y = labels_of(train);
        p.test = prepare_docs(test, pre);
        p.test_y = labels_of(test);
        p.test_hash = corpus_hash(test);
        p.prepare_seconds = seconds_since(t0);
        return p;
    });
}

// Fits on the first n_train prepared training documents and scores both splits.
ExperimentResult fit_and_score(const ExperimentSpec& spec, std::string name, const PreparedCorpus& data,
                               std::size_t n_train, const RunOptions& options) {
    ExperimentResult r;
    r.name = std::move(name);
    r.spec_hash = spec_hash(spec);
    r.model = std::string(to_string(spec.model));
    r.train_size = n_train;
    r.test_hash = data.test_hash;

    const GramSpan train_grams(data.train.data(), n_train);
    const std::span<const int> train_y(data.train_y.data(), n_train);

    auto t0 = Clock::now();
    auto [vocab, X_train, X_test] = stage("vectorize", [&] {
        auto v = fit_vocabulary(train_grams, spec.min_df);
        auto xt = transform(train_grams, v, spec.weighting);
        auto xs = transform(data.test, v, spec.weighting);
        return std::tuple{std::move(v), std::move(xt), std::move(xs)};
    });
    r.wall_time_transform = seconds_since(t0);
    r.vocab_size = vocab.size();

    t0 = Clock::now();
    const auto model = stage("fit", [&] { return fit_model(spec.model, X_train, train_y, spec.train_config); });
    r.wall_time_fit = seconds_since(t0);
    if (const auto* lin = std::get_if<LinearModel>(&model)) r.fit_info = lin->fit;

    stage("evaluate", [&] {
        r.train_confusion = confusion(train_y, predict(model, X_train), kNumSentimentClasses);
        r.test_confusion = confusion(data.test_y, predict(model, X_test), kNumSentimentClasses);
        return 0;
    });
    r.wall_time_prepare = data.prepare_seconds;
    if (!options.record_timings) {
        r.wall_time_prepare = 0.0;
        r.wall_time_transform = 0.0;
        r.wall_time_fit = 0.0;
    }
    return r;
}

const TextResources& resources_for(const RunOptions& options, std::optional<TextResources>& local) {
    if (options.resources) return *options.resources;
    local.emplace();
    return *local;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    stage("config", [&] {
        spec.validate();
        return 0;
    });
    std::optional<TextResources> local;
    const auto& resources = resources_for(options, local);
    const auto corpus = load_corpus(spec);
    const auto train = sample_training_docs(spec, corpus.train);
    const auto data = prepare_corpus(spec, train, corpus.test, resources);
    return fit_and_score(spec, spec.name, data, data.train.size(), options);
}

std::vector<std::size_t> default_learning_curve_sizes(std::size_t n_train, std::size_t n_points, std::size_t smallest) {
    if (n_train == 0) throw ConfigError("cannot build a learning curve on an empty training set");
    if (n_points < 2 || n_train <= smallest) return {n_train};
    std::set<std::size_t> sizes;
    const double ratio = static_cast<double>(n_train) / static_cast<double>(smallest);
    for (std::size_t i = 0; i + 1 < n_points; ++i) {
        const double raw = static_cast<double>(smallest) * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n_points - 1));
        const auto rounded = static_cast<std::size_t>(std::llround(raw / 100.0)) * 100;
        sizes.insert(std::clamp<std::size_t>(rounded, 1, n_train));
    }
    sizes.insert(n_train);
    return {sizes.begin(), sizes.end()};
}

std::vector<ExperimentResult> run_learning_curve(const ExperimentSpec& base, const std::vector<std::size_t>& sizes,
                                                 const RunOptions& options) {
    if (sizes.empty()) throw ConfigError("learning curve needs at least one size");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == 0) throw ConfigError("learning curve sizes must be > 0");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw ConfigError("learning curve sizes must be strictly ascending");
    }
    ExperimentSpec spec = base;
    spec.balance = Balance::ratio_preserving;
    spec.train_size = sizes.back();
    stage("config", [&] {
        spec.validate();
        return 0;
    });
    std::optional<TextResources> local;
    const auto& resources = resources_for(options, local);
    const auto corpus = load_corpus(spec);
    if (sizes.back() > corpus.train.size()) {
        throw StageError("sample", "largest size " + std::to_string(sizes.back()) + " exceeds the training split (" +
                                       std::to_string(corpus.train.size()) + ")");
    }
    // Every ratio-preserving sample is a prefix of one order, so preprocessing
    // the largest sample once covers every size.
    const auto train = sample_training_docs(spec, corpus.train);
    const auto data = prepare_corpus(spec, train, corpus.test, resources);

    std::vector<ExperimentResult> out;
    for (const auto n : sizes) {
        spec.train_size = n;
        out.push_back(fit_and_score(spec, base.name + "/n=" + std::to_string(n), data, n, options));
    }
    return out;
}

std::vector<GridEntry> run_grid(const std::vector<ExperimentSpec>& specs, unsigned workers, const RunOptions& options) {
    if (specs.empty()) throw ConfigError("experiment grid is empty");
    std::optional<TextResources> local;
    RunOptions shared = options;
    shared.resources = &resources_for(options, local);

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, specs.size()));

    std::vector<GridEntry> entries(specs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                entries[i].result = run_experiment(specs[i], shared);
            } catch (const std::exception& e) {
                entries[i].error = specs[i].name + ": " + e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return entries;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    return out + "\"";
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

}  // namespace

std::string report_csv(const std::vector<ExperimentResult>& results) {
    std::string out = "name,vocab_size,train_f1,test_f1,fit_seconds\n";
    for (const auto& r : results) {
        out += csv_field(r.name) + "," + std::to_string(r.vocab_size) + "," + fixed(macro_f1(r.train_confusion), 6) + "," +
               fixed(macro_f1(r.test_confusion), 6) + "," + fixed(r.wall_time_fit, 6) + "\n";
    }
    return out;
}

nlohmann::json report_json(const std::vector<ExperimentResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    return arr;
}

std::string normalized_confusion_csv(const ExperimentResult& result) {
    std::string out;
    for (const auto& row : normalize_rows(result.test_confusion)) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out.push_back(',');
            out += fixed(row[k], 6);
        }
        out.push_back('\n');
    }
    return out;
}

void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format, const std::filesystem::path& path) {
    if (results.empty()) throw ConfigError("no results to report");
    write_file_atomic(path, format == ReportFormat::csv ? report_csv(results) : dump_json(report_json(results)));
}

}  // namespace sentibench

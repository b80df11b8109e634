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

#pragma once

// Declarative experiments: one spec names a corpus, a preprocessing and
// weighting configuration, a model and a training-set sampling rule.
// Grids of specs run on a bounded worker pool; results come back in spec
// order and are identical to a sequential run.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentibench/metrics.hpp"
#include "sentibench/models.hpp"
#include "sentibench/pipeline.hpp"
#include "sentibench/textprep.hpp"
#include "sentibench/vectorize.hpp"

namespace sentibench {

enum class Balance { balanced, ratio_preserving, none };

std::string_view to_string(Balance b) noexcept;
Balance parse_balance(std::string_view s);

struct ExperimentSpec {
    std::string name;
    std::string corpus_ref;  // directory holding train.jsonl and test.jsonl
    PrepConfig prep;
    WeightingMode weighting = WeightingMode::count;
    int min_df = 1;
    ModelKind model = ModelKind::nb;
    TrainConfig train_config;
    std::optional<std::size_t> train_size;
    Balance balance = Balance::none;
    std::uint64_t seed = 0;

    // Directory a relative corpus_ref is resolved against; not part of the spec's identity.
    std::filesystem::path base_dir;

    std::filesystem::path corpus_dir() const;

    /// Throws ConfigError for inconsistent settings.
    void validate() const;
};

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Content hash of the canonical JSON form; independent of key order in the source file.
std::string spec_hash(const ExperimentSpec& spec);

/// A file holding one spec object or a list, or a directory of such files
/// read in filename order. Relative corpus_refs resolve against the file's
/// directory. Throws ConfigError when nothing is found.
std::vector<ExperimentSpec> load_specs(const std::filesystem::path& path);

/// The training documents a spec fits on, in fitting order: the full split
/// (none), a ratio-preserving prefix (ratio_preserving) or train_size / 3 per
/// class, defaulting to the smallest class count (balanced).
std::vector<LabeledDoc> sample_training_docs(const ExperimentSpec& spec, const std::vector<LabeledDoc>& train);

struct ExperimentResult {
    std::string name;
    std::string spec_hash;
    std::string model;
    std::size_t train_size = 0;
    std::size_t vocab_size = 0;
    ConfusionMatrix train_confusion;
    ConfusionMatrix test_confusion;
    double wall_time_prepare = 0.0;    // text preprocessing of train and test
    double wall_time_transform = 0.0;  // vocabulary fit and matrix construction
    double wall_time_fit = 0.0;        // model fit only
    std::string test_hash;             // content hash of the evaluated test split
    std::optional<FitInfo> fit_info;   // linear models only
};

nlohmann::json to_json(const ExperimentResult& r);
ExperimentResult experiment_result_from_json(const nlohmann::json& j);

struct RunOptions {
    const TextResources* resources = nullptr;  // default data dir when null
    bool record_timings = true;                // false zeroes all wall times for byte-stable output
};

/// Errors from any stage surface as StageError naming the stage
/// (load, sample, prepare, vectorize, fit, evaluate).
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Default schedule: n_points sizes spaced geometrically from `smallest` to
/// n_train, rounded to the nearest hundred, last point exactly n_train,
/// duplicates removed.
std::vector<std::size_t> default_learning_curve_sizes(std::size_t n_train, std::size_t n_points = 8,
                                                      std::size_t smallest = 1000);

/// One result per size on nested ratio-preserving subsamples of the
/// training split; text is preprocessed once. Sizes must be ascending and
/// within the training split. Result names get a "/n=<size>" suffix.
std::vector<ExperimentResult> run_learning_curve(const ExperimentSpec& base, const std::vector<std::size_t>& sizes,
                                                 const RunOptions& options = {});

struct GridEntry {
    std::optional<ExperimentResult> result;
    std::string error;  // set when result is empty
};

/// Runs every spec on up to `workers` threads (0 = hardware concurrency).
/// A failing spec records its error without stopping the others.
/// Throws ConfigError for an empty list.
std::vector<GridEntry> run_grid(const std::vector<ExperimentSpec>& specs, unsigned workers,
                                const RunOptions& options = {});

/// Columns: name,vocab_size,train_f1,test_f1,fit_seconds.
std::string report_csv(const std::vector<ExperimentResult>& results);
nlohmann::json report_json(const std::vector<ExperimentResult>& results);

/// Row-normalized test confusion matrix, one row per line.
std::string normalized_confusion_csv(const ExperimentResult& result);

enum class ReportFormat { json, csv };

/// Writes the report atomically. Throws ConfigError for an empty list.
void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                 const std::filesystem::path& path);

}  // namespace sentibench

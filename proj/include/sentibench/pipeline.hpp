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

// A fitted text pipeline (preprocessing config, vocabulary, weighting and
// model) and its on-disk form.
//
// A saved pipeline is two files: the model envelope M.json and the
// vocabulary file M.vocab.json next to it. Both carry the pipeline hash, a
// content hash of the preprocessing config, weighting and vocabulary, and
// loading refuses a pair whose hashes disagree.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sentibench/corpus.hpp"
#include "sentibench/models.hpp"
#include "sentibench/textprep.hpp"
#include "sentibench/vectorize.hpp"

namespace sentibench {

inline constexpr int kModelFormatVersion = 1;

enum class ModelKind { nb, lr, svm };

std::string_view to_string(ModelKind kind) noexcept;
ModelKind parse_model_kind(std::string_view s);

struct TrainedPipeline {
    PrepConfig prep;
    WeightingMode weighting = WeightingMode::count;
    int min_df = 1;
    TrainConfig train_config;
    Vocabulary vocab;
    Model model;
};

std::string pipeline_hash(const PrepConfig& prep, WeightingMode weighting, const Vocabulary& vocab);
std::string pipeline_hash(const TrainedPipeline& p);

/// Runs the preprocessor over every document.
GramDocs prepare_docs(const std::vector<LabeledDoc>& docs, const Preprocessor& prep);
std::vector<int> labels_of(const std::vector<LabeledDoc>& docs);

Model fit_model(ModelKind kind, const DocTermMatrix& X, std::span<const int> y, const TrainConfig& config);

/// Fits vocabulary, matrix and model on the given documents.
TrainedPipeline train_pipeline(const std::vector<LabeledDoc>& train, const PrepConfig& prep, WeightingMode weighting,
                               int min_df, ModelKind kind, const TrainConfig& config,
                               const TextResources& resources);

/// Preprocesses and vectorizes documents with the pipeline's frozen vocabulary.
DocTermMatrix featurize(const TrainedPipeline& p, const std::vector<LabeledDoc>& docs,
                        const TextResources& resources);

/// M.json -> M<suffix> in the same directory.
std::filesystem::path companion_path(const std::filesystem::path& model_path, std::string_view suffix);

/// Path of the vocabulary file that accompanies a model file.
std::filesystem::path vocab_path_for(const std::filesystem::path& model_path);

nlohmann::json model_envelope(const TrainedPipeline& p, std::string_view vocab_file);
nlohmann::json vocab_document(const TrainedPipeline& p);

/// Writes M.json and M.vocab.json atomically.
void save_pipeline(const TrainedPipeline& p, const std::filesystem::path& model_path);

/// Throws DataError on malformed files or a pipeline-hash mismatch.
TrainedPipeline load_pipeline(const std::filesystem::path& model_path);

}  // namespace sentibench

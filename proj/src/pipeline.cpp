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

#include "sentibench/pipeline.hpp"

#include "sentibench/error.hpp"
#include "sentibench/hash.hpp"
#include "sentibench/io.hpp"

namespace sentibench {

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::lr:
            return "lr";
        case ModelKind::svm:
            return "svm";
        case ModelKind::nb:
            break;
    }
    return "nb";
}

ModelKind parse_model_kind(std::string_view s) {
    if (s == "nb") return ModelKind::nb;
    if (s == "lr") return ModelKind::lr;
    if (s == "svm") return ModelKind::svm;
    throw ConfigError("unknown model '" + std::string(s) + "' (expected nb, lr or svm)");
}

std::string pipeline_hash(const PrepConfig& prep, WeightingMode weighting, const Vocabulary& vocab) {
    Fnv1a h;
    h.update(to_json(prep).dump()).separator().update(to_string(weighting)).separator().update(vocab.stats_hash());
    return h.hex();
}

std::string pipeline_hash(const TrainedPipeline& p) { return pipeline_hash(p.prep, p.weighting, p.vocab); }

GramDocs prepare_docs(const std::vector<LabeledDoc>& docs, const Preprocessor& prep) {
    GramDocs out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.push_back(prep(d.text));
    return out;
}

std::vector<int> labels_of(const std::vector<LabeledDoc>& docs) {
    std::vector<int> y;
    y.reserve(docs.size());
    for (const auto& d : docs) y.push_back(d.label);
    return y;
}

Model fit_model(ModelKind kind, const DocTermMatrix& X, std::span<const int> y, const TrainConfig& config) {
    config.validate();
    switch (kind) {
        case ModelKind::lr:
            return lr_fit(X, y, config, kNumSentimentClasses);
        case ModelKind::svm:
            return svm_fit(X, y, config, kNumSentimentClasses);
        case ModelKind::nb:
            break;
    }
    return nb_fit(X, y, config.alpha, kNumSentimentClasses);
}

TrainedPipeline train_pipeline(const std::vector<LabeledDoc>& train, const PrepConfig& prep, WeightingMode weighting,
                               int min_df, ModelKind kind, const TrainConfig& config,
                               const TextResources& resources) {
    prep.validate();
    const Preprocessor pre(prep, resources);
    const auto grams = prepare_docs(train, pre);
    TrainedPipeline p{prep, weighting, min_df, config, fit_vocabulary(grams, min_df), NBModel{}};
    const auto X = transform(grams, p.vocab, weighting);
    const auto y = labels_of(train);
    p.model = fit_model(kind, X, y, config);
    return p;
}

DocTermMatrix featurize(const TrainedPipeline& p, const std::vector<LabeledDoc>& docs,
                        const TextResources& resources) {
    const Preprocessor pre(p.prep, resources);
    return transform(prepare_docs(docs, pre), p.vocab, p.weighting);
}

std::filesystem::path companion_path(const std::filesystem::path& model_path, std::string_view suffix) {
    auto stem = model_path.filename().string();
    if (stem.size() > 5 && stem.ends_with(".json")) stem.resize(stem.size() - 5);
    return model_path.parent_path() / (stem + std::string(suffix));
}

std::filesystem::path vocab_path_for(const std::filesystem::path& model_path) {
    return companion_path(model_path, ".vocab.json");
}

nlohmann::json model_envelope(const TrainedPipeline& p, std::string_view vocab_file) {
    const auto params = std::visit([](const auto& m) { return to_json(m); }, p.model);
    return {{"format_version", kModelFormatVersion},
            {"kind", model_kind(p.model)},
            {"config",
             {{"train_config", to_json(p.train_config)},
              {"prep", to_json(p.prep)},
              {"weighting", to_string(p.weighting)},
              {"min_df", p.min_df}}},
            {"vocab_ref", pipeline_hash(p)},
            {"vocab_file", std::string(vocab_file)},
            {"parameters", params}};
}

nlohmann::json vocab_document(const TrainedPipeline& p) {
    return {{"format_version", kModelFormatVersion},
            {"pipeline_hash", pipeline_hash(p)},
            {"prep", to_json(p.prep)},
            {"weighting", to_string(p.weighting)},
            {"vocabulary", p.vocab.to_json()}};
}

void save_pipeline(const TrainedPipeline& p, const std::filesystem::path& model_path) {
    const auto vocab_path = vocab_path_for(model_path);
    write_file_atomic(vocab_path, dump_json(vocab_document(p)));
    write_file_atomic(model_path, dump_json(model_envelope(p, vocab_path.filename().string())));
}

TrainedPipeline load_pipeline(const std::filesystem::path& model_path) {
    const auto env = read_json_file(model_path);
    try {
        if (env.at("format_version").get<int>() != kModelFormatVersion) {
            throw DataError(model_path.string() + ": unsupported model format version");
        }
        const auto vocab_path = model_path.parent_path() / env.at("vocab_file").get<std::string>();
        const auto vdoc = read_json_file(vocab_path);

        TrainedPipeline p;
        const auto& cfg = env.at("config");
        p.prep = prep_config_from_json(cfg.at("prep"));
        p.weighting = parse_weighting(cfg.at("weighting").get<std::string>());
        p.min_df = cfg.at("min_df").get<int>();
        p.train_config = train_config_from_json(cfg.at("train_config"));
        p.vocab = Vocabulary::from_json(vdoc.at("vocabulary"));

        if (prep_config_from_json(vdoc.at("prep")) != p.prep ||
            parse_weighting(vdoc.at("weighting").get<std::string>()) != p.weighting) {
            throw DataError("pipeline hash mismatch: " + vocab_path.string() +
                            " was built with different preprocessing than " + model_path.string());
        }
        const auto actual = pipeline_hash(p);
        if (vdoc.at("pipeline_hash").get<std::string>() != actual) {
            throw DataError("pipeline hash mismatch: " + vocab_path.string() + " content does not match its stored hash");
        }
        if (env.at("vocab_ref").get<std::string>() != actual) {
            throw DataError("pipeline hash mismatch: model " + model_path.string() + " was not trained with " +
                            vocab_path.string());
        }

        const auto kind = env.at("kind").get<std::string>();
        const auto& params = env.at("parameters");
        if (kind == "nb") {
            p.model = nb_model_from_json(params);
        } else if (kind == "lr" || kind == "svm") {
            auto lin = linear_model_from_json(params);
            if ((kind == "lr") != (lin.kind == LinearKind::logistic)) throw DataError("model kind does not match its parameters");
            p.model = std::move(lin);
        } else {
            throw DataError("unknown model kind '" + kind + "'");
        }
        const auto n_features = std::visit([](const auto& m) { return m.n_features; }, p.model);
        if (n_features != p.vocab.size()) throw DataError("model feature count does not match the vocabulary");
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(model_path.string() + ": malformed model file: " + e.what());
    } catch (const ConfigError& e) {
        throw DataError(model_path.string() + ": invalid stored config: " + e.what());
    }
}

}  // namespace sentibench

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

// sentibench: command-line front end for corpus preparation, training,
// evaluation, ablation grids and model inspection.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentibench/ablation.hpp"
#include "sentibench/corpus.hpp"
#include "sentibench/error.hpp"
#include "sentibench/hash.hpp"
#include "sentibench/io.hpp"
#include "sentibench/metrics.hpp"
#include "sentibench/models.hpp"
#include "sentibench/pipeline.hpp"
#include "sentibench/textprep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sentibench;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string data_dir;
    bool no_timings = false;

    TextResources resources() const {
        return data_dir.empty() ? TextResources() : TextResources(fs::path(data_dir));
    }
};

std::string counts_key(Label label) { return std::to_string(label); }

json counts_json(const ClassCounts& counts) {
    json j = json::object();
    for (int c = 0; c < kNumSentimentClasses; ++c) {
        const auto it = counts.find(c);
        j[counts_key(c)] = it == counts.end() ? 0 : it->second;
    }
    return j;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

// A corpus argument may be a JSONL file or a corpus directory.
fs::path corpus_file(const fs::path& arg, const char* split) {
    return fs::is_directory(arg) ? arg / (std::string(split) + ".jsonl") : arg;
}

// ---------------------------------------------------------------------------
// prepare

struct PrepareConfig {
    FilterCriteria filter;
    double test_fraction = 0.25;
    std::uint64_t split_seed = 0;
    std::uint64_t balance_seed = 0;
    std::optional<std::size_t> balanced_per_class;
};

PrepareConfig prepare_config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("prepare config must be a JSON object");
    PrepareConfig c;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "filter") c.filter = filter_criteria_from_json(v);
            else if (key == "test_fraction") c.test_fraction = v.get<double>();
            else if (key == "split_seed") c.split_seed = v.get<std::uint64_t>();
            else if (key == "balance_seed") c.balance_seed = v.get<std::uint64_t>();
            else if (key == "balanced_per_class") c.balanced_per_class = v.is_null() ? std::nullopt : std::optional(v.get<std::size_t>());
            else if (key == "description") continue;
            else throw ConfigError("unknown prepare config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad prepare config: ") + e.what());
    }
    if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) throw ConfigError("test_fraction must lie in (0, 1)");
    return c;
}

std::size_t smallest_class(const ClassCounts& counts) {
    std::size_t m = SIZE_MAX;
    for (int c = 0; c < kNumSentimentClasses; ++c) {
        const auto it = counts.find(c);
        m = std::min(m, it == counts.end() ? std::size_t{0} : it->second);
    }
    return m;
}

// Writes train/test/balanced_train plus a split report into `out`.
json write_splits(const std::vector<LabeledDoc>& docs, double test_fraction, std::uint64_t split_seed,
                  std::uint64_t balance_seed, std::optional<std::size_t> per_class, const fs::path& out) {
    const auto split = stratified_split(docs, test_fraction, split_seed);
    const auto n_balanced = per_class.value_or(smallest_class(split.train_counts));
    const auto balanced = downsample_balanced(split.train, n_balanced, balance_seed);
    write_file_atomic(out / "train.jsonl", corpus_to_jsonl(split.train));
    write_file_atomic(out / "test.jsonl", corpus_to_jsonl(split.test));
    write_file_atomic(out / "balanced_train.jsonl", corpus_to_jsonl(balanced));
    json report = {{"n_docs", docs.size()},
                   {"test_fraction", test_fraction},
                   {"split_seed", split_seed},
                   {"balance_seed", balance_seed},
                   {"train_size", split.train.size()},
                   {"test_size", split.test.size()},
                   {"train_counts", counts_json(split.train_counts)},
                   {"test_counts", counts_json(split.test_counts)},
                   {"balanced_per_class", n_balanced},
                   {"balanced_size", balanced.size()},
                   {"train_hash", corpus_hash(split.train)},
                   {"test_hash", corpus_hash(split.test)},
                   {"balanced_hash", corpus_hash(balanced)}};
    write_file_atomic(out / "split_report.json", dump_json(report));
    return report;
}

int run_prepare(const Globals& g, const std::string& business_path, const std::string& reviews_path,
                const std::string& config_path, const fs::path& out) {
    auto config = prepare_config_from_json(read_json_file(config_path));
    if (g.seed) config.split_seed = config.balance_seed = *g.seed;

    IngestReport business_report;
    std::vector<Business> businesses;
    {
        auto in = open_input(business_path);
        for_each_business(in, business_report, [&](Business&& b) { businesses.push_back(std::move(b)); });
    }
    const auto filtered = filter_businesses(businesses, config.filter);
    businesses.clear();
    std::unordered_set<std::string> kept;
    for (const auto& b : filtered.businesses) kept.insert(b.business_id);

    IngestReport review_report;
    std::vector<LabeledDoc> docs;
    {
        auto in = open_input(reviews_path);
        for_each_review(in, review_report, [&](RawReview&& r) {
            if (kept.contains(r.business_id)) docs.push_back({std::move(r.text), label_from_stars(r.stars)});
        });
    }

    json waterfall = to_json(filtered.waterfall);
    waterfall["reviews_in_population"] = docs.size();
    waterfall["business_ingest"] = to_json(business_report);
    waterfall["review_ingest"] = to_json(review_report);
    waterfall["filter"] = to_json(config.filter);
    write_file_atomic(out / "waterfall.json", dump_json(waterfall));

    const auto report =
        write_splits(docs, config.test_fraction, config.split_seed, config.balance_seed, config.balanced_per_class, out);
    std::cout << "businesses " << filtered.businesses.size() << ", reviews " << docs.size() << ", train "
              << report["train_size"].get<std::size_t>() << ", test " << report["test_size"].get<std::size_t>()
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// synth

int run_synth(const Globals& g, std::size_t n_docs, const std::string& spec_path, double test_fraction,
              const fs::path& out) {
    SynthSpec spec = spec_path.empty() ? SynthSpec::with_default_keywords(n_docs)
                                       : synth_spec_from_json(read_json_file(spec_path));
    if (n_docs > 0) spec.n_docs = n_docs;
    const std::uint64_t seed = g.seed.value_or(0);
    const auto docs = synth_corpus(spec, seed);
    write_file_atomic(out / "synth_spec.json", dump_json(json{{"spec", to_json(spec)}, {"seed", seed}}));
    const auto report = write_splits(docs, test_fraction, seed, seed, std::nullopt, out);
    std::cout << "docs " << docs.size() << ", train " << report["train_size"].get<std::size_t>() << ", test "
              << report["test_size"].get<std::size_t>() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// train / evaluate

ExperimentSpec training_spec(const fs::path& spec_path) {
    auto j = read_json_file(spec_path);
    if (!j.is_object()) throw ConfigError(spec_path.string() + ": training spec must be a JSON object");
    if (!j.contains("name")) j["name"] = spec_path.stem().string();
    if (!j.contains("corpus_ref")) j["corpus_ref"] = ".";
    return experiment_spec_from_json(j, spec_path.parent_path());
}

int run_train(const Globals& g, const fs::path& corpus_arg, const fs::path& spec_path, const fs::path& model_out) {
    auto spec = training_spec(spec_path);
    if (g.seed) spec.seed = spec.train_config.seed = *g.seed;
    const auto resources = g.resources();
    const auto all_train = read_corpus(corpus_file(corpus_arg, "train"));
    if (all_train.empty()) throw DataError("training corpus is empty");
    const auto train = sample_training_docs(spec, all_train);

    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    const Preprocessor pre(spec.prep, resources);
    const auto grams = prepare_docs(train, pre);
    TrainedPipeline p{spec.prep, spec.weighting, spec.min_df, spec.train_config, fit_vocabulary(grams, spec.min_df),
                      NBModel{}};
    const auto X = transform(grams, p.vocab, spec.weighting);
    const auto t1 = Clock::now();
    const auto y = labels_of(train);
    p.model = fit_model(spec.model, X, y, spec.train_config);
    const auto t2 = Clock::now();

    save_pipeline(p, model_out);
    json fit = {{"spec_hash", spec_hash(spec)},
                {"spec", to_json(spec)},
                {"model", to_string(spec.model)},
                {"pipeline_hash", pipeline_hash(p)},
                {"corpus_hash", corpus_hash(train)},
                {"train_size", train.size()},
                {"vocab_size", p.vocab.size()},
                {"train_metrics", metrics_report(confusion(y, predict(p.model, X), kNumSentimentClasses))},
                {"wall_time_transform", g.no_timings ? 0.0 : std::chrono::duration<double>(t1 - t0).count()},
                {"wall_time_fit", g.no_timings ? 0.0 : std::chrono::duration<double>(t2 - t1).count()}};
    if (const auto* lin = std::get_if<LinearModel>(&p.model)) {
        fit["fit"] = {{"converged", lin->fit.converged},
                      {"iterations", lin->fit.iterations},
                      {"grad_inf_norm", lin->fit.grad_inf_norm}};
    }
    write_file_atomic(companion_path(model_out, ".fit.json"), dump_json(fit));
    std::cout << "trained " << to_string(spec.model) << " on " << train.size() << " docs, vocabulary "
              << p.vocab.size() << "\n";
    return 0;
}

int run_evaluate(const Globals& g, const fs::path& model_path, const fs::path& corpus_arg, const fs::path& report_path) {
    const auto p = load_pipeline(model_path);
    const auto docs = read_corpus(corpus_file(corpus_arg, "test"));
    if (docs.empty()) throw DataError("evaluation corpus is empty");
    const auto X = featurize(p, docs, g.resources());
    const auto cm = confusion(labels_of(docs), predict(p.model, X), kNumSentimentClasses);
    const auto report = metrics_report(cm);
    write_file_atomic(report_path, dump_json(report));
    std::cout << "macro F1 " << std::fixed << std::setprecision(6) << report["macro_f1_sokolova"].get<double>() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// ablate

std::string safe_file_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? "experiment" : out;
}

int run_ablate(const Globals& g, const fs::path& specs_path, const fs::path& out, unsigned workers,
               bool learning_curve, const std::vector<std::size_t>& sizes, bool confusion_csv) {
    auto specs = load_specs(specs_path);
    if (g.seed) {
        for (auto& s : specs) s.seed = s.train_config.seed = *g.seed;
    }
    const auto resources = g.resources();
    RunOptions options{&resources, !g.no_timings};

    std::vector<ExperimentResult> results;
    std::vector<std::string> errors;
    if (learning_curve) {
        for (const auto& s : specs) {
            try {
                auto schedule = sizes;
                if (schedule.empty()) {
                    schedule = default_learning_curve_sizes(read_corpus(s.corpus_dir() / "train.jsonl").size());
                }
                for (auto& r : run_learning_curve(s, schedule, options)) results.push_back(std::move(r));
            } catch (const std::exception& e) {
                errors.push_back(s.name + ": " + e.what());
            }
        }
    } else {
        for (auto& entry : run_grid(specs, workers, options)) {
            if (entry.result) results.push_back(std::move(*entry.result));
            else errors.push_back(entry.error);
        }
    }
    if (!results.empty()) {
        emit_report(results, ReportFormat::csv, out / "report.csv");
        emit_report(results, ReportFormat::json, out / "report.json");
        if (confusion_csv) {
            for (const auto& r : results) {
                write_file_atomic(out / "confusion" / (safe_file_name(r.name) + ".csv"), normalized_confusion_csv(r));
            }
        }
    }
    std::cout << report_csv(results);
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    return errors.empty() ? 0 : kExitRuntime;
}

// ---------------------------------------------------------------------------
// inspect-features / explain

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// Left-aligned first column, right-aligned numeric columns.
std::string ascii_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
    for (const auto& r : rows)
        for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k > 0) s += "  ";
            const auto pad = std::string(width[k] - cells[k].size(), ' ');
            s += k == 0 ? cells[k] + pad : pad + cells[k];
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s + "\n";
    };
    std::string out = line(header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    for (const auto& r : rows) out += line(r);
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

int run_inspect(const fs::path& model_path, std::optional<int> cls, std::optional<std::size_t> top,
                const std::string& discriminative, const std::string& csv_path) {
    const auto p = load_pipeline(model_path);
    const auto* lin = std::get_if<LinearModel>(&p.model);
    if (!lin) throw ConfigError("inspect-features needs a linear model (lr or svm); this model is nb");
    std::vector<RankedTerm> ranked;
    std::string score_name = "weight";
    if (!discriminative.empty()) {
        const auto dir = discriminative == "least" ? RankDirection::least : RankDirection::most;
        ranked = discriminative_rank(*lin, p.vocab, top.value_or(10), dir);
        score_name = "std";
    } else {
        ranked = top_features(*lin, p.vocab, *cls, *top);
    }
    std::vector<std::string> header{"term"};
    for (int c = 0; c < lin->n_classes; ++c) header.push_back("class " + std::to_string(c));
    header.push_back(score_name);
    std::vector<std::vector<std::string>> rows;
    std::string csv = "term";
    for (int c = 0; c < lin->n_classes; ++c) csv += ",class_" + std::to_string(c);
    csv += "," + score_name + "\n";
    for (const auto& r : ranked) {
        std::vector<std::string> row{r.term};
        csv += csv_escape(r.term);
        for (double v : r.coefficients) {
            row.push_back(fmt(v, 3));
            csv += "," + fmt(v, 6);
        }
        row.push_back(fmt(r.score, 3));
        csv += "," + fmt(r.score, 6) + "\n";
        rows.push_back(std::move(row));
    }
    std::cout << ascii_table(header, rows);
    if (!csv_path.empty()) write_file_atomic(csv_path, csv);
    return 0;
}

int run_explain(const Globals& g, const fs::path& model_path, const std::string& text, const std::string& json_path) {
    const auto p = load_pipeline(model_path);
    const auto* nb = std::get_if<NBModel>(&p.model);
    if (!nb) throw ConfigError("explain needs a naive Bayes model; this model is " + std::string(model_kind(p.model)));
    const auto resources = g.resources();
    const Preprocessor pre(p.prep, resources);
    const auto ex = explain_doc(*nb, p.vocab, text, pre, p.weighting);

    std::vector<std::string> header{"gram"};
    for (int c = 0; c < nb->n_classes; ++c) header.push_back("class " + std::to_string(c));
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (const auto& r : ex.rows) {
        std::vector<std::string> row{r.gram};
        for (double v : r.log_lik) row.push_back(fmt(v, 3));
        rows.push_back(std::move(row));
        jrows.push_back({{"gram", r.gram}, {"weight", r.weight}, {"log_lik", r.log_lik}});
    }
    std::vector<std::string> posterior{"Predicted Prob"};
    for (double v : ex.posterior) posterior.push_back(fmt(v, 3));
    rows.push_back(std::move(posterior));
    std::cout << ascii_table(header, rows);
    if (!ex.out_of_vocab.empty()) {
        std::cout << "out of vocabulary:";
        for (const auto& t : ex.out_of_vocab) std::cout << " [" << t << "]";
        std::cout << "\n";
    }
    if (!json_path.empty()) {
        write_file_atomic(json_path, dump_json(json{{"rows", jrows},
                                                    {"out_of_vocab", ex.out_of_vocab},
                                                    {"posterior", ex.posterior},
                                                    {"predicted", argmax(ex.posterior)}}));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// metrics

ConfusionMatrix parse_confusion_arg(const std::string& arg) {
    std::vector<std::vector<std::uint64_t>> rows;
    std::stringstream rs(arg);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<std::uint64_t> cells;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) {
            try {
                std::size_t used = 0;
                const auto v = std::stoull(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
                cells.push_back(v);
            } catch (const std::exception&) {
                throw UsageError("--confusion cell '" + cell + "' is not a non-negative integer");
            }
        }
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw UsageError("--confusion is empty");
    std::vector<std::uint64_t> flat;
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw UsageError("--confusion must be square (rows separated by ';')");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return ConfusionMatrix(static_cast<int>(rows.size()), std::move(flat));
}

// One "actual predicted" pair per line; commas or whitespace separate the two labels.
ConfusionMatrix confusion_from_pairs(const fs::path& path, int n_classes) {
    std::stringstream in(read_text_file(path));
    std::vector<int> y_true;
    std::vector<int> y_pred;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        int a = 0;
        int p = 0;
        std::string extra;
        if (!(ls >> a)) continue;
        if (!(ls >> p) || (ls >> extra)) throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected two labels");
        y_true.push_back(a);
        y_pred.push_back(p);
    }
    return confusion(y_true, y_pred, n_classes);
}

int run_metrics(const std::string& pairs, const std::string& confusion_arg, int n_classes, const std::string& report_path) {
    const auto cm = confusion_arg.empty() ? confusion_from_pairs(pairs, n_classes) : parse_confusion_arg(confusion_arg);
    const auto report = dump_json(metrics_report(cm));
    if (!report_path.empty()) write_file_atomic(report_path, report);
    std::cout << report;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sentibench: sentiment classification benchmark toolkit"};
    app.require_subcommand(1);
    Globals g;
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Override every seed in configs and specs");
    app.add_option("--data-dir", g.data_dir, "Directory with stopword lists and the lemma table");
    app.add_flag("--no-timings", g.no_timings, "Write zero wall times so outputs are byte-stable");

    std::string business, reviews, config, out;
    auto* prepare = app.add_subcommand("prepare", "Filter Yelp data, label and split it");
    prepare->add_option("--business", business, "Yelp business JSONL")->required();
    prepare->add_option("--reviews", reviews, "Yelp review JSONL")->required();
    prepare->add_option("--config", config, "Population and split config JSON")->required();
    prepare->add_option("--out", out, "Output directory")->required();

    std::size_t n_docs = 0;
    std::string synth_spec;
    double test_fraction = 0.25;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic labelled corpus directory");
    synth->add_option("--n-docs", n_docs, "Number of documents (overrides the spec)");
    synth->add_option("--spec", synth_spec, "Synthetic corpus spec JSON");
    synth->add_option("--test-fraction", test_fraction, "Test split fraction")->check(CLI::Range(0.0, 1.0));
    synth->add_option("--out", out, "Output directory")->required();

    std::string corpus, spec, model_out;
    auto* train = app.add_subcommand("train", "Fit a pipeline and model on a training corpus");
    train->add_option("--corpus", corpus, "Training JSONL or corpus directory")->required();
    train->add_option("--spec", spec, "Experiment spec JSON")->required();
    train->add_option("--model-out", model_out, "Model file to write")->required();

    std::string model, report;
    auto* evaluate = app.add_subcommand("evaluate", "Score a saved model on a labelled corpus");
    evaluate->add_option("--model", model, "Model file")->required();
    evaluate->add_option("--corpus", corpus, "Test JSONL or corpus directory")->required();
    evaluate->add_option("--report", report, "Metrics report JSON to write")->required();

    std::string specs;
    unsigned workers = 1;
    bool learning_curve = false;
    bool confusion_csv = false;
    std::vector<std::size_t> sizes;
    auto* ablate = app.add_subcommand("ablate", "Run a grid of experiment specs");
    ablate->add_option("--specs", specs, "Spec file or directory of spec files")->required();
    ablate->add_option("--out", out, "Report directory")->required();
    ablate->add_option("--workers", workers, "Concurrent experiments (0 = all cores)");
    ablate->add_flag("--learning-curve", learning_curve, "Run each spec as a learning curve");
    ablate->add_option("--sizes", sizes, "Learning curve sizes (default: 8-point geometric schedule)")->delimiter(',');
    ablate->add_flag("--confusion", confusion_csv, "Also write normalized test confusion CSVs");

    int cls = 0;
    std::size_t top = 0;
    std::string discriminative, csv_out;
    auto* inspect = app.add_subcommand("inspect-features", "Rank terms of a linear model");
    inspect->add_option("--model", model, "Model file")->required();
    auto* cls_opt = inspect->add_option("--class", cls, "Class index for --top");
    auto* top_opt = inspect->add_option("--top", top, "Number of terms");
    auto* disc_opt = inspect->add_option("--discriminative", discriminative, "Rank by coefficient spread")
                         ->check(CLI::IsMember({"most", "least"}));
    inspect->add_option("--csv", csv_out, "Also write the table as CSV");

    std::string text, json_out;
    auto* explain = app.add_subcommand("explain", "Per-gram naive Bayes log-likelihoods for a text");
    explain->add_option("--model", model, "Model file")->required();
    explain->add_option("--text", text, "Document text")->required();
    explain->add_option("--json", json_out, "Also write the explanation as JSON");

    std::string pairs, confusion_arg;
    int n_classes = kNumSentimentClasses;
    auto* metrics = app.add_subcommand("metrics", "Metrics report from label pairs or a confusion matrix");
    auto* pairs_opt = metrics->add_option("--pairs", pairs, "File of 'actual predicted' label pairs");
    auto* conf_opt = metrics->add_option("--confusion", confusion_arg, "Rows separated by ';', cells by ','");
    pairs_opt->excludes(conf_opt);
    metrics->add_option("--classes", n_classes, "Class count for --pairs")->check(CLI::PositiveNumber);
    metrics->add_option("--report", report, "Report JSON to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    if (seed_opt->count() > 0) g.seed = seed_value;

    try {
        if (*prepare) return run_prepare(g, business, reviews, config, out);
        if (*synth) return run_synth(g, n_docs, synth_spec, test_fraction, out);
        if (*train) return run_train(g, corpus, spec, model_out);
        if (*evaluate) return run_evaluate(g, model, corpus, report);
        if (*ablate) return run_ablate(g, specs, out, workers, learning_curve, sizes, confusion_csv);
        if (*inspect) {
            if (disc_opt->count() == 0 && (top_opt->count() == 0 || cls_opt->count() == 0)) {
                throw UsageError("inspect-features needs --class and --top, or --discriminative");
            }
            std::optional<std::size_t> k;
            if (top_opt->count() > 0) k = top;
            return run_inspect(model, cls, k, discriminative, csv_out);
        }
        if (*explain) return run_explain(g, model, text, json_out);
        if (*metrics) {
            if (pairs_opt->count() == 0 && conf_opt->count() == 0) throw UsageError("metrics needs --pairs or --confusion");
            return run_metrics(pairs, confusion_arg, n_classes, report);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

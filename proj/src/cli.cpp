#include "mrsum/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "mrsum/error.hpp"
#include "mrsum/harness.hpp"

namespace mrsum {
namespace {

const std::map<std::string, Method> kMethods = {{"lead3", Method::lead3},
                                                {"textrank", Method::textrank},
                                                {"pacsum", Method::pacsum},
                                                {"multiround", Method::multiround}};

// Summarizer flags shared by summarize/eval/tune. Flags override the
// config file, which overrides the built-in defaults.
struct ConfigFlags {
  SummarizerConfig values;
  std::string method = "multiround";
  std::string config_path;
  std::vector<std::pair<CLI::Option*, std::function<void(SummarizerConfig&)>>> bound;
  CLI::Option* method_opt = nullptr;

  void add(CLI::App& app, bool method_required) {
    method_opt = app.add_option("--method", method, "Summarization method")
                     ->check(CLI::IsMember({"lead3", "textrank", "pacsum", "multiround"}))
                     ->capture_default_str();
    if (method_required) method_opt->required();
    app.add_option("--config", config_path, "JSON file with summarizer settings")
        ->check(CLI::ExistingFile);
    bind(app.add_option("--k", values.k, "Number of summary sentences")
             ->check(CLI::PositiveNumber),
         [this](SummarizerConfig& c) { c.k = values.k; });
    bind(app.add_option("--a", values.a, "Threshold position between min and max similarity")
             ->check(CLI::Range(0.0, 1.0)),
         [this](SummarizerConfig& c) { c.a = values.a; });
    bind(app.add_option("--beta1", values.beta1, "Forward edge weight"),
         [this](SummarizerConfig& c) { c.beta1 = values.beta1; });
    bind(app.add_option("--beta2", values.beta2, "Backward edge weight"),
         [this](SummarizerConfig& c) { c.beta2 = values.beta2; });
    bind(app.add_option("--alpha1", values.alpha1,
                        "Scale of edges to later sentences once a sentence is picked"),
         [this](SummarizerConfig& c) { c.alpha1 = values.alpha1; });
    bind(app.add_option("--alpha2", values.alpha2,
                        "Scale of edges to earlier sentences once a sentence is picked"),
         [this](SummarizerConfig& c) { c.alpha2 = values.alpha2; });
    bind(app.add_option("--damping", values.textrank.damping, "TextRank damping factor")
             ->check(CLI::Range(0.0, 1.0)),
         [this](SummarizerConfig& c) { c.textrank.damping = values.textrank.damping; });
    bind(app.add_option("--max-iter", values.textrank.max_iter, "TextRank iteration cap"),
         [this](SummarizerConfig& c) { c.textrank.max_iter = values.textrank.max_iter; });
    bind(app.add_option("--tol", values.textrank.tol, "TextRank L1 convergence tolerance"),
         [this](SummarizerConfig& c) { c.textrank.tol = values.textrank.tol; });
  }

  void bind(CLI::Option* opt, std::function<void(SummarizerConfig&)> apply) {
    opt->capture_default_str();
    bound.emplace_back(opt, std::move(apply));
  }

  SummarizerConfig resolve() const {
    SummarizerConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(Errc::io_error, "cannot open config '" + config_path + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::format_error, std::string("config: ") + e.what());
      }
      apply_config_json(config, j);
    }
    if (method_opt->count() > 0 || config_path.empty()) {
      config.method = kMethods.at(method);
    }
    for (const auto& [opt, apply] : bound) {
      if (opt->count() > 0) apply(config);
    }
    config.validate();
    return config;
  }
};

struct EncoderFlags {
  std::string kind = "tfidf";
  std::string embeddings;
  std::string scope = "per-document";
  std::string similarity = "inner_product";
  bool raw_tfidf = false;

  void add(CLI::App& app) {
    app.add_option("--encoder", kind, "Sentence encoder")
        ->check(CLI::IsMember({"tfidf", "external"}))
        ->capture_default_str();
    app.add_option("--embeddings", embeddings, "JSONL file of precomputed sentence vectors")
        ->check(CLI::ExistingFile);
    app.add_option("--tfidf-scope", scope, "Unit for document frequencies")
        ->check(CLI::IsMember({"per-document", "per-corpus"}))
        ->capture_default_str();
    app.add_option("--similarity", similarity, "Pairwise similarity")
        ->check(CLI::IsMember({"inner_product", "cosine"}))
        ->capture_default_str();
    app.add_flag("--raw-tfidf", raw_tfidf, "Skip L2 normalization of tf-idf vectors");
  }

  EncoderChoice resolve() const {
    EncoderChoice choice;
    choice.kind = parse_encoder(kind);
    choice.scope = scope == "per-corpus" ? TfIdfScope::per_corpus : TfIdfScope::per_document;
    choice.similarity =
        similarity == "cosine" ? SimilarityKind::cosine : SimilarityKind::inner_product;
    choice.l2_normalize = !raw_tfidf;
    if (choice.kind == EncoderKind::external) {
      if (embeddings.empty()) {
        throw CLI::RequiredError("--embeddings is required with --encoder external");
      }
      choice.embeddings = std::make_shared<EmbeddingStore>(EmbeddingStore::load(embeddings));
    }
    return choice;
  }
};

std::string slurp(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(Errc::io_error, "write failure on '" + path + "'");
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

ordered_json trace_json(const Document& doc, const SummarizerConfig& config,
                        const DocumentSummary& summary) {
  ordered_json j;
  j["doc_id"] = doc.id;
  j["config"] = to_json(config);
  j["summary"] = summary.indices;
  j["selection_order"] = summary.selection_order;
  ordered_json rounds = ordered_json::array();
  for (const auto& round : summary.trace) {
    ordered_json r;
    r["round"] = round.round;
    ordered_json scores = ordered_json::array();
    for (std::size_t i = 0; i < round.scores.size(); ++i) {
      if (round.defined(i)) {
        scores.push_back(round.scores[i]);
      } else {
        scores.push_back(nullptr);
      }
    }
    r["scores"] = std::move(scores);
    r["argmax"] = round.argmax();
    rounds.push_back(std::move(r));
  }
  j["rounds"] = std::move(rounds);
  if (summary.textrank) {
    j["textrank"] = {{"ranks", summary.textrank->ranks},
                     {"iterations", summary.textrank->iterations},
                     {"converged", summary.textrank->converged}};
  }
  return j;
}

DatasetSplit read_split(const std::string& path, const std::string& on_error,
                        std::ostream& err) {
  LoadOptions options;
  options.policy = on_error == "skip" ? ErrorPolicy::skip_and_log : ErrorPolicy::fail_fast;
  auto split = load_dataset(path, options);
  for (const auto& w : split.warnings) err << "warning: " << w << '\n';
  return split;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Unsupervised extractive summarization with multi-round selection", "mrsum"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  // summarize
  auto* summarize = app.add_subcommand("summarize", "Summarize one document");
  ConfigFlags sum_config;
  EncoderFlags sum_encoder;
  std::string input_path;
  bool use_stdin = false;
  std::string lang = "latin";
  std::string doc_id = "doc";
  std::string trace_path;
  std::string dump_path;
  auto* input_opt = summarize->add_option("--input", input_path, "Plain-text document")
                        ->check(CLI::ExistingFile);
  auto* stdin_opt = summarize->add_flag("--stdin", use_stdin, "Read the document from stdin");
  input_opt->excludes(stdin_opt);
  summarize->add_option("--lang", lang, "Language profile")
      ->check(CLI::IsMember({"latin", "cjk"}))
      ->capture_default_str();
  summarize->add_option("--doc-id", doc_id, "Document id (for external embeddings)")
      ->capture_default_str();
  summarize->add_option("--trace", trace_path, "Write per-round scores as JSON");
  summarize->add_option("--dump-matrix", dump_path, "Write the similarity matrix as TSV");
  sum_config.add(*summarize, false);
  sum_encoder.add(*summarize);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a method on a dataset");
  ConfigFlags eval_config;
  EncoderFlags eval_encoder;
  std::string eval_dataset;
  std::string eval_out;
  std::string eval_label;
  std::string eval_on_error = "fail";
  std::size_t eval_jobs = 1;
  eval->add_option("--dataset", eval_dataset, "JSONL dataset")->required()->check(CLI::ExistingFile);
  eval->add_option("--out", eval_out, "Report path (stdout when omitted)");
  eval->add_option("--label", eval_label, "Row label used by compare");
  eval->add_option("--jobs", eval_jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  eval->add_option("--on-error", eval_on_error, "Malformed dataset lines: fail or skip")
      ->check(CLI::IsMember({"fail", "skip"}))
      ->capture_default_str();
  eval_config.add(*eval, true);
  eval_encoder.add(*eval);

  // tune
  auto* tune = app.add_subcommand("tune", "Grid-search hyper-parameters on a dataset");
  ConfigFlags tune_config;
  EncoderFlags tune_encoder;
  std::string tune_dataset;
  std::string grid_path;
  std::string objective;
  std::string tune_out;
  std::string log_path;
  std::string tune_on_error = "fail";
  std::size_t tune_jobs = 1;
  std::size_t sample = 0;
  double fraction = 1.0;
  bool add_reduction = false;
  tune->add_option("--dataset", tune_dataset, "JSONL tuning split")->required()->check(CLI::ExistingFile);
  tune->add_option("--grid", grid_path, "JSON grid of candidate values")->required()->check(CLI::ExistingFile);
  tune->add_option("--objective", objective, "Objective (overrides the grid file)")
      ->check(CLI::IsMember({"r1", "r2", "rl"}));
  tune->add_option("--out", tune_out, "Report path (stdout when omitted)");
  tune->add_option("--log", log_path, "Tuning log, one JSON line per grid point");
  tune->add_option("--jobs", tune_jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  tune->add_option("--sample", sample, "Tune on the first N records only (0 = all)")->capture_default_str();
  tune->add_option("--tune-fraction", fraction,
                   "Tune on the leading fraction of records (for datasets without a validation split)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  tune->add_flag("--add-reduction-points", add_reduction,
                 "Extend the alpha axes so every beta pair has alpha1=beta2, alpha2=beta1");
  tune->add_option("--on-error", tune_on_error, "Malformed dataset lines: fail or skip")
      ->check(CLI::IsMember({"fail", "skip"}))
      ->capture_default_str();
  tune_config.add(*tune, true);
  tune_encoder.add(*tune);

  // compare
  auto* compare = app.add_subcommand("compare", "Tabulate evaluation reports");
  std::vector<std::string> result_paths;
  std::string compare_out;
  std::string compare_json;
  compare->add_option("--results", result_paths, "Reports written by eval or tune")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--out", compare_out, "TSV table path");
  compare->add_option("--json", compare_json, "JSON copy (default: <out>.json)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    const auto selected = app.get_subcommands();
    out << (selected.empty() ? app.help() : selected.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mrsum: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (summarize->parsed()) {
      if (input_path.empty() && !use_stdin) {
        throw CLI::RequiredError("one of --input or --stdin");
      }
      const auto config = sum_config.resolve();
      const auto encoder = sum_encoder.resolve();
      std::string text;
      if (use_stdin) {
        text = slurp(in);
      } else {
        std::ifstream file(input_path, std::ios::binary);
        if (!file) throw Error(Errc::io_error, "cannot open '" + input_path + "'");
        text = slurp(file);
      }
      const auto doc = document_from_text(doc_id, text, parse_language(lang));
      const auto summary = summarize_document(doc, config, encoder);
      for (const auto& s : summary_sentences(doc, summary.indices)) out << s << '\n';
      if (!trace_path.empty()) {
        write_file(trace_path, trace_json(doc, config, summary).dump(2) + "\n");
      }
      if (!dump_path.empty()) {
        std::ostringstream tsv;
        if (summary.raw_graph) write_matrix_tsv(tsv, *summary.raw_graph, *summary.graph);
        write_file(dump_path, tsv.str());
      }
      return kExitOk;
    }

    if (eval->parsed()) {
      const auto config = eval_config.resolve();
      const auto encoder = eval_encoder.resolve();
      const auto split = read_split(eval_dataset, eval_on_error, err);
      auto result = evaluate_method(split, config, encoder, eval_jobs);
      if (!eval_label.empty()) result.label = eval_label;
      emit(to_json(result).dump(2) + "\n", eval_out, out);
      return kExitOk;
    }

    if (tune->parsed()) {
      const auto base = tune_config.resolve();
      const auto encoder = tune_encoder.resolve();
      std::ifstream grid_file(grid_path);
      if (!grid_file) throw Error(Errc::io_error, "cannot open '" + grid_path + "'");
      nlohmann::json grid_json;
      try {
        grid_json = nlohmann::json::parse(grid_file);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::format_error, std::string("grid: ") + e.what());
      }
      auto grid = grid_from_json(grid_json);
      if (!objective.empty()) grid.objective = parse_objective(objective);
      if (add_reduction) grid.add_reduction_points();

      const auto full = read_split(tune_dataset, tune_on_error, err);
      if (!(fraction > 0.0)) throw CLI::ValidationError("--tune-fraction must be > 0");
      auto split = take_fraction(full, fraction);
      if (sample > 0) split = take_prefix(split, sample);

      std::ofstream log;
      if (!log_path.empty()) {
        log.open(log_path, std::ios::binary);
        if (!log) throw Error(Errc::io_error, "cannot write '" + log_path + "'");
      }
      auto tuned = grid_search(split, grid, base, encoder, tune_jobs, [&](const GridPoint& p) {
        if (!log.is_open()) return;
        ordered_json line;
        line["config"] = to_json(p.config);
        line["objective"] = p.objective;
        line["aggregate"] = {{"r1", to_json(p.aggregate.r1)},
                             {"r2", to_json(p.aggregate.r2)},
                             {"rl", to_json(p.aggregate.rl)}};
        log << line.dump() << '\n';
      });

      auto& best = tuned.best_result;
      best.notes["tuned_on_records"] = std::to_string(split.records.size());
      best.notes["dataset_records"] = std::to_string(full.records.size());
      best.notes["tune_fraction"] = nlohmann::json(fraction).dump();
      best.notes["objective"] = std::string(to_string(grid.objective));

      ordered_json report;
      report["method"] = to_string(base.method);
      report["grid"] = to_json(grid);
      report["grid_points"] = tuned.points.size();
      report["best_config"] = to_json(tuned.best);
      report["best_objective"] = objective_value(best, grid.objective);
      report["best"] = to_json(best);
      emit(report.dump(2) + "\n", tune_out, out);
      return kExitOk;
    }

    if (compare->parsed()) {
      std::vector<EvalResult> results;
      for (const auto& path : result_paths) {
        std::ifstream file(path);
        if (!file) throw Error(Errc::io_error, "cannot open '" + path + "'");
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(file);
        } catch (const nlohmann::json::parse_error& e) {
          throw Error(Errc::format_error, path + ": " + e.what());
        }
        // tune reports wrap the evaluation of the best configuration
        results.push_back(eval_result_from_json(j.contains("best") ? j["best"] : j));
      }
      const auto report = compare_report(results);
      out << report.table;
      if (!compare_out.empty()) {
        write_file(compare_out, report.table);
        write_file(compare_json.empty() ? compare_out + ".json" : compare_json,
                   report.json.dump(2) + "\n");
      } else if (!compare_json.empty()) {
        write_file(compare_json, report.json.dump(2) + "\n");
      }
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    err << "mrsum: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "mrsum: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "mrsum: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace mrsum

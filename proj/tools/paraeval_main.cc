// Copyright 2026 The paraeval Authors.
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

// paraeval command-line front end.
//
// Subcommands:
//   validate          check a ratings file
//   build-paragraphs  sliding-window paragraphs for each requested k
//   export-training   uniform or stratified training sample
//   score             built-in metric scores (direct or aligned)
//   metaeval          system/segment accuracy, tau optimization, Pearson
//   stats             length percentiles and truncation counts
//   ties              human and metric tie rates
//   compare-modes     Pearson between direct and aligned scores
//   simulate          rater/metric noise simulation
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paraeval/paraeval.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Deleter {
  void operator()(paraeval_ratings* p) const { paraeval_ratings_free(p); }
  void operator()(paraeval_validation* p) const { paraeval_validation_free(p); }
  void operator()(paraeval_paragraphs* p) const { paraeval_paragraphs_free(p); }
  void operator()(paraeval_scores* p) const { paraeval_scores_free(p); }
  void operator()(paraeval_report* p) const { paraeval_report_free(p); }
};

template <typename T>
using Handle = std::unique_ptr<T, Deleter>;

// Carries a C API failure to main().
struct CommandError {
  int exit_code;
  std::string message;
};

void Check(paraeval_status status) {
  if (status == PARAEVAL_OK) return;
  const int code = status == PARAEVAL_ERROR_ARGUMENT ? kExitUsage : kExitData;
  throw CommandError{code, paraeval_last_error()};
}

int DefaultThreads() {
  if (const char* env = std::getenv("PARAEVAL_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return 1;
}

std::vector<int> ParseKs(const std::string& text) {
  std::vector<int> ks(4096);
  std::size_t count = 0;
  Check(paraeval_parse_k_list(text.c_str(), ks.data(), ks.size(), &count));
  if (count > ks.size()) throw CommandError{kExitUsage, "k list too long"};
  ks.resize(count);
  return ks;
}

Handle<paraeval_paragraphs> LoadParagraphs(
    const std::vector<std::string>& paths) {
  paraeval_paragraphs* raw = nullptr;
  Check(paraeval_paragraphs_new(&raw));
  Handle<paraeval_paragraphs> all(raw);
  for (const std::string& path : paths) {
    paraeval_paragraphs* part = nullptr;
    Check(paraeval_paragraphs_read(path.c_str(), &part));
    Handle<paraeval_paragraphs> owned(part);
    Check(paraeval_paragraphs_append(all.get(), owned.get()));
  }
  return all;
}

Handle<paraeval_scores> LoadScores(const std::vector<std::string>& paths) {
  paraeval_scores* raw = nullptr;
  Check(paraeval_scores_new(&raw));
  Handle<paraeval_scores> all(raw);
  for (const std::string& path : paths) {
    paraeval_scores* part = nullptr;
    Check(paraeval_scores_read(path.c_str(), &part));
    Handle<paraeval_scores> owned(part);
    Check(paraeval_scores_append(all.get(), owned.get()));
  }
  return all;
}

std::string FormatValue(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

// One line per (dataset, lang_pair, k, metric, mode) group of rows, then
// warnings on stderr. With report_prefix "-" the full TSV goes to stdout
// instead; any other non-empty prefix gets <prefix>.tsv and <prefix>.jsonl.
void Emit(const paraeval_report* report, const std::string& report_prefix) {
  for (std::size_t i = 0; i < paraeval_report_warning_count(report); ++i) {
    std::cerr << "warning: " << paraeval_report_warning(report, i) << "\n";
  }
  if (report_prefix == "-") {
    std::cout << paraeval_report_tsv(report);
    return;
  }
  std::string current_key;
  std::string line;
  for (std::size_t i = 0; i < paraeval_report_size(report); ++i) {
    paraeval_report_row row;
    Check(paraeval_report_row_at(report, i, &row));
    std::string key = std::string(row.dataset) + " " + row.lang_pair +
                      " k=" + std::to_string(row.k);
    if (std::string(row.metric) != "-") {
      key += " " + std::string(row.metric);
      if (std::string(row.mode) != "-") key += "/" + std::string(row.mode);
    }
    if (key != current_key) {
      if (!line.empty()) std::cout << line << "\n";
      current_key = key;
      line = key + ":";
    }
    line += " " + std::string(row.statistic) + "=" + FormatValue(row.value);
    if (row.has_epsilon && row.epsilon != 0.0) {
      line += "(eps=" + FormatValue(row.epsilon) + ")";
    }
  }
  if (!line.empty()) std::cout << line << "\n";
  if (!report_prefix.empty()) {
    Check(paraeval_report_write(report, report_prefix.c_str()));
  }
}

std::size_t EditDistance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = up;
    }
  }
  return row[b.size()];
}

std::optional<std::string> Suggest(const std::string& word,
                                   const std::vector<std::string>& choices) {
  std::optional<std::string> best;
  std::size_t best_distance = 4;
  for (const std::string& choice : choices) {
    const std::size_t d = EditDistance(word, choice);
    if (d < best_distance) {
      best_distance = d;
      best = choice;
    }
  }
  return best;
}

// Rejects leftover arguments with a "did you mean" hint.
void CheckExtras(const CLI::App* command) {
  const std::vector<std::string> extras = command->remaining();
  if (extras.empty()) return;
  std::vector<std::string> flags;
  for (const CLI::Option* opt : command->get_options()) {
    for (const std::string& name : opt->get_lnames()) flags.push_back("--" + name);
  }
  std::string message = "unknown argument '" + extras.front() + "'";
  std::string word = extras.front();
  if (auto eq = word.find('='); eq != std::string::npos) word.resize(eq);
  if (auto hint = Suggest(word, flags)) {
    message += "; did you mean '" + *hint + "'?";
  }
  throw CommandError{kExitUsage, message + " (see " + command->get_name() +
                                     " --help)"};
}

struct Common {
  int threads = DefaultThreads();
  std::string report;
};

void AddCommon(CLI::App* command, Common& common) {
  command->add_option("--threads", common.threads,
                      "Worker threads (default: $PARAEVAL_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  command->add_option("--report", common.report,
                      "Write <prefix>.tsv and <prefix>.jsonl ('-' prints the "
                      "TSV to stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paragraph-level MT evaluation datasets and metric "
               "meta-evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(paraeval_version()));

  // validate
  std::string ratings_path;
  auto* validate = app.add_subcommand("validate", "Check a ratings file");
  validate->add_option("--ratings", ratings_path, "Ratings file (JSONL)")
      ->required();

  // build-paragraphs
  Common build_common;
  std::string k_text = "1-10";
  std::string out_path;
  auto* build = app.add_subcommand(
      "build-paragraphs", "Build sliding-window paragraphs, one file per k");
  build->add_option("--ratings", ratings_path, "Ratings file (JSONL)")
      ->required();
  build->add_option("--k", k_text, "k values: a-b, a..b or a comma list")
      ->capture_default_str();
  build->add_option("--out", out_path, "Output directory")->required();
  AddCommon(build, build_common);

  // export-training
  std::vector<std::string> paragraph_paths;
  std::string strategy;
  std::size_t size = 0;
  std::string ks_text = "1-10";
  std::uint64_t seed = 0;
  auto* export_cmd =
      app.add_subcommand("export-training", "Sample a training set");
  export_cmd->add_option("--paragraphs", paragraph_paths,
                         "Paragraph files or directories")
      ->required();
  export_cmd->add_option("--strategy", strategy, "uniform or stratified")
      ->required()
      ->check(CLI::IsMember({"uniform", "stratified"}));
  export_cmd->add_option("--size", size, "Number of paragraphs")->required();
  export_cmd->add_option("--ks", ks_text, "Strata for stratified sampling")
      ->capture_default_str();
  export_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  export_cmd->add_option("--out", out_path, "Output file (JSONL)")->required();

  // score
  std::string metric = "bleu";
  std::string mode;
  auto* score = app.add_subcommand("score", "Score paragraphs with BLEU");
  score->add_option("--paragraphs", paragraph_paths,
                    "Paragraph files or directories")
      ->required();
  score->add_option("--metric", metric, "Built-in metric")
      ->capture_default_str();
  score->add_option("--mode", mode, "direct or aligned")
      ->required()
      ->check(CLI::IsMember({"direct", "aligned"}));
  score->add_option("--out", out_path, "Output scores file (TSV)")->required();

  // metaeval
  Common meta_common;
  std::vector<std::string> score_paths;
  std::string level = "all";
  bool tau_opt = false;
  bool pearson = false;
  bool ties_flag = false;
  double calib_fraction = 0.0;
  std::uint64_t calib_seed = 0;
  auto* metaeval =
      app.add_subcommand("metaeval", "Meta-evaluate metric scores");
  metaeval->add_option("--paragraphs", paragraph_paths,
                       "Paragraph files or directories")
      ->required();
  metaeval->add_option("--scores", score_paths, "Scores files (TSV)")
      ->required();
  metaeval->add_option("--level", level, "system, segment or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"system", "segment", "all"}));
  metaeval->add_flag("--tau-opt", tau_opt, "Calibrate metric ties");
  metaeval->add_flag("--pearson", pearson, "No-grouping Pearson");
  metaeval->add_flag("--ties", ties_flag, "Tie rates");
  metaeval->add_option("--calib-fraction", calib_fraction,
                       "Item fraction held out for tau calibration")
      ->check(CLI::Range(0.0, 0.999999));
  metaeval->add_option("--calib-seed", calib_seed, "Seed for the split");
  AddCommon(metaeval, meta_common);

  // stats
  Common stats_common;
  bool lengths = false;
  bool truncation = false;
  std::string percentile_text = "25,50,75";
  std::int64_t budget = 1024;
  std::string counter = "whitespace";
  auto* stats = app.add_subcommand("stats", "Length and truncation statistics");
  stats->add_option("--paragraphs", paragraph_paths,
                    "Paragraph files or directories")
      ->required();
  stats->add_flag("--lengths", lengths, "Hypothesis length percentiles");
  stats->add_option("--percentiles", percentile_text, "Comma list in (0,100)")
      ->capture_default_str();
  stats->add_flag("--truncation", truncation,
                  "Count paragraphs over the token budget");
  stats->add_option("--budget", budget, "Token budget")->capture_default_str();
  stats->add_option("--counter", counter, "whitespace or char")
      ->capture_default_str()
      ->check(CLI::IsMember({"whitespace", "char"}));
  AddCommon(stats, stats_common);

  // ties
  Common ties_common;
  auto* ties = app.add_subcommand("ties", "Tie rates of human and metric scores");
  ties->add_option("--paragraphs", paragraph_paths,
                   "Paragraph files or directories")
      ->required();
  ties->add_option("--scores", score_paths, "Scores files (TSV)");
  AddCommon(ties, ties_common);

  // compare-modes
  Common compare_common;
  std::string direct_path;
  std::string aligned_path;
  std::string compare_metric;
  auto* compare = app.add_subcommand(
      "compare-modes", "Correlate direct and aligned paragraph scores");
  compare->add_option("--paragraphs", paragraph_paths,
                      "Paragraph files or directories")
      ->required();
  auto* metric_opt = compare->add_option(
      "--metric", compare_metric, "Built-in metric to score both ways");
  auto* direct_opt =
      compare->add_option("--direct", direct_path, "Direct scores (TSV)");
  auto* aligned_opt =
      compare->add_option("--aligned", aligned_path, "Aligned scores (TSV)");
  direct_opt->needs(aligned_opt)->excludes(metric_opt);
  aligned_opt->needs(direct_opt)->excludes(metric_opt);
  AddCommon(compare, compare_common);

  // simulate
  Common sim_common;
  std::string config_path;
  std::string sim_ks = "1,2,5,10";
  int n_seeds = 50;
  auto* simulate = app.add_subcommand("simulate", "Noise simulation");
  simulate->add_option("--config", config_path, "key = value config file")
      ->required();
  simulate->add_option("--ks", sim_ks, "k values")->capture_default_str();
  simulate->add_option("--seeds", n_seeds, "Number of seeds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  AddCommon(simulate, sim_common);

  for (CLI::App* command : app.get_subcommands({})) command->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    // A misspelled flag usually surfaces as a missing required option, so
    // unknown arguments are reported first.
    for (const CLI::App* command : app.get_subcommands({})) {
      if (!command->parsed()) continue;
      try {
        CheckExtras(command);
      } catch (const CommandError& extra) {
        std::cerr << "error: " << extra.message << "\n";
        return extra.exit_code;
      }
    }
    std::cerr << "error: " << e.what();
    if (app.get_subcommands().empty() && argc > 1 && argv[1][0] != '-') {
      std::vector<std::string> names;
      for (const CLI::App* command : app.get_subcommands({})) {
        names.push_back(command->get_name());
      }
      std::cerr << "; unknown command '" << argv[1] << "'";
      if (auto hint = Suggest(argv[1], names)) {
        std::cerr << "; did you mean '" << *hint << "'?";
      }
    }
    std::cerr << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) {
      CheckExtras(validate);
      paraeval_validation* raw = nullptr;
      Check(paraeval_validate_file(ratings_path.c_str(), &raw));
      Handle<paraeval_validation> v(raw);
      const std::size_t errors = paraeval_validation_error_count(v.get());
      const std::size_t warnings = paraeval_validation_warning_count(v.get());
      for (std::size_t i = 0; i < errors; ++i) {
        std::cout << "error: " << paraeval_validation_error(v.get(), i) << "\n";
      }
      for (std::size_t i = 0; i < warnings; ++i) {
        std::cout << "warning: " << paraeval_validation_warning(v.get(), i)
                  << "\n";
      }
      std::cout << ratings_path << ": " << paraeval_validation_records(v.get())
                << " records, " << errors << " errors, " << warnings
                << " warnings\n";
      return errors == 0 ? 0 : kExitData;
    }

    if (build->parsed()) {
      CheckExtras(build);
      const std::vector<int> ks = ParseKs(k_text);
      paraeval_ratings* raw = nullptr;
      Check(paraeval_ratings_read(ratings_path.c_str(), &raw));
      Handle<paraeval_ratings> ratings(raw);
      std::vector<paraeval_paragraphs*> built(ks.size(), nullptr);
      Check(paraeval_paragraphs_build_many(ratings.get(), ks.data(), ks.size(),
                                           build_common.threads,
                                           built.data()));
      std::vector<Handle<paraeval_paragraphs>> owned;
      for (paraeval_paragraphs* p : built) owned.emplace_back(p);
      std::error_code ec;
      std::filesystem::create_directories(out_path, ec);
      if (ec) {
        throw CommandError{kExitData, "cannot create output directory " +
                                          out_path + ": " + ec.message()};
      }
      paraeval_paragraphs* all_raw = nullptr;
      Check(paraeval_paragraphs_new(&all_raw));
      Handle<paraeval_paragraphs> all(all_raw);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        const auto file = std::filesystem::path(out_path) /
                          ("paragraphs.k" + std::to_string(ks[i]) + ".jsonl");
        Check(paraeval_paragraphs_write(owned[i].get(), file.c_str()));
        Check(paraeval_paragraphs_append(all.get(), owned[i].get()));
      }
      paraeval_report* report = nullptr;
      Check(paraeval_paragraph_counts(all.get(), &report));
      Handle<paraeval_report> counts(report);
      Emit(counts.get(), build_common.report);
      std::cout << "wrote " << ks.size() << " paragraph files to " << out_path
                << "\n";
      return 0;
    }

    if (export_cmd->parsed()) {
      CheckExtras(export_cmd);
      auto pool = LoadParagraphs(paragraph_paths);
      paraeval_paragraphs* raw = nullptr;
      if (strategy == "uniform") {
        Check(paraeval_sample_uniform(pool.get(), size, seed, &raw));
      } else {
        const std::vector<int> ks = ParseKs(ks_text);
        Check(paraeval_sample_stratified(pool.get(), size, ks.data(),
                                         ks.size(), seed, &raw));
      }
      Handle<paraeval_paragraphs> sample(raw);
      Check(paraeval_paragraphs_write(sample.get(), out_path.c_str()));
      paraeval_report* report = nullptr;
      Check(paraeval_paragraph_counts(sample.get(), &report));
      Handle<paraeval_report> counts(report);
      Emit(counts.get(), "");
      std::cout << "exported " << paraeval_paragraphs_size(sample.get())
                << " paragraphs (" << strategy << ") to " << out_path << "\n";
      return 0;
    }

    if (score->parsed()) {
      CheckExtras(score);
      auto paragraphs = LoadParagraphs(paragraph_paths);
      paraeval_scores* raw = nullptr;
      Check(paraeval_scores_compute(paragraphs.get(), metric.c_str(),
                                    mode.c_str(), &raw));
      Handle<paraeval_scores> scores(raw);
      Check(paraeval_scores_write(scores.get(), out_path.c_str()));
      paraeval_report* report = nullptr;
      Check(paraeval_paragraph_counts(paragraphs.get(), &report));
      Handle<paraeval_report> counts(report);
      Emit(counts.get(), "");
      std::cout << "wrote " << paraeval_scores_entry_count(scores.get())
                << " " << metric << "/" << mode << " scores to " << out_path
                << "\n";
      return 0;
    }

    if (metaeval->parsed()) {
      CheckExtras(metaeval);
      auto paragraphs = LoadParagraphs(paragraph_paths);
      auto scores = LoadScores(score_paths);
      paraeval_metaeval_options options;
      paraeval_metaeval_options_init(&options);
      options.system_level = level != "segment";
      options.segment_level = level != "system";
      options.tau_optimize = tau_opt;
      options.pearson = pearson;
      options.ties = ties_flag;
      options.calibration_fraction = calib_fraction;
      options.calibration_seed = calib_seed;
      options.threads = meta_common.threads;
      if (tau_opt && !options.segment_level) {
        throw CommandError{kExitUsage, "--tau-opt needs segment level"};
      }
      paraeval_report* raw = nullptr;
      Check(paraeval_metaeval(paragraphs.get(), scores.get(), &options, &raw));
      Handle<paraeval_report> report(raw);
      Emit(report.get(), meta_common.report);
      return 0;
    }

    if (stats->parsed()) {
      CheckExtras(stats);
      auto paragraphs = LoadParagraphs(paragraph_paths);
      std::vector<double> percentiles;
      std::stringstream in(percentile_text);
      for (std::string part; std::getline(in, part, ',');) {
        try {
          std::size_t used = 0;
          percentiles.push_back(std::stod(part, &used));
          if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
          throw CommandError{kExitUsage, "invalid percentile '" + part + "'"};
        }
      }
      paraeval_stats_options options;
      paraeval_stats_options_init(&options);
      options.lengths = lengths || !truncation;
      options.percentiles = percentiles.data();
      options.n_percentiles = percentiles.size();
      options.truncation = truncation;
      options.budget = budget;
      options.counter = counter.c_str();
      options.threads = stats_common.threads;
      paraeval_report* raw = nullptr;
      Check(paraeval_stats(paragraphs.get(), &options, &raw));
      Handle<paraeval_report> report(raw);
      Emit(report.get(), stats_common.report);
      return 0;
    }

    if (ties->parsed()) {
      CheckExtras(ties);
      auto paragraphs = LoadParagraphs(paragraph_paths);
      Handle<paraeval_scores> scores;
      if (!score_paths.empty()) scores = LoadScores(score_paths);
      paraeval_report* raw = nullptr;
      Check(paraeval_tie_report(paragraphs.get(), scores.get(),
                                ties_common.threads, &raw));
      Handle<paraeval_report> report(raw);
      Emit(report.get(), ties_common.report);
      return 0;
    }

    if (compare->parsed()) {
      CheckExtras(compare);
      auto paragraphs = LoadParagraphs(paragraph_paths);
      Handle<paraeval_scores> direct;
      Handle<paraeval_scores> aligned;
      if (!direct_path.empty()) {
        direct = LoadScores({direct_path});
        aligned = LoadScores({aligned_path});
      } else {
        const std::string name =
            compare_metric.empty() ? std::string("bleu") : compare_metric;
        paraeval_scores* raw = nullptr;
        Check(paraeval_scores_compute(paragraphs.get(), name.c_str(), "direct",
                                      &raw));
        direct.reset(raw);
        raw = nullptr;
        Check(paraeval_scores_compute(paragraphs.get(), name.c_str(),
                                      "aligned", &raw));
        aligned.reset(raw);
      }
      paraeval_report* raw = nullptr;
      Check(paraeval_compare_modes(paragraphs.get(), direct.get(),
                                   aligned.get(), compare_common.threads,
                                   &raw));
      Handle<paraeval_report> report(raw);
      Emit(report.get(), compare_common.report);
      return 0;
    }

    if (simulate->parsed()) {
      CheckExtras(simulate);
      paraeval_sim_config config;
      Check(paraeval_sim_config_read(config_path.c_str(), &config));
      const std::vector<int> ks = ParseKs(sim_ks);
      paraeval_report* raw = nullptr;
      Check(paraeval_simulate(&config, ks.data(), ks.size(), n_seeds,
                              sim_common.threads, &raw));
      Handle<paraeval_report> report(raw);
      Emit(report.get(), sim_common.report);
      return 0;
    }
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitUsage;
}

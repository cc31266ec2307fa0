#include "parallels/engine.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "parallels/errors.hpp"
#include "parallels/index.hpp"
#include "parallels/validate.hpp"

namespace parallels {

namespace {

constexpr int kMaxSkipgramSets = 8;

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void Config::validate() const {
  if (input_dir.empty()) throw ConfigError("input directory is required");
  if (skipgram_m != skipgram_n + 1)
    throw ConfigError("skip-gram window must be one word longer than the gram");
  if (skipgram_n < 2 || skipgram_n > 12)
    throw ConfigError("skip-gram size must be between 2 and 12");
  if (min_span < skipgram_m)
    throw ConfigError("minimum span must be at least the window size");
  if (min_support < 1) throw ConfigError("minimum support must be positive");
  if (max_gap < 0) throw ConfigError("maximum gap cannot be negative");
  if (vicinity && *vicinity < 0)
    throw ConfigError("vicinity cannot be negative");
  if (lexsub_threshold < 1)
    throw ConfigError("substitution threshold must be positive");
  if (max_iterations < 1) throw ConfigError("iteration count must be positive");
  if (validate_ratio && (*validate_ratio <= 0.0 || *validate_ratio >= 1.0))
    throw ConfigError("validation ratio must be strictly between 0 and 1");
}

Report run_pipeline(const Config& config) {
  config.validate();
  const LetterTable alphabet = LetterTable::hebrew();

  auto texts = read_text_directory(config.input_dir);
  const size_t first_docs = texts.size();
  if (config.second_input_dir) {
    auto more = read_text_directory(*config.second_input_dir);
    texts.insert(texts.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
  }
  const Corpus corpus = Corpus::from_texts(std::move(texts), alphabet);

  const LetterTable table = compute_frequencies(corpus, alphabet);
  const std::vector<uint16_t> codes = reduce_corpus(corpus, table);
  const KeyEncoder encoder(table.alphabet_size(),
                           SkipGramConfig{config.skipgram_n, config.skipgram_m});

  const bool cross = config.second_input_dir.has_value();
  const uint32_t boundary =
      cross ? corpus.doc_start(static_cast<int32_t>(first_docs))
            : static_cast<uint32_t>(corpus.size());

  const auto search = [&](const AlternateCodes* alternates) {
    const SkipGramIndex index = SkipGramIndex::build(
        corpus, codes, encoder, alternates, kMaxSkipgramSets, 0,
        cross ? boundary : UINT32_MAX);
    const auto points = collect_matches(
        index, cross ? 0 : static_cast<uint32_t>(config.effective_vicinity()),
        cross ? boundary : 0, UINT32_MAX);
    const ClusterParams params{config.min_support, config.max_gap,
                               config.min_span};
    auto pairs = cluster_passages(points, params);
    if (config.validate_ratio) {
      const ValidationParams vp{*config.validate_ratio};
      std::erase_if(pairs, [&](const PassagePair& p) {
        return !is_valid_pair(p, corpus, vp);
      });
    }
    return pairs;
  };

  RunOptions options;
  options.freq_threshold = config.lexsub_threshold;
  options.max_iterations = config.max_iterations;
  if (config.seed_list_path)
    options.seed = SubstitutionList::load(*config.seed_list_path);

  IterationOutcome outcome;
  if (config.lexsub_enabled) {
    outcome = run_iterations(corpus, codes, table, search, options);
  } else {
    AlternateCodes alternates;
    const AlternateCodes* alternates_ptr = nullptr;
    if (!options.seed.empty()) {
      alternates = compute_alternates(corpus, options.seed, table);
      alternates_ptr = &alternates;
    }
    outcome.pairs = search(alternates_ptr);
    outcome.stats.push_back({1, options.seed.size(),
                             total_passage_words(outcome.pairs),
                             outcome.pairs.size()});
    outcome.list = options.seed;
  }

  if (config.export_list_path) outcome.list.save(*config.export_list_path);

  Report report;
  auto param = [&](std::string name, std::string value) {
    report.params.emplace_back(std::move(name), std::move(value));
  };
  param("input_dir", config.input_dir.string());
  if (config.second_input_dir)
    param("second_input_dir", config.second_input_dir->string());
  param("min_span", std::to_string(config.min_span));
  param("min_support", std::to_string(config.min_support));
  param("max_gap", std::to_string(config.max_gap));
  param("vicinity", std::to_string(config.effective_vicinity()));
  param("skipgram_n", std::to_string(config.skipgram_n));
  param("skipgram_m", std::to_string(config.skipgram_m));
  param("lexsub", config.lexsub_enabled ? "on" : "off");
  param("lexsub_threshold", std::to_string(config.lexsub_threshold));
  param("max_iterations", std::to_string(config.max_iterations));
  if (config.validate_ratio)
    param("validate_ratio", format_double(*config.validate_ratio));
  if (config.seed_list_path)
    param("seed_list", config.seed_list_path->string());
  param("documents", std::to_string(first_docs));
  param("words", std::to_string(cross ? boundary : corpus.size()));
  if (cross) {
    param("second_documents",
          std::to_string(corpus.documents().size() - first_docs));
    param("second_words", std::to_string(corpus.size() - boundary));
  }
  if (!config.deterministic) report.timestamp = utc_timestamp();

  report.iterations = outcome.stats;
  report.records.reserve(outcome.pairs.size());
  for (const PassagePair& p : outcome.pairs) {
    ReportRecord r;
    r.base_doc = corpus.documents()[p.base_doc].name;
    r.match_doc = corpus.documents()[p.match_doc].name;
    r.base_start_word = corpus.rel_pos(p.base_start);
    r.base_end_word = corpus.rel_pos(p.base_end);
    r.match_start_word = corpus.rel_pos(p.match_start);
    r.match_end_word = corpus.rel_pos(p.match_end);
    const Token& bf = corpus.token(p.base_start);
    const Token& bl = corpus.token(p.base_end);
    const Token& mf = corpus.token(p.match_start);
    const Token& ml = corpus.token(p.match_end);
    r.base_byte_begin = bf.char_offset;
    r.base_byte_end = bl.char_offset + bl.char_len;
    r.match_byte_begin = mf.char_offset;
    r.match_byte_end = ml.char_offset + ml.char_len;
    r.support = p.support;
    r.base_words = p.base_len();
    r.match_words = p.match_len();
    r.base_text = corpus.join_span(p.base_start, p.base_end);
    r.match_text = corpus.join_span(p.match_start, p.match_end);
    report.records.push_back(std::move(r));
  }
  return report;
}

namespace {

void write_tsv(const Report& report, std::ostream& out) {
  out << "# parallels report\n";
  if (!report.timestamp.empty()) out << "# generated\t" << report.timestamp << '\n';
  for (const auto& [name, value] : report.params)
    out << "# param\t" << name << '\t' << value << '\n';
  for (const IterationStats& it : report.iterations)
    out << "# iteration\t" << it.iteration << '\t' << it.list_entries << '\t'
        << it.total_words << '\t' << it.pair_count << '\n';
  out << "# base_doc\tbase_start\tbase_end\tmatch_doc\tmatch_start\t"
         "match_end\tsupport\tbase_text\tmatch_text\n";
  for (const ReportRecord& r : report.records) {
    out << r.base_doc << '\t' << r.base_start_word << '\t' << r.base_end_word
        << '\t' << r.match_doc << '\t' << r.match_start_word << '\t'
        << r.match_end_word << '\t' << r.support << '\t' << r.base_text
        << '\t' << r.match_text << '\n';
  }
}

void write_json(const Report& report, std::ostream& out) {
  nlohmann::json doc;
  auto& params = doc["params"] = nlohmann::json::array();
  if (!report.timestamp.empty())
    params.push_back({{"name", "generated"}, {"value", report.timestamp}});
  for (const auto& [name, value] : report.params)
    params.push_back({{"name", name}, {"value", value}});

  auto& iterations = doc["iterations"] = nlohmann::json::array();
  for (const IterationStats& it : report.iterations)
    iterations.push_back({{"iteration", it.iteration},
                          {"list_entries", it.list_entries},
                          {"total_words", it.total_words},
                          {"pairs", it.pair_count}});

  auto& pairs = doc["pairs"] = nlohmann::json::array();
  for (const ReportRecord& r : report.records)
    pairs.push_back({{"base_doc", r.base_doc},
                     {"base_start", r.base_start_word},
                     {"base_end", r.base_end_word},
                     {"base_byte_begin", r.base_byte_begin},
                     {"base_byte_end", r.base_byte_end},
                     {"base_words", r.base_words},
                     {"match_doc", r.match_doc},
                     {"match_start", r.match_start_word},
                     {"match_end", r.match_end_word},
                     {"match_byte_begin", r.match_byte_begin},
                     {"match_byte_end", r.match_byte_end},
                     {"match_words", r.match_words},
                     {"support", r.support},
                     {"base_text", r.base_text},
                     {"match_text", r.match_text}});

  out << doc.dump(2) << '\n';
}

}  // namespace

void write_report(const Report& report, Config::Format format,
                  std::ostream& out) {
  if (format == Config::Format::kTsv)
    write_tsv(report, out);
  else
    write_json(report, out);
}

void write_report(const Report& report, Config::Format format,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_report(report, format, out);
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace parallels

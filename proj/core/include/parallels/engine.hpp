#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parallels/cluster.hpp"
#include "parallels/lexsub.hpp"

namespace parallels {

// Full pipeline configuration. validate() throws ConfigError on any violated
// constraint; run_pipeline calls it first.
struct Config {
  std::filesystem::path input_dir;
  std::optional<std::filesystem::path> second_input_dir;  // cross-corpus mode

  int min_span = 20;     // k
  int min_support = 3;   // i
  int max_gap = 8;       // j
  std::optional<int> vicinity;  // self-match exclusion radius; default = k

  int skipgram_n = 4;
  int skipgram_m = 5;

  bool lexsub_enabled = true;
  int lexsub_threshold = 2;
  int max_iterations = 4;

  std::optional<double> validate_ratio;  // edit-distance filter, off by default

  std::filesystem::path output_path;  // empty = stdout
  enum class Format { kTsv, kJson };
  Format output_format = Format::kTsv;
  bool deterministic = false;  // omit the timestamp for byte-identical reruns

  std::optional<std::filesystem::path> seed_list_path;    // import before iter 1
  std::optional<std::filesystem::path> export_list_path;  // write the final list

  int effective_vicinity() const { return vicinity.value_or(min_span); }
  void validate() const;
};

// One reported passage pair, resolved to documents. Word positions are
// document-relative and inclusive; byte ranges are [begin, end) into the
// document's UTF-8 text and cover exactly the span's first through last word.
struct ReportRecord {
  std::string base_doc;
  std::string match_doc;
  uint32_t base_start_word = 0;
  uint32_t base_end_word = 0;
  uint32_t match_start_word = 0;
  uint32_t match_end_word = 0;
  uint32_t base_byte_begin = 0;
  uint32_t base_byte_end = 0;
  uint32_t match_byte_begin = 0;
  uint32_t match_byte_end = 0;
  uint32_t support = 0;
  uint32_t base_words = 0;
  uint32_t match_words = 0;
  std::string base_text;
  std::string match_text;
};

struct Report {
  // Ordered (name, value) rows: run parameters and corpus statistics.
  std::vector<std::pair<std::string, std::string>> params;
  std::string timestamp;  // empty under Config::deterministic
  std::vector<IterationStats> iterations;
  std::vector<ReportRecord> records;  // sorted by (base_doc, base_start_word)
};

// corpus -> frequencies -> reduction -> skip-grams -> index -> matches ->
// clusters -> merge -> optional distance filter -> substitution iterations.
// With second_input_dir set the two directories form one combined corpus;
// only first-directory windows are indexed, only second-directory windows
// queried, and reported pairs always have their base in the first directory.
Report run_pipeline(const Config& config);

// TSV: '#'-prefixed header lines, then one 9-field line per record
// (base_doc, base_start, base_end, match_doc, match_start, match_end,
// support, base_text, match_text). JSON: one object with "params",
// "iterations", "pairs" arrays. Both UTF-8 with '\n' newlines.
void write_report(const Report& report, Config::Format format,
                  std::ostream& out);
void write_report(const Report& report, Config::Format format,
                  const std::filesystem::path& path);

}  // namespace parallels

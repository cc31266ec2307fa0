#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "parallels/engine.hpp"
#include "parallels/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Finds approximately parallel passages within a corpus, or between two "
      "corpora, and writes a TSV or JSON report."};
  app.get_formatter()->column_width(34);

  parallels::Config config;
  std::string second_dir, seed_list, export_list, format = "tsv", output;
  int vicinity = -1;
  double validate_ratio = 0.0;
  bool no_lexsub = false;

  app.add_option("--input-dir", config.input_dir, "Directory of corpus text files")
      ->required();
  app.add_option("--second-input-dir", second_dir,
                 "Second corpus; match passages across the two instead of within one");
  app.add_option("--min-span", config.min_span,
                 "Minimum passage length in words (k)")->capture_default_str();
  app.add_option("--min-support", config.min_support,
                 "Minimum matching skip-grams per passage (i)")->capture_default_str();
  app.add_option("--max-gap", config.max_gap,
                 "Maximum words between consecutive matches (j)")->capture_default_str();
  app.add_option("--vicinity", vicinity,
                 "Ignore matches closer than this many words (default: min-span)");
  app.add_option("--skipgram-n", config.skipgram_n,
                 "Words kept per skip-gram")->capture_default_str();
  app.add_option("--skipgram-m", config.skipgram_m,
                 "Window width per skip-gram (must be n + 1)")->capture_default_str();
  app.add_flag("--no-lexsub", no_lexsub,
               "Disable learned lexical substitutions (single search pass)");
  app.add_option("--lexsub-threshold", config.lexsub_threshold,
                 "Occurrences a word pair needs to enter the substitution list")->capture_default_str();
  app.add_option("--max-iterations", config.max_iterations,
                 "Cap on learn-and-search iterations")->capture_default_str();
  app.add_option("--validate-ratio", validate_ratio,
                 "Drop pairs whose edit distance exceeds this fraction of the "
                 "base text (off by default)");
  app.add_option("--seed-list", seed_list,
                 "Substitution list file applied from the first iteration");
  app.add_option("--export-list", export_list,
                 "Write the final substitution list to this file");
  app.add_option("--format", format, "Report format: tsv or json")->capture_default_str()
      ->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--output", output, "Report file (default: stdout)");
  app.add_flag("--deterministic", config.deterministic,
               "Omit the timestamp so identical runs produce identical bytes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (!second_dir.empty()) config.second_input_dir = second_dir;
  if (vicinity >= 0) config.vicinity = vicinity;
  if (validate_ratio != 0.0) config.validate_ratio = validate_ratio;
  if (!seed_list.empty()) config.seed_list_path = seed_list;
  if (!export_list.empty()) config.export_list_path = export_list;
  config.lexsub_enabled = !no_lexsub;
  config.output_format = format == "json" ? parallels::Config::Format::kJson
                                          : parallels::Config::Format::kTsv;
  config.output_path = output;

  try {
    const parallels::Report report = parallels::run_pipeline(config);
    if (config.output_path.empty())
      parallels::write_report(report, config.output_format, std::cout);
    else
      parallels::write_report(report, config.output_format, config.output_path);
  } catch (const parallels::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const parallels::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

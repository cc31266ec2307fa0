#include "parallels/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "parallels/errors.hpp"
#include "parallels/utf8.hpp"

namespace parallels {

std::vector<Token> tokenize(std::string_view text, const LetterTable& alphabet,
                            int32_t doc) {
  std::vector<Token> tokens;
  size_t pos = 0;
  size_t run_start = std::string_view::npos;

  auto flush = [&](size_t end) {
    if (run_start == std::string_view::npos) return;
    Token t;
    t.surface = text.substr(run_start, end - run_start);
    t.doc = doc;
    t.char_offset = static_cast<uint32_t>(run_start);
    t.char_len = static_cast<uint32_t>(end - run_start);
    tokens.push_back(t);
    run_start = std::string_view::npos;
  };

  while (pos < text.size()) {
    const size_t at = pos;
    const int32_t cp = utf8::decode(text, pos);
    if (cp < 0)
      throw std::invalid_argument("invalid UTF-8 at byte " + std::to_string(at));
    if (alphabet.is_letter(static_cast<char32_t>(cp))) {
      if (run_start == std::string_view::npos) run_start = at;
    } else {
      flush(at);
    }
  }
  flush(text.size());
  return tokens;
}

std::vector<std::pair<std::string, std::string>> read_text_directory(
    const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec))
    throw ConfigError("input directory not found: " + directory.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (!name.empty() && name[0] == '.') continue;
    files.push_back(entry.path());
  }
  if (files.empty())
    throw ConfigError("no input files in " + directory.string());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });

  std::vector<std::pair<std::string, std::string>> texts;
  texts.reserve(files.size());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path.string());

    std::string text = std::move(buf).str();
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0)
      text.erase(0, 3);
    texts.emplace_back(path.filename().string(), std::move(text));
  }
  return texts;
}

Corpus Corpus::load(const std::filesystem::path& directory,
                    const LetterTable& alphabet) {
  return from_texts(read_text_directory(directory), alphabet);
}

Corpus Corpus::from_texts(std::vector<std::pair<std::string, std::string>> texts,
                          const LetterTable& alphabet) {
  std::vector<Document> docs;
  docs.reserve(texts.size());
  for (auto& [name, text] : texts) {
    Document doc;
    doc.name = std::move(name);
    doc.text = std::move(text);
    docs.push_back(std::move(doc));
  }
  return build(std::move(docs), alphabet);
}

Corpus Corpus::build(std::vector<Document> docs, const LetterTable& alphabet) {
  if (docs.size() > std::numeric_limits<uint16_t>::max())
    throw ConfigError("too many input files (limit 65535)");

  Corpus corpus;
  corpus.documents_ = std::move(docs);
  corpus.doc_starts_.reserve(corpus.documents_.size() + 1);

  for (size_t d = 0; d < corpus.documents_.size(); ++d) {
    corpus.documents_[d].id = static_cast<int32_t>(d);
    corpus.doc_starts_.push_back(static_cast<uint32_t>(corpus.tokens_.size()));
    std::vector<Token> doc_tokens;
    try {
      doc_tokens = tokenize(corpus.documents_[d].text, alphabet,
                            static_cast<int32_t>(d));
    } catch (const std::invalid_argument& e) {
      throw IoError(corpus.documents_[d].name + ": " + e.what());
    }
    corpus.tokens_.insert(corpus.tokens_.end(), doc_tokens.begin(),
                          doc_tokens.end());
  }
  corpus.doc_starts_.push_back(static_cast<uint32_t>(corpus.tokens_.size()));
  return corpus;
}

std::string Corpus::join_span(uint32_t first, uint32_t last) const {
  std::string out;
  for (uint32_t p = first; p <= last; ++p) {
    if (p > first) out.push_back(' ');
    out.append(tokens_[p].surface);
  }
  return out;
}

}  // namespace parallels

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mint/text.hpp"

namespace mint {

// One token of a dependency-parsed sentence. head_index is the 1-based
// position of the governing token within the sentence, 0 for the root.
struct TokenRow {
  std::string surface;
  std::string lemma;
  std::string pos;
  int head_index = 0;
  std::string relation;
};

using Sentence = std::vector<TokenRow>;

// 0-based column positions in a tab-separated CoNLL-style line.
// Defaults follow the classic 10-column layout:
// ID FORM LEMMA CPOSTAG POSTAG FEATS HEAD DEPREL ...
struct ConllColumns {
  int form = 1;
  int lemma = 2;
  int pos = 4;
  int head = 6;
  int deprel = 7;

  int max_needed() const {
    int m = form;
    if (lemma > m) m = lemma;
    if (pos > m) m = pos;
    if (head > m) m = head;
    if (deprel > m) m = deprel;
    return m;
  }
};

struct ConllReadStats {
  std::uint64_t sentences = 0;
  std::uint64_t rows = 0;
  std::uint64_t rows_skipped = 0;
};

// Streams sentences out of one file, invoking sink per complete sentence.
// Malformed rows (too few columns, non-numeric head, empty form/pos) are
// replaced by placeholders so later head indexes still line up; the
// placeholder never yields arcs or tokens. Returns false if the underlying
// stream failed (e.g. a corrupt gzip member) — callers should then discard
// whatever was consumed from this file.
inline bool read_conll_file(const std::string& path, const ConllColumns& cols,
                            const std::function<void(const Sentence&)>& sink,
                            ConllReadStats& stats) {
  LineReader reader(path);
  if (!reader.ok()) return false;

  Sentence sent;
  std::string line;
  auto flush = [&]() {
    if (!sent.empty()) {
      sink(sent);
      ++stats.sentences;
      sent.clear();
    }
  };

  while (reader.getline(line)) {
    std::string_view view = line;
    if (trim(view).empty()) {
      flush();
      continue;
    }
    if (view.front() == '#') continue;

    ++stats.rows;
    auto fields = split(view, '\t');
    TokenRow row;
    bool good = static_cast<int>(fields.size()) > cols.max_needed();
    if (good) {
      long head = -1;
      good = parse_long(trim(fields[cols.head]), head) && head >= 0;
      if (good) {
        row.surface = lowercase(trim(fields[cols.form]));
        row.lemma = lowercase(trim(fields[cols.lemma]));
        row.pos = std::string(trim(fields[cols.pos]));
        row.head_index = static_cast<int>(head);
        row.relation = std::string(trim(fields[cols.deprel]));
        good = !row.surface.empty() && !row.pos.empty();
      }
    }
    if (!good) {
      ++stats.rows_skipped;
      row = TokenRow{};  // placeholder keeps positions aligned
    }
    sent.push_back(std::move(row));
  }
  if (!reader.ok()) return false;
  flush();
  return true;
}

}  // namespace mint

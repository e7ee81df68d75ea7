#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mint/conll.hpp"
#include "mint/text.hpp"
#include "mint/version.hpp"

namespace mint {

inline bool is_adjective_or_gerund(const std::string& pos) {
  return pos == "JJ" || pos == "JJR" || pos == "JJS" || pos == "VBG";
}

inline bool is_noun(const std::string& pos) {
  return pos == "NN" || pos == "NNS" || pos == "NNP" || pos == "NNPS";
}

// Which dependency arcs enter the pair counts: dependent tag must pass
// dep_ok, its head's tag must pass head_ok.
struct ArcFilter {
  std::function<bool(const std::string&)> dep_ok = is_adjective_or_gerund;
  std::function<bool(const std::string&)> head_ok = is_noun;
};

using CountMap = std::unordered_map<std::string, std::uint64_t>;

// Count tables over a dependency-parsed corpus. pairs_by_head holds the
// filtered (dependent, head) arc counts keyed head-first; marginals and
// pair_total range over those filtered arcs only. token_freq counts every
// token, filtered or not.
struct CorpusIndex {
  std::unordered_map<std::string, CountMap> pairs_by_head;
  CountMap dep_marginal;
  CountMap head_marginal;
  std::uint64_t pair_total = 0;
  CountMap token_freq;
  std::uint64_t token_total = 0;

  bool operator==(const CorpusIndex& other) const {
    return pair_total == other.pair_total && token_total == other.token_total &&
           pairs_by_head == other.pairs_by_head && dep_marginal == other.dep_marginal &&
           head_marginal == other.head_marginal && token_freq == other.token_freq;
  }

  std::uint64_t pair_count(const std::string& dependent, const std::string& head) const {
    auto h = pairs_by_head.find(head);
    if (h == pairs_by_head.end()) return 0;
    auto d = h->second.find(dependent);
    return d == h->second.end() ? 0 : d->second;
  }

  // Dependents of noun with their arc counts, count descending, ties by
  // word ascending.
  std::vector<std::pair<std::string, std::uint64_t>> collocations_of(const std::string& noun) const {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    auto h = pairs_by_head.find(noun);
    if (h == pairs_by_head.end()) return out;
    out.assign(h->second.begin(), h->second.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    return out;
  }

  // Normalized PMI over the filtered-arc event space, in [-1, 1].
  // nullopt when the pair was never seen. The degenerate case where the
  // pair is the only arc in the index (joint probability 1) returns 1.
  std::optional<double> npmi(const std::string& dependent, const std::string& head) const {
    if (pair_total == 0) throw std::runtime_error("npmi: index has no arcs");
    std::uint64_t joint = pair_count(dependent, head);
    if (joint == 0) return std::nullopt;
    if (joint == pair_total) return 1.0;
    double total = static_cast<double>(pair_total);
    double p_joint = static_cast<double>(joint) / total;
    double p_dep = static_cast<double>(dep_marginal.at(dependent)) / total;
    double p_head = static_cast<double>(head_marginal.at(head)) / total;
    return std::log(p_joint / (p_dep * p_head)) / (-std::log(p_joint));
  }

  // Relative frequency over all tokens; 0 for unseen words.
  double rel_freq(const std::string& word) const {
    if (token_total == 0) return 0.0;
    auto it = token_freq.find(word);
    if (it == token_freq.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(token_total);
  }

  void merge_from(const CorpusIndex& other) {
    for (const auto& [head, deps] : other.pairs_by_head) {
      auto& mine = pairs_by_head[head];
      for (const auto& [dep, n] : deps) mine[dep] += n;
    }
    for (const auto& [w, n] : other.dep_marginal) dep_marginal[w] += n;
    for (const auto& [w, n] : other.head_marginal) head_marginal[w] += n;
    for (const auto& [w, n] : other.token_freq) token_freq[w] += n;
    pair_total += other.pair_total;
    token_total += other.token_total;
  }
};

// Accumulates sentences into a CorpusIndex. Rows with an empty surface are
// the reader's malformed-row placeholders and contribute nothing.
class IndexBuilder {
 public:
  explicit IndexBuilder(ArcFilter filter = {}) : filter_(std::move(filter)) {}

  void add(const Sentence& sent) {
    int n = static_cast<int>(sent.size());
    for (const TokenRow& row : sent) {
      if (row.surface.empty()) continue;
      ++index_.token_freq[row.surface];
      ++index_.token_total;
    }
    for (const TokenRow& row : sent) {
      if (row.surface.empty()) continue;
      if (!filter_.dep_ok(row.pos)) continue;
      if (row.head_index < 1 || row.head_index > n) continue;
      const TokenRow& head = sent[row.head_index - 1];
      if (head.surface.empty() || !filter_.head_ok(head.pos)) continue;
      ++index_.pairs_by_head[head.surface][row.surface];
      ++index_.dep_marginal[row.surface];
      ++index_.head_marginal[head.surface];
      ++index_.pair_total;
    }
  }

  CorpusIndex build() { return std::move(index_); }

 private:
  ArcFilter filter_;
  CorpusIndex index_;
};

struct IngestStats {
  std::uint64_t sentences = 0;
  std::uint64_t rows = 0;
  std::uint64_t rows_skipped = 0;
  std::uint64_t arcs_kept = 0;
  std::uint64_t files_ok = 0;
  std::uint64_t files_skipped = 0;
};

struct IngestResult {
  CorpusIndex index;
  IngestStats stats;
};

// Builds one shard per file, discarding a shard wholesale when its stream
// fails (corrupt gzip, short read); good shards merge by count addition,
// so the result does not depend on thread scheduling.
inline IngestResult ingest_conll_files(const std::vector<std::string>& paths,
                                       const ConllColumns& cols = {}, ArcFilter filter = {},
                                       unsigned threads = 1) {
  struct Shard {
    CorpusIndex index;
    ConllReadStats read;
    bool ok = false;
  };
  std::vector<Shard> shards(paths.size());

  auto work = [&](size_t i) {
    IndexBuilder builder(filter);
    ConllReadStats rs;
    bool ok = read_conll_file(paths[i], cols, [&](const Sentence& s) { builder.add(s); }, rs);
    shards[i].read = rs;
    shards[i].ok = ok;
    if (ok) shards[i].index = builder.build();
  };

  if (threads <= 1 || paths.size() <= 1) {
    for (size_t i = 0; i < paths.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(paths.size()));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&]() {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= paths.size()) return;
          work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  IngestResult result;
  for (size_t i = 0; i < shards.size(); ++i) {
    if (!shards[i].ok) {
      ++result.stats.files_skipped;
      continue;
    }
    ++result.stats.files_ok;
    result.stats.sentences += shards[i].read.sentences;
    result.stats.rows += shards[i].read.rows;
    result.stats.rows_skipped += shards[i].read.rows_skipped;
    result.stats.arcs_kept += shards[i].index.pair_total;
    result.index.merge_from(shards[i].index);
  }
  return result;
}

namespace detail {

inline void write_count_table(const std::filesystem::path& path, const CountMap& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::vector<std::pair<std::string, std::uint64_t>> rows(table.begin(), table.end());
  std::sort(rows.begin(), rows.end());
  for (const auto& [w, n] : rows) out << w << '\t' << n << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline CountMap read_count_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CountMap table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    long n = 0;
    if (fields.size() != 2 || !parse_long(fields[1], n) || n < 0)
      throw std::runtime_error("corrupt count table: " + path.string());
    table[std::string(fields[0])] = static_cast<std::uint64_t>(n);
  }
  return table;
}

}  // namespace detail

// Snapshot layout: meta.txt (version + totals) plus sorted tab-separated
// tables pairs.tsv, dep_marginal.tsv, head_marginal.tsv, token_freq.tsv.
inline void save_index(const CorpusIndex& index, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream meta(dir / "meta.txt");
    if (!meta) throw std::runtime_error("cannot write " + (dir / "meta.txt").string());
    meta << "mint-index\t1\t" << kVersion << '\n';
    meta << "pair_total\t" << index.pair_total << '\n';
    meta << "token_total\t" << index.token_total << '\n';
  }
  {
    std::ofstream out(dir / "pairs.tsv");
    if (!out) throw std::runtime_error("cannot write " + (dir / "pairs.tsv").string());
    std::vector<std::pair<std::string, std::pair<std::string, std::uint64_t>>> rows;
    for (const auto& [head, deps] : index.pairs_by_head)
      for (const auto& [dep, n] : deps) rows.push_back({dep, {head, n}});
    std::sort(rows.begin(), rows.end());
    for (const auto& [dep, rest] : rows) out << dep << '\t' << rest.first << '\t' << rest.second << '\n';
    if (!out) throw std::runtime_error("write failed: " + (dir / "pairs.tsv").string());
  }
  detail::write_count_table(dir / "dep_marginal.tsv", index.dep_marginal);
  detail::write_count_table(dir / "head_marginal.tsv", index.head_marginal);
  detail::write_count_table(dir / "token_freq.tsv", index.token_freq);
}

inline CorpusIndex load_index(const std::filesystem::path& dir) {
  std::ifstream meta(dir / "meta.txt");
  if (!meta) throw std::runtime_error("cannot read index snapshot at " + dir.string());
  CorpusIndex index;
  std::string line;
  bool version_ok = false;
  while (std::getline(meta, line)) {
    auto fields = split(line, '\t');
    if (fields.empty()) continue;
    if (fields[0] == "mint-index") {
      version_ok = fields.size() >= 2 && fields[1] == "1";
    } else if (fields[0] == "pair_total" && fields.size() == 2) {
      long n = 0;
      if (!parse_long(fields[1], n)) throw std::runtime_error("corrupt meta.txt");
      index.pair_total = static_cast<std::uint64_t>(n);
    } else if (fields[0] == "token_total" && fields.size() == 2) {
      long n = 0;
      if (!parse_long(fields[1], n)) throw std::runtime_error("corrupt meta.txt");
      index.token_total = static_cast<std::uint64_t>(n);
    }
  }
  if (!version_ok) throw std::runtime_error("unsupported index snapshot version in " + dir.string());

  {
    std::ifstream in(dir / "pairs.tsv");
    if (!in) throw std::runtime_error("cannot read " + (dir / "pairs.tsv").string());
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto fields = split(line, '\t');
      long n = 0;
      if (fields.size() != 3 || !parse_long(fields[2], n) || n < 0)
        throw std::runtime_error("corrupt pairs.tsv");
      index.pairs_by_head[std::string(fields[1])][std::string(fields[0])] =
          static_cast<std::uint64_t>(n);
    }
  }
  index.dep_marginal = detail::read_count_table(dir / "dep_marginal.tsv");
  index.head_marginal = detail::read_count_table(dir / "head_marginal.tsv");
  index.token_freq = detail::read_count_table(dir / "token_freq.tsv");

  std::uint64_t pair_sum = 0, dep_sum = 0, head_sum = 0;
  for (const auto& [head, deps] : index.pairs_by_head)
    for (const auto& [dep, n] : deps) pair_sum += n;
  for (const auto& [w, n] : index.dep_marginal) dep_sum += n;
  for (const auto& [w, n] : index.head_marginal) head_sum += n;
  if (pair_sum != index.pair_total || dep_sum != index.pair_total || head_sum != index.pair_total)
    throw std::runtime_error("index snapshot fails count conservation: " + dir.string());
  return index;
}

}  // namespace mint

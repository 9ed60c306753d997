#include "lowbow/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lowbow {

namespace {

bool is_word_byte(unsigned char ch) {
  return std::isalnum(ch) != 0 || ch >= 0x80;
}

std::mt19937_64 seeded_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

// Largest-remainder apportionment of `total` across group sizes.
std::vector<std::size_t> apportion(const std::vector<std::size_t>& group_sizes,
                                   std::size_t total) {
  const std::size_t n =
      std::accumulate(group_sizes.begin(), group_sizes.end(), std::size_t{0});
  std::vector<std::size_t> counts(group_sizes.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < group_sizes.size(); ++g) {
    const double quota = static_cast<double>(total) *
                         static_cast<double>(group_sizes[g]) / static_cast<double>(n);
    counts[g] = static_cast<std::size_t>(quota);
    assigned += counts[g];
    remainders.emplace_back(quota - static_cast<double>(counts[g]), g);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t r = 0; assigned < total && r < remainders.size(); ++r) {
    const std::size_t g = remainders[r].second;
    if (counts[g] < group_sizes[g]) {
      ++counts[g];
      ++assigned;
    }
  }
  // Rounding can strand a unit when some groups are saturated.
  for (std::size_t g = 0; assigned < total && g < counts.size(); ++g) {
    while (assigned < total && counts[g] < group_sizes[g]) {
      ++counts[g];
      ++assigned;
    }
  }
  return counts;
}

LabeledCorpus subset(const LabeledCorpus& corpus, const std::vector<std::size_t>& idx) {
  LabeledCorpus out;
  out.vocabulary = corpus.vocabulary;
  out.items.reserve(idx.size());
  for (std::size_t i : idx) out.items.push_back(corpus.items[i]);
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (!config.remove_stopwords || config.stopwords.count(current) == 0)
      tokens.push_back(current);
    current.clear();
  };
  for (unsigned char ch : text) {
    if (is_word_byte(ch)) {
      current.push_back(config.lowercase && ch < 0x80
                            ? static_cast<char>(std::tolower(ch))
                            : static_cast<char>(ch));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

int Vocabulary::index_of(const std::string& token) const {
  auto it = token_to_index_.find(token);
  return it == token_to_index_.end() ? 0 : it->second;
}

const std::string& Vocabulary::token_of(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > index_to_token_.size())
    throw std::out_of_range("vocabulary index out of range");
  return index_to_token_[static_cast<std::size_t>(index) - 1];
}

void Vocabulary::append(const std::string& token) {
  if (token_to_index_.count(token) != 0)
    throw std::invalid_argument("duplicate vocabulary token: " + token);
  index_to_token_.push_back(token);
  token_to_index_[token] = static_cast<int>(index_to_token_.size());
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& documents,
                            int min_count) {
  if (min_count < 1) throw std::invalid_argument("min_count must be at least 1");
  std::unordered_map<std::string, std::size_t> counts;
  std::vector<std::string> order;
  for (const auto& doc : documents) {
    for (const auto& token : doc) {
      auto [it, inserted] = counts.emplace(token, 0);
      if (inserted) order.push_back(token);
      ++it->second;
    }
  }
  Vocabulary vocab;
  for (const auto& token : order) {
    if (counts[token] < static_cast<std::size_t>(min_count)) continue;
    if (min_count > 1 && token == Vocabulary::kOovToken)
      throw std::invalid_argument("token collides with reserved OOV sentinel");
    vocab.append(token);
  }
  if (vocab.size() == 0) throw std::invalid_argument("empty vocabulary");
  if (min_count > 1) {
    vocab.append(Vocabulary::kOovToken);
    vocab.oov_index_ = static_cast<int>(vocab.size());
  }
  return vocab;
}

WordSequence encode(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  if (vocab.size() == 0) throw std::invalid_argument("empty vocabulary");
  WordSequence out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    const int idx = vocab.index_of(token);
    if (idx != 0)
      out.push_back(idx);
    else if (vocab.has_oov())
      out.push_back(vocab.oov_index());
  }
  if (out.empty()) throw std::runtime_error("document has no in-vocabulary words");
  return out;
}

std::vector<std::string> decode(const WordSequence& words, const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (int idx : words) out.push_back(vocab.token_of(idx));
  return out;
}

std::vector<std::string> LabeledCorpus::labels() const {
  std::set<std::string> seen;
  for (const auto& item : items) seen.insert(item.label);
  return {seen.begin(), seen.end()};
}

std::vector<LabeledDocument> read_tsv_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
  std::vector<LabeledDocument> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected label<TAB>text");
    docs.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return docs;
}

std::vector<LabeledDocument> read_directory_corpus(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> label_dirs;
  for (const auto& entry : std::filesystem::directory_iterator(path))
    if (entry.is_directory()) label_dirs.push_back(entry.path());
  std::sort(label_dirs.begin(), label_dirs.end());
  if (label_dirs.empty())
    throw std::runtime_error("no label subdirectories under " + path.string());

  std::vector<LabeledDocument> docs;
  for (const auto& dir : label_dirs) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot open " + file.string());
      std::ostringstream text;
      text << in.rdbuf();
      docs.push_back({dir.filename().string(), text.str()});
    }
  }
  return docs;
}

std::vector<LabeledDocument> read_corpus(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return read_directory_corpus(path);
  return read_tsv_corpus(path);
}

LabeledCorpus corpus_from_documents(const std::vector<LabeledDocument>& documents,
                                    const TokenizerConfig& config, int min_count,
                                    std::vector<std::string>* warnings) {
  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(documents.size());
  for (const auto& doc : documents) token_lists.push_back(tokenize(doc.text, config));

  LabeledCorpus corpus;
  corpus.vocabulary = build_vocabulary(token_lists, min_count);
  for (std::size_t i = 0; i < documents.size(); ++i) {
    try {
      corpus.items.push_back({encode(token_lists[i], corpus.vocabulary),
                              documents[i].label});
    } catch (const std::runtime_error&) {
      if (warnings)
        warnings->push_back("skipping document " + std::to_string(i) + " (label " +
                            documents[i].label + "): no in-vocabulary words");
    }
  }
  if (corpus.items.empty())
    throw std::runtime_error("corpus has no documents with in-vocabulary words");
  return corpus;
}

std::pair<LabeledCorpus, LabeledCorpus> split_corpus(const LabeledCorpus& corpus,
                                                     double train_fraction,
                                                     std::uint64_t seed,
                                                     bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("degenerate train fraction");
  const std::size_t n = corpus.size();
  if (n < 2) throw std::invalid_argument("corpus needs at least 2 items to split");
  auto count = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  count = std::clamp<std::size_t>(count, 1, n - 1);
  return split_corpus_by_count(corpus, count, seed, stratified);
}

std::pair<LabeledCorpus, LabeledCorpus> split_corpus_by_count(
    const LabeledCorpus& corpus, std::size_t train_count, std::uint64_t seed,
    bool stratified) {
  std::vector<std::string> labels;
  labels.reserve(corpus.size());
  for (const auto& item : corpus.items) labels.push_back(item.label);
  auto [train_idx, test_idx] =
      split_indices_by_count(labels, train_count, seed, stratified);
  return {subset(corpus, train_idx), subset(corpus, test_idx)};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices_by_count(
    const std::vector<std::string>& labels, std::size_t train_count, std::uint64_t seed,
    bool stratified) {
  const std::size_t n = labels.size();
  if (n < 2) throw std::invalid_argument("corpus needs at least 2 items to split");
  if (train_count < 1 || train_count >= n)
    throw std::invalid_argument("train size must be in [1, corpus size - 1]");

  auto rng = seeded_rng(seed);
  std::vector<std::size_t> train_idx;

  if (stratified) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[labels[i]].push_back(i);
    std::vector<std::size_t> sizes;
    for (const auto& [label, members] : groups) sizes.push_back(members.size());
    const auto quotas = apportion(sizes, train_count);
    std::size_t g = 0;
    for (auto& [label, members] : groups) {
      std::shuffle(members.begin(), members.end(), rng);
      train_idx.insert(train_idx.end(), members.begin(),
                       members.begin() + static_cast<std::ptrdiff_t>(quotas[g]));
      ++g;
    }
  } else {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    train_idx.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(train_count));
  }

  std::sort(train_idx.begin(), train_idx.end());
  std::vector<std::size_t> test_idx;
  test_idx.reserve(n - train_count);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (next < train_idx.size() && train_idx[next] == i)
      ++next;
    else
      test_idx.push_back(i);
  }
  return {std::move(train_idx), std::move(test_idx)};
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  for (std::size_t i = 0; i < vocab.size(); ++i)
    out << (i + 1) << '\t' << vocab.tokens()[i] << '\n';
}

Vocabulary read_vocabulary(std::istream& in) {
  Vocabulary vocab;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("vocabulary line " + std::to_string(lineno) +
                               ": expected index<TAB>token");
    const int idx = std::stoi(line.substr(0, tab));
    if (idx != static_cast<int>(vocab.size()) + 1)
      throw std::runtime_error("vocabulary indices must be contiguous from 1");
    vocab.append(line.substr(tab + 1));
  }
  if (vocab.size() == 0) throw std::runtime_error("empty vocabulary");
  const int sentinel = vocab.index_of(Vocabulary::kOovToken);
  if (sentinel != 0) {
    if (sentinel != static_cast<int>(vocab.size()))
      throw std::runtime_error("OOV sentinel must hold the last index");
    vocab.oov_index_ = sentinel;
  }
  return vocab;
}

}  // namespace lowbow

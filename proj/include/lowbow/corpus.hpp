#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lowbow {

/// A document as 1-based vocabulary indices.
using WordSequence = std::vector<int>;

struct TokenizerConfig {
  bool lowercase = true;
  bool remove_stopwords = false;
  std::unordered_set<std::string> stopwords;
};

/// Lowercases (ASCII) and splits on runs of non-word bytes. Bytes >= 0x80
/// count as word bytes so multi-byte UTF-8 sequences stay intact.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config = {});

/// Token <-> index bijection with contiguous 1-based indices. When built
/// with min_count > 1 the last index is the reserved OOV sentinel.
class Vocabulary {
 public:
  static constexpr const char* kOovToken = "<oov>";

  Vocabulary() = default;

  std::size_t size() const { return index_to_token_.size(); }
  /// 1-based index, or 0 when the token is absent.
  int index_of(const std::string& token) const;
  const std::string& token_of(int index) const;
  bool has_oov() const { return oov_index_ != 0; }
  int oov_index() const { return oov_index_; }

  /// Tokens in index order (position 0 holds index 1).
  const std::vector<std::string>& tokens() const { return index_to_token_; }

  void append(const std::string& token);

 private:
  std::vector<std::string> index_to_token_;
  std::unordered_map<std::string, int> token_to_index_;
  int oov_index_ = 0;

  friend Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>&, int);
  friend Vocabulary read_vocabulary(std::istream&);
};

/// Indexes tokens seen at least min_count times, in first-occurrence order.
/// With min_count > 1 an OOV sentinel is appended at the last index.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& documents,
                            int min_count = 1);

/// Maps tokens to indices; unknown tokens go to the OOV sentinel when the
/// vocabulary has one, otherwise they are dropped.
WordSequence encode(const std::vector<std::string>& tokens, const Vocabulary& vocab);

std::vector<std::string> decode(const WordSequence& words, const Vocabulary& vocab);

struct LabeledDocument {
  std::string label;
  std::string text;
};

struct LabeledCorpus {
  struct Item {
    WordSequence words;
    std::string label;
  };

  std::vector<Item> items;
  Vocabulary vocabulary;

  std::size_t size() const { return items.size(); }
  /// Distinct labels, sorted.
  std::vector<std::string> labels() const;
};

/// Reads `label<TAB>text` lines.
std::vector<LabeledDocument> read_tsv_corpus(const std::filesystem::path& path);
/// Reads a directory-per-label tree of plain-text files.
std::vector<LabeledDocument> read_directory_corpus(const std::filesystem::path& path);
/// Dispatches on whether the path is a directory or a TSV file.
std::vector<LabeledDocument> read_corpus(const std::filesystem::path& path);

/// Tokenizes, builds the vocabulary, and encodes. Documents left with no
/// in-vocabulary words are skipped; a note per skipped document is appended
/// to `warnings` when given.
LabeledCorpus corpus_from_documents(const std::vector<LabeledDocument>& documents,
                                    const TokenizerConfig& config = {},
                                    int min_count = 1,
                                    std::vector<std::string>* warnings = nullptr);

/// Deterministic seeded split. Stratified mode apportions the train quota
/// across labels by largest remainder, so label proportions carry over.
std::pair<LabeledCorpus, LabeledCorpus> split_corpus(const LabeledCorpus& corpus,
                                                     double train_fraction,
                                                     std::uint64_t seed,
                                                     bool stratified = false);

std::pair<LabeledCorpus, LabeledCorpus> split_corpus_by_count(
    const LabeledCorpus& corpus, std::size_t train_count, std::uint64_t seed,
    bool stratified = false);

/// Index-level form of the split; both sides come back sorted ascending.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices_by_count(
    const std::vector<std::string>& labels, std::size_t train_count, std::uint64_t seed,
    bool stratified = false);

/// `index<TAB>token` lines, one per index.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary(std::istream& in);

}  // namespace lowbow

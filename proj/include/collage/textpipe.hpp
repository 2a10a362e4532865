#pragma once

// Text pipeline: tokenize -> stop words -> Porter2 stems -> term frequencies,
// corpus-wide document frequencies, tf·idf vectors, cluster labels, cosine
// similarity and keyword-in-context extraction.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace collage {

using FragmentId = std::string;

/// stem -> raw occurrence count
using TermCounts = std::map<std::string, std::uint32_t>;

/// stem -> (lowercase surface token -> count); used to pick readable label forms.
using SurfaceForms = std::map<std::string, std::map<std::string, std::uint32_t>>;

struct Token {
  std::string text;          // lowercased
  std::size_t offset = 0;    // code-point index into the source text
  std::size_t length = 0;    // in code points
};

/// Lowercases and splits on every non-alphanumeric code point. Tokens shorter
/// than two code points and all-digit tokens are dropped.
std::vector<std::string> tokenize(std::string_view text);
std::vector<Token> tokenize_with_offsets(std::string_view text);

/// The shipped English stop list (data/stopwords.txt), in file order.
const std::vector<std::string>& stopwords();
bool is_stopword(std::string_view token);
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens);

/// Porter2 ("english" Snowball) stemmer. Expects a lowercase token.
std::string stem(std::string_view token);

struct TextAnalysis {
  TermCounts tf;
  SurfaceForms forms;
};

/// Runs the whole per-fragment pipeline over `text`.
TextAnalysis analyze_text(std::string_view text);

/// Global term statistics. Every known fragment has a tf row (possibly empty,
/// e.g. images); n_docs counts only rows with at least one term.
struct CorpusStats {
  std::size_t n_docs = 0;
  std::map<std::string, std::uint32_t> df;
  std::map<FragmentId, TermCounts> tf;
  std::map<FragmentId, SurfaceForms> forms;

  bool contains(const FragmentId& id) const { return tf.contains(id); }

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

/// Inserts (or replaces) the row for `id`.
void on_fragment_added(CorpusStats& stats, const FragmentId& id, std::string_view text);
/// No-op for unknown ids.
void on_fragment_removed(CorpusStats& stats, const FragmentId& id);

struct TermVector {
  std::map<std::string, double> weights;  // never holds zero weights
  std::string owner;

  bool empty() const { return weights.empty(); }
  friend bool operator==(const TermVector&, const TermVector&) = default;
};

/// w(t) = tf(t) * ln(N / df(t)) with the fragment-level statistics.
/// Throws UndefinedIdf when a term with tf > 0 has df = 0 (or df > N).
TermVector tfidf(const TermCounts& tf, const CorpusStats& stats, std::string owner = {});

/// Same weighting with explicit document counts; used for cluster-as-document idf.
TermVector tfidf(const TermCounts& tf, std::size_t n_docs,
                 const std::map<std::string, std::uint32_t>& df, std::string owner = {});

/// Element-wise sum of member tf rows. Throws UnknownId.
TermCounts cluster_tf(std::span<const FragmentId> members, const CorpusStats& stats);

/// Most frequent surface token for `stem` across `members`; ties go to the
/// lexicographically smallest. Falls back to the stem itself.
std::string display_form(const std::string& stem, std::span<const FragmentId> members,
                         const CorpusStats& stats);

struct ClusterDoc {
  std::string key;
  std::vector<FragmentId> member_ids;
};

struct Label {
  std::string stem;
  std::string display;
  double weight = 0.0;

  friend bool operator==(const Label&, const Label&) = default;
};

/// Cluster-level document statistics: N = number of clusters, df = number of
/// clusters whose summed tf contains the term.
struct ClusterCorpus {
  std::vector<TermCounts> tf;  // aligned with the input clusters
  std::size_t n_docs = 0;
  std::map<std::string, std::uint32_t> df;
};

ClusterCorpus cluster_corpus(std::span<const ClusterDoc> clusters, const CorpusStats& stats);

/// Top `max_labels` terms per cluster (aligned with the input) ranked by
/// cluster-level tf·idf, then raw tf, then stem. Zero-weight terms are not
/// labels, except when there is a single cluster: then every idf is zero and
/// terms are ranked by raw tf instead, with the raw count as weight.
std::vector<std::vector<Label>> cluster_labels(std::span<const ClusterDoc> clusters,
                                               const CorpusStats& stats,
                                               std::size_t max_labels = 5);

/// Cosine similarity in [0, 1]; 0 when either vector has zero norm.
double cosine(const TermVector& u, const TermVector& v);

struct KwicHit {
  FragmentId fragment_id;
  std::string keyword;       // the stem searched for
  std::string context;       // UTF-8 window around the match
  std::size_t match_offset;  // code-point index of the match in the fragment text
};

/// One hit per token whose stem equals `keyword`, ordered by offset; each
/// context spans `window_chars` code points either side, clamped to the text.
std::vector<KwicHit> kwic(const FragmentId& id, std::string_view text, const std::string& keyword,
                          std::size_t window_chars);

}  // namespace collage

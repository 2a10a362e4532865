#include "collage/textpipe.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "collage/error.hpp"

namespace collage {

namespace detail {
extern const std::string_view kStopwordsText;
}

namespace {

struct CodePoint {
  char32_t value;
  std::size_t byte_offset;
  std::size_t byte_length;
};

// Invalid bytes decode as U+FFFD one byte at a time.
std::vector<CodePoint> decode_utf8(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = 0xFFFD;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back({0xFFFD, i, 1});
      ++i;
      continue;
    }
    bool ok = i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back({0xFFFD, i, 1});
      ++i;
      continue;
    }
    out.push_back({cp, i, len});
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// ASCII digits and letters, plus non-ASCII code points outside the common
// punctuation/symbol blocks. Locale-independent.
bool is_word_char(char32_t c) {
  if (c < 0x80) return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;  // punctuation, symbols, arrows, shapes
  if (c >= 0x3000 && c <= 0x303F) return false;  // CJK punctuation
  if (c >= 0xFE30 && c <= 0xFE4F) return false;
  if (c >= 0xFF00 && c <= 0xFF0F) return false;
  if (c >= 0xFF1A && c <= 0xFF20) return false;
  if (c == 0xFFFD || c == 0xFEFF) return false;
  if (c >= 0x1F000 && c <= 0x1FAFF) return false;  // emoji
  return true;
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0xC0) return c;
  if (c <= 0xDE && c != 0xD7) return c + 32;                     // Latin-1
  if (c >= 0x100 && c <= 0x17F && c != 0x130 && c != 0x138 && c != 0x149 && c != 0x178) {
    // Latin Extended-A pairs: even upper / odd lower, except 0x139-0x148 and 0x179-0x17E
    // where the parity flips.
    const bool flipped = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    const bool upper = flipped ? (c % 2 == 1) : (c % 2 == 0);
    return upper ? c + 1 : c;
  }
  if (c == 0x178) return 0xFF;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;     // Greek
  if (c >= 0x410 && c <= 0x42F) return c + 32;                   // Cyrillic
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

const std::set<std::string, std::less<>>& stopword_set() {
  static const std::set<std::string, std::less<>> set(stopwords().begin(), stopwords().end());
  return set;
}

}  // namespace

std::vector<Token> tokenize_with_offsets(std::string_view text) {
  const auto cps = decode_utf8(text);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_word_char(cps[i].value)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    Token tok;
    bool all_digits = true;
    for (; i < cps.size() && is_word_char(cps[i].value); ++i) {
      append_utf8(tok.text, to_lower(cps[i].value));
      all_digits = all_digits && is_digit(cps[i].value);
    }
    tok.offset = start;
    tok.length = i - start;
    if (tok.length >= 2 && !all_digits) tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize_with_offsets(text)) out.push_back(std::move(t.text));
  return out;
}

const std::vector<std::string>& stopwords() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w;
    std::string_view rest = detail::kStopwordsText;
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      auto line = rest.substr(0, nl);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty() && line.front() != '#') w.emplace_back(line);
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
    return w;
  }();
  return words;
}

bool is_stopword(std::string_view token) { return stopword_set().contains(token); }

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens) {
  std::erase_if(tokens, [](const std::string& t) { return is_stopword(t); });
  return tokens;
}

TextAnalysis analyze_text(std::string_view text) {
  TextAnalysis a;
  for (const auto& tok : remove_stopwords(tokenize(text))) {
    auto s = stem(tok);
    ++a.tf[s];
    ++a.forms[s][tok];
  }
  return a;
}

void on_fragment_removed(CorpusStats& stats, const FragmentId& id) {
  auto it = stats.tf.find(id);
  if (it == stats.tf.end()) return;
  if (!it->second.empty()) {
    --stats.n_docs;
    for (const auto& [term, _] : it->second) {
      auto df = stats.df.find(term);
      if (--df->second == 0) stats.df.erase(df);
    }
  }
  stats.tf.erase(it);
  stats.forms.erase(id);
}

void on_fragment_added(CorpusStats& stats, const FragmentId& id, std::string_view text) {
  on_fragment_removed(stats, id);
  auto analysis = analyze_text(text);
  if (!analysis.tf.empty()) {
    ++stats.n_docs;
    for (const auto& [term, _] : analysis.tf) ++stats.df[term];
    stats.forms[id] = std::move(analysis.forms);
  }
  stats.tf[id] = std::move(analysis.tf);
}

TermVector tfidf(const TermCounts& tf, std::size_t n_docs,
                 const std::map<std::string, std::uint32_t>& df, std::string owner) {
  TermVector v;
  v.owner = std::move(owner);
  for (const auto& [term, count] : tf) {
    if (count == 0) continue;
    const auto it = df.find(term);
    const std::uint32_t d = it == df.end() ? 0 : it->second;
    if (d == 0 || d > n_docs)
      throw Error(Errc::UndefinedIdf, "term '" + term + "' has df=" + std::to_string(d) +
                                          " with N=" + std::to_string(n_docs));
    if (d == n_docs) continue;
    v.weights.emplace(term, count * std::log(static_cast<double>(n_docs) / d));
  }
  return v;
}

TermVector tfidf(const TermCounts& tf, const CorpusStats& stats, std::string owner) {
  return tfidf(tf, stats.n_docs, stats.df, std::move(owner));
}

TermCounts cluster_tf(std::span<const FragmentId> members, const CorpusStats& stats) {
  TermCounts sum;
  for (const auto& id : members) {
    const auto it = stats.tf.find(id);
    if (it == stats.tf.end()) throw Error(Errc::UnknownId, "no term row for fragment " + id);
    for (const auto& [term, count] : it->second) sum[term] += count;
  }
  return sum;
}

std::string display_form(const std::string& stem, std::span<const FragmentId> members,
                         const CorpusStats& stats) {
  std::map<std::string, std::uint32_t> counts;
  for (const auto& id : members) {
    const auto f = stats.forms.find(id);
    if (f == stats.forms.end()) continue;
    const auto s = f->second.find(stem);
    if (s == f->second.end()) continue;
    for (const auto& [surface, n] : s->second) counts[surface] += n;
  }
  std::string best = stem;
  std::uint32_t best_n = 0;
  for (const auto& [surface, n] : counts) {
    if (n > best_n) {
      best = surface;
      best_n = n;
    }
  }
  return best;
}

ClusterCorpus cluster_corpus(std::span<const ClusterDoc> clusters, const CorpusStats& stats) {
  ClusterCorpus cc;
  cc.n_docs = clusters.size();
  cc.tf.reserve(clusters.size());
  for (const auto& c : clusters) {
    cc.tf.push_back(cluster_tf(c.member_ids, stats));
    for (const auto& [term, _] : cc.tf.back()) ++cc.df[term];
  }
  return cc;
}

std::vector<std::vector<Label>> cluster_labels(std::span<const ClusterDoc> clusters,
                                               const CorpusStats& stats,
                                               std::size_t max_labels) {
  const auto cc = cluster_corpus(clusters, stats);
  const bool single = clusters.size() == 1;
  std::vector<std::vector<Label>> out;
  out.reserve(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto& tf = cc.tf[i];
    struct Ranked {
      double weight;
      std::uint32_t raw;
      const std::string* stem;
    };
    std::vector<Ranked> ranked;
    if (single) {
      for (const auto& [term, n] : tf) ranked.push_back({static_cast<double>(n), n, &term});
    } else {
      const auto v = tfidf(tf, cc.n_docs, cc.df);
      for (const auto& [term, w] : v.weights) {
        const auto it = tf.find(term);  // keys of tf outlive v
        ranked.push_back({w, it->second, &it->first});
      }
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      if (a.raw != b.raw) return a.raw > b.raw;
      return *a.stem < *b.stem;
    });
    if (ranked.size() > max_labels) ranked.resize(max_labels);
    std::vector<Label> labels;
    for (const auto& r : ranked)
      labels.push_back({*r.stem, display_form(*r.stem, clusters[i].member_ids, stats), r.weight});
    out.push_back(std::move(labels));
  }
  return out;
}

double cosine(const TermVector& u, const TermVector& v) {
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (const auto& [_, w] : u.weights) nu += w * w;
  for (const auto& [_, w] : v.weights) nv += w * w;
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const auto& small = u.weights.size() <= v.weights.size() ? u.weights : v.weights;
  const auto& large = u.weights.size() <= v.weights.size() ? v.weights : u.weights;
  for (const auto& [term, w] : small) {
    const auto it = large.find(term);
    if (it != large.end()) dot += w * it->second;
  }
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), 0.0, 1.0);
}

std::vector<KwicHit> kwic(const FragmentId& id, std::string_view text, const std::string& keyword,
                          std::size_t window_chars) {
  std::vector<KwicHit> hits;
  const auto tokens = tokenize_with_offsets(text);
  if (tokens.empty()) return hits;
  const auto cps = decode_utf8(text);
  for (const auto& tok : tokens) {
    if (is_stopword(tok.text) || stem(tok.text) != keyword) continue;
    const std::size_t from = tok.offset > window_chars ? tok.offset - window_chars : 0;
    const std::size_t to = std::min(cps.size(), tok.offset + tok.length + window_chars);
    const std::size_t b0 = cps[from].byte_offset;
    const std::size_t b1 = to == cps.size() ? text.size() : cps[to].byte_offset;
    hits.push_back({id, keyword, std::string(text.substr(b0, b1 - b0)), tok.offset});
  }
  return hits;
}

}  // namespace collage

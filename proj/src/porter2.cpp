// Porter2 English stemmer, following the current Snowball "english" program
// (including the arsen/commun/emerg/gener/inter/later/organ/past/univers
// prefixes, the -ogist and -lessli rules and the dying/evening style -ing
// handling). Operates on bytes; non-ASCII bytes count as consonants.

#include <algorithm>
#include <array>
#include <string>
#include <string_view>

#include "collage/textpipe.hpp"

namespace collage {

namespace {

struct Among {
  std::string_view s;
  int result;
};

bool in_set(std::string_view set, char c) { return set.find(c) != std::string_view::npos; }

constexpr std::string_view kVowels = "aeiouy";
constexpr std::string_view kVowelsWXY = "Yaeiouwxy";
constexpr std::string_view kValidLi = "cdeghkmnrt";
constexpr std::string_view kAeo = "aeo";

// Suffix tables. find_among_b returns the result of the longest entry that
// ends at the cursor, so table order does not matter.
constexpr std::array<Among, 9> kPrefixes{{{"arsen", -1}, {"commun", -1}, {"emerg", -1},
                                          {"gener", -1}, {"inter", -1}, {"later", -1},
                                          {"organ", -1}, {"past", -1}, {"univers", -1}}};
constexpr std::array<Among, 3> kApostrophe{{{"'", 1}, {"'s'", 1}, {"'s", 1}}};
constexpr std::array<Among, 6> kStep1a{
    {{"ied", 2}, {"s", 3}, {"ies", 2}, {"sses", 1}, {"ss", -1}, {"us", -1}}};
constexpr std::array<Among, 3> kEedExceptions{{{"succ", 1}, {"proc", 1}, {"exc", 1}}};
constexpr std::array<Among, 7> kIngExceptions{{{"even", 2},
                                               {"cann", 2},
                                               {"inn", 2},
                                               {"earr", 2},
                                               {"herr", 2},
                                               {"out", 2},
                                               {"y", 1}}};
constexpr std::array<Among, 7> kStep1b{{{"", -1},
                                        {"ed", 2},
                                        {"eed", 1},
                                        {"ing", 3},
                                        {"edly", 2},
                                        {"eedly", 1},
                                        {"ingly", 2}}};
constexpr std::array<Among, 13> kStep1bTail{{{"", 3},
                                             {"bb", 2},
                                             {"dd", 2},
                                             {"ff", 2},
                                             {"gg", 2},
                                             {"bl", 1},
                                             {"mm", 2},
                                             {"nn", 2},
                                             {"pp", 2},
                                             {"rr", 2},
                                             {"at", 1},
                                             {"tt", 2},
                                             {"iz", 1}}};
constexpr std::array<Among, 25> kStep2{{{"anci", 3},     {"enci", 2},     {"ogi", 14},
                                        {"li", 16},      {"bli", 12},     {"abli", 4},
                                        {"alli", 8},     {"fulli", 9},    {"lessli", 15},
                                        {"ousli", 10},   {"entli", 5},    {"aliti", 8},
                                        {"biliti", 12},  {"iviti", 11},   {"tional", 1},
                                        {"ational", 7},  {"alism", 8},    {"ation", 7},
                                        {"ization", 6},  {"izer", 6},     {"ator", 7},
                                        {"iveness", 11}, {"fulness", 9},  {"ousness", 10},
                                        {"ogist", 13}}};
constexpr std::array<std::string_view, 16> kStep2Replacements{
    "", "tion", "ence", "ance", "able", "ent", "ize", "ate",
    "al", "ful", "ous", "ive", "ble", "og", "og", "less"};
constexpr std::array<Among, 9> kStep3{{{"icate", 4},
                                       {"ative", 6},
                                       {"alize", 3},
                                       {"iciti", 4},
                                       {"ical", 4},
                                       {"tional", 1},
                                       {"ational", 2},
                                       {"ful", 5},
                                       {"ness", 5}}};
constexpr std::array<Among, 18> kStep4{{{"ic", 1},   {"ance", 1}, {"ence", 1}, {"able", 1},
                                        {"ible", 1}, {"ate", 1},  {"ive", 1},  {"ize", 1},
                                        {"iti", 1},  {"al", 1},   {"ism", 1},  {"ion", 2},
                                        {"er", 1},   {"ous", 1},  {"ant", 1},  {"ent", 1},
                                        {"ment", 1}, {"ement", 1}}};
constexpr std::array<Among, 2> kStep5{{{"e", 1}, {"l", 2}}};

struct Exception {
  std::string_view word;
  std::string_view stem;
};
constexpr std::array<Exception, 15> kExceptions{{{"andes", "andes"},
                                                 {"atlas", "atlas"},
                                                 {"bias", "bias"},
                                                 {"cosmos", "cosmos"},
                                                 {"early", "earli"},
                                                 {"gently", "gentl"},
                                                 {"howe", "howe"},
                                                 {"idly", "idl"},
                                                 {"news", "news"},
                                                 {"only", "onli"},
                                                 {"singly", "singl"},
                                                 {"skies", "sky"},
                                                 {"skis", "ski"},
                                                 {"sky", "sky"},
                                                 {"ugly", "ugli"}}};

class Machine {
 public:
  explicit Machine(std::string word)
      : s_(std::move(word)), limit_(static_cast<int>(s_.size())), ket_(limit_) {}

  std::string run();

 private:
  char at(int i) const { return s_[static_cast<std::size_t>(i)]; }

  bool in_grouping(std::string_view g) {
    if (cursor_ >= limit_ || !in_set(g, at(cursor_))) return false;
    ++cursor_;
    return true;
  }
  bool go_in_grouping(std::string_view g) {
    for (; cursor_ < limit_; ++cursor_)
      if (!in_set(g, at(cursor_))) return true;
    return false;
  }
  bool go_out_grouping(std::string_view g) {
    for (; cursor_ < limit_; ++cursor_)
      if (in_set(g, at(cursor_))) return true;
    return false;
  }
  bool in_grouping_b(std::string_view g) {
    if (cursor_ <= lb_ || !in_set(g, at(cursor_ - 1))) return false;
    --cursor_;
    return true;
  }
  bool out_grouping_b(std::string_view g) {
    if (cursor_ <= lb_ || in_set(g, at(cursor_ - 1))) return false;
    --cursor_;
    return true;
  }
  bool go_out_grouping_b(std::string_view g) {
    for (; cursor_ > lb_; --cursor_)
      if (in_set(g, at(cursor_ - 1))) return true;
    return false;
  }
  bool eq_s_b(std::string_view t) {
    const int n = static_cast<int>(t.size());
    if (cursor_ - lb_ < n || std::string_view(s_).substr(cursor_ - n, n) != t) return false;
    cursor_ -= n;
    return true;
  }
  bool char_b(char c) {
    if (cursor_ <= lb_ || at(cursor_ - 1) != c) return false;
    --cursor_;
    return true;
  }

  template <std::size_t N>
  int find_among(const std::array<Among, N>& v) {
    const Among* best = nullptr;
    for (const auto& a : v) {
      const int n = static_cast<int>(a.s.size());
      if (limit_ - cursor_ < n || std::string_view(s_).substr(cursor_, n) != a.s) continue;
      if (!best || a.s.size() > best->s.size()) best = &a;
    }
    if (!best) return 0;
    cursor_ += static_cast<int>(best->s.size());
    return best->result;
  }

  template <std::size_t N>
  int find_among_b(const std::array<Among, N>& v) {
    const Among* best = nullptr;
    for (const auto& a : v) {
      const int n = static_cast<int>(a.s.size());
      if (cursor_ - lb_ < n || std::string_view(s_).substr(cursor_ - n, n) != a.s) continue;
      if (!best || a.s.size() > best->s.size()) best = &a;
    }
    if (!best) return 0;
    cursor_ -= static_cast<int>(best->s.size());
    return best->result;
  }

  void slice_from(std::string_view t) {
    const int adjust = static_cast<int>(t.size()) - (ket_ - bra_);
    s_.replace(static_cast<std::size_t>(bra_), static_cast<std::size_t>(ket_ - bra_), t);
    limit_ += adjust;
    if (cursor_ >= ket_)
      cursor_ += adjust;
    else if (cursor_ > bra_)
      cursor_ = bra_;
    ket_ = bra_ + static_cast<int>(t.size());
  }
  void slice_del() { slice_from(""); }

  bool r1() const { return p1_ <= cursor_; }
  bool r2() const { return p2_ <= cursor_; }

  void prelude();
  void mark_regions();
  bool shortv();
  void step_1a();
  void step_1b();
  void step_1c();
  void step_2();
  void step_3();
  void step_4();
  void step_5();
  void postlude();

  std::string s_;
  int cursor_ = 0;
  int limit_;
  int lb_ = 0;
  int bra_ = 0;
  int ket_;
  int p1_ = 0;
  int p2_ = 0;
  bool y_found_ = false;
};

void Machine::prelude() {
  if (cursor_ < limit_ && at(cursor_) == '\'') {
    bra_ = cursor_;
    ket_ = cursor_ + 1;
    slice_del();
  }
  if (cursor_ < limit_ && at(cursor_) == 'y') {
    bra_ = cursor_;
    ket_ = cursor_ + 1;
    slice_from("Y");
    y_found_ = true;
  }
  // Every y that follows a vowel becomes Y.
  for (;;) {
    bool found = false;
    for (;;) {
      const int mark = cursor_;
      if (in_grouping(kVowels) && cursor_ < limit_ && at(cursor_) == 'y') {
        bra_ = cursor_;
        ket_ = cursor_ + 1;
        cursor_ = mark;
        found = true;
        break;
      }
      cursor_ = mark;
      if (cursor_ >= limit_) break;
      ++cursor_;
    }
    if (!found) break;
    slice_from("Y");
    y_found_ = true;
  }
  cursor_ = 0;
}

void Machine::mark_regions() {
  p1_ = limit_;
  p2_ = limit_;
  const auto scan = [this] {
    if (find_among(kPrefixes) == 0) {
      if (!go_out_grouping(kVowels)) return;
      ++cursor_;
      if (!go_in_grouping(kVowels)) return;
      ++cursor_;
    }
    p1_ = cursor_;
    if (!go_out_grouping(kVowels)) return;
    ++cursor_;
    if (!go_in_grouping(kVowels)) return;
    ++cursor_;
    p2_ = cursor_;
  };
  scan();
  cursor_ = 0;
}

bool Machine::shortv() {
  const int mark = limit_ - cursor_;
  if (out_grouping_b(kVowelsWXY) && in_grouping_b(kVowels) && out_grouping_b(kVowels)) return true;
  cursor_ = limit_ - mark;
  if (out_grouping_b(kVowels) && in_grouping_b(kVowels) && cursor_ <= lb_) return true;
  cursor_ = limit_ - mark;
  return eq_s_b("past");
}

void Machine::step_1a() {
  const int mark = limit_ - cursor_;
  ket_ = cursor_;
  if (find_among_b(kApostrophe) == 0) {
    cursor_ = limit_ - mark;
  } else {
    bra_ = cursor_;
    slice_del();
  }
  ket_ = cursor_;
  const int v = find_among_b(kStep1a);
  if (v == 0) return;
  bra_ = cursor_;
  if (v == 1) {
    slice_from("ss");
  } else if (v == 2) {
    slice_from(cursor_ - 2 >= lb_ ? "i" : "ie");
  } else if (v == 3) {
    if (cursor_ <= lb_) return;
    --cursor_;
    if (!go_out_grouping_b(kVowels)) return;
    --cursor_;
    slice_del();
  }
}

void Machine::step_1b() {
  ket_ = cursor_;
  int v = find_among_b(kStep1b);
  bra_ = cursor_;
  const int suffix_start = limit_ - cursor_;

  bool general = false;
  if (v == 1) {
    if (r1()) {
      const int mark = limit_ - cursor_;
      if (!(find_among_b(kEedExceptions) != 0 && cursor_ <= lb_)) {
        cursor_ = limit_ - mark;
        slice_from("ee");
      }
    }
    return;
  } else if (v == 2) {
    general = true;
  } else if (v == 3) {
    const int w = find_among_b(kIngExceptions);
    if (w == 0) {
      general = true;
    } else if (w == 1) {
      const int mark = limit_ - cursor_;
      if (out_grouping_b(kVowels) && cursor_ <= lb_) {
        cursor_ = limit_ - mark;
        bra_ = cursor_;
        slice_from("ie");
        return;
      }
      general = true;
    } else {
      if (cursor_ > lb_) general = true;
      else return;
    }
  }
  if (!general) return;

  cursor_ = limit_ - suffix_start;
  const int mark = limit_ - cursor_;
  if (!go_out_grouping_b(kVowels)) return;
  cursor_ = limit_ - mark;
  slice_del();
  ket_ = cursor_;
  bra_ = cursor_;
  const int tail_mark = limit_ - cursor_;
  v = find_among_b(kStep1bTail);
  if (v == 1) {
    slice_from("e");
    return;
  }
  if (v == 2) {
    const int m = limit_ - cursor_;
    if (in_grouping_b(kAeo) && cursor_ <= lb_) return;
    cursor_ = limit_ - m;
  } else {
    if (cursor_ != p1_) return;
    if (!shortv()) return;
    cursor_ = limit_ - tail_mark;
    slice_from("e");
    return;
  }
  cursor_ = limit_ - tail_mark;
  ket_ = cursor_;
  if (cursor_ <= lb_) return;
  --cursor_;
  bra_ = cursor_;
  slice_del();
}

void Machine::step_1c() {
  ket_ = cursor_;
  if (!char_b('y') && !char_b('Y')) return;
  bra_ = cursor_;
  if (!out_grouping_b(kVowels)) return;
  if (cursor_ <= lb_) return;
  slice_from("i");
}

void Machine::step_2() {
  ket_ = cursor_;
  const int v = find_among_b(kStep2);
  if (v == 0) return;
  bra_ = cursor_;
  if (!r1()) return;
  if (v == 14) {
    if (!char_b('l')) return;
    slice_from("og");
  } else if (v == 16) {
    if (!in_grouping_b(kValidLi)) return;
    slice_del();
  } else {
    slice_from(kStep2Replacements[static_cast<std::size_t>(v)]);
  }
}

void Machine::step_3() {
  ket_ = cursor_;
  const int v = find_among_b(kStep3);
  if (v == 0) return;
  bra_ = cursor_;
  if (!r1()) return;
  switch (v) {
    case 1: slice_from("tion"); break;
    case 2: slice_from("ate"); break;
    case 3: slice_from("al"); break;
    case 4: slice_from("ic"); break;
    case 5: slice_del(); break;
    default:
      if (r2()) slice_del();
  }
}

void Machine::step_4() {
  ket_ = cursor_;
  const int v = find_among_b(kStep4);
  if (v == 0) return;
  bra_ = cursor_;
  if (!r2()) return;
  if (v == 1) {
    slice_del();
  } else if (char_b('s') || char_b('t')) {
    slice_del();
  }
}

void Machine::step_5() {
  ket_ = cursor_;
  const int v = find_among_b(kStep5);
  if (v == 0) return;
  bra_ = cursor_;
  if (v == 1) {
    if (!r2()) {
      if (!r1()) return;
      const int mark = limit_ - cursor_;
      if (shortv()) return;
      cursor_ = limit_ - mark;
    }
    slice_del();
  } else {
    if (!r2()) return;
    if (!char_b('l')) return;
    slice_del();
  }
}

void Machine::postlude() {
  if (!y_found_) return;
  std::replace(s_.begin(), s_.end(), 'Y', 'y');
}

std::string Machine::run() {
  for (const auto& e : kExceptions)
    if (s_ == e.word) return std::string(e.stem);
  if (limit_ < 3) return s_;

  prelude();
  mark_regions();
  lb_ = cursor_;
  cursor_ = limit_;
  // Each step starts from the end of the word.
  step_1a();
  cursor_ = limit_;
  step_1b();
  cursor_ = limit_;
  step_1c();
  cursor_ = limit_;
  step_2();
  cursor_ = limit_;
  step_3();
  cursor_ = limit_;
  step_4();
  cursor_ = limit_;
  step_5();
  cursor_ = lb_;
  postlude();
  return s_.substr(0, static_cast<std::size_t>(limit_));
}

}  // namespace

std::string stem(std::string_view token) { return Machine(std::string(token)).run(); }

}  // namespace collage

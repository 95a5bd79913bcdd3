#include "polfair/lexical.hpp"

#include <algorithm>
#include <array>

#include "polfair/error.hpp"
#include "polfair/text.hpp"

namespace polfair {

std::string_view to_string(Language lang) {
  return lang == Language::German ? "german" : "english";
}

namespace {

bool is_hyphen(char32_t c) { return c == U'-' || c == 0x2010 || c == 0x2011; }

Token make_token(std::u32string_view cps, bool is_word) {
  Token t;
  t.surface = text::encode_utf8(cps);
  t.normalized = text::encode_utf8(text::fold(cps));
  t.is_word = is_word;
  return t;
}

// Tokenizes normalized scalars; shared by tokenize and split_sentences.
template <typename Fn>
void scan_tokens(std::u32string_view s, Fn&& on_token) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const char32_t c = s[i];
    if (text::is_space(c) || text::is_invisible(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (text::is_letter(c)) {
      ++i;
      while (i < n) {
        if (text::is_letter(s[i])) {
          ++i;
        } else if (is_hyphen(s[i]) && i + 1 < n && text::is_letter(s[i + 1])) {
          i += 2;
        } else {
          break;
        }
      }
      on_token(start, i, true);
    } else if (text::is_digit(c)) {
      while (i < n && text::is_digit(s[i])) ++i;
      on_token(start, i, false);
    } else {
      ++i;
      on_token(start, i, false);
    }
  }
}

}  // namespace

std::vector<Token> tokenize(std::string_view utf8) {
  std::vector<Token> out;
  const auto cps = text::decode_utf8(utf8);
  if (!cps) return out;
  scan_tokens(*cps, [&](std::size_t b, std::size_t e, bool word) {
    out.push_back(make_token(std::u32string_view(*cps).substr(b, e - b), word));
  });
  return out;
}

std::size_t count_words(std::string_view utf8) {
  std::size_t n = 0;
  const auto cps = text::decode_utf8(utf8);
  if (!cps) return 0;
  scan_tokens(*cps, [&](std::size_t, std::size_t, bool word) { n += word; });
  return n;
}

std::vector<Token> document_words(const PolicyDocument& doc) {
  std::vector<Token> out;
  for (const auto& b : doc.blocks) {
    for (auto& t : tokenize(b.text)) {
      if (t.is_word) out.push_back(std::move(t));
    }
  }
  return out;
}

namespace {

// Case-folded, with single spaces between parts of multi-part forms.
constexpr std::array<std::u32string_view, 72> kAbbreviations = {
    U"abs.",   U"art.",   U"gem.",    U"bzw.",   U"z. b.",  U"z.b.",
    U"d. h.",  U"d.h.",   U"u. a.",   U"u.a.",   U"ggf.",   U"vgl.",
    U"nr.",    U"lit.",   U"s.",      U"str.",   U"tel.",   U"inkl.",
    U"zzgl.",  U"ca.",    U"evtl.",   U"dr.",    U"prof.",  U"hr.",
    U"fr.",    U"bspw.",  U"insb.",   U"sog.",   U"i. d. r.", U"i.d.r.",
    U"u. u.",  U"u.u.",   U"e. v.",   U"e.v.",   U"ziff.",  U"buchst.",
    U"kap.",   U"aufl.",  U"max.",    U"min.",   U"z. t.",  U"z.t.",
    U"o. g.",  U"o.g.",   U"s. o.",   U"s.o.",   U"s. u.",  U"s.u.",
    U"i. s. d.", U"i.s.d.", U"i. v. m.", U"i.v.m.", U"mio.", U"mrd.",
    U"st.",    U"f.",     U"ff.",     U"abschn.", U"anh.",  U"erw.",
    U"usw.",   U"u. ä.",  U"u.ä.",    U"zit.",   U"bzgl.",  U"allg.",
    U"e.g.",   U"i.e.",   U"mr.",     U"mrs.",   U"no.",    U"vs."};

// True when the period at folded[i] belongs to a listed abbreviation,
// including inner periods of multi-part forms such as "z. b.".
bool is_abbreviation_period(std::u32string_view folded, std::size_t i) {
  for (auto abbr : kAbbreviations) {
    for (std::size_t k = 0; k < abbr.size(); ++k) {
      if (abbr[k] != U'.' || k > i) continue;
      const std::size_t from = i - k;
      if (folded.substr(from, abbr.size()) != abbr) continue;
      if (from == 0 || !text::is_letter(folded[from - 1])) return true;
    }
  }
  return false;
}

// "1. Januar" or "§ 3. Abs": numbers with at most two digits before a period.
bool ends_with_ordinal(std::u32string_view prefix) {
  std::size_t k = prefix.size() - 1;  // the period
  std::size_t digits = 0;
  while (k > 0 && text::is_digit(prefix[k - 1])) {
    --k;
    ++digits;
  }
  if (digits == 0 || digits > 2) return false;
  return k == 0 || !(text::is_letter(prefix[k - 1]) || text::is_digit(prefix[k - 1]));
}

bool is_upper_start(char32_t c) {
  return text::is_digit(c) || (text::is_letter(c) && text::to_lower(c) != c);
}

bool has_alnum(std::u32string_view s) {
  return std::any_of(s.begin(), s.end(), [](char32_t c) {
    return text::is_letter(c) || text::is_digit(c);
  });
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view utf8) {
  std::vector<std::string> out;
  const auto decoded = text::decode_utf8(utf8);
  if (!decoded) return out;
  const std::u32string s = text::normalize_whitespace(*decoded);
  const std::u32string folded = text::fold(s);

  std::vector<std::u32string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    if (c != U'.' && c != U'!' && c != U'?' && c != U':') continue;
    // Absorb runs such as "?!" or "...".
    std::size_t end = i + 1;
    while (end < s.size() && (s[end] == U'.' || s[end] == U'!' ||
                              s[end] == U'?' || s[end] == U'"' ||
                              s[end] == U')' || s[end] == 0x201C)) {
      ++end;
    }
    if (end + 1 >= s.size() || s[end] != U' ' || !is_upper_start(s[end + 1])) {
      continue;
    }
    if (c == U'.' && end == i + 1) {
      if (is_abbreviation_period(folded, i) ||
          ends_with_ordinal(std::u32string_view(s).substr(0, i + 1))) {
        continue;
      }
    }
    parts.emplace_back(s.substr(start, end - start));
    start = end + 1;
    i = end;
  }
  if (start < s.size()) parts.emplace_back(s.substr(start));

  std::u32string carry;
  std::vector<std::u32string> merged;
  for (auto& p : parts) {
    if (!has_alnum(p)) {
      if (!merged.empty()) {
        merged.back() += U' ';
        merged.back() += p;
      } else {
        carry += carry.empty() ? p : U" " + p;
      }
      continue;
    }
    if (!carry.empty()) {
      p = carry + U" " + p;
      carry.clear();
    }
    merged.push_back(std::move(p));
  }
  if (merged.empty() && !carry.empty()) merged.push_back(std::move(carry));
  for (const auto& m : merged) out.push_back(text::encode_utf8(m));
  return out;
}

namespace {

bool is_vowel(char32_t c, Language lang) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
      return true;
    case 0xE4: case 0xF6: case 0xFC:  // ä ö ü
      return lang == Language::German;
    default:
      return false;
  }
}

bool german_nucleus_pair(char32_t a, char32_t b) {
  static constexpr std::array<std::pair<char32_t, char32_t>, 11> pairs = {{
      {U'a', U'u'}, {U'e', U'u'}, {0xE4, U'u'}, {U'e', U'i'}, {U'a', U'i'},
      {U'i', U'e'}, {U'a', U'a'}, {U'e', U'e'}, {U'o', U'o'}, {U'e', U'y'},
      {U'a', U'y'}}};
  return std::find(pairs.begin(), pairs.end(), std::pair{a, b}) != pairs.end();
}

}  // namespace

int count_syllables(std::string_view word, Language lang) {
  const auto decoded = text::decode_utf8(word);
  if (!decoded || std::none_of(decoded->begin(), decoded->end(), text::is_letter)) {
    throw Error(ErrorKind::NotAWord, "not a word: '" + std::string(word) + "'");
  }
  std::u32string w;
  for (char32_t c : text::fold(*decoded)) {
    if (text::is_letter(c)) w.push_back(c);
  }

  int groups = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool vowel = is_vowel(w[i], lang);
    if (vowel && w[i] == U'u' && i > 0 && w[i - 1] == U'q') vowel = false;
    if (vowel) {
      const bool joins = prev_vowel && (lang == Language::English ||
                                        german_nucleus_pair(w[i - 1], w[i]));
      if (!joins) ++groups;
    }
    prev_vowel = vowel;
  }

  if (lang == Language::English && w.size() >= 2 && w.back() == U'e' &&
      !is_vowel(w[w.size() - 2], lang)) {
    const bool consonant_le =
        w.size() >= 3 && w[w.size() - 2] == U'l' && !is_vowel(w[w.size() - 3], lang);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

}  // namespace polfair

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polfair/document.hpp"

namespace polfair {

enum class Language { German, English };

std::string_view to_string(Language lang);

struct Token {
  std::string surface;
  std::string normalized;  // case-folded surface
  bool is_word = false;    // letters, optionally joined by internal hyphens

  friend bool operator==(const Token&, const Token&) = default;
};

// Words are letter runs with internal hyphens ("E-Mail-Adresse"), numbers
// are digit runs, and every other visible character is its own token.
std::vector<Token> tokenize(std::string_view text);

std::size_t count_words(std::string_view text);

// Word tokens of every block, in document order.
std::vector<Token> document_words(const PolicyDocument& doc);

// Splits after . ! ? : when followed by whitespace and an upper-case letter
// or digit, unless the period closes a known abbreviation or a short
// ordinal number. Fragments without letters or digits stay attached to the
// preceding sentence.
std::vector<std::string> split_sentences(std::string_view text);

// Vowel-group heuristic. German: adjacent vowels share a nucleus only for
// au eu äu ei ai ie aa ee oo ey ay; English: any vowel run is one nucleus
// and a word-final silent 'e' does not count. Minimum 1.
// Throws Error(NotAWord) when the word contains no letter.
int count_syllables(std::string_view word, Language lang = Language::German);

}  // namespace polfair

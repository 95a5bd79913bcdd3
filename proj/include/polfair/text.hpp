#pragma once

// UTF-8 and character-class helpers shared by the ingest and lexical layers.
// Offsets exposed elsewhere in the library are Unicode scalar indices, so
// everything here works on char32_t after strict decoding.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polfair::text {

// Strict decoding: rejects overlong forms, surrogates and truncated sequences.
std::optional<std::u32string> decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

bool is_space(char32_t cp);
// Control and zero-width format characters; dropped from block text.
bool is_invisible(char32_t cp);
// Latin, Greek and Cyrillic letters (covers German umlauts and ß).
bool is_letter(char32_t cp);
inline bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

char32_t to_lower(char32_t cp);
std::u32string fold(std::u32string_view cps);
// Case-folds valid UTF-8. Invalid input is returned unchanged.
std::string fold(std::string_view utf8);

// Number of scalar values in valid UTF-8.
std::size_t length(std::string_view utf8);

// Collapses whitespace runs to one space, drops invisible characters and
// trims both ends.
std::u32string normalize_whitespace(std::u32string_view cps);
std::string normalize_whitespace(std::string_view utf8);

std::string_view trim_ascii(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace polfair::text

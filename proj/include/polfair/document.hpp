#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polfair {

enum class BlockKind { Heading, Paragraph, ListItem };

struct Block {
  BlockKind kind = BlockKind::Paragraph;
  std::optional<int> level;  // 1..6, headings only
  std::string text;          // whitespace-normalized UTF-8, never empty

  friend bool operator==(const Block&, const Block&) = default;
};

enum class FormatStyle { Strong, Italic };

// Half-open range of Unicode scalar offsets into one block's text.
struct FormatSpan {
  FormatStyle style = FormatStyle::Strong;
  std::size_t block_index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const FormatSpan&, const FormatSpan&) = default;
};

struct SourceMeta {
  std::string source_name;
  std::optional<int> year;
};

struct PolicyDocument {
  std::string doc_id;
  std::string source_name;
  std::optional<int> year;
  std::vector<Block> blocks;
  std::vector<FormatSpan> formatting;

  bool empty() const noexcept { return blocks.empty(); }
  // Block texts joined by single spaces.
  std::string visible_text() const;

  friend bool operator==(const PolicyDocument&, const PolicyDocument&) = default;
};

std::string_view to_string(BlockKind kind);
std::string_view to_string(FormatStyle style);

// Restricted HTML: h1-h6, p and li form blocks; strong/b and em/i become
// format spans; script and style content is dropped; every other tag is
// inline (layout tags such as div or td only separate words).
// Throws Error(MalformedInput) on invalid UTF-8 or when no text remains.
PolicyDocument parse_html(std::string_view raw, std::string doc_id,
                          const SourceMeta& meta = {});

// Annotated plain text: "#".."######" + space starts a heading, "- " a list
// item, blank-line separated runs are paragraphs. A leading backslash makes
// the rest of the line literal.
PolicyDocument parse_plain(std::string_view raw, std::string doc_id,
                           const SourceMeta& meta = {});

// Inverse of parse_plain up to formatting spans.
std::string render_plain(const PolicyDocument& doc);

// Throws Error(InvalidArgument) when a block or span breaks the
// structural invariants.
void validate(const PolicyDocument& doc);

}  // namespace polfair

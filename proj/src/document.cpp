#include "polfair/document.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <utility>

#include "polfair/error.hpp"
#include "polfair/text.hpp"

namespace polfair {

namespace {

// Accumulates whitespace-normalized block text and the format spans that
// fall inside it. Offsets are scalar indices into the block being built.
class BlockBuilder {
 public:
  void put(char32_t cp) {
    if (text::is_space(cp)) {
      pending_space_ = true;
      return;
    }
    if (text::is_invisible(cp)) return;
    if (pending_space_ && !buf_.empty()) buf_.push_back(U' ');
    pending_space_ = false;
    for (auto& f : open_) {
      if (!f.start) f.start = buf_.size();
    }
    buf_.push_back(cp);
  }

  void separate() { pending_space_ = true; }

  void open_format(FormatStyle style) { open_.push_back({style, std::nullopt}); }

  void close_format(FormatStyle style) {
    for (auto it = open_.rbegin(); it != open_.rend(); ++it) {
      if (it->style != style) continue;
      if (it->start && *it->start < buf_.size()) {
        spans_.push_back({style, blocks_.size(), *it->start, buf_.size()});
      }
      open_.erase(std::next(it).base());
      return;
    }
  }

  void flush(BlockKind kind, std::optional<int> level) {
    pending_space_ = false;
    if (buf_.empty()) return;
    for (auto& f : open_) {
      if (f.start && *f.start < buf_.size()) {
        spans_.push_back({f.style, blocks_.size(), *f.start, buf_.size()});
      }
      f.start.reset();
    }
    Block b;
    b.kind = kind;
    if (kind == BlockKind::Heading) b.level = level;
    b.text = text::encode_utf8(buf_);
    blocks_.push_back(std::move(b));
    buf_.clear();
  }

  std::vector<Block> take_blocks() { return std::move(blocks_); }
  std::vector<FormatSpan> take_spans() {
    std::stable_sort(spans_.begin(), spans_.end(),
                     [](const FormatSpan& a, const FormatSpan& b) {
                       return std::tie(a.block_index, a.begin) <
                              std::tie(b.block_index, b.begin);
                     });
    return std::move(spans_);
  }

 private:
  struct OpenFormat {
    FormatStyle style;
    std::optional<std::size_t> start;
  };
  std::u32string buf_;
  bool pending_space_ = false;
  std::vector<OpenFormat> open_;
  std::vector<Block> blocks_;
  std::vector<FormatSpan> spans_;
};

const std::unordered_map<std::u32string, char32_t>& named_entities() {
  static const std::unordered_map<std::u32string, char32_t> table = {
      {U"amp", U'&'},      {U"lt", U'<'},        {U"gt", U'>'},
      {U"quot", U'"'},     {U"apos", U'\''},     {U"nbsp", 0xA0},
      {U"auml", 0xE4},     {U"ouml", 0xF6},      {U"uuml", 0xFC},
      {U"Auml", 0xC4},     {U"Ouml", 0xD6},      {U"Uuml", 0xDC},
      {U"szlig", 0xDF},    {U"euro", 0x20AC},    {U"copy", 0xA9},
      {U"reg", 0xAE},      {U"sect", 0xA7},      {U"shy", 0xAD},
      {U"ndash", 0x2013},  {U"mdash", 0x2014},   {U"bdquo", 0x201E},
      {U"ldquo", 0x201C},  {U"rdquo", 0x201D},   {U"lsquo", 0x2018},
      {U"rsquo", 0x2019},  {U"sbquo", 0x201A},   {U"laquo", 0xAB},
      {U"raquo", 0xBB},    {U"hellip", 0x2026},  {U"middot", 0xB7},
      {U"eacute", 0xE9},   {U"egrave", 0xE8},    {U"agrave", 0xE0},
      {U"aacute", 0xE1},   {U"ccedil", 0xE7},    {U"bull", 0x2022},
      {U"trade", 0x2122},  {U"deg", 0xB0},       {U"ensp", 0x2002},
      {U"emsp", 0x2003},   {U"thinsp", 0x2009},  {U"zwnj", 0x200C},
      {U"zwj", 0x200D},
  };
  return table;
}

bool ascii_alpha(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

std::u32string lower_ascii(std::u32string s) {
  for (auto& c : s) {
    if (c >= U'A' && c <= U'Z') c += 0x20;
  }
  return s;
}

// Decodes the entity starting at s[i] == '&'. Returns the scalar and the
// number of input characters consumed, or nullopt for a literal '&'.
std::optional<std::pair<char32_t, std::size_t>> decode_entity(
    const std::u32string& s, std::size_t i) {
  const std::size_t max_len = 12;
  std::size_t j = i + 1;
  while (j < s.size() && j - i <= max_len && s[j] != U';') {
    if (!(ascii_alpha(s[j]) || text::is_digit(s[j]) || s[j] == U'#')) {
      return std::nullopt;
    }
    ++j;
  }
  if (j >= s.size() || s[j] != U';' || j == i + 1) return std::nullopt;
  const std::u32string name = s.substr(i + 1, j - i - 1);
  const std::size_t consumed = j - i + 1;
  if (name[0] == U'#') {
    char32_t cp = 0;
    const bool hex = name.size() > 1 && (name[1] == U'x' || name[1] == U'X');
    const std::size_t from = hex ? 2 : 1;
    if (from >= name.size()) return std::nullopt;
    for (std::size_t k = from; k < name.size(); ++k) {
      const char32_t c = name[k];
      int digit = -1;
      if (text::is_digit(c)) {
        digit = static_cast<int>(c - U'0');
      } else if (hex && c >= U'a' && c <= U'f') {
        digit = static_cast<int>(c - U'a') + 10;
      } else if (hex && c >= U'A' && c <= U'F') {
        digit = static_cast<int>(c - U'A') + 10;
      } else {
        return std::nullopt;
      }
      cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(digit);
      if (cp > 0x10FFFF) return std::nullopt;
    }
    if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
    return std::pair{cp, consumed};
  }
  const auto& table = named_entities();
  if (auto it = table.find(name); it != table.end()) {
    return std::pair{it->second, consumed};
  }
  return std::nullopt;
}

bool is_separator_tag(const std::u32string& name) {
  static const std::array<std::u32string_view, 35> tags = {
      U"br",      U"div",     U"td",       U"th",         U"tr",
      U"table",   U"ul",      U"ol",       U"dl",         U"dt",
      U"dd",      U"section", U"article",  U"header",     U"footer",
      U"nav",     U"main",    U"aside",    U"blockquote", U"address",
      U"figure",  U"hr",      U"pre",      U"form",       U"fieldset",
      U"tbody",   U"thead",   U"tfoot",    U"caption",    U"body",
      U"html",    U"head",    U"figcaption", U"summary",  U"details"};
  return std::find(tags.begin(), tags.end(), name) != tags.end();
}

std::optional<FormatStyle> format_style(const std::u32string& name) {
  if (name == U"strong" || name == U"b") return FormatStyle::Strong;
  if (name == U"em" || name == U"i") return FormatStyle::Italic;
  return std::nullopt;
}

std::optional<int> heading_level(const std::u32string& name) {
  if (name.size() == 2 && name[0] == U'h' && name[1] >= U'1' &&
      name[1] <= U'6') {
    return static_cast<int>(name[1] - U'0');
  }
  return std::nullopt;
}

struct Frame {
  BlockKind kind;
  std::optional<int> level;
  std::u32string tag;
};

class HtmlReader {
 public:
  explicit HtmlReader(std::u32string src) : src_(std::move(src)) {}

  void run() {
    std::size_t i = 0;
    const std::size_t n = src_.size();
    while (i < n) {
      const char32_t c = src_[i];
      if (c == U'<') {
        i = tag(i);
      } else if (c == U'&') {
        if (auto ent = decode_entity(src_, i)) {
          builder_.put(ent->first);
          i += ent->second;
        } else {
          builder_.put(c);
          ++i;
        }
      } else {
        builder_.put(c);
        ++i;
      }
    }
    flush();
  }

  BlockBuilder& builder() { return builder_; }

 private:
  std::size_t skip_past(std::size_t from, std::u32string_view needle) const {
    const auto pos = src_.find(needle, from);
    return pos == std::u32string::npos ? src_.size() : pos + needle.size();
  }

  // Parses the markup at src_[i] == '<' and returns the index after it.
  std::size_t tag(std::size_t i) {
    const std::size_t n = src_.size();
    if (src_.compare(i, 4, U"<!--") == 0) return skip_past(i + 4, U"-->");
    if (i + 1 < n && (src_[i + 1] == U'!' || src_[i + 1] == U'?')) {
      return skip_past(i + 2, U">");
    }
    const bool closing = i + 1 < n && src_[i + 1] == U'/';
    std::size_t j = i + (closing ? 2 : 1);
    if (j >= n || !ascii_alpha(src_[j])) {
      builder_.put(U'<');
      return i + 1;
    }
    const std::size_t name_start = j;
    while (j < n && (ascii_alpha(src_[j]) || text::is_digit(src_[j]))) ++j;
    const std::u32string name =
        lower_ascii(src_.substr(name_start, j - name_start));
    char32_t quote = 0;
    while (j < n) {
      const char32_t c = src_[j];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == U'"' || c == U'\'') {
        quote = c;
      } else if (c == U'>') {
        break;
      }
      ++j;
    }
    const std::size_t after = j < n ? j + 1 : n;
    if (closing) {
      end_tag(name);
      return after;
    }
    if (name == U"script" || name == U"style" || name == U"title") {
      builder_.separate();
      return skip_raw(after, name);
    }
    start_tag(name);
    return after;
  }

  std::size_t skip_raw(std::size_t from, const std::u32string& name) {
    const std::u32string closing = U"</" + name;
    std::size_t k = from;
    const std::size_t n = src_.size();
    while (k < n) {
      const auto pos = src_.find(U"</", k);
      if (pos == std::u32string::npos) return n;
      if (lower_ascii(src_.substr(pos, closing.size())) == closing) {
        return skip_past(pos, U">");
      }
      k = pos + 2;
    }
    return n;
  }

  bool top_is(BlockKind kind) const {
    return !stack_.empty() && stack_.back().kind == kind;
  }

  void flush() {
    if (stack_.empty()) {
      builder_.flush(BlockKind::Paragraph, std::nullopt);
    } else {
      builder_.flush(stack_.back().kind, stack_.back().level);
    }
  }

  void pop_top() {
    flush();
    stack_.pop_back();
  }

  void start_tag(const std::u32string& name) {
    if (auto style = format_style(name)) {
      builder_.open_format(*style);
      return;
    }
    const auto level = heading_level(name);
    if (name == U"p") {
      if (top_is(BlockKind::ListItem) || top_is(BlockKind::Heading)) {
        ++inline_p_;
        builder_.separate();
        return;
      }
      if (top_is(BlockKind::Paragraph)) pop_top();
      flush();
      stack_.push_back({BlockKind::Paragraph, std::nullopt, name});
      return;
    }
    if (level || name == U"li") {
      if (top_is(BlockKind::Paragraph)) pop_top();
      flush();
      stack_.push_back(
          {level ? BlockKind::Heading : BlockKind::ListItem, level, name});
      return;
    }
    if (is_separator_tag(name)) builder_.separate();
  }

  void end_tag(const std::u32string& name) {
    if (auto style = format_style(name)) {
      builder_.close_format(*style);
      return;
    }
    if (name == U"p" && inline_p_ > 0 && !top_is(BlockKind::Paragraph)) {
      --inline_p_;
      builder_.separate();
      return;
    }
    auto it = std::find_if(stack_.rbegin(), stack_.rend(),
                           [&](const Frame& f) { return f.tag == name; });
    if (it == stack_.rend()) {
      if (is_separator_tag(name) || name == U"p" || name == U"li" ||
          heading_level(name)) {
        builder_.separate();
      }
      return;
    }
    flush();
    const auto depth = static_cast<std::size_t>(std::distance(stack_.rbegin(), it)) + 1;
    stack_.resize(stack_.size() - depth);
  }

  std::u32string src_;
  BlockBuilder builder_;
  std::vector<Frame> stack_;
  int inline_p_ = 0;
};

std::u32string decode_or_throw(std::string_view raw) {
  auto cps = text::decode_utf8(raw);
  if (!cps) throw Error(ErrorKind::MalformedInput, "input is not valid UTF-8");
  if (!cps->empty() && cps->front() == 0xFEFF) cps->erase(cps->begin());
  return std::move(*cps);
}

PolicyDocument make_document(std::string doc_id, const SourceMeta& meta,
                             std::vector<Block> blocks,
                             std::vector<FormatSpan> spans) {
  if (blocks.empty()) {
    throw Error(ErrorKind::MalformedInput,
                "no textual content in document '" + doc_id + "'");
  }
  PolicyDocument doc;
  doc.doc_id = std::move(doc_id);
  doc.source_name = meta.source_name;
  doc.year = meta.year;
  doc.blocks = std::move(blocks);
  doc.formatting = std::move(spans);
  return doc;
}

}  // namespace

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Heading: return "heading";
    case BlockKind::Paragraph: return "paragraph";
    case BlockKind::ListItem: return "list_item";
  }
  return "paragraph";
}

std::string_view to_string(FormatStyle style) {
  return style == FormatStyle::Strong ? "strong" : "italic";
}

std::string PolicyDocument::visible_text() const {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out.push_back(' ');
    out += b.text;
  }
  return out;
}

PolicyDocument parse_html(std::string_view raw, std::string doc_id,
                          const SourceMeta& meta) {
  HtmlReader reader(decode_or_throw(raw));
  reader.run();
  auto& builder = reader.builder();
  auto blocks = builder.take_blocks();
  auto spans = builder.take_spans();
  return make_document(std::move(doc_id), meta, std::move(blocks),
                       std::move(spans));
}

PolicyDocument parse_plain(std::string_view raw, std::string doc_id,
                           const SourceMeta& meta) {
  const std::u32string src = decode_or_throw(raw);
  std::vector<Block> blocks;
  std::u32string para;

  auto emit = [&](BlockKind kind, std::optional<int> level,
                  std::u32string_view content) {
    auto norm = text::normalize_whitespace(content);
    if (norm.empty()) return;
    Block b;
    b.kind = kind;
    b.level = level;
    b.text = text::encode_utf8(norm);
    blocks.push_back(std::move(b));
  };
  auto flush_para = [&] {
    emit(BlockKind::Paragraph, std::nullopt, para);
    para.clear();
  };

  std::size_t pos = 0;
  while (pos <= src.size()) {
    auto eol = src.find(U'\n', pos);
    if (eol == std::u32string::npos) eol = src.size();
    std::u32string_view line(src.data() + pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == U'\r') line.remove_suffix(1);

    if (text::normalize_whitespace(line).empty()) {
      flush_para();
      continue;
    }
    if (line.front() == U'\\') {
      para.push_back(U' ');
      para.append(line.substr(1));
      continue;
    }
    std::size_t hashes = 0;
    while (hashes < line.size() && line[hashes] == U'#') ++hashes;
    if (hashes >= 1 && hashes <= 6 && hashes < line.size() &&
        (line[hashes] == U' ' || line[hashes] == U'\t') &&
        !text::normalize_whitespace(line.substr(hashes)).empty()) {
      flush_para();
      emit(BlockKind::Heading, static_cast<int>(hashes), line.substr(hashes));
      continue;
    }
    if (line.size() >= 2 && line[0] == U'-' && line[1] == U' ') {
      flush_para();
      emit(BlockKind::ListItem, std::nullopt, line.substr(2));
      continue;
    }
    para.push_back(U' ');
    para.append(line);
  }
  flush_para();
  return make_document(std::move(doc_id), meta, std::move(blocks), {});
}

std::string render_plain(const PolicyDocument& doc) {
  std::string out;
  for (const auto& b : doc.blocks) {
    if (!out.empty()) out += "\n\n";
    switch (b.kind) {
      case BlockKind::Heading:
        out.append(static_cast<std::size_t>(b.level.value_or(1)), '#');
        out += ' ';
        out += b.text;
        break;
      case BlockKind::ListItem:
        out += "- ";
        out += b.text;
        break;
      case BlockKind::Paragraph:
        if (!b.text.empty() &&
            (b.text[0] == '#' || b.text[0] == '-' || b.text[0] == '\\')) {
          out += '\\';
        }
        out += b.text;
        break;
    }
  }
  out += '\n';
  return out;
}

void validate(const PolicyDocument& doc) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, what);
  };
  for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
    const auto& b = doc.blocks[i];
    const std::string where = "block " + std::to_string(i);
    if (b.kind == BlockKind::Heading) {
      if (!b.level || *b.level < 1 || *b.level > 6) fail(where + ": bad heading level");
    } else if (b.level) {
      fail(where + ": level on non-heading");
    }
    auto cps = text::decode_utf8(b.text);
    if (!cps) fail(where + ": invalid UTF-8");
    if (cps->empty()) fail(where + ": empty text");
    if (text::normalize_whitespace(*cps) != *cps) {
      fail(where + ": text is not whitespace-normalized");
    }
  }
  for (const auto& s : doc.formatting) {
    if (s.block_index >= doc.blocks.size()) fail("span refers to missing block");
    const auto len = text::length(doc.blocks[s.block_index].text);
    if (!(s.begin < s.end && s.end <= len)) fail("span out of range");
  }
}

}  // namespace polfair

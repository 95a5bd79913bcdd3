#include "polfair/resources.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "polfair/error.hpp"
#include "polfair/text.hpp"

namespace polfair {

namespace {

[[noreturn]] void bad_row(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ResourceFormat, what, line);
}

// Calls fn(line_number, content) for every non-blank, non-comment line.
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!text::decode_utf8(line)) bad_row(number, "invalid UTF-8");
    if (text::trim_ascii(line).empty() || line[0] == '#') continue;
    fn(number, std::string_view(line));
  }
}

// A single case-folded token without whitespace.
std::string checked_word(std::string_view field, std::size_t line,
                         std::string_view what) {
  if (field.empty()) bad_row(line, "empty " + std::string(what));
  const auto cps = text::decode_utf8(field);
  for (char32_t c : *cps) {
    if (text::is_space(c) || text::is_invisible(c)) {
      bad_row(line, std::string(what) + " contains whitespace: '" +
                        std::string(field) + "'");
    }
  }
  std::string folded = text::fold(field);
  if (folded != field) {
    bad_row(line, std::string(what) + " is not case-folded: '" +
                      std::string(field) + "'");
  }
  return folded;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::ResourceMissing,
                "cannot open resource '" + path.string() + "'");
  }
  return in;
}

template <typename T, typename Reader>
T load_with_context(const std::filesystem::path& path, Reader&& reader) {
  auto in = open_or_throw(path);
  return reader(in);
}

}  // namespace

void FrequencyDictionary::add(std::string_view word, long rank) {
  if (rank < 1) throw Error(ErrorKind::ResourceFormat, "rank must be positive");
  std::string key = text::fold(word);
  if (ranks_.count(key)) {
    throw Error(ErrorKind::ResourceFormat, "duplicate word '" + key + "'");
  }
  if (!used_.insert(rank).second) {
    throw Error(ErrorKind::ResourceFormat,
                "duplicate rank " + std::to_string(rank));
  }
  ranks_.emplace(std::move(key), rank);
}

std::optional<long> FrequencyDictionary::rank(std::string_view normalized) const {
  if (auto it = ranks_.find(std::string(normalized)); it != ranks_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, long>> FrequencyDictionary::entries() const {
  std::vector<std::pair<std::string, long>> out(ranks_.begin(), ranks_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

const std::set<std::string>* WordMap::find(std::string_view normalized) const {
  auto it = entries.find(std::string(normalized));
  return it == entries.end() ? nullptr : &it->second;
}

bool DescriptorTerm::matches(std::string_view normalized) const {
  if (match == MatchMode::Exact) return normalized == term;
  return normalized.substr(0, term.size()) == term;
}

void LexiconSet::add(std::string_view axis_name, std::string_view group,
                     DescriptorTerm term) {
  if (term.term.empty() || axis_name.empty() || group.empty()) {
    throw Error(ErrorKind::ResourceFormat, "empty lexicon field");
  }
  auto& terms = axes[std::string(axis_name)][std::string(group)];
  if (std::any_of(terms.begin(), terms.end(),
                  [&](const DescriptorTerm& t) { return t.term == term.term; })) {
    throw Error(ErrorKind::ResourceFormat,
                "duplicate term '" + term.term + "' in " +
                    std::string(axis_name) + "/" + std::string(group));
  }
  terms.push_back(std::move(term));
}

LexiconSet LexiconSet::axis(std::string_view name) const {
  LexiconSet out;
  if (auto it = axes.find(std::string(name)); it != axes.end()) {
    out.axes.insert(*it);
  }
  return out;
}

std::size_t LexiconSet::term_count() const {
  std::size_t n = 0;
  for (const auto& [axis, groups] : axes) {
    for (const auto& [group, terms] : groups) n += terms.size();
  }
  return n;
}

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::Exact ? "Exact" : "Prefix";
}

FrequencyDictionary read_frequency_dictionary(std::istream& in) {
  FrequencyDictionary dict;
  for_each_row(in, [&](std::size_t line, std::string_view row) {
    const auto fields = text::split(row, '\t');
    if (fields.size() != 2) bad_row(line, "expected 'word<TAB>rank'");
    const std::string word = checked_word(fields[0], line, "word");
    long rank = 0;
    const auto* first = fields[1].data();
    const auto* last = first + fields[1].size();
    auto [ptr, ec] = std::from_chars(first, last, rank);
    if (ec != std::errc{} || ptr != last || rank < 1) {
      bad_row(line, "rank is not a positive integer: '" + std::string(fields[1]) + "'");
    }
    try {
      dict.add(word, rank);
    } catch (const Error& e) {
      bad_row(line, e.what());
    }
  });
  return dict;
}

WordMap read_word_map(std::istream& in,
                      std::pair<std::string, std::string> direction) {
  WordMap map;
  map.direction = std::move(direction);
  for_each_row(in, [&](std::size_t line, std::string_view row) {
    const auto fields = text::split(row, '\t');
    if (fields.size() != 2) bad_row(line, "expected 'word<TAB>translations'");
    std::string word = checked_word(fields[0], line, "word");
    if (map.entries.count(word)) bad_row(line, "duplicate word '" + word + "'");
    std::set<std::string> translations;
    for (auto part : text::split(fields[1], '|')) {
      auto t = checked_word(part, line, "translation");
      if (!translations.insert(std::move(t)).second) {
        bad_row(line, "duplicate translation '" + std::string(part) + "'");
      }
    }
    map.entries.emplace(std::move(word), std::move(translations));
  });
  return map;
}

Wordlist read_wordlist(std::istream& in) {
  Wordlist list;
  for_each_row(in, [&](std::size_t line, std::string_view row) {
    auto word = checked_word(row, line, "word");
    if (!list.words.insert(word).second) {
      bad_row(line, "duplicate word '" + word + "'");
    }
  });
  return list;
}

LexiconSet read_lexicon(std::istream& in) {
  LexiconSet lex;
  bool first = true;
  for_each_row(in, [&](std::size_t line, std::string_view row) {
    const bool header_allowed = first;
    first = false;
    if (header_allowed && row == "axis,group,term,match") return;
    const auto fields = text::split(row, ',');
    if (fields.size() != 4) bad_row(line, "expected 'axis,group,term,match'");
    for (std::size_t i = 0; i < 2; ++i) {
      if (fields[i].empty() || text::trim_ascii(fields[i]) != fields[i]) {
        bad_row(line, "axis/group must be non-empty without surrounding spaces");
      }
    }
    DescriptorTerm term;
    term.term = checked_word(fields[2], line, "term");
    if (fields[3] == "Exact") {
      term.match = MatchMode::Exact;
    } else if (fields[3] == "Prefix") {
      term.match = MatchMode::Prefix;
    } else {
      bad_row(line, "match must be Exact or Prefix, got '" + std::string(fields[3]) + "'");
    }
    try {
      lex.add(fields[0], fields[1], std::move(term));
    } catch (const Error& e) {
      bad_row(line, e.what());
    }
  });
  return lex;
}

FrequencyDictionary load_frequency_dictionary(const std::filesystem::path& path) {
  return load_with_context<FrequencyDictionary>(
      path, [](std::istream& in) { return read_frequency_dictionary(in); });
}

WordMap load_word_map(const std::filesystem::path& path,
                      std::pair<std::string, std::string> direction) {
  return load_with_context<WordMap>(path, [&](std::istream& in) {
    return read_word_map(in, std::move(direction));
  });
}

Wordlist load_wordlist(const std::filesystem::path& path) {
  return load_with_context<Wordlist>(
      path, [](std::istream& in) { return read_wordlist(in); });
}

LexiconSet load_lexicon(const std::filesystem::path& path) {
  return load_with_context<LexiconSet>(
      path, [](std::istream& in) { return read_lexicon(in); });
}

void write_frequency_dictionary(std::ostream& out, const FrequencyDictionary& dict) {
  for (const auto& [word, rank] : dict.entries()) out << word << '\t' << rank << '\n';
}

void write_word_map(std::ostream& out, const WordMap& map) {
  for (const auto& [word, translations] : map.entries) {
    out << word << '\t';
    bool first = true;
    for (const auto& t : translations) {
      if (!first) out << '|';
      out << t;
      first = false;
    }
    out << '\n';
  }
}

void write_wordlist(std::ostream& out, const Wordlist& list) {
  for (const auto& w : list.words) out << w << '\n';
}

void write_lexicon(std::ostream& out, const LexiconSet& lexicon) {
  for (const auto& [axis, groups] : lexicon.axes) {
    for (const auto& [group, terms] : groups) {
      for (const auto& t : terms) {
        out << axis << ',' << group << ',' << t.term << ',' << to_string(t.match) << '\n';
      }
    }
  }
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_sha256(const std::filesystem::path& path) {
  return sha256_hex(read_file(path));
}

}  // namespace polfair

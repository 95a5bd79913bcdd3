#include <gtest/gtest.h>

#include <sstream>

#include "polfair/error.hpp"
#include "polfair/resources.hpp"
#include "unit/gen.hpp"

using namespace polfair;

namespace {

template <typename Fn>
Error error_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no polfair::Error thrown";
  return Error(ErrorKind::InvalidArgument, "none");
}

FrequencyDictionary freq(const std::string& s) {
  std::istringstream in(s);
  return read_frequency_dictionary(in);
}

LexiconSet lexicon(const std::string& s) {
  std::istringstream in(s);
  return read_lexicon(in);
}

}  // namespace

TEST(FrequencyDictionary, LoadsTsv) {
  const auto d = freq("der\t1\nund\t2");
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.rank("und"), 2);
  EXPECT_FALSE(d.rank("haus"));
}

TEST(FrequencyDictionary, DuplicateRankIsFormatError) {
  const auto e = error_of([] { freq("der\t1\nund\t1\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(e.line(), 2u);
}

TEST(FrequencyDictionary, MalformedRowsCarryLineNumbers) {
  EXPECT_EQ(error_of([] { freq("# c\nder\t1\nund 2\n"); }).line(), 3u);
  EXPECT_EQ(error_of([] { freq("der\t0\n"); }).kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(error_of([] { freq("der\tx\n"); }).kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(error_of([] { freq("Der\t1\n"); }).kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(error_of([] { freq("der\t1\nder\t2\n"); }).line(), 2u);
}

TEST(Lexicon, LoadsRow) {
  const auto lex = lexicon("gender,female,nutzerin,Exact\n");
  ASSERT_EQ(lex.axes.at("gender").at("female").size(), 1u);
  EXPECT_EQ(lex.axes.at("gender").at("female")[0], (DescriptorTerm{"nutzerin", MatchMode::Exact}));
  EXPECT_EQ(lex.term_count(), 1u);
}

TEST(Lexicon, HeaderCommentsAndErrors) {
  const auto lex = lexicon("axis,group,term,match\n# c\n\nage,old,senior,Prefix\n");
  EXPECT_EQ(lex.axes.at("age").at("old")[0].match, MatchMode::Prefix);
  EXPECT_EQ(error_of([] { lexicon("a,b,c,Fuzzy\n"); }).kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(error_of([] { lexicon("a,b,c\n"); }).line(), 1u);
  EXPECT_EQ(error_of([] { lexicon("a,b,c,Exact\na,b,c,Prefix\n"); }).line(), 2u);
}

TEST(DescriptorTerm, MatchModes) {
  const DescriptorTerm exact{"nutzer", MatchMode::Exact};
  const DescriptorTerm prefix{"nutzer", MatchMode::Prefix};
  EXPECT_TRUE(exact.matches("nutzer"));
  EXPECT_FALSE(exact.matches("nutzerin"));
  EXPECT_TRUE(prefix.matches("nutzerkonto"));
  EXPECT_FALSE(prefix.matches("benutzer"));
}

TEST(WordMap, LoadsTranslations) {
  std::istringstream in("haus\thouse|home\n");
  const auto map = read_word_map(in, {"de", "en"});
  ASSERT_TRUE(map.find("haus"));
  EXPECT_EQ(*map.find("haus"), (std::set<std::string>{"house", "home"}));
  std::istringstream bad("haus\t\n");
  EXPECT_THROW(read_word_map(bad, {"de", "en"}), Error);
  std::istringstream empty_item("haus\thouse||home\n");
  EXPECT_THROW(read_word_map(empty_item, {"de", "en"}), Error);
}

TEST(Wordlist, LoadsAndRejectsDuplicates) {
  std::istringstream in("# c\nthe\nand\n");
  EXPECT_EQ(read_wordlist(in).words.size(), 2u);
  std::istringstream dup("the\nthe\n");
  EXPECT_EQ(error_of([&] { read_wordlist(dup); }).line(), 2u);
}

TEST(Loaders, MissingFile) {
  EXPECT_EQ(error_of([] { load_wordlist("/nonexistent/list.txt"); }).kind(), ErrorKind::ResourceMissing);
}

TEST(Checksum, Sha256) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

namespace {

std::string random_key(polfair::testing::Gen& g) {
  static const std::vector<std::string> parts = {"da", "ten", "schutz", "ü", "ß", "nutz", "er", "-", "x"};
  std::string s;
  const int n = g.range(1, 4);
  for (int i = 0; i < n; ++i) s += g.pick(parts);
  if (s.front() == '-') s.insert(s.begin(), 'a');
  return s;
}

}  // namespace

TEST(LoaderProperty, WriteThenLoadIsIdentity) {
  polfair::testing::Gen g(13);
  for (int i = 0; i < 200; ++i) {
    FrequencyDictionary d;
    WordMap m;
    m.direction = {"de", "en"};
    Wordlist w;
    LexiconSet lex;
    const int n = g.range(0, 20);
    for (int k = 0; k < n; ++k) {
      const std::string key = random_key(g) + std::to_string(k);
      d.add(key, k + 1 + g.range(0, 3) * 100);
      m.entries[key] = {random_key(g), random_key(g)};
      w.words.insert(key);
      lex.add(g.chance(0.5) ? "gender" : "age", g.chance(0.5) ? "a" : "b",
              {key, g.chance(0.5) ? MatchMode::Exact : MatchMode::Prefix});
    }
    std::stringstream sd, sm, sw, sl;
    write_frequency_dictionary(sd, d);
    write_word_map(sm, m);
    write_wordlist(sw, w);
    write_lexicon(sl, lex);
    EXPECT_EQ(read_frequency_dictionary(sd).entries(), d.entries());
    EXPECT_EQ(read_word_map(sm, {"de", "en"}).entries, m.entries);
    EXPECT_EQ(read_wordlist(sw).words, w.words);
    EXPECT_EQ(read_lexicon(sl).axes, lex.axes);
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polfair/embedding.hpp"
#include "polfair/error.hpp"
#include "unit/gen.hpp"

using namespace polfair;

namespace {

EmbeddingStore store(const std::string& s) {
  std::istringstream in(s);
  return read_embeddings(in);
}

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

double cos2(std::vector<double> a, std::vector<double> b) { return cosine(a, b); }

}  // namespace

TEST(LoadEmbeddings, HeaderAndRows) {
  const auto s = store("2 3\nhaus 1 0 0\nbaum 0 1 0\n");
  EXPECT_EQ(s.dimension(), 3u);
  EXPECT_EQ(s.size(), 2u);
  ASSERT_TRUE(s.lookup("haus"));
  EXPECT_EQ((*s.lookup("haus"))[0], 1.0);
}

TEST(LoadEmbeddings, WithoutHeaderAndCaseFolding) {
  const auto s = store("Haus 1 0\nbaum 0 1\n");
  EXPECT_EQ(s.dimension(), 2u);
  EXPECT_TRUE(s.contains("haus"));
}

TEST(LoadEmbeddings, Errors) {
  EXPECT_EQ(error_of([] { store("2 3\nhaus 1 0 0\nbaum 0 1\n"); }).kind(), ErrorKind::DimensionMismatch);
  EXPECT_EQ(error_of([] { store("2 3\nhaus 1 0 0\nbaum 0 1\n"); }).line(), 3u);
  const auto dup = error_of([] { store("2 2\nhaus 1 0\nhaus 0 1\n"); });
  EXPECT_EQ(dup.kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(dup.line(), 3u);
  EXPECT_EQ(error_of([] { store("haus 1 x\n"); }).kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(error_of([] { store("haus 1 nan\n"); }).kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(error_of([] { store("haus 0 0\n"); }).kind(), ErrorKind::ResourceFormat);
  EXPECT_EQ(error_of([] { store("3 2\nhaus 1 0\n"); }).kind(), ErrorKind::ResourceFormat);
}

TEST(Cosine, Examples) {
  EXPECT_DOUBLE_EQ(cos2({1, 0}, {1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(cos2({1, 0}, {0, 1}), 0.0);
  EXPECT_NEAR(cos2({1, 2}, {2, 1}), 0.8, 1e-15);
}

TEST(Cosine, Errors) {
  EXPECT_EQ(error_of([] { cos2({0, 0}, {1, 0}); }).kind(), ErrorKind::ZeroVector);
  EXPECT_EQ(error_of([] { cos2({1, 0}, {1, 0, 0}); }).kind(), ErrorKind::DimensionMismatch);
}

TEST(MeanVector, Examples) {
  const auto s = store("haus 1 0\nbaum 0 1\n");
  const std::vector<std::string> one = {"haus"};
  EXPECT_EQ(*mean_vector(one, s), (std::vector<double>{1, 0}));
  const std::vector<std::string> two = {"haus", "baum"};
  EXPECT_EQ(*mean_vector(two, s), (std::vector<double>{0.5, 0.5}));
  const std::vector<std::string> oov = {"auto"};
  EXPECT_FALSE(mean_vector(oov, s));
}

TEST(CosineProperty, SymmetryScalingAndSign) {
  polfair::testing::Gen g(17);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = static_cast<std::size_t>(g.range(1, 8));
    auto a = g.vec(dim);
    auto b = g.vec(dim);
    a[0] += 2.0;
    b[0] -= 2.0;
    const double c = cosine(a, b);
    EXPECT_GE(c, -1.0);
    EXPECT_LE(c, 1.0);
    EXPECT_NEAR(c, cosine(b, a), 1e-15);
    const double s = g.real(0.01, 100.0);
    auto sa = a;
    auto neg = a;
    for (std::size_t k = 0; k < dim; ++k) {
      sa[k] *= s;
      neg[k] = -a[k];
    }
    EXPECT_NEAR(cosine(a, sa), 1.0, 1e-12);
    EXPECT_NEAR(cosine(a, neg), -1.0, 1e-12);
    EXPECT_NEAR(cosine(sa, b), c, 1e-12);
  }
}

TEST(MeanVectorProperty, PermutationInvariant) {
  polfair::testing::Gen g(19);
  std::ostringstream text;
  for (int w = 0; w < 30; ++w) {
    text << "w" << w;
    for (int k = 0; k < 5; ++k) text << " " << g.real(-1, 1);
    text << "\n";
  }
  const auto s = store(text.str());
  std::mt19937 shuffle_rng(1);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> words;
    const int n = g.range(1, 12);
    for (int k = 0; k < n; ++k) words.push_back("w" + std::to_string(g.range(0, 40)));
    auto permuted = words;
    std::shuffle(permuted.begin(), permuted.end(), shuffle_rng);
    EXPECT_EQ(mean_vector(words, s), mean_vector(permuted, s));
  }
}

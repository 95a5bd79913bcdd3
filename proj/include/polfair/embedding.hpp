#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace polfair {

// Immutable word-vector table. Rows live in one contiguous buffer.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dimension);

  // Throws Error(DimensionMismatch) on a wrong-length vector and
  // Error(ResourceFormat) on a duplicate word or non-finite component.
  void add(std::string_view word, std::span<const double> values);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool contains(std::string_view normalized) const;
  std::optional<std::span<const double>> lookup(std::string_view normalized) const;
  std::optional<std::size_t> row(std::string_view normalized) const;
  std::span<const double> row_values(std::size_t row) const;

  // Copy with every component multiplied by factor (> 0).
  EmbeddingStore scaled(double factor) const;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> data_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Textual format: optional "count dim" header, then "word v1 ... vd".
// Keys are case-folded.
EmbeddingStore read_embeddings(std::istream& in);
EmbeddingStore load_embeddings(const std::filesystem::path& path);

// dot(a,b) / (|a| |b|), clamped to [-1, 1]. Throws Error(DimensionMismatch)
// or Error(ZeroVector).
double cosine(std::span<const double> a, std::span<const double> b);

// Mean of the in-vocabulary vectors; rows are summed in store order so the
// result does not depend on the order of `words`.
std::optional<std::vector<double>> mean_vector(
    std::span<const std::string> words, const EmbeddingStore& store);

}  // namespace polfair

#include "polfair/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "polfair/error.hpp"
#include "polfair/text.hpp"

namespace polfair {

EmbeddingStore::EmbeddingStore(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) {
    throw Error(ErrorKind::ResourceFormat, "embedding dimension must be >= 1");
  }
}

void EmbeddingStore::add(std::string_view word, std::span<const double> values) {
  if (values.size() != dimension_) {
    throw Error(ErrorKind::DimensionMismatch,
                "vector for '" + std::string(word) + "' has " +
                    std::to_string(values.size()) + " components, expected " +
                    std::to_string(dimension_));
  }
  if (std::any_of(values.begin(), values.end(),
                  [](double v) { return !std::isfinite(v); })) {
    throw Error(ErrorKind::ResourceFormat,
                "non-finite component for '" + std::string(word) + "'");
  }
  std::string key = text::fold(word);
  if (index_.count(key)) {
    throw Error(ErrorKind::ResourceFormat, "duplicate word '" + key + "'");
  }
  index_.emplace(key, words_.size());
  words_.push_back(std::move(key));
  data_.insert(data_.end(), values.begin(), values.end());
}

bool EmbeddingStore::contains(std::string_view normalized) const {
  return index_.count(std::string(normalized)) != 0;
}

std::optional<std::size_t> EmbeddingStore::row(std::string_view normalized) const {
  if (auto it = index_.find(std::string(normalized)); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::span<const double> EmbeddingStore::row_values(std::size_t r) const {
  return std::span<const double>(data_).subspan(r * dimension_, dimension_);
}

std::optional<std::span<const double>> EmbeddingStore::lookup(
    std::string_view normalized) const {
  if (auto r = row(normalized)) return row_values(*r);
  return std::nullopt;
}

EmbeddingStore EmbeddingStore::scaled(double factor) const {
  EmbeddingStore out = *this;
  for (auto& v : out.data_) v *= factor;
  return out;
}

namespace {

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingStore read_embeddings(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  std::optional<std::size_t> declared_count;
  std::optional<EmbeddingStore> store;
  std::vector<double> values;
  bool any_nonzero = false;

  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!text::decode_utf8(line)) {
      throw Error(ErrorKind::ResourceFormat, "invalid UTF-8", number);
    }
    const auto fields = fields_of(line);
    if (fields.empty()) continue;
    if (!store && !declared_count && fields.size() == 2) {
      std::size_t count = 0;
      std::size_t dim = 0;
      if (parse_number(fields[0], count) && parse_number(fields[1], dim)) {
        if (dim == 0) throw Error(ErrorKind::ResourceFormat, "dimension 0", number);
        declared_count = count;
        store.emplace(dim);
        continue;
      }
    }
    if (fields.size() < 2) {
      throw Error(ErrorKind::ResourceFormat, "expected 'word v1 ... vd'", number);
    }
    if (!store) store.emplace(fields.size() - 1);
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0;
      if (!parse_number(fields[i], v)) {
        throw Error(ErrorKind::ResourceFormat,
                    "not a number: '" + std::string(fields[i]) + "'", number);
      }
      values.push_back(v);
      any_nonzero = any_nonzero || v != 0.0;
    }
    try {
      store->add(fields[0], values);
    } catch (const Error& e) {
      throw Error(e.kind(), e.what(), number);
    }
  }
  if (!store || store->size() == 0) {
    throw Error(ErrorKind::ResourceFormat, "no vectors in embedding file");
  }
  if (declared_count && *declared_count != store->size()) {
    throw Error(ErrorKind::ResourceFormat,
                "header declares " + std::to_string(*declared_count) +
                    " vectors, found " + std::to_string(store->size()));
  }
  if (!any_nonzero) {
    throw Error(ErrorKind::ResourceFormat, "all embedding vectors are zero");
  }
  return std::move(*store);
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::ResourceMissing,
                "cannot open embeddings '" + path.string() + "'");
  }
  return read_embeddings(in);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "cosine of vectors of different length");
  }
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorKind::ZeroVector, "cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::optional<std::vector<double>> mean_vector(std::span<const std::string> words,
                                               const EmbeddingStore& store) {
  std::vector<std::size_t> rows;
  for (const auto& w : words) {
    if (auto r = store.row(w)) rows.push_back(*r);
  }
  if (rows.empty()) return std::nullopt;
  std::sort(rows.begin(), rows.end());
  std::vector<double> mean(store.dimension(), 0.0);
  for (auto r : rows) {
    const auto v = store.row_values(r);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
  }
  for (auto& m : mean) m /= static_cast<double>(rows.size());
  return mean;
}

}  // namespace polfair

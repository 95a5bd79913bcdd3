#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "polfair/ethics.hpp"

namespace polfair {

// Canned responses from <dir>/<doc_id>/run_<k>.txt (k starting at 1).
// A missing file raises Error(Backend).
class OfflineBackend : public LlmBackend {
 public:
  explicit OfflineBackend(std::filesystem::path dir);
  std::string complete(const ChatPrompt& prompt, std::string_view doc_id,
                       int run_index) override;

  static std::filesystem::path response_path(const std::filesystem::path& dir,
                                             std::string_view doc_id, int run_index);

 private:
  std::filesystem::path dir_;
};

// Wraps a callable; handy for tests and embedding.
class FunctionBackend : public LlmBackend {
 public:
  using Fn = std::function<std::string(const ChatPrompt&, std::string_view, int)>;
  explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const ChatPrompt& prompt, std::string_view doc_id,
                       int run_index) override {
    return fn_(prompt, doc_id, run_index);
  }

 private:
  Fn fn_;
};

struct HttpBackendConfig {
  // e.g. "https://api.openai.com/v1"; requests go to <base>/chat/completions
  std::string base_url;
  std::string model;
  std::optional<double> temperature;  // unset: endpoint default
  std::string api_key_env = "POLFAIR_LLM_API_KEY";
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{120};
};

// Chat-completion endpoint: {"model", "messages": [system, user]} in,
// choices[0].message.content out. Transport errors, 429 and 5xx are retried
// with exponential backoff; other HTTP errors fail immediately.
class HttpBackend : public LlmBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  std::string complete(const ChatPrompt& prompt, std::string_view doc_id,
                       int run_index) override;

  std::size_t attempts_made() const noexcept { return attempts_made_.load(); }
  const HttpBackendConfig& config() const noexcept { return config_; }

 private:
  HttpBackendConfig config_;
  std::string origin_;       // scheme://host[:port]
  std::string path_prefix_;  // e.g. /v1
  std::atomic<std::size_t> attempts_made_{0};
};

}  // namespace polfair

#include "polfair/llm_backend.hpp"

#include <httplib.h>

#include <cstdlib>
#include <json.hpp>
#include <thread>

#include "polfair/error.hpp"
#include "polfair/resources.hpp"

namespace polfair {

OfflineBackend::OfflineBackend(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path OfflineBackend::response_path(const std::filesystem::path& dir,
                                                    std::string_view doc_id,
                                                    int run_index) {
  return dir / std::string(doc_id) / ("run_" + std::to_string(run_index) + ".txt");
}

std::string OfflineBackend::complete(const ChatPrompt&, std::string_view doc_id,
                                     int run_index) {
  const auto path = response_path(dir_, doc_id, run_index);
  try {
    return read_file(path);
  } catch (const Error&) {
    throw Error(ErrorKind::Backend, "no canned response at '" + path.string() + "'");
  }
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::Config, "LLM endpoint must start with http:// or https://");
  }
  const auto path_start = config_.base_url.find('/', scheme_end + 3);
  origin_ = config_.base_url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : config_.base_url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (config_.attempts < 1) config_.attempts = 1;
}

std::string HttpBackend::complete(const ChatPrompt& prompt, std::string_view, int) {
  nlohmann::json body = {
      {"model", config_.model},
      {"messages",
       {{{"role", "system"}, {"content", prompt.system}},
        {{"role", "user"}, {"content", prompt.user}}}},
  };
  if (config_.temperature) body["temperature"] = *config_.temperature;

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::string last_error;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    ++attempts_made_;
    httplib::Client client(origin_);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(),
                           "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorKind::Backend, "HTTP " + std::to_string(res->status) + ": " +
                                          res->body.substr(0, 200));
    }
    try {
      const auto reply = nlohmann::json::parse(res->body);
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Backend, std::string("unexpected response body: ") + e.what());
    }
  }
  throw Error(ErrorKind::Backend, "giving up after " + std::to_string(config_.attempts) +
                                      " attempts: " + last_error);
}

}  // namespace polfair

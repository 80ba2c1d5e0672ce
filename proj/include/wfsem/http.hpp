// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace wfsem {

struct FetchResult {
  std::optional<std::string> body;
  std::string error;

  bool ok() const { return body.has_value(); }
  static FetchResult success(std::string body) { return {std::move(body), {}}; }
  static FetchResult failure(std::string error) { return {std::nullopt, std::move(error)}; }
};

// fetch(url, timeout) -> bytes or error. Implementations must be safe for
// concurrent use.
class HttpFetcher {
public:
  virtual ~HttpFetcher() = default;
  virtual FetchResult fetch(const std::string& url, std::chrono::milliseconds timeout) const = 0;
};

// Serves `<dir>/<sha256(url)>`; a missing file is a "not found" error.
class FixtureFetcher : public HttpFetcher {
public:
  explicit FixtureFetcher(std::filesystem::path dir);
  FetchResult fetch(const std::string& url, std::chrono::milliseconds timeout) const override;

  static std::string key_for(const std::string& url);

private:
  std::filesystem::path dir_;
};

// Plain GET over http/https; non-2xx statuses are errors.
class HttpClientFetcher : public HttpFetcher {
public:
  FetchResult fetch(const std::string& url, std::chrono::milliseconds timeout) const override;
};

struct FetchPolicy {
  std::chrono::milliseconds timeout{10000};
  int retries = 2;
};

// Retries transport failures; "not found" answers from fixtures are not retried.
class RetryingFetcher : public HttpFetcher {
public:
  RetryingFetcher(std::shared_ptr<const HttpFetcher> inner, FetchPolicy policy);
  FetchResult fetch(const std::string& url, std::chrono::milliseconds timeout) const override;
  FetchResult fetch(const std::string& url) const { return fetch(url, policy_.timeout); }

private:
  std::shared_ptr<const HttpFetcher> inner_;
  FetchPolicy policy_;
};

}  // namespace wfsem

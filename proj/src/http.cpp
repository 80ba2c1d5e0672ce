// SPDX-License-Identifier: Apache-2.0
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "wfsem/http.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "wfsem/text.hpp"

namespace wfsem {

FixtureFetcher::FixtureFetcher(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string FixtureFetcher::key_for(const std::string& url) { return sha256_hex(url); }

FetchResult FixtureFetcher::fetch(const std::string& url, std::chrono::milliseconds) const {
  const auto path = dir_ / key_for(url);
  std::ifstream in(path, std::ios::binary);
  if (!in) return FetchResult::failure("not found: " + url);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return FetchResult::success(buffer.str());
}

FetchResult HttpClientFetcher::fetch(const std::string& url, std::chrono::milliseconds timeout) const {
  static const std::regex kUrl(R"(^(https?://[^/?#]+)([^#]*)?)", std::regex::icase);
  std::smatch m;
  if (!std::regex_search(url, m, kUrl)) return FetchResult::failure("unsupported url: " + url);
  std::string path = m[2].str();
  if (path.empty()) path = "/";
  httplib::Client client(m[1].str());
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_follow_location(true);
  const auto response = client.Get(path);
  if (!response) return FetchResult::failure("transport: " + httplib::to_string(response.error()));
  if (response->status < 200 || response->status >= 300) {
    return FetchResult::failure("http status " + std::to_string(response->status) + ": " + url);
  }
  return FetchResult::success(response->body);
}

RetryingFetcher::RetryingFetcher(std::shared_ptr<const HttpFetcher> inner, FetchPolicy policy)
    : inner_(std::move(inner)), policy_(policy) {}

FetchResult RetryingFetcher::fetch(const std::string& url, std::chrono::milliseconds timeout) const {
  FetchResult result = inner_->fetch(url, timeout);
  for (int attempt = 0; attempt < policy_.retries && !result.ok(); ++attempt) {
    if (result.error.rfind("not found", 0) == 0 || result.error.rfind("http status 4", 0) == 0) break;
    result = inner_->fetch(url, timeout);
  }
  return result;
}

}  // namespace wfsem

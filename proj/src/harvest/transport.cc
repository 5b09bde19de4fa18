// Copyright 2026 The retrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "retrace/harvest/transport.h"

#include <algorithm>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "retrace/common/error.h"
#include "retrace/common/strings.h"

namespace retrace::harvest {

using nlohmann::json;

FixtureTransport::FixtureTransport(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("fixture not found: " + path.string());
  }
  std::string text = read_text_file(path);
  std::size_t line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    json ex;
    try {
      ex = json::parse(line);
    } catch (const json::exception& e) {
      throw DecodeError(path.string() + ": " + e.what(), line_no - 1);
    }
    if (!ex.contains("request") || !ex.contains("response")) {
      throw DecodeError(path.string() + ": exchange needs request and response", line_no - 1);
    }
    const json& req = ex["request"];
    const json& res = ex["response"];
    std::string method = req.value("method", "GET");
    if (method != "GET") continue;
    HttpResponse r;
    r.status = res.value("status", 200);
    if (res.contains("body")) {
      r.body = res["body"].is_string() ? res["body"].get<std::string>() : res["body"].dump();
    }
    exchanges_[req.at("target").get<std::string>()] = std::move(r);
  }
}

HttpResponse FixtureTransport::get(const std::string& target) {
  auto it = exchanges_.find(target);
  if (it == exchanges_.end()) {
    throw TransportError("no recorded exchange for " + target);
  }
  return it->second;
}

HttpTransport::HttpTransport(const std::string& endpoint_url, std::chrono::seconds timeout)
    : timeout_(timeout) {
  if (!is_url(endpoint_url)) throw ConfigError("not an http(s) URL: " + endpoint_url);
  std::size_t scheme_end = endpoint_url.find("://") + 3;
  std::size_t path_start = endpoint_url.find('/', scheme_end);
  origin_ = endpoint_url.substr(0, path_start);
  base_path_ = path_start == std::string::npos ? "" : endpoint_url.substr(path_start);
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (origin_.rfind("https://", 0) == 0) {
    throw ConfigError("built without TLS support; cannot reach " + origin_);
  }
#endif
}

HttpResponse HttpTransport::get(const std::string& target) {
  httplib::Client cli(origin_);
  cli.set_connection_timeout(timeout_);
  cli.set_read_timeout(timeout_);
  cli.set_follow_location(true);
  auto res = cli.Get(base_path_ + target, {{"Accept", "application/json"}});
  if (!res) return {0, httplib::to_string(res.error())};
  return {res->status, res->body};
}

RecordingTransport::RecordingTransport(std::unique_ptr<Transport> inner,
                                       const std::filesystem::path& path)
    : inner_(std::move(inner)), out_(path, std::ios::binary | std::ios::app) {
  if (!out_) throw ConfigError("cannot write fixture " + path.string());
}

HttpResponse RecordingTransport::get(const std::string& target) {
  HttpResponse r = inner_->get(target);
  json body = json::parse(r.body, nullptr, false);
  json ex = {{"request", {{"method", "GET"}, {"target", target}}},
             {"response", {{"status", r.status}, {"body", body.is_discarded() ? json(r.body) : body}}}};
  std::lock_guard lock(mu_);
  out_ << ex.dump() << '\n';
  out_.flush();
  return r;
}

Clock steady_clock_now() {
  return [] { return std::chrono::steady_clock::now(); };
}

Sleeper thread_sleeper() {
  return [](std::chrono::nanoseconds d) { std::this_thread::sleep_for(d); };
}

TokenBucket::TokenBucket(double rate_per_second, double burst, Clock now, Sleeper sleep)
    : rate_(rate_per_second),
      burst_(std::max(1.0, burst)),
      now_(std::move(now)),
      sleep_(std::move(sleep)),
      tokens_(burst_),
      last_(now_()) {}

void TokenBucket::acquire() {
  if (rate_ <= 0) return;
  std::lock_guard lock(mu_);
  while (true) {
    auto t = now_();
    double elapsed = std::chrono::duration<double>(t - last_).count();
    tokens_ = std::min(burst_, tokens_ + elapsed * rate_);
    last_ = t;
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    // Holding the lock while sleeping keeps waiters in arrival order.
    sleep_(std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::duration<double>((1.0 - tokens_) / rate_)));
  }
}

Client::Client(Transport& transport, TokenBucket& bucket, RetryPolicy retry, Sleeper sleep)
    : transport_(transport), bucket_(bucket), retry_(retry), sleep_(std::move(sleep)) {}

HttpResponse Client::get(const std::string& target) {
  std::chrono::milliseconds delay = retry_.base_delay;
  std::string last_error;
  for (int attempt = 0; attempt <= retry_.max_retries; ++attempt) {
    if (attempt > 0) {
      sleep_(delay);
      delay *= 2;
    }
    bucket_.acquire();
    HttpResponse r = transport_.get(target);
    bool retryable = r.status == 0 || r.status == 429 || r.status >= 500;
    if (!retryable) return r;
    last_error = r.status == 0 ? r.body : "HTTP " + std::to_string(r.status);
  }
  throw TransportError("GET " + target + " failed after " +
                       std::to_string(retry_.max_retries) + " retries: " + last_error);
}

bool is_url(const std::string& endpoint) {
  return endpoint.rfind("http://", 0) == 0 || endpoint.rfind("https://", 0) == 0;
}

}  // namespace retrace::harvest

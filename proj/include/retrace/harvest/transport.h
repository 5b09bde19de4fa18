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

#ifndef RETRACE_HARVEST_TRANSPORT_H_
#define RETRACE_HARVEST_TRANSPORT_H_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace retrace::harvest {

struct HttpResponse {
  int status = 0;
  std::string body;
};

// One GET against the citation index. `target` is the path below the
// endpoint, e.g. "/citations/10.1000/x".
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const std::string& target) = 0;
};

// Replays newline-delimited `{"request": {"method", "target"}, "response":
// {"status", "body"}}` lines. `body` may be a JSON value or a string. A
// target with no recorded exchange throws TransportError.
class FixtureTransport : public Transport {
 public:
  explicit FixtureTransport(const std::filesystem::path& path);
  HttpResponse get(const std::string& target) override;
  std::size_t size() const { return exchanges_.size(); }

 private:
  std::map<std::string, HttpResponse> exchanges_;
};

// Plain or TLS client over cpp-httplib. Connection failures come back as
// status 0.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(const std::string& endpoint_url,
                         std::chrono::seconds timeout = std::chrono::seconds(30));
  HttpResponse get(const std::string& target) override;

 private:
  std::string origin_;
  std::string base_path_;
  std::chrono::seconds timeout_;
};

// Appends every exchange of `inner` to an NDJSON file in fixture format.
class RecordingTransport : public Transport {
 public:
  RecordingTransport(std::unique_ptr<Transport> inner, const std::filesystem::path& path);
  HttpResponse get(const std::string& target) override;

 private:
  std::unique_ptr<Transport> inner_;
  std::mutex mu_;
  std::ofstream out_;
};

using Clock = std::function<std::chrono::steady_clock::time_point()>;
using Sleeper = std::function<void(std::chrono::nanoseconds)>;

Clock steady_clock_now();
Sleeper thread_sleeper();

// Thread-safe token bucket. rate <= 0 disables limiting.
class TokenBucket {
 public:
  TokenBucket(double rate_per_second, double burst = 1.0, Clock now = steady_clock_now(),
              Sleeper sleep = thread_sleeper());
  void acquire();

 private:
  double rate_;
  double burst_;
  Clock now_;
  Sleeper sleep_;
  std::mutex mu_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{500};  // doubled after each attempt
};

// Rate-limited GET with bounded retries on status 0, 429 and 5xx. Other
// non-200 statuses are returned to the caller. Throws TransportError once
// retries are exhausted.
class Client {
 public:
  Client(Transport& transport, TokenBucket& bucket, RetryPolicy retry = {},
         Sleeper sleep = thread_sleeper());
  HttpResponse get(const std::string& target);

 private:
  Transport& transport_;
  TokenBucket& bucket_;
  RetryPolicy retry_;
  Sleeper sleep_;
};

// "http://" or "https://" prefix.
bool is_url(const std::string& endpoint);

}  // namespace retrace::harvest

#endif  // RETRACE_HARVEST_TRANSPORT_H_

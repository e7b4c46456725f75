//
// Copyright 2026 The mmrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef MMROBUST_HTTP_SERVICES_H_
#define MMROBUST_HTTP_SERVICES_H_

#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "mmrobust/services.h"

namespace mmrobust::services {

inline constexpr const char* kEmbedUrlEnv = "MMR_EMBED_URL";
inline constexpr const char* kDetectUrlEnv = "MMR_DETECT_URL";
inline constexpr const char* kTransformUrlEnv = "MMR_TRANSFORM_URL";
inline constexpr const char* kStylizeUrlEnv = "MMR_STYLIZE_URL";

struct ServiceEndpointConfig {
  std::string base_url;  // e.g. "http://127.0.0.1:8700"
  int timeout_ms = 30000;
  int retries = 2;

  void validate() const;
  // Unset or empty variable -> nullopt.
  static std::optional<ServiceEndpointConfig> from_env(const char* variable);
};

// Clients retry transport failures and 5xx responses up to `retries` more
// times, then throw Error(kServiceUnavailable). A 4xx response throws
// Error(kServiceRejected) without retrying.

class HttpEmbeddingClient final : public EmbeddingClient {
 public:
  explicit HttpEmbeddingClient(ServiceEndpointConfig config);
  std::vector<Embedding> embed_texts(const std::vector<std::string>& texts) override;

 private:
  ServiceEndpointConfig config_;
};

class HttpDetectionClient final : public DetectionClient {
 public:
  explicit HttpDetectionClient(ServiceEndpointConfig config);
  std::vector<Detection> detect_objects(const Rgb8Image& image, std::string_view prompt,
                                        double threshold) override;

 private:
  ServiceEndpointConfig config_;
};

class HttpTransformClient final : public TransformClient {
 public:
  explicit HttpTransformClient(ServiceEndpointConfig config);
  std::string transform_text(std::string_view text, std::string_view style) override;

 private:
  ServiceEndpointConfig config_;
};

class HttpStylizeClient final : public StylizeClient {
 public:
  explicit HttpStylizeClient(ServiceEndpointConfig config);
  Rgb8Image stylize_image(const Rgb8Image& image, int severity) override;

 private:
  ServiceEndpointConfig config_;
};

// Backends a ProtocolServer dispatches to; null members answer 503.
struct ServiceBackends {
  EmbeddingClient* embed = nullptr;
  DetectionClient* detect = nullptr;
  TransformClient* transform = nullptr;
  StylizeClient* stylize = nullptr;
};

// Serves the wire protocol over HTTP in front of in-process backends.
// Used to expose the deterministic stubs to out-of-process consumers and to
// run the protocol contract tests.
class ProtocolServer {
 public:
  explicit ProtocolServer(ServiceBackends backends);
  ~ProtocolServer();

  ProtocolServer(const ProtocolServer&) = delete;
  ProtocolServer& operator=(const ProtocolServer&) = delete;

  // Binds (port 0 picks a free one), starts serving on a background thread
  // and returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks until stop() is called from another thread.
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace mmrobust::services

#endif  // MMROBUST_HTTP_SERVICES_H_

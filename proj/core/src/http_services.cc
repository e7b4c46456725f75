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

#include "mmrobust/http_services.h"

#include <cstdlib>
#include <functional>

#include "httplib.h"
#include "mmrobust/error.h"
#include "mmrobust/wire.h"

namespace mmrobust::services {
namespace {

constexpr const char* kJson = "application/json";

std::string post(const ServiceEndpointConfig& config, std::string_view path,
                 const std::string& body) {
  httplib::Client client(config.base_url);
  const auto seconds = config.timeout_ms / 1000;
  const auto micros = (config.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  std::string last_error;
  for (int attempt = 0; attempt <= config.retries; ++attempt) {
    auto res = client.Post(std::string(path), body, kJson);
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    const std::string message = wire::decode_error(res->body);
    if (res->status >= 400 && res->status < 500) {
      throw Error(ErrorCode::kServiceRejected,
                  std::string(path) + " -> " + std::to_string(res->status) + ": " + message);
    }
    last_error = std::to_string(res->status) + ": " + message;
  }
  throw Error(ErrorCode::kServiceUnavailable,
              config.base_url + std::string(path) + " failed after " +
                  std::to_string(config.retries + 1) + " attempt(s): " + last_error);
}

}  // namespace

void ServiceEndpointConfig::validate() const {
  if (base_url.rfind("http://", 0) != 0 && base_url.rfind("https://", 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "service URL must start with http:// or https://");
  }
  if (timeout_ms <= 0) throw Error(ErrorCode::kInvalidArgument, "timeout_ms must be positive");
  if (retries < 0) throw Error(ErrorCode::kInvalidArgument, "retries must be non-negative");
}

std::optional<ServiceEndpointConfig> ServiceEndpointConfig::from_env(const char* variable) {
  const char* value = std::getenv(variable);
  if (value == nullptr || *value == '\0') return std::nullopt;
  ServiceEndpointConfig config{value};
  while (!config.base_url.empty() && config.base_url.back() == '/') config.base_url.pop_back();
  config.validate();
  return config;
}

HttpEmbeddingClient::HttpEmbeddingClient(ServiceEndpointConfig config)
    : config_(std::move(config)) {
  config_.validate();
}

std::vector<Embedding> HttpEmbeddingClient::embed_texts(const std::vector<std::string>& texts) {
  validate_embed_request(texts);
  auto vectors = wire::decode_embed_response(
      post(config_, wire::kEmbedPath, wire::encode_embed_request(texts)));
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::kMalformedResponse, "embed: vector count differs from input count");
  }
  return vectors;
}

HttpDetectionClient::HttpDetectionClient(ServiceEndpointConfig config)
    : config_(std::move(config)) {
  config_.validate();
}

std::vector<Detection> HttpDetectionClient::detect_objects(const Rgb8Image& image,
                                                           std::string_view prompt,
                                                           double threshold) {
  validate_detect_request(prompt, threshold);
  return wire::decode_detect_response(
      post(config_, wire::kDetectPath, wire::encode_detect_request(image, prompt, threshold)));
}

HttpTransformClient::HttpTransformClient(ServiceEndpointConfig config)
    : config_(std::move(config)) {
  config_.validate();
}

std::string HttpTransformClient::transform_text(std::string_view text, std::string_view style) {
  validate_transform_request(text, style);
  return wire::decode_transform_response(
      post(config_, wire::kTransformPath, wire::encode_transform_request(text, style)));
}

HttpStylizeClient::HttpStylizeClient(ServiceEndpointConfig config)
    : config_(std::move(config)) {
  config_.validate();
}

Rgb8Image HttpStylizeClient::stylize_image(const Rgb8Image& image, int severity) {
  validate_stylize_request(severity);
  auto out = wire::decode_stylize_response(
      post(config_, wire::kStylizePath, wire::encode_stylize_request(image, severity)));
  if (out.width() != image.width() || out.height() != image.height()) {
    throw Error(ErrorCode::kMalformedResponse, "stylize: output dimensions differ from input");
  }
  return out;
}

// ---------------------------------------------------------------------------

struct ProtocolServer::Impl {
  ServiceBackends backends;
  httplib::Server server;

  void route(std::string_view path, bool available,
             std::function<std::string(const std::string&)> handler) {
    server.Post(std::string(path), [available, handler = std::move(handler)](
                                       const httplib::Request& req, httplib::Response& res) {
      if (!available) {
        res.status = 503;
        res.set_content(wire::encode_error("backend not configured"), kJson);
        return;
      }
      try {
        res.set_content(handler(req.body), kJson);
      } catch (const Error& e) {
        res.status = e.code() == ErrorCode::kInvalidArgument ? 400 : 500;
        res.set_content(wire::encode_error(e.what()), kJson);
      } catch (const std::exception& e) {
        res.status = 500;
        res.set_content(wire::encode_error(e.what()), kJson);
      }
    });
  }

  void install() {
    route(wire::kEmbedPath, backends.embed != nullptr, [this](const std::string& body) {
      return wire::encode_embed_response(
          backends.embed->embed_texts(wire::decode_embed_request(body)));
    });
    route(wire::kDetectPath, backends.detect != nullptr, [this](const std::string& body) {
      const auto req = wire::decode_detect_request(body);
      return wire::encode_detect_response(
          backends.detect->detect_objects(req.image, req.prompt, req.threshold));
    });
    route(wire::kTransformPath, backends.transform != nullptr, [this](const std::string& body) {
      const auto req = wire::decode_transform_request(body);
      return wire::encode_transform_response(
          backends.transform->transform_text(req.text, req.style));
    });
    route(wire::kStylizePath, backends.stylize != nullptr, [this](const std::string& body) {
      const auto req = wire::decode_stylize_request(body);
      return wire::encode_stylize_response(
          backends.stylize->stylize_image(req.image, req.severity));
    });
  }
};

ProtocolServer::ProtocolServer(ServiceBackends backends) : impl_(std::make_unique<Impl>()) {
  impl_->backends = backends;
  impl_->install();
}

ProtocolServer::~ProtocolServer() { stop(); }

int ProtocolServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void ProtocolServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw Error(ErrorCode::kIoError, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void ProtocolServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace mmrobust::services

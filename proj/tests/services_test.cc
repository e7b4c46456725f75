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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "mmrobust/error.h"
#include "mmrobust/fidelity.h"
#include "mmrobust/http_services.h"
#include "mmrobust/stub_services.h"
#include "mmrobust/wire.h"

namespace mmrobust::services {
namespace {

using nlohmann::json;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

double Norm(const Embedding& v) {
  double s = 0;
  for (float x : v) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

TEST(StubTest, HashedEmbedderContract) {
  HashedBagOfWordsEmbedder e;
  const auto v = e.embed_texts({"a b c", "a b c", "a b d", "x y z"});
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0], v[1]);
  for (const auto& x : v) {
    EXPECT_EQ(x.size(), 256u);
    EXPECT_NEAR(Norm(x), 1.0, 1e-6);
  }
  EXPECT_GT(fidelity::cosine_similarity(v[0], v[2]), fidelity::cosine_similarity(v[0], v[3]));
  EXPECT_NEAR(fidelity::cosine_similarity(v[0], v[2]), 2.0 / 3.0, 1e-6);
  EXPECT_EQ(e.calls(), 1u);
  EXPECT_EQ(e.embed("A, B; c!"), e.embed("a b c"));
  EXPECT_NEAR(Norm(e.embed("...")), 1.0, 1e-6);
  EXPECT_EQ(CodeOf([&] { e.embed_texts({"ok", ""}); }), ErrorCode::kInvalidArgument);
  EXPECT_TRUE(e.embed_texts({}).empty());
}

TEST(StubTest, ScriptedDetectorThresholds) {
  const auto img = testing::fixture_image(0, 32);
  ScriptedDetector d;
  d.script(img, {{"dog", 0.65, {1, 2, 10, 10}}, {"cake", 0.9, {0, 0, 5, 5}}, {"cat", 0.99, {3, 3, 4, 4}}});
  EXPECT_EQ(d.detect_objects(img, "dog. cake", 0.7).size(), 1u);
  EXPECT_EQ(d.detect_objects(img, "dog. cake", 0.5).size(), 2u);
  EXPECT_EQ(d.detect_objects(img, "dog, cake, cat", 0.5).size(), 3u);
  EXPECT_TRUE(d.detect_objects(testing::fixture_image(1, 32), "dog", 0.5).empty());
  EXPECT_EQ(CodeOf([&] { d.detect_objects(img, "", 0.5); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { d.detect_objects(img, "dog", 1.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { d.detect_objects(img, "dog", 0.0); }), ErrorCode::kInvalidArgument);
}

TEST(StubTest, TransformStubs) {
  IdentityTransformStub id;
  EXPECT_EQ(id.transform_text("hello there", "casual"), "hello there");
  EXPECT_EQ(CodeOf([&] { id.transform_text("hello", "shouty"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { id.transform_text("", "formal"); }), ErrorCode::kInvalidArgument);
  auto table = FixtureTransformStub::example_table();
  EXPECT_EQ(table.transform_text("An orange metal bowl strainer filled with apples.", "active"),
            "There are apples in an orange metal bowl strainer.");
  EXPECT_EQ(table.transform_text("unlisted", "active"), "unlisted");
}

TEST(StubTest, StylizeStub) {
  LutStylizeStub s;
  for (const auto& img : testing::fixture_images(6, 48)) {
    for (int sev = 1; sev <= 5; ++sev) {
      const auto out = s.stylize_image(img, sev);
      EXPECT_EQ(out.width(), img.width());
      EXPECT_EQ(out.height(), img.height());
      EXPECT_EQ(out, s.stylize_image(img, sev));
      EXPECT_NE(out, img);
    }
  }
  EXPECT_EQ(CodeOf([&] { s.stylize_image(testing::fixture_image(0, 16), 6); }),
            ErrorCode::kInvalidArgument);
}

TEST(PromptTest, JoinAndSplit) {
  EXPECT_EQ(join_prompt({"dog", "cake", "broccoli"}), "dog. cake. broccoli");
  EXPECT_EQ(split_prompt("dog. cake. broccoli"), (std::vector<std::string>{"dog", "cake", "broccoli"}));
  EXPECT_EQ(split_prompt("dog, cake ,broccoli,"), (std::vector<std::string>{"dog", "cake", "broccoli"}));
  EXPECT_TRUE(is_known_style("back_translate"));
  EXPECT_FALSE(is_known_style("Formal"));
}

TEST(WireTest, Base64) {
  const std::vector<std::uint8_t> empty;
  EXPECT_EQ(wire::base64_encode(empty), "");
  const std::string foobar = "foobar";
  const std::vector<std::uint8_t> bytes(foobar.begin(), foobar.end());
  EXPECT_EQ(wire::base64_encode(bytes), "Zm9vYmFy");
  EXPECT_EQ(wire::base64_encode(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 4)), "Zm9vYg==");
  EXPECT_EQ(wire::base64_decode("Zm9vYmFy"), bytes);
  EXPECT_THROW(wire::base64_decode("Zm9v!mFy"), Error);
}

TEST(WireTest, RoundTrips) {
  const std::vector<std::string> texts = {"a dog", "unicode caf\xc3\xa9"};
  EXPECT_EQ(wire::decode_embed_request(wire::encode_embed_request(texts)), texts);
  const std::vector<Embedding> vecs = {{0.5f, -0.25f, 1.0f}, {0.0f, 1.0f, 0.0f}};
  EXPECT_EQ(wire::decode_embed_response(wire::encode_embed_response(vecs)), vecs);
  const auto raw = json::parse(wire::encode_embed_response(vecs));
  EXPECT_EQ(raw.at("dim"), 3);
  EXPECT_EQ(raw.at("vectors").size(), 2u);

  const auto img = testing::fixture_image(2, 24);
  const auto det = wire::decode_detect_request(wire::encode_detect_request(img, "dog. cat", 0.7));
  EXPECT_EQ(det.image, img);
  EXPECT_EQ(det.prompt, "dog. cat");
  EXPECT_DOUBLE_EQ(det.threshold, 0.7);
  const auto det_raw = json::parse(wire::encode_detect_request(img, "dog", 0.5));
  EXPECT_TRUE(det_raw.contains("image_png_b64"));

  const std::vector<Detection> ds = {{"dog", 0.8, {1, 2, 3, 4}}, {"cat", 0.51, {0.5, 0.5, 9, 9}}};
  EXPECT_EQ(wire::decode_detect_response(wire::encode_detect_response(ds)), ds);
  const auto ds_raw = json::parse(wire::encode_detect_response(ds));
  EXPECT_EQ(ds_raw.at("detections").at(0).at("bbox").size(), 4u);

  const auto tr = wire::decode_transform_request(wire::encode_transform_request("hi", "formal"));
  EXPECT_EQ(tr.text, "hi");
  EXPECT_EQ(tr.style, "formal");
  EXPECT_EQ(wire::decode_transform_response(wire::encode_transform_response("out")), "out");

  const auto st = wire::decode_stylize_request(wire::encode_stylize_request(img, 4));
  EXPECT_EQ(st.image, img);
  EXPECT_EQ(st.severity, 4);
  EXPECT_EQ(wire::decode_stylize_response(wire::encode_stylize_response(img)), img);

  EXPECT_EQ(wire::decode_error(wire::encode_error("boom")), "boom");
  EXPECT_EQ(wire::decode_error("plain text"), "plain text");
}

TEST(WireTest, MalformedBodies) {
  EXPECT_EQ(CodeOf([] { wire::decode_embed_request("{}"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { wire::decode_embed_request("not json"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { wire::decode_embed_response(R"({"dim":2,"vectors":[[1]]})"); }),
            ErrorCode::kMalformedResponse);
  EXPECT_EQ(CodeOf([] { wire::decode_embed_response(R"({"vectors":"x"})"); }),
            ErrorCode::kMalformedResponse);
  EXPECT_EQ(CodeOf([] { wire::decode_detect_response(R"({"detections":[{"label":"a"}]})"); }),
            ErrorCode::kMalformedResponse);
  EXPECT_EQ(CodeOf([] { wire::decode_transform_response(R"({"txt":"a"})"); }),
            ErrorCode::kMalformedResponse);
  EXPECT_EQ(CodeOf([] { wire::decode_stylize_response(R"({"image_png_b64":"AAAA"})"); }),
            ErrorCode::kMalformedResponse);
}

TEST(EndpointConfigTest, Validation) {
  EXPECT_NO_THROW((ServiceEndpointConfig{"http://127.0.0.1:1"}.validate()));
  EXPECT_THROW((ServiceEndpointConfig{"127.0.0.1:1"}.validate()), Error);
  EXPECT_THROW((ServiceEndpointConfig{"http://x", 0}.validate()), Error);
  EXPECT_THROW((ServiceEndpointConfig{"http://x", 10, -1}.validate()), Error);
  ::setenv("MMR_TEST_UNUSED_URL", "", 1);
  EXPECT_FALSE(ServiceEndpointConfig::from_env("MMR_TEST_UNUSED_URL").has_value());
  ::setenv("MMR_TEST_UNUSED_URL", "http://localhost:9/", 1);
  const auto c = ServiceEndpointConfig::from_env("MMR_TEST_UNUSED_URL");
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->base_url, "http://localhost:9");
  ::setenv("MMR_TEST_UNUSED_URL", "ftp://nope", 1);
  EXPECT_THROW(ServiceEndpointConfig::from_env("MMR_TEST_UNUSED_URL"), Error);
}

// The protocol contract. By default it runs against an in-process server in
// front of the stubs; pointing MMR_CONTRACT_URL at another implementation
// runs the same assertions against it.
class ContractTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const char* external = std::getenv("MMR_CONTRACT_URL");
    if (external != nullptr && *external != '\0') {
      base_url_ = external;
      return;
    }
    embedder_ = std::make_unique<HashedBagOfWordsEmbedder>();
    transformer_ = std::make_unique<FixtureTransformStub>(FixtureTransformStub::example_table());
    stylizer_ = std::make_unique<LutStylizeStub>();
    detector_ = std::make_unique<ScriptedDetector>();
    detector_->script(testing::fixture_image(0, 32),
                      {{"dog", 0.65, {1, 2, 10, 10}}, {"cake", 0.9, {0, 0, 5, 5}}});
    server_ = std::make_unique<ProtocolServer>(
        ServiceBackends{embedder_.get(), detector_.get(), transformer_.get(), stylizer_.get()});
    base_url_ = "http://127.0.0.1:" + std::to_string(server_->start());
  }
  static void TearDownTestSuite() {
    if (server_) server_->stop();
    server_.reset();
    detector_.reset();
  }

  static ServiceEndpointConfig Config() { return ServiceEndpointConfig{base_url_, 30000, 0}; }
  static bool External() { return server_ == nullptr; }

  static httplib::Result RawPost(const std::string& path, const std::string& body) {
    httplib::Client c(base_url_);
    return c.Post(path, body, "application/json");
  }

  static inline std::string base_url_;
  static inline std::unique_ptr<HashedBagOfWordsEmbedder> embedder_;
  static inline std::unique_ptr<FixtureTransformStub> transformer_;
  static inline std::unique_ptr<LutStylizeStub> stylizer_;
  static inline std::unique_ptr<ScriptedDetector> detector_;
  static inline std::unique_ptr<ProtocolServer> server_;
};

TEST_F(ContractTest, Embed) {
  HttpEmbeddingClient client(Config());
  const auto v = client.embed_texts({"a dog on a couch", "a dog on a couch", "x"});
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].size(), v[2].size());
  EXPECT_EQ(v[0], v[1]);
  if (!External()) {
    EXPECT_EQ(v[0], embedder_->embed("a dog on a couch"));
  }

  const auto res = RawPost(std::string(wire::kEmbedPath), R"({"texts":["one","two"]})");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  const auto body = json::parse(res->body);
  EXPECT_EQ(body.at("vectors").size(), 2u);
  EXPECT_EQ(body.at("dim").get<std::size_t>(), body.at("vectors").at(0).size());
}

TEST_F(ContractTest, EmbedRejectsBadRequests) {
  HttpEmbeddingClient client(Config());
  EXPECT_EQ(CodeOf([&] { client.embed_texts({""}); }), ErrorCode::kInvalidArgument);
  for (const char* body : {R"({"texts":[""]})", R"({"texts":"a"})", "garbage", R"({"text":"a"})"}) {
    const auto res = RawPost(std::string(wire::kEmbedPath), body);
    ASSERT_TRUE(res);
    EXPECT_GE(res->status, 400) << body;
    EXPECT_LT(res->status, 500) << body;
    EXPECT_TRUE(json::parse(res->body).contains("error")) << body;
  }
}

TEST_F(ContractTest, Detect) {
  HttpDetectionClient client(Config());
  const auto img = testing::fixture_image(0, 32);
  const auto hi = client.detect_objects(img, "dog. cake", 0.7);
  const auto lo = client.detect_objects(img, "dog. cake", 0.5);
  for (const auto& d : hi) {
    EXPECT_GE(d.score, 0.7);
    EXPECT_TRUE(d.label == "dog" || d.label == "cake");
  }
  EXPECT_LE(hi.size(), lo.size());
  if (!External()) {
    ASSERT_EQ(hi.size(), 1u);
    EXPECT_EQ(hi[0].label, "cake");
    EXPECT_EQ(lo.size(), 2u);
    EXPECT_EQ(lo[0], (Detection{"dog", 0.65, {1, 2, 10, 10}}));
  }
  const auto res = RawPost(std::string(wire::kDetectPath),
                           wire::encode_detect_request(img, "", 0.5));
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(ContractTest, Transform) {
  HttpTransformClient client(Config());
  const std::string clean = "An orange metal bowl strainer filled with apples.";
  for (auto style : kStyles) {
    EXPECT_FALSE(client.transform_text(clean, style).empty()) << style;
  }
  if (!External()) {
    EXPECT_EQ(client.transform_text(clean, "passive"),
              "Some apples are in an orange metal bowl strainer.");
  }
  EXPECT_EQ(CodeOf([&] { client.transform_text(clean, "poetic"); }), ErrorCode::kInvalidArgument);
  const auto res = RawPost(std::string(wire::kTransformPath), R"({"text":"hi","style":"poetic"})");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(ContractTest, Stylize) {
  HttpStylizeClient client(Config());
  const auto img = testing::fixture_image(4, 40);
  const auto out = client.stylize_image(img, 3);
  EXPECT_EQ(out.width(), img.width());
  EXPECT_EQ(out.height(), img.height());
  if (!External()) {
    EXPECT_EQ(out, stylizer_->stylize_image(img, 3));
  }
  const auto res = RawPost(std::string(wire::kStylizePath), wire::encode_stylize_request(img, 1));
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_TRUE(json::parse(res->body).contains("image_png_b64"));
  const auto bad = RawPost(std::string(wire::kStylizePath), R"({"image_png_b64":"","severity":9})");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
}

TEST(ProtocolServerTest, MissingBackendIs503) {
  HashedBagOfWordsEmbedder embedder;
  ProtocolServer server(ServiceBackends{&embedder, nullptr, nullptr, nullptr});
  const int port = server.start();
  HttpTransformClient client(ServiceEndpointConfig{"http://127.0.0.1:" + std::to_string(port), 5000, 1});
  EXPECT_EQ(CodeOf([&] { client.transform_text("hi", "formal"); }), ErrorCode::kServiceUnavailable);
  HttpEmbeddingClient ok(ServiceEndpointConfig{"http://127.0.0.1:" + std::to_string(port)});
  EXPECT_EQ(ok.embed_texts({"x"}).size(), 1u);
  server.stop();
}

// A bare server that fails the first `failures` requests with `status`.
class FlakyServer {
 public:
  FlakyServer(int failures, int status, std::string ok_body) {
    server_.Post(std::string(wire::kEmbedPath), [this, failures, status, ok_body](
                                                    const httplib::Request&, httplib::Response& res) {
      const int n = ++hits_;
      if (n <= failures) {
        res.status = status;
        res.set_content(wire::encode_error("scripted failure"), "application/json");
      } else {
        res.set_content(ok_body, "application/json");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FlakyServer() {
    server_.stop();
    thread_.join();
  }
  ServiceEndpointConfig Config(int retries) const {
    return {"http://127.0.0.1:" + std::to_string(port_), 5000, retries};
  }
  int hits() const { return hits_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  std::atomic<int> hits_{0};
  int port_ = 0;
};

const std::string kOneVector = R"({"dim":2,"vectors":[[0.6,0.8]]})";

TEST(RetryTest, RecoversFrom5xxWithinBudget) {
  FlakyServer s(2, 503, kOneVector);
  HttpEmbeddingClient client(s.Config(2));
  const auto v = client.embed_texts({"x"});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_FLOAT_EQ(v[0][1], 0.8f);
  EXPECT_EQ(s.hits(), 3);
}

TEST(RetryTest, ExhaustedBudgetIsUnavailable) {
  FlakyServer s(5, 500, kOneVector);
  HttpEmbeddingClient client(s.Config(1));
  EXPECT_EQ(CodeOf([&] { client.embed_texts({"x"}); }), ErrorCode::kServiceUnavailable);
  EXPECT_EQ(s.hits(), 2);
}

TEST(RetryTest, ClientErrorIsNotRetried) {
  FlakyServer s(5, 422, kOneVector);
  HttpEmbeddingClient client(s.Config(3));
  EXPECT_EQ(CodeOf([&] { client.embed_texts({"x"}); }), ErrorCode::kServiceRejected);
  EXPECT_EQ(s.hits(), 1);
}

TEST(RetryTest, MalformedSuccessBody) {
  FlakyServer s(0, 200, R"({"dim":2,"vectors":[[0.6,0.8],[1,0]]})");
  HttpEmbeddingClient client(s.Config(0));
  EXPECT_EQ(CodeOf([&] { client.embed_texts({"x"}); }), ErrorCode::kMalformedResponse);
}

TEST(RetryTest, ConnectionRefusedIsUnavailable) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpEmbeddingClient client(ServiceEndpointConfig{"http://127.0.0.1:" + std::to_string(port), 1000, 2});
  EXPECT_EQ(CodeOf([&] { client.embed_texts({"x"}); }), ErrorCode::kServiceUnavailable);
}

}  // namespace
}  // namespace mmrobust::services

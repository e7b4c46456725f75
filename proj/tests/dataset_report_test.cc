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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "mmrobust/dataset.h"
#include "mmrobust/error.h"
#include "mmrobust/image_io.h"
#include "mmrobust/perturbation.h"
#include "mmrobust/report.h"

namespace mmrobust {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

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

void WriteFile(const fs::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t CountLines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::size_t CountOf(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

TEST(DatasetTest, FixtureDatasetLoads) {
  TempDir dir;
  const auto ds = testing::write_fixture_dataset(dir.path(), 2, 32);
  EXPECT_EQ(ds.records.size(), 10u);
  EXPECT_EQ(ds.image_ids(), (std::vector<std::string>{"img0", "img1"}));
  EXPECT_EQ(ds.captions_of("img1").size(), 5u);
  EXPECT_EQ(ds.records[7].key(), "img1#2");
  EXPECT_EQ(ds.images.at("img0").filename(), "img0.png");
}

TEST(DatasetTest, CaptionsRoundTripSorted) {
  TempDir dir;
  std::vector<CaptionRecord> recs = {{"b", 1, "second \"quoted\""}, {"a", 0, "caf\xc3\xa9"}, {"b", 0, "x"}};
  write_captions(dir.path() / "c.jsonl", recs);
  const auto back = read_captions(dir.path() / "c.jsonl");
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[0], (CaptionRecord{"a", 0, "caf\xc3\xa9"}));
  EXPECT_EQ(back[1], (CaptionRecord{"b", 0, "x"}));
  EXPECT_EQ(back[2], (CaptionRecord{"b", 1, "second \"quoted\""}));
}

TEST(DatasetTest, MalformedCaptionsReportLine) {
  TempDir dir;
  const auto p = dir.path() / "bad.jsonl";
  WriteFile(p, "{\"image_id\":\"a\",\"caption_index\":0,\"text\":\"ok\"}\n\n{\"image_id\":\"a\"}\n");
  try {
    read_captions(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedCaptions);
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  WriteFile(p, "{\"image_id\":\"a\",\"caption_index\":0,\"text\":\"x\"}\n"
               "{\"image_id\":\"a\",\"caption_index\":0,\"text\":\"y\"}\n");
  EXPECT_EQ(CodeOf([&] { read_captions(p); }), ErrorCode::kMalformedCaptions);
  WriteFile(p, "{\"image_id\":\"a__b\",\"caption_index\":0,\"text\":\"x\"}\n");
  EXPECT_EQ(CodeOf([&] { read_captions(p); }), ErrorCode::kMalformedCaptions);
  WriteFile(p, "{\"image_id\":\"../a\",\"caption_index\":0,\"text\":\"x\"}\n");
  EXPECT_EQ(CodeOf([&] { read_captions(p); }), ErrorCode::kMalformedCaptions);
  EXPECT_EQ(CodeOf([&] { read_captions(dir.path() / "absent.jsonl"); }), ErrorCode::kMalformedCaptions);
}

TEST(DatasetTest, MissingImage) {
  TempDir dir;
  fs::create_directories(dir.path() / "images");
  write_image(dir.path() / "images" / "a.png", testing::fixture_image(0, 16));
  write_captions(dir.path() / "c.jsonl", {{"a", 0, "x"}, {"b", 0, "y"}});
  EXPECT_EQ(CodeOf([&] { load_caption_dataset(dir.path() / "images", dir.path() / "c.jsonl"); }),
            ErrorCode::kMissingImage);
  write_image(dir.path() / "images" / "b.jpg", testing::fixture_image(1, 16));
  const auto ds = load_caption_dataset(dir.path() / "images", dir.path() / "c.jsonl");
  EXPECT_EQ(ds.images.at("b").extension(), ".jpg");
  EXPECT_TRUE(find_image(dir.path() / "images", "zzz").empty());
}

TEST(DatasetTest, SaveLoadRoundTrip) {
  TempDir a, b;
  const auto ds = testing::write_fixture_dataset(a.path(), 2, 24);
  save_caption_dataset(ds, b.path() / "imgs", b.path() / "caps.jsonl");
  const auto back = load_caption_dataset(b.path() / "imgs", b.path() / "caps.jsonl");
  EXPECT_EQ(back.records, ds.records);
  for (const auto& [id, path] : ds.images) {
    EXPECT_EQ(read_image(back.images.at(id)), read_image(path));
  }
}

TEST(DatasetTest, CocoImport) {
  TempDir dir;
  const auto p = dir.path() / "captions_val.json";
  WriteFile(p, R"({"images":[{"id":7,"file_name":"COCO_val_0007.jpg"},{"id":3,"file_name":"b.png"}],
    "annotations":[{"id":20,"image_id":7,"caption":"second  "},{"id":5,"image_id":7,"caption":"first"},
                   {"id":9,"image_id":3,"caption":"only"}]})");
  const auto recs = import_coco_captions(p);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0], (CaptionRecord{"COCO_val_0007", 0, "first"}));
  EXPECT_EQ(recs[1], (CaptionRecord{"COCO_val_0007", 1, "second"}));
  EXPECT_EQ(recs[2], (CaptionRecord{"b", 0, "only"}));
  WriteFile(p, R"({"images":[],"annotations":[{"id":1,"image_id":1,"caption":"x"}]})");
  EXPECT_EQ(CodeOf([&] { import_coco_captions(p); }), ErrorCode::kMalformedCaptions);
}

TEST(DatasetTest, ObjectLabels) {
  TempDir dir;
  const auto p = dir.path() / "labels.json";
  WriteFile(p, R"({"img0":["bowl","apple"],"img1":["dog"]})");
  const auto labels = load_object_labels(p);
  EXPECT_EQ(labels.at("img0"), (std::vector<std::string>{"bowl", "apple"}));
  WriteFile(p, R"({"img0":[]})");
  EXPECT_EQ(CodeOf([&] { load_object_labels(p); }), ErrorCode::kMissingLabels);
  EXPECT_EQ(CodeOf([&] { load_object_labels(dir.path() / "nope.json"); }), ErrorCode::kMissingLabels);
}

BenchmarkReport SampleReport() {
  BenchmarkReport r;
  r.dataset = "fixture";
  r.adapter = "mock";
  r.modality = Modality::kText;
  r.primary_metric = "rsum";
  r.clean = {{"rsum", 500.0}, {"tr1", 90.0}};
  const std::vector<std::pair<std::string, std::vector<double>>> methods = {
      {"keyboard", {480, 470, 460, 450, 440}},
      {"ocr", {495, 490, 485, 480, 475}},
      {"formal", {499, 499, 499, 499, 499}},
  };
  for (const auto& [m, vals] : methods) {
    for (std::size_t s = 0; s < vals.size(); ++s) {
      ReportRow row{m, static_cast<int>(s + 1), {{"rsum", vals[s]}, {"tr1", vals[s] / 6}}, 0, {}};
      if (m == "keyboard" && s == 4) {
        row.dropped = 3;
        row.clean_matched = MetricValues{{"rsum", 498.0}, {"tr1", 89.0}};
      }
      r.rows.push_back(row);
    }
  }
  r.metadata = {42, 0.75, 100, {0.7, 0.5}, 3, 10, false};
  r.finalize();
  return r;
}

TEST(ReportTest, FinalizeAveragesWithinThenAcrossMethods) {
  const auto r = SampleReport();
  ASSERT_EQ(r.method_averages.size(), 3u);
  EXPECT_DOUBLE_EQ(r.method_averages[0].value, 460.0);
  EXPECT_DOUBLE_EQ(r.method_averages[1].value, 485.0);
  EXPECT_DOUBLE_EQ(r.method_averages[2].value, 499.0);
  EXPECT_NEAR(r.average, (460.0 + 485.0 + 499.0) / 3.0, 1e-12);
  EXPECT_NEAR(r.mmi, (500.0 - r.average) / 500.0, 1e-12);
}

TEST(ReportTest, FinalizeErrors) {
  BenchmarkReport r;
  r.primary_metric = "rsum";
  r.clean = {{"rsum", 1.0}};
  EXPECT_THROW(r.finalize(), Error);
  r.rows.push_back({"x", 1, {{"tr1", 1.0}}, 0, {}});
  EXPECT_THROW(r.finalize(), Error);
  r.rows[0].metrics["rsum"] = 0.5;
  r.clean = {{"rsum", 0.0}};
  EXPECT_EQ(CodeOf([&] { r.finalize(); }), ErrorCode::kZeroCleanScore);
}

// Severity-averaged published columns fed through the report reproduce the
// printed average and MMI.
TEST(ReportTest, PublishedColumnsReproduceMmi) {
  for (const auto& row : testing::published_method_columns()) {
    BenchmarkReport r;
    r.primary_metric = "rsum";
    r.clean = {{"rsum", row.clean}};
    for (std::size_t m = 0; m < row.columns.size(); ++m) {
      for (int s = 1; s <= 5; ++s) {
        // Spread around the column value so only the severity mean matches.
        const double v = row.columns[m] + (s - 3) * 4.0;
        r.rows.push_back({std::string(name(all_image_methods()[m])), s, {{"rsum", v}}, 0, {}});
      }
    }
    r.finalize();
    EXPECT_NEAR(r.average, row.printed_average, 0.05 + 1e-9) << row.model;
    EXPECT_NEAR(100.0 * r.mmi, row.printed_mmi_pct, 0.1) << row.model;
  }
}

TEST(ReportTest, JsonRoundTrip) {
  auto r = SampleReport();
  r.fid = 12.5;
  const auto back = BenchmarkReport::from_json(r.to_json());
  EXPECT_EQ(back, r);
  EXPECT_FALSE(back.clip_fid.has_value());
  EXPECT_THROW(BenchmarkReport::from_json("{}"), Error);
}

TEST(ReportTest, CsvShapes) {
  const auto r = SampleReport();
  const auto csv = render_csv(r);
  // Header, two clean metrics, 15 rows x 2 metrics.
  EXPECT_EQ(CountLines(csv), 1u + 2u + 30u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,severity,metric,value");
  EXPECT_NE(csv.find("clean,0,rsum,500.000000"), std::string::npos);
  EXPECT_NE(csv.find("keyboard,5,rsum,440.000000"), std::string::npos);
  const auto plot = render_plot_csv(r);
  EXPECT_EQ(CountLines(plot), 1u + 1u + 3u);
  EXPECT_NE(plot.find("ocr,485.000000"), std::string::npos);
}

TEST(ReportTest, MarkdownMarksExtremesOnce) {
  const auto md = render_markdown(SampleReport());
  EXPECT_EQ(CountOf(md, "**"), 2u);
  EXPECT_EQ(CountOf(md, "<u>"), 1u);
  EXPECT_NE(md.find("**460.0**"), std::string::npos);
  EXPECT_NE(md.find("<u>499.0</u>"), std::string::npos);
  EXPECT_NE(md.find("| mock | 500.0 |"), std::string::npos);
  EXPECT_NE(md.find("↓ 3.7%"), std::string::npos);
  // Severity breakdown lists the dropped count per method.
  EXPECT_NE(md.find("| keyboard | 480.0 | 470.0 | 460.0 | 450.0 | 440.0 | 460.0 | 3 |"),
            std::string::npos)
      << md;
}

TEST(ReportTest, EmitWritesPlotTable) {
  TempDir dir;
  const auto r = SampleReport();
  emit_report(r, ReportFormat::kCsv, dir.path() / "run.csv");
  EXPECT_TRUE(fs::exists(dir.path() / "run.csv"));
  EXPECT_EQ(ReadFile(dir.path() / "run.plot.csv"), render_plot_csv(r));
  emit_report(r, ReportFormat::kJson, dir.path() / "run.json");
  EXPECT_EQ(BenchmarkReport::from_json(ReadFile(dir.path() / "run.json")), r);
  emit_report(r, ReportFormat::kMarkdown, dir.path() / "run.md");
  EXPECT_EQ(ReadFile(dir.path() / "run.md"), render_markdown(r));
  EXPECT_EQ(parse_report_format("md"), ReportFormat::kMarkdown);
  EXPECT_FALSE(parse_report_format("xml").has_value());
  EXPECT_EQ(format_fixed(2.345, 1), "2.3");
  EXPECT_EQ(format_fixed(-0.04, 1), "0.0");
}

}  // namespace
}  // namespace mmrobust

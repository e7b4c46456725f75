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

#include "mmrobust/perturbation.h"

#include <string>

#include "mmrobust/error.h"

namespace mmrobust {
namespace {

constexpr std::array<std::string_view, kImageMethodCount> kImageNames = {
    "gaussian_noise", "shot_noise",   "impulse_noise",     "speckle_noise",
    "defocus_blur",   "glass_blur",   "motion_blur",       "zoom_blur",
    "snow",           "frost",        "fog",               "brightness",
    "contrast",       "elastic_transform", "pixelate",     "jpeg_compression",
    "stylize",
};

constexpr std::array<std::string_view, kTextMethodCount> kTextNames = {
    "keyboard",           "ocr",              "character_insert",
    "character_replace",  "character_swap",   "character_delete",
    "synonym_replacement", "word_insertion",  "word_swap",
    "word_deletion",      "insert_punctuation", "formal",
    "casual",             "passive",          "active",
    "back_translation",
};

}  // namespace

std::array<ImageMethod, kImageMethodCount> all_image_methods() {
  std::array<ImageMethod, kImageMethodCount> out{};
  for (int i = 0; i < kImageMethodCount; ++i) out[i] = static_cast<ImageMethod>(i);
  return out;
}

std::array<TextMethod, kTextMethodCount> all_text_methods() {
  std::array<TextMethod, kTextMethodCount> out{};
  for (int i = 0; i < kTextMethodCount; ++i) out[i] = static_cast<TextMethod>(i);
  return out;
}

std::string_view name(Modality modality) {
  return modality == Modality::kImage ? "image" : "text";
}

std::string_view name(ImageMethod method) {
  return kImageNames[static_cast<std::size_t>(method)];
}

std::string_view name(TextMethod method) {
  return kTextNames[static_cast<std::size_t>(method)];
}

std::optional<Modality> parse_modality(std::string_view text) {
  if (text == "image") return Modality::kImage;
  if (text == "text") return Modality::kText;
  return std::nullopt;
}

std::optional<ImageMethod> parse_image_method(std::string_view text) {
  for (int i = 0; i < kImageMethodCount; ++i) {
    if (kImageNames[i] == text) return static_cast<ImageMethod>(i);
  }
  return std::nullopt;
}

std::optional<TextMethod> parse_text_method(std::string_view text) {
  for (int i = 0; i < kTextMethodCount; ++i) {
    if (kTextNames[i] == text) return static_cast<TextMethod>(i);
  }
  return std::nullopt;
}

TextLevel level(TextMethod method) {
  if (method <= TextMethod::kCharacterDelete) return TextLevel::kCharacter;
  if (method <= TextMethod::kInsertPunctuation) return TextLevel::kWord;
  return TextLevel::kSentence;
}

int severity_levels(ImageMethod) { return kMaxSeverity; }

int severity_levels(TextMethod method) {
  return level(method) == TextLevel::kSentence ? 1 : kMaxSeverity;
}

PerturbationSpec PerturbationSpec::image(ImageMethod m, int severity) {
  return PerturbationSpec{m, severity};
}

PerturbationSpec PerturbationSpec::text(TextMethod m, int severity) {
  return PerturbationSpec{m, severity};
}

PerturbationSpec PerturbationSpec::parse(Modality modality,
                                         std::string_view method,
                                         int severity) {
  if (modality == Modality::kImage) {
    if (auto m = parse_image_method(method)) return image(*m, severity);
  } else {
    if (auto m = parse_text_method(method)) return text(*m, severity);
  }
  throw Error(ErrorCode::kUnknownMethod,
              "'" + std::string(method) + "' is not a " +
                  std::string(name(modality)) + " perturbation");
}

Modality PerturbationSpec::modality() const {
  return std::holds_alternative<ImageMethod>(method) ? Modality::kImage
                                                     : Modality::kText;
}

std::string_view PerturbationSpec::method_name() const {
  return std::visit([](auto m) { return name(m); }, method);
}

const ImageMethod* PerturbationSpec::image_method() const {
  return std::get_if<ImageMethod>(&method);
}

const TextMethod* PerturbationSpec::text_method() const {
  return std::get_if<TextMethod>(&method);
}

void PerturbationSpec::validate() const {
  const int levels = std::visit([](auto m) { return severity_levels(m); }, method);
  if (severity < 1 || severity > levels) {
    throw Error(ErrorCode::kInvalidArgument,
                "severity " + std::to_string(severity) + " out of range 1.." +
                    std::to_string(levels) + " for " +
                    std::string(method_name()));
  }
}

}  // namespace mmrobust

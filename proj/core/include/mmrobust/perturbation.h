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

#ifndef MMROBUST_PERTURBATION_H_
#define MMROBUST_PERTURBATION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace mmrobust {

enum class Modality : std::uint8_t { kImage, kText };

// Order follows the benchmark tables: noise, blur, weather, digital, stylize.
enum class ImageMethod : std::uint8_t {
  kGaussianNoise,
  kShotNoise,
  kImpulseNoise,
  kSpeckleNoise,
  kDefocusBlur,
  kGlassBlur,
  kMotionBlur,
  kZoomBlur,
  kSnow,
  kFrost,
  kFog,
  kBrightness,
  kContrast,
  kElasticTransform,
  kPixelate,
  kJpegCompression,
  kStylize,
};

// Order follows the benchmark tables: character, word, sentence level.
enum class TextMethod : std::uint8_t {
  kKeyboard,
  kOcr,
  kCharacterInsert,
  kCharacterReplace,
  kCharacterSwap,
  kCharacterDelete,
  kSynonymReplacement,
  kWordInsertion,
  kWordSwap,
  kWordDeletion,
  kInsertPunctuation,
  kFormal,
  kCasual,
  kPassive,
  kActive,
  kBackTranslation,
};

enum class TextLevel : std::uint8_t { kCharacter, kWord, kSentence };

inline constexpr int kImageMethodCount = 17;
inline constexpr int kTextMethodCount = 16;
inline constexpr int kMaxSeverity = 5;

std::array<ImageMethod, kImageMethodCount> all_image_methods();
std::array<TextMethod, kTextMethodCount> all_text_methods();

std::string_view name(Modality modality);
std::string_view name(ImageMethod method);
std::string_view name(TextMethod method);

std::optional<Modality> parse_modality(std::string_view text);
std::optional<ImageMethod> parse_image_method(std::string_view text);
std::optional<TextMethod> parse_text_method(std::string_view text);

TextLevel level(TextMethod method);

// Number of severity levels a method exposes (5, or 1 for sentence level).
int severity_levels(ImageMethod method);
int severity_levels(TextMethod method);

// One benchmark entry: a method of either modality at a given severity.
struct PerturbationSpec {
  std::variant<ImageMethod, TextMethod> method;
  int severity = 1;

  static PerturbationSpec image(ImageMethod m, int severity);
  static PerturbationSpec text(TextMethod m, int severity);

  // Resolves a snake_case method name for the given modality; throws
  // Error(kUnknownMethod) when the name is not part of that modality.
  static PerturbationSpec parse(Modality modality, std::string_view method,
                                int severity);

  Modality modality() const;
  std::string_view method_name() const;
  const ImageMethod* image_method() const;
  const TextMethod* text_method() const;

  // Throws Error(kInvalidArgument) when the severity is outside the
  // method's ladder.
  void validate() const;

  friend bool operator==(const PerturbationSpec&,
                         const PerturbationSpec&) = default;
};

}  // namespace mmrobust

#endif  // MMROBUST_PERTURBATION_H_

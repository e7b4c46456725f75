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

#ifndef MMROBUST_TEXT_PERTURB_H_
#define MMROBUST_TEXT_PERTURB_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mmrobust/perturbation.h"
#include "mmrobust/services.h"

namespace mmrobust::text {

// Physically adjacent keys per character. Built-in layout is QWERTY on a
// staggered grid; uppercase letters map to uppercase neighbors.
class KeyboardLayout {
 public:
  KeyboardLayout() = default;
  explicit KeyboardLayout(std::map<char, std::string> adjacency);

  static KeyboardLayout qwerty();
  // {"a": "qwsz", ...}; throws Error(kInvalidArgument) on bad input.
  static KeyboardLayout from_json(std::string_view json);

  // Empty when the character has no entry.
  std::string_view neighbors(char c) const;
  const std::map<char, std::string>& adjacency() const { return adjacency_; }

 private:
  std::map<char, std::string> adjacency_;
};

class OcrConfusionTable {
 public:
  OcrConfusionTable() = default;
  explicit OcrConfusionTable(std::map<char, std::string> confusions);

  static OcrConfusionTable standard();
  static OcrConfusionTable from_json(std::string_view json);

  std::string_view misreads(char c) const;
  const std::map<char, std::string>& confusions() const { return confusions_; }

 private:
  std::map<char, std::string> confusions_;
};

class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  // The ~5k-entry English lexicon compiled into the library.
  static const SynonymLexicon& bundled();
  // Lines of `lemma<TAB>syn1,syn2,...`. Self-references are dropped, and so
  // are entries left without synonyms.
  static SynonymLexicon parse(std::string_view tsv);
  static SynonymLexicon load(const std::string& path);

  void add(std::string lemma, std::vector<std::string> synonyms);
  // Case-insensitive; null when absent.
  const std::vector<std::string>* lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(std::set<std::string> words);

  // The 127-word English list.
  static const StopWordList& english();
  // One word per line; blank lines and '#' comments ignored.
  static StopWordList parse(std::string_view text);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

// Per-severity strengths: p(s) = 0.05 s for character modes and word
// delete/punctuate, n(s) = max(1, round(0.05 s words)) for the counted
// word modes.
struct TextSeverityMap {
  static double char_p(int severity);
  static double word_p(int severity);
  static int word_n(int severity, int word_count);
};

// Whitespace split with leading and trailing punctuation detached.
std::vector<std::string> tokenize(std::string_view text);
// Joins with single spaces; closing punctuation attaches to the previous
// token and opening brackets to the next one.
std::string detokenize(const std::vector<std::string>& tokens);

enum class CharMode { kKeyboard, kOcr, kInsert, kReplace, kSwap, kDelete };
enum class WordMode { kSynonymReplace, kInsert, kSwap, kDelete, kPunctuate };

struct CharEditResult {
  std::string text;
  int edits = 0;     // operations applied
  int eligible = 0;  // positions that could have been targeted
};

// Throws Error(kEmptyInput) for blank text, Error(kInvalidArgument) for a
// bad severity.
CharEditResult perturb_characters_detailed(std::string_view text, CharMode mode, int severity,
                                           std::uint64_t seed, const KeyboardLayout& layout,
                                           const OcrConfusionTable& ocr);
std::string perturb_characters(std::string_view text, CharMode mode, int severity,
                               std::uint64_t seed, const KeyboardLayout& layout,
                               const OcrConfusionTable& ocr);

struct WordEditResult {
  std::string text;
  int operations = 0;
};

// Synonym modes throw Error(kNoEligibleWord) when no non-stop word has a
// lexicon entry.
WordEditResult perturb_words_detailed(std::string_view text, WordMode mode, int severity,
                                      std::uint64_t seed, const SynonymLexicon& lexicon,
                                      const StopWordList& stopwords);
std::string perturb_words(std::string_view text, WordMode mode, int severity,
                          std::uint64_t seed, const SynonymLexicon& lexicon,
                          const StopWordList& stopwords);

std::string_view style_name(TextMethod method);
std::string sentence_transform(std::string_view text, std::string_view style,
                               services::TransformClient* client);

struct TextResources {
  KeyboardLayout layout = KeyboardLayout::qwerty();
  OcrConfusionTable ocr = OcrConfusionTable::standard();
  const SynonymLexicon* lexicon = &SynonymLexicon::bundled();
  const StopWordList* stopwords = &StopWordList::english();
};

struct TextOutcome {
  std::string text;
  // Set when the method could not change the text (no eligible word or
  // character); the fidelity gate passes such samples through.
  bool flagged = false;
};

// Dispatches a spec. Sentence-level methods go through `transformer` and
// throw Error(kServiceUnavailable) when it is null.
TextOutcome apply_text_perturbation(std::string_view text, const PerturbationSpec& spec,
                                    std::uint64_t seed, const TextResources& resources,
                                    services::TransformClient* transformer);

}  // namespace mmrobust::text

#endif  // MMROBUST_TEXT_PERTURB_H_

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

#include "mmrobust/text_perturb.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mmrobust/error.h"
#include "mmrobust/rng.h"

namespace mmrobust::data {
extern const std::string_view kSynonymsTsv;
extern const std::string_view kStopwordsTxt;
extern const std::string_view kOcrConfusionsJson;
}  // namespace mmrobust::data

namespace mmrobust::text {
namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
char to_lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }
char to_upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower(c);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_word(std::string_view token) {
  return std::any_of(token.begin(), token.end(), [](char c) {
    return is_alnum(c) || static_cast<unsigned char>(c) >= 0x80;
  });
}

bool is_opening(std::string_view token) {
  return token == "(" || token == "[" || token == "{";
}

void check_severity(int severity) {
  if (severity < 1 || severity > kMaxSeverity) {
    throw Error(ErrorCode::kInvalidArgument, "severity must be in 1..5");
  }
}

void check_nonblank(std::string_view text) {
  if (trim(text).empty()) throw Error(ErrorCode::kEmptyInput, "text is empty");
}

std::map<char, std::string> parse_char_map(std::string_view json, const char* what) {
  const auto j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": expected a JSON object");
  }
  std::map<char, std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (key.size() != 1 || !value.is_string()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + ": keys must be single characters mapped to strings");
    }
    out[key[0]] = value.get<std::string>();
  }
  return out;
}

void validate_char_map(const std::map<char, std::string>& map, const char* what) {
  for (const auto& [key, value] : map) {
    if (value.empty() || value.find(key) != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + ": entry for '" + key +
                      "' must be nonempty and exclude the key itself");
    }
  }
}

struct Token {
  std::string text;
  bool space_before = false;
};

std::vector<Token> split_tokens(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  bool first = true;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end])) ++end;
    std::string_view chunk = text.substr(i, end - i);
    i = end;

    std::size_t lead = 0;
    while (lead < chunk.size() && is_punct(chunk[lead])) ++lead;
    std::size_t tail = chunk.size();
    while (tail > lead && is_punct(chunk[tail - 1])) --tail;

    bool space = !first;
    first = false;
    for (std::size_t k = 0; k < lead; ++k) {
      out.push_back({std::string(1, chunk[k]), space});
      space = false;
    }
    if (tail > lead) {
      out.push_back({std::string(chunk.substr(lead, tail - lead)), space});
    }
    for (std::size_t k = tail; k < chunk.size(); ++k) {
      out.push_back({std::string(1, chunk[k]), false});
    }
  }
  return out;
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && tokens[i].space_before) out += ' ';
    out += tokens[i].text;
  }
  return out;
}

std::vector<std::size_t> word_indices(const std::vector<Token>& tokens) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_word(tokens[i].text)) out.push_back(i);
  }
  return out;
}

std::string match_case(const std::string& replacement, std::string_view original) {
  std::string out = replacement;
  if (original.empty() || out.empty() || !is_upper(original.front())) return out;
  const bool all_upper =
      original.size() > 1 && std::all_of(original.begin(), original.end(),
                                         [](char c) { return !std::islower(static_cast<unsigned char>(c)); });
  if (all_upper) {
    for (char& c : out) c = to_upper(c);
  } else {
    out[0] = to_upper(out[0]);
  }
  return out;
}

char random_letter(Rng& rng) { return static_cast<char>('a' + rng.below(26)); }

// A letter other than `c` (case-insensitively), in the case of `c`.
char replacement_letter(char c, Rng& rng) {
  if (!std::isalpha(static_cast<unsigned char>(c))) return random_letter(rng);
  const int original = to_lower(c) - 'a';
  int pick = static_cast<int>(rng.below(25));
  if (pick >= original) ++pick;
  const char out = static_cast<char>('a' + pick);
  return is_upper(c) ? to_upper(out) : out;
}

}  // namespace

// ---------------------------------------------------------------------------

KeyboardLayout::KeyboardLayout(std::map<char, std::string> adjacency)
    : adjacency_(std::move(adjacency)) {
  validate_char_map(adjacency_, "keyboard layout");
}

KeyboardLayout KeyboardLayout::qwerty() {
  struct Row {
    std::string_view keys;
    double offset;
  };
  constexpr std::array<Row, 4> kRows = {{{"1234567890", 0.0},
                                         {"qwertyuiop", 0.5},
                                         {"asdfghjkl", 0.75},
                                         {"zxcvbnm", 1.25}}};
  std::map<char, std::string> adjacency;
  for (std::size_t r = 0; r < kRows.size(); ++r) {
    for (std::size_t i = 0; i < kRows[r].keys.size(); ++i) {
      const char key = kRows[r].keys[i];
      const double x = kRows[r].offset + static_cast<double>(i);
      std::string neighbors;
      for (std::size_t q = (r == 0 ? 0 : r - 1); q <= std::min(r + 1, kRows.size() - 1); ++q) {
        for (std::size_t j = 0; j < kRows[q].keys.size(); ++j) {
          if (q == r && j == i) continue;
          const double dx = std::abs(kRows[q].offset + static_cast<double>(j) - x);
          if ((q == r && dx == 1.0) || (q != r && dx < 1.0)) neighbors += kRows[q].keys[j];
        }
      }
      adjacency[key] = neighbors;
      if (std::isalpha(static_cast<unsigned char>(key))) {
        std::string upper = neighbors;
        for (char& c : upper) c = to_upper(c);
        adjacency[to_upper(key)] = upper;
      }
    }
  }
  return KeyboardLayout(std::move(adjacency));
}

KeyboardLayout KeyboardLayout::from_json(std::string_view json) {
  return KeyboardLayout(parse_char_map(json, "keyboard layout"));
}

std::string_view KeyboardLayout::neighbors(char c) const {
  const auto it = adjacency_.find(c);
  return it == adjacency_.end() ? std::string_view{} : std::string_view(it->second);
}

OcrConfusionTable::OcrConfusionTable(std::map<char, std::string> confusions)
    : confusions_(std::move(confusions)) {
  validate_char_map(confusions_, "OCR table");
}

OcrConfusionTable OcrConfusionTable::standard() { return from_json(data::kOcrConfusionsJson); }

OcrConfusionTable OcrConfusionTable::from_json(std::string_view json) {
  return OcrConfusionTable(parse_char_map(json, "OCR table"));
}

std::string_view OcrConfusionTable::misreads(char c) const {
  const auto it = confusions_.find(c);
  return it == confusions_.end() ? std::string_view{} : std::string_view(it->second);
}

const SynonymLexicon& SynonymLexicon::bundled() {
  static const SynonymLexicon lexicon = parse(data::kSynonymsTsv);
  return lexicon;
}

SynonymLexicon SynonymLexicon::parse(std::string_view tsv) {
  SynonymLexicon lexicon;
  std::size_t line_no = 0;
  while (!tsv.empty()) {
    const std::size_t eol = tsv.find('\n');
    std::string_view line = tsv.substr(0, eol);
    tsv.remove_prefix(eol == std::string_view::npos ? tsv.size() : eol + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lexicon line " + std::to_string(line_no) + ": missing tab");
    }
    std::vector<std::string> synonyms;
    std::string_view rest = line.substr(tab + 1);
    while (true) {
      const std::size_t comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      if (!item.empty()) synonyms.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    lexicon.add(std::string(trim(line.substr(0, tab))), std::move(synonyms));
  }
  return lexicon;
}

SynonymLexicon SynonymLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void SynonymLexicon::add(std::string lemma, std::vector<std::string> synonyms) {
  lemma = lowercase(lemma);
  std::vector<std::string> kept;
  for (auto& s : synonyms) {
    if (s.empty() || lowercase(s) == lemma) continue;
    if (std::find(kept.begin(), kept.end(), s) != kept.end()) continue;
    kept.push_back(std::move(s));
  }
  if (lemma.empty() || kept.empty()) return;
  entries_[lemma] = std::move(kept);
}

const std::vector<std::string>* SynonymLexicon::lookup(std::string_view word) const {
  const auto it = entries_.find(lowercase(word));
  return it == entries_.end() ? nullptr : &it->second;
}

StopWordList::StopWordList(std::set<std::string> words) {
  for (const auto& w : words) words_.insert(lowercase(w));
}

const StopWordList& StopWordList::english() {
  static const StopWordList list = parse(data::kStopwordsTxt);
  return list;
}

StopWordList StopWordList::parse(std::string_view text) {
  std::set<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.emplace(w);
  }
  return StopWordList(std::move(words));
}

bool StopWordList::contains(std::string_view word) const {
  return words_.find(lowercase(word)) != words_.end();
}

double TextSeverityMap::char_p(int severity) {
  check_severity(severity);
  return 0.05 * severity;
}

double TextSeverityMap::word_p(int severity) {
  check_severity(severity);
  return 0.05 * severity;
}

int TextSeverityMap::word_n(int severity, int word_count) {
  check_severity(severity);
  return std::max(1, static_cast<int>(std::lround(0.05 * severity * word_count)));
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : split_tokens(text)) out.push_back(std::move(t.text));
  return out;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const bool attach = i == 0 || is_opening(tokens[i - 1]) ||
                        (!is_word(tokens[i]) && !is_opening(tokens[i]));
    if (!attach) out += ' ';
    out += tokens[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

CharEditResult perturb_characters_detailed(std::string_view text, CharMode mode, int severity,
                                           std::uint64_t seed, const KeyboardLayout& layout,
                                           const OcrConfusionTable& ocr) {
  check_nonblank(text);
  const double p = TextSeverityMap::char_p(severity);
  Rng rng(seed);
  std::string s(text);
  CharEditResult result;

  auto table_for = [&](char c) -> std::string_view {
    if (mode == CharMode::kKeyboard) return layout.neighbors(c);
    return ocr.misreads(c);
  };

  switch (mode) {
    case CharMode::kKeyboard:
    case CharMode::kOcr:
    case CharMode::kReplace: {
      std::vector<std::size_t> eligible;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_alnum(s[i])) continue;
        if (mode != CharMode::kReplace && table_for(s[i]).empty()) continue;
        eligible.push_back(i);
      }
      auto substitute = [&](std::size_t i) {
        if (mode == CharMode::kReplace) {
          s[i] = replacement_letter(s[i], rng);
        } else {
          const auto options = table_for(s[i]);
          s[i] = options[rng.below(options.size())];
        }
        ++result.edits;
      };
      for (std::size_t i : eligible) {
        if (rng.bernoulli(p)) substitute(i);
      }
      if (result.edits == 0 && !eligible.empty()) substitute(eligible[rng.below(eligible.size())]);
      result.eligible = static_cast<int>(eligible.size());
      break;
    }
    case CharMode::kInsert: {
      std::string out;
      out.reserve(s.size() + s.size() / 4);
      std::vector<std::size_t> anchors;
      for (char c : s) {
        out += c;
        if (!is_alnum(c)) continue;
        ++result.eligible;
        if (rng.bernoulli(p)) {
          out += random_letter(rng);
          ++result.edits;
        } else {
          anchors.push_back(out.size());
        }
      }
      if (result.edits == 0 && !anchors.empty()) {
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(anchors[rng.below(anchors.size())]),
                   random_letter(rng));
        ++result.edits;
      }
      s = std::move(out);
      break;
    }
    case CharMode::kSwap: {
      std::vector<std::size_t> distinct;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (!is_alnum(s[i]) || !is_alnum(s[i + 1])) continue;
        ++result.eligible;
        if (s[i] != s[i + 1]) distinct.push_back(i);
        if (rng.bernoulli(p)) {
          std::swap(s[i], s[i + 1]);
          ++result.edits;
        }
      }
      if (result.edits == 0 && !distinct.empty()) {
        const std::size_t i = distinct[rng.below(distinct.size())];
        std::swap(s[i], s[i + 1]);
        ++result.edits;
      }
      break;
    }
    case CharMode::kDelete: {
      // Per whitespace-delimited chunk, the last surviving alphanumeric
      // character is never removed.
      std::vector<bool> drop(s.size(), false);
      std::vector<std::size_t> candidates;
      std::size_t i = 0;
      while (i < s.size()) {
        if (is_space(s[i])) {
          ++i;
          continue;
        }
        std::size_t end = i;
        while (end < s.size() && !is_space(s[end])) ++end;
        int alnum = 0;
        for (std::size_t k = i; k < end; ++k) alnum += is_alnum(s[k]) ? 1 : 0;
        if (alnum >= 2) {
          int remaining = alnum;
          for (std::size_t k = i; k < end; ++k) {
            if (!is_alnum(s[k])) continue;
            ++result.eligible;
            candidates.push_back(k);
            if (rng.bernoulli(p) && remaining > 1) {
              drop[k] = true;
              --remaining;
              ++result.edits;
            }
          }
        }
        i = end;
      }
      if (result.edits == 0 && !candidates.empty()) {
        drop[candidates[rng.below(candidates.size())]] = true;
        ++result.edits;
      }
      std::string out;
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (!drop[k]) out += s[k];
      }
      s = std::move(out);
      break;
    }
  }
  result.text = std::move(s);
  return result;
}

std::string perturb_characters(std::string_view text, CharMode mode, int severity,
                               std::uint64_t seed, const KeyboardLayout& layout,
                               const OcrConfusionTable& ocr) {
  return perturb_characters_detailed(text, mode, severity, seed, layout, ocr).text;
}

WordEditResult perturb_words_detailed(std::string_view text, WordMode mode, int severity,
                                      std::uint64_t seed, const SynonymLexicon& lexicon,
                                      const StopWordList& stopwords) {
  check_nonblank(text);
  check_severity(severity);
  auto tokens = split_tokens(text);
  auto words = word_indices(tokens);
  if (words.empty()) throw Error(ErrorCode::kEmptyInput, "text has no word tokens");

  Rng rng(seed);
  const int word_count = static_cast<int>(words.size());
  WordEditResult result;

  auto synonym_candidates = [&] {
    std::vector<std::size_t> out;
    for (std::size_t w : words) {
      if (!stopwords.contains(tokens[w].text) && lexicon.lookup(tokens[w].text) != nullptr) {
        out.push_back(w);
      }
    }
    if (out.empty()) {
      throw Error(ErrorCode::kNoEligibleWord, "no word has a synonym entry");
    }
    return out;
  };
  auto random_synonym = [&](std::string_view word) {
    const auto& list = *lexicon.lookup(word);
    return list[rng.below(list.size())];
  };

  switch (mode) {
    case WordMode::kSynonymReplace: {
      auto candidates = synonym_candidates();
      const std::size_t k = std::min<std::size_t>(
          TextSeverityMap::word_n(severity, word_count), candidates.size());
      for (std::size_t i = 0; i < k; ++i) {
        std::swap(candidates[i], candidates[i + rng.below(candidates.size() - i)]);
        auto& token = tokens[candidates[i]];
        token.text = match_case(random_synonym(token.text), token.text);
        ++result.operations;
      }
      break;
    }
    case WordMode::kInsert: {
      const auto candidates = synonym_candidates();
      std::vector<std::string> sources;
      for (std::size_t c : candidates) sources.push_back(tokens[c].text);
      const int n = TextSeverityMap::word_n(severity, word_count);
      for (int i = 0; i < n; ++i) {
        const auto& source = sources[rng.below(sources.size())];
        const std::string synonym = lowercase(random_synonym(source));
        const auto current = word_indices(tokens);
        const std::size_t slot = rng.below(current.size() + 1);
        const std::size_t at = slot < current.size() ? current[slot] : current.back() + 1;
        if (at < tokens.size() && slot < current.size()) {
          tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at),
                        Token{synonym, tokens[at].space_before});
          tokens[at + 1].space_before = true;
        } else {
          tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), Token{synonym, true});
        }
        ++result.operations;
      }
      break;
    }
    case WordMode::kSwap: {
      if (word_count < 2) break;
      const int n = TextSeverityMap::word_n(severity, word_count);
      for (int i = 0; i < n; ++i) {
        const std::size_t a = rng.below(words.size());
        std::size_t b = rng.below(words.size() - 1);
        if (b >= a) ++b;
        std::swap(tokens[words[a]].text, tokens[words[b]].text);
        ++result.operations;
      }
      break;
    }
    case WordMode::kDelete: {
      if (word_count < 2) break;
      const double p = TextSeverityMap::word_p(severity);
      std::vector<bool> drop(words.size());
      int dropped = 0;
      for (std::size_t i = 0; i < words.size(); ++i) {
        drop[i] = rng.bernoulli(p);
        dropped += drop[i] ? 1 : 0;
      }
      if (dropped == word_count) {
        drop[rng.below(words.size())] = false;
        --dropped;
      } else if (dropped == 0) {
        drop[rng.below(words.size())] = true;
        ++dropped;
      }
      std::vector<Token> kept;
      for (std::size_t t = 0, w = 0; t < tokens.size(); ++t) {
        if (w < words.size() && words[w] == t) {
          if (!drop[w++]) kept.push_back(tokens[t]);
        } else {
          kept.push_back(tokens[t]);
        }
      }
      tokens = std::move(kept);
      result.operations = dropped;
      break;
    }
    case WordMode::kPunctuate: {
      static constexpr std::array<char, 6> kMarks = {'.', ',', '!', '?', ';', ':'};
      const double p = TextSeverityMap::word_p(severity);
      std::vector<bool> gap(words.size());
      for (std::size_t i = 0; i < words.size(); ++i) {
        gap[i] = rng.bernoulli(p);
        result.operations += gap[i] ? 1 : 0;
      }
      if (result.operations == 0) {
        gap[rng.below(words.size())] = true;
        result.operations = 1;
      }
      std::vector<Token> out;
      for (std::size_t t = 0, w = 0; t < tokens.size(); ++t) {
        Token token = tokens[t];
        if (w < words.size() && words[w] == t && gap[w++]) {
          out.push_back({std::string(1, kMarks[rng.below(kMarks.size())]), token.space_before});
          token.space_before = true;
        }
        out.push_back(std::move(token));
      }
      tokens = std::move(out);
      break;
    }
  }
  result.text = join_tokens(tokens);
  return result;
}

std::string perturb_words(std::string_view text, WordMode mode, int severity,
                          std::uint64_t seed, const SynonymLexicon& lexicon,
                          const StopWordList& stopwords) {
  return perturb_words_detailed(text, mode, severity, seed, lexicon, stopwords).text;
}

std::string_view style_name(TextMethod method) {
  switch (method) {
    case TextMethod::kFormal:
      return "formal";
    case TextMethod::kCasual:
      return "casual";
    case TextMethod::kPassive:
      return "passive";
    case TextMethod::kActive:
      return "active";
    case TextMethod::kBackTranslation:
      return "back_translate";
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name(method)) + " is not a sentence-level method");
  }
}

std::string sentence_transform(std::string_view text, std::string_view style,
                               services::TransformClient* client) {
  check_nonblank(text);
  services::validate_transform_request(text, style);
  if (client == nullptr) {
    throw Error(ErrorCode::kServiceUnavailable, "no transform service configured");
  }
  std::string out = client->transform_text(text, style);
  if (trim(out).empty()) {
    throw Error(ErrorCode::kMalformedResponse, "transform service returned empty text");
  }
  return out;
}

TextOutcome apply_text_perturbation(std::string_view text, const PerturbationSpec& spec,
                                    std::uint64_t seed, const TextResources& resources,
                                    services::TransformClient* transformer) {
  spec.validate();
  const TextMethod* method = spec.text_method();
  if (method == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "not a text perturbation");
  }
  const int s = spec.severity;

  auto char_mode = [&](CharMode mode) {
    auto r = perturb_characters_detailed(text, mode, s, seed, resources.layout, resources.ocr);
    return TextOutcome{std::move(r.text), r.edits == 0};
  };
  auto word_mode = [&](WordMode mode) {
    try {
      auto r = perturb_words_detailed(text, mode, s, seed, *resources.lexicon,
                                      *resources.stopwords);
      return TextOutcome{std::move(r.text), r.operations == 0};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoEligibleWord) throw;
      return TextOutcome{std::string(text), true};
    }
  };

  switch (*method) {
    case TextMethod::kKeyboard:
      return char_mode(CharMode::kKeyboard);
    case TextMethod::kOcr:
      return char_mode(CharMode::kOcr);
    case TextMethod::kCharacterInsert:
      return char_mode(CharMode::kInsert);
    case TextMethod::kCharacterReplace:
      return char_mode(CharMode::kReplace);
    case TextMethod::kCharacterSwap:
      return char_mode(CharMode::kSwap);
    case TextMethod::kCharacterDelete:
      return char_mode(CharMode::kDelete);
    case TextMethod::kSynonymReplacement:
      return word_mode(WordMode::kSynonymReplace);
    case TextMethod::kWordInsertion:
      return word_mode(WordMode::kInsert);
    case TextMethod::kWordSwap:
      return word_mode(WordMode::kSwap);
    case TextMethod::kWordDeletion:
      return word_mode(WordMode::kDelete);
    case TextMethod::kInsertPunctuation:
      return word_mode(WordMode::kPunctuate);
    default:
      return TextOutcome{sentence_transform(text, style_name(*method), transformer), false};
  }
}

}  // namespace mmrobust::text

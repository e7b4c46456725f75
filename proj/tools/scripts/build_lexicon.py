#!/usr/bin/env python3
# Copyright 2026 The mmrobust Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds core/data/synonyms.tsv from a WordNet 3.0 database directory.

Usage: build_lexicon.py <wordnet-dict-dir> <out.tsv> [--entries 5000]

Keeps the most frequent single-word lemmas (by sense-tagged corpus count)
and lists single-word synonyms drawn from their synsets in sense order.
"""

import argparse
import collections
import os
import re

WORD = re.compile(r"^[a-z]+$")
POS = ("noun", "verb", "adj", "adv")


def read_synsets(wn_dir, pos):
    synsets = {}
    with open(os.path.join(wn_dir, "data." + pos), encoding="latin-1") as f:
        for line in f:
            if line.startswith(" "):
                continue
            fields = line.split()
            offset = fields[0]
            count = int(fields[3], 16)
            words = [fields[4 + 2 * i].lower() for i in range(count)]
            words = [re.sub(r"\(.*\)$", "", w) for w in words]
            synsets[offset] = words
    return synsets


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("wn_dir")
    parser.add_argument("out")
    parser.add_argument("--entries", type=int, default=5000)
    parser.add_argument("--max-synonyms", type=int, default=12)
    args = parser.parse_args()

    tag_count = collections.Counter()
    synonyms = collections.defaultdict(list)
    for pos in POS:
        synsets = read_synsets(args.wn_dir, pos)
        with open(os.path.join(args.wn_dir, "index." + pos), encoding="latin-1") as f:
            for line in f:
                if line.startswith(" "):
                    continue
                fields = line.split()
                lemma = fields[0]
                if not WORD.match(lemma):
                    continue
                synset_cnt = int(fields[2])
                p_cnt = int(fields[3])
                tagsense_cnt = int(fields[5 + p_cnt])
                offsets = fields[6 + p_cnt:6 + p_cnt + synset_cnt]
                tag_count[lemma] += tagsense_cnt
                for off in offsets:
                    for w in synsets[off]:
                        if w != lemma and WORD.match(w) and w not in synonyms[lemma]:
                            synonyms[lemma].append(w)

    ranked = sorted((l for l in synonyms if synonyms[l]),
                    key=lambda l: (-tag_count[l], l))[:args.entries]
    with open(args.out, "w", encoding="utf-8") as out:
        for lemma in sorted(ranked):
            out.write(lemma + "\t" + ",".join(synonyms[lemma][:args.max_synonyms]) + "\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Copyright 2026 The sentibench Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates tests/data/porter_vectors.tsv.

Words are every distinct lowercase ASCII-alphabetic token found in the
given text files; stems come from NLTK's PorterStemmer in
MARTIN_EXTENSIONS mode, which follows Porter's own reference
implementation. NLTK is needed only to regenerate the file, not to build
or test.

usage: gen_porter_vectors.py OUT.tsv FILE [FILE ...]
"""

import re
import sys

from nltk.stem.porter import PorterStemmer


def main(argv):
    if len(argv) < 3:
        sys.exit(__doc__)
    words = set()
    for path in argv[2:]:
        with open(path, encoding="utf-8", errors="replace") as f:
            words.update(w for w in re.findall(r"[A-Za-z]+", f.read()) if w.islower())
    stemmer = PorterStemmer(PorterStemmer.MARTIN_EXTENSIONS)
    with open(argv[1], "w", encoding="ascii", newline="\n") as out:
        out.write("# word\tstem (NLTK PorterStemmer, MARTIN_EXTENSIONS)\n")
        for w in sorted(words):
            out.write(f"{w}\t{stemmer.stem(w)}\n")
    print(f"{len(words)} words", file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv)

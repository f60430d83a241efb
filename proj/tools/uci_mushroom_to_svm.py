#!/usr/bin/env python3
# Copyright 2026 The sr1pqn Authors. All Rights Reserved.
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
"""Convert UCI agaricus-lepiota.data to libsvm text.

Every value of the 22 categorical attributes (including '?') becomes one
binary feature, attribute by attribute in sorted value order, which yields
117 features for the full 8124-row file. Labels: e -> 1, p -> 2.
"""

import argparse
import sys


def convert(rows):
    columns = list(zip(*[r[1:] for r in rows]))
    index = {}
    next_index = 1
    for col, values in enumerate(columns):
        for v in sorted(set(values)):
            index[(col, v)] = next_index
            next_index += 1
    lines = []
    for r in rows:
        label = {"e": "1", "p": "2"}[r[0]]
        feats = sorted(index[(col, v)] for col, v in enumerate(r[1:]))
        lines.append(label + "".join(f" {i}:1" for i in feats))
    return lines, next_index - 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input", help="agaricus-lepiota.data")
    ap.add_argument("output", help="destination .svm file")
    args = ap.parse_args()
    with open(args.input) as f:
        rows = [line.strip().split(",") for line in f if line.strip()]
    lines, n = convert(rows)
    with open(args.output, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} samples, {n} features", file=sys.stderr)


if __name__ == "__main__":
    main()

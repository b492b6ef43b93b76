#!/usr/bin/env python3
# Copyright 2026 The OCCER Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the unsupervised breast-cancer outlier benchmark as CSV.

Rows are the 357 benign records of the Wisconsin diagnostic data (class "n")
plus the first 10 malignant records in file order (class "o"), keeping the
original row order. Requires scikit-learn, which bundles the source data.
"""

import argparse
import csv

from sklearn.datasets import load_breast_cancer

NUM_OUTLIERS = 10


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/breast-cancer-unsupervised.csv")
    args = parser.parse_args()

    bunch = load_breast_cancer()
    # sklearn encodes malignant as 0 and benign as 1.
    malignant_seen = 0
    rows = []
    for features, target in zip(bunch.data, bunch.target):
        if target == 1:
            rows.append((features, "n"))
        elif malignant_seen < NUM_OUTLIERS:
            malignant_seen += 1
            rows.append((features, "o"))

    names = [name.replace(" ", "_") for name in bunch.feature_names]
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(names + ["class"])
        for features, label in rows:
            writer.writerow([repr(float(v)) for v in features] + [label])
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Convert a dense multi-label ARFF file (labels as trailing {0,1} attributes) to mlrules CSV.

    python3 tools/arff_to_csv.py emotions.arff data/emotions.csv --labels 6
"""

import argparse
import csv
import sys

from scipy.io import arff


def decode(value):
    return value.decode() if isinstance(value, bytes) else value


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("arff")
    parser.add_argument("csv")
    parser.add_argument("--labels", type=int, required=True, help="number of trailing label attributes")
    args = parser.parse_args()

    data, meta = arff.loadarff(args.arff)
    names = meta.names()
    if not 0 < args.labels < len(names):
        sys.exit(f"--labels must be between 1 and {len(names) - 1}")

    with open(args.csv, "w", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(names)
        for row in data:
            cells = [decode(v) for v in row]
            for name, value in zip(names[-args.labels:], cells[-args.labels:]):
                if str(value) not in ("0", "1"):
                    sys.exit(f"label '{name}' has value {value!r}; expected 0 or 1")
            writer.writerow([repr(float(v)) for v in cells[:-args.labels]] + [str(v) for v in cells[-args.labels:]])
    print(f"wrote {len(data)} rows, {len(names) - args.labels} features, {args.labels} labels to {args.csv}")


if __name__ == "__main__":
    main()

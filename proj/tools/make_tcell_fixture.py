#!/usr/bin/env python3
# Copyright 2026 the netinf authors
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
"""Convert a T-cell activation expression export to netinf's data CSV.

The upstream data ships with the R `longitudinal` package (objects
`tcell.44` / `tcell.10`: 10 time points, 44 or 10 replicates, 58 genes).
Export it from R with, for example:

    library(longitudinal)
    data(tcell)
    write.csv(as.data.frame(tcell.44), "tcell_wide.csv")

Two input layouts are accepted, detected from the header:

  1. Long/keyed:  replicate,time,<gene>,...   one row per (replicate, time)
  2. longitudinal export: first column is a row id "<time>-<replicate>"
     (the package's rowname convention), remaining columns are genes.

The output is netinf's long format (replicate,time,<genes>) restricted to
a gene subset: by default the 45 genes analysed in the accompanying
experiments, overridable with --genes. Rows are emitted sorted by
replicate then time. Values can be log2-transformed with --log2.
"""

import argparse
import csv
import math
import sys

DEFAULT_GENES = [
    "TRAF5", "JUND", "CDK4", "CASP4", "CD69", "C3X1",
    "FYB", "CCNA2", "AKT1", "CASP8", "RB1", "CCNG1",
    "CLU", "GATA3", "CDC2", "CASP7", "JUNB", "MAPK8",
    "MCL1", "CD27", "CSF2RA", "CTNNB1", "EGR1", "CDC42",
    "ID3", "IL2RG", "IL4R", "IL16", "ITGAM", "LCK",
    "MAP2K4", "MYD88", "NFKBIA", "PCNA", "PDE4B", "RBL2",
    "SOD1", "TCF12", "SLA", "APC", "E2F4", "TNFRSF1B",
    "IRAK1", "SKIIP", "RYK",
]


def parse_args(argv):
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("input", help="wide CSV exported from R (see module docstring)")
    parser.add_argument("output", help="destination data CSV in netinf format")
    parser.add_argument(
        "--genes",
        metavar="FILE",
        help="file with one gene symbol per line overriding the default 45-gene subset",
    )
    parser.add_argument(
        "--log2",
        action="store_true",
        help="apply log2 to every expression value (values must be positive)",
    )
    parser.add_argument(
        "--list-genes",
        action="store_true",
        help="print the default gene subset and exit",
    )
    return parser.parse_args(argv)


def load_gene_list(path):
    with open(path, encoding="utf-8") as handle:
        genes = [line.strip() for line in handle if line.strip()]
    if not genes:
        raise SystemExit(f"gene list {path!r} is empty")
    return genes


def read_rows(path):
    """Yield (replicate, time, {gene: raw_value}) from either layout."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise SystemExit(f"{path!r} is empty")
        header = [h.strip() for h in header]

        if len(header) >= 3 and header[0] == "replicate" and header[1] == "time":
            genes = header[2:]
            for line_no, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != len(header):
                    raise SystemExit(f"{path!r} line {line_no}: ragged row")
                values = dict(zip(genes, row[2:]))
                yield row[0].strip(), row[1].strip(), values, line_no
            return

        # longitudinal export: id column then genes; id looks like "12-3"
        genes = header[1:]
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise SystemExit(f"{path!r} line {line_no}: ragged row")
            row_id = row[0].strip().strip('"')
            parts = row_id.split("-")
            if len(parts) != 2:
                raise SystemExit(
                    f"{path!r} line {line_no}: row id {row_id!r} is not "
                    "'<time>-<replicate>' and no replicate/time columns exist"
                )
            time, replicate = parts
            values = dict(zip(genes, row[1:]))
            yield replicate, time, values, line_no


def numeric_key(text):
    try:
        return (0, float(text), text)
    except ValueError:
        return (1, 0.0, text)


def main(argv=None):
    args = parse_args(argv if argv is not None else sys.argv[1:])
    if args.list_genes:
        print("\n".join(DEFAULT_GENES))
        return 0

    genes = load_gene_list(args.genes) if args.genes else DEFAULT_GENES

    table = {}
    available = None
    for replicate, time, values, line_no in read_rows(args.input):
        if available is None:
            available = set(values)
            missing = [g for g in genes if g not in available]
            if missing:
                raise SystemExit(
                    f"{args.input!r} lacks {len(missing)} requested gene(s): "
                    + ", ".join(missing[:8])
                    + ("..." if len(missing) > 8 else "")
                )
        key = (replicate, time)
        if key in table:
            raise SystemExit(
                f"{args.input!r} line {line_no}: duplicate (replicate,time) {key}"
            )
        picked = []
        for gene in genes:
            try:
                value = float(values[gene])
            except ValueError:
                raise SystemExit(
                    f"{args.input!r} line {line_no}: non-numeric value "
                    f"{values[gene]!r} for gene {gene}"
                )
            if args.log2:
                if value <= 0:
                    raise SystemExit(
                        f"{args.input!r} line {line_no}: cannot log2 "
                        f"non-positive value {value} for gene {gene}"
                    )
                value = math.log2(value)
            picked.append(value)
        table[key] = picked

    if not table:
        raise SystemExit(f"{args.input!r} has no data rows")

    times_by_rep = {}
    for replicate, time in table:
        times_by_rep.setdefault(replicate, set()).add(time)
    reference = None
    for replicate, times in sorted(times_by_rep.items()):
        if reference is None:
            reference = times
        elif times != reference:
            raise SystemExit(
                f"replicate {replicate!r} covers different times than the first replicate"
            )
    if len(reference) < 2:
        raise SystemExit("need at least 2 time points per replicate")

    replicates = sorted(times_by_rep, key=numeric_key)
    times = sorted(reference, key=numeric_key)

    with open(args.output, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["replicate", "time"] + list(genes))
        for replicate in replicates:
            for time in times:
                writer.writerow([replicate, time] + table[(replicate, time)])

    print(
        f"wrote {args.output}: {len(replicates)} replicates x {len(times)} times "
        f"x {len(genes)} genes"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())

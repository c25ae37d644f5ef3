#!/usr/bin/env python3
"""Convert a citation hypergraph in the HyperGCN / AllSet pickle layout to CSV.

Input directory (e.g. `coauthorship/cora` for Cora-CA, `cocitation/citeseer`):

    hypergraph.pickle   dict: hyperedge key -> iterable of node indices
    labels.pickle       sequence of class ids, one per node (nodes 0..n-1)

Output directory receives `incidence.csv` (nodeId,edgeId) and `labels.csv`
(nodeId,label). Every node appears in labels.csv, so nodes that belong to no
hyperedge are kept as isolated nodes.

Unpickling label arrays stored as numpy objects requires numpy.
"""

import argparse
import csv
import pickle
from pathlib import Path


def load(path):
    with open(path, "rb") as f:
        return pickle.load(f)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("source", type=Path)
    ap.add_argument("out", type=Path)
    args = ap.parse_args()

    edges = load(args.source / "hypergraph.pickle")
    labels = [int(y) for y in load(args.source / "labels.pickle")]
    args.out.mkdir(parents=True, exist_ok=True)

    nnz = 0
    with open(args.out / "incidence.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["nodeId", "edgeId"])
        for j, key in enumerate(sorted(edges, key=str)):
            for i in sorted(set(int(v) for v in edges[key])):
                if not 0 <= i < len(labels):
                    raise SystemExit(f"edge {key!r} references node {i} outside 0..{len(labels) - 1}")
                w.writerow([i, j])
                nnz += 1

    with open(args.out / "labels.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["nodeId", "label"])
        for i, y in enumerate(labels):
            w.writerow([i, y])

    print(f"nodes={len(labels)} edges={len(edges)} incidences={nnz} classes={len(set(labels))}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Convert MovieLens (25M layout) to the movie-RA or movie-TA hypergraph.

Nodes are movies, labelled by their genres (one row per genre, so a movie can
carry several labels). Hyperedges are users:

    ratings  user rated the movie  (movie-RA, from ratings.csv)
    tags     user tagged the movie (movie-TA, from tags.csv)

Movies listed in movies.csv but touched by no user stay as isolated nodes.
Movies without genres ("(no genres listed)") keep that string as their label.
"""

import argparse
import csv
from pathlib import Path


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("source", type=Path, help="directory containing movies.csv and ratings.csv / tags.csv")
    ap.add_argument("out", type=Path)
    ap.add_argument("--edges", choices=["ratings", "tags"], default="ratings")
    args = ap.parse_args()

    genres = {}
    with open(args.source / "movies.csv", newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            genres[row["movieId"]] = row["genres"].split("|")

    pairs = set()
    with open(args.source / f"{args.edges}.csv", newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            if row["movieId"] in genres:
                pairs.add((int(row["movieId"]), int(row["userId"])))

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "incidence.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["nodeId", "edgeId"])
        for movie, user in sorted(pairs):
            w.writerow([movie, f"u{user}"])

    with open(args.out / "labels.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["nodeId", "label"])
        for movie in sorted(genres, key=int):
            for g in genres[movie]:
                w.writerow([movie, g])

    users = len({u for _, u in pairs})
    print(f"nodes={len(genres)} edges={users} incidences={len(pairs)}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Convert the Coronavirus tweets NLP dataset to a token hypergraph.

Each tweet is a node labelled by its sentiment. A SentencePiece model with
`--vocab` tokens (default 1000) is trained on all tweets; every token is a
hyperedge joining the tweets that contain it. Tokens used by no tweet do not
appear, so the edge count can fall slightly below the vocabulary size.

Requires the `sentencepiece` package. Input: the Kaggle CSV files
(Corona_NLP_train.csv, Corona_NLP_test.csv), latin-1 encoded.
"""

import argparse
import csv
import tempfile
from pathlib import Path


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("csv", type=Path, nargs="+")
    ap.add_argument("out", type=Path)
    ap.add_argument("--vocab", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    import sentencepiece as spm

    tweets = []
    for path in args.csv:
        with open(path, newline="", encoding="latin-1") as f:
            for row in csv.DictReader(f):
                tweets.append((row["OriginalTweet"].replace("\n", " "), row["Sentiment"]))

    with tempfile.TemporaryDirectory() as tmp:
        corpus = Path(tmp) / "corpus.txt"
        corpus.write_text("\n".join(t for t, _ in tweets), encoding="utf-8")
        prefix = str(Path(tmp) / "sp")
        spm.SentencePieceTrainer.train(
            input=str(corpus), model_prefix=prefix, vocab_size=args.vocab, random_seed=args.seed, minloglevel=2
        )
        sp = spm.SentencePieceProcessor(model_file=prefix + ".model")
        encoded = [sorted(set(sp.encode(t))) for t, _ in tweets]

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "incidence.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["nodeId", "edgeId"])
        for i, tokens in enumerate(encoded):
            for t in tokens:
                w.writerow([i, t])
    with open(args.out / "labels.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["nodeId", "label"])
        for i, (_, y) in enumerate(tweets):
            w.writerow([i, y])

    used = len({t for toks in encoded for t in toks})
    print(f"nodes={len(tweets)} edges={used} incidences={sum(map(len, encoded))}")


if __name__ == "__main__":
    main()

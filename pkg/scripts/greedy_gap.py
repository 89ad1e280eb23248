"""How far the greedy folder falls short of the exhaustive optimum on random trees.

Prints the mean and quantiles of the relative score gap for both scorers at a
few compression ratios.
"""

import argparse
import math
import random
from collections import Counter

import numpy as np

from autofold.folding import TopicScorer, VsmScorer, brute_force_optimal, compute_budget, greedy_fold
from autofold.regions import parse_source
from autofold.synthetic import PROJECT_WORDS, java_file
from autofold.tokens import attribute_tokens


def instances(n, seed, max_nodes):
    rng = random.Random(seed)
    projects = sorted(PROJECT_WORDS)
    made = 0
    while made < n:
        text = java_file(rng, rng.choice(projects), ["demo"])
        tree, tokens, _ = parse_source(text)
        if len(tree.nodes) > max_nodes:
            continue
        made += 1
        yield tree, attribute_tokens(tree, tokens), rng


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trees", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-nodes", type=int, default=16)
    args = ap.parse_args()
    for ratio in (30, 50, 70):
        gaps = {"topic": [], "vsm": []}
        for tree, items, rng in instances(args.trees, args.seed, args.max_nodes):
            counts = Counter(t for seq in items for t in seq)
            vocab = sorted(counts)
            index = {t: i for i, t in enumerate(vocab)}
            ids = [[index[t] for t in seq] for seq in items]
            # a file topic close to the file's own unigram, with noise
            base = np.array([counts[t] for t in vocab], dtype=float)
            phi = np.random.default_rng(rng.randrange(10**6)).dirichlet(base + 0.5)
            budget = compute_budget(ratio, tree.total_lines)
            for name, scorer, node_items in (("topic", TopicScorer(phi), ids), ("vsm", VsmScorer(counts), items)):
                g = greedy_fold(tree, node_items, scorer, budget).score
                b = brute_force_optimal(tree, node_items, scorer, budget, max_nodes=args.max_nodes).score
                if math.isfinite(g) and math.isfinite(b) and b != 0:
                    gaps[name].append((b - g) / abs(b))
        for name, vals in gaps.items():
            v = np.array(vals)
            print(f"ratio {ratio:>3} {name:<5} n={len(v):>4} mean gap {v.mean():.4f} "
                  f"median {np.median(v):.4f} optimal in {np.mean(v == 0):.0%}")


if __name__ == "__main__":
    main()

"""Regenerate the bundled test corpus (or write one elsewhere)."""

import argparse
from pathlib import Path

from autofold.synthetic import generate_corpus

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "data" / "synthetic_corpus"

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT)
    ap.add_argument("--files", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    written = generate_corpus(args.out, args.files, args.seed)
    print(f"wrote {len(written)} files under {args.out}")

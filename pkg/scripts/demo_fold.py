"""Train on the bundled corpus and print one file folded at several ratios."""

import argparse
import tempfile
from pathlib import Path

from autofold.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "tests" / "data" / "synthetic_corpus"

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--file", default="netcore/src/BravoKestrel1.java")
    ap.add_argument("--method", choices=("topic", "vsm"), default="topic")
    args = ap.parse_args()
    with tempfile.TemporaryDirectory() as tmp:
        model = Path(tmp) / "model.afm"
        main(["train", "--corpus", str(CORPUS), "--model", str(model)])
        for ratio in ("30", "60", "100"):
            print(f"\n######## ratio {ratio}% ########")
            main(["fold", "--corpus", str(CORPUS), "--model", str(model), "--ratio", ratio,
                  "--method", args.method, str(CORPUS / args.file)])

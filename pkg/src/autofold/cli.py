"""Command line entry point: ``autofold train | fold | explain | export``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import modelio
from .folding import FoldPlan, TopicScorer, VsmScorer, compute_budget, greedy_fold
from .regions import node_cost, render_folded
from .tokens import Corpus, NoInputFiles, ParsedFile, build_corpus, parse_file
from .topicmodel import SLOT_NAMES, TrainConfig, TrainedModel, train

log = logging.getLogger("autofold")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    corpus_root: Path | None = None
    glob: str = "**/*.java"
    ratio_percent: float = 50.0
    method: str = "topic"
    model_path: Path | None = None
    train: TrainConfig = field(default_factory=TrainConfig)
    fold_line_comments: bool = False
    out_dir: Path | None = None
    plan_json: Path | None = None

    def __post_init__(self):
        if not 0 < self.ratio_percent <= 100:
            raise UsageError(f"--ratio must be in (0, 100], got {self.ratio_percent}")
        if self.method not in ("topic", "vsm"):
            raise UsageError(f"unknown method {self.method!r}")


@dataclass
class IngestResult:
    corpus: Corpus
    parsed: dict[str, ParsedFile]
    skipped: list[str]


def worker_count() -> int:
    env = os.environ.get("AUTOFOLD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring AUTOFOLD_THREADS=%r", env)
    return min(4, os.cpu_count() or 1)


def read_source(path: Path) -> str | None:
    """Source text, or None for unreadable or binary files."""
    try:
        data = path.read_bytes()
    except OSError as exc:
        log.warning("skipping %s: %s", path, exc)
        return None
    if b"\x00" in data:
        log.warning("skipping %s: binary content", path)
        return None
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        log.warning("skipping %s: not UTF-8", path)
        return None


def _parse_one(args) -> ParsedFile | None:
    path, key, fold_line_comments = args
    text = read_source(path)
    if text is None:
        return None
    return parse_file(key, text, fold_line_comments=fold_line_comments)


def ingest_corpus(config: RunConfig) -> IngestResult:
    """Parse every matching file; projects are the first-level directories."""
    root = config.corpus_root
    if root is None or not root.is_dir():
        raise NoInputFiles(f"no input files: corpus root {root} is not a readable directory")
    try:
        entries = sorted(root.iterdir())
    except OSError as exc:
        raise NoInputFiles(f"no input files: {exc}") from exc
    jobs: list[tuple[str, list[tuple[Path, str, bool]]]] = []
    loose = sorted(p for p in root.glob(config.glob) if p.is_file() and p.parent == root)
    if loose:
        jobs.append((".", [(p, p.name, config.fold_line_comments) for p in loose]))
    for d in entries:
        if not d.is_dir():
            continue
        files = sorted(p for p in d.glob(config.glob) if p.is_file())
        jobs.append((d.name, [(p, p.relative_to(root).as_posix(), config.fold_line_comments) for p in files]))

    grouped: list[tuple[str, list[ParsedFile]]] = []
    parsed: dict[str, ParsedFile] = {}
    skipped: list[str] = []
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        for name, file_jobs in jobs:
            results = list(pool.map(_parse_one, file_jobs))
            kept = []
            for (path, key, _), pf in zip(file_jobs, results):
                if pf is None:
                    skipped.append(key)
                else:
                    kept.append(pf)
                    parsed[key] = pf
            grouped.append((name, kept))
    if skipped:
        log.warning("skipped %d unreadable file(s)", len(skipped))
    corpus = build_corpus(grouped)
    return IngestResult(corpus, parsed, skipped)


def cmd_train(config: RunConfig, out=None) -> TrainedModel:
    out = out or sys.stdout
    ingest = ingest_corpus(config)
    corpus = ingest.corpus
    model = train(corpus, config.train)
    model.metadata.update(
        corpus_root=str(config.corpus_root),
        glob=config.glob,
        fold_line_comments=config.fold_line_comments,
    )
    modelio.save(model, config.model_path)
    mass = model.slot_mass()
    print(f"projects: {len(corpus.projects)}", file=out)
    print(f"files: {len(corpus.files)} (skipped {len(ingest.skipped)})", file=out)
    print(f"vocabulary: {len(corpus.vocabulary)}", file=out)
    print(f"tokens: {corpus.num_tokens}", file=out)
    for name, m in zip(SLOT_NAMES, mass):
        print(f"slot {name}: {m:.4f}", file=out)
    print(f"model written to {config.model_path}", file=out)
    return model


@dataclass
class FoldResult:
    key: str
    text: str
    folded: str
    parsed: ParsedFile
    plan: FoldPlan


def _target_key(path: Path, root: Path | None) -> str:
    if root is not None:
        try:
            return path.resolve().relative_to(root.resolve()).as_posix()
        except ValueError:
            pass
    return path.as_posix()


def fold_file(
    path: Path, key: str, config: RunConfig, model: TrainedModel | None, *, record_unfit: bool = False
) -> FoldResult:
    text = read_source(path)
    if text is None:
        raise UsageError(f"cannot read {path}")
    pf = parse_file(key, text, fold_line_comments=config.fold_line_comments)
    if config.method == "topic":
        if model is None:
            raise UsageError("method=topic needs --model")
        if not model.has_file(key):
            raise UsageError(f"{key} is not in the model; retrain on a corpus that includes it")
        vocab = model.vocabulary
        node_items = [[vocab.get(t) for t in seq if t in vocab] for seq in pf.node_items]
        scorer = TopicScorer(model.phi_file(key))
    else:
        node_items = pf.node_items
        scorer = VsmScorer(Counter(pf.all_items()))
    budget = compute_budget(config.ratio_percent, pf.total_lines)
    plan = greedy_fold(pf.tree, node_items, scorer, budget, method=config.method, record_unfit=record_unfit)
    folded = render_folded(pf.tree, plan.u(len(pf.tree.nodes)), text)
    return FoldResult(key, text, folded, pf, plan)


def _json_float(x: float):
    return x if math.isfinite(x) else None


def plan_record(result: FoldResult) -> dict:
    plan = result.plan
    return {
        "path": result.key,
        "L_0": result.parsed.total_lines,
        "L_max": plan.L_max,
        "consumed": plan.consumed,
        "method": plan.method,
        "over_budget": plan.over_budget,
        "score": _json_float(plan.score),
        "unfolded_node_ids": list(plan.unfolded),
        "steps": [{"node": s.node, "score": _json_float(s.score), "cost": s.cost} for s in plan.steps],
    }


def _resolve_targets(config: RunConfig, targets: list[str], model) -> list[tuple[Path, str]]:
    root = config.corpus_root
    if root is None and model is not None and model.metadata.get("corpus_root"):
        root = Path(model.metadata["corpus_root"])
    if targets:
        return [(Path(t), _target_key(Path(t), root)) for t in targets]
    if root is None:
        raise UsageError("no targets given and no corpus to take them from")
    ingest = ingest_corpus(RunConfig(corpus_root=root, glob=config.glob, method=config.method))
    return [(root / f.path, f.path) for f in ingest.corpus.files]


def cmd_fold(config: RunConfig, targets: list[str], out=None) -> list[FoldResult]:
    out = out or sys.stdout
    model = modelio.load(config.model_path) if config.model_path else None
    if config.method == "topic" and model is None:
        raise UsageError("method=topic needs --model")
    resolved = _resolve_targets(config, targets, model)
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        results = list(pool.map(lambda pk: fold_file(pk[0], pk[1], config, model), resolved))
    for r in results:
        if config.out_dir is not None:
            dest = config.out_dir / r.key
            dest.parent.mkdir(parents=True, exist_ok=True)
            with open(dest, "w", encoding="utf-8", newline="") as fh:
                fh.write(r.folded)
        else:
            if len(results) > 1:
                out.write(f"==> {r.key} <==\n")
            out.write(r.folded)
    if config.plan_json is not None:
        with open(config.plan_json, "w", encoding="utf-8") as fh:
            for r in results:
                fh.write(json.dumps(plan_record(r), sort_keys=True) + "\n")
    return results


def explain_rows(result: FoldResult) -> list[dict]:
    plan = result.plan
    step_of = {s.node: i for i, s in enumerate(plan.steps)}
    tree = result.parsed.tree
    rows = []
    for node in tree.nodes:
        n_tokens = len(result.parsed.node_items[node.id])
        if node.id in step_of:
            status = f"unfolded@{step_of[node.id]}"
        elif n_tokens == 0:
            status = "never unfolded"
        else:
            status = "folded"
        if n_tokens == 0 and node.id != 0:
            marginal = float("-inf")
        else:
            marginal = plan.marginals.get(node.id)
        rows.append({
            "id": node.id,
            "kind": node.kind.value,
            "span": f"{node.start_line}-{node.end_line}",
            "cost": node_cost(tree, node.id),
            "tokens": n_tokens,
            "status": status,
            "marginal": marginal,
        })
    return rows


def cmd_explain(config: RunConfig, target: str, out=None) -> list[dict]:
    out = out or sys.stdout
    model = modelio.load(config.model_path) if config.model_path else None
    [(path, key)] = _resolve_targets(config, [target], model)
    result = fold_file(path, key, config, model, record_unfit=True)
    rows = explain_rows(result)
    plan = result.plan
    print(f"# {key}: L_0={result.parsed.total_lines} L_max={plan.L_max} consumed={plan.consumed}"
          f" method={plan.method}{' OVER-BUDGET' if plan.over_budget else ''}", file=out)
    print(f"{'id':>4} {'kind':<13} {'span':<11} {'cost':>5} {'tokens':>6} {'marginal':>12}  status", file=out)
    for r in rows:
        m = r["marginal"]
        m_txt = "n/a" if m is None else ("-inf" if m == float("-inf") else ("inf" if m == float("inf") else f"{m:.6f}"))
        print(f"{r['id']:>4} {r['kind']:<13} {r['span']:<11} {r['cost']:>5} {r['tokens']:>6} {m_txt:>12}  {r['status']}",
              file=out)
    return rows


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="autofold", description="Summarize source files by folding regions.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="fit the topic model on a corpus")
    t.add_argument("--corpus", required=True, type=Path)
    t.add_argument("--glob", default="**/*.java")
    t.add_argument("--model", required=True, type=Path)
    defaults = TrainConfig()
    t.add_argument("--sweeps", type=int, default=defaults.sweeps)
    t.add_argument("--burn-in", type=int, default=defaults.burn_in)
    t.add_argument("--sample-lag", type=int, default=defaults.sample_lag)
    t.add_argument("--hyper-lag", type=int, default=defaults.hyper_lag)
    t.add_argument("--seed", type=int, default=defaults.seed)
    t.add_argument("--fold-line-comments", action="store_true")

    f = sub.add_parser("fold", help="fold files to a compression ratio")
    f.add_argument("--corpus", type=Path)
    f.add_argument("--glob", default="**/*.java")
    f.add_argument("--model", type=Path)
    f.add_argument("--ratio", type=float, default=50.0)
    f.add_argument("--method", choices=("topic", "vsm"), default="topic")
    f.add_argument("--fold-line-comments", action="store_true")
    f.add_argument("--out", type=Path)
    f.add_argument("--plan-json", type=Path)
    f.add_argument("targets", nargs="*")

    e = sub.add_parser("explain", help="per-node score table for one file")
    e.add_argument("--model", type=Path)
    e.add_argument("--corpus", type=Path)
    e.add_argument("--ratio", type=float, default=50.0)
    e.add_argument("--method", choices=("topic", "vsm"), default="topic")
    e.add_argument("--fold-line-comments", action="store_true")
    e.add_argument("target")

    x = sub.add_parser("export", help="print a model as diffable text")
    x.add_argument("--model", required=True, type=Path)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="autofold: %(levelname)s: %(message)s")
    try:
        if args.command == "train":
            config = RunConfig(
                corpus_root=args.corpus, glob=args.glob, model_path=args.model,
                fold_line_comments=args.fold_line_comments,
                train=TrainConfig(args.sweeps, args.burn_in, args.sample_lag, args.hyper_lag, args.seed),
            )
            cmd_train(config)
        elif args.command == "fold":
            config = RunConfig(
                corpus_root=args.corpus, glob=args.glob, ratio_percent=args.ratio,
                method=args.method, model_path=args.model,
                fold_line_comments=args.fold_line_comments, out_dir=args.out, plan_json=args.plan_json,
            )
            cmd_fold(config, args.targets)
        elif args.command == "explain":
            config = RunConfig(
                corpus_root=args.corpus, ratio_percent=args.ratio, method=args.method,
                model_path=args.model, fold_line_comments=args.fold_line_comments,
            )
            cmd_explain(config, args.target)
        else:
            sys.stdout.write(modelio.export_text(modelio.load(args.model)))
    except (NoInputFiles, UsageError, ValueError) as exc:
        # ValueError covers bad training schedules and malformed model files
        print(f"autofold: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"autofold: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

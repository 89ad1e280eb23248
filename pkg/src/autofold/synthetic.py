"""Deterministic generator for a small Java-like corpus used in tests and demos."""

from __future__ import annotations

import random
from pathlib import Path

COMMON = ["get", "set", "value", "result", "list", "size", "index", "name", "count",
          "builder", "string", "map", "key", "item", "state", "config", "logger"]
DOC_WORDS = ["returns", "the", "given", "this", "method", "param", "a", "an", "of",
             "for", "is", "to", "and", "if", "null", "when", "new"]
PROJECT_WORDS = {
    "netcore": ["channel", "buffer", "socket", "pipeline", "handler", "event", "loop", "frame"],
    "searchkit": ["query", "index", "shard", "score", "term", "document", "analyzer", "field"],
    "gamegfx": ["sprite", "texture", "batch", "render", "camera", "vertex", "shader", "mesh"],
}
FILE_WORDS = ["alpha", "bravo", "cedar", "delta", "ember", "flint", "garnet", "harbor",
              "iris", "jasper", "kestrel", "lumen", "mosaic", "nimbus", "onyx", "prism",
              "quartz", "raven", "sable", "tundra", "umber", "vortex", "willow", "xenon",
              "yarrow", "zephyr"]
HEADER = """/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 */
"""


def _camel(words: list[str], upper_first: bool = False) -> str:
    out = "".join(w.capitalize() for w in words)
    return out if upper_first else out[0].lower() + out[1:]


def _statement(rng: random.Random, vocab: list[str], indent: str) -> str:
    a = _camel(rng.sample(vocab, 2))
    b = _camel(rng.sample(vocab, 2))
    form = rng.randrange(4)
    if form == 0:
        return f"{indent}int {a} = {b}.size() + {rng.randrange(100)};"
    if form == 1:
        return f"{indent}{a}.{_camel(['set'] + rng.sample(vocab, 1))}({b});"
    if form == 2:
        return f'{indent}logger.debug("{rng.choice(vocab)} {{}}", {a});'
    return f"{indent}{a} = {b};"


def _method(rng: random.Random, vocab: list[str], indent: str) -> list[str]:
    name = _camel([rng.choice(["get", "set", "update", "compute", "handle"])] + rng.sample(vocab, 2))
    lines = []
    if rng.random() < 0.6:
        lines += [
            f"{indent}/**",
            f"{indent} * {' '.join(rng.sample(DOC_WORDS, 4))} {rng.choice(vocab)} {rng.choice(vocab)}.",
            f"{indent} *",
            f"{indent} * @param {_camel(rng.sample(vocab, 2))} the {rng.choice(vocab)}",
            f"{indent} */",
        ]
    lines.append(f"{indent}public void {name}({_camel(rng.sample(vocab, 1), True)} {_camel(rng.sample(vocab, 2))}) {{")
    inner = indent + "    "
    for _ in range(rng.randrange(1, 4)):
        lines.append(_statement(rng, vocab, inner))
    if rng.random() < 0.5:
        lines.append(f"{inner}if ({_camel(rng.sample(vocab, 2))} != null) {{")
        for _ in range(rng.randrange(1, 3)):
            lines.append(_statement(rng, vocab, inner + "    "))
        if rng.random() < 0.5:
            lines.append(f"{inner}}} else {{")
            lines.append(_statement(rng, vocab, inner + "    "))
        lines.append(f"{inner}}}")
    if rng.random() < 0.3:
        lines.append(f"{inner}// {' '.join(rng.sample(vocab, 3))}")
    lines.append(_statement(rng, vocab, inner))
    lines.append(f"{indent}}}")
    return lines


def java_file(rng: random.Random, project: str, class_words: list[str]) -> str:
    vocab = COMMON + PROJECT_WORDS[project] * 2 + class_words * 3
    cls = _camel(class_words + rng.sample(PROJECT_WORDS[project], 1), True)
    lines = HEADER.rstrip("\n").split("\n") if rng.random() < 0.7 else []
    lines.append(f"package org.{project}.{class_words[0]};")
    lines.append("")
    for _ in range(rng.randrange(1, 5)):
        lines.append(f"import org.{project}.{rng.choice(PROJECT_WORDS[project])}.{_camel(rng.sample(vocab, 2), True)};")
    lines.append("")
    lines.append("/**")
    lines.append(f" * {' '.join(rng.sample(DOC_WORDS, 5))} {' '.join(class_words)}.")
    lines.append(" */")
    lines.append(f"public class {cls} {{")
    for _ in range(rng.randrange(1, 4)):
        lines.append(f"    private {_camel(rng.sample(vocab, 1), True)} {_camel(rng.sample(vocab, 2))};")
    for _ in range(rng.randrange(2, 6)):
        lines.append("")
        lines.extend(_method(rng, vocab, "    "))
    lines.append("}")
    return "\n".join(lines) + "\n"


def generate_corpus(root: str | Path, n_files: int = 50, seed: int = 7) -> list[Path]:
    """Write ``n_files`` files spread over three projects below ``root``."""
    rng = random.Random(seed)
    root = Path(root)
    projects = sorted(PROJECT_WORDS)
    written = []
    for i in range(n_files):
        project = projects[i % len(projects)]
        class_words = [FILE_WORDS[i % len(FILE_WORDS)], FILE_WORDS[(i * 7 + 3) % len(FILE_WORDS)]]
        text = java_file(rng, project, class_words)
        name = _camel(class_words, True) + f"{i}.java"
        path = root / project / "src" / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
        written.append(path)
    return written

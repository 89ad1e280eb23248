"""Content tokens for the topic model: split identifiers and comment words."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .regions import FoldableTree, LexToken, TokenKind, parse_source

_COMMENT_WORD = re.compile(r"[A-Za-z0-9]+")
_IMPORT_NAME = re.compile(r"(?:[^\W\d]|\$)[\w$]*")


class NoInputFiles(ValueError):
    pass


def split_identifier(name: str) -> list[str]:
    """Split on underscores and case changes, lowercasing every piece.

    ``HTMLParser`` gives ``html, parser``; digits stay with the run before
    them, so ``sha1Hash`` gives ``sha1, hash``.
    """
    items: list[str] = []
    for segment in re.split(r"[\W_]+", name):
        if not segment:
            continue
        start = 0
        for i in range(1, len(segment)):
            prev, cur = segment[i - 1], segment[i]
            if not cur.isupper():
                continue
            if prev.islower() or prev.isdigit():
                boundary = True
            else:
                # end of an acronym: "HTMLParser" splits before the "P"
                boundary = prev.isupper() and i + 1 < len(segment) and segment[i + 1].islower()
            if boundary:
                items.append(segment[start:i])
                start = i
        items.append(segment[start:])
    return [s.lower() for s in items if s]


def content_items(tok: LexToken) -> list[str]:
    """Lexical items contributed by a single token (empty for non-content kinds)."""
    if tok.kind is TokenKind.IDENTIFIER:
        return split_identifier(tok.text)
    if tok.kind in (TokenKind.BLOCK_COMMENT, TokenKind.LINE_COMMENT):
        out: list[str] = []
        for word in _COMMENT_WORD.findall(tok.text):
            out.extend(split_identifier(word))
        return out
    if tok.kind is TokenKind.IMPORT:
        out = []
        for name in _IMPORT_NAME.findall(tok.text):
            if name not in ("import", "static"):
                out.extend(split_identifier(name))
        return out
    return []


def extract_content_tokens(
    region: tuple[int, int], tokens: Iterable[LexToken]
) -> list[str]:
    """Content items of the tokens starting inside the ``(start, end)`` line span."""
    start, end = region
    out: list[str] = []
    for tok in tokens:
        if start <= tok.start_line <= end:
            out.extend(content_items(tok))
    return out


def attribute_tokens(tree: FoldableTree, tokens: Iterable[LexToken]) -> list[list[str]]:
    """Per-node item sequences; each token goes to the deepest node holding its line."""
    per_node: list[list[str]] = [[] for _ in tree.nodes]
    cache: dict[int, int] = {}
    for tok in tokens:
        items = content_items(tok)
        if not items:
            continue
        node = cache.get(tok.start_line)
        if node is None:
            node = cache[tok.start_line] = tree.deepest_node_at(tok.start_line)
        per_node[node].extend(items)
    return per_node


@dataclass
class ParsedFile:
    path: str
    tree: FoldableTree
    node_items: list[list[str]]

    @property
    def total_lines(self) -> int:
        return self.tree.total_lines

    def all_items(self) -> list[str]:
        return [t for seq in self.node_items for t in seq]


def parse_file(path: str, text: str, *, fold_line_comments: bool = False) -> ParsedFile:
    tree, tokens, _ = parse_source(text, path, fold_line_comments=fold_line_comments)
    return ParsedFile(path, tree, attribute_tokens(tree, tokens))


class Vocabulary:
    """Dense ids for lexical items, assigned in first-seen order."""

    def __init__(self, items: Iterable[str] = ()):
        self._items: list[str] = []
        self._ids: dict[str, int] = {}
        for item in items:
            self.add(item)

    def add(self, item: str) -> int:
        idx = self._ids.get(item)
        if idx is None:
            idx = self._ids[item] = len(self._items)
            self._items.append(item)
        return idx

    def id_of(self, item: str) -> int:
        return self._ids[item]

    def get(self, item: str, default: int | None = None) -> int | None:
        return self._ids.get(item, default)

    def item_of(self, idx: int) -> str:
        return self._items[idx]

    @property
    def items(self) -> list[str]:
        return list(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item: str) -> bool:
        return item in self._ids

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._items == other._items


@dataclass(frozen=True)
class ProjectRecord:
    name: str
    file_ids: tuple[int, ...]


@dataclass(frozen=True)
class FileRecord:
    path: str
    project_id: int
    node_ids: tuple[int, ...]
    total_lines: int


@dataclass(frozen=True)
class NodeRecord:
    file_id: int
    token_ids: tuple[int, ...]


@dataclass
class Corpus:
    projects: list[ProjectRecord]
    files: list[FileRecord]
    nodes: list[NodeRecord]
    vocabulary: Vocabulary
    _flat: tuple[np.ndarray, ...] | None = field(default=None, repr=False, compare=False)

    @property
    def num_tokens(self) -> int:
        return sum(len(n.token_ids) for n in self.nodes)

    def file_index(self, path: str) -> int:
        for i, f in enumerate(self.files):
            if f.path == path:
                return i
        raise KeyError(path)

    def flatten(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Per-position arrays (item, node, file, project) in corpus order."""
        if self._flat is None:
            words, nodes, files, projects = [], [], [], []
            for n_id, node in enumerate(self.nodes):
                f = node.file_id
                p = self.files[f].project_id
                k = len(node.token_ids)
                words.extend(node.token_ids)
                nodes.extend([n_id] * k)
                files.extend([f] * k)
                projects.extend([p] * k)
            self._flat = tuple(np.asarray(a, dtype=np.int64) for a in (words, nodes, files, projects))
        return self._flat


def build_corpus(projects: Sequence[tuple[str, Sequence[ParsedFile]]]) -> Corpus:
    """Index parsed files by project, assigning vocabulary ids in corpus order."""
    vocab = Vocabulary()
    project_recs: list[ProjectRecord] = []
    file_recs: list[FileRecord] = []
    node_recs: list[NodeRecord] = []
    for p_id, (name, parsed_files) in enumerate(projects):
        file_ids = []
        for pf in parsed_files:
            f_id = len(file_recs)
            node_ids = []
            for items in pf.node_items:
                node_ids.append(len(node_recs))
                node_recs.append(NodeRecord(f_id, tuple(vocab.add(t) for t in items)))
            file_recs.append(FileRecord(pf.path, p_id, tuple(node_ids), pf.total_lines))
            file_ids.append(f_id)
        project_recs.append(ProjectRecord(name, tuple(file_ids)))
    if not file_recs:
        raise NoInputFiles("no input files")
    return Corpus(project_recs, file_recs, node_recs, vocab)


def corpus_from_items(
    projects: Sequence[tuple[str, Sequence[tuple[str, Sequence[Sequence[str]]]]]],
) -> Corpus:
    """Corpus straight from per-node item lists, bypassing parsing.

    ``projects`` is ``[(name, [(path, [node_items, ...]), ...]), ...]``; each
    file's first node list plays the role of its root.
    """
    from .regions import FoldableNode, NodeKind

    grouped = []
    for name, files in projects:
        parsed = []
        for path, node_lists in files:
            nodes = tuple(
                FoldableNode(i, NodeKind.ROOT if i == 0 else NodeKind.BLOCK, 1, 1,
                             None if i == 0 else 0, (), "", "")
                for i in range(len(node_lists))
            )
            tree = FoldableTree(path, nodes, 0)
            parsed.append(ParsedFile(path, tree, [list(n) for n in node_lists]))
        grouped.append((name, parsed))
    return build_corpus(grouped)

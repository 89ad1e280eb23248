"""Lexing of brace-delimited source and construction of the foldable tree.

The lexer is deliberately forgiving: anything it does not understand becomes a
punctuation token, and unterminated constructs are closed where they run out.
Foldable regions are code blocks, block comments, runs of import statements
and (optionally) runs of whole-line ``//`` comments.
"""

from __future__ import annotations

import bisect
import enum
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence


class TokenKind(str, enum.Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    BLOCK_COMMENT = "block-comment"
    LINE_COMMENT = "line-comment"
    STRING = "string-literal"
    CHAR = "char-literal"
    OPEN_BRACE = "open-brace"
    CLOSE_BRACE = "close-brace"
    IMPORT = "import-statement"
    PUNCTUATION = "punctuation"
    NUMBER = "number-literal"


class NodeKind(str, enum.Enum):
    ROOT = "ROOT"
    BLOCK = "BLOCK"
    COMMENT = "COMMENT"
    IMPORTS = "IMPORTS"
    LINE_COMMENTS = "LINE_COMMENTS"


JAVA_KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null
    """.split()
)


@dataclass(frozen=True)
class LexToken:
    kind: TokenKind
    text: str
    start_line: int
    end_line: int
    offset: int  # character offset of the first character


@dataclass(frozen=True)
class Diagnostic:
    line: int
    message: str


_MASTER = re.compile(
    r"""
    (?P<ws>[ \t\f\v\r\n]+)
  | (?P<block>/\*.*?(?:(?P<block_end>\*/)|\Z))
  | (?P<line>//[^\r\n]*)
  | (?P<textblock>\"\"\"(?:\\.|.)*?(?:(?P<textblock_end>\"\"\")|\Z))
  | (?P<string>"(?:\\[^\r\n]|[^"\\\r\n])*(?:(?P<string_end>")|\\?(?=[\r\n]|\Z)))
  | (?P<char>'(?:\\[^\r\n]|[^'\\\r\n])*(?:(?P<char_end>')|\\?(?=[\r\n]|\Z)))
  | (?P<ident>(?:[^\W\d]|\$)[\w$]*)
  | (?P<number>(?:\d|\.\d)(?:[\w.]|(?<=[eEpP])[+-])*)
  | (?P<open>\{)
  | (?P<close>\})
  | (?P<punct>.)
    """,
    re.VERBOSE | re.DOTALL,
)

_IMPORT_TAIL = re.compile(r"[^;\r\n]*;?")


def lex(text: str, diagnostics: list[Diagnostic] | None = None) -> list[LexToken]:
    """Split ``text`` into tokens; whitespace is implicit between them.

    Problems (unterminated comments or literals) are appended to
    ``diagnostics`` when a list is supplied; lexing never fails.
    """
    diags = diagnostics if diagnostics is not None else []
    tokens: list[LexToken] = []
    pos = 0
    line = 1
    n = len(text)
    while pos < n:
        m = _MASTER.match(text, pos)
        assert m is not None  # punct matches any single character
        group = m.lastgroup
        value = m.group()
        kind: TokenKind | None = None
        if group == "ws":
            pass
        elif group == "block":
            kind = TokenKind.BLOCK_COMMENT
            if m.group("block_end") is None:
                diags.append(Diagnostic(line, "unterminated block comment"))
        elif group == "line":
            kind = TokenKind.LINE_COMMENT
        elif group == "textblock":
            kind = TokenKind.STRING
            if m.group("textblock_end") is None:
                diags.append(Diagnostic(line, "unterminated text block"))
        elif group == "string":
            kind = TokenKind.STRING
            if m.group("string_end") is None:
                diags.append(Diagnostic(line, "unterminated string literal"))
        elif group == "char":
            kind = TokenKind.CHAR
            if m.group("char_end") is None:
                diags.append(Diagnostic(line, "unterminated char literal"))
        elif group == "ident":
            if value == "import":
                tail = _IMPORT_TAIL.match(text, m.end())
                value = value + tail.group()
                kind = TokenKind.IMPORT
                if not value.endswith(";"):
                    diags.append(Diagnostic(line, "import statement without ';'"))
            elif value in JAVA_KEYWORDS:
                kind = TokenKind.KEYWORD
            else:
                kind = TokenKind.IDENTIFIER
        elif group == "number":
            kind = TokenKind.NUMBER
        elif group == "open":
            kind = TokenKind.OPEN_BRACE
        elif group == "close":
            kind = TokenKind.CLOSE_BRACE
        else:
            kind = TokenKind.PUNCTUATION
        newlines = value.count("\n")
        if kind is not None:
            tokens.append(LexToken(kind, value, line, line + newlines, pos))
        line += newlines
        pos += len(value)
    return tokens


def count_lines(text: str) -> int:
    """Number of physical lines; a trailing newline does not open a new line."""
    if not text:
        return 0
    return text.count("\n") + (0 if text.endswith("\n") else 1)


def split_lines(text: str) -> list[str]:
    """Physical lines with their terminators kept (LF or CRLF)."""
    parts = text.split("\n")
    lines = [p + "\n" for p in parts[:-1]]
    if parts[-1]:
        lines.append(parts[-1])
    return lines


@dataclass(frozen=True)
class FoldableNode:
    id: int
    kind: NodeKind
    start_line: int
    end_line: int
    parent_id: int | None
    child_ids: tuple[int, ...]
    header_text: str
    close_delimiter: str

    @property
    def length(self) -> int:
        return self.end_line - self.start_line + 1


@dataclass(frozen=True)
class FoldableTree:
    file_id: str
    nodes: tuple[FoldableNode, ...]
    total_lines: int

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def root(self) -> FoldableNode:
        return self.nodes[0]

    def costs(self) -> list[int]:
        return [node_cost(self, i) for i in range(len(self.nodes))]

    def deepest_node_at(self, line: int) -> int:
        """Id of the deepest node whose line span contains ``line``."""
        current = 0
        while True:
            for c in self.nodes[current].child_ids:
                child = self.nodes[c]
                if child.start_line <= line <= child.end_line:
                    current = c
                    break
            else:
                return current


@dataclass
class _Region:
    kind: NodeKind
    start_line: int
    end_line: int
    start_char: int
    end_char: int
    close: str
    children: list["_Region"] = field(default_factory=list)


def _collect_regions(
    tokens: Sequence[LexToken],
    total_lines: int,
    text_length: int,
    fold_line_comments: bool,
    diagnostics: list[Diagnostic],
) -> list[_Region]:
    regions: list[_Region] = []
    stack: list[LexToken] = []
    for tok in tokens:
        if tok.kind is TokenKind.OPEN_BRACE:
            stack.append(tok)
        elif tok.kind is TokenKind.CLOSE_BRACE:
            if not stack:
                diagnostics.append(Diagnostic(tok.start_line, "unmatched '}'"))
                continue
            op = stack.pop()
            regions.append(
                _Region(NodeKind.BLOCK, op.start_line, tok.end_line, op.offset, tok.offset + 1, "}")
            )
        elif tok.kind is TokenKind.BLOCK_COMMENT:
            close = "*/" if len(tok.text) >= 4 and tok.text.endswith("*/") else ""
            regions.append(
                _Region(
                    NodeKind.COMMENT, tok.start_line, tok.end_line,
                    tok.offset, tok.offset + len(tok.text), close,
                )
            )
    for op in stack:
        diagnostics.append(Diagnostic(op.start_line, "unmatched '{' closed at end of file"))
        regions.append(
            _Region(NodeKind.BLOCK, op.start_line, max(total_lines, op.start_line), op.offset, text_length, "")
        )

    # runs of adjacent tokens of one kind (nothing but whitespace between them)
    def runs(kind: TokenKind, same_line_ok):
        run: list[LexToken] = []
        for tok in list(tokens) + [None]:
            if tok is not None and tok.kind is kind and (not run or same_line_ok(run[-1], tok)):
                run.append(tok)
                continue
            if len(run) > 0:
                yield run
            run = [tok] if tok is not None and tok.kind is kind else []

    for run in runs(TokenKind.IMPORT, lambda a, b: True):
        last = run[-1]
        regions.append(
            _Region(
                NodeKind.IMPORTS, run[0].start_line, last.end_line,
                run[0].offset, last.offset + len(last.text), "",
            )
        )

    if fold_line_comments:
        line_counts: dict[int, int] = {}
        for tok in tokens:
            for ln in range(tok.start_line, tok.end_line + 1):
                line_counts[ln] = line_counts.get(ln, 0) + 1

        def whole_line(tok: LexToken) -> bool:
            return line_counts[tok.start_line] == 1

        for run in runs(
            TokenKind.LINE_COMMENT,
            lambda a, b: whole_line(a) and whole_line(b) and b.start_line == a.start_line + 1,
        ):
            run = [t for t in run if whole_line(t)]
            if not run:
                continue
            last = run[-1]
            regions.append(
                _Region(
                    NodeKind.LINE_COMMENTS, run[0].start_line, last.end_line,
                    run[0].offset, last.offset + len(last.text), "",
                )
            )
    return [r for r in regions if r.end_line > r.start_line]


def _trim_shared_lines(regions: list[_Region]) -> None:
    # A region whose last line is also the first line of a later region (e.g.
    # "} else {") gives that line up, keeping line spans nested or disjoint.
    by_start = sorted(regions, key=lambda r: r.start_char)
    starts = [r.start_char for r in by_start]

    # suffix minimum of start lines over regions ordered by start_char
    suffix_min = [0] * (len(by_start) + 1)
    suffix_min[-1] = 1 << 60
    for i in range(len(by_start) - 1, -1, -1):
        suffix_min[i] = min(by_start[i].start_line, suffix_min[i + 1])
    for r in regions:
        j = bisect.bisect_left(starts, r.end_char)
        nxt = suffix_min[j]
        if nxt <= r.end_line:
            r.end_line = nxt - 1
            r.close = ""


def build_foldable_tree(
    tokens: Sequence[LexToken],
    total_lines: int,
    *,
    source: str | None = None,
    file_id: str = "",
    fold_line_comments: bool = False,
    diagnostics: list[Diagnostic] | None = None,
) -> FoldableTree:
    """Assemble the foldable tree of one file from its tokens.

    ``source`` supplies header lines verbatim; without it headers are rebuilt
    from the tokens on the line.
    """
    diags = diagnostics if diagnostics is not None else []
    text_length = (tokens[-1].offset + len(tokens[-1].text)) if tokens else 0
    if source is not None:
        text_length = len(source)
    regions = _collect_regions(tokens, total_lines, text_length, fold_line_comments, diags)
    _trim_shared_lines(regions)
    regions = [r for r in regions if r.end_line > r.start_line]
    regions.sort(key=lambda r: (r.start_line, -r.end_line, r.start_char))

    root = _Region(NodeKind.ROOT, 1 if total_lines else 0, total_lines, 0, text_length, "")
    stack = [root]
    for r in regions:
        while not (stack[-1].start_line <= r.start_line and r.end_line <= stack[-1].end_line):
            stack.pop()
        parent = stack[-1]
        if parent is not root and parent.start_line == r.start_line:
            continue  # shares its first line with the enclosing region
        if parent.children and parent.children[-1].end_line >= r.start_line:
            continue  # defensive: overlapping siblings cannot be folded independently
        parent.children.append(r)
        stack.append(r)

    if source is not None:
        lines = split_lines(source)
        line_text = lambda ln: lines[ln - 1].rstrip() if 0 < ln <= len(lines) else ""
    else:
        by_line: dict[int, list[str]] = {}
        for tok in tokens:
            by_line.setdefault(tok.start_line, []).append(tok.text.split("\n")[0])
        line_text = lambda ln: " ".join(by_line.get(ln, [])).rstrip()

    def header(r: _Region) -> str:
        for ln in range(max(r.start_line, 1), r.end_line + 1):
            t = line_text(ln)
            if t.strip():
                return t
        return ""

    ordered: list[_Region] = []
    parents: list[int | None] = []
    queue: deque[tuple[_Region, int | None]] = deque([(root, None)])
    while queue:
        r, p = queue.popleft()
        ordered.append(r)
        parents.append(p)
        me = len(ordered) - 1
        for c in r.children:
            queue.append((c, me))
    ids = {id(r): i for i, r in enumerate(ordered)}
    nodes = tuple(
        FoldableNode(
            id=i,
            kind=r.kind,
            start_line=r.start_line,
            end_line=r.end_line,
            parent_id=parents[i],
            child_ids=tuple(ids[id(c)] for c in r.children),
            header_text=header(r),
            close_delimiter=r.close,
        )
        for i, r in enumerate(ordered)
    )
    return FoldableTree(file_id, nodes, total_lines)


def parse_source(
    text: str, file_id: str = "", *, fold_line_comments: bool = False
) -> tuple[FoldableTree, list[LexToken], list[Diagnostic]]:
    diags: list[Diagnostic] = []
    tokens = lex(text, diags)
    tree = build_foldable_tree(
        tokens, count_lines(text), source=text, file_id=file_id,
        fold_line_comments=fold_line_comments, diagnostics=diags,
    )
    return tree, tokens, diags


def node_cost(tree: FoldableTree, node_id: int) -> int:
    """Lines unique to a node: its span minus its children's, first lines excepted."""
    node = tree.nodes[node_id]
    if node.kind is NodeKind.ROOT and tree.total_lines == 0:
        return 0
    cost = node.length - 1
    for c in node.child_ids:
        cost -= tree.nodes[c].length - 1
    return cost


def check_contiguous(tree: FoldableTree, u: Sequence[int]) -> None:
    if len(u) != len(tree.nodes):
        raise ValueError(f"unfold vector has {len(u)} entries for {len(tree.nodes)} nodes")
    if not u[0]:
        raise ValueError("root must be unfolded")
    for node in tree.nodes[1:]:
        if u[node.id] and not u[node.parent_id]:
            raise ValueError(f"node {node.id} unfolded under folded parent {node.parent_id}")


def fold_marker(node: FoldableNode) -> str:
    """``class A { ...}`` for blocks, ``/** ... */`` for comments."""
    gap = " " if node.kind is NodeKind.COMMENT and node.close_delimiter else ""
    return f"{node.header_text} ...{gap}{node.close_delimiter}"


def render_folded(tree: FoldableTree, u: Sequence[int], text: str) -> str:
    """Replace every folded node under an unfolded parent by its one-line marker."""
    check_contiguous(tree, u)
    lines = split_lines(text)
    frontier: dict[int, FoldableNode] = {}
    stack = [0]
    while stack:
        node = tree.nodes[stack.pop()]
        for c in node.child_ids:
            if u[c]:
                stack.append(c)
            else:
                frontier[tree.nodes[c].start_line] = tree.nodes[c]
    out: list[str] = []
    ln = 1
    while ln <= len(lines):
        node = frontier.get(ln)
        if node is None:
            out.append(lines[ln - 1])
            ln += 1
            continue
        last = lines[node.end_line - 1]
        ending = last[len(last.rstrip("\r\n")):]
        out.append(fold_marker(node) + ending)
        ln = node.end_line + 1
    return "".join(out)

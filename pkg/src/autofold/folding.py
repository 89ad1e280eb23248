"""Choosing which regions of a file stay unfolded under a line budget."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .regions import FoldableTree, node_cost
from .vsm import cosine, log_tf

SMOOTHING = 0.01
NEG_INF = float("-inf")


class UnknownFile(KeyError):
    pass


def compute_budget(ratio_percent: float, total_lines: int) -> int:
    if not 0 < ratio_percent <= 100:
        raise ValueError(f"compression ratio must be in (0, 100], got {ratio_percent}")
    if total_lines < 0:
        raise ValueError("negative line count")
    return math.floor(ratio_percent * total_lines / 100)


class SummaryState:
    """Unfolded nodes of one file plus the token counts they expose."""

    def __init__(self, tree: FoldableTree, node_items: Sequence[Sequence[Hashable]]):
        if len(node_items) != len(tree.nodes):
            raise ValueError("need one item sequence per node")
        self.tree = tree
        self.node_items = node_items
        self.costs = tree.costs()
        self.u = [0] * len(tree.nodes)
        self.token_counts: Counter = Counter()
        self.consumed = 0

    def copy(self) -> "SummaryState":
        other = SummaryState.__new__(SummaryState)
        other.tree = self.tree
        other.node_items = self.node_items
        other.costs = self.costs
        other.u = list(self.u)
        other.token_counts = Counter(self.token_counts)
        other.consumed = self.consumed
        return other

    def unfold(self, node: int) -> "SummaryState":
        if self.u[node]:
            raise ValueError(f"node {node} already unfolded")
        self.u[node] = 1
        self.token_counts.update(self.node_items[node])
        self.consumed += self.costs[node]
        return self

    def with_node(self, node: int) -> "SummaryState":
        return self.copy().unfold(node)

    @classmethod
    def from_u(cls, tree, node_items, u: Sequence[int]) -> "SummaryState":
        state = cls(tree, node_items)
        for i, flag in enumerate(u):
            if flag:
                state.unfold(i)
        return state

    @property
    def num_tokens(self) -> int:
        return sum(self.token_counts.values())

    def frontier(self) -> list[int]:
        nodes = self.tree.nodes
        return [
            n.id for n in nodes[1:]
            if not self.u[n.id] and self.u[n.parent_id]
        ]

    def recount(self) -> Counter:
        c: Counter = Counter()
        for i, flag in enumerate(self.u):
            if flag:
                c.update(self.node_items[i])
        return c


Scorer = Callable[[SummaryState], float]


def summary_unigram(counts: Mapping[int, int], vocabulary_size: int, eps: float = SMOOTHING) -> np.ndarray:
    """Additively smoothed unigram distribution of the summary tokens."""
    dense = np.zeros(vocabulary_size)
    for item, c in counts.items():
        dense[item] += c
    n = dense.sum()
    return (dense + eps) / (n + eps * vocabulary_size)


def kl_divergence(p: np.ndarray, q: np.ndarray) -> float:
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    support = p > 0
    if np.any(q[support] <= 0):
        raise ValueError("q must be positive wherever p is")
    value = math.fsum(p[support] * np.log(p[support] / q[support]))
    # the true value is non-negative; anything below is rounding
    return max(0.0, value)


class TopicScorer:
    """Negative KL divergence from the file topic to the smoothed summary unigram.

    Evaluated sparsely: only items present in the summary are visited.
    """

    def __init__(self, phi_file: np.ndarray, eps: float = SMOOTHING):
        self.phi = np.asarray(phi_file, dtype=np.float64)
        if np.any(self.phi <= 0):
            raise ValueError("file topic must be strictly positive")
        self.T = self.phi.shape[0]
        self.eps = eps
        self.neg_entropy = float(np.sum(self.phi * np.log(self.phi)))
        self.log_eps = math.log(eps)

    def __call__(self, state: SummaryState) -> float:
        return self.score_counts(state.token_counts)

    def score_counts(self, counts: Mapping[int, int]) -> float:
        items = sorted(t for t, c in counts.items() if c > 0)
        if not items:
            return NEG_INF
        n = sum(counts[t] for t in items)
        mass = 0.0
        cross = 0.0
        for t in items:
            mass += self.phi[t]
            cross += self.phi[t] * math.log(counts[t] + self.eps)
        cross += (1.0 - mass) * self.log_eps - math.log(n + self.eps * self.T)
        return -(self.neg_entropy - cross)


class VsmScorer:
    """Cosine between log-tf vectors of the whole file and of the summary."""

    def __init__(self, file_counts: Mapping[Hashable, int]):
        self.file_vector = log_tf(file_counts)

    def __call__(self, state: SummaryState) -> float:
        return cosine(self.file_vector, log_tf(state.token_counts))


def score_topic(model, file_path: str, state: SummaryState) -> float:
    if not model.has_file(file_path):
        raise UnknownFile(file_path)
    return TopicScorer(model.phi_file(file_path))(state)


def score_vsm(file_counts: Mapping[Hashable, int], state: SummaryState) -> float:
    return VsmScorer(file_counts)(state)


@dataclass(frozen=True)
class Step:
    node: int
    score: float  # score of the summary after unfolding ``node``
    cost: int
    ratio: float


@dataclass
class FoldPlan:
    file_id: str
    unfolded: tuple[int, ...]
    consumed: int
    L_max: int
    score: float
    method: str = ""
    over_budget: bool = False
    steps: list[Step] = field(default_factory=list)
    # last ratio each node was offered at while on the frontier
    marginals: dict[int, float] = field(default_factory=dict)

    def u(self, n_nodes: int) -> list[int]:
        flags = [0] * n_nodes
        for i in self.unfolded:
            flags[i] = 1
        return flags


def _marginal(state: SummaryState, node: int, scorer: Scorer) -> float:
    # regions without tokens never get unfolded
    if not state.node_items[node]:
        return NEG_INF
    return scorer(state.with_node(node))


def greedy_fold(
    tree: FoldableTree,
    node_items: Sequence[Sequence[Hashable]],
    scorer: Scorer,
    L_max: int,
    *,
    method: str = "",
    record_unfit: bool = False,
) -> FoldPlan:
    """Unfold the root, then repeatedly the frontier node with the best score per line.

    With ``record_unfit`` the plan's ``marginals`` also cover frontier nodes
    that did not fit the remaining budget (extra scorer calls, no effect on
    the plan).
    """
    state = SummaryState(tree, node_items)
    state.unfold(0)
    root_score = scorer(state)
    steps = [Step(0, root_score, state.costs[0], math.inf if state.costs[0] == 0 else root_score / state.costs[0])]
    marginals: dict[int, float] = {0: steps[0].ratio}
    over = state.consumed > L_max
    while not over:
        remaining = L_max - state.consumed
        frontier = state.frontier()
        fitting = [i for i in frontier if state.costs[i] <= remaining]
        if record_unfit:
            for i in frontier:
                if state.costs[i] > remaining:
                    s = _marginal(state, i, scorer)
                    marginals[i] = s / state.costs[i] if s > NEG_INF else NEG_INF
        best, best_ratio, best_score = None, NEG_INF, NEG_INF
        # zero-cost nodes first, lowest id first
        for i in fitting:
            if state.costs[i] == 0:
                s = _marginal(state, i, scorer)
                marginals[i] = math.inf if s > NEG_INF else NEG_INF
                if s > NEG_INF:
                    best, best_ratio, best_score = i, math.inf, s
                    break
        if best is None:
            for i in fitting:
                s = _marginal(state, i, scorer)
                ratio = s / state.costs[i] if s > NEG_INF else NEG_INF
                marginals[i] = ratio
                if ratio > best_ratio:
                    best, best_ratio, best_score = i, ratio, s
        if best is None:
            break
        state.unfold(best)
        steps.append(Step(best, best_score, state.costs[best], best_ratio))
    return FoldPlan(
        file_id=tree.file_id,
        unfolded=tuple(i for i, f in enumerate(state.u) if f),
        consumed=state.consumed,
        L_max=L_max,
        score=scorer(state),
        method=method,
        over_budget=over,
        steps=steps,
        marginals=marginals,
    )


def rooted_subtrees(tree: FoldableTree):
    """Every node set that contains the root and is closed under parents."""

    def expand(node_id: int):
        options = [[node_id]]
        for c in tree.nodes[node_id].child_ids:
            child_opts = [[]] + list(expand(c))
            options = [o + extra for o in options for extra in child_opts]
        return options

    return expand(0)


def brute_force_optimal(
    tree: FoldableTree,
    node_items: Sequence[Sequence[Hashable]],
    scorer: Scorer,
    L_max: int,
    *,
    max_nodes: int = 20,
    method: str = "",
) -> FoldPlan:
    """Exhaustive search over rooted contiguous subtrees within the budget."""
    n = len(tree.nodes)
    if n > max_nodes:
        raise ValueError(f"refusing exhaustive search over {n} nodes (limit {max_nodes})")
    costs = tree.costs()
    best_key, best = None, None
    for subset in rooted_subtrees(tree):
        consumed = sum(costs[i] for i in subset)
        if consumed > L_max and subset != [0]:
            continue
        u = [0] * n
        for i in subset:
            u[i] = 1
        score = scorer(SummaryState.from_u(tree, node_items, u))
        key = (-score, u)
        if best_key is None or key < best_key:
            best_key, best = key, (subset, consumed, score)
    subset, consumed, score = best
    return FoldPlan(
        file_id=tree.file_id,
        unfolded=tuple(sorted(subset)),
        consumed=consumed,
        L_max=L_max,
        score=score,
        method=method,
        over_budget=consumed > L_max,
    )


def total_cost(tree: FoldableTree, u: Sequence[int]) -> int:
    return sum(node_cost(tree, i) for i, f in enumerate(u) if f)

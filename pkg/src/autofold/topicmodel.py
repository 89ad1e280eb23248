"""Scoped LDA with three shared background topics, one topic per project and
one per file, fitted by collapsed Gibbs sampling.

Every token position picks one of five slots. Slots 0-2 are the background
topics, slot 3 resolves to the position's project topic and slot 4 to its
file topic. Counts of (topic, item) pairs live in one flat array of "cells":
background topics own a dense block of ``T`` cells each, while project and
file topics only get cells for the items that actually occur in them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .tokens import Corpus, Vocabulary

log = logging.getLogger(__name__)

K = 5
N_BACKGROUND = 3
PROJECT, FILE = 3, 4
SLOT_NAMES = ("BG1", "BG2", "BG3", "PROJECT", "FILE")


@dataclass
class Hyperparams:
    alpha_m: np.ndarray  # (5,) pseudo-counts over slots for each node
    beta: np.ndarray  # (5,) symmetric item prior per slot kind

    @classmethod
    def default(cls) -> "Hyperparams":
        return cls(np.ones(K), np.full(K, 0.01))

    def __post_init__(self):
        self.alpha_m = np.asarray(self.alpha_m, dtype=np.float64).copy()
        self.beta = np.asarray(self.beta, dtype=np.float64).copy()
        if self.alpha_m.shape != (K,) or self.beta.shape != (K,):
            raise ValueError("hyperparameters need 5 entries each")
        for arr in (self.alpha_m, self.beta):
            if not (np.all(np.isfinite(arr)) and np.all(arr > 0)):
                raise ValueError(f"hyperparameters must be positive and finite: {arr}")

    def copy(self) -> "Hyperparams":
        return Hyperparams(self.alpha_m, self.beta)


@dataclass
class TrainConfig:
    sweeps: int = 500
    burn_in: int = 250
    sample_lag: int = 10
    hyper_lag: int = 25
    seed: int = 1
    optimize: bool = True

    def __post_init__(self):
        if not self.sweeps > self.burn_in >= 0:
            raise ValueError("need sweeps > burn_in >= 0")
        if self.sample_lag < 1 or self.hyper_lag < 1:
            raise ValueError("lags must be positive")


class _Layout:
    """Cell bookkeeping shared by the sampler and the trained model."""

    def __init__(self, corpus: Corpus):
        words, nodes, files, projects = corpus.flatten()
        T = len(corpus.vocabulary)
        P = len(corpus.projects)
        F = len(corpus.files)
        self.T, self.P, self.F = T, P, F
        self.n_topics = N_BACKGROUND + P + F

        topic_kind = np.empty(self.n_topics, dtype=np.int64)
        topic_kind[:N_BACKGROUND] = np.arange(N_BACKGROUND)
        topic_kind[N_BACKGROUND:N_BACKGROUND + P] = PROJECT
        topic_kind[N_BACKGROUND + P:] = FILE
        self.topic_kind = topic_kind

        # scoped cells: unique (scope, item) pairs, ordered by scope then item
        offset = N_BACKGROUND * T
        self.pcell, p_items, p_start = self._scoped_cells(projects, words, P, T, offset)
        offset += len(p_items)
        self.fcell, f_items, f_start = self._scoped_cells(files, words, F, T, offset)
        self.n_cells = offset + len(f_items)

        self.topic_start = np.concatenate(
            [np.arange(N_BACKGROUND) * T, p_start[:-1], f_start[:-1]]
        ).astype(np.int64)
        self.topic_stop = np.concatenate(
            [np.arange(1, N_BACKGROUND + 1) * T, p_start[1:], f_start[1:]]
        ).astype(np.int64)
        self.cell_item = np.concatenate(
            [np.tile(np.arange(T, dtype=np.int64), N_BACKGROUND), p_items, f_items]
        ).astype(np.int64)
        self.words, self.nodes, self.files, self.projects = words, nodes, files, projects

    @staticmethod
    def _scoped_cells(scope, words, n_scopes, T, offset):
        keys = scope * T + words
        uniq, inverse = np.unique(keys, return_inverse=True)
        items = uniq % T
        owners = uniq // T
        starts = offset + np.searchsorted(owners, np.arange(n_scopes + 1))
        return (offset + inverse).astype(np.int64), items.astype(np.int64), starts.astype(np.int64)

    def topic_of(self, slot: int, position: int) -> int:
        if slot < N_BACKGROUND:
            return slot
        if slot == PROJECT:
            return N_BACKGROUND + int(self.projects[position])
        return N_BACKGROUND + self.P + int(self.files[position])

    def cell_of(self, slot: int, position: int) -> int:
        if slot < N_BACKGROUND:
            return slot * self.T + int(self.words[position])
        if slot == PROJECT:
            return int(self.pcell[position])
        return int(self.fcell[position])


@njit(cache=True)
def _cell(slot, w, pc, fc, T):
    if slot < 3:
        return slot * T + w
    if slot == 3:
        return pc
    return fc


@njit(cache=True)
def _topic(slot, p, f, P):
    if slot < 3:
        return slot
    if slot == 3:
        return 3 + p
    return 3 + P + f


@njit(cache=True)
def _sweep_kernel(words, nodes, files, projects, pcell, fcell, z,
                  cell_counts, topic_totals, node_slot, alpha_m, beta, T, P, uniforms):
    probs = np.empty(5)
    for i in range(words.shape[0]):
        w = words[i]
        n = nodes[i]
        f = files[i]
        p = projects[i]
        old = z[i]
        cell_counts[_cell(old, w, pcell[i], fcell[i], T)] -= 1
        topic_totals[_topic(old, p, f, P)] -= 1
        node_slot[n, old] -= 1
        total = 0.0
        for k in range(5):
            c = cell_counts[_cell(k, w, pcell[i], fcell[i], T)]
            tot = topic_totals[_topic(k, p, f, P)]
            pk = (node_slot[n, k] + alpha_m[k]) * (c + beta[k]) / (tot + T * beta[k])
            probs[k] = pk
            total += pk
        target = uniforms[i] * total
        new = 4
        acc = 0.0
        for k in range(5):
            acc += probs[k]
            if target < acc:
                new = k
                break
        z[i] = new
        cell_counts[_cell(new, w, pcell[i], fcell[i], T)] += 1
        topic_totals[_topic(new, p, f, P)] += 1
        node_slot[n, new] += 1


@dataclass
class GibbsState:
    corpus: Corpus
    layout: _Layout
    hyper: Hyperparams
    rng: np.random.Generator
    z: np.ndarray
    cell_counts: np.ndarray
    topic_totals: np.ndarray
    node_slot: np.ndarray
    sweeps_done: int = 0

    @property
    def num_tokens(self) -> int:
        return int(self.z.shape[0])

    def recount(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Count tables rebuilt from ``z`` alone."""
        lay = self.layout
        cells = np.empty(self.num_tokens, dtype=np.int64)
        topics = np.empty(self.num_tokens, dtype=np.int64)
        for k in range(K):
            mask = self.z == k
            idx = np.nonzero(mask)[0]
            if k < N_BACKGROUND:
                cells[idx] = k * lay.T + lay.words[idx]
                topics[idx] = k
            elif k == PROJECT:
                cells[idx] = lay.pcell[idx]
                topics[idx] = N_BACKGROUND + lay.projects[idx]
            else:
                cells[idx] = lay.fcell[idx]
                topics[idx] = N_BACKGROUND + lay.P + lay.files[idx]
        cell_counts = np.bincount(cells, minlength=lay.n_cells).astype(np.int64)
        topic_totals = np.bincount(topics, minlength=lay.n_topics).astype(np.int64)
        node_slot = np.zeros((len(self.corpus.nodes), K), dtype=np.int64)
        np.add.at(node_slot, (lay.nodes, self.z), 1)
        return cell_counts, topic_totals, node_slot

    def check_counts(self) -> None:
        cc, tt, ns = self.recount()
        if not (np.array_equal(cc, self.cell_counts) and np.array_equal(tt, self.topic_totals)
                and np.array_equal(ns, self.node_slot)):
            raise AssertionError("incremental count tables diverged from z")

    def topic_counts(self, topic: int) -> np.ndarray:
        """Dense item counts N_{t|k} for one resolved topic."""
        return _dense(self.layout, self.cell_counts, topic)


def _dense(layout: _Layout, cell_values: np.ndarray, topic: int) -> np.ndarray:
    out = np.zeros(layout.T, dtype=cell_values.dtype)
    lo, hi = layout.topic_start[topic], layout.topic_stop[topic]
    out[layout.cell_item[lo:hi]] = cell_values[lo:hi]
    return out


def init_state(corpus: Corpus, hyper: Hyperparams | None = None, seed: int = 1) -> GibbsState:
    """Assign every token a uniformly random slot and tally the counts."""
    if corpus.num_tokens == 0 and not corpus.files:
        raise ValueError("empty corpus")
    layout = _Layout(corpus)
    rng = np.random.default_rng(seed)
    z = rng.integers(0, K, size=corpus.num_tokens).astype(np.int64)
    state = GibbsState(
        corpus, layout, (hyper or Hyperparams.default()).copy(), rng, z,
        np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros((0, K), np.int64),
    )
    state.cell_counts, state.topic_totals, state.node_slot = state.recount()
    return state


def _slot_weights(state: GibbsState, position: int, exclude_self: bool) -> np.ndarray:
    lay = state.layout
    n = int(lay.nodes[position])
    own = int(state.z[position])
    weights = np.empty(K)
    for k in range(K):
        cell = lay.cell_of(k, position)
        topic = lay.topic_of(k, position)
        mine = 1 if (exclude_self and k == own) else 0
        weights[k] = (
            (state.node_slot[n, k] - mine + state.hyper.alpha_m[k])
            * (state.cell_counts[cell] - mine + state.hyper.beta[k])
            / (state.topic_totals[topic] - mine + lay.T * state.hyper.beta[k])
        )
    return weights


def conditional_distribution(state: GibbsState, position: int) -> np.ndarray:
    """Full conditional over the five slots for one token, itself excluded."""
    w = _slot_weights(state, position, exclude_self=True)
    return w / w.sum()


def gibbs_sweep(state: GibbsState, *, reference: bool = False) -> GibbsState:
    """Resample every position once, in corpus order.

    ``reference=True`` runs the slow pure-Python path; given the same RNG
    state both paths produce the same assignments.
    """
    lay = state.layout
    uniforms = state.rng.random(state.num_tokens)
    if reference:
        for i in range(state.num_tokens):
            _move(state, i, int(state.z[i]), -1)
            # _slot_weights with the token already removed
            weights = _slot_weights(state, i, exclude_self=False)
            total = 0.0
            for k in range(K):
                total += weights[k]
            target = uniforms[i] * total
            new, acc = K - 1, 0.0
            for k in range(K):
                acc += weights[k]
                if target < acc:
                    new = k
                    break
            state.z[i] = new
            _move(state, i, new, +1)
    elif state.num_tokens:
        _sweep_kernel(
            lay.words, lay.nodes, lay.files, lay.projects, lay.pcell, lay.fcell, state.z,
            state.cell_counts, state.topic_totals, state.node_slot,
            state.hyper.alpha_m, state.hyper.beta, lay.T, lay.P, uniforms,
        )
    state.sweeps_done += 1
    return state


def _move(state: GibbsState, position: int, slot: int, delta: int) -> None:
    lay = state.layout
    state.cell_counts[lay.cell_of(slot, position)] += delta
    state.topic_totals[lay.topic_of(slot, position)] += delta
    state.node_slot[lay.nodes[position], slot] += delta


def estimate_phi(counts: np.ndarray, beta: float) -> np.ndarray:
    """MAP topic estimate from item counts: (N_t + beta) / sum_t (N_t + beta)."""
    counts = np.asarray(counts, dtype=np.float64)
    smoothed = counts + beta
    return smoothed / smoothed.sum()


def state_phi(state: GibbsState, topic: int) -> np.ndarray:
    kind = state.layout.topic_kind[topic]
    return estimate_phi(state.topic_counts(topic), state.hyper.beta[kind])


# -- hyperparameter optimisation ------------------------------------------------

def _rising_sum(hist: np.ndarray, a: float) -> float:
    """sum_n hist[n] * sum_{j<n} 1/(a+j), i.e. digamma(a+n) - digamma(a) by histogram."""
    if hist.shape[0] <= 1:
        return 0.0
    partial = np.cumsum(1.0 / (a + np.arange(hist.shape[0] - 1)))
    return float(np.dot(hist[1:], partial))


def optimize_asymmetric(
    counts: np.ndarray, alpha: np.ndarray, *, tol: float = 1e-4, max_iter: int = 50
) -> np.ndarray:
    """Fixed-point update of an asymmetric Dirichlet from group-by-dimension counts."""
    counts = np.asarray(counts, dtype=np.int64)
    alpha = np.asarray(alpha, dtype=np.float64).copy()
    dim_hists = [np.bincount(counts[:, k]) for k in range(counts.shape[1])]
    len_hist = np.bincount(counts.sum(axis=1)) if counts.size else np.zeros(1, np.int64)
    for _ in range(max_iter):
        denom = _rising_sum(len_hist, alpha.sum())
        if denom <= 0:
            break
        new = alpha.copy()
        for k, hist in enumerate(dim_hists):
            num = _rising_sum(hist, alpha[k])
            if num > 0:
                new[k] = alpha[k] * num / denom
        change = np.max(np.abs(new - alpha) / alpha)
        alpha = new
        if change < tol:
            break
    return alpha


def optimize_symmetric(
    cell_hist: np.ndarray, total_hist: np.ndarray, dim: int, beta: float,
    *, tol: float = 1e-4, max_iter: int = 50,
) -> float:
    """Fixed-point update of a symmetric Dirichlet over ``dim`` items.

    ``cell_hist[n]`` counts (group, item) pairs seen n times and
    ``total_hist[n]`` counts groups of total size n.
    """
    for _ in range(max_iter):
        num = _rising_sum(cell_hist, beta)
        denom = dim * _rising_sum(total_hist, dim * beta)
        if num <= 0 or denom <= 0:
            break
        new = beta * num / denom
        change = abs(new - beta) / beta
        beta = new
        if change < tol:
            break
    return beta


def optimize_hyperparameters(state: GibbsState) -> Hyperparams:
    """Re-estimate the slot prior and per-kind item priors from current counts."""
    lay = state.layout
    alpha_m = optimize_asymmetric(state.node_slot, state.hyper.alpha_m)
    beta = state.hyper.beta.copy()
    cell_kind = np.empty(lay.n_cells, dtype=np.int64)
    for topic in range(lay.n_topics):
        cell_kind[lay.topic_start[topic]:lay.topic_stop[topic]] = lay.topic_kind[topic]
    for kind in range(K):
        cells = state.cell_counts[cell_kind == kind]
        totals = state.topic_totals[lay.topic_kind == kind]
        if cells.sum() == 0:
            continue
        beta[kind] = optimize_symmetric(np.bincount(cells), np.bincount(totals), lay.T, beta[kind])
    return Hyperparams(alpha_m, beta)


# -- training ---------------------------------------------------------------------

@dataclass
class TrainedModel:
    vocabulary: Vocabulary
    hyper: Hyperparams
    topic_names: list[str]
    topic_kind: np.ndarray  # (n_topics,) slot kind per resolved topic
    topic_items: list[np.ndarray]  # per topic: item ids with accumulated count > 0
    topic_counts: list[np.ndarray]  # per topic: accumulated counts, aligned with topic_items
    n_samples: int
    slot_usage: np.ndarray  # (T, 5) accumulated slot choices per item
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index = {n: i for i, n in enumerate(self.topic_names)}

    @property
    def T(self) -> int:
        return len(self.vocabulary)

    def topic_index(self, name: str) -> int:
        return self._index[name]

    def has_file(self, path: str) -> bool:
        try:
            self.topic_index("file:" + path)
        except KeyError:
            return False
        return True

    def phi(self, topic: int) -> np.ndarray:
        beta = float(self.hyper.beta[self.topic_kind[topic]])
        counts = self.topic_counts[topic]
        total = int(counts.sum())
        denom = total / self.n_samples + self.T * beta
        out = np.full(self.T, beta / denom)
        out[self.topic_items[topic]] = (counts / self.n_samples + beta) / denom
        return out

    def phi_file(self, path: str) -> np.ndarray:
        return self.phi(self.topic_index("file:" + path))

    def slot_mass(self) -> np.ndarray:
        total = self.slot_usage.sum()
        return self.slot_usage.sum(axis=0) / total if total else np.zeros(K)


def topic_names_for(corpus: Corpus) -> list[str]:
    return (
        [f"background:{i}" for i in range(N_BACKGROUND)]
        + [f"project:{p.name}" for p in corpus.projects]
        + [f"file:{f.path}" for f in corpus.files]
    )


def train(
    corpus: Corpus,
    config: TrainConfig | None = None,
    hyper: Hyperparams | None = None,
    *,
    progress=None,
) -> TrainedModel:
    """Run the sampler and average item counts over post-burn-in samples."""
    config = config or TrainConfig()
    if not corpus.files:
        raise ValueError("empty corpus")
    state = init_state(corpus, hyper, config.seed)
    lay = state.layout
    acc_cells = np.zeros(lay.n_cells, dtype=np.int64)
    acc_slots = np.zeros((lay.T, K), dtype=np.int64)
    n_samples = 0
    for sweep in range(1, config.sweeps + 1):
        gibbs_sweep(state)
        after = sweep - config.burn_in
        if after > 0 and config.optimize and after % config.hyper_lag == 0:
            state.hyper = optimize_hyperparameters(state)
            log.debug("sweep %d: alpha_m=%s beta=%s", sweep, state.hyper.alpha_m, state.hyper.beta)
        if after > 0 and after % config.sample_lag == 0:
            acc_cells += state.cell_counts
            np.add.at(acc_slots, (lay.words, state.z), 1)
            n_samples += 1
        if progress is not None:
            progress(sweep)
    if n_samples == 0:
        acc_cells += state.cell_counts
        np.add.at(acc_slots, (lay.words, state.z), 1)
        n_samples = 1
    return model_from_counts(corpus, state, acc_cells, acc_slots, n_samples, config)


def model_from_counts(corpus, state, acc_cells, acc_slots, n_samples, config) -> TrainedModel:
    lay = state.layout
    items, counts = [], []
    for topic in range(lay.n_topics):
        lo, hi = lay.topic_start[topic], lay.topic_stop[topic]
        cell_slice = acc_cells[lo:hi]
        keep = np.nonzero(cell_slice)[0]
        order = np.argsort(lay.cell_item[lo:hi][keep], kind="stable")
        items.append(lay.cell_item[lo:hi][keep][order].copy())
        counts.append(cell_slice[keep][order].copy())
    meta = {
        "sweeps": config.sweeps,
        "burn_in": config.burn_in,
        "sample_lag": config.sample_lag,
        "hyper_lag": config.hyper_lag,
        "seed": config.seed,
        "num_tokens": int(corpus.num_tokens),
    }
    return TrainedModel(
        vocabulary=corpus.vocabulary,
        hyper=state.hyper.copy(),
        topic_names=topic_names_for(corpus),
        topic_kind=lay.topic_kind.copy(),
        topic_items=items,
        topic_counts=counts,
        n_samples=n_samples,
        slot_usage=acc_slots,
        metadata=meta,
    )

"""Log term-frequency vectors and cosine similarity."""

from __future__ import annotations

import math
from typing import Hashable, Mapping

TermWeightVector = dict


def log_tf(counts: Mapping[Hashable, int]) -> TermWeightVector:
    """``ln(1 + count)`` per item; zero counts are left out."""
    out = {}
    for item, c in counts.items():
        if c < 0:
            raise ValueError(f"negative count for {item!r}")
        if c:
            out[item] = math.log1p(c)
    return out


def _norm(v: Mapping) -> float:
    return math.sqrt(math.fsum(w * w for w in v.values()))


def cosine(v: Mapping[Hashable, float], u: Mapping[Hashable, float]) -> float:
    """Cosine of two sparse non-negative vectors; 0 if either is empty."""
    if not v or not u:
        return 0.0
    if len(u) < len(v):
        v, u = u, v
    dot = math.fsum(w * u[k] for k, w in v.items() if k in u)
    denom = _norm(v) * _norm(u)
    if denom == 0.0:
        return 0.0
    return min(1.0, dot / denom)

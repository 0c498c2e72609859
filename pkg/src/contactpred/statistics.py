"""Descriptive statistics of contact graphs and of link recurrence."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .contact_data import ContactGraph, TemporalSplit


@dataclass(frozen=True)
class GraphSummary:
    vertex_count: int
    edge_count: int
    avg_degree: float
    avg_path_length: float | None
    diameter: int | None
    avg_contact_length: float
    largest_clique_number: int

    def as_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "avg_degree": self.avg_degree,
            "avg_path_length": self.avg_path_length,
            "diameter": self.diameter,
            "avg_contact_length": self.avg_contact_length,
            "largest_clique_number": self.largest_clique_number,
        }


def _bfs(g: ContactGraph, source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(g: ContactGraph) -> list[list[str]]:
    """Components as sorted vertex lists, largest first, ties by first vertex."""
    seen: set[str] = set()
    comps = []
    for v in g.sorted_vertices():
        if v in seen:
            continue
        comp = sorted(_bfs(g, v))
        seen.update(comp)
        comps.append(comp)
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def max_clique_size(g: ContactGraph) -> int:
    """Clique number via Bron-Kerbosch with Tomita pivoting and size bound."""
    if not len(g):
        return 0
    adj = {v: set(g.adjacency(v)) for v in g.vertices}
    best = 1

    def expand(r_size, p, x):
        nonlocal best
        if not p and not x:
            best = max(best, r_size)
            return
        if r_size + len(p) <= best:
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r_size + 1, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(0, set(adj), set())
    return best


def graph_summary(g: ContactGraph) -> GraphSummary:
    """Size, degree, path-length, contact-length and clique statistics.

    Path statistics are taken over the largest connected component; they
    are None when that component has a single vertex.
    """
    n, m = len(g), g.edge_count
    avg_degree = 2 * m / n if n else 0.0
    acl = sum(g.edges.values()) / m if m else 0.0
    apl = diameter = None
    comps = connected_components(g)
    if comps and len(comps[0]) > 1:
        total = pairs = diameter = 0
        for v in comps[0]:
            for u, d in _bfs(g, v).items():
                if u != v:
                    total += d
                    pairs += 1
                    diameter = max(diameter, d)
        apl = total / pairs
    return GraphSummary(n, m, avg_degree, apl, diameter, acl, max_clique_size(g))


def ccdf(values: Iterable[float]) -> list[tuple[float, float]]:
    """``(s, P(X >= s))`` for each distinct value ``s``, ascending."""
    vals = sorted(values)
    n = len(vals)
    out = []
    i = 0
    while i < n:
        out.append((vals[i], (n - i) / n))
        j = i
        while j < n and vals[j] == vals[i]:
            j += 1
        i = j
    return out


def contact_length_ccdf(g: ContactGraph) -> list[tuple[int, float]]:
    return ccdf(g.edges.values())


@dataclass(frozen=True)
class RankFraction:
    rank: int
    mean: float
    ci95: float
    n: int


def top_k_contact_fractions(g: ContactGraph, k: int = 10) -> list[RankFraction]:
    """Mean share of each participant's i-th longest tie in their total time.

    Participants with fewer than i ties contribute 0 at rank i. The
    interval is the normal approximation ``1.96 * sd / sqrt(n)`` with the
    sample standard deviation.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rows = []
    for v in g.sorted_vertices():
        ws = sorted(g.adjacency(v).values(), reverse=True)
        if not ws:
            continue
        total = sum(ws)
        rows.append([ws[i] / total if i < len(ws) else 0.0 for i in range(k)])
    if not rows:
        return []
    mat = np.array(rows)
    n = mat.shape[0]
    sd = mat.std(axis=0, ddof=1) if n > 1 else np.zeros(k)
    half = 1.96 * sd / math.sqrt(n)
    return [RankFraction(i + 1, float(mat[:, i].mean()), float(half[i]), n) for i in range(k)]


@dataclass(frozen=True)
class DurationBin:
    """Half-open range ``[lower, upper)`` of training tie strength in seconds.

    ``upper=None`` leaves the bin open. The no-contact bin (lower = upper = 0)
    holds pairs without a training edge.
    """

    lower: int
    upper: int | None

    def __post_init__(self):
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f"bad bin [{self.lower}, {self.upper})")
        if self.upper == self.lower and self.lower != 0:
            raise ValueError("only the no-contact bin may be empty")

    @classmethod
    def no_contact(cls) -> "DurationBin":
        return cls(0, 0)

    @property
    def is_no_contact(self) -> bool:
        return self.lower == 0 and self.upper == 0

    def __contains__(self, weight: int) -> bool:
        if self.is_no_contact:
            return weight == 0
        return weight > 0 and weight >= self.lower and (self.upper is None or weight < self.upper)

    @property
    def label(self) -> str:
        if self.is_no_contact:
            return "no"
        if self.upper is None:
            return f">={self.lower}"
        return f"[{self.lower},{self.upper})"

    @classmethod
    def parse(cls, text: str) -> "DurationBin":
        """Parse ``no``, ``20-60`` or ``960-`` (open)."""
        text = text.strip()
        if text == "no":
            return cls.no_contact()
        lo, sep, hi = text.partition("-")
        if not sep:
            raise ValueError(f"bad bin {text!r}, expected 'lo-hi', 'lo-' or 'no'")
        return cls(int(lo), int(hi) if hi else None)


PAPER_BINS = (
    DurationBin.no_contact(),
    DurationBin(20, 60),
    DurationBin(60, 120),
    DurationBin(120, 240),
    DurationBin(240, 480),
    DurationBin(480, 960),
    DurationBin(960, None),
)


def _check_bins(bins: Sequence[DurationBin]):
    spans = sorted((b for b in bins if not b.is_no_contact), key=lambda b: b.lower)
    for a, b in zip(spans, spans[1:]):
        if a.upper is None or a.upper > b.lower:
            raise ValueError(f"bins {a.label} and {b.label} overlap")


def _bin_of(bins, weight):
    for i, b in enumerate(bins):
        if weight in b:
            return i
    return None


@dataclass(frozen=True)
class BinRecurrence:
    bin: DurationBin
    pairs: int
    no_recurrence: int

    @property
    def probability(self) -> float | None:
        return self.no_recurrence / self.pairs if self.pairs else None


def recurrence_by_bin(split: TemporalSplit,
                      bins: Sequence[DurationBin] = PAPER_BINS) -> list[BinRecurrence]:
    """Per training tie-strength bin, how many core pairs never meet again.

    The pair universe is every unordered core pair; pairs whose training
    weight falls in no bin are not counted.
    """
    _check_bins(bins)
    pairs = [0] * len(bins)
    lost = [0] * len(bins)
    for u, v in split.core_pairs():
        i = _bin_of(bins, split.train.weight(u, v))
        if i is None:
            continue
        pairs[i] += 1
        if not split.test.has_edge(u, v):
            lost[i] += 1
    return [BinRecurrence(b, p, q) for b, p, q in zip(bins, pairs, lost)]


def recurrence_duration_ccdf(split: TemporalSplit,
                             bins: Sequence[DurationBin] = PAPER_BINS
                             ) -> list[tuple[DurationBin, list[tuple[int, float]]]]:
    """CCDF of the future tie strength of recurring core pairs, per bin."""
    _check_bins(bins)
    future: list[list[int]] = [[] for _ in bins]
    for u, v in split.core_pairs():
        w = split.test.weight(u, v)
        if not w:
            continue
        i = _bin_of(bins, split.train.weight(u, v))
        if i is not None:
            future[i].append(w)
    return [(b, ccdf(ws)) for b, ws in zip(bins, future)]


class Condition(enum.Enum):
    COMMON_NEIGHBORS = "cn"
    TIE_STRENGTH = "strength"


@dataclass(frozen=True)
class ConditionalPoint:
    threshold: int
    recurring: int
    total: int

    @property
    def probability(self) -> float | None:
        return self.recurring / self.total if self.total else None


def recurrence_prob_conditioned(split: TemporalSplit, condition: Condition,
                                strength_T: int, thresholds: Iterable[int]) -> list[ConditionalPoint]:
    """P(future tie >= strength_T | CN >= k) or (| training tie >= k).

    The universe is the set of training edges between core members.
    """
    train, test = split.train, split.test
    stats = []
    for (u, v), w in train.edges.items():
        if u not in split.core or v not in split.core:
            continue
        if condition is Condition.COMMON_NEIGHBORS:
            key = len(train.adjacency(u).keys() & train.adjacency(v).keys())
        else:
            key = w
        stats.append((key, test.weight(u, v) >= max(strength_T, 1)))
    out = []
    for k in thresholds:
        hits = [rec for key, rec in stats if key >= k]
        out.append(ConditionalPoint(k, sum(hits), len(hits)))
    return out

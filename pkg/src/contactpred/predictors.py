"""Neighborhood, path-based and tie-strength proximity measures.

All scores are symmetric in the pair. Weighted variants use summed
contact durations as edge weights; ``LEN`` is the current tie strength.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .contact_data import ContactGraph, canonical_pair
from .exceptions import ConfigurationError, ConvergenceError, UnknownVertexError

_LN2 = math.log(2.0)


class Measure(enum.Enum):
    """Proximity measure kinds, in their fixed declaration order."""

    CN = "cn"
    AA = "aa"
    JC = "jc"
    RA = "ra"
    PA = "pa"
    WCN = "wcn"
    WAA = "waa"
    WJC = "wjc"
    WRA = "wra"
    WPA = "wpa"
    RPR = "rpr"
    WRPR = "wrpr"
    KATZ = "katz"
    WKATZ = "wkatz"
    LEN = "len"

    @property
    def weighted(self) -> bool:
        return self in _WEIGHTED

    @property
    def path_based(self) -> bool:
        return self in (Measure.RPR, Measure.WRPR, Measure.KATZ, Measure.WKATZ)

    @classmethod
    def parse(cls, name: str) -> "Measure":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ConfigurationError(f"unknown measure {name!r} (choose from {valid})") from None

    @classmethod
    def parse_list(cls, text: str) -> list["Measure"]:
        """Parse ``all`` or a comma-separated list of measure names."""
        names = [t for t in (s.strip() for s in text.split(",")) if t]
        if not names:
            raise ConfigurationError("empty measure list")
        if names == ["all"]:
            return list(cls)
        return [cls.parse(n) for n in names]


_WEIGHTED = frozenset(
    {Measure.WCN, Measure.WAA, Measure.WJC, Measure.WRA, Measure.WPA,
     Measure.WRPR, Measure.WKATZ, Measure.LEN}
)


@dataclass(frozen=True)
class PredictorConfig:
    """Parameters of the path-based predictors.

    alpha is the rooted PageRank restart probability, beta the Katz damping
    factor and l_max the Katz walk-length cutoff.
    """

    alpha: float = 0.15
    beta: float = 0.005
    l_max: int = 6
    rpr_tolerance: float = 1e-10
    rpr_max_iterations: int = 10_000

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ConfigurationError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.beta < 1.0:
            raise ConfigurationError(f"beta must lie in (0, 1), got {self.beta}")
        if int(self.l_max) != self.l_max or self.l_max < 1:
            raise ConfigurationError(f"l_max must be a positive integer, got {self.l_max}")
        if not self.rpr_tolerance > 0:
            raise ConfigurationError(f"rpr_tolerance must be positive, got {self.rpr_tolerance}")
        if int(self.rpr_max_iterations) != self.rpr_max_iterations or self.rpr_max_iterations < 1:
            raise ConfigurationError("rpr_max_iterations must be a positive integer")

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_CONFIG = PredictorConfig()


class ProximityIndex:
    """Per-graph cache used to score many pairs on one graph.

    Holds vertex strengths, the dense transition and adjacency matrices, and
    memoizes rooted PageRank distributions and Katz rows per root.
    """

    def __init__(self, g: ContactGraph, cfg: PredictorConfig = DEFAULT_CONFIG):
        self.graph = g
        self.config = cfg
        self.order = g.sorted_vertices()
        self.index = {v: i for i, v in enumerate(self.order)}
        self._strength = {v: sum(g.adjacency(v).values()) for v in self.order}
        self._matrices: dict[bool, np.ndarray] = {}
        self._transitions: dict[bool, np.ndarray] = {}
        self._rpr: dict[tuple[bool, str], np.ndarray] = {}
        self._katz: dict[tuple[bool, str], np.ndarray] = {}

    def _check(self, x):
        if x not in self.index:
            raise UnknownVertexError(x)

    def strength(self, x: str) -> int:
        self._check(x)
        return self._strength[x]

    # neighborhood measures

    def neighborhood(self, x: str, y: str, m: Measure) -> float:
        g = self.graph
        nx_, ny_ = g.adjacency(x), g.adjacency(y)
        if m is Measure.PA:
            return float(len(nx_) * len(ny_))
        if m is Measure.WPA:
            return float(self._strength[x] * self._strength[y])
        if m is Measure.LEN:
            return float(nx_.get(y, 0))
        common = sorted(nx_.keys() & ny_.keys())
        if m is Measure.CN:
            return float(len(common))
        if m is Measure.JC:
            union = len(nx_.keys() | ny_.keys())
            return len(common) / union if union else 0.0
        if m is Measure.AA:
            total = 0.0
            for z in common:
                dz = len(g.adjacency(z))
                assert dz >= 2, "a common neighbor has degree >= 2"
                total += 1.0 / math.log(dz)
            return total
        if m is Measure.RA:
            total = 0.0
            for z in common:
                total += 1.0 / len(g.adjacency(z))
            return total
        if m is Measure.WCN:
            return float(sum(nx_[z] + ny_[z] for z in common))
        if m is Measure.WJC:
            denom = self._strength[x] + self._strength[y]
            if not denom:
                return 0.0
            return sum(nx_[z] + ny_[z] for z in common) / denom
        if m is Measure.WAA:
            total = 0.0
            for z in common:
                total += (nx_[z] + ny_[z]) / max(math.log(self._strength[z]), _LN2)
            return total
        if m is Measure.WRA:
            total = 0.0
            for z in common:
                total += (nx_[z] + ny_[z]) / self._strength[z]
            return total
        raise ValueError(f"{m} is not a neighborhood measure")

    # path-based measures

    def adjacency_matrix(self, weighted: bool) -> np.ndarray:
        """Dense symmetric matrix; weighted entries are scaled by the max weight."""
        if weighted not in self._matrices:
            n = len(self.order)
            mat = np.zeros((n, n))
            edges = self.graph.edges
            wmax = max(edges.values()) if edges else 1
            for (u, v), w in edges.items():
                val = w / wmax if weighted else 1.0
                i, j = self.index[u], self.index[v]
                mat[i, j] = mat[j, i] = val
            self._matrices[weighted] = mat
        return self._matrices[weighted]

    def transition_matrix(self, weighted: bool) -> np.ndarray:
        """Row-stochastic walk matrix; rows of isolated vertices stay zero."""
        if weighted not in self._transitions:
            n = len(self.order)
            mat = np.zeros((n, n))
            for u in self.order:
                nbrs = self.graph.adjacency(u)
                if not nbrs:
                    continue
                i = self.index[u]
                total = sum(nbrs.values()) if weighted else len(nbrs)
                for v, w in nbrs.items():
                    mat[i, self.index[v]] = (w if weighted else 1) / total
            self._transitions[weighted] = mat
        return self._transitions[weighted]

    def rooted_pagerank(self, root: str, weighted: bool) -> np.ndarray:
        self._check(root)
        key = (weighted, root)
        if key in self._rpr:
            return self._rpr[key]
        cfg = self.config
        alpha = cfg.alpha
        trans = self.transition_matrix(weighted)
        dangling = trans.sum(axis=1) == 0
        r = self.index[root]
        pi = np.zeros(len(self.order))
        pi[r] = 1.0
        residual = math.inf
        for _ in range(cfg.rpr_max_iterations):
            nxt = (1.0 - alpha) * (pi @ trans)
            nxt[r] += alpha + (1.0 - alpha) * pi[dangling].sum()
            residual = float(np.abs(nxt - pi).sum())
            pi = nxt
            if residual < cfg.rpr_tolerance:
                break
        else:
            raise ConvergenceError(cfg.rpr_max_iterations, residual)
        self._rpr[key] = pi
        return pi

    def katz_row(self, x: str, weighted: bool) -> np.ndarray:
        """Truncated Katz scores from ``x`` to every vertex."""
        self._check(x)
        key = (weighted, x)
        if key in self._katz:
            return self._katz[key]
        mat = self.adjacency_matrix(weighted)
        beta = self.config.beta
        walk = np.zeros(len(self.order))
        walk[self.index[x]] = 1.0
        total = np.zeros_like(walk)
        damp = 1.0
        for _ in range(self.config.l_max):
            walk = walk @ mat
            damp *= beta
            total += damp * walk
        self._katz[key] = total
        return total

    def score(self, x: str, y: str, m: Measure) -> float:
        self._check(x)
        self._check(y)
        if x == y:
            raise ValueError(f"pair members must differ, got ({x!r}, {y!r})")
        x, y = canonical_pair(x, y)
        if m in (Measure.RPR, Measure.WRPR):
            weighted = m is Measure.WRPR
            px = self.rooted_pagerank(x, weighted)
            py = self.rooted_pagerank(y, weighted)
            return float(px[self.index[y]] + py[self.index[x]])
        if m in (Measure.KATZ, Measure.WKATZ):
            return float(self.katz_row(x, m is Measure.WKATZ)[self.index[y]])
        return self.neighborhood(x, y, m)


def score(g: ContactGraph, x: str, y: str, m: Measure,
          cfg: PredictorConfig = DEFAULT_CONFIG) -> float:
    """Proximity score of the pair ``{x, y}`` under measure ``m``."""
    return ProximityIndex(g, cfg).score(x, y, m)


def rooted_pagerank(g: ContactGraph, root: str, weighted: bool = False,
                    cfg: PredictorConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """Stationary distribution of the random walk restarting at ``root``.

    With probability ``alpha`` the walker jumps back to the root, otherwise
    it moves to a neighbor chosen uniformly (or proportionally to weight).
    An isolated vertex sends its non-restart mass back to the root.
    """
    idx = ProximityIndex(g, cfg)
    pi = idx.rooted_pagerank(root, weighted)
    return {v: float(pi[i]) for i, v in enumerate(idx.order)}


def katz(g: ContactGraph, x: str, y: str, weighted: bool = False,
         cfg: PredictorConfig = DEFAULT_CONFIG) -> float:
    """Truncated Katz index counting walks of length 1..l_max."""
    return ProximityIndex(g, cfg).score(x, y, Measure.WKATZ if weighted else Measure.KATZ)


def score_pairs(g: ContactGraph | ProximityIndex, pairs: Iterable[Sequence[str]],
                m: Measure, cfg: PredictorConfig = DEFAULT_CONFIG) -> list[tuple[tuple[str, str], float]]:
    """Score many pairs on one graph, preserving input order."""
    idx = g if isinstance(g, ProximityIndex) else ProximityIndex(g, cfg)
    out = []
    for pair in pairs:
        x, y = pair
        try:
            out.append(((x, y), idx.score(x, y, m)))
        except (UnknownVertexError, ConvergenceError) as exc:
            exc.pair = (x, y)
            raise
    return out

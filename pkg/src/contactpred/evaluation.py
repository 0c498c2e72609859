"""Candidate enumeration, labelling, exact AUC and threshold sweeps."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .contact_data import TemporalSplit
from .exceptions import ConfigurationError, UndefinedAUCError
from .predictors import DEFAULT_CONFIG, Measure, PredictorConfig, ProximityIndex

SWEEP_HEADER = (
    "measure", "task", "future_threshold", "removal_threshold", "auc",
    "positives", "negatives", "excluded", "alpha", "beta", "l_max",
)

#: fixed future tie strength of the weak-tie analysis (15 minutes)
DEFAULT_WEAK_TIE_FUTURE_T = 900


class Task(enum.Enum):
    NEW = "new"
    RECURRING = "recurring"

    @classmethod
    def parse(cls, name: str) -> "Task":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ConfigurationError(f"unknown task {name!r} (choose new or recurring)") from None


class Label(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    EXCLUDED = "excluded"


@dataclass(frozen=True)
class EvaluationConfig:
    future_threshold: int = 0
    removal_threshold: int = 0

    def __post_init__(self):
        if self.future_threshold < 0 or self.removal_threshold < 0:
            raise ConfigurationError("thresholds must be >= 0")


@dataclass(frozen=True)
class ScoredPair:
    pair: tuple[str, str]
    score: float
    label: Label


@dataclass(frozen=True)
class AucResult:
    """One evaluation point. ``auc`` is None when a class is empty."""

    measure: Measure
    task: Task
    auc: float | None
    positives: int
    negatives: int
    excluded: int
    config: EvaluationConfig = field(default_factory=EvaluationConfig)
    predictor_config: PredictorConfig = DEFAULT_CONFIG

    @property
    def defined(self) -> bool:
        return self.auc is not None

    def row(self) -> dict:
        return {
            "measure": self.measure.value,
            "task": self.task.value,
            "future_threshold": self.config.future_threshold,
            "removal_threshold": self.config.removal_threshold,
            "auc": "" if self.auc is None else repr(self.auc),
            "positives": self.positives,
            "negatives": self.negatives,
            "excluded": self.excluded,
            "alpha": repr(self.predictor_config.alpha),
            "beta": repr(self.predictor_config.beta),
            "l_max": self.predictor_config.l_max,
        }


def candidates(split: TemporalSplit, task: Task) -> list[tuple[str, str]]:
    """Core pairs without (NEW) or with (RECURRING) a training edge."""
    want_edge = task is Task.RECURRING
    train = split.train
    return [p for p in split.core_pairs() if train.has_edge(*p) == want_edge]


def label(split: TemporalSplit, pair: Sequence[str], task: Task,
          cfg: EvaluationConfig = EvaluationConfig()) -> Label:
    """Positive when the future tie reaches the threshold, excluded when it
    exists but is weaker, negative when absent."""
    u, v = pair
    w = split.test.weight(u, v) if split.test.has_edge(u, v) else 0
    if w == 0:
        return Label.NEGATIVE
    if w >= max(cfg.future_threshold, 1):
        return Label.POSITIVE
    return Label.EXCLUDED


def _split_classes(scored: Iterable[ScoredPair]):
    pos, neg, excl = [], [], 0
    for sp in scored:
        if sp.label is Label.POSITIVE:
            pos.append(sp.score)
        elif sp.label is Label.NEGATIVE:
            neg.append(sp.score)
        else:
            excl += 1
    return pos, neg, excl


def auc_from_scores(positive_scores: Sequence[float], negative_scores: Sequence[float]) -> float:
    """Mann-Whitney AUC with ties credited one half."""
    n_pos, n_neg = len(positive_scores), len(negative_scores)
    if n_pos == 0 or n_neg == 0:
        raise UndefinedAUCError(n_pos, n_neg)
    values = np.concatenate([np.asarray(positive_scores, float), np.asarray(negative_scores, float)])
    _, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    # doubled midrank of each tie group: 2 * (#smaller) + group size + 1
    below = np.concatenate(([0], np.cumsum(counts)[:-1]))
    doubled_ranks = 2 * below + counts + 1
    doubled_u = int(doubled_ranks[inverse[:n_pos]].sum()) - n_pos * (n_pos + 1)
    return doubled_u / (2 * n_pos * n_neg)


def auc(scored: Iterable[ScoredPair]) -> float:
    """Exact AUC of the scored pairs; excluded pairs are ignored."""
    pos, neg, excl = _split_classes(scored)
    if not pos or not neg:
        raise UndefinedAUCError(len(pos), len(neg), excl)
    return auc_from_scores(pos, neg)


def score_candidates(split: TemporalSplit, m: Measure, task: Task,
                     cfg: EvaluationConfig = EvaluationConfig(),
                     pcfg: PredictorConfig = DEFAULT_CONFIG) -> list[ScoredPair]:
    """Candidates of ``task`` scored on the pruned training graph, with labels."""
    pairs = candidates(split, task)
    index = ProximityIndex(split.train.prune(cfg.removal_threshold), pcfg)
    return [ScoredPair(p, index.score(*p, m), label(split, p, task, cfg)) for p in pairs]


def evaluate(split: TemporalSplit, m: Measure, task: Task,
             cfg: EvaluationConfig = EvaluationConfig(),
             pcfg: PredictorConfig = DEFAULT_CONFIG) -> AucResult:
    """AUC of measure ``m`` on ``task``; raises UndefinedAUCError on an empty class."""
    result = _evaluate_point(split, m, task, cfg, pcfg)
    if result.auc is None:
        raise UndefinedAUCError(result.positives, result.negatives, result.excluded)
    return result


def _evaluate_point(split, m, task, cfg, pcfg) -> AucResult:
    scored = score_candidates(split, m, task, cfg, pcfg)
    pos, neg, excl = _split_classes(scored)
    value = auc_from_scores(pos, neg) if pos and neg else None
    return AucResult(m, task, value, len(pos), len(neg), excl, cfg, pcfg)


def _check_sorted(thresholds):
    thresholds = list(thresholds)
    if any(t < 0 for t in thresholds):
        raise ConfigurationError("thresholds must be >= 0")
    if thresholds != sorted(thresholds):
        raise ConfigurationError("thresholds must be sorted ascending")
    return thresholds


def _run(points, jobs):
    if jobs and jobs > 1 and len(points) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_evaluate_star, points))
    return [_evaluate_star(p) for p in points]


def _evaluate_star(args):
    return _evaluate_point(*args)


def sweep_future_threshold(split: TemporalSplit, m: Measure, task: Task,
                           thresholds: Iterable[int],
                           pcfg: PredictorConfig = DEFAULT_CONFIG,
                           removal_threshold: int = 0, jobs: int = 1) -> list[AucResult]:
    """One evaluation per future tie-strength threshold.

    Points with an empty class carry ``auc=None`` instead of aborting the sweep.
    """
    points = [
        (split, m, task, EvaluationConfig(t, removal_threshold), pcfg)
        for t in _check_sorted(thresholds)
    ]
    return _run(points, jobs)


def weak_tie_removal_sweep(split: TemporalSplit, m: Measure,
                           removal_thresholds: Iterable[int],
                           fixed_future_T: int = DEFAULT_WEAK_TIE_FUTURE_T,
                           pcfg: PredictorConfig = DEFAULT_CONFIG,
                           task: Task = Task.RECURRING, jobs: int = 1) -> list[AucResult]:
    """AUC after pruning training edges below each removal threshold.

    Candidates and labels always come from the unpruned training graph; only
    the scores are computed on the pruned one.
    """
    points = [
        (split, m, task, EvaluationConfig(fixed_future_T, r), pcfg)
        for r in _check_sorted(removal_thresholds)
    ]
    return _run(points, jobs)


def write_sweep_csv(results: Iterable[AucResult], fh: TextIO) -> None:
    writer = csv.DictWriter(fh, fieldnames=SWEEP_HEADER, lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow(r.row())


def evaluate_grid(split: TemporalSplit, measures: Sequence[Measure], task: Task,
                  configs: Sequence[EvaluationConfig],
                  pcfg: PredictorConfig = DEFAULT_CONFIG, jobs: int = 1) -> list[AucResult]:
    """Every measure at every configuration, measure-major, in input order.

    Undefined points carry ``auc=None``; ``jobs > 1`` evaluates in worker
    processes without changing the result order.
    """
    points = [(split, m, task, c, pcfg) for m in measures for c in configs]
    return _run(points, jobs)

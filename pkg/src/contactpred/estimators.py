"""scikit-learn style front-end.

``LinkPredictor`` is fitted on a training contact graph and scores candidate
pairs; ``WeakTiePruner`` removes weak ties; ``SubgroupDiscovery`` mines
attribute conjunctions. All expose ``get_params``/``set_params`` so they
compose with ``sklearn.base.clone`` and grid searches over their parameters.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_graph, check_pairs, check_threshold
from .evaluation import auc_from_scores
from .predictors import Measure, PredictorConfig, ProximityIndex
from .subgroups import discover, evaluate_pattern


class LinkPredictor(BaseEstimator):
    """Unsupervised link predictor for one proximity measure.

    Parameters
    ----------
    measure : str or Measure
        One of ``cn, aa, jc, ra, pa, wcn, waa, wjc, wra, wpa, rpr, wrpr,
        katz, wkatz, len``.
    alpha, beta, l_max, rpr_tolerance, rpr_max_iterations
        Path-based predictor parameters, see ``PredictorConfig``.

    Examples
    --------
    >>> from contactpred import ContactEvent, LinkPredictor
    >>> events = [ContactEvent(0, 60, "a", "b"), ContactEvent(0, 30, "b", "c")]
    >>> LinkPredictor("cn").fit(events).decision_function([("a", "c")])
    array([1.])
    """

    def __init__(self, measure="cn", alpha=0.15, beta=0.005, l_max=6,
                 rpr_tolerance=1e-10, rpr_max_iterations=10_000):
        self.measure = measure
        self.alpha = alpha
        self.beta = beta
        self.l_max = l_max
        self.rpr_tolerance = rpr_tolerance
        self.rpr_max_iterations = rpr_max_iterations

    def predictor_config(self) -> PredictorConfig:
        return PredictorConfig(self.alpha, self.beta, self.l_max,
                               self.rpr_tolerance, self.rpr_max_iterations)

    def _measure(self) -> Measure:
        return self.measure if isinstance(self.measure, Measure) else Measure.parse(self.measure)

    def fit(self, X, y=None):
        """Fit on a ContactGraph or a list of ContactEvents (``y`` is ignored)."""
        self.measure_ = self._measure()
        self.graph_ = check_graph(X)
        self.index_ = ProximityIndex(self.graph_, self.predictor_config())
        return self

    def decision_function(self, pairs) -> np.ndarray:
        """Score each pair; higher means a link is more likely."""
        check_is_fitted(self, "index_")
        pairs = check_pairs(pairs, self.graph_)
        return np.array([self.index_.score(u, v, self.measure_) for u, v in pairs], dtype=float)

    def rank(self, pairs) -> list[tuple[str, str]]:
        """Pairs in decreasing order of confidence (stable for ties)."""
        pairs = check_pairs(pairs, None)
        scores = self.decision_function(pairs)
        order = np.argsort(-scores, kind="stable")
        return [pairs[i] for i in order]

    def score(self, pairs, y) -> float:
        """AUC of the scores against binary labels ``y`` (1 = link appears)."""
        scores = self.decision_function(pairs)
        y = np.asarray(y, dtype=bool)
        if y.shape != scores.shape:
            raise ValueError("pairs and y must have the same length")
        return auc_from_scores(scores[y], scores[~y])


class WeakTiePruner(TransformerMixin, BaseEstimator):
    """Drop edges whose summed contact time is below ``threshold`` seconds."""

    def __init__(self, threshold=0):
        self.threshold = threshold

    def fit(self, X=None, y=None):
        self.threshold_ = check_threshold(self.threshold, "threshold")
        return self

    def transform(self, X):
        check_is_fitted(self, "threshold_")
        return check_graph(X).prune(self.threshold_)


class SubgroupDiscovery(BaseEstimator):
    """Exhaustive lift-ranked subgroup discovery.

    ``fit(profiles, targets)`` stores the ranked patterns in ``patterns_``
    and the population mean in ``population_mean_``.
    """

    def __init__(self, max_depth=2, min_size=1, top_k=10, direction="high"):
        self.max_depth = max_depth
        self.min_size = min_size
        self.top_k = top_k
        self.direction = direction

    def fit(self, X, y):
        profiles = list(X)
        self.patterns_ = discover(profiles, y, self.max_depth, self.min_size,
                                  self.top_k, self.direction)
        self.population_mean_ = evaluate_pattern(profiles, y).mean
        return self

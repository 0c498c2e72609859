import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from contactpred import (
    LinkPredictor, Measure, SubgroupDiscovery, Task, WeakTiePruner, candidates, evaluate, label,
    score,
)
from contactpred.evaluation import Label

from .helpers import ev, graph
from .planted import cn_planted_split
from .test_subgroups import planted_profiles


def test_get_set_params_and_clone():
    est = LinkPredictor("wrpr", alpha=0.3)
    params = est.get_params()
    assert params["measure"] == "wrpr" and params["alpha"] == 0.3 and params["l_max"] == 6
    other = clone(est).set_params(measure="katz", beta=0.01)
    assert other.measure == "katz" and est.measure == "wrpr"


def test_decision_function_matches_score(path3):
    est = LinkPredictor("aa").fit(path3)
    assert est.decision_function([("p3", "p1")])[0] == score(path3, "p1", "p3", Measure.AA)


def test_fit_on_events():
    est = LinkPredictor("cn").fit([ev(0, 60, "a", "b"), ev(0, 30, "b", "c")])
    np.testing.assert_array_equal(est.decision_function([("a", "c"), ("a", "b")]), [1.0, 0.0])


def test_not_fitted():
    with pytest.raises(NotFittedError):
        LinkPredictor().decision_function([("a", "b")])


def test_bad_inputs(path3):
    est = LinkPredictor("cn").fit(path3)
    with pytest.raises(ValueError):
        est.decision_function([("p1", "p1")])
    with pytest.raises(ValueError):
        est.decision_function([("p1",)])
    with pytest.raises(KeyError):
        est.decision_function([("p1", "ghost")])
    with pytest.raises(TypeError):
        LinkPredictor().fit([1, 2, 3])
    with pytest.raises(ValueError):
        LinkPredictor("nonsense").fit(path3)


def test_score_is_auc_of_evaluate():
    split = cn_planted_split(noise=True)
    pairs = candidates(split, Task.NEW)
    y = [label(split, p, Task.NEW) is Label.POSITIVE for p in pairs]
    est = LinkPredictor("cn").fit(split.train)
    assert est.score(pairs, y) == evaluate(split, Measure.CN, Task.NEW).auc


def test_rank_orders_by_confidence():
    split = cn_planted_split()
    pairs = candidates(split, Task.NEW)
    ranked = LinkPredictor("cn").fit(split.train).rank(pairs)
    assert set(ranked[:6]) == {(f"x{i}", f"y{i}") for i in range(6)}


def test_pruner_then_predictor():
    split = cn_planted_split(noise=True)
    pruned = WeakTiePruner(threshold=100).fit().transform(split.train)
    assert min(pruned.edges.values()) >= 100
    pairs = candidates(split, Task.NEW)
    y = [label(split, p, Task.NEW) is Label.POSITIVE for p in pairs]
    assert LinkPredictor("cn").fit(pruned).score(pairs, y) == 1.0
    with pytest.raises(ValueError):
        WeakTiePruner(threshold=-1).fit()


def test_subgroup_discovery_estimator():
    profiles, targets = planted_profiles()
    est = SubgroupDiscovery(top_k=3).fit(profiles, targets)
    assert est.patterns_[0].size == 6
    assert est.population_mean_ == pytest.approx(sum(targets.values()) / 62)

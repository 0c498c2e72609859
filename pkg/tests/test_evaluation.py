import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from contactpred import (
    EvaluationConfig, Label, Measure, ScoredPair, Task, UndefinedAUCError, auc, candidates,
    evaluate, label, split_at, sweep_future_threshold, weak_tie_removal_sweep,
)
from contactpred.evaluation import auc_from_scores, evaluate_grid, score_candidates
from contactpred.synth import SynthConfig, generate_events

from .helpers import ev
from .oracles import brute_auc
from .planted import CUT, cn_planted_split, len_planted_events


def scored(pos, neg, excluded=()):
    out = [ScoredPair(("p", f"{i}"), s, Label.POSITIVE) for i, s in enumerate(pos)]
    out += [ScoredPair(("n", f"{i}"), s, Label.NEGATIVE) for i, s in enumerate(neg)]
    out += [ScoredPair(("e", f"{i}"), s, Label.EXCLUDED) for i, s in enumerate(excluded)]
    return out


# AUC

def test_auc_perfect():
    assert auc(scored([0.9], [0.1])) == 1.0


def test_auc_all_ties():
    assert auc(scored([3.0, 3.0], [3.0, 3.0, 3.0])) == 0.5


def test_auc_worked_example():
    assert auc(scored([0.8, 0.4], [0.6, 0.2])) == 0.75


def test_auc_ignores_excluded():
    assert auc(scored([0.8, 0.4], [0.6, 0.2], excluded=[100.0, -5.0])) == 0.75


@pytest.mark.parametrize("pos, neg", [([], [1.0]), ([1.0], []), ([], [])])
def test_auc_undefined(pos, neg):
    with pytest.raises(UndefinedAUCError) as info:
        auc(scored(pos, neg, excluded=[1.0]))
    assert (info.value.positives, info.value.negatives, info.value.excluded) == (len(pos), len(neg), 1)


score_lists = st.lists(st.integers(-20, 20).map(float), min_size=1, max_size=60)


@settings(max_examples=200)
@given(score_lists, score_lists)
def test_auc_properties(pos, neg):
    a = auc_from_scores(pos, neg)
    assert a == brute_auc(pos, neg)
    assert auc_from_scores([2 * x + 1 for x in pos], [2 * x + 1 for x in neg]) == a
    assert auc_from_scores([x ** 3 for x in pos], [x ** 3 for x in neg]) == a
    assert auc_from_scores(neg, pos) == pytest.approx(1 - a, abs=1e-15)
    assert 0.0 <= a <= 1.0


def test_auc_brute_force_large(rng):
    for _ in range(20):
        n = int(rng.integers(2, 500))
        scores = np.round(rng.normal(size=n), 1)
        labels = rng.random(n) < 0.3
        labels[0], labels[1] = True, False
        assert auc_from_scores(scores[labels], scores[~labels]) == brute_auc(scores[labels], scores[~labels])


# candidates and labels

def test_new_candidates_complete_enumeration():
    events = [ev(0, 10, "p1", "x"), ev(0, 10, "p2", "y"), ev(0, 10, "p3", "z"),
              ev(200, 210, "p1", "p2"), ev(200, 210, "p3", "p2")]
    split = split_at(events, 100)
    assert split.core == {"p1", "p2", "p3"}
    assert candidates(split, Task.NEW) == [("p1", "p2"), ("p1", "p3"), ("p2", "p3")]
    assert candidates(split, Task.RECURRING) == []


def test_recurring_candidates_restricted_to_core():
    events = [ev(0, 10, "p1", "p2"), ev(0, 10, "p2", "p4"), ev(0, 10, "p3", "p1"),
              ev(200, 210, "p1", "p2"), ev(200, 210, "p3", "p2")]
    split = split_at(events, 100)
    assert split.core == {"p1", "p2", "p3"}
    assert candidates(split, Task.RECURRING) == [("p1", "p2"), ("p1", "p3")]


def _synth_split(seed=3, **kw):
    cfg = SynthConfig(seed=seed, **kw)
    return split_at(generate_events(cfg), cfg.cut)


def test_candidates_partition_core_pairs():
    split = _synth_split(participants=40, events_per_day=120)
    new, rec = candidates(split, Task.NEW), candidates(split, Task.RECURRING)
    assert not set(new) & set(rec)
    members = sorted(split.core)
    brute_new, brute_rec = [], []
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            (brute_rec if split.train.weight(u, v) > 0 else brute_new).append((u, v))
    assert new == brute_new and rec == brute_rec


@pytest.mark.parametrize("T, future, expected", [
    (0, 50, Label.POSITIVE),
    (900, 300, Label.EXCLUDED),
    (900, 0, Label.NEGATIVE),
    (900, 900, Label.POSITIVE),
    (0, 0, Label.NEGATIVE),
])
def test_label(T, future, expected):
    events = [ev(0, 10, "a", "b"), ev(0, 10, "c", "d")]
    if future:
        events.append(ev(200, 200 + future, "a", "c"))
    events += [ev(200, 210, "a", "b"), ev(200, 210, "c", "d")]
    split = split_at(events, 100)
    assert label(split, ("a", "c"), Task.NEW, EvaluationConfig(T)) is expected


# evaluate

def test_planted_common_neighbors_auc_is_one():
    split = cn_planted_split()
    res = evaluate(split, Measure.CN, Task.NEW)
    assert res.auc == 1.0
    assert res.positives == 6
    assert res.negatives == len(candidates(split, Task.NEW)) - 6


def test_random_scores_near_half():
    split = _synth_split(seed=11)
    pairs = candidates(split, Task.NEW)
    assert len(pairs) >= 200
    rng = np.random.default_rng(5)
    sp = [ScoredPair(p, float(rng.random()), label(split, p, Task.NEW)) for p in pairs]
    assert 0.35 <= auc(sp) <= 0.65


def test_removal_zero_is_identity():
    split = _synth_split(seed=2)
    for m in (Measure.CN, Measure.WRPR, Measure.LEN):
        a = evaluate(split, m, Task.RECURRING)
        b = evaluate(split, m, Task.RECURRING, EvaluationConfig(0, 0))
        assert a == b


def test_result_echoes_configuration():
    split = _synth_split(seed=2)
    from contactpred import PredictorConfig

    pcfg = PredictorConfig(alpha=0.3, beta=0.01, l_max=3)
    res = evaluate(split, Measure.KATZ, Task.NEW, EvaluationConfig(60, 20), pcfg)
    row = res.row()
    assert row["alpha"] == "0.3" and row["beta"] == "0.01" and row["l_max"] == 3
    assert row["future_threshold"] == 60 and row["removal_threshold"] == 20


def test_evaluate_raises_on_empty_class():
    split = cn_planted_split()
    with pytest.raises(UndefinedAUCError):
        evaluate(split, Measure.CN, Task.NEW, EvaluationConfig(10_000))


def test_evaluate_deterministic_across_jobs():
    split = _synth_split(seed=4, participants=40, events_per_day=150)
    measures = [Measure.CN, Measure.RPR, Measure.WKATZ]
    configs = [EvaluationConfig(t) for t in (0, 60, 300)]
    serial = evaluate_grid(split, measures, Task.NEW, configs, jobs=1)
    parallel = evaluate_grid(split, measures, Task.NEW, configs, jobs=2)
    assert serial == parallel
    assert [(r.measure, r.config.future_threshold) for r in serial] == [
        (m, t) for m in measures for t in (0, 60, 300)]


# sweeps

def test_sweep_single_threshold_matches_evaluate():
    split = _synth_split(seed=6)
    [point] = sweep_future_threshold(split, Measure.WRA, Task.NEW, [0])
    assert point == evaluate(split, Measure.WRA, Task.NEW)


def test_sweep_flags_undefined_points():
    split = _synth_split(seed=6)
    top = max(split.test.edges.values())
    points = sweep_future_threshold(split, Measure.CN, Task.RECURRING, [0, top + 1])
    assert points[0].defined
    assert not points[1].defined and points[1].positives == 0 and points[1].auc is None


def test_sweep_requires_sorted_thresholds():
    from contactpred import ConfigurationError

    with pytest.raises(ConfigurationError):
        sweep_future_threshold(cn_planted_split(), Measure.CN, Task.NEW, [60, 0])


def test_len_sweep_non_decreasing_on_planted_data():
    split = split_at(len_planted_events(), CUT)
    points = sweep_future_threshold(split, Measure.LEN, Task.RECURRING,
                                    [0, 100, 200, 400, 600, 800, 1000, 1200])
    aucs = [p.auc for p in points if p.defined]
    assert len(aucs) >= 6
    assert all(b >= a for a, b in zip(aucs, aucs[1:]))
    assert aucs[-1] > aucs[0]


def test_weak_tie_removal_zero_equals_baseline():
    split = _synth_split(seed=8)
    [point] = weak_tie_removal_sweep(split, Measure.WRPR, [0], fixed_future_T=0)
    assert point == evaluate(split, Measure.WRPR, Task.RECURRING)


def test_weak_tie_removal_keeps_labels():
    split = _synth_split(seed=8)
    points = weak_tie_removal_sweep(split, Measure.CN, [0, 50, 100, 200], fixed_future_T=60)
    assert len({(p.positives, p.negatives, p.excluded) for p in points}) == 1
    assert [p.config.removal_threshold for p in points] == [0, 50, 100, 200]
    assert all(p.config.future_threshold == 60 for p in points)


def test_prune_everything_gives_half():
    split = _synth_split(seed=8)
    top = max(split.train.edges.values())
    for m in (Measure.CN, Measure.WAA, Measure.JC, Measure.LEN, Measure.RPR):
        [point] = weak_tie_removal_sweep(split, m, [top + 1], fixed_future_T=0)
        assert point.auc == 0.5


def test_pruned_candidate_edges_score_zero_under_len():
    split = _synth_split(seed=8)
    sp = score_candidates(split, Measure.LEN, Task.RECURRING, EvaluationConfig(0, 100))
    for s in sp:
        w = split.train.weight(*s.pair)
        assert s.score == (w if w >= 100 else 0)


def test_noise_removal_improves_cn():
    split = cn_planted_split(noise=True)
    base, pruned = (evaluate(split, Measure.CN, Task.NEW, EvaluationConfig(0, r)).auc
                    for r in (0, 100))
    assert pruned > base
    assert pruned == 1.0

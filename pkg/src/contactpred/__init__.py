"""Link prediction in temporal face-to-face contact networks."""

__version__ = "0.1.0"

from .contact_data import (
    ContactEvent, ContactGraph, TemporalSplit, build_graph, neighbors, parse_events,
    read_events, split_at, strength, write_events,
)
from .evaluation import (
    AucResult, EvaluationConfig, Label, ScoredPair, Task, auc, candidates, evaluate,
    label, sweep_future_threshold, weak_tie_removal_sweep,
)
from .exceptions import (
    ConfigurationError, ContactPredError, ConvergenceError, ParseError, UndefinedAUCError,
    UndefinedLiftError, UnknownVertexError, ValidationError,
)
from .predictors import Measure, PredictorConfig, katz, rooted_pagerank, score, score_pairs
from .statistics import (
    PAPER_BINS, DurationBin, GraphSummary, graph_summary, recurrence_by_bin,
)
from .subgroups import ParticipantProfile, Pattern, discover
from .synth import SynthConfig, generate

_ESTIMATORS = ("LinkPredictor", "SubgroupDiscovery", "WeakTiePruner")


def __getattr__(name):
    # estimators pull in scikit-learn; import it only on first use
    if name in _ESTIMATORS:
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "AucResult", "ConfigurationError", "ContactEvent", "ContactGraph", "ContactPredError",
    "ConvergenceError", "DurationBin", "EvaluationConfig", "GraphSummary", "Label",
    "LinkPredictor", "Measure", "PAPER_BINS", "ParseError", "ParticipantProfile", "Pattern",
    "PredictorConfig", "ScoredPair", "SubgroupDiscovery", "SynthConfig", "Task",
    "TemporalSplit", "UndefinedAUCError", "UndefinedLiftError", "UnknownVertexError",
    "ValidationError", "WeakTiePruner", "auc", "build_graph", "candidates", "discover",
    "evaluate", "generate", "graph_summary", "katz", "label", "neighbors", "parse_events",
    "read_events", "recurrence_by_bin", "rooted_pagerank", "score", "score_pairs", "split_at",
    "strength", "sweep_future_threshold", "weak_tie_removal_sweep", "write_events",
]

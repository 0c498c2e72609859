"""Command line front-end: ``contactpred <subcommand> ...``.

Exit status: 0 success, 1 invalid input data, 2 configuration or usage
error, 3 undefined result (empty AUC class, undefined lift, no convergence).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .contact_data import build_graph, read_events, split_at, write_events
from .evaluation import (
    DEFAULT_WEAK_TIE_FUTURE_T, EvaluationConfig, Task, evaluate_grid,
    write_sweep_csv,
)
from .exceptions import (
    ConfigurationError, ConvergenceError, ParseError, UndefinedAUCError, UndefinedLiftError,
)
from .predictors import DEFAULT_CONFIG, Measure, PredictorConfig
from .statistics import (
    PAPER_BINS, Condition, DurationBin, contact_length_ccdf, graph_summary,
    recurrence_by_bin, recurrence_duration_ccdf, recurrence_prob_conditioned,
    top_k_contact_fractions,
)
from .subgroups import (
    discover, parse_profiles, target_new_contact_count, target_recurring_duration,
    write_patterns, write_profiles,
)
from .synth import Plant, SynthConfig, generate

EXIT_OK, EXIT_INPUT, EXIT_CONFIG, EXIT_UNDEFINED = 0, 1, 2, 3

DECISIONS = {
    "split": "events with start <= t train; test restricted to core participants",
    "future_threshold": "pairs with 0 < future weight < T are excluded from the AUC",
    "weak_tie_removal": "candidates and labels from the unpruned training graph; scores on the pruned graph",
    "rpr_pair_score": "pi_x(y) + pi_y(x); weighted walk proportional to edge weight",
    "katz": "walk counts up to l_max; weighted variant uses weights divided by the max weight",
    "auc_ties": "ties credited 0.5 (Mann-Whitney)",
    "top_k_missing_rank": "participants with fewer than i ties contribute 0 at rank i",
    "ci95": "1.96 * sample sd / sqrt(n)",
    "recurrence_universe": "all unordered core pairs",
}


class CliError(Exception):
    def __init__(self, message, status):
        super().__init__(message)
        self.status = status


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _bins(text: str) -> list[DurationBin]:
    try:
        return [DurationBin.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _manifest(args, config: dict, inputs: dict, outputs: list[str]) -> dict:
    return {
        "tool": "contactpred",
        "version": __version__,
        "command": args.command,
        "config": config,
        "inputs": {name: {"path": str(p), "sha256": _digest(p)} for name, p in inputs.items()},
        "outputs": outputs,
        "decisions": DECISIONS,
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _emit(args, writer, config: dict, inputs: dict) -> None:
    """Write one CSV via ``writer(fh)`` plus its ``.json`` manifest."""
    if args.out == "-":
        writer(sys.stdout)
        return
    out = Path(args.out)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer(fh)
    _write_json(out.with_suffix(".json"), _manifest(args, config, inputs, [out.name]))


def _predictor_config(args) -> PredictorConfig:
    return PredictorConfig(args.alpha, args.beta, args.l_max, args.rpr_tolerance,
                           args.rpr_max_iterations)


def _load_split(args):
    return split_at(read_events(args.events), args.split_ts)


def _sweep_config(args, pcfg, **extra) -> dict:
    cfg = {"split_ts": args.split_ts, "predictor": pcfg.as_dict()}
    cfg.update(extra)
    return cfg


# subcommands


def cmd_validate(args):
    path = args.events_pos or args.events
    if not path:
        raise CliError("validate needs an events file", EXIT_CONFIG)
    events = read_events(path)
    g = build_graph(events)
    print(f"{path}: {len(events)} events, {len(g)} participants, {g.edge_count} pairs")
    return EXIT_OK


def cmd_stats(args):
    events = read_events(args.events)
    split = split_at(events, args.split_ts)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    inputs = {"events": args.events}
    base = {"split_ts": args.split_ts}

    def emit(name, header, rows, extra=None):
        path = out_dir / f"{name}.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        _write_json(out_dir / f"{name}.json",
                    _manifest(args, {**base, **(extra or {})}, inputs, [path.name]))

    graphs = {"all": build_graph(events), "train": split.train, "test": split.test}
    fields = ("vertex_count", "edge_count", "avg_degree", "avg_path_length", "diameter",
              "avg_contact_length", "largest_clique_number")
    rows = []
    for name, g in graphs.items():
        s = graph_summary(g).as_dict()
        rows.append([name] + ["" if s[f] is None else _fmt(s[f]) for f in fields])
    emit("summary", ("graph",) + fields, rows)

    emit("contact_ccdf", ("graph", "seconds", "probability"),
         [[name, s, _fmt(p)] for name in ("all", "train")
          for s, p in contact_length_ccdf(graphs[name])])

    emit("top_k", ("rank", "mean_fraction", "ci95", "participants"),
         [[r.rank, _fmt(r.mean), _fmt(r.ci95), r.n]
          for r in top_k_contact_fractions(split.train, args.k)],
         {"k": args.k, "graph": "train"})

    bins = args.bins
    bin_cfg = {"bins": [b.label for b in bins]}
    emit("recurrence_bins", ("bin", "pairs", "no_recurrence", "probability"),
         [[r.bin.label, r.pairs, r.no_recurrence,
           "" if r.probability is None else _fmt(r.probability)]
          for r in recurrence_by_bin(split, bins)], bin_cfg)

    emit("recurrence_ccdf", ("bin", "seconds", "probability"),
         [[b.label, s, _fmt(p)] for b, curve in recurrence_duration_ccdf(split, bins)
          for s, p in curve], bin_cfg)

    rows = []
    for cond, thresholds in ((Condition.COMMON_NEIGHBORS, args.cn_thresholds),
                             (Condition.TIE_STRENGTH, args.tie_thresholds)):
        for pt in recurrence_prob_conditioned(split, cond, args.strength_threshold, thresholds):
            rows.append([cond.value, pt.threshold, pt.recurring, pt.total,
                         "" if pt.probability is None else _fmt(pt.probability)])
    emit("conditioned", ("condition", "threshold", "recurring", "total", "probability"), rows,
         {"strength_threshold": args.strength_threshold,
          "cn_thresholds": args.cn_thresholds, "tie_thresholds": args.tie_thresholds})
    return EXIT_OK


def _fmt(x):
    return repr(float(x)) if isinstance(x, float) else x


def cmd_evaluate(args):
    split = _load_split(args)
    pcfg = _predictor_config(args)
    measures = Measure.parse_list(args.measure)
    task = Task.parse(args.task)
    ecfg = EvaluationConfig(args.future_threshold, args.removal_threshold)
    results = evaluate_grid(split, measures, task, [ecfg], pcfg, args.jobs)
    undefined = next((r for r in results if r.auc is None), None)
    if undefined is not None:
        raise UndefinedAUCError(undefined.positives, undefined.negatives, undefined.excluded)
    config = _sweep_config(args, pcfg, task=task.value, measures=[m.value for m in measures],
                           future_threshold=ecfg.future_threshold,
                           removal_threshold=ecfg.removal_threshold)
    _emit(args, lambda fh: write_sweep_csv(results, fh), config, {"events": args.events})
    return EXIT_OK


def cmd_sweep(args):
    split = _load_split(args)
    pcfg = _predictor_config(args)
    measures = Measure.parse_list(args.measure)
    task = Task.parse(args.task)
    thresholds = _sorted(args.thresholds)
    configs = [EvaluationConfig(t, args.removal_threshold) for t in thresholds]
    results = evaluate_grid(split, measures, task, configs, pcfg, args.jobs)
    config = _sweep_config(args, pcfg, task=task.value, measures=[m.value for m in measures],
                           future_thresholds=thresholds,
                           removal_threshold=args.removal_threshold)
    _emit(args, lambda fh: write_sweep_csv(results, fh), config, {"events": args.events})
    return EXIT_OK


def cmd_prune_sweep(args):
    split = _load_split(args)
    pcfg = _predictor_config(args)
    measures = Measure.parse_list(args.measure)
    task = Task.parse(args.task)
    thresholds = _sorted(args.removal_thresholds)
    configs = [EvaluationConfig(args.future_threshold, r) for r in thresholds]
    results = evaluate_grid(split, measures, task, configs, pcfg, args.jobs)
    config = _sweep_config(args, pcfg, task=task.value, measures=[m.value for m in measures],
                           removal_thresholds=thresholds,
                           future_threshold=args.future_threshold)
    _emit(args, lambda fh: write_sweep_csv(results, fh), config, {"events": args.events})
    return EXIT_OK


def _sorted(values):
    if values != sorted(values) or any(v < 0 for v in values):
        raise ConfigurationError("thresholds must be non-negative and sorted ascending")
    if not values:
        raise ConfigurationError("empty threshold list")
    return values


def cmd_subgroups(args):
    split = _load_split(args)
    with open(args.profiles, encoding="utf-8", newline="") as fh:
        profiles = parse_profiles(fh)
    target_fn = {"new": target_new_contact_count,
                 "recurring": target_recurring_duration}[args.target]
    targets = {pid: target_fn(split, pid) for pid in sorted(split.core)}
    patterns = discover(profiles, targets, args.max_depth, args.min_size, args.top_k,
                        args.direction)
    config = {"split_ts": args.split_ts, "target": args.target, "max_depth": args.max_depth,
              "min_size": args.min_size, "top_k": args.top_k, "direction": args.direction}
    _emit(args, lambda fh: write_patterns(patterns, fh), config,
          {"events": args.events, "profiles": args.profiles})
    return EXIT_OK


def cmd_synth(args):
    cfg = SynthConfig(
        participants=args.participants, days=args.days, day_length=args.day_length,
        events_per_day=args.events_per_day, pareto_shape=args.shape,
        pareto_minimum=args.min_duration, seed=args.seed, plant=Plant.parse(args.plant),
        start_time=args.start_time,
    )
    events, profiles = generate(cfg)
    config = {
        "participants": cfg.participants, "days": cfg.days, "day_length": cfg.day_length,
        "events_per_day": cfg.events_per_day, "pareto_shape": cfg.pareto_shape,
        "pareto_minimum": cfg.pareto_minimum, "seed": cfg.seed, "plant": str(cfg.plant),
        "start_time": cfg.start_time, "split_ts": cfg.cut,
        "rng": "numpy.random.Generator(PCG64)",
    }
    outputs = []
    if args.out == "-":
        write_events(events, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_events(events, fh)
        outputs.append(Path(args.out).name)
    if args.profiles_out:
        with open(args.profiles_out, "w", encoding="utf-8", newline="") as fh:
            write_profiles(profiles, fh)
        outputs.append(Path(args.profiles_out).name)
    if args.out != "-":
        _write_json(Path(args.out).with_suffix(".json"), _manifest(args, config, {}, outputs))
    return EXIT_OK


def _add_split(p):
    p.add_argument("--events", required=True, help="event CSV (start,end,a,b)")
    p.add_argument("--split-ts", type=int, required=True,
                   help="cut time t in unix seconds; start <= t is training")


def _add_predictor(p):
    d = DEFAULT_CONFIG
    p.add_argument("--alpha", type=float, default=d.alpha,
                   help="rooted PageRank restart probability (default: %(default)s)")
    p.add_argument("--beta", type=float, default=d.beta,
                   help="Katz damping factor (default: %(default)s)")
    p.add_argument("--l-max", type=int, default=d.l_max,
                   help="Katz maximum walk length (default: %(default)s)")
    p.add_argument("--rpr-tolerance", type=float, default=d.rpr_tolerance,
                   help="power iteration L1 tolerance (default: %(default)s)")
    p.add_argument("--rpr-max-iterations", type=int, default=d.rpr_max_iterations,
                   help="power iteration cap (default: %(default)s)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes; output is identical for any value (default: %(default)s)")
    p.add_argument("--out", default="-", help="output CSV, '-' for stdout (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contactpred", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    measure_help = "measure name(s), comma separated, or 'all' (%s)" % ", ".join(m.value for m in Measure)

    p = sub.add_parser("validate", help="parse and validate an event CSV")
    p.add_argument("events_pos", nargs="?", metavar="EVENTS")
    p.add_argument("--events", help="event CSV (alternative to the positional argument)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="descriptive statistics as plot-ready CSVs")
    _add_split(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--k", type=int, default=10, help="ranks for top-k fractions (default: %(default)s)")
    p.add_argument("--bins", type=_bins, default=list(PAPER_BINS),
                   help="duration bins, e.g. no,20-60,60-120,960- (default: paper bins)")
    p.add_argument("--strength-threshold", type=int, default=0,
                   help="future tie strength counted as recurring (default: %(default)s)")
    p.add_argument("--cn-thresholds", type=_int_list, default=list(range(0, 11)),
                   help="common-neighbor thresholds (default: 0..10)")
    p.add_argument("--tie-thresholds", type=_int_list,
                   default=[0, 20, 60, 120, 240, 480, 960, 1920],
                   help="training tie-strength thresholds in seconds")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("evaluate", help="AUC per measure")
    _add_split(p)
    p.add_argument("--task", default="new", help="new or recurring (default: %(default)s)")
    p.add_argument("--measure", default="all", help=measure_help)
    p.add_argument("--future-threshold", type=int, default=0,
                   help="minimum future tie strength of a positive (default: %(default)s)")
    p.add_argument("--removal-threshold", type=int, default=0,
                   help="prune training ties below this many seconds (default: %(default)s)")
    _add_predictor(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="AUC across future tie-strength thresholds")
    _add_split(p)
    p.add_argument("--task", default="new", help="new or recurring (default: %(default)s)")
    p.add_argument("--measure", default="all", help=measure_help)
    p.add_argument("--thresholds", type=_int_list, required=True,
                   help="ascending future thresholds in seconds, e.g. 0,60,300,900")
    p.add_argument("--removal-threshold", type=int, default=0,
                   help="prune training ties below this many seconds (default: %(default)s)")
    _add_predictor(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("prune-sweep", help="AUC after removing weak training ties")
    _add_split(p)
    p.add_argument("--task", default="recurring", help="new or recurring (default: %(default)s)")
    p.add_argument("--measure", default="all", help=measure_help)
    p.add_argument("--removal-thresholds", type=_int_list, required=True,
                   help="ascending removal thresholds in seconds, e.g. 0,50,100,150,200")
    p.add_argument("--future-threshold", type=int, default=DEFAULT_WEAK_TIE_FUTURE_T,
                   help="fixed future tie strength of a positive (default: %(default)s)")
    _add_predictor(p)
    p.set_defaults(func=cmd_prune_sweep)

    p = sub.add_parser("subgroups", help="lift-ranked attribute patterns")
    _add_split(p)
    p.add_argument("--profiles", required=True, help="profile CSV (id,attribute,value)")
    p.add_argument("--target", choices=("new", "recurring"), default="new",
                   help="new-contact count or recurring contact time (default: %(default)s)")
    p.add_argument("--max-depth", type=int, default=2, help="(default: %(default)s)")
    p.add_argument("--min-size", type=int, default=1, help="(default: %(default)s)")
    p.add_argument("--top-k", type=int, default=10, help="(default: %(default)s)")
    p.add_argument("--direction", choices=("high", "low"), default="high",
                   help="rank by lift descending (high) or ascending (low)")
    p.add_argument("--out", default="-", help="pattern CSV, '-' for stdout")
    p.set_defaults(func=cmd_subgroups)

    d = SynthConfig()
    p = sub.add_parser("synth", help="generate a synthetic conference dataset")
    p.add_argument("--participants", type=int, default=d.participants, help="(default: %(default)s)")
    p.add_argument("--days", type=int, default=d.days, help="(default: %(default)s)")
    p.add_argument("--day-length", type=int, default=d.day_length, help="seconds (default: %(default)s)")
    p.add_argument("--events-per-day", type=int, default=d.events_per_day, help="(default: %(default)s)")
    p.add_argument("--shape", type=float, default=d.pareto_shape,
                   help="Pareto shape of durations (default: %(default)s)")
    p.add_argument("--min-duration", type=int, default=d.pareto_minimum,
                   help="Pareto minimum in seconds (default: %(default)s)")
    p.add_argument("--seed", type=int, default=d.seed, help="(default: %(default)s)")
    p.add_argument("--plant", default="", help="comma-separated plant specs")
    p.add_argument("--start-time", type=int, default=d.start_time, help="(default: %(default)s)")
    p.add_argument("--out", default="-", help="event CSV, '-' for stdout")
    p.add_argument("--profiles-out", help="optional profile CSV")
    p.set_defaults(func=cmd_synth)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"contactpred: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UndefinedAUCError, UndefinedLiftError, ConvergenceError) as exc:
        print(f"contactpred: undefined result: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (ConfigurationError, OSError, ValueError) as exc:
        print(f"contactpred: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CliError as exc:
        print(f"contactpred: {exc}", file=sys.stderr)
        return exc.status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

"""Seeded generator of conference-like contact data.

Randomness comes from ``numpy.random.Generator`` over the PCG64 bit
generator (``numpy.random.default_rng(seed)``), so a seed reproduces the
same dataset on every platform with the same numpy major version.

Day ``d`` (0-based) covers ``[start_time + d*86400, start_time + d*86400 +
day_length)``. Events never cross a day boundary. Durations follow a
Pareto law with the configured shape and minimum.

Plant specs (comma separated) bias the generator:

``positives-share-cn``
    test-day contacts only join pairs with at least two common neighbors
    in the day-one graph.
``future-weight-proportional-to-training-weight``
    test-day contacts re-use day-one pairs, chosen with probability
    proportional to their day-one tie strength.
``noise-edges-below:S``
    half of the day-one events become noise contacts shorter than ``S``
    seconds between random pairs; all other durations are shifted up by
    ``S`` so that real ties are never that weak.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .contact_data import ContactEvent, build_graph
from .exceptions import ConfigurationError
from .subgroups import ParticipantProfile

DAY = 86_400
SHARE_CN = "positives-share-cn"
PROPORTIONAL = "future-weight-proportional-to-training-weight"
NOISE = "noise-edges-below"

STATUS_VALUES = ("professor", "phd", "phd-candidate", "other")
AFFILIATION_VALUES = ("high", "medium", "low")
ROLE_ATTRIBUTES = ("session-chair", "presenter", "organizer")


@dataclass(frozen=True)
class Plant:
    share_cn: bool = False
    proportional: bool = False
    noise_below: int | None = None

    @classmethod
    def parse(cls, spec: str | None) -> "Plant":
        if not spec:
            return cls()
        share = prop = False
        noise = None
        for item in (s.strip() for s in spec.split(",")):
            if not item:
                continue
            name, _, arg = item.partition(":")
            if name == SHARE_CN and not arg:
                share = True
            elif name == PROPORTIONAL and not arg:
                prop = True
            elif name == NOISE:
                try:
                    noise = int(arg)
                except ValueError:
                    raise ConfigurationError(f"{NOISE} needs an integer argument") from None
                if noise < 2:
                    raise ConfigurationError(f"{NOISE} threshold must be >= 2 seconds")
            else:
                raise ConfigurationError(f"unknown plant spec {item!r}")
        if share and prop:
            raise ConfigurationError(
                f"{SHARE_CN} and {PROPORTIONAL} both fix test-day pairs; choose one"
            )
        return cls(share, prop, noise)

    def __str__(self):
        parts = []
        if self.share_cn:
            parts.append(SHARE_CN)
        if self.proportional:
            parts.append(PROPORTIONAL)
        if self.noise_below is not None:
            parts.append(f"{NOISE}:{self.noise_below}")
        return ",".join(parts)


@dataclass(frozen=True)
class SynthConfig:
    participants: int = 80
    days: int = 3
    day_length: int = 8 * 3600
    events_per_day: int = 400
    pareto_shape: float = 1.5
    pareto_minimum: int = 20
    seed: int = 0
    plant: Plant = field(default_factory=Plant)
    start_time: int = 1_306_886_400

    def __post_init__(self):
        if isinstance(self.plant, str) or self.plant is None:
            object.__setattr__(self, "plant", Plant.parse(self.plant))
        if self.participants < 2:
            raise ConfigurationError("need at least 2 participants")
        if self.days < 0 or self.events_per_day < 0:
            raise ConfigurationError("days and events_per_day must be >= 0")
        if not 1 <= self.day_length <= DAY:
            raise ConfigurationError(f"day_length must lie in [1, {DAY}]")
        if self.pareto_minimum < 1:
            raise ConfigurationError("pareto minimum must be >= 1")
        if not self.pareto_shape > 0:
            raise ConfigurationError("pareto shape must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")

    @property
    def cut(self) -> int:
        """Split time separating day one from the remaining days."""
        return self.start_time + self.day_length

    def participant_ids(self) -> list[str]:
        width = len(str(self.participants))
        return [f"p{i:0{width}d}" for i in range(1, self.participants + 1)]


def _durations(rng, cfg, n, shift=0):
    raw = np.minimum((rng.pareto(cfg.pareto_shape, n) + 1.0) * cfg.pareto_minimum, DAY)
    return np.floor(raw).astype(np.int64) + shift


def _emit(rng, cfg, day, pairs, durations):
    day_start = cfg.start_time + day * DAY
    day_end = day_start + cfg.day_length
    starts = day_start + rng.integers(0, cfg.day_length, len(pairs))
    out = []
    for (a, b), s, d in zip(pairs, starts.tolist(), durations.tolist()):
        out.append(ContactEvent(s, min(s + d, day_end), a, b))
    return out


def _random_pairs(rng, ids, n):
    first = rng.integers(0, len(ids), n)
    offset = rng.integers(1, len(ids), n)
    second = (first + offset) % len(ids)
    return [(ids[i], ids[j]) for i, j in zip(first.tolist(), second.tolist())]


def _choose(rng, pool, n, p=None):
    picks = rng.choice(len(pool), size=n, p=p)
    return [pool[i] for i in picks.tolist()]


def generate_events(cfg: SynthConfig) -> list[ContactEvent]:
    rng = np.random.default_rng(cfg.seed)
    ids = cfg.participant_ids()
    plant = cfg.plant
    n = cfg.events_per_day
    events: list[ContactEvent] = []
    if cfg.days == 0 or n == 0:
        return events

    shift = plant.noise_below or 0
    n_noise = n // 2 if plant.noise_below is not None else 0
    signal = _emit(rng, cfg, 0, _random_pairs(rng, ids, n - n_noise),
                   _durations(rng, cfg, n - n_noise, shift))
    noise = []
    if n_noise:
        lengths = rng.integers(1, plant.noise_below, n_noise)
        noise = _emit(rng, cfg, 0, _random_pairs(rng, ids, n_noise), lengths)
    day_one = sorted(signal + noise, key=lambda e: (e.start, e.end, e.a, e.b))
    events.extend(day_one)

    pool = weights = None
    if plant.share_cn:
        g = build_graph(signal)
        pool = [
            (u, v) for u, v in itertools.combinations(g.sorted_vertices(), 2)
            if len(g.adjacency(u).keys() & g.adjacency(v).keys()) >= 2
        ]
    elif plant.proportional:
        g = build_graph(day_one)
        pool = list(g.edges)
        w = np.array([g.edges[p] for p in pool], dtype=float)
        weights = w / w.sum()
    if pool is not None and not pool:
        raise ConfigurationError("plant spec left no eligible test-day pairs; add events")

    for day in range(1, cfg.days):
        pairs = _choose(rng, pool, n, weights) if pool is not None else _random_pairs(rng, ids, n)
        day_events = _emit(rng, cfg, day, pairs, _durations(rng, cfg, n, shift))
        events.extend(sorted(day_events, key=lambda e: (e.start, e.end, e.a, e.b)))
    return events


def generate_profiles(cfg: SynthConfig) -> list[ParticipantProfile]:
    # separate stream so profiles never perturb the events for a seed
    rng = np.random.default_rng([cfg.seed, 1])
    profiles = []
    for pid in cfg.participant_ids():
        attrs = {
            "status": STATUS_VALUES[int(rng.integers(len(STATUS_VALUES)))],
            "affiliation": AFFILIATION_VALUES[int(rng.integers(len(AFFILIATION_VALUES)))],
        }
        for role in ROLE_ATTRIBUTES:
            attrs[role] = "true" if rng.random() < 0.2 else "false"
        profiles.append(ParticipantProfile(pid, attrs))
    return profiles


def generate(cfg: SynthConfig) -> tuple[list[ContactEvent], list[ParticipantProfile]]:
    """Events and participant profiles for ``cfg``; deterministic per seed."""
    return generate_events(cfg), generate_profiles(cfg)

"""Subgroup discovery over categorical participant attributes, ranked by lift.

Profile CSV (long format)::

    id,attribute,value
    p01,status,professor
    p01,session-chair,true
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, TextIO

from .contact_data import TemporalSplit
from .exceptions import ConfigurationError, ParseError, UndefinedLiftError, UnknownVertexError

PROFILE_HEADER = ("id", "attribute", "value")
PATTERN_HEADER = ("rank", "lift", "mean", "size", "description")


def _norm(text: str) -> str:
    return text.strip().lower()


@dataclass(frozen=True)
class ParticipantProfile:
    id: str
    attributes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        normed = {_norm(k): _norm(v) for k, v in self.attributes.items()}
        object.__setattr__(self, "attributes", dict(sorted(normed.items())))

    def matches(self, selectors: Iterable[tuple[str, str]]) -> bool:
        return all(self.attributes.get(a) == v for a, v in selectors)


Selector = tuple[str, str]


def describe(selectors: Sequence[Selector]) -> str:
    return " AND ".join(f"{a}={v}" for a, v in sorted(selectors))


@dataclass(frozen=True)
class Pattern:
    selectors: tuple[Selector, ...]
    lift: float
    mean: float
    size: int

    @property
    def description(self) -> str:
        return describe(self.selectors) if self.selectors else "(all)"


def target_new_contact_count(split: TemporalSplit, id: str) -> int:
    """Test-graph neighbors of ``id`` that were not training neighbors."""
    if id not in split.core:
        raise UnknownVertexError(id)
    return len(split.test.adjacency(id).keys() - split.train.adjacency(id).keys())


def target_recurring_duration(split: TemporalSplit, id: str) -> int:
    """Future contact time of ``id`` with partners already met before the cut."""
    if id not in split.core:
        raise UnknownVertexError(id)
    before = split.train.adjacency(id)
    return sum(w for v, w in split.test.adjacency(id).items() if v in before)


def _mean(values):
    return math.fsum(values) / len(values)


def evaluate_pattern(profiles: Sequence[ParticipantProfile], targets: Mapping[str, float],
                     selectors: Sequence[Selector] = ()) -> Pattern:
    """Lift, mean and size of one conjunction (empty = whole population)."""
    population = [p for p in profiles if p.id in targets]
    pop_mean = _population_mean(population, targets)
    members = [targets[p.id] for p in population if p.matches(selectors)]
    if not members:
        return Pattern(tuple(sorted(selectors)), 0.0, 0.0, 0)
    mean = _mean(members)
    return Pattern(tuple(sorted(selectors)), mean / pop_mean, mean, len(members))


def _population_mean(population, targets):
    if not population:
        raise UndefinedLiftError("empty population")
    pop_mean = _mean([targets[p.id] for p in population])
    if not pop_mean > 0:
        raise UndefinedLiftError(f"population mean must be positive, got {pop_mean}")
    return pop_mean


def discover(profiles: Sequence[ParticipantProfile], targets: Mapping[str, float],
             max_depth: int = 2, min_size: int = 1, top_k: int = 10,
             direction: str = "high") -> list[Pattern]:
    """Exhaustively enumerate attribute conjunctions up to ``max_depth``.

    The population is every profile with a target value. Patterns are ranked
    by lift (descending, or ascending with ``direction="low"``), then by size
    descending, then by description.
    """
    if max_depth < 1:
        raise ConfigurationError(f"max_depth must be >= 1, got {max_depth}")
    if direction not in ("high", "low"):
        raise ConfigurationError(f"direction must be 'high' or 'low', got {direction!r}")
    population = [p for p in profiles if p.id in targets]
    pop_mean = _population_mean(population, targets)

    # selector -> member positions
    cover: dict[Selector, frozenset[int]] = {}
    for i, p in enumerate(population):
        for sel in p.attributes.items():
            cover[sel] = cover.get(sel, frozenset()) | {i}
    selectors = sorted(cover)
    values = [targets[p.id] for p in population]

    patterns = []
    for depth in range(1, max_depth + 1):
        for combo in itertools.combinations(selectors, depth):
            if len({a for a, _ in combo}) < depth:
                continue
            members = frozenset.intersection(*(cover[s] for s in combo))
            if len(members) < max(min_size, 1):
                continue
            mean = _mean([values[i] for i in sorted(members)])
            patterns.append(Pattern(combo, mean / pop_mean, mean, len(members)))

    sign = -1 if direction == "high" else 1
    patterns.sort(key=lambda p: (sign * p.lift, -p.size, p.description))
    return patterns[:top_k]


def parse_profiles(source: TextIO | str) -> list[ParticipantProfile]:
    """Read the long-format profile CSV; ids keep first-appearance order."""
    if isinstance(source, str):
        source = io.StringIO(source, newline="")
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != PROFILE_HEADER:
        raise ParseError("bad header, expected 'id,attribute,value'", 1)
    attrs: dict[str, dict[str, str]] = {}
    for row in reader:
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", reader.line_num)
        pid, attr, value = row
        if not pid or not attr.strip():
            raise ParseError("empty id or attribute", reader.line_num)
        slot = attrs.setdefault(pid, {})
        key = _norm(attr)
        if key in slot and slot[key] != _norm(value):
            raise ParseError(f"conflicting values for {pid}.{key}", reader.line_num)
        slot[key] = value
    return [ParticipantProfile(pid, a) for pid, a in attrs.items()]


def write_profiles(profiles: Iterable[ParticipantProfile], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(PROFILE_HEADER)
    for p in profiles:
        for attr, value in p.attributes.items():
            writer.writerow((p.id, attr, value))


def write_patterns(patterns: Iterable[Pattern], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(PATTERN_HEADER)
    for rank, p in enumerate(patterns, 1):
        writer.writerow((rank, repr(p.lift), repr(p.mean), p.size, p.description))

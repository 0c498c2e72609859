"""Contact events, weighted contact graphs and the temporal train/test split.

Event CSV format (version 1)::

    start,end,a,b
    1306915200,1306915260,p01,p02

``start``/``end`` are integer unix seconds with ``end > start``; ``a`` and
``b`` are opaque participant ids compared byte-exact. UTF-8, LF or CRLF.
"""

from __future__ import annotations

import csv
import io
import os
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, TextIO

from .exceptions import ParseError, UnknownVertexError, ValidationError

EVENT_HEADER = ("start", "end", "a", "b")
EVENT_FORMAT_VERSION = 1

_INT_RE = re.compile(r"-?[0-9]+\Z")


def canonical_pair(u: str, v: str) -> tuple[str, str]:
    """Order an unordered pair so that ``u < v``."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class ContactEvent:
    """One face-to-face contact between participants ``a`` and ``b``."""

    start: int
    end: int
    a: str
    b: str

    def __post_init__(self):
        if self.end <= self.start:
            raise ValidationError(
                f"end ({self.end}) must be greater than start ({self.start})"
            )
        if self.a == self.b:
            raise ValidationError(f"self-contact for participant {self.a!r}")

    @property
    def duration(self) -> int:
        return self.end - self.start

    @property
    def pair(self) -> tuple[str, str]:
        return canonical_pair(self.a, self.b)

    def _key(self):
        return (self.start, self.end, self.pair)

    def __eq__(self, other):
        if not isinstance(other, ContactEvent):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class ContactGraph:
    """Immutable weighted undirected graph.

    Edge weights are summed contact durations in seconds. Pairs are stored
    canonically (``u < v``) but every accessor accepts either order.
    """

    __slots__ = ("_adj", "_edges", "_vertices")

    def __init__(self, vertices: Iterable[str] = (), edges: Mapping | None = None):
        adj: dict[str, dict[str, int]] = {v: {} for v in vertices}
        canon: dict[tuple[str, str], int] = {}
        for (u, v), w in (edges or {}).items():
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if w <= 0:
                raise ValueError(f"non-positive weight {w} on ({u!r}, {v!r})")
            key = canonical_pair(u, v)
            if key in canon:
                raise ValueError(f"duplicate edge {key}")
            canon[key] = w
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        self._adj = {v: MappingProxyType(nbrs) for v, nbrs in adj.items()}
        self._edges = MappingProxyType(dict(sorted(canon.items())))
        self._vertices = frozenset(adj)

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def edges(self) -> Mapping[tuple[str, str], int]:
        """Read-only map from canonical pair to weight, in sorted pair order."""
        return self._edges

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, vertex):
        return vertex in self._adj

    def __eq__(self, other):
        if not isinstance(other, ContactGraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._edges) == dict(other._edges)

    def __hash__(self):
        return hash((self._vertices, frozenset(self._edges.items())))

    def __repr__(self):
        return f"ContactGraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    def __reduce__(self):
        return (ContactGraph, (sorted(self._vertices), dict(self._edges)))

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def adjacency(self, x: str) -> Mapping[str, int]:
        """Neighbor -> weight map of ``x``."""
        try:
            return self._adj[x]
        except KeyError:
            raise UnknownVertexError(x) from None

    def has_edge(self, u: str, v: str) -> bool:
        nbrs = self._adj.get(u)
        return nbrs is not None and v in nbrs

    def weight(self, u: str, v: str) -> int:
        """Tie strength of ``{u, v}``; 0 when there is no edge."""
        nbrs = self.adjacency(u)
        if v not in self._adj:
            raise UnknownVertexError(v)
        return nbrs.get(v, 0)

    def degree(self, x: str) -> int:
        return len(self.adjacency(x))

    def sorted_vertices(self) -> list[str]:
        return sorted(self._vertices)

    def prune(self, min_weight: int) -> "ContactGraph":
        """Drop edges lighter than ``min_weight`` seconds; vertices are kept."""
        if min_weight <= 0:
            return self
        kept = {p: w for p, w in self._edges.items() if w >= min_weight}
        return ContactGraph(self._vertices, kept)

    def total_weight(self) -> int:
        return sum(self._edges.values())


def neighbors(g: ContactGraph, x: str) -> set[str]:
    """Adjacency set of ``x``."""
    return set(g.adjacency(x))


def strength(g: ContactGraph, x: str) -> int:
    """Total weight of the edges incident to ``x``."""
    return sum(g.adjacency(x).values())


def build_graph(events: Iterable[ContactEvent], vertices: Iterable[str] = ()) -> ContactGraph:
    """Aggregate events into a weighted graph.

    ``vertices`` adds extra (possibly isolated) vertices on top of every
    participant appearing in ``events``.
    """
    verts = set(vertices)
    weights: dict[tuple[str, str], int] = {}
    for ev in events:
        verts.add(ev.a)
        verts.add(ev.b)
        key = ev.pair
        weights[key] = weights.get(key, 0) + ev.duration
    return ContactGraph(verts, weights)


@dataclass(frozen=True)
class TemporalSplit:
    """Training graph up to ``cut``, core-restricted test graph after it."""

    train: ContactGraph
    test: ContactGraph
    core: frozenset[str]
    cut: int
    discarded_events: int = field(default=0, compare=False)
    discarded_duration: int = field(default=0, compare=False)

    def core_pairs(self) -> Iterator[tuple[str, str]]:
        """All unordered core pairs in lexicographic order."""
        members = sorted(self.core)
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                yield (u, v)


def split_at(events: Iterable[ContactEvent], t: int) -> TemporalSplit:
    """Split at ``t``: events with ``start <= t`` train, later ones test."""
    events = list(events)
    before = [ev for ev in events if ev.start <= t]
    after = [ev for ev in events if ev.start > t]
    train = build_graph(before)
    active_after = {p for ev in after for p in (ev.a, ev.b)}
    core = frozenset(train.vertices & active_after)
    kept = [ev for ev in after if ev.a in core and ev.b in core]
    test = build_graph(kept, vertices=core)
    return TemporalSplit(
        train=train,
        test=test,
        core=core,
        cut=t,
        discarded_events=len(after) - len(kept),
        discarded_duration=sum(ev.duration for ev in after) - sum(ev.duration for ev in kept),
    )


def _parse_int(text: str, name: str, line: int) -> int:
    if not _INT_RE.match(text):
        raise ParseError(f"{name} is not an integer: {text!r}", line)
    return int(text)


def parse_events(source: TextIO | str | Iterable[str]) -> list[ContactEvent]:
    """Parse the event CSV format from a stream, a string or lines of text."""
    if isinstance(source, str):
        source = io.StringIO(source, newline="")
    reader = csv.reader(source, strict=True)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input, expected header 'start,end,a,b'", 1) from None
    except csv.Error as exc:
        raise ParseError(str(exc), 1) from None
    if tuple(h.strip() for h in header) != EVENT_HEADER:
        raise ParseError(f"bad header {','.join(header)!r}, expected 'start,end,a,b'", 1)

    events = []
    while True:
        try:
            row = next(reader)
        except StopIteration:
            break
        except csv.Error as exc:
            raise ParseError(str(exc), reader.line_num) from None
        line = reader.line_num
        if len(row) != 4:
            raise ParseError(f"expected 4 fields, got {len(row)}", line)
        start = _parse_int(row[0], "start", line)
        end = _parse_int(row[1], "end", line)
        a, b = row[2], row[3]
        if not a or not b:
            raise ParseError("empty participant id", line)
        try:
            events.append(ContactEvent(start, end, a, b))
        except ValidationError as exc:
            raise ValidationError(str(exc), line) from None
    return events


def read_events(path: str | os.PathLike) -> list[ContactEvent]:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_events(fh)


def write_events(events: Iterable[ContactEvent], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(EVENT_HEADER)
    for ev in events:
        writer.writerow((ev.start, ev.end, ev.a, ev.b))


def format_events(events: Iterable[ContactEvent]) -> str:
    buf = io.StringIO()
    write_events(events, buf)
    return buf.getvalue()

"""Input validation helpers for the estimator front-end."""

from __future__ import annotations

from typing import Iterable

from .contact_data import ContactEvent, ContactGraph, build_graph, canonical_pair
from .exceptions import UnknownVertexError


def check_graph(X) -> ContactGraph:
    """Accept a ContactGraph or an iterable of ContactEvents."""
    if isinstance(X, ContactGraph):
        return X
    events = list(X)
    if not all(isinstance(ev, ContactEvent) for ev in events):
        raise TypeError("expected a ContactGraph or a sequence of ContactEvent")
    return build_graph(events)


def check_pairs(pairs: Iterable, graph: ContactGraph | None = None) -> list[tuple[str, str]]:
    """Validate candidate pairs, returning them in canonical ``u < v`` order."""
    out = []
    for item in pairs:
        try:
            u, v = item
        except (TypeError, ValueError):
            raise ValueError(f"pair must have exactly two members, got {item!r}") from None
        if u == v:
            raise ValueError(f"pair members must differ, got {item!r}")
        if graph is not None:
            for x in (u, v):
                if x not in graph:
                    raise UnknownVertexError(x)
        out.append(canonical_pair(u, v))
    return out


def check_threshold(value, name: str) -> int:
    if int(value) != value or value < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
    return int(value)

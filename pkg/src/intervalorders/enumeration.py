"""Exhaustive and random generators for small relations and topologies."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

from .relations import FiniteRelation, bits, is_interval_order, is_total_preorder, is_transitive
from .topology import FiniteTopology


def default_labels(n: int) -> tuple[str, ...]:
    return tuple("abcdefghijklmnopqrstuvwxyz"[:n])


def all_relations(labels: Sequence[str], reflexive: bool = True) -> Iterator[FiniteRelation]:
    """Every relation on ``labels``; with ``reflexive`` only the diagonal is
    forced, giving 2**(n*n - n) relations."""
    labels = tuple(labels)
    n = len(labels)
    if reflexive:
        cells = [(i, j) for i in range(n) for j in range(n) if i != j]
        base = [1 << i for i in range(n)]
    else:
        cells = [(i, j) for i in range(n) for j in range(n)]
        base = [0] * n
    for code in range(1 << len(cells)):
        rows = list(base)
        for k in bits(code):
            i, j = cells[k]
            rows[i] |= 1 << j
        yield FiniteRelation(labels, tuple(rows))


def all_interval_orders(labels: Sequence[str]) -> Iterator[FiniteRelation]:
    return (R for R in all_relations(labels) if is_interval_order(R))


def all_total_preorders(labels: Sequence[str]) -> Iterator[FiniteRelation]:
    return (R for R in all_relations(labels) if is_total_preorder(R))


@lru_cache(maxsize=None)
def _topologies(labels: tuple[str, ...]) -> tuple[FiniteTopology, ...]:
    # finite topologies correspond one-to-one to preorders via up-sets
    out = []
    for R in all_relations(labels):
        if is_transitive(R):
            out.append(FiniteTopology.from_preorder(labels, R.rows))
    return tuple(out)


def all_topologies(labels: Sequence[str]) -> tuple[FiniteTopology, ...]:
    """All topologies on the given points (1, 4, 29, 355 for n = 1..4)."""
    if len(labels) > 4:
        raise ValueError("exhaustive topology enumeration is limited to 4 points")
    return _topologies(tuple(labels))


def reflexive_transitive_closure(rows: Sequence[int]) -> tuple[int, ...]:
    n = len(rows)
    out = [r | 1 << i for i, r in enumerate(rows)]
    for k in range(n):
        for i in range(n):
            if out[i] >> k & 1:
                out[i] |= out[k]
    return tuple(out)


def random_topology(labels: Sequence[str], rng: random.Random,
                    density: float | None = None) -> FiniteTopology:
    """Alexandrov topology of the preorder generated by a random relation."""
    n = len(labels)
    p = rng.random() * 0.6 if density is None else density
    rows = [sum(1 << j for j in range(n) if j != i and rng.random() < p) for i in range(n)]
    return FiniteTopology.from_preorder(tuple(labels), reflexive_transitive_closure(rows))


def random_interval_order(labels: Sequence[str], rng: random.Random,
                          scale: int = 6) -> FiniteRelation:
    """Interval order induced by random integer intervals [l, r]."""
    labels = tuple(labels)
    ends = []
    for _ in labels:
        a, b = rng.randint(0, scale), rng.randint(0, scale)
        ends.append((min(a, b), max(a, b)))
    rows = tuple(
        sum(1 << j for j, (_, rj) in enumerate(ends) if li <= rj) for li, _ in ends)
    return FiniteRelation(labels, rows)

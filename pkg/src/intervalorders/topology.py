"""Finite topological spaces given by their full family of open sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .relations import FiniteRelation, bits, is_total_preorder, strict_part


class TopologyError(ValueError):
    pass


def _fmt(points, mask):
    return "{" + ",".join(points[i] for i in bits(mask)) + "}"


@dataclass(frozen=True)
class FiniteTopology:
    points: tuple[str, ...]
    opens: frozenset[int]

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "opens", frozenset(self.opens))
        if len(set(points)) != len(points):
            raise TopologyError(f"duplicate point labels in {points}")
        problem = topology_violation(points, self.opens)
        if problem:
            raise TopologyError(problem)

    @classmethod
    def from_sets(cls, points: Sequence[str], sets: Iterable[Iterable[str]]):
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        opens = set()
        for s in sets:
            m = 0
            for p in s:
                if p not in index:
                    raise TopologyError(f"unknown point {p!r}")
                m |= 1 << index[p]
            opens.add(m)
        return cls(points, frozenset(opens))

    @classmethod
    def discrete(cls, points: Sequence[str]):
        return cls(tuple(points), frozenset(range(1 << len(points))))

    @classmethod
    def indiscrete(cls, points: Sequence[str]):
        return cls(tuple(points), frozenset({0, (1 << len(points)) - 1}))

    @classmethod
    def from_preorder(cls, points: Sequence[str], rows: Sequence[int]):
        """Alexandrov topology whose opens are the up-sets of a preorder
        (``rows[i]`` = everything above point i, including i)."""
        n = len(points)
        opens = frozenset(
            m for m in range(1 << n)
            if all(not rows[i] & ~m for i in bits(m)))
        return cls(tuple(points), opens)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def universe(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            if lab not in self.index:
                raise KeyError(f"unknown point {lab!r}")
            m |= 1 << self.index[lab]
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.points[i] for i in bits(mask))

    def is_open(self, subset: Iterable[str] | int) -> bool:
        m = subset if isinstance(subset, int) else self.mask(subset)
        return m in self.opens

    @cached_property
    def minimal_opens(self) -> tuple[int, ...]:
        """Smallest open neighbourhood of each point."""
        out = []
        for i in range(self.n):
            acc = self.universe
            for o in self.opens:
                if o >> i & 1:
                    acc &= o
            out.append(acc)
        return tuple(out)

    @cached_property
    def component_masks(self) -> tuple[int, ...]:
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, nbhd in enumerate(self.minimal_opens):
            for j in bits(nbhd):
                parent[find(i)] = find(j)
        groups: dict[int, int] = {}
        for i in range(self.n):
            groups[find(i)] = groups.get(find(i), 0) | 1 << i
        return tuple(sorted(groups.values(), key=lambda m: (m & -m)))

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        """Index into ``component_masks`` for every point."""
        out = [0] * self.n
        for k, m in enumerate(self.component_masks):
            for i in bits(m):
                out[i] = k
        return tuple(out)

    def sorted_opens(self) -> list[int]:
        return sorted(self.opens, key=lambda m: (bin(m).count("1"), m))

    def __str__(self):
        return " ".join(_fmt(self.points, o) for o in self.sorted_opens())


def topology_violation(points: Sequence[str], opens: Iterable[int]) -> str | None:
    """Describe the first topology axiom a family breaks, or None."""
    n = len(points)
    full = (1 << n) - 1
    opens = set(opens)
    if any(o < 0 or o & ~full for o in opens):
        return "open set mentions points outside X"
    if 0 not in opens:
        return "missing ∅ ∈ opens"
    if full not in opens:
        return "missing X ∈ opens"
    ordered = sorted(opens)
    for a in ordered:
        for b in ordered:
            if a | b not in opens:
                return (f"missing union of {_fmt(points, a)} and "
                        f"{_fmt(points, b)}: {_fmt(points, a | b)}")
            if a & b not in opens:
                return (f"missing intersection of {_fmt(points, a)} and "
                        f"{_fmt(points, b)}: {_fmt(points, a & b)}")
    return None


def _require_same_points(T: FiniteTopology, R: FiniteRelation) -> None:
    if tuple(T.points) != tuple(R.elements):
        raise ValueError(f"point lists differ: {T.points} vs {R.elements}")


def closure_mask(T: FiniteTopology, mask: int) -> int:
    # complement of the largest open set missing S
    interior_of_complement = 0
    for o in T.opens:
        if not o & mask:
            interior_of_complement |= o
    return T.universe & ~interior_of_complement


def closure(T: FiniteTopology, subset: Iterable[str]) -> frozenset[str]:
    return T.labels(closure_mask(T, T.mask(subset)))


def components(T: FiniteTopology) -> list[frozenset[str]]:
    """Connected components of the comparability graph of the specialization
    preorder; real functions are continuous iff constant on each one."""
    return [T.labels(m) for m in T.component_masks]


def is_continuous(T: FiniteTopology, f: Mapping[str, Fraction]) -> bool:
    values = sorted(set(f[p] for p in T.points))
    for lo, hi in zip(values, values[1:]):
        c = (lo + hi) / 2
        below = T.mask(p for p in T.points if f[p] < c)
        above = T.mask(p for p in T.points if f[p] > c)
        if below not in T.opens or above not in T.opens:
            return False
    return True


@dataclass(frozen=True)
class Semicontinuity:
    upper: bool
    lower: bool
    continuous: bool
    upper_failure: str | None = None
    lower_failure: str | None = None


def relation_semicontinuity(T: FiniteTopology, R: FiniteRelation) -> Semicontinuity:
    _require_same_points(T, R)
    P = strict_part(R)
    upper_failure = next((R.elements[i] for i in range(R.n) if P.cols[i] not in T.opens), None)
    lower_failure = next((R.elements[i] for i in range(R.n) if P.rows[i] not in T.opens), None)
    upper = upper_failure is None
    lower = lower_failure is None
    return Semicontinuity(upper, lower, upper and lower, upper_failure, lower_failure)


def _monotone_mask(mask: int, strict: FiniteRelation, direction: str) -> bool:
    if direction == "decreasing":
        lookup = strict.cols
    elif direction == "increasing":
        lookup = strict.rows
    else:
        raise ValueError(f"direction must be 'decreasing' or 'increasing', not {direction!r}")
    return all(not lookup[w] & ~mask for w in bits(mask))


def is_monotone_set(subset: Iterable[str], Rstrict: FiniteRelation, direction: str) -> bool:
    """Decreasing: w in S and z < w give z in S.  Increasing is the dual."""
    return _monotone_mask(Rstrict.mask(subset), Rstrict, direction)


@dataclass(frozen=True)
class AlmostSemicontinuity:
    holds: bool
    witness: dict[str, frozenset[str]]
    failing_point: str | None = None


def check_almost_semicontinuity(T: FiniteTopology, R: FiniteRelation, side: str,
                                monotone_wrt: FiniteRelation) -> AlmostSemicontinuity:
    """Search, point by point, for the open set demanded by almost upper
    (``side='upper'``) or almost lower (``side='lower'``) semicontinuity.

    The witness for x is the union of every qualifying open set; a union of
    qualifying sets qualifies, so it exists iff any does.
    """
    _require_same_points(T, R)
    if not is_total_preorder(R):
        raise ValueError("almost semicontinuity is defined for total preorders")
    if tuple(monotone_wrt.elements) != tuple(R.elements):
        raise ValueError("monotonicity relation uses different elements")
    P = strict_part(R)
    if side == "upper":
        sect, direction = P.cols, "decreasing"
    elif side == "lower":
        sect, direction = P.rows, "increasing"
    else:
        raise ValueError(f"side must be 'upper' or 'lower', not {side!r}")

    good_opens = [o for o in T.opens if _monotone_mask(o, monotone_wrt, direction)]
    witness = {}
    failing = None
    for i, x in enumerate(R.elements):
        union = 0
        found = False
        for o in good_opens:
            if not o >> i & 1 and not sect[i] & ~o:
                union |= o
                found = True
        witness[x] = T.labels(union)
        if not found and failing is None:
            failing = x
    return AlmostSemicontinuity(failing is None, witness, failing)

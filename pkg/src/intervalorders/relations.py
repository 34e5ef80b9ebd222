"""Finite binary relations stored as packed bit rows.

Row ``i`` of a relation is an integer whose bit ``j`` is set iff
``elements[i] R elements[j]``.  Every derived relation keeps the labels of
its source so reports stay readable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def compose_rows(left: Sequence[int], right: Sequence[int]) -> tuple[int, ...]:
    """Compose two bit tables: row i of the result is the union of
    ``right[k]`` over all k in ``left[i]``.  Tables may be rectangular."""
    out = []
    for row in left:
        acc = 0
        for k in bits(row):
            acc |= right[k]
        out.append(acc)
    return tuple(out)


def transpose_rows(rows: Sequence[int], width: int) -> tuple[int, ...]:
    cols = [0] * width
    for i, row in enumerate(rows):
        for j in bits(row):
            cols[j] |= 1 << i
    return tuple(cols)


class NotIntervalOrderError(ValueError):
    """Raised when an operation needs an interval order and gets something else.

    ``witness`` is a Ferrers-violating quadruple ``(x, z, y, w)`` with
    x R z, y R w, not x R w, not y R z, or None when the failure is
    non-reflexivity (then ``point`` names the offending element).
    """

    def __init__(self, message, witness=None, point=None):
        super().__init__(message)
        self.witness = witness
        self.point = point


@dataclass(frozen=True)
class FiniteRelation:
    elements: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "rows", rows)
        if len(set(elements)) != len(elements):
            raise ValueError(f"duplicate labels in {elements}")
        if len(rows) != len(elements):
            raise ValueError(f"expected {len(elements)} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> len(elements):
                raise ValueError(f"row {r:b} exceeds {len(elements)} columns")

    @classmethod
    def from_pairs(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]):
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        rows = [0] * len(elements)
        for x, y in pairs:
            rows[index[x]] |= 1 << index[y]
        return cls(elements, tuple(rows))

    @classmethod
    def from_matrix(cls, elements: Sequence[str], matrix: Sequence[Sequence]):
        """Build from a square table of truthy values (or '0'/'1' strings)."""
        rows = []
        for line in matrix:
            r = 0
            for j, cell in enumerate(line):
                if cell not in (0, "0", False):
                    r |= 1 << j
            rows.append(r)
        return cls(tuple(elements), tuple(rows))

    @classmethod
    def identity(cls, elements: Sequence[str]):
        return cls(tuple(elements), tuple(1 << i for i in range(len(elements))))

    @classmethod
    def full(cls, elements: Sequence[str]):
        n = len(elements)
        return cls(tuple(elements), ((1 << n) - 1,) * n)

    @classmethod
    def empty(cls, elements: Sequence[str]):
        return cls(tuple(elements), (0,) * len(elements))

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def universe(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """Column masks: bit i of ``cols[j]`` is set iff element_i R element_j."""
        return transpose_rows(self.rows, self.n)

    def holds(self, x: str, y: str) -> bool:
        return bool(self.rows[self.index[x]] >> self.index[y] & 1)

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            if lab not in self.index:
                raise KeyError(f"unknown label {lab!r}")
            m |= 1 << self.index[lab]
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in bits(mask))

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.elements[i], self.elements[j])
                for i, row in enumerate(self.rows) for j in bits(row)]

    def converse(self) -> FiniteRelation:
        return FiniteRelation(self.elements, self.cols)

    def matrix_lines(self) -> list[str]:
        return ["".join("1" if row >> j & 1 else "0" for j in range(self.n))
                for row in self.rows]

    def __str__(self):
        return "/".join(self.matrix_lines()) or "<empty>"


@dataclass(frozen=True)
class AxiomReport:
    reflexive: bool
    total: bool
    transitive: bool
    ferrers: bool
    interval_order: bool
    total_preorder: bool
    ferrers_witness: tuple[str, str, str, str] | None = None


def ferrers_witness(R: FiniteRelation) -> tuple[str, str, str, str] | None:
    """First quadruple (x, z, y, w) breaking the Ferrers condition, or None.

    The condition fails exactly when two upper sections are incomparable
    under inclusion, so the scan is over pairs of rows.
    """
    rows = R.rows
    for i in range(R.n):
        for j in range(i + 1, R.n):
            only_i = rows[i] & ~rows[j]
            only_j = rows[j] & ~rows[i]
            if only_i and only_j:
                z = next(bits(only_i))
                w = next(bits(only_j))
                e = R.elements
                return (e[i], e[z], e[j], e[w])
    return None


def is_reflexive(R: FiniteRelation) -> bool:
    return all(row >> i & 1 for i, row in enumerate(R.rows))


def is_total(R: FiniteRelation) -> bool:
    cols = R.cols
    return all((row | cols[i]) == R.universe for i, row in enumerate(R.rows))


def is_transitive(R: FiniteRelation) -> bool:
    rows = R.rows
    for row in rows:
        for k in bits(row):
            if rows[k] & ~row:
                return False
    return True


def is_total_preorder(R: FiniteRelation) -> bool:
    return is_reflexive(R) and is_total(R) and is_transitive(R)


def is_interval_order(R: FiniteRelation) -> bool:
    return is_reflexive(R) and ferrers_witness(R) is None


def check_axioms(R: FiniteRelation) -> AxiomReport:
    reflexive = is_reflexive(R)
    total = is_total(R)
    transitive = is_transitive(R)
    witness = ferrers_witness(R)
    return AxiomReport(
        reflexive=reflexive,
        total=total,
        transitive=transitive,
        ferrers=witness is None,
        interval_order=reflexive and witness is None,
        total_preorder=reflexive and transitive and total,
        ferrers_witness=witness,
    )


def require_interval_order(R: FiniteRelation) -> None:
    for i, row in enumerate(R.rows):
        if not row >> i & 1:
            raise NotIntervalOrderError(
                f"not reflexive at {R.elements[i]!r}", point=R.elements[i])
    witness = ferrers_witness(R)
    if witness is not None:
        x, z, y, w = witness
        raise NotIntervalOrderError(
            f"Ferrers condition fails: {x}<={z} and {y}<={w} "
            f"but neither {x}<={w} nor {y}<={z}", witness=witness)


def strict_part(R: FiniteRelation) -> FiniteRelation:
    cols = R.cols
    return FiniteRelation(R.elements, tuple(row & ~cols[i] for i, row in enumerate(R.rows)))


def compose(R: FiniteRelation, S: FiniteRelation) -> FiniteRelation:
    """x (R;S) y iff x R k and k S y for some k."""
    if R.elements != S.elements:
        raise ValueError("cannot compose relations over different element lists")
    return FiniteRelation(R.elements, compose_rows(R.rows, S.rows))


def traces(R: FiniteRelation) -> tuple[FiniteRelation, FiniteRelation]:
    """Return the two inclusion traces of R.

    The first relates i to j when the lower section of i is contained in
    that of j; the second when the upper section of j is contained in that
    of i.  Both are preorders for any R.
    """
    cols, rows = R.cols, R.rows
    n = R.n
    star = tuple(
        sum(1 << j for j in range(n) if not cols[i] & ~cols[j]) for i in range(n))
    starstar = tuple(
        sum(1 << j for j in range(n) if not rows[j] & ~rows[i]) for i in range(n))
    return FiniteRelation(R.elements, star), FiniteRelation(R.elements, starstar)


def sections(R: FiniteRelation, x: str) -> tuple[frozenset[str], frozenset[str]]:
    if x not in R.index:
        raise KeyError(f"unknown label {x!r}")
    i = R.index[x]
    return R.labels(R.cols[i]), R.labels(R.rows[i])


def equivalence_classes(R: FiniteRelation) -> list[frozenset[str]]:
    """Classes of the symmetric part of a total preorder, listed bottom-up."""
    if not is_total_preorder(R):
        raise ValueError("equivalence classes need a total preorder")
    cols = R.cols
    seen = 0
    classes = []
    # in a total preorder, fewer predecessors means lower
    for i in sorted(range(R.n), key=lambda k: popcount(cols[k])):
        if seen >> i & 1:
            continue
        cls = R.rows[i] & cols[i]
        seen |= cls
        classes.append(R.labels(cls))
    return classes


def trace_classes(R: FiniteRelation, which: str) -> list[frozenset[str]]:
    """Equivalence classes of one trace of R; ``which`` is 'star' or 'starstar'."""
    star, starstar = traces(R)
    if which == "star":
        return equivalence_classes(star)
    if which == "starstar":
        return equivalence_classes(starstar)
    raise ValueError(f"which must be 'star' or 'starstar', not {which!r}")

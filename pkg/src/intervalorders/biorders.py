"""Ferrers relations from a set A to a set X (biorders).

``rows[a]`` is the bit mask of the points x with a < x.  The weak relation
``x <= a`` is the complement of ``a < x``.  An interval order is the square
case A = X through its strict part (see ``biorder_from_interval_order``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .constraints import Constraint, ConstraintSystem
from .relations import (
    FiniteRelation,
    bits,
    compose_rows,
    require_interval_order,
    strict_part,
    transpose_rows,
)
from .repcore import FunctionPair, Verdict, _component_names
from .topology import FiniteTopology, is_continuous


class NotFerrersError(ValueError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FiniteBiorder:
    a_labels: tuple[str, ...]
    x_labels: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.a_labels)
        x = tuple(self.x_labels)
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "a_labels", a)
        object.__setattr__(self, "x_labels", x)
        object.__setattr__(self, "rows", rows)
        if len(set(a)) != len(a) or len(set(x)) != len(x):
            raise ValueError("duplicate labels within A or within X")
        if len(rows) != len(a):
            raise ValueError(f"expected {len(a)} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> len(x):
                raise ValueError(f"row {r:b} exceeds {len(x)} columns")

    @classmethod
    def from_pairs(cls, a_labels, x_labels, pairs: Iterable[tuple[str, str]]):
        a_idx = {a: i for i, a in enumerate(a_labels)}
        x_idx = {x: j for j, x in enumerate(x_labels)}
        rows = [0] * len(a_labels)
        for a, x in pairs:
            rows[a_idx[a]] |= 1 << x_idx[x]
        return cls(tuple(a_labels), tuple(x_labels), tuple(rows))

    @property
    def m(self) -> int:
        return len(self.a_labels)

    @property
    def n(self) -> int:
        return len(self.x_labels)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """``cols[x]``: mask over A of {a : a < x}."""
        return transpose_rows(self.rows, self.n)

    @cached_property
    def weak_rows(self) -> tuple[int, ...]:
        """Rows over A of the weak relation from X: bit a of row x iff x <= a."""
        full = (1 << self.m) - 1
        return tuple(full & ~c for c in self.cols)

    def related(self, a: str, x: str) -> bool:
        return bool(self.rows[self.a_labels.index(a)] >> self.x_labels.index(x) & 1)

    def lower_set(self, x: str) -> frozenset[str]:
        j = self.x_labels.index(x)
        return frozenset(self.a_labels[i] for i in bits(self.cols[j]))

    def matrix_lines(self) -> list[str]:
        return ["".join("1" if r >> j & 1 else "0" for j in range(self.n)) for r in self.rows]

    def __str__(self):
        return "/".join(self.matrix_lines()) or "<empty>"


def biorder_from_interval_order(R: FiniteRelation) -> FiniteBiorder:
    P = strict_part(R)
    return FiniteBiorder(R.elements, R.elements, P.rows)


@dataclass(frozen=True)
class FerrersCheck:
    holds: bool
    witness: tuple[str, str, str, str] | None = None


def check_ferrers_biorder(B: FiniteBiorder) -> FerrersCheck:
    """(a < x and b < y) imply (a < y or b < x).  The quadruple scan is
    cross-checked against nestedness of the sets {a : a < x}."""
    witness = None
    for i in range(B.m):
        for k in range(B.m):
            only_i = B.rows[i] & ~B.rows[k]
            only_k = B.rows[k] & ~B.rows[i]
            if only_i and only_k:
                x = next(bits(only_i))
                y = next(bits(only_k))
                witness = (B.a_labels[i], B.a_labels[k], B.x_labels[x], B.x_labels[y])
                break
        if witness:
            break
    cols = B.cols
    nested = all(not cols[p] & ~cols[q] or not cols[q] & ~cols[p]
                 for p in range(B.n) for q in range(B.n))
    if nested != (witness is None):  # pragma: no cover - self-test
        raise AssertionError("Ferrers scan disagrees with nestedness of lower sets")
    return FerrersCheck(witness is None, witness)


def biorder_traces(B: FiniteBiorder) -> tuple[FiniteRelation, FiniteRelation]:
    """Weak traces on A and on X.

    The strict traces are the composites (strict ; weak) on A and
    (weak ; strict) on X; each weak trace relates p to q unless q is
    strictly below p in the corresponding strict trace.
    """
    strict_a = compose_rows(B.rows, B.weak_rows)     # a < x <= b
    strict_x = compose_rows(B.weak_rows, B.rows)     # x <= a < y
    star = _weak_from_strict(strict_a, B.m)
    starstar = _weak_from_strict(strict_x, B.n)
    return FiniteRelation(B.a_labels, star), FiniteRelation(B.x_labels, starstar)


def _weak_from_strict(strict_rows, size):
    cols = transpose_rows(strict_rows, size)
    full = (1 << size) - 1
    return tuple(full & ~cols[i] for i in range(size))


def _check_tables(B: FiniteBiorder, p: FunctionPair) -> None:
    if any(a not in p.v for a in B.a_labels) or any(x not in p.u for x in B.x_labels):
        raise ValueError("v must cover A and u must cover X")


def verify_biorder_representation(B: FiniteBiorder, p: FunctionPair, mode: str) -> Verdict:
    """Sweep ``a < x iff v(a) < u(x)`` (strict) or ``v(a) <= u(x)`` (weak)."""
    _check_tables(B, p)
    if mode not in ("strict", "weak"):
        raise ValueError(f"mode must be 'strict' or 'weak', not {mode!r}")
    for i, a in enumerate(B.a_labels):
        for j, x in enumerate(B.x_labels):
            lhs = bool(B.rows[i] >> j & 1)
            rhs = p.v[a] < p.u[x] if mode == "strict" else p.v[a] <= p.u[x]
            if lhs != rhs:
                return Verdict(False, (a, x))
    return Verdict(True)


def construct_biorder_representation(B: FiniteBiorder, mode: str = "strict") -> FunctionPair:
    """Staircase on the chain of distinct lower sets {a : a < x}, with the
    empty set always at index 0.  Weak mode gives integers with
    a < x iff v(a) <= u(x); strict mode lowers v by 1/2."""
    if mode not in ("strict", "weak"):
        raise ValueError(f"mode must be 'strict' or 'weak', not {mode!r}")
    check = check_ferrers_biorder(B)
    if not check.holds:
        a, b, x, y = check.witness
        raise NotFerrersError(
            f"not Ferrers: {a}<{x} and {b}<{y} but neither {a}<{y} nor {b}<{x}",
            check.witness)
    chain = sorted(set(B.cols) | {0}, key=lambda m: bin(m).count("1"))
    rank = {m: t for t, m in enumerate(chain)}
    k = len(chain) - 1
    u = {x: Fraction(rank[B.cols[j]]) for j, x in enumerate(B.x_labels)}
    v = {}
    for i, a in enumerate(B.a_labels):
        first = next((t for t, m in enumerate(chain) if m >> i & 1), k + 1)
        v[a] = Fraction(first) - (Fraction(1, 2) if mode == "strict" else 0)
    pair = FunctionPair(u, v)
    sweep = verify_biorder_representation(B, pair, mode)
    if not sweep.holds:  # pragma: no cover - guarded by the Ferrers check
        raise AssertionError(f"staircase sweep failed at {sweep.counterexample}")
    return pair


def verify_biorder_almost_representation(B: FiniteBiorder, p: FunctionPair) -> Verdict:
    """(x <= a implies u(x) <= v(a)) and (a < x implies v(a) <= u(x))."""
    _check_tables(B, p)
    for i, a in enumerate(B.a_labels):
        for j, x in enumerate(B.x_labels):
            if B.rows[i] >> j & 1:
                if not p.v[a] <= p.u[x]:
                    return Verdict(False, (a, x, "strict"))
            elif not p.u[x] <= p.v[a]:
                return Verdict(False, (a, x, "weak"))
    return Verdict(True)


@dataclass(frozen=True)
class JointDensity:
    holds: bool
    failing_pair: tuple[str, str] | None = None


def check_jointly_dense(B: FiniteBiorder, D_A: Iterable[str], D_X: Iterable[str]) -> JointDensity:
    """Every a < x must route as a <=* b < y <=** x with b in D_A, y in D_X."""
    star, starstar = biorder_traces(B)
    da = sum(1 << B.a_labels.index(b) for b in D_A)
    dx = sum(1 << B.x_labels.index(y) for y in D_X)
    for i in range(B.m):
        for j in bits(B.rows[i]):
            ok = any(starstar.rows[y] >> j & 1
                     for b in bits(star.rows[i] & da)
                     for y in bits(B.rows[b] & dx))
            if not ok:
                return JointDensity(False, (B.a_labels[i], B.x_labels[j]))
    return JointDensity(True)


def _require_topologies(B, T_A, T_X):
    if T_A is not None and tuple(T_A.points) != B.a_labels:
        raise ValueError("T_A must live on A")
    if T_X is not None and tuple(T_X.points) != B.x_labels:
        raise ValueError("T_X must live on X")


def _names(B, T_A, T_X):
    return (["v" + c for c in _component_names(B.a_labels, T_A)],
            ["u" + c for c in _component_names(B.x_labels, T_X)])


def _pair(B, vn, un, values) -> FunctionPair:
    v = {a: values[vn[i]] for i, a in enumerate(B.a_labels)}
    u = {x: values[un[j]] for j, x in enumerate(B.x_labels)}
    return FunctionPair(u, v).unit_rescaled()


@dataclass(frozen=True)
class BiorderDecision:
    feasible: bool
    pair: FunctionPair | None = None
    certificate: tuple[Constraint, ...] | None = None


def decide_continuous_biorder_representation(B: FiniteBiorder, T_A: FiniteTopology | None = None,
                                             T_X: FiniteTopology | None = None) -> BiorderDecision:
    """Continuous strict representation (a < x iff v(a) < u(x)), if any."""
    _require_topologies(B, T_A, T_X)
    vn, un = _names(B, T_A, T_X)
    triples = []
    for i in range(B.m):
        for j in range(B.n):
            if B.rows[i] >> j & 1:
                triples.append((vn[i], un[j], -1))
            else:
                triples.append((un[j], vn[i], 0))
    sol = ConstraintSystem.build(vn + un, triples).solve()
    if not sol.feasible:
        return BiorderDecision(False, certificate=sol.cycle)
    return BiorderDecision(True, pair=_pair(B, vn, un, sol.values))


@dataclass(frozen=True)
class BiorderWeakContinuity:
    holds: bool
    witnesses: dict[tuple[str, str], FunctionPair] = field(default_factory=dict)
    failing_pair: tuple[str, str] | None = None
    certificate: tuple[Constraint, ...] | None = None


def biorder_weakly_continuous(B: FiniteBiorder, T_A: FiniteTopology | None = None,
                              T_X: FiniteTopology | None = None) -> BiorderWeakContinuity:
    _require_topologies(B, T_A, T_X)
    vn, un = _names(B, T_A, T_X)
    triples = []
    for i in range(B.m):
        for j in range(B.n):
            if B.rows[i] >> j & 1:
                triples.append((vn[i], un[j], 0))
            else:
                triples.append((un[j], vn[i], 0))
    system = ConstraintSystem.build(vn + un, triples)
    witnesses = {}
    for i, a in enumerate(B.a_labels):
        for j in bits(B.rows[i]):
            x = B.x_labels[j]
            sol = system.solve(extra=(Constraint(vn[i], un[j], -1),))
            if not sol.feasible:
                return BiorderWeakContinuity(False, witnesses, (a, x), sol.cycle)
            witnesses[(a, x)] = _pair(B, vn, un, sol.values)
    return BiorderWeakContinuity(True, witnesses)


def biorder_pair_is_continuous(p: FunctionPair, T_A: FiniteTopology, T_X: FiniteTopology) -> bool:
    return is_continuous(T_A, p.v) and is_continuous(T_X, p.u)


def interval_pair_from_biorder(R: FiniteRelation) -> FunctionPair:
    """Represent an interval order through its strict part seen as a biorder:
    x <= y iff not v(y) < u(x), i.e. iff u(x) <= v(y)."""
    require_interval_order(R)
    return construct_biorder_representation(biorder_from_interval_order(R), "strict")

"""Numerical representations of interval orders by pairs of functions.

A pair ``(u, v)`` represents a relation when ``x <= y`` holds exactly when
``u(x) <= v(y)``; it almost represents it when weak pairs satisfy
``u(z) <= v(w)`` and strict pairs satisfy ``v(z) <= u(w)``.  All values are
``Fraction`` and every decision is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .constraints import Constraint, ConstraintSystem
from .relations import (
    FiniteRelation,
    bits,
    require_interval_order,
    strict_part,
    traces,
)
from .topology import FiniteTopology, is_continuous


@dataclass(frozen=True)
class FunctionPair:
    """Two exact value tables.  For interval orders both are keyed by the
    same elements; biorders key ``v`` by the left set and ``u`` by the right."""

    u: dict[str, Fraction]
    v: dict[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "u", _exact_table(self.u, "u"))
        object.__setattr__(self, "v", _exact_table(self.v, "v"))

    @classmethod
    def from_lists(cls, labels: Sequence[str], u: Sequence, v: Sequence):
        return cls(dict(zip(labels, u)), dict(zip(labels, v)))

    def values(self) -> list[Fraction]:
        return [*self.u.values(), *self.v.values()]

    def scaled(self, lo: Fraction, hi: Fraction) -> FunctionPair:
        """Affine image of both tables under the map sending lo->0, hi->1."""
        if lo == hi:
            half = Fraction(1, 2)
            return FunctionPair({k: half for k in self.u}, {k: half for k in self.v})
        span = hi - lo
        return FunctionPair({k: (x - lo) / span for k, x in self.u.items()},
                            {k: (x - lo) / span for k, x in self.v.items()})

    def unit_rescaled(self) -> FunctionPair:
        """Both tables mapped jointly onto [0, 1] by one increasing affine map."""
        vals = self.values()
        return self.scaled(min(vals), max(vals))


def _exact_table(table: Mapping[str, object], name: str) -> dict[str, Fraction]:
    out = {}
    for k, x in dict(table).items():
        if isinstance(x, float):
            raise TypeError(f"{name}[{k!r}] is a float; use Fraction or int")
        out[k] = Fraction(x)
    return out


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: tuple | None = None


def _require_tables(R: FiniteRelation, p: FunctionPair) -> None:
    for name, table in (("u", p.u), ("v", p.v)):
        missing = [e for e in R.elements if e not in table]
        if missing:
            raise ValueError(f"{name} is undefined at {missing}")


def _require_same_points(R: FiniteRelation, T: FiniteTopology) -> None:
    if tuple(T.points) != tuple(R.elements):
        raise ValueError(f"point lists differ: {R.elements} vs {T.points}")


def relation_from_pair(labels: Sequence[str], p: FunctionPair) -> FiniteRelation:
    """The relation ``x <= y iff u(x) <= v(y)`` induced by a pair."""
    labels = tuple(labels)
    rows = tuple(sum(1 << j for j, y in enumerate(labels) if p.u[x] <= p.v[y])
                 for x in labels)
    return FiniteRelation(labels, rows)


def verify_representation(R: FiniteRelation, p: FunctionPair) -> Verdict:
    _require_tables(R, p)
    e = R.elements
    for i, x in enumerate(e):
        for j, y in enumerate(e):
            if bool(R.rows[i] >> j & 1) != (p.u[x] <= p.v[y]):
                return Verdict(False, (x, y))
    return Verdict(True)


def verify_almost_representation(R: FiniteRelation, p: FunctionPair) -> Verdict:
    """Counterexamples are ``(z, w, 'weak')`` or ``(z, w, 'strict')`` naming
    the implication that fails."""
    _require_tables(R, p)
    e = R.elements
    P = strict_part(R)
    for i, z in enumerate(e):
        for j, w in enumerate(e):
            if R.rows[i] >> j & 1 and not p.u[z] <= p.v[w]:
                return Verdict(False, (z, w, "weak"))
            if P.rows[i] >> j & 1 and not p.v[z] <= p.u[w]:
                return Verdict(False, (z, w, "strict"))
    return Verdict(True)


def construct_representation(R: FiniteRelation) -> FunctionPair:
    """Staircase representation from the chain of strict lower sections.

    Distinct sections L_0 < ... < L_k are indexed by size (they are nested
    in an interval order); u(x) is the index of x's own section and v(x) is
    one less than the first index whose section contains x.
    """
    require_interval_order(R)
    P = strict_part(R)
    chain = sorted(set(P.cols), key=lambda m: bin(m).count("1"))
    rank = {m: i for i, m in enumerate(chain)}
    k = len(chain) - 1
    u, v = {}, {}
    for i, x in enumerate(R.elements):
        u[x] = rank[P.cols[i]]
        first = next((t for t, m in enumerate(chain) if m >> i & 1), k + 1)
        v[x] = first - 1
    pair = FunctionPair(u, v)
    check = verify_representation(R, pair)
    if not check.holds:  # pragma: no cover - guarded by the Ferrers check
        raise AssertionError(f"staircase failed at {check.counterexample}")
    return pair


# -- constraint encodings -------------------------------------------------

def _component_names(labels: Sequence[str], T: FiniteTopology | None) -> list[str]:
    """One variable suffix per point; points in one component share it."""
    if T is None:
        return [f"[{x}]" for x in labels]
    names = []
    for k in T.component_of:
        members = ",".join(labels[i] for i in bits(T.component_masks[k]))
        names.append(f"[{members}]")
    return names


def _pair_from_solution(labels_u, names_u, labels_v, names_v, values) -> FunctionPair:
    u = {x: values["u" + c] for x, c in zip(labels_u, names_u)}
    v = {x: values["v" + c] for x, c in zip(labels_v, names_v)}
    return FunctionPair(u, v).unit_rescaled()


def representation_system(R: FiniteRelation, T: FiniteTopology | None = None) -> ConstraintSystem:
    """Difference constraints for a representation constant on components."""
    names = _component_names(R.elements, T)
    variables = [r + c for c in names for r in ("u", "v")]
    triples = []
    for i in range(R.n):
        for j in range(R.n):
            if R.rows[i] >> j & 1:
                triples.append(("u" + names[i], "v" + names[j], 0))
            else:
                triples.append(("v" + names[j], "u" + names[i], -1))
    return ConstraintSystem.build(variables, triples)


def almost_representation_system(R: FiniteRelation,
                                 T: FiniteTopology | None = None) -> ConstraintSystem:
    names = _component_names(R.elements, T)
    variables = [r + c for c in names for r in ("u", "v")]
    P = strict_part(R)
    triples = []
    for i in range(R.n):
        for j in range(R.n):
            if R.rows[i] >> j & 1:
                triples.append(("u" + names[i], "v" + names[j], 0))
            if P.rows[i] >> j & 1:
                triples.append(("v" + names[i], "u" + names[j], 0))
    return ConstraintSystem.build(variables, triples)


@dataclass(frozen=True)
class RepresentationDecision:
    feasible: bool
    pair: FunctionPair | None = None
    certificate: tuple[Constraint, ...] | None = None


def decide_continuous_representation(R: FiniteRelation,
                                     T: FiniteTopology | None = None) -> RepresentationDecision:
    """Decide whether some pair of continuous functions represents R on T.

    Continuous real functions on a finite space are the ones constant on
    connected components, so each component gets one u and one v variable.
    ``T=None`` means the discrete topology.
    """
    if T is not None:
        _require_same_points(R, T)
    names = _component_names(R.elements, T)
    sol = representation_system(R, T).solve()
    if not sol.feasible:
        return RepresentationDecision(False, certificate=sol.cycle)
    pair = _pair_from_solution(R.elements, names, R.elements, names, sol.values)
    return RepresentationDecision(True, pair=pair)


@dataclass(frozen=True)
class WeakContinuity:
    holds: bool
    witnesses: dict[tuple[str, str], FunctionPair] = field(default_factory=dict)
    failing_pair: tuple[str, str] | None = None
    certificate: tuple[Constraint, ...] | None = None


def is_weakly_continuous(R: FiniteRelation, T: FiniteTopology | None = None) -> WeakContinuity:
    """For each strict pair x < y look for a continuous almost representation
    with v(x) < u(y); stop at the first pair that has none."""
    require_interval_order(R)
    if T is not None:
        _require_same_points(R, T)
    names = _component_names(R.elements, T)
    system = almost_representation_system(R, T)
    P = strict_part(R)
    witnesses = {}
    for i, x in enumerate(R.elements):
        for j in bits(P.rows[i]):
            y = R.elements[j]
            sep = Constraint("v" + names[i], "u" + names[j], -1)
            sol = system.solve(extra=(sep,))
            if not sol.feasible:
                return WeakContinuity(False, witnesses, (x, y), sol.cycle)
            witnesses[(x, y)] = _pair_from_solution(
                R.elements, names, R.elements, names, sol.values)
    return WeakContinuity(True, witnesses)


def dyadic_combine(pairs: Iterable[FunctionPair]) -> FunctionPair:
    """Weighted sum of the n-th pair with weight 2**-n (n from 1).

    A pair with a value outside [0, 1] is first moved onto [0, 1] by the
    increasing affine map fixed by its own extreme values (a constant pair
    goes to 1/2); pairs already inside [0, 1] are used as they are.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("dyadic_combine needs at least one pair")
    keys_u, keys_v = pairs[0].u.keys(), pairs[0].v.keys()
    u = {k: Fraction(0) for k in keys_u}
    v = {k: Fraction(0) for k in keys_v}
    weight = Fraction(1)
    for p in pairs:
        if p.u.keys() != keys_u or p.v.keys() != keys_v:
            raise ValueError("pairs are defined on different elements")
        if any(x < 0 or x > 1 for x in p.values()):
            p = p.unit_rescaled()
        weight /= 2
        for k in keys_u:
            u[k] += weight * p.u[k]
        for k in keys_v:
            v[k] += weight * p.v[k]
    return FunctionPair(u, v)


@dataclass(frozen=True)
class Separability:
    holds: bool
    failing_strict_pair: tuple[str, str] | None
    minimal_dense: frozenset[str]


def _dense_failure(P, star, starstar, dmask) -> tuple[int, int] | None:
    n = len(P.rows)
    # points d with x <=* d, restricted to D; then a strict successor in D
    for x in range(n):
        for y in bits(P.rows[x]):
            ok = False
            for dm in bits(star.rows[x] & dmask):
                for dn in bits(P.rows[dm] & dmask):
                    if starstar.rows[dn] >> y & 1:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return x, y
    return None


def check_io_separability(R: FiniteRelation, D: Iterable[str]) -> Separability:
    """Check that every strict pair x < y routes as x <=* d < d' <=** y
    through D, and report a greedily thinned dense subset of X."""
    require_interval_order(R)
    P = strict_part(R)
    star, starstar = traces(R)
    fail = _dense_failure(P, star, starstar, R.mask(D))
    dense = R.universe
    for i in range(R.n):
        trial = dense & ~(1 << i)
        if _dense_failure(P, star, starstar, trial) is None:
            dense = trial
    failing = None if fail is None else (R.elements[fail[0]], R.elements[fail[1]])
    return Separability(fail is None, failing, R.labels(dense))


def pair_is_continuous(T: FiniteTopology, p: FunctionPair) -> bool:
    return is_continuous(T, p.u) and is_continuous(T, p.v)

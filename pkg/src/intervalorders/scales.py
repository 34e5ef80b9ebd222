"""Scales on finite spaces: nested open families indexed by dyadic rationals.

On a finite space only finitely many levels can be stored, so a scale here
is indexed by a finite set of dyadic rationals in [0, 1] containing 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .relations import FiniteRelation, strict_part
from .repcore import FunctionPair, verify_almost_representation
from .topology import FiniteTopology, closure_mask, is_continuous


def is_dyadic(r: Fraction) -> bool:
    d = r.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class DyadicScale:
    points: tuple[str, ...]
    levels: tuple[Fraction, ...]
    sets: tuple[frozenset[str], ...]

    def __post_init__(self):
        levels = tuple(Fraction(r) for r in self.levels)
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "sets", sets)
        if len(levels) != len(sets):
            raise ValueError("one set per level is required")
        if not levels or levels[-1] != 1:
            raise ValueError("the index set must contain 1 as its largest level")
        for r, s in zip(levels, levels[1:]):
            if not r < s:
                raise ValueError(f"levels must ascend strictly ({r} then {s})")
        for r in levels:
            if not (0 <= r <= 1 and is_dyadic(r)):
                raise ValueError(f"{r} is not a dyadic rational in [0, 1]")
        known = set(self.points)
        for s in sets:
            if not s <= known:
                raise ValueError(f"set {sorted(s)} mentions unknown points")

    @classmethod
    def from_mapping(cls, points: Sequence[str], mapping):
        items = sorted((Fraction(r), frozenset(s)) for r, s in dict(mapping).items())
        return cls(tuple(points), tuple(r for r, _ in items), tuple(s for _, s in items))

    def at(self, r) -> frozenset[str]:
        return self.sets[self.levels.index(Fraction(r))]

    def restricted(self, levels: Iterable) -> DyadicScale:
        keep = sorted(set(Fraction(r) for r in levels))
        return DyadicScale(self.points, tuple(keep), tuple(self.at(r) for r in keep))


@dataclass(frozen=True)
class ScaleCheck:
    valid: bool
    violation: str | None = None
    levels: tuple[Fraction, ...] | None = None


def validate_scale(T: FiniteTopology, sc: DyadicScale) -> ScaleCheck:
    if tuple(sc.points) != tuple(T.points):
        raise ValueError("scale and topology use different points")
    masks = [T.mask(s) for s in sc.sets]
    if masks[-1] != T.universe:
        return ScaleCheck(False, "G(1) is not the whole space", (Fraction(1),))
    for r, m in zip(sc.levels, masks):
        if m not in T.opens:
            return ScaleCheck(False, f"G({r}) is not open", (r,))
    for i, (r1, m1) in enumerate(zip(sc.levels, masks)):
        cl = closure_mask(T, m1)
        for r2, m2 in zip(sc.levels[i + 1:], masks[i + 1:]):
            if cl & ~m2:
                return ScaleCheck(False, f"closure of G({r1}) is not inside G({r2})", (r1, r2))
    return ScaleCheck(True)


def scale_to_function(sc: DyadicScale) -> dict[str, Fraction]:
    """f(x) = least level whose set contains x (the infimum over a finite index)."""
    out = {}
    for x in sc.points:
        out[x] = next(r for r, s in zip(sc.levels, sc.sets) if x in s or r == 1)
    return out


def dyadic_grid(depth: int) -> tuple[Fraction, ...]:
    if depth < 1:
        raise ValueError("depth must be positive")
    return tuple(Fraction(k, 2 ** depth) for k in range(1, 2 ** depth + 1))


def _levels_between(lo: Fraction, hi: Fraction, grid, avoid) -> list[Fraction]:
    """Strictly increasing values in (lo, hi) for grid points r < 1, nudged
    down off any value in ``avoid``."""
    raw = [lo + (hi - lo) * r for r in grid]
    marks = sorted(set(avoid) | set(raw) | {lo})
    gaps = [b - a for a, b in zip(marks, marks[1:])]
    nudge = min(gaps) / 3 if gaps else Fraction(0)
    return [a - nudge if a in avoid else a for a in raw]


def scales_from_pair(R: FiniteRelation, T: FiniteTopology, p: FunctionPair, x: str, y: str,
                     depth: int = 4) -> tuple[DyadicScale, DyadicScale]:
    """Turn a continuous almost representation separating x < y into the
    two sublevel scales {v < alpha(r)} and {u < alpha(r)}.

    alpha sends the grid levels below 1 increasingly into (v(x), u(y)) and
    1 above every table value.
    """
    if tuple(T.points) != tuple(R.elements):
        raise ValueError("relation and topology use different points")
    P = strict_part(R)
    if not P.holds(x, y):
        raise ValueError(f"{x} is not strictly below {y}")
    if not verify_almost_representation(R, p).holds:
        raise ValueError("the pair does not almost represent the relation")
    if not (is_continuous(T, p.u) and is_continuous(T, p.v)):
        raise ValueError("the pair is not continuous")
    lo, hi = p.v[x], p.u[y]
    if not lo < hi:
        raise ValueError(f"v({x}) < u({y}) is required")
    grid = dyadic_grid(depth)
    alphas = _levels_between(lo, hi, grid[:-1], set(p.values()))
    star, starstar = [], []
    for a in alphas:
        star.append(frozenset(z for z in R.elements if p.v[z] < a))
        starstar.append(frozenset(z for z in R.elements if p.u[z] < a))
    full = frozenset(R.elements)
    star.append(full)
    starstar.append(full)
    return (DyadicScale(R.elements, grid, tuple(star)),
            DyadicScale(R.elements, grid, tuple(starstar)))


@dataclass(frozen=True)
class PairConditions:
    a_holds: bool
    b_holds: bool
    c_holds: bool
    violation: str | None = None

    @property
    def all_hold(self) -> bool:
        return self.a_holds and self.b_holds and self.c_holds


def check_propweak_conditions(R: FiniteRelation, Gstar: DyadicScale, Gstarstar: DyadicScale,
                              x: str, y: str) -> PairConditions:
    """Check, for every level r and all z, w:
    (a) z <= w and w in G*(r) give z in G**(r);
    (b) z < w and w in G**(r) give z in G*(r);
    (c) x in G*(r) and y not in G**(r) for r < 1.
    """
    if Gstar.levels != Gstarstar.levels:
        raise ValueError("the two scales are indexed by different levels")
    P = strict_part(R)
    e = R.elements
    violations = []
    a_ok = b_ok = c_ok = True
    for r, s1, s2 in zip(Gstar.levels, Gstar.sets, Gstarstar.sets):
        for i, z in enumerate(e):
            for j, w in enumerate(e):
                if a_ok and R.rows[i] >> j & 1 and w in s1 and z not in s2:
                    a_ok = False
                    violations.append(f"(a) fails at r={r}, z={z}, w={w}")
                if b_ok and P.rows[i] >> j & 1 and w in s2 and z not in s1:
                    b_ok = False
                    violations.append(f"(b) fails at r={r}, z={z}, w={w}")
        if c_ok and r != 1 and (x not in s1 or y in s2):
            c_ok = False
            violations.append(f"(c) fails at r={r}")
    return PairConditions(a_ok, b_ok, c_ok, violations[0] if violations else None)


def mesh(levels: Iterable[Fraction]) -> Fraction:
    """Largest gap between consecutive members of the levels together with 0."""
    pts = sorted(set(Fraction(r) for r in levels) | {Fraction(0)})
    return max((b - a for a, b in zip(pts, pts[1:])), default=Fraction(0))

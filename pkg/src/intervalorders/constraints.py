"""Difference constraints ``lhs - rhs <= bound`` decided by Bellman-Ford.

Bounds are 0 or -1: after clearing denominators a strict inequality
``a < b`` between finitely many reals is the same as ``a - b <= -1`` over
the integers, so no epsilon is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Constraint:
    lhs: str
    rhs: str
    bound: int

    def __str__(self):
        return f"{self.lhs} - {self.rhs} <= {self.bound}"


@dataclass(frozen=True)
class Solution:
    feasible: bool
    values: dict[str, int] | None = None
    cycle: tuple[Constraint, ...] | None = None

    @property
    def cycle_weight(self) -> int | None:
        if self.cycle is None:
            return None
        return sum(c.bound for c in self.cycle)


@dataclass(frozen=True)
class ConstraintSystem:
    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        variables = tuple(dict.fromkeys(self.variables))
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", tuple(self.constraints))
        known = set(variables)
        for c in self.constraints:
            _check(c, known)

    @classmethod
    def build(cls, variables: Sequence[str], triples: Iterable[tuple[str, str, int]]):
        """Deduplicate ``(lhs, rhs, bound)`` triples keeping the tightest bound."""
        tightest: dict[tuple[str, str], int] = {}
        for lhs, rhs, bound in triples:
            key = (lhs, rhs)
            if key not in tightest or bound < tightest[key]:
                tightest[key] = bound
        cons = tuple(Constraint(l, r, b) for (l, r), b in tightest.items()
                     if not (l == r and b >= 0))
        return cls(tuple(variables), cons)

    def solve(self, extra: Sequence[Constraint] = ()) -> Solution:
        """Feasibility with integer potentials, or a negative cycle.

        ``extra`` constraints are appended for this call only, so one system
        can be queried repeatedly with different separating edges.
        """
        known = set(self.variables)
        for c in extra:
            _check(c, known)
        idx = {v: i for i, v in enumerate(self.variables)}
        edges = [(idx[c.rhs], idx[c.lhs], c.bound, c)
                 for c in (*self.constraints, *extra)]
        n = len(self.variables)
        # all-zero start = a virtual source joined to every node by weight 0
        dist = [0] * n
        pred: list[Constraint | None] = [None] * n
        last = -1
        for _ in range(n + 1):
            last = -1
            for a, b, w, c in edges:
                if dist[a] + w < dist[b]:
                    dist[b] = dist[a] + w
                    pred[b] = c
                    last = b
            if last < 0:
                values = {v: dist[i] for i, v in enumerate(self.variables)}
                return Solution(True, values=values)
        # still relaxing after n+1 rounds: walk back into the cycle
        node = last
        for _ in range(n):
            node = idx[pred[node].rhs]
        cycle = []
        cur = node
        while True:
            c = pred[cur]
            cycle.append(c)
            cur = idx[c.rhs]
            if cur == node:
                break
        cycle.reverse()
        return Solution(False, cycle=tuple(cycle))


def _check(c: Constraint, known: set[str]) -> None:
    if c.lhs not in known or c.rhs not in known:
        raise ValueError(f"constraint {c} references an undeclared variable")
    if c.bound not in (0, -1):
        raise ValueError(f"constraint {c} has bound outside {{0, -1}}")

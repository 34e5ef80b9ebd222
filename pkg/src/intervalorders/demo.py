"""The lexicographic order on the open unit square, sampled on a rational grid.

The order has no utility function, yet the first-coordinate projection
together with the step functions ``u_r`` give, for every strict pair, a
monotone function that separates it.  Only the order inequalities are
checked here; the continuity of those functions in the order topology and
the non-representability of the order are not machine-checked.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

NOT_MACHINE_CHECKED = (
    "continuity of the projection and of u_r in the lexicographic order topology",
    "non-existence of a utility function for the lexicographic order on the plane",
)


def grid_values(denominator_bound: int) -> list[Fraction]:
    """Distinct rationals p/q in (0, 1) with q <= denominator_bound, ascending."""
    return sorted({Fraction(p, q) for q in range(2, denominator_bound + 1) for p in range(1, q)})


def lex_strict(p, q) -> bool:
    (a, b), (x, y) = p, q
    return a < x or (a == x and b < y)


def lex_weak(p, q) -> bool:
    return p == q or lex_strict(p, q)


def projection(point) -> Fraction:
    return point[0]


def step_function(r: Fraction):
    """u_r: 0 left of the vertical line x = r, the height y on it, 1 to its right."""
    def u_r(point):
        x, y = point
        if x < r:
            return Fraction(0)
        if x == r:
            return y
        return Fraction(1)
    return u_r


def demo_lex(denominator_bound: int = 16, block: int = 1024) -> dict:
    if denominator_bound < 2:
        raise ValueError("denominator bound must be at least 2")
    vals = grid_values(denominator_bound)
    m = len(vals)
    points = [(x, y) for x in vals for y in vals]
    N = len(points)

    # exact values are compared through their rank among all attainable values,
    # which is an order isomorphism, so integer comparisons decide them exactly
    code = {v: k for k, v in enumerate(sorted({Fraction(0), Fraction(1), *vals}))}
    rank = {v: k for k, v in enumerate(vals)}
    rx = np.array([rank[x] for x, _ in points], dtype=np.int32)
    ry = np.array([rank[y] for _, y in points], dtype=np.int32)
    F_pi = np.array([code[projection(p)] for p in points], dtype=np.int32)
    U = np.empty((m, N), dtype=np.int32)
    for k, r in enumerate(vals):
        u_r = step_function(r)
        U[k] = [code[u_r(p)] for p in points]

    functions = [("pi", F_pi)] + [(f"u_{r}", U[k]) for k, r in enumerate(vals)]
    weak_violations = {name: 0 for name, _ in functions}
    strict_violations = {name: 0 for name, _ in functions}
    strict_pairs = 0
    separated = 0
    idx = np.arange(N)
    for lo in range(0, N, block):
        sl = slice(lo, min(lo + block, N))
        ax, by = rx[sl, None], ry[sl, None]
        strict = (ax < rx[None, :]) | ((ax == rx[None, :]) & (by < ry[None, :]))
        weak = strict | (idx[sl, None] == idx[None, :])
        for name, F in functions:
            gt = F[sl, None] > F[None, :]
            weak_violations[name] += int(np.count_nonzero(gt & weak))
            strict_violations[name] += int(np.count_nonzero(gt & strict))
        strict_pairs += int(np.count_nonzero(strict))
        # recipe: the projection when first coordinates differ, u_a when they agree
        pi_sep = F_pi[sl, None] < F_pi[None, :]
        rows_u = U[rx[sl]]
        own = rows_u[np.arange(rows_u.shape[0]), idx[sl]]
        ua_sep = own[:, None] < rows_u
        ok = np.where(ax < rx[None, :], pi_sep, (ax == rx[None, :]) & ua_sep)
        separated += int(np.count_nonzero(strict & ok))

    half = Fraction(1, 2)
    samples = {
        "u_1/2((1/4,3/4))": str(step_function(half)((Fraction(1, 4), Fraction(3, 4)))),
        "u_1/2((1/2,3/4))": str(step_function(half)((half, Fraction(3, 4)))),
        "pi((1/4,3/4))": str(projection((Fraction(1, 4), Fraction(3, 4)))),
    }
    total_weak = sum(weak_violations.values())
    total_strict = sum(strict_violations.values())
    return {
        "denominator_bound": denominator_bound,
        "grid_values": m,
        "points": N,
        "ordered_pairs": N * N,
        "strict_pairs": strict_pairs,
        "functions_checked": len(functions),
        "weak_implication_violations": total_weak,
        "strict_implication_violations": total_strict,
        "violating_functions": sorted(
            name for name in weak_violations
            if weak_violations[name] or strict_violations[name]),
        "separated_strict_pairs": separated,
        "separation_coverage": separated / strict_pairs if strict_pairs else 1.0,
        "samples": samples,
        "not_machine_checked": list(NOT_MACHINE_CHECKED),
        "passed": total_weak == 0 and total_strict == 0 and separated == strict_pairs,
    }

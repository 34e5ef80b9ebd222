from fractions import Fraction

import pytest
from hypothesis import strategies as st

from intervalorders.enumeration import default_labels
from intervalorders.relations import FiniteRelation
from intervalorders.scales import DyadicScale, dyadic_grid
from intervalorders.topology import closure_mask

ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one pass/fail line per acceptance criterion."""
    def _record(criterion, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def relations(draw, min_n=1, max_n=5, reflexive=None):
    n = draw(st.integers(min_n, max_n))
    labels = default_labels(n)
    rows = [draw(st.integers(0, (1 << n) - 1)) for _ in range(n)]
    if reflexive is None:
        reflexive = draw(st.booleans())
    if reflexive:
        rows = [r | 1 << i for i, r in enumerate(rows)]
    return FiniteRelation(labels, tuple(rows))


# -- definition-level oracles, written independently of the bit tricks --------

def oracle_ferrers(R):
    e = R.elements
    return all(not (R.holds(x, z) and R.holds(y, w)) or R.holds(x, w) or R.holds(y, z)
               for x in e for y in e for z in e for w in e)


def oracle_traces(R):
    e = R.elements
    star = {(x, y) for x in e for y in e if all(not R.holds(z, x) or R.holds(z, y) for z in e)}
    starstar = {(x, y) for x in e for y in e if all(not R.holds(y, z) or R.holds(x, z) for z in e)}
    return star, starstar


def random_scale(T, rng, depth):
    """A valid scale on a random subset of the dyadic grid: each chosen open
    set contains the closure of the one before."""
    grid = list(dyadic_grid(depth))
    levels = sorted(rng.sample(grid[:-1], rng.randint(0, len(grid) - 1))) + [Fraction(1)]
    sets, current = [], 0
    for r in levels[:-1]:
        # pick an open set containing the closure of the previous one
        need = closure_mask(T, current)
        options = [o for o in T.opens if o & need == need]
        current = rng.choice(options)
        sets.append(current)
    sets.append(T.universe)
    return DyadicScale(T.points, tuple(levels), tuple(T.labels(m) for m in sets))

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intervalorders.constraints import Constraint, ConstraintSystem


def test_two_cycle_is_infeasible():
    sys_ = ConstraintSystem.build(["u", "v"], [("u", "v", 0), ("v", "u", -1)])
    sol = sys_.solve()
    assert not sol.feasible
    assert sol.cycle_weight == -1
    assert {str(c) for c in sol.cycle} == {"u - v <= 0", "v - u <= -1"}


def test_feasible_potentials_satisfy_constraints():
    sys_ = ConstraintSystem.build("abc", [("a", "b", -1), ("b", "c", -1)])
    sol = sys_.solve()
    assert sol.feasible
    v = sol.values
    assert v["a"] - v["b"] <= -1 and v["b"] - v["c"] <= -1


def test_extra_constraints_are_per_call():
    sys_ = ConstraintSystem.build("ab", [("a", "b", 0)])
    assert not sys_.solve(extra=[Constraint("b", "a", -1)]).feasible
    assert sys_.solve().feasible


def test_rejects_bad_constraints():
    with pytest.raises(ValueError):
        ConstraintSystem(("a",), (Constraint("a", "z", 0),))
    with pytest.raises(ValueError):
        ConstraintSystem(("a", "b"), (Constraint("a", "b", 2),))


def test_self_loop_with_strict_bound():
    sol = ConstraintSystem.build("a", [("a", "a", -1)]).solve()
    assert not sol.feasible and sol.cycle_weight == -1


def brute_feasible(variables, cons):
    # integer solutions, if any, exist with values in [-k, 0]
    k = len(variables)
    for vals in itertools.product(range(-k, 1), repeat=k):
        env = dict(zip(variables, vals))
        if all(env[c.lhs] - env[c.rhs] <= c.bound for c in cons):
            return True
    return False


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.sampled_from([0, -1])),
                max_size=8))
def test_matches_brute_force(triples):
    variables = ["p", "q", "r", "s"]
    sys_ = ConstraintSystem.build(variables, [(variables[a], variables[b], w) for a, b, w in triples])
    sol = sys_.solve()
    assert sol.feasible == brute_feasible(variables, sys_.constraints)
    if sol.feasible:
        for c in sys_.constraints:
            assert sol.values[c.lhs] - sol.values[c.rhs] <= c.bound
    else:
        assert sol.cycle_weight < 0
        # consecutive constraints chain head to tail and close up
        for c1, c2 in zip(sol.cycle, sol.cycle[1:] + sol.cycle[:1]):
            assert c1.lhs == c2.rhs
